#pragma once

// Concrete syntax: command and assertion parsers, spec files, and the pretty
// printers. pretty(parse(t)) reproduces t up to whitespace; parse(pretty(x))
// is structurally equal to x.

#include "whilecf/annotated.hpp"
#include "whilecf/assertions.hpp"
#include "whilecf/lang.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace whilecf {

struct SyntaxError : std::runtime_error {
  int line;
  int column;
  SyntaxError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), column(col_) {}
};

// Plain program text; annotations are rejected.
CmdPtr parse_command(const std::string& text);
// Program text that may carry loop invariants and assert markers. Identifier
// classification inside [e] never matters here (no assertions see it), but
// the loop annotations need the footprint to resolve names.
AnnPtr parse_annotated_command(const std::string& text, const Footprint& fp);

// Expressions and assertions. Identifiers inside assertions resolve to
// program variables when present in the footprint, logic variables otherwise.
ExprPtr parse_expr(const std::string& text);
AssertionPtr parse_assertion(const std::string& text, const Footprint& fp);

std::string pretty(const CmdPtr& c);
std::string pretty_expr(const ExprPtr& e);
std::string pretty_assertion(const AssertionPtr& a);
std::string pretty_annotated(const AnnPtr& c);

// Spec file: footprint plus the four assertions of a triple.
struct SpecFile {
  Footprint fp;
  AssertionPtr pre, post, post_brk, post_con;
};

SpecFile parse_spec_file(const std::string& text);
std::string pretty_spec_file(const SpecFile& s);

} // namespace whilecf
