#pragma once

// Commands extended with verification annotations: loops carry their two
// invariants, and `assert A` marks an intermediate assertion. Erasing the
// annotations yields a plain command with identical runtime behavior.

#include "whilecf/assertions.hpp"
#include "whilecf/lang.hpp"

#include <memory>

namespace whilecf {

struct AnnotatedCommand;
using AnnPtr = std::shared_ptr<const AnnotatedCommand>;

enum class AnnKind { Skip, Assign, Seq, If, ForAnn, Break, Continue, MidAssert };

struct AnnotatedCommand {
  AnnKind kind;
  std::string var;             // Assign
  ExprPtr expr;                // Assign rhs / If condition
  AnnPtr a, b;                 // Seq, If(then,else), ForAnn(body,incr)
  AssertionPtr body_pre;       // ForAnn loop invariant at the body entry
  AssertionPtr incr_pre;       // ForAnn invariant at the increment entry
  AssertionPtr mid;            // MidAssert
};

AnnPtr ann_skip();
AnnPtr ann_assign(std::string var, ExprPtr e);
AnnPtr ann_seq(AnnPtr a, AnnPtr b);
AnnPtr ann_if(ExprPtr cond, AnnPtr t, AnnPtr e);
AnnPtr ann_for(AnnPtr body, AnnPtr incr, AssertionPtr body_pre, AssertionPtr incr_pre);
AnnPtr ann_break();
AnnPtr ann_continue();
AnnPtr ann_assert(AssertionPtr a);
AnnPtr ann_of_plain(const CmdPtr& c);

// Drops annotations. MidAssert vanishes inside sequences and becomes skip on
// its own; everything else maps structurally.
CmdPtr erase_annotations(const AnnPtr& c);

} // namespace whilecf
