#include <doctest.h>

#include "whilecf/parser.hpp"
#include "whilecf/verify.hpp"

using namespace whilecf;

TEST_CASE("spec files parse and round trip") {
  std::string text =
      "vars x y z\n"
      "modulus 8\n"
      "pre: exists n. [x] = n * m /\\ [y] = m\n"
      "post: [z] = 1\n"
      "post_break: false\n"
      "post_continue: false\n";
  SpecFile s = parse_spec_file(text);
  CHECK(s.fp.vars() == std::vector<std::string>{"x", "y", "z"});
  CHECK(s.fp.modulus() == 8);
  CHECK(s.pre->kind == AKind::Exists);
  CHECK(is_false(s.post_brk));

  SpecFile again = parse_spec_file(pretty_spec_file(s));
  CHECK(assertion_equal(again.pre, s.pre));
  CHECK(assertion_equal(again.post, s.post));
}

TEST_CASE("control-flow posts default to false") {
  SpecFile s = parse_spec_file("vars x\nmodulus 4\npre: true\npost: true\n");
  CHECK(is_false(s.post_brk));
  CHECK(is_false(s.post_con));
}

TEST_CASE("annotated program text round trips") {
  Footprint fp({"x", "y"}, 4);
  std::string text =
      "for {inv: [x] <= 3} {incr_inv: true} (;; y = y + 1) "
      "(x = x + 1 ;; assert [x] <= 3)";
  AnnPtr a = parse_annotated_command(text, fp);
  std::string printed = pretty_annotated(a);
  AnnPtr back = parse_annotated_command(printed, fp);
  CHECK(pretty_annotated(back) == printed);
  CHECK(cmd_equal(erase_annotations(a), erase_annotations(back)));
}

TEST_CASE("plain programs reject annotations") {
  CHECK_THROWS_AS(parse_command("assert true"), SyntaxError);
  CHECK_THROWS_AS(parse_command("for {inv: true} {incr_inv: true} (;; skip) skip"),
                  SyntaxError);
}

TEST_CASE("a wrong footprint fails certificate checking") {
  VerifyResult r = verify_file("x = y + 1", "vars x y\nmodulus 4\npre: true\npost: true\n");
  REQUIRE(r.ok);
  std::string text = print_certificate(*r.certificate);
  // re-parse against a footprint that lacks y: the proof no longer checks
  std::string smaller = text;
  auto pos = smaller.find("(vars x y)");
  REQUIRE(pos != std::string::npos);
  smaller.replace(pos, 10, "(vars x)");
  Certificate cert = parse_certificate(smaller);
  CHECK_FALSE(check(cert.tree, cert.fp).ok);
}
