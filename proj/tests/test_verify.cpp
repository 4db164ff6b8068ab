#include <doctest.h>

#include "whilecf/bigstep.hpp"
#include "whilecf/gen.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/verify.hpp"

using namespace whilecf;

namespace {

Footprint fpxyz(uint64_t m = 8) { return Footprint({"x", "y", "z"}, m); }

} // namespace

TEST_CASE("symbolic execution of skip") {
  Footprint fp = fpxyz();
  AssertionPtr p = parse_assertion("[x] = 1", fp);
  SymResult r = symexec(ann_skip(), p, fp);
  CHECK(r.tree->kind == RuleKind::RSkip);
  CHECK(assertion_equal(r.posts.normal, p));
  CHECK(is_false(r.posts.brk));
  CHECK(r.vcs.empty());
}

TEST_CASE("forward assignment introduces an existential over the old value") {
  Footprint fp = fpxyz();
  AssertionPtr p = parse_assertion("[x] = 1", fp);
  SymResult r = symexec(ann_assign("x", parse_expr("x + 1")), p, fp);
  REQUIRE(r.posts.normal->kind == AKind::Exists);
  CHECK(r.vcs.empty());
  CHECK(check(r.tree, fp).ok);
  // semantically the post pins x = 2
  Env none;
  Verdict v = entails(r.posts.normal, parse_assertion("[x] = 2", fp), fp);
  CHECK(v.holds());
  (void)none;
}

TEST_CASE("the division fragment leaves a single terminal goal") {
  // z = x / y ;; skip from exists n. [x] = n * m /\ [y] = m
  std::string program = "z = x / y ;; skip";
  std::string spec =
      "vars x y z\nmodulus 8\n"
      "pre: exists n. [x] = n * m /\\ [y] = m\n"
      "post: true\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.vcs.results.size() == 1);
  const VC& goal = r.vcs.results[0].vc;
  CHECK(goal.origin.find("normal post") != std::string::npos);
  // the goal's left side is the accumulated symbolic post, an existential
  CHECK(goal.lhs->kind == AKind::Exists);
  CHECK(r.vcs.results[0].verdict.holds());
  // the certificate itself cannot check: with m universally closed, m = 0
  // makes a pre-state divide by zero, so the forward-assignment bridge
  // entailment is refuted
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.check_report.failures.empty());
  CHECK(r.check_report.failures[0].verdict.is_counterexample());
  // the refuting environment indeed sets m = 0
  bool m_zero = false;
  for (const auto& [name, value] : r.check_report.failures[0].verdict.witness_env.binds)
    if (name == "m" && value == 0) m_zero = true;
  CHECK(m_zero);
}

TEST_CASE("the division fragment verifies once the divisor is pinned") {
  std::string program = "z = x / y ;; skip";
  std::string spec =
      "vars x y z\nmodulus 8\n"
      "pre: exists n. [x] = n * m /\\ [y] = m /\\ not (m = 0)\n"
      "post: true\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.vcs.results.size() == 1);
  CHECK(r.ok);
  REQUIRE(r.certificate);
  CHECK(check(r.certificate->tree, r.certificate->fp).ok);
}

TEST_CASE("terminal goal verdicts follow the enumeration") {
  // under modular arithmetic z * y = x is not implied: x = n*m wraps
  std::string program = "z = x / y ;; skip";
  std::string spec =
      "vars x y z\nmodulus 8\n"
      "pre: exists n. [x] = n * m /\\ [y] = m /\\ not (m = 0)\n"
      "post: [z] * [y] = [x]\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.vcs.results.size() == 1);
  const VCOutcome& out = r.vcs.results[0];

  // independent finite scan over states and the universally closed m
  Footprint fp = fpxyz();
  bool counterexample = false;
  for (Value m = 0; m < 8 && !counterexample; ++m) {
    Env env;
    env.binds.emplace_back("m", m);
    for (const State& s : enumerate_states(fp)) {
      if (satisfies(s, env, out.vc.lhs, fp) && !satisfies(s, env, out.vc.rhs, fp)) {
        counterexample = true;
        break;
      }
    }
  }
  CHECK(counterexample == out.verdict.is_counterexample());
  CHECK(out.verdict.is_counterexample());
}

TEST_CASE("discharge reports") {
  Footprint fp = fpxyz(4);
  CHECK(discharge({}, fp).ok);
  DischargeReport r = discharge({VC{a_true(), a_false(), "falsum"}}, fp);
  CHECK_FALSE(r.ok);
  CHECK(r.results[0].verdict.is_counterexample());
}

TEST_CASE("trivial skip spec gives a one-node certificate") {
  VerifyResult r = verify_file("skip", "vars x\nmodulus 8\npre: true\npost: true\n");
  REQUIRE(r.ok);
  REQUIRE(r.certificate);
  CHECK(proof_node_count(r.certificate->tree) == 1);
  CHECK(r.certificate->tree->kind == RuleKind::RSkip);
}

TEST_CASE("bounded counter loop verifies end to end") {
  std::string program =
      "for {inv: [x] <= 3} {incr_inv: [x] <= 3} (;; skip) "
      "(if x < 3 then x = x + 1 else break)";
  std::string spec = "vars x\nmodulus 4\npre: [x] = 0\npost: [x] = 3\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.ok);
  REQUIRE(r.certificate);
  CHECK(check(r.certificate->tree, r.certificate->fp).ok);
  Verdict v = valid_big(r.concluded, r.certificate->fp, 200);
  CHECK(v.holds());
}

TEST_CASE("mid-assert certificates check") {
  // reproduce the annotated-loop shape: an assert between two body halves
  std::string program =
      "for {inv: [y] = 1} {incr_inv: [y] = 1} (;; skip) "
      "(x = x + 1 ;; assert [y] = 1 ;; y = y)";
  std::string spec = "vars x y\nmodulus 4\npre: [y] = 1\npost: false\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.ok); // the loop never exits, so the false post is fine
  bool has_assert_goal = false;
  for (const auto& g : r.vcs.results)
    if (g.vc.origin.find("assert") != std::string::npos) has_assert_goal = true;
  CHECK(has_assert_goal);
  REQUIRE(r.certificate);
  CHECK(check(r.certificate->tree, r.certificate->fp).ok);
  // the certificate is about the erased program
  CHECK(cmd_equal(conclusion(r.certificate->tree).cmd,
                  parse_command("for(;; skip) (x = x + 1 ;; y = y)")));
}

TEST_CASE("annotation erasure preserves behavior") {
  Footprint fp = fpxyz(4);
  gen::Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), 8, fp);
    // sprinkle asserts along the top-level sequence spine
    AnnPtr ann = ann_of_plain(c);
    ann = ann_seq(ann_assert(a_true()), ann_seq(ann, ann_assert(a_true())));
    CmdPtr erased = erase_annotations(ann);
    CHECK(cmd_equal(erased, c));
  }
}

TEST_CASE("missing loop annotations are reported") {
  Footprint fp = fpxyz(4);
  AnnPtr ann = parse_annotated_command("for(;; skip) skip", fp);
  CHECK_THROWS_AS(symexec(ann, a_true(), fp), AnnotationMissing);
}

TEST_CASE("preprocessing soundness: flags change the proof, not the triple") {
  std::string program =
      "for {inv: [y] = 1} {incr_inv: [y] = 1} (;; x = z / y) "
      "(if 1 < x then break else z = x / y)";
  std::string spec = "vars x y z\nmodulus 8\npre: [y] = 1\npost: [y] = 1\n";

  VerifyOptions plain;
  VerifyOptions both;
  both.use_if_seq = true;
  both.use_loop_nocontinue = true;
  VerifyResult r1 = verify_file(program, spec, plain);
  VerifyResult r2 = verify_file(program, spec, both);
  REQUIRE(r1.ok);
  REQUIRE(r2.ok);
  CHECK(triple_equal(r1.concluded, r2.concluded));
  CHECK(check(r2.certificate->tree, r2.certificate->fp).ok);
}

TEST_CASE("the loop skeleton leaves exactly two residual goals") {
  std::string program =
      "for {inv: [y] = 1} {incr_inv: [y] = 1} (;; x = z / y) "
      "(if 1 < x then break else z = x / y)";
  std::string spec = "vars x y z\nmodulus 8\npre: [y] = 1\npost: [y] = 1\n";
  VerifyOptions opts;
  opts.use_if_seq = true;
  opts.use_loop_nocontinue = true;
  VerifyResult r = verify_file(program, spec, opts);
  REQUIRE(r.ok);
  CHECK(r.vcs.results.size() == 2);
  // the certificate concludes about the original loop, not the fused one
  CHECK(cmd_equal(r.concluded.cmd,
                  parse_command("for(;; x = z / y) (if 1 < x then break else z = x / y)")));
}

TEST_CASE("proofs map back through explicit parenthesization") {
  std::string program = "(x = 1 ;; y = 1) ;; z = 1";
  std::string spec = "vars x y z\nmodulus 4\npre: true\npost: [z] = 1\n";
  VerifyResult r = verify_file(program, spec);
  REQUIRE(r.ok);
  CmdPtr original = parse_command(program);
  CHECK(cmd_equal(conclusion(r.certificate->tree).cmd, original));
  CHECK(check(r.certificate->tree, r.certificate->fp).ok);
}

TEST_CASE("random certificates agree with the big-step oracle") {
  Footprint fp({"x", "y"}, 3);
  gen::Rng rng(53);
  int made = 0;
  while (made < 30) {
    CmdPtr c = gen_random_command(rng.eng(), 8, fp);
    std::vector<State> s = gen::random_state_subset(rng, fp, 35);
    auto ann = gen::annotate_with_invariants(c, s, fp, 150);
    if (!ann) continue;
    AssertionPtr pre = gen::char_states(s, fp);
    SymResult res = symexec(*ann, pre, fp);
    if (!discharge(res.vcs, fp).ok) continue;
    ++made;
    REQUIRE(check(res.tree, fp).ok);
    CHECK_FALSE(valid_big(conclusion(res.tree), fp, 200).is_counterexample());
  }
}
