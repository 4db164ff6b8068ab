#include <doctest.h>

#include "whilecf/assertions.hpp"
#include "whilecf/gen.hpp"
#include "whilecf/parser.hpp"

using namespace whilecf;

namespace {

Footprint fp2(uint64_t m = 8) { return Footprint({"x", "y"}, m); }

State st(std::vector<Value> vals) {
  State s;
  s.vals = std::move(vals);
  return s;
}

} // namespace

TEST_CASE("satisfaction basics") {
  Footprint fp({"x"}, 8);
  Env none;
  CHECK(satisfies(st({4}), none, parse_assertion("[x] = 4", fp), fp));
  CHECK_FALSE(satisfies(st({5}), none, parse_assertion("[x] = 4", fp), fp));
  CHECK_FALSE(satisfies(st({0}), none, a_false(), fp));
  CHECK(satisfies(st({0}), none, a_true(), fp));
}

TEST_CASE("existential satisfaction over the residues") {
  Footprint fp = fp2(8);
  AssertionPtr p = parse_assertion("exists n. [x] = n * [y]", fp);
  Env none;
  // x=6,y=2: n=3 works
  CHECK(satisfies(st({6, 2}), none, p, fp));
  // independent enumeration of the witness
  bool witnessed = false;
  for (Value n = 0; n < 8; ++n) witnessed |= ((n * 2) % 8 == 6);
  CHECK(witnessed);
  // x=5,y=2: 5 is odd, no residue multiple of 2 reaches it mod 8
  CHECK_FALSE(satisfies(st({5, 2}), none, p, fp));
}

TEST_CASE("strict atoms absorb evaluation errors") {
  Footprint fp = fp2();
  Env none;
  AssertionPtr err_atom = parse_assertion("[x / y] = 0", fp);
  CHECK_FALSE(satisfies(st({4, 0}), none, err_atom, fp));
  CHECK(satisfies(st({4, 0}), none, a_not(err_atom), fp));
  // definedness atom
  CHECK_FALSE(satisfies(st({4, 0}), none, a_defined(parse_expr("x / y")), fp));
  CHECK(satisfies(st({4, 2}), none, a_defined(parse_expr("x / y")), fp));
}

TEST_CASE("substitution on frozen examples") {
  Footprint fp = fp2();
  AssertionPtr p = parse_assertion("[x] = 1", fp);
  AssertionPtr q = subst(p, "x", parse_expr("y + 1"));
  CHECK(assertion_equal(q, parse_assertion("[y + 1] = 1", fp)));

  AssertionPtr ex = parse_assertion("exists n. [x] = n", fp);
  AssertionPtr ex0 = subst(ex, "x", expr_const(0));
  CHECK(assertion_equal(ex0, parse_assertion("exists n. [0] = n", fp)));
}

TEST_CASE("substitution lemma against state update") {
  Footprint fp = fp2(4);
  gen::Rng rng(11);
  std::vector<State> states = enumerate_states(fp);
  Env none;
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    AssertionPtr p = gen::random_closed_assertion(rng, fp, 2);
    std::string x = fp.vars()[rng.below(2)];
    ExprPtr e = gen::random_expr(rng, fp, 2, true);
    for (const State& s : states) {
      auto v = eval_expr(e, s, fp);
      if (!v) continue;
      ++checked;
      CHECK(satisfies(s, none, subst(p, x, e), fp) ==
            satisfies(state_set(s, fp, x, *v), none, p, fp));
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("entailment oracle") {
  Footprint fp = fp2(4);
  CHECK(entails(a_false(), parse_assertion("[x] = 0", fp), fp).holds());
  CHECK(entails(parse_assertion("[x] = 1 /\\ [y] = 2", fp), parse_assertion("[x] = 1", fp), fp)
            .holds());

  Verdict v = entails(parse_assertion("[x] <= 2", fp), parse_assertion("[x] = 1", fp), fp);
  REQUIRE(v.is_counterexample());
  // the witness satisfies the left side but not the right
  Env none;
  CHECK(satisfies(v.witness_state, none, parse_assertion("[x] <= 2", fp), fp));
  CHECK_FALSE(satisfies(v.witness_state, none, parse_assertion("[x] = 1", fp), fp));
}

TEST_CASE("free logic variables are universally closed in entailment") {
  Footprint fp({"x"}, 4);
  AssertionPtr atom = parse_assertion("[x] = n", fp);
  CHECK(entails(atom, atom, fp).holds());
  Verdict v = entails(a_true(), atom, fp);
  REQUIRE(v.is_counterexample());
  CHECK_FALSE(v.witness_env.binds.empty());
}

TEST_CASE("quantifier duality") {
  Footprint fp = fp2(3);
  gen::Rng rng(5);
  Env none;
  for (int i = 0; i < 100; ++i) {
    AssertionPtr base = gen::random_closed_assertion(rng, fp, 2);
    // inject the quantified variable into an atom so the binder matters
    AssertionPtr body = a_and(
        base, a_cmp(CmpRel::Le, aterm_lvar("q"), aterm_prog(expr_var(fp.vars()[rng.below(2)]))));
    AssertionPtr lhs = a_not(a_exists("q", body));
    AssertionPtr rhs = a_forall("q", a_not(body));
    for (const State& s : enumerate_states(fp))
      CHECK(satisfies(s, none, lhs, fp) == satisfies(s, none, rhs, fp));
  }
}

TEST_CASE("entailment is a preorder") {
  Footprint fp = fp2(3);
  gen::Rng rng(23);
  std::vector<AssertionPtr> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(gen::random_closed_assertion(rng, fp, 2));
  for (const auto& p : pool) CHECK(entails(p, p, fp).holds());
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool) {
        if (entails(a, b, fp).holds() && entails(b, c, fp).holds())
          CHECK(entails(a, c, fp).holds());
      }
}

TEST_CASE("total atoms agree with plain arithmetic") {
  // on expressions without division, strict atoms are ordinary comparisons
  Footprint fp = fp2(4);
  gen::Rng rng(61);
  Env none;
  for (int i = 0; i < 200; ++i) {
    ExprPtr e = gen::random_expr(rng, fp, 2, false);
    Value v = rng.below(4);
    static const CmpRel rels[] = {CmpRel::Eq, CmpRel::Le, CmpRel::Lt};
    CmpRel rel = rels[rng.below(3)];
    AssertionPtr atom = a_cmp(rel, aterm_prog(e), aterm_lit(v));
    for (const State& s : enumerate_states(fp)) {
      auto val = eval_expr(e, s, fp);
      REQUIRE(val);
      bool expect = rel == CmpRel::Eq ? *val == v : rel == CmpRel::Le ? *val <= v : *val < v;
      CHECK(satisfies(s, none, atom, fp) == expect);
    }
  }
}

TEST_CASE("assertion surface syntax round trip") {
  Footprint fp({"x", "y"}, 8);
  const char* samples[] = {
      "exists n. [x] = n * m /\\ [y] = m",
      "true",
      "false",
      "not ([x] = 1 \\/ [y] = 2)",
      "[x] = 1 -> [y] = 2 -> false",
      "forall a. (exists b. a = b + 1) /\\ [x] <= a",
      "(n) = 1",
      "[x + y * 2] < [y / x]",
      "1 + n * 2 = m - 1",
  };
  for (const char* text : samples) {
    AssertionPtr a = parse_assertion(text, fp);
    std::string printed = pretty_assertion(a);
    AssertionPtr back = parse_assertion(printed, fp);
    CAPTURE(text);
    CAPTURE(printed);
    CHECK(assertion_equal(a, back));
    CHECK(pretty_assertion(back) == printed);
  }
}

TEST_CASE("quantifiers cannot bind program variables") {
  Footprint fp({"x"}, 4);
  CHECK_THROWS_AS(parse_assertion("exists x. [x] = 0", fp), SyntaxError);
}

TEST_CASE("verdict printing") {
  Footprint fp({"x"}, 4);
  Verdict v = Verdict::pass();
  CHECK(verdict_to_string(v, fp) == "Holds");
  v.bounded = true;
  CHECK(verdict_to_string(v, fp) == "Holds (bounded)");
}
