#include <doctest.h>

#include "whilecf/lang.hpp"
#include "whilecf/parser.hpp"

#include <random>
#include <set>

using namespace whilecf;

namespace {

Footprint fp3(uint64_t m = 8) { return Footprint({"x", "y", "z"}, m); }

State mk_state(const Footprint& fp, std::vector<Value> vals) {
  State s;
  s.vals = std::move(vals);
  (void)fp;
  return s;
}

// independent traversal oracle for the loop-scoped continue check: explicit
// worklist, never descending into For nodes
bool naive_toplevel_continue(const CmdPtr& c) {
  std::vector<const Command*> work{c.get()};
  while (!work.empty()) {
    const Command* cur = work.back();
    work.pop_back();
    if (!cur) continue;
    if (cur->kind == CmdKind::Continue) return true;
    if (cur->kind == CmdKind::For) continue;
    work.push_back(cur->a.get());
    work.push_back(cur->b.get());
  }
  return false;
}

} // namespace

TEST_CASE("footprint invariants") {
  CHECK_THROWS_AS(Footprint({}, 4), std::invalid_argument);
  CHECK_THROWS_AS(Footprint({"x", "x"}, 4), std::invalid_argument);
  CHECK_THROWS_AS(Footprint({"x"}, 1), std::invalid_argument);
  Footprint fp({"a", "b"}, 2);
  CHECK(fp.var_index("b") == 1);
  CHECK_FALSE(fp.var_index("c"));
}

TEST_CASE("parse atomic commands") {
  CHECK(parse_command("skip")->kind == CmdKind::Skip);
  CHECK(parse_command("break")->kind == CmdKind::Break);
  CmdPtr c = parse_command("z = x / y ;; skip");
  REQUIRE(c->kind == CmdKind::Seq);
  CHECK(c->a->kind == CmdKind::Assign);
  CHECK(c->a->var == "z");
  REQUIRE(c->a->expr->kind == ExprKind::Binary);
  CHECK(c->a->expr->bin == BinOp::Div);
  CHECK(c->a->expr->a->name == "x");
  CHECK(c->a->expr->b->name == "y");
  CHECK(c->b->kind == CmdKind::Skip);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_command("for( break"), SyntaxError);
  CHECK_THROWS_AS(parse_command("x ="), SyntaxError);
  CHECK_THROWS_AS(parse_command("if x then skip"), SyntaxError);
  try {
    parse_command("skip ;;\n @");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("pretty atomic forms") {
  CHECK(pretty(cmd_skip()) == "skip");
  CHECK(pretty(cmd_seq(cmd_break(), cmd_continue())) == "break ;; continue");
  CmdPtr loop = cmd_for(cmd_assign("x", expr_var("y")), cmd_skip());
  CHECK(pretty(loop) == "for(;; skip) x = y");
}

TEST_CASE("parse/pretty round trip over the generator corpus") {
  Footprint fp = fp3();
  for (uint64_t seed = 0; seed < 400; ++seed) {
    CmdPtr c = gen_random_command(seed, 12, fp);
    CmdPtr back = parse_command(pretty(c));
    CAPTURE(pretty(c));
    CHECK(cmd_equal(c, back));
    CHECK(pretty(back) == pretty(c));
  }
}

TEST_CASE("expression evaluation") {
  Footprint fp = fp3(8);
  State s = mk_state(fp, {5, 6, 0});
  CHECK(eval_expr(parse_expr("x + y"), s, fp) == 3); // (5+6) mod 8
  State zero_div = mk_state(fp, {3, 0, 0});
  CHECK_FALSE(eval_expr(parse_expr("x / y"), zero_div, fp));
  CHECK_FALSE(eval_expr(parse_expr("x mod y"), zero_div, fp));
  State cmp = mk_state(fp, {1, 2, 0});
  CHECK(eval_expr(parse_expr("x < y"), cmp, fp) == 1);
  CHECK(eval_expr(parse_expr("y < x"), cmp, fp) == 0);
  CHECK(eval_expr(parse_expr("not x"), mk_state(fp, {0, 0, 0}), fp) == 1);
  CHECK(eval_expr(parse_expr("-x"), mk_state(fp, {3, 0, 0}), fp) == 5); // 8-3
  CHECK(eval_expr(parse_expr("x > 1"), cmp, fp) == 0);  // sugar for 1 < x
  CHECK(eval_expr(parse_expr("y >= 2"), cmp, fp) == 1); // sugar for 2 <= y
}

TEST_CASE("expression evaluation is deterministic") {
  Footprint fp = fp3(4);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    CmdPtr c = gen_random_command(rng(), 3, fp);
    if (c->kind != CmdKind::Assign) continue;
    for (const State& s : enumerate_states(fp)) {
      auto v1 = eval_expr(c->expr, s, fp);
      auto v2 = eval_expr(c->expr, s, fp);
      CHECK(v1 == v2);
      if (v1) CHECK(*v1 < fp.modulus());
    }
  }
}

TEST_CASE("toplevel continue detection") {
  CHECK(has_toplevel_continue(cmd_continue()));
  CHECK_FALSE(has_toplevel_continue(cmd_for(cmd_continue(), cmd_skip())));
  CmdPtr c = cmd_seq(cmd_skip(), cmd_if(expr_var("x"), cmd_continue(), cmd_skip()));
  CHECK(has_toplevel_continue(c));

  Footprint fp = fp3();
  for (uint64_t seed = 1000; seed < 1300; ++seed) {
    CmdPtr r = gen_random_command(seed, 10, fp);
    CHECK(has_toplevel_continue(r) == naive_toplevel_continue(r));
    CHECK_FALSE(has_toplevel_continue(cmd_for(r, gen_random_command(seed + 1, 6, fp))));
  }
}

TEST_CASE("state enumeration") {
  Footprint one({"x"}, 2);
  auto states = enumerate_states(one);
  REQUIRE(states.size() == 2);
  CHECK(states[0].vals == std::vector<Value>{0});
  CHECK(states[1].vals == std::vector<Value>{1});

  CHECK(enumerate_states(Footprint({"x", "y"}, 2)).size() == 4);

  auto big = enumerate_states(Footprint({"x", "y", "z"}, 4));
  CHECK(big.size() == 64);
  std::set<std::vector<Value>> distinct;
  for (const State& s : big) distinct.insert(s.vals);
  CHECK(distinct.size() == 64);

  CHECK_THROWS_AS(enumerate_states(Footprint({"x", "y", "z"}, 4), 63), CapExceeded);
}

TEST_CASE("random command generator") {
  Footprint fp = fp3();
  CmdPtr leaf = gen_random_command(1, 1, fp);
  CHECK(cmd_node_count(leaf) == 1);

  CHECK(cmd_equal(gen_random_command(17, 9, fp), gen_random_command(17, 9, fp)));

  std::set<CmdKind> kinds;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    CmdPtr c = gen_random_command(seed, 12, fp);
    CHECK(cmd_node_count(c) <= 12);
    kinds.insert(c->kind);
    std::vector<std::string> vars;
    cmd_collect_vars(c, vars);
    for (const auto& v : vars) CHECK(fp.has_var(v));
  }
  CHECK(kinds.size() >= 4);
}
