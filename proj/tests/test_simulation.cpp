#include <doctest.h>

#include "whilecf/gen.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/simulation.hpp"

using namespace whilecf;

namespace {

Footprint fp2(uint64_t m = 3) { return Footprint({"x", "y"}, m); }

RelationTable identity_table(const std::vector<CmdPtr>& cmds) {
  RelationTable t;
  for (const CmdPtr& c : cmds) t.pairs.push_back({c, kont_empty(), c, kont_empty()});
  return t;
}

CmdPtr dead_loop() { return cmd_for(cmd_skip(), cmd_skip()); }

} // namespace

TEST_CASE("the identity relation is a simulation") {
  Footprint fp = fp2();
  gen::Rng rng(3);
  std::vector<CmdPtr> cmds;
  for (int i = 0; i < 10; ++i) cmds.push_back(gen_random_command(rng.eng(), 6, fp));
  // close the identity seeds so successors are covered as well
  SimBounds bounds;
  std::vector<ProgPair> seeds;
  for (const CmdPtr& c : cmds) seeds.push_back({c, kont_empty(), c, kont_empty()});
  RelationTable table = close_relation(seeds, fp, bounds);
  CHECK(check_simulation(table, fp, 500).ok);
}

TEST_CASE("pairing skip with break violates termination") {
  Footprint fp = fp2();
  RelationTable t;
  t.pairs.push_back({cmd_skip(), kont_empty(), cmd_break(), kont_empty()});
  SimReport report = check_simulation(t, fp, 50);
  REQUIRE_FALSE(report.ok);
  CHECK(report.violations[0].clause == SimClause::Termination);
}

TEST_CASE("if-seq relation on the trivial instance") {
  Footprint fp = fp2();
  SimBounds bounds;
  RelationTable t = build_rel_ifseq(expr_const(1), cmd_skip(), cmd_skip(), cmd_skip(), fp,
                                    bounds);
  // the initial pair at the empty continuation is present
  CmdPtr lhs = cmd_seq(cmd_if(expr_const(1), cmd_skip(), cmd_skip()), cmd_skip());
  CmdPtr rhs = cmd_if(expr_const(1), cmd_seq(cmd_skip(), cmd_skip()),
                      cmd_seq(cmd_skip(), cmd_skip()));
  CHECK(t.contains(lhs, kont_empty(), rhs, kont_empty()));
  CHECK(check_simulation(t, fp, 200).ok);
}

TEST_CASE("if-seq relation on random instances") {
  Footprint fp = fp2();
  gen::Rng rng(11);
  SimBounds bounds;
  for (int i = 0; i < 30; ++i) {
    ExprPtr e = gen::random_expr(rng, fp, 2, rng.chance(30));
    CmdPtr c1 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c2 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c3 = gen_random_command(rng.eng(), 3, fp);
    RelationTable t = build_rel_ifseq(e, c1, c2, c3, fp, bounds);
    SimReport report = check_simulation(t, fp, 600);
    CAPTURE(pretty(cmd_seq(cmd_if(e, c1, c2), c3)));
    CHECK(report.ok);
  }
}

TEST_CASE("loop-nocontinue relation and its trace") {
  Footprint fp = fp2();
  SimBounds bounds;
  RelationTable t = build_rel_loop_nocontinue(cmd_skip(), cmd_skip(), fp, bounds);
  SimReport report = check_simulation(t, fp, 400, /*with_trace=*/true);
  CHECK(report.ok);
  // the loop introduction matches one source step with three target steps
  bool found = false;
  for (const std::string& line : report.trace)
    if (line.find("target 3 steps") != std::string::npos &&
        line.find("for(;;") != std::string::npos)
      found = true;
  CHECK(found);

  // an assignment body and an if increment
  CmdPtr c1 = parse_command("x = x + 1");
  CmdPtr c2 = parse_command("if x < 2 then y = 1 else break");
  RelationTable t2 = build_rel_loop_nocontinue(c1, c2, fp, bounds);
  CHECK(check_simulation(t2, fp, 600).ok);

  CHECK_THROWS_AS(build_rel_loop_nocontinue(cmd_continue(), cmd_skip(), fp, bounds),
                  SideConditionError);
}

TEST_CASE("small-step refinement") {
  Footprint fp = fp2();
  gen::Rng rng(13);
  for (int i = 0; i < 25; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), 6, fp);
    CHECK_FALSE(refines_small(c, c, fp, 300).is_counterexample());
  }
  CHECK(refines_small(cmd_skip(), cmd_break(), fp, 20).is_counterexample());

  int done = 0;
  while (done < 20) {
    ExprPtr e = gen::random_expr(rng, fp, 2, true);
    CmdPtr c1 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c2 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c3 = gen_random_command(rng.eng(), 3, fp);
    CHECK_FALSE(refines_small(cmd_seq(cmd_if(e, c1, c2), c3),
                              cmd_if(e, cmd_seq(c1, c3), cmd_seq(c2, c3)), fp, 400)
                    .is_counterexample());
    ++done;
  }
}

TEST_CASE("refinement checkers agree") {
  Footprint fp = fp2();
  gen::Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    CmdPtr c1 = gen_random_command(rng.eng(), 6, fp);
    CmdPtr c2 = gen_random_command(rng.eng(), 6, fp);
    Verdict vb = refines_big(c1, c2, fp, 150);
    Verdict vs = refines_small(c1, c2, fp, 600);
    if (vb.kind == VerdictKind::Inconclusive || vs.kind == VerdictKind::Inconclusive) continue;
    CHECK(vb.kind == vs.kind);
  }
}

TEST_CASE("wp transfer along a simulation") {
  Footprint fp = fp2();
  gen::Rng rng(19);
  // along the identity, wp transfer is trivial
  std::vector<CmdPtr> cmds;
  for (int i = 0; i < 5; ++i) cmds.push_back(gen_random_command(rng.eng(), 5, fp));
  RelationTable id = identity_table(cmds);
  Posts posts{gen::random_closed_assertion(rng, fp, 2),
              gen::random_closed_assertion(rng, fp, 2),
              gen::random_closed_assertion(rng, fp, 2)};
  CHECK(lemma_wp_sim_check(id, posts, fp, 300).holds());

  // on a built loop-nocontinue table with random posts
  SimBounds bounds;
  RelationTable t = build_rel_loop_nocontinue(parse_command("x = x + 1"),
                                              parse_command("y = y + 1"), fp, bounds);
  REQUIRE(check_simulation(t, fp, 500).ok);
  for (int k = 0; k < 5; ++k) {
    Posts p{gen::random_closed_assertion(rng, fp, 2),
            gen::random_closed_assertion(rng, fp, 2),
            gen::random_closed_assertion(rng, fp, 2)};
    CHECK(lemma_wp_sim_check(t, p, fp, 500).holds());
  }

  // a corrupted pair is caught: the target is safe where the source is not
  RelationTable bad;
  bad.pairs.push_back({parse_command("x = x / y"), kont_empty(), cmd_skip(), kont_empty()});
  Posts top{a_true(), a_true(), a_true()};
  CHECK(lemma_wp_sim_check(bad, top, fp, 100).is_counterexample());
}

TEST_CASE("guard transfer along a simulation") {
  Footprint fp = fp2();
  gen::Rng rng(23);
  std::vector<CmdPtr> cmds;
  for (int i = 0; i < 5; ++i) cmds.push_back(gen_random_command(rng.eng(), 5, fp));
  RelationTable id = identity_table(cmds);
  CHECK(lemma_guard_sim_check(id, gen::random_closed_assertion(rng, fp, 2), fp, 300).holds());

  // the dead-suffix construction: executing dead after c is always safe, so
  // the dead-suffixed source is guarded whenever the plain target is
  SimBounds bounds;
  bounds.match_bound = 4;
  CmdPtr c = parse_command("x = x + 1");
  std::vector<ProgPair> seeds{
      {c, kont_push(frame_seq(dead_loop()), kont_empty()), c, kont_empty()}};
  RelationTable t = close_relation(seeds, fp, bounds);
  RelationTable guard_mode = t;
  guard_mode.allow_state_preserving_cycle = true;
  CHECK(check_simulation(guard_mode, fp, 400).ok);
  CHECK(lemma_guard_sim_check(guard_mode, a_true(), fp, 400).holds());

  // corrupting the table flips the verdict
  RelationTable bad;
  bad.pairs.push_back({parse_command("x = x / y"), kont_empty(), cmd_skip(), kont_empty()});
  CHECK(lemma_guard_sim_check(bad, a_true(), fp, 100).is_counterexample());
}

TEST_CASE("a one-pair mutation of a built table is detected") {
  Footprint fp = fp2();
  SimBounds bounds;
  gen::Rng rng(29);
  for (int i = 0; i < 10; ++i) {
    ExprPtr e = gen::random_expr(rng, fp, 2, false);
    CmdPtr c1 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c2 = gen_random_command(rng.eng(), 3, fp);
    CmdPtr c3 = gen_random_command(rng.eng(), 3, fp);
    RelationTable t = build_rel_ifseq(e, c1, c2, c3, fp, bounds);
    REQUIRE(check_simulation(t, fp, 500).ok);
    RelationTable mutated = t;
    mutated.pairs[rng.below(mutated.pairs.size())] =
        ProgPair{cmd_skip(), kont_empty(), cmd_break(), kont_empty()};
    CHECK_FALSE(check_simulation(mutated, fp, 500).ok);
  }
}
