#include <doctest.h>

#include "whilecf/gen.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/smallstep.hpp"

using namespace whilecf;

namespace {

Footprint fp2(uint64_t m = 4) { return Footprint({"x", "y"}, m); }

State st(std::vector<Value> vals) {
  State s;
  s.vals = std::move(vals);
  return s;
}

} // namespace

TEST_CASE("loop introduction loads the body followed by continue") {
  Footprint fp = fp2();
  CmdPtr body = parse_command("x = x + 1");
  CmdPtr incr = parse_command("y = y + 1");
  StepResult r = step(Config{cmd_for(body, incr), kont_empty(), st({0, 0})}, fp);
  REQUIRE(r.kind == StepKind::Next);
  CHECK(cmd_equal(r.next.cmd, cmd_seq(body, cmd_continue())));
  REQUIRE(r.next.kont);
  CHECK(r.next.kont->top.kind == FrameKind::KLoop1);
  CHECK(cmd_equal(r.next.kont->top.c1, body));
  CHECK(cmd_equal(r.next.kont->top.c2, incr));
}

TEST_CASE("continue skips sequence frames and is stuck at a loop2 frame") {
  Footprint fp = fp2();
  KontPtr seq_frame = kont_push(frame_seq(cmd_skip()), kont_empty());
  StepResult r = step(Config{cmd_continue(), seq_frame, st({0, 0})}, fp);
  REQUIRE(r.kind == StepKind::Next);
  CHECK(r.next.cmd->kind == CmdKind::Continue);
  CHECK(kont_depth(r.next.kont) == 0);

  KontPtr loop2 = kont_push(frame_loop2(cmd_skip(), cmd_skip()), kont_empty());
  CHECK(step(Config{cmd_continue(), loop2, st({0, 0})}, fp).kind == StepKind::Stuck);
  // break at a loop2 frame leaves the loop
  StepResult br = step(Config{cmd_break(), loop2, st({0, 0})}, fp);
  REQUIRE(br.kind == StepKind::Next);
  CHECK(br.next.cmd->kind == CmdKind::Skip);
  CHECK(kont_depth(br.next.kont) == 0);
}

TEST_CASE("terminal configurations") {
  Footprint fp = fp2();
  Outcome o = run_small(Config{cmd_break(), kont_empty(), st({1, 2})}, fp, 10);
  CHECK(o.kind == OutcomeKind::Terminated);
  CHECK(o.ek == ExitKind::Brk);
  CHECK(o.state == st({1, 2}));
}

TEST_CASE("hand-stepped skip sequence") {
  // (skip ;; skip, eps) -> (skip, KSeq(skip)) -> (skip, eps): terminal after
  // exactly two transitions, three configurations in total
  Footprint fp = fp2();
  uint64_t steps = 0;
  Outcome o = run_small_counted(Config{parse_command("skip ;; skip"), kont_empty(), st({0, 0})},
                                fp, 10, &steps);
  CHECK(o.kind == OutcomeKind::Terminated);
  CHECK(o.ek == ExitKind::Normal);
  CHECK(steps == 2);
}

TEST_CASE("both semantics agree on increment-step control flow") {
  Footprint fp({"x"}, 4);
  State s;
  s.vals = {1};
  // break leaving the increment step: both end the loop normally
  CmdPtr brk = parse_command("for(;; break) x = x + 1");
  Outcome big = eval_big(brk, s, fp, 50);
  Outcome small = run_small(Config{brk, kont_empty(), s}, fp, 50);
  CHECK(big == small);
  CHECK(big.ek == ExitKind::Normal);
  // continue leaving the increment step: an error in both
  CmdPtr con = parse_command("for(;; continue) x = x + 1");
  CHECK(eval_big(con, s, fp, 50).kind == OutcomeKind::Error);
  CHECK(run_small(Config{con, kont_empty(), s}, fp, 50).kind == OutcomeKind::Error);
}

TEST_CASE("big and small step agree on a random corpus") {
  Footprint fp({"x", "y", "z"}, 4);
  std::vector<State> states = enumerate_states(fp);
  for (uint64_t seed = 0; seed < 250; ++seed) {
    CmdPtr c = gen_random_command(seed, 12, fp);
    for (const State& s : states) {
      Outcome ob = eval_big(c, s, fp, 200);
      if (ob.kind == OutcomeKind::OutOfFuel) continue;
      Outcome os = run_small(Config{c, kont_empty(), s}, fp, 400);
      if (os.kind == OutcomeKind::OutOfFuel) continue;
      CAPTURE(pretty(c));
      CAPTURE(state_to_string(s, fp));
      CHECK(ob == os);
    }
  }
}

TEST_CASE("indexed weakest precondition basics") {
  Footprint fp = fp2();
  Env none;
  Posts top{a_true(), a_true(), a_true()};
  // the exhausted index is vacuously true, even on a stuck configuration
  CHECK(wp_indexed(st({0, 0}), none, cmd_skip(), kont_empty(), top, fp, 0));
  Posts bot0{a_false(), a_false(), a_false()};
  CHECK(wp_indexed(st({1, 0}), none, parse_command("x = x / y"), kont_empty(), bot0, fp, 0));
  CHECK(wp_indexed(st({0, 0}), none, cmd_skip(), kont_empty(), top, fp, 1));
  CHECK(wp_indexed(st({0, 0}), none, cmd_skip(), kont_empty(), top, fp, 50));

  Posts posts{parse_assertion("[x] = 0", fp), a_false(), a_false()};
  CHECK_FALSE(wp_indexed(st({1, 0}), none, cmd_skip(), kont_empty(), posts, fp, 5));

  // a stuck configuration is neither terminal nor reducible
  CmdPtr div = parse_command("x = x / y");
  CHECK_FALSE(wp_indexed(st({1, 0}), none, div, kont_empty(), posts, fp, 2));

  // the dead loop never consults the posts
  CmdPtr dead = parse_command("for(;; skip) skip");
  Posts bot{a_false(), a_false(), a_false()};
  for (uint64_t n : {1, 5, 100})
    CHECK(wp_indexed(st({0, 0}), none, dead, kont_empty(), bot, fp, n));
}

TEST_CASE("weakest precondition is antitone in the index") {
  Footprint fp = fp2(3);
  gen::Rng rng(13);
  Env none;
  for (int i = 0; i < 120; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), 8, fp);
    Posts posts{gen::random_closed_assertion(rng, fp, 2),
                gen::random_closed_assertion(rng, fp, 2),
                gen::random_closed_assertion(rng, fp, 2)};
    for (const State& s : enumerate_states(fp)) {
      for (uint64_t n : {0, 1, 3, 9, 27}) {
        if (wp_indexed(s, none, c, kont_empty(), posts, fp, n + 1))
          CHECK(wp_indexed(s, none, c, kont_empty(), posts, fp, n));
      }
    }
  }
}

TEST_CASE("wp validity agrees with the frozen examples") {
  Footprint fp({"x", "y", "z"}, 4);
  Triple skip_t{parse_assertion("[x] = 1", fp), cmd_skip(), parse_assertion("[x] = 1", fp),
                a_false(), a_false()};
  CHECK(valid_wp(skip_t, fp, 50).holds());

  Triple div_t{parse_assertion("[y] = 0", fp), parse_command("z = x / y"), a_true(), a_false(),
               a_false()};
  CHECK(valid_wp(div_t, fp, 50).is_counterexample());
}

TEST_CASE("safety predicate") {
  Footprint fp = fp2();
  CHECK(safe_indexed(cmd_continue(), kont_empty(), st({0, 0}), fp, 10));
  CHECK_FALSE(safe_indexed(parse_command("x = x / y"), kont_empty(), st({1, 0}), fp, 1));
  CmdPtr dead = parse_command("for(;; skip) skip");
  for (uint64_t n : {1, 10, 200})
    CHECK(safe_indexed(dead, kont_push(frame_seq(cmd_skip()), kont_empty()), st({0, 0}), fp, n));
}

TEST_CASE("guard oracle") {
  Footprint fp = fp2();
  CHECK(guards(a_false(), parse_command("x = x / y"), kont_empty(), fp, 20).holds());
  CHECK(guards(a_true(), cmd_skip(), kont_empty(), fp, 20).holds());
  Verdict v = guards(parse_assertion("[y] = 0", fp), parse_command("z = x / y"), kont_empty(),
                     fp, 20);
  CHECK(v.is_counterexample());
}

TEST_CASE("continuation validity over the empty family") {
  Footprint fp({"x", "y", "z"}, 4);
  std::vector<KontPtr> family{kont_empty()};
  Triple skip_t{parse_assertion("[x] = 1", fp), cmd_skip(), parse_assertion("[x] = 1", fp),
                a_false(), a_false()};
  Verdict v = valid_cont(skip_t, fp, 50, family);
  CHECK(v.holds());
  CHECK(v.bounded);

  Triple brk_t{a_true(), cmd_break(), a_false(), a_true(), a_false()};
  CHECK(valid_cont(brk_t, fp, 50, family).holds());
}

TEST_CASE("cross-oracle refutation at the empty continuation") {
  // a triple refuted by the big-step oracle through an error is refuted by
  // the continuation oracle already at the empty stack; post-condition
  // violations are beyond the empty stack's discriminating power (the
  // continuation verdict is sound for refutation only)
  Footprint fp({"x", "y", "z"}, 4);
  std::vector<KontPtr> family{kont_empty()};
  Triple err{parse_assertion("[y] = 0", fp), parse_command("z = x / y"), a_true(), a_false(),
             a_false()};
  REQUIRE(valid_big(err, fp, 30).is_counterexample());
  CHECK(valid_cont(err, fp, 30, family).is_counterexample());

  // and conversely a continuation refutation implies a big-step refutation
  gen::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), 8, fp);
    Triple t{gen::random_closed_assertion(rng, fp, 2), c,
             gen::random_closed_assertion(rng, fp, 2),
             gen::random_closed_assertion(rng, fp, 2),
             gen::random_closed_assertion(rng, fp, 2)};
    Verdict vc = valid_cont(t, fp, 100, family);
    if (vc.is_counterexample()) {
      Verdict vb = valid_big(t, fp, 100);
      CHECK(vb.is_counterexample());
    }
  }
}

TEST_CASE("continuation family enumeration") {
  Footprint fp({"x"}, 2);
  auto only_empty = enumerate_continuations(fp, 0, 1);
  REQUIRE(only_empty.size() == 1);
  CHECK(kont_depth(only_empty[0]) == 0);

  auto family = enumerate_continuations(fp, 1, 1);
  bool has_seq = false, has_loop1 = false, has_loop2 = false;
  for (const auto& k : family) {
    if (kont_depth(k) != 1) continue;
    if (k->top.kind == FrameKind::KSeq && k->top.c1->kind == CmdKind::Skip) has_seq = true;
    if (k->top.kind == FrameKind::KLoop1 && k->top.c1->kind == CmdKind::Skip &&
        k->top.c2->kind == CmdKind::Skip)
      has_loop1 = true;
    if (k->top.kind == FrameKind::KLoop2 && k->top.c1->kind == CmdKind::Skip &&
        k->top.c2->kind == CmdKind::Skip)
      has_loop2 = true;
  }
  CHECK(has_seq);
  CHECK(has_loop1);
  CHECK(has_loop2);

  // closed-form cardinality: commands of size <= s, frames, stacks
  for (size_t size = 1; size <= 3; ++size) {
    size_t atoms = 2 + fp.vars().size();
    std::vector<size_t> cmds(size + 1, 0);
    if (size >= 1) cmds[1] = 3;
    if (size >= 2) cmds[2] = fp.vars().size() * atoms;
    for (size_t n = 3; n <= size; ++n)
      for (size_t l = 1; l + 2 <= n; ++l) cmds[n] += cmds[l] * cmds[n - 1 - l] * (2 + atoms);
    size_t total_cmds = 0;
    for (size_t n = 1; n <= size; ++n) total_cmds += cmds[n];
    size_t frames = total_cmds + 2 * total_cmds * total_cmds;
    for (size_t depth = 0; depth <= 2; ++depth) {
      size_t expect = 0, level = 1;
      for (size_t d = 0; d <= depth; ++d) {
        expect += level;
        level *= frames;
      }
      if (expect > 150000) continue; // keep the enumeration at desk scale
      CHECK(enumerate_continuations(fp, depth, size, 1u << 22).size() == expect);
    }
  }
}

TEST_CASE("no-continue configurations are preserved by steps") {
  Footprint fp({"x", "y", "z"}, 3);
  gen::Rng rng(41);
  for (int i = 0; i < 150; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), 10, fp);
    for (const State& s : enumerate_states(fp)) {
      Config cfg{c, kont_empty(), s};
      for (int k = 0; k < 60; ++k) {
        bool nc = config_has_no_continue(cfg.cmd, cfg.kont);
        StepResult r = step(cfg, fp);
        if (r.kind != StepKind::Next) break;
        if (nc) CHECK(config_has_no_continue(r.next.cmd, r.next.kont));
        cfg = r.next;
      }
    }
  }
}

TEST_CASE("wp ignores the continue post on no-continue configurations") {
  Footprint fp({"x", "y"}, 3);
  gen::Rng rng(43);
  Env none;
  int done = 0;
  while (done < 60) {
    CmdPtr c = gen_random_command(rng.eng(), 8, fp);
    CmdPtr tail = gen_random_command(rng.eng(), 4, fp);
    if (has_toplevel_continue(c) || has_toplevel_continue(tail)) continue;
    ++done;
    KontPtr k = kont_push(frame_seq(tail), kont_empty());
    REQUIRE(config_has_no_continue(c, k));
    Posts posts{gen::random_closed_assertion(rng, fp, 2),
                gen::random_closed_assertion(rng, fp, 2),
                gen::random_closed_assertion(rng, fp, 2)};
    Posts other = posts;
    other.con = gen::random_closed_assertion(rng, fp, 2);
    for (const State& s : enumerate_states(fp)) {
      if (wp_indexed(s, none, c, k, posts, fp, 150))
        CHECK(wp_indexed(s, none, c, k, other, fp, 150));
    }
  }
}

TEST_CASE("the wp of the continuation is a seq-inv intermediate") {
  Footprint fp({"x", "y"}, 3);
  gen::Rng rng(47);
  Env none;
  int done = 0;
  while (done < 25) {
    CmdPtr c1 = gen_random_command(rng.eng(), 5, fp);
    CmdPtr c2 = gen_random_command(rng.eng(), 5, fp);
    std::vector<State> s = gen::random_state_subset(rng, fp, 40);
    gen::OutcomeSets o = gen::outcome_sets(cmd_seq(c1, c2), s, fp, 120);
    if (!o.clean()) continue;
    ++done;
    Triple t{gen::char_states(s, fp), cmd_seq(c1, c2), gen::char_states(o.normal, fp),
             gen::char_states(o.brk, fp), gen::char_states(o.con, fp)};
    REQUIRE(valid_wp(t, fp, 400).holds());
    Posts posts{t.post, t.post_brk, t.post_con};
    // the intermediate assertion: states from which c2 satisfies the wp
    std::vector<State> mid;
    for (const State& st2 : enumerate_states(fp))
      if (wp_indexed(st2, none, c2, kont_empty(), posts, fp, 400)) mid.push_back(st2);
    AssertionPtr mid_a = gen::char_states(mid, fp);
    Triple first{t.pre, c1, mid_a, t.post_brk, t.post_con};
    Triple second{mid_a, c2, t.post, t.post_brk, t.post_con};
    CHECK(valid_wp(first, fp, 400).holds());
    CHECK(valid_wp(second, fp, 400).holds());
  }
}
