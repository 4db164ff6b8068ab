#include "whilecf/fuzz.hpp"

#include "whilecf/extended.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/simulation.hpp"
#include "whilecf/smallstep.hpp"
#include "whilecf/verify.hpp"

#include <sstream>

namespace whilecf::fuzz {

using gen::Rng;

std::string report_to_string(const SuiteReport& r) {
  std::ostringstream os;
  os << r.name << ": " << r.performed << " instances, " << r.skipped << " skipped, "
     << r.violations << " violations";
  for (const auto& repro : r.reproducers) os << "\n  repro: " << repro;
  return os.str();
}

namespace {

// ---- shrinking -----------------------------------------------------------

std::vector<CmdPtr> shrink_candidates(const CmdPtr& c) {
  std::vector<CmdPtr> out;
  if (c->kind == CmdKind::Skip) return out;
  out.push_back(cmd_skip());
  switch (c->kind) {
    case CmdKind::Seq:
    case CmdKind::For:
      out.push_back(c->a);
      out.push_back(c->b);
      if (c->kind == CmdKind::Seq) {
        for (const CmdPtr& a2 : shrink_candidates(c->a)) out.push_back(cmd_seq(a2, c->b));
        for (const CmdPtr& b2 : shrink_candidates(c->b)) out.push_back(cmd_seq(c->a, b2));
      } else {
        for (const CmdPtr& a2 : shrink_candidates(c->a)) out.push_back(cmd_for(a2, c->b));
        for (const CmdPtr& b2 : shrink_candidates(c->b)) out.push_back(cmd_for(c->a, b2));
      }
      break;
    case CmdKind::If:
      out.push_back(c->a);
      out.push_back(c->b);
      for (const CmdPtr& a2 : shrink_candidates(c->a))
        out.push_back(cmd_if(c->expr, a2, c->b));
      for (const CmdPtr& b2 : shrink_candidates(c->b))
        out.push_back(cmd_if(c->expr, c->a, b2));
      break;
    default: break;
  }
  return out;
}

bool outcomes_disagree(const CmdPtr& c, const State& s, const Footprint& fp, uint64_t fuel) {
  Outcome ob = eval_big(c, s, fp, fuel);
  if (ob.kind == OutcomeKind::OutOfFuel) return false;
  Outcome os = run_small(Config{c, kont_empty(), s}, fp, fuel);
  if (os.kind == OutcomeKind::OutOfFuel) return false;
  return !(ob == os);
}

// shrink the program first, then drive state components toward zero
std::pair<CmdPtr, State> shrink_disagreement(CmdPtr c, State s, const Footprint& fp,
                                             uint64_t fuel) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const CmdPtr& cand : shrink_candidates(c)) {
      if (outcomes_disagree(cand, s, fp, fuel)) {
        c = cand;
        progress = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < s.vals.size(); ++i) {
    while (s.vals[i] > 0) {
      State t = s;
      t.vals[i] = 0;
      if (!outcomes_disagree(c, t, fp, fuel)) break;
      s = t;
    }
  }
  return {c, s};
}

bool conclusive_holds(const Verdict& v) { return v.kind == VerdictKind::Holds; }

std::string describe_triple_violation(const Triple& t, const Verdict& v, const Footprint& fp) {
  return triple_to_string(t) + " -> " + verdict_to_string(v, fp);
}

// ---- rule instances --------------------------------------------------------

struct RuleInstance {
  std::vector<Triple> premises;
  Triple conclusion;
};

std::optional<RuleInstance> gen_rule_instance(size_t rule, Rng& rng, const SuiteConfig& cfg) {
  const Footprint& fp = cfg.fp;
  size_t csize = cfg.size >= 6 ? cfg.size / 3 : 2;
  switch (rule) {
    case 0: { // skip
      AssertionPtr p = gen::random_closed_assertion(rng, fp, 2);
      return RuleInstance{{}, Triple{p, cmd_skip(), p, a_false(), a_false()}};
    }
    case 1: { // break
      AssertionPtr p = gen::random_closed_assertion(rng, fp, 2);
      return RuleInstance{{}, Triple{p, cmd_break(), a_false(), p, a_false()}};
    }
    case 2: { // continue
      AssertionPtr p = gen::random_closed_assertion(rng, fp, 2);
      return RuleInstance{{}, Triple{p, cmd_continue(), a_false(), a_false(), p}};
    }
    case 3: { // assign (backward form; the pre must ensure evaluation)
      std::string x = fp.vars()[rng.below(fp.vars().size())];
      ExprPtr e = gen::random_expr(rng, fp, 2, rng.chance(30));
      AssertionPtr q = gen::random_closed_assertion(rng, fp, 2);
      AssertionPtr pre = subst(q, x, e);
      if (expr_has_div(e) && !entails(pre, a_defined(e), fp, cfg.cap).holds())
        return std::nullopt;
      return RuleInstance{{}, Triple{pre, cmd_assign(x, e), q, a_false(), a_false()}};
    }
    case 4: { // seq
      CmdPtr c1 = gen_random_command(rng.eng(), csize, fp);
      CmdPtr c2 = gen_random_command(rng.eng(), csize, fp);
      std::vector<State> s = gen::random_state_subset(rng, fp, 30);
      gen::OutcomeSets o1 = gen::outcome_sets(c1, s, fp, cfg.fuel);
      if (!o1.clean()) return std::nullopt;
      gen::OutcomeSets o2 = gen::outcome_sets(c2, o1.normal, fp, cfg.fuel);
      if (!o2.clean()) return std::nullopt;
      AssertionPtr p = gen::char_states(s, fp);
      AssertionPtr mid = gen::char_states(o1.normal, fp);
      AssertionPtr q = gen::char_states(o2.normal, fp);
      std::vector<State> brk = o1.brk, con = o1.con;
      brk.insert(brk.end(), o2.brk.begin(), o2.brk.end());
      con.insert(con.end(), o2.con.begin(), o2.con.end());
      AssertionPtr rb = gen::char_states(brk, fp);
      AssertionPtr rc = gen::char_states(con, fp);
      return RuleInstance{{Triple{p, c1, mid, rb, rc}, Triple{mid, c2, q, rb, rc}},
                          Triple{p, cmd_seq(c1, c2), q, rb, rc}};
    }
    case 5: { // if (the pre must ensure the condition evaluates)
      ExprPtr e = gen::random_expr(rng, fp, 2, rng.chance(20));
      CmdPtr c1 = gen_random_command(rng.eng(), csize, fp);
      CmdPtr c2 = gen_random_command(rng.eng(), csize, fp);
      std::vector<State> st, se;
      for (const State& s : gen::random_state_subset(rng, fp, 30)) {
        auto v = eval_expr(e, s, fp);
        if (!v) continue;
        (*v != 0 ? st : se).push_back(s);
      }
      gen::OutcomeSets o1 = gen::outcome_sets(c1, st, fp, cfg.fuel);
      gen::OutcomeSets o2 = gen::outcome_sets(c2, se, fp, cfg.fuel);
      if (!o1.clean() || !o2.clean()) return std::nullopt;
      std::vector<State> pre = st;
      pre.insert(pre.end(), se.begin(), se.end());
      AssertionPtr p = gen::char_states(pre, fp);
      auto join = [&](const std::vector<State>& a, const std::vector<State>& b) {
        std::vector<State> u = a;
        u.insert(u.end(), b.begin(), b.end());
        return gen::char_states(u, fp);
      };
      AssertionPtr q = join(o1.normal, o2.normal);
      AssertionPtr rb = join(o1.brk, o2.brk);
      AssertionPtr rc = join(o1.con, o2.con);
      return RuleInstance{{Triple{a_and(p, guard_true(e)), c1, q, rb, rc},
                           Triple{a_and(p, guard_false(e)), c2, q, rb, rc}},
                          Triple{p, cmd_if(e, c1, c2), q, rb, rc}};
    }
    case 6: { // loop
      CmdPtr body = gen_random_command(rng.eng(), csize, fp);
      CmdPtr incr = gen_random_command(rng.eng(), csize, fp);
      std::vector<State> init = gen::random_state_subset(rng, fp, 20);
      gen::LoopReach lr = gen::loop_reachable(body, incr, init, fp, cfg.fuel);
      if (lr.failed) return std::nullopt;
      AssertionPtr p = gen::char_states(lr.head, fp);
      AssertionPtr inv = gen::char_states(lr.ientry, fp);
      AssertionPtr q = gen::char_states(lr.exits, fp);
      return RuleInstance{{Triple{p, body, inv, q, inv}, Triple{inv, incr, p, q, a_false()}},
                          Triple{p, cmd_for(body, incr), q, a_false(), a_false()}};
    }
    default: { // consequence
      CmdPtr c = gen_random_command(rng.eng(), csize, fp);
      std::vector<State> s = gen::random_state_subset(rng, fp, 30);
      gen::OutcomeSets o = gen::outcome_sets(c, s, fp, cfg.fuel);
      if (!o.clean()) return std::nullopt;
      AssertionPtr p0 = gen::char_states(s, fp);
      AssertionPtr q0 = gen::char_states(o.normal, fp);
      AssertionPtr rb0 = gen::char_states(o.brk, fp);
      AssertionPtr rc0 = gen::char_states(o.con, fp);
      // narrow the pre, widen the posts
      std::vector<State> sub;
      for (const State& st : s)
        if (rng.chance(60)) sub.push_back(st);
      AssertionPtr p = gen::char_states(sub, fp);
      auto widen = [&](const AssertionPtr& a) {
        return rng.chance(50) ? a_or(a, gen::random_closed_assertion(rng, fp, 1)) : a;
      };
      AssertionPtr q = widen(q0), rb = widen(rb0), rc = widen(rc0);
      return RuleInstance{{Triple{p0, c, q0, rb0, rc0}}, Triple{p, c, q, rb, rc}};
    }
  }
}

const char* rule_names[] = {"hoare-skip", "hoare-break",  "hoare-continue", "hoare-assign",
                            "hoare-seq",  "hoare-if",     "hoare-loop",     "hoare-consequence"};

} // namespace

SuiteReport semantics_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "semantics";
  std::vector<State> states = enumerate_states(cfg.fp, cfg.cap);
  for (int i = 0; i < cfg.count; ++i) {
    CmdPtr c = gen_random_command(cfg.seed * 1000003 + i, cfg.size, cfg.fp);
    ++report.performed;
    for (const State& s : states) {
      if (outcomes_disagree(c, s, cfg.fp, cfg.fuel)) {
        ++report.violations;
        auto [mc, ms] = shrink_disagreement(c, s, cfg.fp, cfg.fuel);
        std::ostringstream os;
        os << "seed=" << cfg.seed << " i=" << i << " program `" << pretty(mc) << "` state "
           << state_to_string(ms, cfg.fp) << ": "
           << outcome_to_string(eval_big(mc, ms, cfg.fp, cfg.fuel), cfg.fp) << " vs "
           << outcome_to_string(run_small(Config{mc, kont_empty(), ms}, cfg.fp, cfg.fuel),
                                cfg.fp);
        report.reproducers.push_back(os.str());
        break;
      }
    }
  }
  return report;
}

SuiteReport rules_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "rules";
  for (size_t rule = 0; rule < 8; ++rule) {
    Rng rng(cfg.seed * 31 + rule);
    int done = 0, attempts = 0;
    while (done < cfg.count && attempts < cfg.count * 80) {
      ++attempts;
      auto inst = gen_rule_instance(rule, rng, cfg);
      if (!inst) {
        ++report.skipped;
        continue;
      }
      bool premises_ok = true;
      for (const Triple& premise : inst->premises) {
        if (!conclusive_holds(valid_big(premise, cfg.fp, cfg.fuel, cfg.cap)) ||
            !conclusive_holds(valid_wp(premise, cfg.fp, cfg.fuel * 8, cfg.cap))) {
          premises_ok = false;
          break;
        }
      }
      if (!premises_ok) {
        ++report.skipped;
        continue;
      }
      ++done;
      ++report.performed;
      Verdict vb = valid_big(inst->conclusion, cfg.fp, cfg.fuel, cfg.cap);
      Verdict vw = valid_wp(inst->conclusion, cfg.fp, cfg.fuel * 8, cfg.cap);
      if (vb.is_counterexample() || vw.is_counterexample()) {
        ++report.violations;
        report.reproducers.push_back(
            std::string(rule_names[rule]) + ": " +
            describe_triple_violation(inst->conclusion,
                                      vb.is_counterexample() ? vb : vw, cfg.fp));
      }
    }
  }
  return report;
}

SuiteReport refinements_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "refinements";
  Rng rng(cfg.seed * 97 + 5);
  size_t csize = cfg.size >= 6 ? cfg.size / 4 : 2;
  auto check_pair = [&](const CmdPtr& l, const CmdPtr& r, const char* what) {
    ++report.performed;
    Verdict vb = refines_big(l, r, cfg.fp, cfg.fuel, cfg.cap);
    Verdict vs = refines_small(l, r, cfg.fp, cfg.fuel * 8, cfg.cap);
    if (vb.is_counterexample() || vs.is_counterexample()) {
      ++report.violations;
      report.reproducers.push_back(std::string(what) + ": `" + pretty(l) + "` vs `" +
                                   pretty(r) + "` " +
                                   verdict_to_string(vb.is_counterexample() ? vb : vs, cfg.fp));
    }
  };
  for (int i = 0; i < cfg.count; ++i) {
    ExprPtr e = gen::random_expr(rng, cfg.fp, 2, rng.chance(25));
    CmdPtr c1 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c2 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c3 = gen_random_command(rng.eng(), csize, cfg.fp);
    check_pair(cmd_seq(cmd_if(e, c1, c2), c3),
               cmd_if(e, cmd_seq(c1, c3), cmd_seq(c2, c3)), "if-seq");
  }
  int made = 0;
  while (made < cfg.count) {
    CmdPtr c1 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c2 = gen_random_command(rng.eng(), csize, cfg.fp);
    if (has_toplevel_continue(c1) || has_toplevel_continue(c2)) {
      ++report.skipped;
      continue;
    }
    ++made;
    check_pair(cmd_for(c1, c2), cmd_for(cmd_seq(c1, c2), cmd_skip()), "loop-nocontinue");
  }
  return report;
}

SuiteReport oracle_agreement_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "oracle-agreement";
  Rng rng(cfg.seed * 131 + 7);
  std::vector<State> all = enumerate_states(cfg.fp, cfg.cap);
  uint64_t small_fuel = cfg.fuel * 16;
  for (int i = 0; i < cfg.count; ++i) {
    CmdPtr c = gen_random_command(rng.eng(), cfg.size, cfg.fp);
    Triple t;
    if (rng.chance(40)) {
      // bias toward valid triples via exact outcome sets
      std::vector<State> s = gen::random_state_subset(rng, cfg.fp, 30);
      gen::OutcomeSets o = gen::outcome_sets(c, s, cfg.fp, cfg.fuel);
      if (!o.clean()) {
        ++report.skipped;
        continue;
      }
      t = Triple{gen::char_states(s, cfg.fp), c, gen::char_states(o.normal, cfg.fp),
                 gen::char_states(o.brk, cfg.fp), gen::char_states(o.con, cfg.fp)};
    } else {
      t = Triple{gen::random_closed_assertion(rng, cfg.fp, 2), c,
                 gen::random_closed_assertion(rng, cfg.fp, 2),
                 gen::random_closed_assertion(rng, cfg.fp, 2),
                 gen::random_closed_assertion(rng, cfg.fp, 2)};
    }
    // both oracles are conclusive only when every relevant run completes
    bool conclusive = true;
    Env none;
    for (const State& s : all) {
      if (!satisfies(s, none, t.pre, cfg.fp)) continue;
      if (eval_big(t.cmd, s, cfg.fp, cfg.fuel).kind == OutcomeKind::OutOfFuel ||
          run_small(Config{t.cmd, kont_empty(), s}, cfg.fp, small_fuel).kind ==
              OutcomeKind::OutOfFuel) {
        conclusive = false;
        break;
      }
    }
    if (!conclusive) {
      ++report.skipped;
      continue;
    }
    ++report.performed;
    Verdict vb = valid_big(t, cfg.fp, cfg.fuel, cfg.cap);
    Verdict vw = valid_wp(t, cfg.fp, small_fuel, cfg.cap);
    if (vb.kind == VerdictKind::Inconclusive) {
      --report.performed;
      ++report.skipped;
      continue;
    }
    if (vb.kind != vw.kind) {
      ++report.violations;
      report.reproducers.push_back("disagreement on " + triple_to_string(t) + ": big " +
                                   verdict_to_string(vb, cfg.fp) + ", wp " +
                                   verdict_to_string(vw, cfg.fp));
    }
  }
  return report;
}

SuiteReport checker_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "checker";
  Rng rng(cfg.seed * 151 + 11);
  int made = 0;
  while (made < cfg.count) {
    CmdPtr c = gen_random_command(rng.eng(), cfg.size, cfg.fp);
    std::vector<State> s = gen::random_state_subset(rng, cfg.fp, 30);
    AssertionPtr pre = gen::char_states(s, cfg.fp);
    auto tree = gen::make_checked_tree(c, pre, s, cfg.fp, cfg.fuel);
    if (!tree) {
      ++report.skipped;
      continue;
    }
    ++made;
    ++report.performed;
    Certificate cert{*tree, cfg.fp, source_hash_of(pretty(c))};
    std::string text = print_certificate(cert);
    Certificate back = parse_certificate(text);
    CheckReport cr = check(back.tree, back.fp, cfg.cap);
    if (!cr.ok || print_certificate(back) != text) {
      ++report.violations;
      report.reproducers.push_back("certificate re-check failed for `" + pretty(c) + "`" +
                                   (cr.ok ? " (round trip)" : (": " + cr.failures[0].obligation)));
      continue;
    }
    Triple concl = conclusion(back.tree);
    Verdict vb = valid_big(concl, cfg.fp, cfg.fuel, cfg.cap);
    if (vb.is_counterexample()) {
      ++report.violations;
      report.reproducers.push_back("checked certificate refuted: " +
                                   describe_triple_violation(concl, vb, cfg.fp));
    }
  }
  return report;
}

SuiteReport bigstep_theorems_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "bigstep-theorems";
  Rng rng(cfg.seed * 163 + 13);
  size_t csize = cfg.size >= 6 ? cfg.size / 4 : 2;

  // if-seq: a valid triple about the distributed if yields a valid triple
  // about the sequenced if
  int made = 0;
  while (made < cfg.count) {
    ExprPtr e = gen::random_expr(rng, cfg.fp, 2, rng.chance(25));
    CmdPtr c1 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c2 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c3 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr distributed = cmd_if(e, cmd_seq(c1, c3), cmd_seq(c2, c3));
    Triple premise;
    if (rng.chance(50)) {
      std::vector<State> s;
      for (const State& st : gen::random_state_subset(rng, cfg.fp, 30))
        if (eval_expr(e, st, cfg.fp)) s.push_back(st);
      gen::OutcomeSets o = gen::outcome_sets(distributed, s, cfg.fp, cfg.fuel);
      if (!o.clean()) {
        ++report.skipped;
        continue;
      }
      premise = Triple{gen::char_states(s, cfg.fp), distributed,
                       gen::char_states(o.normal, cfg.fp), gen::char_states(o.brk, cfg.fp),
                       gen::char_states(o.con, cfg.fp)};
    } else {
      premise = Triple{gen::random_closed_assertion(rng, cfg.fp, 2), distributed,
                       gen::random_closed_assertion(rng, cfg.fp, 2),
                       gen::random_closed_assertion(rng, cfg.fp, 2),
                       gen::random_closed_assertion(rng, cfg.fp, 2)};
    }
    if (!conclusive_holds(valid_big(premise, cfg.fp, cfg.fuel, cfg.cap))) {
      ++report.skipped;
      continue;
    }
    ++made;
    ++report.performed;
    Triple concl = premise;
    concl.cmd = cmd_seq(cmd_if(e, c1, c2), c3);
    Verdict v = valid_big(concl, cfg.fp, cfg.fuel, cfg.cap);
    if (v.is_counterexample()) {
      ++report.violations;
      report.reproducers.push_back("if-seq theorem: " +
                                   describe_triple_violation(concl, v, cfg.fp));
    }
  }

  // nocontinue: the continue post of a continue-free command is arbitrary
  made = 0;
  while (made < cfg.count) {
    CmdPtr c = gen_random_command(rng.eng(), csize * 2, cfg.fp);
    if (has_toplevel_continue(c)) {
      ++report.skipped;
      continue;
    }
    std::vector<State> s = gen::random_state_subset(rng, cfg.fp, 30);
    gen::OutcomeSets o = gen::outcome_sets(c, s, cfg.fp, cfg.fuel);
    if (!o.clean()) {
      ++report.skipped;
      continue;
    }
    Triple premise{gen::char_states(s, cfg.fp), c, gen::char_states(o.normal, cfg.fp),
                   gen::char_states(o.brk, cfg.fp), gen::random_closed_assertion(rng, cfg.fp, 2)};
    if (!conclusive_holds(valid_big(premise, cfg.fp, cfg.fuel, cfg.cap))) {
      ++report.skipped;
      continue;
    }
    ++made;
    ++report.performed;
    Triple concl = premise;
    concl.post_con = gen::random_closed_assertion(rng, cfg.fp, 2);
    Verdict v = valid_big(concl, cfg.fp, cfg.fuel, cfg.cap);
    if (v.is_counterexample()) {
      ++report.violations;
      report.reproducers.push_back("nocontinue theorem: " +
                                   describe_triple_violation(concl, v, cfg.fp));
    }
  }
  return report;
}

namespace {

struct TransformerHarness {
  const SuiteConfig& cfg;
  SuiteReport& report;
  Rng rng;

  TransformerHarness(const SuiteConfig& c, SuiteReport& r) : cfg(c), report(r), rng(c.seed * 7) {}

  void violation(const std::string& what) {
    ++report.violations;
    report.reproducers.push_back(what);
  }

  bool expect_checks(const ProofPtr& t, const char* what) {
    CheckReport cr = check(t, cfg.fp, cfg.cap);
    if (!cr.ok) {
      violation(std::string(what) + ": output does not check (" + cr.failures[0].path + " " +
                cr.failures[0].obligation + ")");
      return false;
    }
    return true;
  }

  bool expect_conclusion(const ProofPtr& t, const Triple& expected, const char* what) {
    Triple got = conclusion(t);
    if (!triple_equal(got, expected)) {
      violation(std::string(what) + ": conclusion " + triple_to_string(got) +
                " differs from expected " + triple_to_string(expected));
      return false;
    }
    return true;
  }

  // semantic preservation: never refuted, and conclusively valid whenever the
  // inputs were conclusively valid
  bool expect_valid(const Triple& t, const char* what, bool require_holds) {
    Verdict v = valid_big(t, cfg.fp, cfg.fuel, cfg.cap);
    if (v.is_counterexample() || (require_holds && !v.holds())) {
      violation(std::string(what) + ": " + describe_triple_violation(t, v, cfg.fp));
      return false;
    }
    return true;
  }

  bool concluded_holds(const ProofPtr& t) {
    return valid_big(conclusion(t), cfg.fp, cfg.fuel, cfg.cap).holds();
  }

  std::optional<ProofPtr> random_tree(const CmdPtr& c, bool wrap) {
    std::vector<State> s = gen::random_state_subset(rng, cfg.fp, 30);
    AssertionPtr pre = gen::char_states(s, cfg.fp);
    auto t = gen::make_checked_tree(c, pre, s, cfg.fp, cfg.fuel);
    if (!t) return std::nullopt;
    return wrap ? gen::maybe_wrap_benign_conseq(rng, *t, cfg.fp) : *t;
  }

  CmdPtr random_cmd(size_t size) { return gen_random_command(rng.eng(), size, cfg.fp); }
};

} // namespace

SuiteReport transformers_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "transformers";
  TransformerHarness h(cfg, report);
  size_t csize = cfg.size >= 6 ? cfg.size / 4 : 2;

  auto run_n = [&](const char* what, auto&& one) {
    int made = 0, attempts = 0;
    while (made < cfg.count && attempts < cfg.count * 80) {
      ++attempts;
      try {
        if (one()) {
          ++made;
          ++report.performed;
        } else {
          ++report.skipped;
        }
      } catch (const std::exception& e) {
        ++report.violations;
        report.reproducers.push_back(std::string(what) + ": exception " + e.what());
        ++made;
      }
    }
  };

  run_n("inv_seq", [&] {
    CmdPtr c = cmd_seq(h.random_cmd(csize), h.random_cmd(csize));
    auto t = h.random_tree(c, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    SplitResult s = inv_seq(*t);
    bool ok = h.expect_checks(s.left, "inv_seq.left") && h.expect_checks(s.right, "inv_seq.right");
    if (ok) {
      Triple lt = conclusion(s.left), rt = conclusion(s.right);
      if (!assertion_equal(lt.pre, concl.pre) || !cmd_equal(lt.cmd, c->a) ||
          !assertion_equal(rt.post, concl.post) || !cmd_equal(rt.cmd, c->b) ||
          !assertion_equal(lt.post, s.mid) || !assertion_equal(rt.pre, s.mid))
        h.violation("inv_seq: premise shapes are off for " + triple_to_string(concl));
      bool held = h.concluded_holds(*t);
      h.expect_valid(lt, "inv_seq.left", held);
      h.expect_valid(rt, "inv_seq.right", held);
      // recomposition reproves the conclusion
      ProofPtr re = r_seq(s.mid, s.left, s.right);
      h.expect_conclusion(re, concl, "inv_seq.recompose");
      h.expect_checks(re, "inv_seq.recompose");
    }
    return true;
  });

  run_n("inv_loop", [&] {
    CmdPtr c = cmd_for(h.random_cmd(csize), h.random_cmd(csize));
    auto t = h.random_tree(c, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    LoopSplit s = inv_loop(*t);
    bool ok = h.expect_checks(s.body, "inv_loop.body") && h.expect_checks(s.incr, "inv_loop.incr");
    if (ok) {
      if (!entails(s.entry_from, s.entry_to, cfg.fp, cfg.cap).holds())
        h.violation("inv_loop: entry entailment fails for " + triple_to_string(concl));
      Triple bt = conclusion(s.body);
      Triple it = conclusion(s.incr);
      if (!assertion_equal(bt.pre, s.i1) || !assertion_equal(bt.post, s.i2) ||
          !assertion_equal(bt.post_con, s.i2) || !assertion_equal(it.pre, s.i2) ||
          !assertion_equal(it.post, s.i1) || !is_false(it.post_con) ||
          !assertion_equal(bt.post_brk, concl.post) || !assertion_equal(it.post_brk, concl.post))
        h.violation("inv_loop: premise shapes are off for " + triple_to_string(concl));
      h.expect_valid(bt, "inv_loop.body", false);
      h.expect_valid(it, "inv_loop.incr", false);
    }
    return true;
  });

  run_n("inv_if", [&] {
    ExprPtr e = gen::random_expr(h.rng, cfg.fp, 2, false);
    CmdPtr c = cmd_if(e, h.random_cmd(csize), h.random_cmd(csize));
    auto t = h.random_tree(c, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    auto [th, el] = inv_if(*t);
    bool ok = h.expect_checks(th, "inv_if.then") && h.expect_checks(el, "inv_if.else");
    if (ok) {
      Triple tt = conclusion(th), et = conclusion(el);
      if (!assertion_equal(tt.pre, a_and(concl.pre, guard_true(e))) ||
          !assertion_equal(et.pre, a_and(concl.pre, guard_false(e))) ||
          !assertion_equal(tt.post, concl.post) || !assertion_equal(et.post, concl.post))
        h.violation("inv_if: premise shapes are off for " + triple_to_string(concl));
      bool held = h.concluded_holds(*t);
      h.expect_valid(tt, "inv_if.then", held);
      h.expect_valid(et, "inv_if.else", held);
    }
    return true;
  });

  run_n("merge_disj", [&] {
    CmdPtr c = h.random_cmd(cfg.size / 2 ? cfg.size / 2 : 2);
    auto t1 = h.random_tree(c, true);
    auto t2 = h.random_tree(c, true);
    if (!t1 || !t2) return false;
    Triple a = conclusion(*t1), b = conclusion(*t2);
    ProofPtr m = merge_disj(*t1, *t2);
    Triple expected{a_or_join(a.pre, b.pre), c, a_or_join(a.post, b.post),
                    a_or_join(a.post_brk, b.post_brk), a_or_join(a.post_con, b.post_con)};
    if (h.expect_checks(m, "merge_disj") && h.expect_conclusion(m, expected, "merge_disj"))
      h.expect_valid(expected, "merge_disj",
                     h.concluded_holds(*t1) && h.concluded_holds(*t2));
    return true;
  });

  run_n("ex_finite", [&] {
    CmdPtr c = h.random_cmd(csize);
    std::vector<State> s = gen::random_state_subset(h.rng, cfg.fp, 40);
    gen::OutcomeSets o = gen::outcome_sets(c, s, cfg.fp, cfg.fuel);
    if (!o.clean()) return false;
    AssertionPtr q = gen::char_states(o.normal, cfg.fp);
    AssertionPtr rb = gen::char_states(o.brk, cfg.fp);
    AssertionPtr rc = gen::char_states(o.con, cfg.fp);
    // partition the pre-states by the first variable's value
    std::vector<std::pair<Value, ProofPtr>> family;
    size_t domain = 1 + h.rng.below(cfg.fp.modulus());
    for (Value d = 0; d < domain; ++d) {
      std::vector<State> part;
      for (const State& st : s)
        if (st.vals[0] == d) part.push_back(st);
      auto tree = gen::make_tree_for_triple(
          Triple{gen::char_states(part, cfg.fp), c, q, rb, rc}, part, cfg.fp, cfg.fuel);
      if (!tree) return false;
      family.emplace_back(d, *tree);
    }
    ProofPtr ex = ex_finite(family, cfg.fp);
    if (h.expect_checks(ex, "ex_finite")) {
      Triple concl = conclusion(ex);
      if (concl.pre->kind != AKind::Exists)
        h.violation("ex_finite: conclusion precondition is not existential");
      bool held = true;
      for (const auto& [d, tree] : family) held = held && h.concluded_holds(tree);
      h.expect_valid(concl, "ex_finite", held);
    }
    return true;
  });

  run_n("nocontinue", [&] {
    CmdPtr c = h.random_cmd(cfg.size / 2 ? cfg.size / 2 : 2);
    if (has_toplevel_continue(c)) return false;
    auto t = h.random_tree(c, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    AssertionPtr rc = gen::random_closed_assertion(h.rng, cfg.fp, 2);
    ProofPtr out = nocontinue(*t, rc);
    Triple expected = concl;
    expected.post_con = rc;
    if (h.expect_checks(out, "nocontinue") && h.expect_conclusion(out, expected, "nocontinue"))
      h.expect_valid(expected, "nocontinue", h.concluded_holds(*t));
    return true;
  });

  run_n("if_seq", [&] {
    ExprPtr e = gen::random_expr(h.rng, cfg.fp, 2, false);
    CmdPtr c1 = h.random_cmd(csize), c2 = h.random_cmd(csize), c3 = h.random_cmd(csize);
    CmdPtr premise_cmd = cmd_if(e, cmd_seq(c1, c3), cmd_seq(c2, c3));
    auto t = h.random_tree(premise_cmd, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    ProofPtr out = if_seq(*t);
    Triple expected = concl;
    expected.cmd = cmd_seq(cmd_if(e, c1, c2), c3);
    if (h.expect_checks(out, "if_seq") && h.expect_conclusion(out, expected, "if_seq"))
      h.expect_valid(expected, "if_seq", h.concluded_holds(*t));
    return true;
  });

  run_n("loop_nocontinue", [&] {
    CmdPtr c1 = h.random_cmd(csize), c2 = h.random_cmd(csize);
    if (has_toplevel_continue(c1) || has_toplevel_continue(c2)) return false;
    CmdPtr premise_cmd = cmd_for(cmd_seq(c1, c2), cmd_skip());
    auto t = h.random_tree(premise_cmd, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    ProofPtr out = loop_nocontinue(*t);
    Triple expected = concl;
    expected.cmd = cmd_for(c1, c2);
    if (h.expect_checks(out, "loop_nocontinue") &&
        h.expect_conclusion(out, expected, "loop_nocontinue"))
      h.expect_valid(expected, "loop_nocontinue", h.concluded_holds(*t));
    return true;
  });

  run_n("loop_unroll1", [&] {
    CmdPtr c1 = h.random_cmd(csize), c2 = h.random_cmd(csize);
    if (has_toplevel_continue(c2)) return false;
    std::vector<State> s = gen::random_state_subset(h.rng, cfg.fp, 25);
    gen::OutcomeSets o1 = gen::outcome_sets(c1, s, cfg.fp, cfg.fuel);
    if (!o1.clean()) return false;
    std::vector<State> p1s = o1.normal;
    p1s.insert(p1s.end(), o1.con.begin(), o1.con.end());
    gen::OutcomeSets o2 = gen::outcome_sets(c2, p1s, cfg.fp, cfg.fuel);
    if (!o2.clean() || !o2.con.empty()) return false;
    gen::LoopReach lr = gen::loop_reachable(c1, c2, o2.normal, cfg.fp, cfg.fuel);
    if (lr.failed) return false;

    std::vector<State> breaks = o1.brk;
    breaks.insert(breaks.end(), o2.brk.begin(), o2.brk.end());
    AssertionPtr p = gen::char_states(s, cfg.fp);
    AssertionPtr p1 = gen::char_states(p1s, cfg.fp);
    AssertionPtr p2 = gen::char_states(o2.normal, cfg.fp);
    AssertionPtr rb = gen::char_states(breaks, cfg.fp);
    std::vector<State> qs = lr.exits;
    qs.insert(qs.end(), breaks.begin(), breaks.end());
    AssertionPtr q = gen::char_states(qs, cfg.fp);

    auto t1 = gen::make_tree_for_triple(Triple{p, c1, p1, rb, p1}, s, cfg.fp, cfg.fuel);
    auto t2 = gen::make_tree_for_triple(Triple{p1, c2, p2, rb, p2}, p1s, cfg.fp, cfg.fuel);
    auto t3 = gen::make_tree_for_triple(Triple{p2, cmd_for(c1, c2), q, a_false(), a_false()},
                                        o2.normal, cfg.fp, cfg.fuel);
    if (!t1 || !t2 || !t3) return false;
    ProofPtr out = loop_unroll1(*t1, *t2, *t3, cfg.fp);
    Triple expected{p, cmd_for(c1, c2), q, a_false(), a_false()};
    if (h.expect_checks(out, "loop_unroll1") &&
        h.expect_conclusion(out, expected, "loop_unroll1"))
      h.expect_valid(expected, "loop_unroll1", h.concluded_holds(*t1) &&
                                                   h.concluded_holds(*t2) &&
                                                   h.concluded_holds(*t3));
    return true;
  });

  run_n("seq_assoc", [&] {
    CmdPtr a = h.random_cmd(csize), b = h.random_cmd(csize), d = h.random_cmd(csize);
    CmdPtr c = cmd_seq(cmd_seq(a, b), d);
    auto t = h.random_tree(c, true);
    if (!t) return false;
    Triple concl = conclusion(*t);
    ProofPtr out = seq_assoc(*t);
    Triple expected = concl;
    expected.cmd = cmd_seq(a, cmd_seq(b, d));
    if (h.expect_checks(out, "seq_assoc") && h.expect_conclusion(out, expected, "seq_assoc")) {
      ProofPtr back = seq_unassoc(out);
      h.expect_conclusion(back, concl, "seq_assoc.round_trip");
      h.expect_checks(back, "seq_assoc.round_trip");
    }
    return true;
  });

  run_n("conseq_pre", [&] {
    CmdPtr c = h.random_cmd(csize);
    auto t = h.random_tree(c, false);
    if (!t) return false;
    Triple concl = conclusion(*t);
    AssertionPtr pre = a_and(concl.pre, gen::random_closed_assertion(h.rng, cfg.fp, 1));
    ProofPtr out = conseq_pre(*t, pre, cfg.fp);
    Triple expected = concl;
    expected.pre = pre;
    if (h.expect_checks(out, "conseq_pre") && h.expect_conclusion(out, expected, "conseq_pre"))
      h.expect_valid(expected, "conseq_pre", h.concluded_holds(*t));
    return true;
  });

  return report;
}

SuiteReport simulation_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  report.name = "simulation";
  Rng rng(cfg.seed * 181 + 17);
  size_t csize = cfg.size >= 6 ? cfg.size / 4 : 2;
  SimBounds bounds;
  bounds.fuel = cfg.fuel * 4;

  auto exercise_table = [&](RelationTable table, const char* what) {
    ++report.performed;
    SimReport sr = check_simulation(table, cfg.fp, cfg.fuel * 4, false, cfg.cap);
    if (!sr.ok) {
      ++report.violations;
      report.reproducers.push_back(
          std::string(what) + ": " + sim_clause_name(sr.violations[0].clause) +
          " violation at " + prog_pair_to_string(table.pairs[sr.violations[0].pair_index]) +
          " state " + state_to_string(sr.violations[0].state, cfg.fp) + " (" +
          sr.violations[0].trace + ")");
      return;
    }
    // the wp lifting lemma over random posts
    for (int k = 0; k < 10; ++k) {
      Posts posts{gen::random_closed_assertion(rng, cfg.fp, 2),
                  gen::random_closed_assertion(rng, cfg.fp, 2),
                  gen::random_closed_assertion(rng, cfg.fp, 2)};
      Verdict v = lemma_wp_sim_check(table, posts, cfg.fp, cfg.fuel * 4, cfg.cap);
      if (v.is_counterexample()) {
        ++report.violations;
        report.reproducers.push_back(std::string(what) + ": wp lifting fails: " +
                                     verdict_to_string(v, cfg.fp));
        return;
      }
    }
    // the guard lifting lemma over random preconditions (cycle disjunct on)
    RelationTable guard_table = table;
    guard_table.allow_state_preserving_cycle = true;
    for (int k = 0; k < 10; ++k) {
      AssertionPtr p = gen::random_closed_assertion(rng, cfg.fp, 2);
      Verdict v = lemma_guard_sim_check(guard_table, p, cfg.fp, cfg.fuel * 4, cfg.cap);
      if (v.is_counterexample()) {
        ++report.violations;
        report.reproducers.push_back(std::string(what) + ": guard lifting fails: " +
                                     verdict_to_string(v, cfg.fp));
        return;
      }
    }
    // a one-pair mutation must be detected
    RelationTable mutated = table;
    size_t at = rng.below(mutated.pairs.size());
    mutated.pairs[at] = ProgPair{cmd_skip(), kont_empty(), cmd_break(), kont_empty()};
    SimReport mr = check_simulation(mutated, cfg.fp, cfg.fuel * 4, false, cfg.cap);
    if (mr.ok) {
      ++report.violations;
      report.reproducers.push_back(std::string(what) + ": mutated table passes the check");
    }
  };

  for (int i = 0; i < cfg.count; ++i) {
    ExprPtr e = gen::random_expr(rng, cfg.fp, 2, rng.chance(25));
    CmdPtr c1 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c2 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c3 = gen_random_command(rng.eng(), csize, cfg.fp);
    try {
      exercise_table(build_rel_ifseq(e, c1, c2, c3, cfg.fp, bounds), "ifseq-table");
    } catch (const CapExceeded&) {
      ++report.skipped;
    }
  }
  int made = 0;
  while (made < cfg.count) {
    CmdPtr c1 = gen_random_command(rng.eng(), csize, cfg.fp);
    CmdPtr c2 = gen_random_command(rng.eng(), csize, cfg.fp);
    if (has_toplevel_continue(c1) || has_toplevel_continue(c2)) {
      ++report.skipped;
      continue;
    }
    ++made;
    try {
      exercise_table(build_rel_loop_nocontinue(c1, c2, cfg.fp, bounds), "loop-nocontinue-table");
    } catch (const CapExceeded&) {
      ++report.skipped;
    }
  }
  return report;
}

} // namespace whilecf::fuzz
