#include "whilecf/simulation.hpp"

#include "whilecf/parser.hpp"

#include <sstream>
#include <unordered_set>

namespace whilecf {

namespace {

size_t kont_hash(const KontPtr& k) {
  size_t h = 31;
  for (const Kont* p = k.get(); p; p = p->rest.get()) {
    h = h * 1000003 + static_cast<size_t>(p->top.kind) * 7919;
    h ^= cmd_hash(p->top.c1) + (p->top.c2 ? cmd_hash(p->top.c2) : 0);
  }
  return h;
}

size_t pair_hash(const ProgPair& p) {
  size_t h = cmd_hash(p.lc) * 3 + kont_hash(p.lk) * 5;
  h ^= cmd_hash(p.rc) * 7 + kont_hash(p.rk) * 11;
  return h;
}

bool pair_equal(const ProgPair& a, const ProgPair& b) {
  return cmd_equal(a.lc, b.lc) && kont_equal(a.lk, b.lk) && cmd_equal(a.rc, b.rc) &&
         kont_equal(a.rk, b.rk);
}

struct PairSet {
  struct Hash {
    size_t operator()(const ProgPair& p) const { return pair_hash(p); }
  };
  struct Eq {
    bool operator()(const ProgPair& a, const ProgPair& b) const { return pair_equal(a, b); }
  };
  std::unordered_set<ProgPair, Hash, Eq> set;

  bool insert(const ProgPair& p) { return set.insert(p).second; }
  bool contains(const ProgPair& p) const { return set.count(p) > 0; }
};

bool config_component_equal(const CmdPtr& c1, const KontPtr& k1, const CmdPtr& c2,
                            const KontPtr& k2) {
  return cmd_equal(c1, c2) && kont_equal(k1, k2);
}

bool is_terminal_component(const CmdPtr& c, const KontPtr& k) {
  if (k) return false;
  return c->kind == CmdKind::Skip || c->kind == CmdKind::Break || c->kind == CmdKind::Continue;
}

} // namespace

std::string prog_pair_to_string(const ProgPair& p) {
  std::ostringstream os;
  os << '(' << pretty(p.lc) << ", " << kont_to_string(p.lk) << ") ~ (" << pretty(p.rc) << ", "
     << kont_to_string(p.rk) << ')';
  return os.str();
}

bool RelationTable::contains(const CmdPtr& lc, const KontPtr& lk, const CmdPtr& rc,
                             const KontPtr& rk) const {
  for (const auto& p : pairs)
    if (pair_equal(p, ProgPair{lc, lk, rc, rk})) return true;
  return false;
}

SimReport check_simulation(const RelationTable& rel, const Footprint& fp, uint64_t fuel,
                           bool with_trace, uint64_t cap) {
  SimReport report;
  std::vector<State> states = enumerate_states(fp, cap);
  PairSet members;
  for (const auto& p : rel.pairs) members.insert(p);

  for (size_t i = 0; i < rel.pairs.size(); ++i) {
    const ProgPair& p = rel.pairs[i];
    for (const State& sigma : states) {
      if (is_terminal_component(p.lc, p.lk)) {
        // Termination: target reaches the same terminal without touching the
        // state, or (guard mode) cycles on an unchanged state.
        Config cfg{p.rc, p.rk, sigma};
        bool matched = false;
        std::unordered_set<size_t> seen;
        uint64_t steps = 0;
        std::string why = "target never reaches the source terminal";
        while (true) {
          if (config_component_equal(cfg.cmd, cfg.kont, p.lc, p.lk)) {
            matched = true;
            if (with_trace)
              report.trace.push_back("termination match after " + std::to_string(steps) +
                                     " target steps: " + prog_pair_to_string(p));
            break;
          }
          size_t key = cmd_hash(cfg.cmd) * 131 + kont_hash(cfg.kont);
          if (rel.allow_state_preserving_cycle && !seen.insert(key).second) {
            matched = true; // state-preserving cycle
            if (with_trace)
              report.trace.push_back("termination via state-preserving cycle: " +
                                     prog_pair_to_string(p));
            break;
          }
          if (!rel.allow_state_preserving_cycle) seen.insert(key);
          StepResult r = step(cfg, fp);
          if (r.kind != StepKind::Next) {
            why = r.kind == StepKind::Stuck ? "target gets stuck" : "target ends differently";
            break;
          }
          if (!(r.next.state == sigma)) {
            why = "target modifies the state";
            break;
          }
          if (!rel.allow_state_preserving_cycle && seen.count(cmd_hash(r.next.cmd) * 131 +
                                                              kont_hash(r.next.kont))) {
            why = "target cycles without reaching the terminal";
            break;
          }
          cfg = r.next;
          if (++steps > fuel) {
            why = "target exceeds fuel";
            break;
          }
        }
        if (!matched)
          report.violations.push_back({i, sigma, SimClause::Termination, why});
        continue;
      }

      StepResult r = step(Config{p.lc, p.lk, sigma}, fp);
      if (r.kind == StepKind::Stuck) {
        // Error: target must reach some error within fuel
        Config cfg{p.rc, p.rk, sigma};
        bool errored = false;
        for (uint64_t s = 0; s <= fuel; ++s) {
          StepResult rr = step(cfg, fp);
          if (rr.kind == StepKind::Stuck) {
            errored = true;
            break;
          }
          if (rr.kind == StepKind::Terminal) break;
          cfg = rr.next;
        }
        if (!errored)
          report.violations.push_back(
              {i, sigma, SimClause::Error, "source is stuck but target never errors"});
        continue;
      }
      if (r.kind != StepKind::Next) continue; // handled terminal above

      // Preservation: within match_bound target steps find a related pair at
      // the successor state.
      const Config& nxt = r.next;
      Config cfg{p.rc, p.rk, sigma};
      bool matched = false;
      for (uint64_t s = 0; s <= rel.match_bound; ++s) {
        if (cfg.state == nxt.state &&
            members.contains(ProgPair{nxt.cmd, nxt.kont, cfg.cmd, cfg.kont})) {
          matched = true;
          if (with_trace)
            report.trace.push_back("preservation match: source 1 step, target " +
                                   std::to_string(s) + " steps: " + prog_pair_to_string(p));
          break;
        }
        StepResult rr = step(cfg, fp);
        if (rr.kind != StepKind::Next) break;
        cfg = rr.next;
      }
      if (!matched)
        report.violations.push_back({i, sigma, SimClause::Preservation,
                                     "no related target configuration within match bound"});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

const char* sim_clause_name(SimClause c) {
  switch (c) {
    case SimClause::Termination: return "Termination";
    case SimClause::Preservation: return "Preservation";
    case SimClause::Error: return "Error";
  }
  return "?";
}

RelationTable close_relation(std::vector<ProgPair> seeds, const Footprint& fp,
                             const SimBounds& bounds) {
  RelationTable table;
  table.match_bound = bounds.match_bound;
  PairSet seen;
  std::vector<ProgPair> work;
  for (auto& s : seeds)
    if (seen.insert(s)) {
      table.pairs.push_back(s);
      work.push_back(s);
    }
  std::vector<State> states = enumerate_states(fp);

  auto add_pair = [&](const ProgPair& p) {
    if (seen.insert(p)) {
      if (table.pairs.size() >= bounds.max_pairs)
        throw CapExceeded("relation closure exceeds pair cap");
      table.pairs.push_back(p);
      work.push_back(p);
    }
  };

  while (!work.empty()) {
    ProgPair p = work.back();
    work.pop_back();
    for (const State& sigma : states) {
      if (is_terminal_component(p.lc, p.lk)) continue;
      StepResult r = step(Config{p.lc, p.lk, sigma}, fp);
      if (r.kind != StepKind::Next) continue;
      const Config& nxt = r.next;

      // walk the target collecting state-matching candidates
      std::vector<std::pair<CmdPtr, KontPtr>> candidates;
      Config cfg{p.rc, p.rk, sigma};
      for (uint64_t s = 0; s <= bounds.match_bound; ++s) {
        if (cfg.state == nxt.state) candidates.emplace_back(cfg.cmd, cfg.kont);
        StepResult rr = step(cfg, fp);
        if (rr.kind != StepKind::Next) break;
        cfg = rr.next;
      }
      bool have = false;
      for (const auto& [c, k] : candidates)
        if (seen.contains(ProgPair{nxt.cmd, nxt.kont, c, k})) {
          have = true;
          break;
        }
      if (have) continue;
      // prefer the identical configuration, then a structurally aligned one
      // (same focused command: the displayed relation schemas always align
      // the focus), then the earliest state match
      const std::pair<CmdPtr, KontPtr>* pick = nullptr;
      for (const auto& cand : candidates)
        if (config_component_equal(nxt.cmd, nxt.kont, cand.first, cand.second)) {
          pick = &cand;
          break;
        }
      if (!pick)
        for (const auto& cand : candidates)
          if (cmd_equal(nxt.cmd, cand.first)) {
            pick = &cand;
            break;
          }
      if (!pick && !candidates.empty()) pick = &candidates.front();
      if (pick) add_pair(ProgPair{nxt.cmd, nxt.kont, pick->first, pick->second});
      // otherwise leave the gap; check_simulation will report it
    }
  }
  return table;
}

RelationTable build_rel_ifseq(const ExprPtr& e, const CmdPtr& c1, const CmdPtr& c2,
                              const CmdPtr& c3, const Footprint& fp, const SimBounds& bounds) {
  CmdPtr lhs = cmd_seq(cmd_if(e, c1, c2), c3);
  CmdPtr rhs = cmd_if(e, cmd_seq(c1, c3), cmd_seq(c2, c3));
  std::vector<ProgPair> seeds{{lhs, kont_empty(), rhs, kont_empty()}};
  return close_relation(std::move(seeds), fp, bounds);
}

RelationTable build_rel_loop_nocontinue(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp,
                                        const SimBounds& bounds) {
  if (has_toplevel_continue(c1) || has_toplevel_continue(c2))
    throw SideConditionError("loop body or increment contains a top-level continue");
  CmdPtr fused = cmd_seq(c1, c2);
  CmdPtr lhs = cmd_for(c1, c2);
  CmdPtr rhs = cmd_for(fused, cmd_skip());
  KontPtr e = kont_empty();
  // the displayed conjunct schemas at the empty outer continuation; the
  // closure instantiates them over all reachable prefixes
  std::vector<ProgPair> seeds;
  seeds.push_back({lhs, e, rhs, e});
  seeds.push_back({cmd_seq(c1, cmd_continue()), kont_push(frame_loop1(c1, c2), e),
                   c1,
                   kont_push(frame_seq(c2),
                             kont_push(frame_seq(cmd_continue()),
                                       kont_push(frame_loop1(fused, cmd_skip()), e)))});
  seeds.push_back({cmd_continue(), kont_push(frame_loop1(c1, c2), e),
                   c2,
                   kont_push(frame_seq(cmd_continue()),
                             kont_push(frame_loop1(fused, cmd_skip()), e))});
  seeds.push_back({cmd_skip(), kont_push(frame_loop2(c1, c2), e),
                   cmd_skip(), kont_push(frame_loop2(fused, cmd_skip()), e)});
  seeds.push_back({cmd_break(), kont_push(frame_loop2(c1, c2), e),
                   cmd_break(), kont_push(frame_loop2(fused, cmd_skip()), e)});
  return close_relation(std::move(seeds), fp, bounds);
}

Verdict refines_small(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp, uint64_t fuel,
                      uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<State> pending;
  for (const State& s : states) {
    Outcome o1 = run_small(Config{c1, kont_empty(), s}, fp, fuel);
    if (o1.kind == OutcomeKind::OutOfFuel) {
      pending.push_back(s);
      continue;
    }
    Outcome o2 = run_small(Config{c2, kont_empty(), s}, fp, fuel);
    if (o2.kind == OutcomeKind::OutOfFuel) {
      pending.push_back(s);
      continue;
    }
    if (!(o1 == o2))
      return Verdict::counterexample(s, Env{},
                                     outcome_to_string(o1, fp) + " vs " +
                                         outcome_to_string(o2, fp));
  }
  if (!pending.empty()) return Verdict::inconclusive(std::move(pending));
  return Verdict::pass();
}

Verdict lemma_wp_sim_check(const RelationTable& rel, const Posts& posts, const Footprint& fp,
                           uint64_t fuel, uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<std::string> lvars;
  collect_free_logic_vars(posts.normal, lvars);
  collect_free_logic_vars(posts.brk, lvars);
  collect_free_logic_vars(posts.con, lvars);
  Verdict bad = Verdict::pass();
  bool found = false;
  for_each_env(lvars, fp, [&](const Env& env) {
    for (size_t i = 0; i < rel.pairs.size(); ++i) {
      const ProgPair& p = rel.pairs[i];
      for (const State& s : states) {
        if (wp_indexed(s, env, p.rc, p.rk, posts, fp, fuel) &&
            !wp_indexed(s, env, p.lc, p.lk, posts, fp, fuel)) {
          bad = Verdict::counterexample(
              s, env, "wp transfer fails for pair " + prog_pair_to_string(p));
          found = true;
          return false;
        }
      }
    }
    return true;
  });
  return found ? bad : Verdict::pass();
}

Verdict lemma_guard_sim_check(const RelationTable& rel, const AssertionPtr& p,
                              const Footprint& fp, uint64_t fuel, uint64_t cap) {
  for (size_t i = 0; i < rel.pairs.size(); ++i) {
    const ProgPair& pr = rel.pairs[i];
    Verdict target = guards(p, pr.rc, pr.rk, fp, fuel, cap);
    if (!target.holds()) continue;
    Verdict source = guards(p, pr.lc, pr.lk, fp, fuel, cap);
    if (!source.holds()) {
      source.detail = "guard transfer fails for pair " + prog_pair_to_string(pr);
      return source;
    }
  }
  return Verdict::pass();
}

} // namespace whilecf
