#include "whilecf/bigstep.hpp"

#include "whilecf/parser.hpp"

#include <sstream>

namespace whilecf {

std::string outcome_to_string(const Outcome& o, const Footprint& fp) {
  switch (o.kind) {
    case OutcomeKind::Terminated: {
      std::ostringstream os;
      os << "Terminated " << exit_kind_name(o.ek) << ' ' << state_to_string(o.state, fp);
      return os.str();
    }
    case OutcomeKind::Error: return "Error";
    case OutcomeKind::OutOfFuel: return "OutOfFuel";
  }
  return "?";
}

Outcome eval_big(const CmdPtr& c, const State& sigma, const Footprint& fp, uint64_t fuel) {
  if (fuel == 0) return Outcome::out_of_fuel();
  switch (c->kind) {
    case CmdKind::Skip: return Outcome::terminated(ExitKind::Normal, sigma);
    case CmdKind::Break: return Outcome::terminated(ExitKind::Brk, sigma);
    case CmdKind::Continue: return Outcome::terminated(ExitKind::Con, sigma);
    case CmdKind::Assign: {
      auto v = eval_expr(c->expr, sigma, fp);
      if (!v) return Outcome::error();
      return Outcome::terminated(ExitKind::Normal, state_set(sigma, fp, c->var, *v));
    }
    case CmdKind::Seq: {
      Outcome r1 = eval_big(c->a, sigma, fp, fuel - 1);
      if (r1.kind != OutcomeKind::Terminated) return r1;
      if (r1.ek != ExitKind::Normal) return r1;
      return eval_big(c->b, r1.state, fp, fuel - 1);
    }
    case CmdKind::If: {
      auto v = eval_expr(c->expr, sigma, fp);
      if (!v) return Outcome::error();
      return eval_big(*v != 0 ? c->a : c->b, sigma, fp, fuel - 1);
    }
    case CmdKind::For: {
      Outcome body = eval_big(c->a, sigma, fp, fuel - 1);
      if (body.kind != OutcomeKind::Terminated) return body;
      if (body.ek == ExitKind::Brk) return Outcome::terminated(ExitKind::Normal, body.state);
      Outcome incr = eval_big(c->b, body.state, fp, fuel - 1);
      if (incr.kind != OutcomeKind::Terminated) return incr;
      if (incr.ek == ExitKind::Brk) return Outcome::terminated(ExitKind::Normal, incr.state);
      if (incr.ek == ExitKind::Con) return Outcome::error();
      return eval_big(c, incr.state, fp, fuel - 1);
    }
  }
  return Outcome::error();
}

bool triple_equal(const Triple& a, const Triple& b) {
  return assertion_equal(a.pre, b.pre) && cmd_equal(a.cmd, b.cmd) &&
         assertion_equal(a.post, b.post) && assertion_equal(a.post_brk, b.post_brk) &&
         assertion_equal(a.post_con, b.post_con);
}

std::string triple_to_string(const Triple& t) {
  std::ostringstream os;
  os << '{' << pretty_assertion(t.pre) << "} " << pretty(t.cmd) << " {"
     << pretty_assertion(t.post) << ", [" << pretty_assertion(t.post_brk) << ", "
     << pretty_assertion(t.post_con) << "]}";
  return os.str();
}

namespace {

std::vector<std::string> triple_logic_vars(const Triple& t) {
  std::vector<std::string> lv;
  collect_free_logic_vars(t.pre, lv);
  collect_free_logic_vars(t.post, lv);
  collect_free_logic_vars(t.post_brk, lv);
  collect_free_logic_vars(t.post_con, lv);
  return lv;
}

const AssertionPtr& post_for(const Triple& t, ExitKind ek) {
  switch (ek) {
    case ExitKind::Normal: return t.post;
    case ExitKind::Brk: return t.post_brk;
    case ExitKind::Con: return t.post_con;
  }
  return t.post;
}

} // namespace

Verdict valid_big(const Triple& t, const Footprint& fp, uint64_t fuel, uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<std::string> lvars = triple_logic_vars(t);
  uint64_t budget = states.size();
  for (size_t i = 0; i < lvars.size(); ++i) {
    budget *= fp.modulus();
    if (budget > cap) throw CapExceeded("validity enumeration budget exceeded");
  }

  std::vector<State> pending;
  Verdict bad = Verdict::pass();
  bool found_bad = false;
  for_each_env(lvars, fp, [&](const Env& env) {
    for (const State& s : states) {
      if (!satisfies(s, env, t.pre, fp)) continue;
      Outcome o = eval_big(t.cmd, s, fp, fuel);
      switch (o.kind) {
        case OutcomeKind::Error:
          bad = Verdict::counterexample(s, env, "execution errors");
          found_bad = true;
          return false;
        case OutcomeKind::OutOfFuel: pending.push_back(s); break;
        case OutcomeKind::Terminated:
          if (!satisfies(o.state, env, post_for(t, o.ek), fp)) {
            bad = Verdict::counterexample(
                s, env, std::string(exit_kind_name(o.ek)) + " exit lands outside postcondition");
            found_bad = true;
            return false;
          }
          break;
      }
    }
    return true;
  });
  if (found_bad) return bad;
  if (!pending.empty()) return Verdict::inconclusive(std::move(pending));
  return Verdict::pass();
}

Verdict refines_big(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp, uint64_t fuel,
                    uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<State> pending;
  for (const State& s : states) {
    Outcome o1 = eval_big(c1, s, fp, fuel);
    if (o1.kind == OutcomeKind::OutOfFuel) {
      pending.push_back(s);
      continue;
    }
    Outcome o2 = eval_big(c2, s, fp, fuel);
    if (o2.kind == OutcomeKind::OutOfFuel) {
      pending.push_back(s);
      continue;
    }
    // The language is deterministic, so "every outcome of c1 is an outcome
    // of c2" collapses to outcome equality on conclusive states.
    if (!(o1 == o2))
      return Verdict::counterexample(s, Env{},
                                     outcome_to_string(o1, fp) + " vs " +
                                         outcome_to_string(o2, fp));
  }
  if (!pending.empty()) return Verdict::inconclusive(std::move(pending));
  return Verdict::pass();
}

} // namespace whilecf
