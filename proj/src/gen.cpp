#include "whilecf/gen.hpp"

#include "whilecf/verify.hpp"

#include <algorithm>
#include <set>

namespace whilecf::gen {

namespace {

uint64_t state_rank(const State& s, const Footprint& fp) {
  uint64_t r = 0;
  for (size_t j = s.vals.size(); j-- > 0;) r = r * fp.modulus() + s.vals[j];
  return r;
}

State state_unrank(uint64_t r, const Footprint& fp) {
  State s;
  s.vals.resize(fp.vars().size());
  for (size_t j = 0; j < s.vals.size(); ++j) {
    s.vals[j] = r % fp.modulus();
    r /= fp.modulus();
  }
  return s;
}

std::vector<State> set_to_states(const std::set<uint64_t>& ranks, const Footprint& fp) {
  std::vector<State> out;
  out.reserve(ranks.size());
  for (uint64_t r : ranks) out.push_back(state_unrank(r, fp));
  return out;
}

} // namespace

ExprPtr random_expr(Rng& rng, const Footprint& fp, int depth, bool allow_div) {
  if (depth <= 0 || rng.chance(35)) {
    if (rng.chance(50)) return expr_const(rng.below(fp.modulus()));
    return expr_var(fp.vars()[rng.below(fp.vars().size())]);
  }
  if (rng.chance(10))
    return expr_unary(rng.chance(50) ? UnOp::Neg : UnOp::Not,
                      random_expr(rng, fp, depth - 1, allow_div));
  static const BinOp total_ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Eq, BinOp::Ne,
                                    BinOp::Lt,  BinOp::Le,  BinOp::And, BinOp::Or};
  static const BinOp div_ops[] = {BinOp::Div, BinOp::Mod};
  BinOp op;
  if (allow_div && rng.chance(20))
    op = div_ops[rng.below(2)];
  else
    op = total_ops[rng.below(sizeof(total_ops) / sizeof(total_ops[0]))];
  return expr_binary(op, random_expr(rng, fp, depth - 1, allow_div),
                     random_expr(rng, fp, depth - 1, allow_div));
}

AssertionPtr random_closed_assertion(Rng& rng, const Footprint& fp, int depth) {
  if (depth <= 0 || rng.chance(40)) {
    switch (rng.below(4)) {
      case 0: return a_true();
      case 1: return a_false();
      default: {
        static const CmpRel rels[] = {CmpRel::Eq, CmpRel::Le, CmpRel::Lt};
        return a_cmp(rels[rng.below(3)], aterm_prog(random_expr(rng, fp, 1, false)),
                     aterm_lit(rng.below(fp.modulus())));
      }
    }
  }
  switch (rng.below(4)) {
    case 0: return a_not(random_closed_assertion(rng, fp, depth - 1));
    case 1:
      return a_and(random_closed_assertion(rng, fp, depth - 1),
                   random_closed_assertion(rng, fp, depth - 1));
    case 2:
      return a_or(random_closed_assertion(rng, fp, depth - 1),
                  random_closed_assertion(rng, fp, depth - 1));
    default:
      return a_implies(random_closed_assertion(rng, fp, depth - 1),
                       random_closed_assertion(rng, fp, depth - 1));
  }
}

AssertionPtr char_state(const State& s, const Footprint& fp) {
  AssertionPtr a;
  for (size_t i = 0; i < fp.vars().size(); ++i) {
    AssertionPtr atom = a_prog_eq(expr_var(fp.vars()[i]), s.vals[i]);
    a = a ? a_and(a, atom) : atom;
  }
  return a ? a : a_true();
}

AssertionPtr char_states(const std::vector<State>& ss, const Footprint& fp) {
  if (ss.empty()) return a_false();
  AssertionPtr a;
  for (const State& s : ss) {
    AssertionPtr one = char_state(s, fp);
    a = a ? a_or(a, one) : one;
  }
  return a;
}

std::vector<State> random_state_subset(Rng& rng, const Footprint& fp, unsigned density_pct) {
  std::vector<State> out;
  for (const State& s : enumerate_states(fp))
    if (rng.chance(density_pct)) out.push_back(s);
  return out;
}

OutcomeSets outcome_sets(const CmdPtr& c, const std::vector<State>& from, const Footprint& fp,
                         uint64_t fuel) {
  OutcomeSets sets;
  std::set<uint64_t> normal, brk, con;
  for (const State& s : from) {
    Outcome o = eval_big(c, s, fp, fuel);
    switch (o.kind) {
      case OutcomeKind::Error: sets.error = true; break;
      case OutcomeKind::OutOfFuel: sets.fuel_out = true; break;
      case OutcomeKind::Terminated:
        (o.ek == ExitKind::Normal ? normal : o.ek == ExitKind::Brk ? brk : con)
            .insert(state_rank(o.state, fp));
        break;
    }
  }
  sets.normal = set_to_states(normal, fp);
  sets.brk = set_to_states(brk, fp);
  sets.con = set_to_states(con, fp);
  return sets;
}

LoopReach loop_reachable(const CmdPtr& body, const CmdPtr& incr, const std::vector<State>& init,
                         const Footprint& fp, uint64_t fuel) {
  LoopReach out;
  std::set<uint64_t> head, ientry, exits;
  for (const State& s : init) head.insert(state_rank(s, fp));
  while (true) {
    std::vector<State> head_states = set_to_states(head, fp);
    OutcomeSets b = outcome_sets(body, head_states, fp, fuel);
    if (!b.clean()) {
      out.failed = true;
      return out;
    }
    std::set<uint64_t> ientry_next = ientry;
    for (const State& s : b.normal) ientry_next.insert(state_rank(s, fp));
    for (const State& s : b.con) ientry_next.insert(state_rank(s, fp));
    std::set<uint64_t> exits_next = exits;
    for (const State& s : b.brk) exits_next.insert(state_rank(s, fp));
    OutcomeSets i = outcome_sets(incr, set_to_states(ientry_next, fp), fp, fuel);
    if (!i.clean() || !i.con.empty()) {
      out.failed = true;
      return out;
    }
    for (const State& s : i.brk) exits_next.insert(state_rank(s, fp));
    std::set<uint64_t> head_next = head;
    for (const State& s : i.normal) head_next.insert(state_rank(s, fp));
    if (head_next == head && ientry_next == ientry && exits_next == exits) break;
    head = std::move(head_next);
    ientry = std::move(ientry_next);
    exits = std::move(exits_next);
  }
  out.head = set_to_states(head, fp);
  out.ientry = set_to_states(ientry, fp);
  out.exits = set_to_states(exits, fp);
  return out;
}

namespace {

std::optional<AnnPtr> annotate_rec(const CmdPtr& c, const std::vector<State>& from,
                                   const Footprint& fp, uint64_t fuel,
                                   std::vector<State>* normal_out) {
  switch (c->kind) {
    case CmdKind::Skip:
      *normal_out = from;
      return ann_skip();
    case CmdKind::Break:
      normal_out->clear();
      return ann_break();
    case CmdKind::Continue:
      normal_out->clear();
      return ann_continue();
    case CmdKind::Assign: {
      std::set<uint64_t> next;
      for (const State& s : from) {
        auto v = eval_expr(c->expr, s, fp);
        if (!v) return std::nullopt;
        next.insert(state_rank(state_set(s, fp, c->var, *v), fp));
      }
      *normal_out = set_to_states(next, fp);
      return ann_assign(c->var, c->expr);
    }
    case CmdKind::Seq: {
      std::vector<State> mid;
      auto a = annotate_rec(c->a, from, fp, fuel, &mid);
      if (!a) return std::nullopt;
      auto b = annotate_rec(c->b, mid, fp, fuel, normal_out);
      if (!b) return std::nullopt;
      return ann_seq(*a, *b);
    }
    case CmdKind::If: {
      std::vector<State> st, se;
      for (const State& s : from) {
        auto v = eval_expr(c->expr, s, fp);
        if (!v) return std::nullopt;
        (*v != 0 ? st : se).push_back(s);
      }
      std::vector<State> nt, ne;
      auto t = annotate_rec(c->a, st, fp, fuel, &nt);
      if (!t) return std::nullopt;
      auto e = annotate_rec(c->b, se, fp, fuel, &ne);
      if (!e) return std::nullopt;
      std::set<uint64_t> join;
      for (const State& s : nt) join.insert(state_rank(s, fp));
      for (const State& s : ne) join.insert(state_rank(s, fp));
      *normal_out = set_to_states(join, fp);
      return ann_if(c->expr, *t, *e);
    }
    case CmdKind::For: {
      LoopReach ls = loop_reachable(c->a, c->b, from, fp, fuel);
      if (ls.failed) return std::nullopt;
      std::vector<State> ignore;
      auto body = annotate_rec(c->a, ls.head, fp, fuel, &ignore);
      if (!body) return std::nullopt;
      auto incr = annotate_rec(c->b, ls.ientry, fp, fuel, &ignore);
      if (!incr) return std::nullopt;
      *normal_out = ls.exits;
      return ann_for(*body, *incr, char_states(ls.head, fp), char_states(ls.ientry, fp));
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<AnnPtr> annotate_with_invariants(const CmdPtr& c, const std::vector<State>& from,
                                               const Footprint& fp, uint64_t fuel) {
  std::vector<State> ignore;
  return annotate_rec(c, from, fp, fuel, &ignore);
}

std::optional<ProofPtr> make_checked_tree(const CmdPtr& c, const AssertionPtr& pre,
                                          const std::vector<State>& pre_states,
                                          const Footprint& fp, uint64_t fuel) {
  auto ann = annotate_with_invariants(c, pre_states, fp, fuel);
  if (!ann) return std::nullopt;
  SymResult res = symexec(*ann, pre, fp);
  if (!discharge(res.vcs, fp).ok) return std::nullopt;
  return res.tree;
}

std::optional<ProofPtr> make_tree_for_triple(const Triple& t,
                                             const std::vector<State>& pre_states,
                                             const Footprint& fp, uint64_t fuel) {
  auto tree = make_checked_tree(t.cmd, t.pre, pre_states, fp, fuel);
  if (!tree) return std::nullopt;
  return r_conseq(*tree, t.pre, t.post, t.post_brk, t.post_con);
}

ProofPtr maybe_wrap_benign_conseq(Rng& rng, const ProofPtr& t, const Footprint& fp) {
  if (rng.chance(50)) return t;
  Triple c = conclusion(t);
  AssertionPtr pre = rng.chance(50) ? a_and(c.pre, random_closed_assertion(rng, fp, 1)) : c.pre;
  AssertionPtr post = rng.chance(50) ? a_or(c.post, random_closed_assertion(rng, fp, 1)) : c.post;
  AssertionPtr brk = rng.chance(30) ? a_or(c.post_brk, random_closed_assertion(rng, fp, 1))
                                    : c.post_brk;
  AssertionPtr con = rng.chance(30) ? a_or(c.post_con, random_closed_assertion(rng, fp, 1))
                                    : c.post_con;
  return r_conseq(t, pre, post, brk, con);
}

} // namespace whilecf::gen
