#include "whilecf/extended.hpp"

#include "whilecf/parser.hpp"

namespace whilecf {

ProofPtr normalize_conseq(const ProofPtr& t) {
  if (!t) return t;
  switch (t->kind) {
    case RuleKind::RSkip:
    case RuleKind::RBreak:
    case RuleKind::RContinue:
    case RuleKind::RAssign: return t;
    case RuleKind::RSeq: {
      ProofPtr a = normalize_conseq(t->a);
      ProofPtr b = normalize_conseq(t->b);
      return (a == t->a && b == t->b) ? t : r_seq(t->p1, a, b);
    }
    case RuleKind::RIf: {
      ProofPtr a = normalize_conseq(t->a);
      ProofPtr b = normalize_conseq(t->b);
      return (a == t->a && b == t->b) ? t : r_if(t->expr, a, b);
    }
    case RuleKind::RLoop: {
      ProofPtr a = normalize_conseq(t->a);
      ProofPtr b = normalize_conseq(t->b);
      return (a == t->a && b == t->b) ? t : r_loop(t->p1, t->p2, a, b);
    }
    case RuleKind::RConseq: {
      ProofPtr child = normalize_conseq(t->a);
      if (child->kind == RuleKind::RConseq)
        // collapse: the composed entailments hold by transitivity
        return r_conseq(child->a, t->p1, t->p2, t->p3, t->p4);
      return child == t->a ? t : r_conseq(child, t->p1, t->p2, t->p3, t->p4);
    }
  }
  return t;
}

namespace {

CmdPtr command_of(const ProofPtr& t) { return conclusion(t).cmd; }

} // namespace

SplitResult inv_seq(const ProofPtr& t) {
  ProofPtr n = normalize_conseq(t);
  if (n->kind == RuleKind::RSeq) return SplitResult{n->p1, n->a, n->b};
  if (n->kind == RuleKind::RConseq && n->a->kind == RuleKind::RSeq) {
    const ProofPtr& s = n->a;
    // push the consequence layer into both premises, keeping the
    // intermediate assertion untouched
    Triple lt = conclusion(s->a);
    Triple rt = conclusion(s->b);
    ProofPtr left = r_conseq(s->a, n->p1, lt.post, n->p3, n->p4);
    ProofPtr right = r_conseq(s->b, rt.pre, n->p2, n->p3, n->p4);
    return SplitResult{s->p1, left, right};
  }
  throw ShapeError("not a proof about a sequential composition");
}

LoopSplit inv_loop(const ProofPtr& t) {
  ProofPtr n = normalize_conseq(t);
  if (n->kind == RuleKind::RLoop) {
    Triple concl = conclusion(n);
    return LoopSplit{n->p1, n->p2, n->a, n->b, concl.pre, n->p1};
  }
  if (n->kind == RuleKind::RConseq && n->a->kind == RuleKind::RLoop) {
    const ProofPtr& s = n->a;
    // re-target the children's break post at the weakened loop post
    ProofPtr body = r_conseq(s->a, s->p1, s->p2, n->p2, s->p2);
    ProofPtr incr = r_conseq(s->b, s->p2, s->p1, n->p2, a_false());
    return LoopSplit{s->p1, s->p2, body, incr, n->p1, s->p1};
  }
  throw ShapeError("not a proof about a loop");
}

std::pair<ProofPtr, ProofPtr> inv_if(const ProofPtr& t) {
  ProofPtr n = normalize_conseq(t);
  if (n->kind == RuleKind::RIf) return {n->a, n->b};
  if (n->kind == RuleKind::RConseq && n->a->kind == RuleKind::RIf) {
    const ProofPtr& s = n->a;
    ProofPtr thenT = r_conseq(s->a, a_and(n->p1, guard_true(s->expr)), n->p2, n->p3, n->p4);
    ProofPtr elseT = r_conseq(s->b, a_and(n->p1, guard_false(s->expr)), n->p2, n->p3, n->p4);
    return {thenT, elseT};
  }
  throw ShapeError("not a proof about an if");
}

namespace {

Triple pointwise_or(const Triple& a, const Triple& b) {
  return Triple{a_or_join(a.pre, b.pre), a.cmd, a_or_join(a.post, b.post),
                a_or_join(a.post_brk, b.post_brk), a_or_join(a.post_con, b.post_con)};
}

// Merges two normalized proofs of the same command; the result concludes the
// pointwise disjunction of the two conclusions, exactly.
ProofPtr merge_rec(const ProofPtr& u, const ProofPtr& v) {
  Triple cu = conclusion(u);
  Triple cv = conclusion(v);
  Triple goal = pointwise_or(cu, cv);
  const ProofPtr su = u->kind == RuleKind::RConseq ? u->a : u;
  const ProofPtr sv = v->kind == RuleKind::RConseq ? v->a : v;
  if (su->kind != sv->kind) throw ShapeError("merge on proofs of different command shapes");

  ProofPtr inner;
  switch (su->kind) {
    case RuleKind::RSkip: inner = r_skip(a_or_join(su->p1, sv->p1)); break;
    case RuleKind::RBreak: inner = r_break(a_or_join(su->p1, sv->p1)); break;
    case RuleKind::RContinue: inner = r_continue(a_or_join(su->p1, sv->p1)); break;
    case RuleKind::RAssign:
      // substitution distributes over the disjunction, so the combined
      // node's precondition is the disjunction of the two preconditions
      inner = r_assign(su->var, su->expr, a_or_join(su->p1, sv->p1));
      break;
    case RuleKind::RSeq: {
      ProofPtr left = merge_rec(su->a, sv->a);
      ProofPtr right = merge_rec(su->b, sv->b);
      inner = r_seq(a_or_join(su->p1, sv->p1), left, right);
      break;
    }
    case RuleKind::RIf: {
      Triple tu = conclusion(su);
      Triple tv = conclusion(sv);
      ProofPtr mt = merge_rec(su->a, sv->a);
      ProofPtr me = merge_rec(su->b, sv->b);
      AssertionPtr p = a_or_join(tu.pre, tv.pre);
      Triple mtc = conclusion(mt);
      Triple mec = conclusion(me);
      ProofPtr thenT = r_conseq(mt, a_and(p, guard_true(su->expr)), mtc.post, mtc.post_brk,
                                mtc.post_con);
      ProofPtr elseT = r_conseq(me, a_and(p, guard_false(su->expr)), mec.post, mec.post_brk,
                                mec.post_con);
      inner = r_if(su->expr, thenT, elseT);
      break;
    }
    case RuleKind::RLoop: {
      ProofPtr body = merge_rec(su->a, sv->a);
      ProofPtr incr = merge_rec(su->b, sv->b);
      Triple ic = conclusion(incr);
      ProofPtr incr2 = ic.post_con && is_false(ic.post_con)
                           ? incr
                           : r_conseq(incr, ic.pre, ic.post, ic.post_brk, a_false());
      inner = r_loop(a_or_join(su->p1, sv->p1), a_or_join(su->p2, sv->p2), body, incr2);
      break;
    }
    case RuleKind::RConseq: throw ShapeError("unnormalized proof in merge");
  }
  return r_conseq(inner, goal.pre, goal.post, goal.post_brk, goal.post_con);
}

} // namespace

ProofPtr merge_disj(const ProofPtr& t1, const ProofPtr& t2) {
  ProofPtr a = normalize_conseq(t1);
  ProofPtr b = normalize_conseq(t2);
  if (!cmd_equal(command_of(a), command_of(b)))
    throw ShapeError("merge on proofs of different commands");
  return merge_rec(a, b);
}

ProofPtr ex_finite(const std::vector<std::pair<Value, ProofPtr>>& family, const Footprint& fp,
                   AssertionPtr exists_pre) {
  if (family.empty()) throw EmptyDomain();
  Triple first = conclusion(family.front().second);
  for (const auto& [d, tree] : family) {
    Triple c = conclusion(tree);
    if (!cmd_equal(c.cmd, first.cmd)) throw ShapeError("family members prove different commands");
    if (!assertion_equal(c.post, first.post) ||
        !assertion_equal(c.post_brk, first.post_brk) ||
        !assertion_equal(c.post_con, first.post_con))
      throw ShapeError("family members disagree on postconditions");
  }

  ProofPtr merged = family.front().second;
  for (size_t i = 1; i < family.size(); ++i) merged = merge_disj(merged, family[i].second);
  Triple mc = conclusion(merged);

  if (!exists_pre) {
    // exists x. \/_d (x = d /\ P_d) over a fresh logic variable
    std::vector<std::string> used;
    for (const auto& [d, tree] : family) collect_free_logic_vars(conclusion(tree).pre, used);
    std::string x = "_w";
    while (std::find(used.begin(), used.end(), x) != used.end()) x += "w";
    AssertionPtr body;
    for (const auto& [d, tree] : family) {
      AssertionPtr part =
          a_and(a_cmp(CmpRel::Eq, aterm_lvar(x), aterm_lit(d)), conclusion(tree).pre);
      body = body ? a_or(body, part) : part;
    }
    exists_pre = a_exists(x, body);
  }
  (void)fp;
  return r_conseq(merged, exists_pre, first.post, first.post_brk, first.post_con);
}

namespace {

ProofPtr rewrite_con_false(const ProofPtr& t) {
  switch (t->kind) {
    case RuleKind::RSkip:
    case RuleKind::RBreak:
    case RuleKind::RAssign:
    case RuleKind::RLoop: return t; // continue posts already false
    case RuleKind::RContinue:
      throw SideConditionError("continue escapes the command");
    case RuleKind::RSeq:
      return r_seq(t->p1, rewrite_con_false(t->a), rewrite_con_false(t->b));
    case RuleKind::RIf:
      return r_if(t->expr, rewrite_con_false(t->a), rewrite_con_false(t->b));
    case RuleKind::RConseq:
      return r_conseq(rewrite_con_false(t->a), t->p1, t->p2, t->p3, a_false());
  }
  return t;
}

} // namespace

ProofPtr nocontinue(const ProofPtr& t, const AssertionPtr& rc) {
  Triple concl = conclusion(t);
  if (has_toplevel_continue(concl.cmd))
    throw SideConditionError("command contains a top-level continue");
  ProofPtr rewritten = rewrite_con_false(t);
  return r_conseq(rewritten, concl.pre, concl.post, concl.post_brk, rc);
}

ProofPtr if_seq(const ProofPtr& t) {
  Triple concl = conclusion(t);
  const CmdPtr& cmd = concl.cmd;
  if (cmd->kind != CmdKind::If || cmd->a->kind != CmdKind::Seq || cmd->b->kind != CmdKind::Seq ||
      !cmd_equal(cmd->a->b, cmd->b->b))
    throw ShapeError("expected a proof about if e then c1;;c3 else c2;;c3");
  ExprPtr e = cmd->expr;

  auto [thenT, elseT] = inv_if(t);
  SplitResult s1 = inv_seq(thenT);
  SplitResult s2 = inv_seq(elseT);

  AssertionPtr mid;
  ProofPtr tail;   // {mid} c3 {Q,[R]}
  ProofPtr left1;  // {P /\ 0 < [e]} c1 {mid,[R]}
  ProofPtr left2;  // {P /\ [e] = 0} c2 {mid,[R]}
  if (assertion_equal(s1.mid, s2.mid)) {
    mid = s1.mid;
    tail = s1.right;
    left1 = s1.left;
    left2 = s2.left;
  } else {
    mid = a_or(s1.mid, s2.mid);
    ProofPtr mergedTail = merge_disj(s1.right, s2.right);
    tail = r_conseq(mergedTail, mid, concl.post, concl.post_brk, concl.post_con);
    Triple l1 = conclusion(s1.left);
    Triple l2 = conclusion(s2.left);
    left1 = r_conseq(s1.left, l1.pre, mid, l1.post_brk, l1.post_con);
    left2 = r_conseq(s2.left, l2.pre, mid, l2.post_brk, l2.post_con);
  }
  ProofPtr ifTree = r_if(e, left1, left2);
  return r_seq(mid, ifTree, tail);
}

ProofPtr loop_nocontinue(const ProofPtr& t) {
  Triple concl = conclusion(t);
  const CmdPtr& cmd = concl.cmd;
  if (cmd->kind != CmdKind::For || cmd->a->kind != CmdKind::Seq ||
      cmd->b->kind != CmdKind::Skip)
    throw ShapeError("expected a proof about for(;;skip)(c1;;c2)");
  CmdPtr c1 = cmd->a->a;
  CmdPtr c2 = cmd->a->b;
  if (has_toplevel_continue(c1) || has_toplevel_continue(c2))
    throw SideConditionError("loop body or increment contains a top-level continue");

  LoopSplit ls = inv_loop(t);
  // ls.body : {A1} c1;;c2 {A2, [Q, A2]}    ls.incr : {A2} skip {A1, [Q, false]}
  SplitResult body = inv_seq(ls.body);
  Triple bt = conclusion(ls.body);
  AssertionPtr q = bt.post_brk;

  ProofPtr bodyTree = nocontinue(body.left, body.mid); // {A1} c1 {M, [Q, M]}
  ProofPtr incrTree = nocontinue(body.right, a_false()); // {M} c2 {A2, [Q, false]}
  // skip inversion on ls.incr gives A2 |- A1; one consequence step uses it
  ProofPtr incrTree2 = r_conseq(incrTree, body.mid, ls.i1, q, a_false());
  ProofPtr loop = r_loop(ls.i1, body.mid, bodyTree, incrTree2);
  return r_conseq(loop, concl.pre, concl.post, concl.post_brk, concl.post_con);
}

ProofPtr loop_unroll1(const ProofPtr& t1, const ProofPtr& t2, const ProofPtr& t3,
                      const Footprint& fp) {
  Triple c3t = conclusion(t3);
  if (c3t.cmd->kind != CmdKind::For) throw ShapeError("third premise must prove a loop");
  CmdPtr c1 = c3t.cmd->a;
  CmdPtr c2 = c3t.cmd->b;
  Triple c1t = conclusion(t1);
  Triple c2t = conclusion(t2);
  if (!cmd_equal(c1t.cmd, c1) || !cmd_equal(c2t.cmd, c2))
    throw ShapeError("premises do not prove the loop body and increment");
  if (!assertion_equal(c1t.post, c1t.post_con) || !assertion_equal(c2t.post, c2t.post_con))
    throw ShapeError("first-iteration premises must have matching normal and continue posts");
  if (!assertion_equal(c1t.post, c2t.pre))
    throw ShapeError("increment premise must start from the body postcondition");
  if (!assertion_equal(c1t.post_brk, c2t.post_brk))
    throw ShapeError("first-iteration premises disagree on the break post");

  if (has_toplevel_continue(c2))
    throw SideConditionError("loop increment contains a top-level continue");

  LoopSplit ls = inv_loop(t3);
  // the first iteration's break leaves the whole loop normally, so the
  // premises' break post must land in the loop post
  AssertionPtr rb = c1t.post_brk;
  AssertionPtr q = c3t.post;
  Verdict side = entails(rb, q, fp);
  if (!side.holds())
    throw SideConditionError("premise break post does not entail the loop post", side);

  ProofPtr t2nc = nocontinue(t2, a_false());
  ProofPtr mergedBody = merge_disj(t1, ls.body);
  Triple mb = conclusion(mergedBody);
  ProofPtr body = r_conseq(mergedBody, mb.pre, mb.post, q, mb.post);
  ProofPtr mergedIncr = merge_disj(t2nc, ls.incr);
  Triple mi = conclusion(mergedIncr);
  ProofPtr incr = r_conseq(mergedIncr, mi.pre, mb.pre, q, a_false());
  ProofPtr loop = r_loop(mb.pre, mb.post, body, incr);
  return r_conseq(loop, c1t.pre, q, c3t.post_brk, c3t.post_con);
}

ProofPtr seq_assoc(const ProofPtr& t) {
  Triple concl = conclusion(t);
  if (concl.cmd->kind != CmdKind::Seq || concl.cmd->a->kind != CmdKind::Seq)
    throw ShapeError("expected a proof about (c1;;c2);;c3");
  SplitResult outer = inv_seq(t);      // {P} c1;;c2 {M}  and  {M} c3 {Q}
  SplitResult inner = inv_seq(outer.left); // {P} c1 {N}  and  {N} c2 {M}
  ProofPtr right = r_seq(outer.mid, inner.right, outer.right);
  return r_seq(inner.mid, inner.left, right);
}

ProofPtr seq_unassoc(const ProofPtr& t) {
  Triple concl = conclusion(t);
  if (concl.cmd->kind != CmdKind::Seq || concl.cmd->b->kind != CmdKind::Seq)
    throw ShapeError("expected a proof about c1;;(c2;;c3)");
  SplitResult outer = inv_seq(t);       // {P} c1 {N}  and  {N} c2;;c3 {Q}
  SplitResult inner = inv_seq(outer.right); // {N} c2 {M}  and  {M} c3 {Q}
  ProofPtr left = r_seq(outer.mid, outer.left, inner.left);
  return r_seq(inner.mid, left, inner.right);
}

ProofPtr conseq_pre(const ProofPtr& t, const AssertionPtr& pre, const Footprint& fp) {
  Triple concl = conclusion(t);
  Verdict v = entails(pre, concl.pre, fp);
  if (!v.holds())
    throw SideConditionError("precondition does not entail the proof's precondition", v);
  return r_conseq(t, pre, concl.post, concl.post_brk, concl.post_con);
}

} // namespace whilecf
