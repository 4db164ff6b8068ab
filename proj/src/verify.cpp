#include "whilecf/verify.hpp"

#include "whilecf/parser.hpp"

#include <algorithm>
#include <sstream>

namespace whilecf {

namespace {

void collect_all_lvar_names_term(const ATermPtr& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->kind == ATermKind::LVar) {
    if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
  } else if (t->kind == ATermKind::Prog) {
    std::vector<const Expr*> stack{t->prog.get()};
    while (!stack.empty()) {
      const Expr* e = stack.back();
      stack.pop_back();
      if (!e) continue;
      if (e->kind == ExprKind::LogicRef &&
          std::find(out.begin(), out.end(), e->name) == out.end())
        out.push_back(e->name);
      stack.push_back(e->a.get());
      stack.push_back(e->b.get());
    }
  } else if (t->kind == ATermKind::Arith) {
    collect_all_lvar_names_term(t->a, out);
    collect_all_lvar_names_term(t->b, out);
  }
}

void collect_all_lvar_names(const AssertionPtr& a, std::vector<std::string>& out) {
  if (!a) return;
  switch (a->kind) {
    case AKind::Cmp:
      collect_all_lvar_names_term(a->ta, out);
      collect_all_lvar_names_term(a->tb, out);
      return;
    case AKind::Forall:
    case AKind::Exists:
      if (std::find(out.begin(), out.end(), a->var) == out.end()) out.push_back(a->var);
      collect_all_lvar_names(a->a, out);
      return;
    default:
      collect_all_lvar_names(a->a, out);
      collect_all_lvar_names(a->b, out);
      return;
  }
}

struct SymCtx {
  const Footprint& fp;
  std::vector<std::string> used_names;
  int counter = 0;
  std::vector<VC> vcs;

  std::string fresh() {
    while (true) {
      std::string name = "v" + std::to_string(counter++);
      if (std::find(used_names.begin(), used_names.end(), name) == used_names.end()) {
        used_names.push_back(name);
        return name;
      }
    }
  }

  void emit(const AssertionPtr& lhs, const AssertionPtr& rhs, const std::string& origin) {
    // trivially true junctions are not goals
    if (is_false(lhs) || assertion_equal(lhs, rhs)) return;
    vcs.push_back(VC{lhs, rhs, origin});
  }
};

struct SymNode {
  ProofPtr tree;
  Posts posts;
};

// bridge a subproof to widened control-flow posts when needed
ProofPtr widen(const SymNode& n, const AssertionPtr& pre, const AssertionPtr& post,
               const AssertionPtr& brk, const AssertionPtr& con) {
  if (assertion_equal(n.posts.normal, post) && assertion_equal(n.posts.brk, brk) &&
      assertion_equal(n.posts.con, con))
    return n.tree;
  return r_conseq(n.tree, pre, post, brk, con);
}

SymNode sym(const AnnPtr& c, const AssertionPtr& pre, SymCtx& ctx, const std::string& path) {
  switch (c->kind) {
    case AnnKind::Skip: return {r_skip(pre), Posts{pre, a_false(), a_false()}};
    case AnnKind::Break: return {r_break(pre), Posts{a_false(), pre, a_false()}};
    case AnnKind::Continue: return {r_continue(pre), Posts{a_false(), a_false(), pre}};
    case AnnKind::MidAssert: {
      ctx.emit(pre, c->mid, path + ": assert");
      return {r_conseq(r_skip(c->mid), pre, c->mid, a_false(), a_false()),
              Posts{c->mid, a_false(), a_false()}};
    }
    case AnnKind::Assign: {
      // forward assignment: exists v. pre[x -> v] /\ [x] = [e[x -> v]]
      std::string v = ctx.fresh();
      ExprPtr vref = expr_logic_ref(v);
      AssertionPtr post = a_exists(
          v, a_and(subst(pre, c->var, vref),
                   a_cmp(CmpRel::Eq, aterm_prog(expr_var(c->var)),
                         aterm_prog(expr_subst(c->expr, c->var, vref)))));
      ProofPtr tree =
          r_conseq(r_assign(c->var, c->expr, post), pre, post, a_false(), a_false());
      return {tree, Posts{post, a_false(), a_false()}};
    }
    case AnnKind::Seq: {
      if (c->a->kind == AnnKind::MidAssert) {
        ctx.emit(pre, c->a->mid, path + ": assert");
        SymNode rest = sym(c->b, c->a->mid, ctx, path + ".2");
        return {r_conseq(rest.tree, pre, rest.posts.normal, rest.posts.brk, rest.posts.con),
                rest.posts};
      }
      if (c->b->kind == AnnKind::MidAssert) {
        SymNode first = sym(c->a, pre, ctx, path + ".1");
        ctx.emit(first.posts.normal, c->b->mid, path + ": assert");
        Posts posts{c->b->mid, first.posts.brk, first.posts.con};
        return {r_conseq(first.tree, pre, posts.normal, posts.brk, posts.con), posts};
      }
      SymNode first = sym(c->a, pre, ctx, path + ".1");
      SymNode second = sym(c->b, first.posts.normal, ctx, path + ".2");
      AssertionPtr brk = a_or_join(first.posts.brk, second.posts.brk);
      AssertionPtr con = a_or_join(first.posts.con, second.posts.con);
      ProofPtr left = widen(first, pre, first.posts.normal, brk, con);
      ProofPtr right = widen(second, first.posts.normal, second.posts.normal, brk, con);
      return {r_seq(first.posts.normal, left, right),
              Posts{second.posts.normal, brk, con}};
    }
    case AnnKind::If: {
      AssertionPtr pt = a_and(pre, guard_true(c->expr));
      AssertionPtr pe = a_and(pre, guard_false(c->expr));
      SymNode th = sym(c->a, pt, ctx, path + ".1");
      SymNode el = sym(c->b, pe, ctx, path + ".2");
      AssertionPtr qn = a_or_join(th.posts.normal, el.posts.normal);
      AssertionPtr qb = a_or_join(th.posts.brk, el.posts.brk);
      AssertionPtr qc = a_or_join(th.posts.con, el.posts.con);
      ProofPtr tt = widen(th, pt, qn, qb, qc);
      ProofPtr te = widen(el, pe, qn, qb, qc);
      return {r_if(c->expr, tt, te), Posts{qn, qb, qc}};
    }
    case AnnKind::ForAnn: {
      if (!c->body_pre || !c->incr_pre)
        throw AnnotationMissing("loop at " + path + " needs {inv: ...} {incr_inv: ...}");
      const AssertionPtr& inv = c->body_pre;
      const AssertionPtr& inc = c->incr_pre;
      ctx.emit(pre, inv, path + ": loop entry");
      SymNode body = sym(c->a, inv, ctx, path + ".1");
      ctx.emit(body.posts.normal, inc, path + ": loop body to increment invariant");
      ctx.emit(body.posts.con, inc, path + ": loop continue to increment invariant");
      SymNode incr = sym(c->b, inc, ctx, path + ".2");
      ctx.emit(incr.posts.normal, inv, path + ": loop increment to invariant");
      ctx.emit(incr.posts.con, a_false(), path + ": loop increment must not continue");
      AssertionPtr q = a_or_join(body.posts.brk, incr.posts.brk);
      ProofPtr bodyT = r_conseq(body.tree, inv, inc, q, inc);
      ProofPtr incrT = r_conseq(incr.tree, inc, inv, q, a_false());
      ProofPtr loop = r_loop(inv, inc, bodyT, incrT);
      return {r_conseq(loop, pre, q, a_false(), a_false()),
              Posts{q, a_false(), a_false()}};
    }
  }
  throw ShapeError("unreachable annotated node");
}

} // namespace

SymResult symexec(const AnnPtr& ac, const AssertionPtr& pre, const Footprint& fp) {
  SymCtx ctx{fp, {}, 0, {}};
  collect_all_lvar_names(pre, ctx.used_names);
  SymNode n = sym(ac, pre, ctx, "c");
  return SymResult{n.tree, n.posts, std::move(ctx.vcs)};
}

DischargeReport discharge(const std::vector<VC>& vcs, const Footprint& fp, uint64_t cap) {
  DischargeReport report;
  for (const VC& vc : vcs) {
    Verdict v = entails(vc.lhs, vc.rhs, fp, cap);
    if (!v.holds()) report.ok = false;
    report.results.push_back(VCOutcome{vc, std::move(v)});
  }
  return report;
}

// ---- preprocessing -------------------------------------------------------

namespace {

AnnPtr normalize_seq(const AnnPtr& c) {
  if (!c) return c;
  switch (c->kind) {
    case AnnKind::Seq: {
      AnnPtr a = normalize_seq(c->a);
      AnnPtr b = normalize_seq(c->b);
      while (a->kind == AnnKind::Seq) {
        b = ann_seq(a->b, b);
        a = a->a;
      }
      return ann_seq(a, b);
    }
    case AnnKind::If: return ann_if(c->expr, normalize_seq(c->a), normalize_seq(c->b));
    case AnnKind::ForAnn:
      return ann_for(normalize_seq(c->a), normalize_seq(c->b), c->body_pre, c->incr_pre);
    default: return c;
  }
}

AnnPtr apply_if_seq_pass(const AnnPtr& c) {
  if (!c) return c;
  switch (c->kind) {
    case AnnKind::Seq:
      if (c->a->kind == AnnKind::If) {
        AnnPtr t = ann_seq(c->a->a, c->b);
        AnnPtr e = ann_seq(c->a->b, c->b);
        return apply_if_seq_pass(normalize_seq(ann_if(c->a->expr, t, e)));
      }
      return ann_seq(apply_if_seq_pass(c->a), apply_if_seq_pass(c->b));
    case AnnKind::If:
      return ann_if(c->expr, apply_if_seq_pass(c->a), apply_if_seq_pass(c->b));
    case AnnKind::ForAnn:
      return ann_for(apply_if_seq_pass(c->a), apply_if_seq_pass(c->b), c->body_pre,
                     c->incr_pre);
    default: return c;
  }
}

AnnPtr apply_loop_nocontinue_pass(const AnnPtr& c, bool also_if_seq) {
  if (!c) return c;
  switch (c->kind) {
    case AnnKind::Seq:
      return ann_seq(apply_loop_nocontinue_pass(c->a, also_if_seq),
                     apply_loop_nocontinue_pass(c->b, also_if_seq));
    case AnnKind::If:
      return ann_if(c->expr, apply_loop_nocontinue_pass(c->a, also_if_seq),
                    apply_loop_nocontinue_pass(c->b, also_if_seq));
    case AnnKind::ForAnn: {
      AnnPtr body = apply_loop_nocontinue_pass(c->a, also_if_seq);
      AnnPtr incr = apply_loop_nocontinue_pass(c->b, also_if_seq);
      if (incr->kind != AnnKind::Skip && !has_toplevel_continue(erase_annotations(body)) &&
          !has_toplevel_continue(erase_annotations(incr))) {
        AnnPtr fused = normalize_seq(ann_seq(body, incr));
        // the fused body recreates the if-seq shape, so retry that pass
        if (also_if_seq) fused = apply_if_seq_pass(fused);
        return ann_for(fused, ann_skip(), c->body_pre, c->body_pre);
      }
      return ann_for(body, incr, c->body_pre, c->incr_pre);
    }
    default: return c;
  }
}

} // namespace

AnnPtr preprocess(const AnnPtr& ac, const VerifyOptions& opts) {
  AnnPtr c = normalize_seq(ac);
  if (opts.use_if_seq) c = apply_if_seq_pass(c);
  if (opts.use_loop_nocontinue) c = apply_loop_nocontinue_pass(c, opts.use_if_seq);
  return c;
}

// ---- proof back-mapping ---------------------------------------------------

namespace {

size_t seq_leaf_count(const CmdPtr& c) {
  if (c->kind != CmdKind::Seq) return 1;
  return seq_leaf_count(c->a) + seq_leaf_count(c->b);
}

} // namespace

ProofPtr backmap_proof(const ProofPtr& t, const CmdPtr& target, const Footprint& fp) {
  Triple concl = conclusion(t);
  const CmdPtr& c = concl.cmd;
  if (cmd_equal(c, target)) return t;

  // an if proof standing for `(if ...) ;; tail` comes from the if-seq pass
  if (c->kind == CmdKind::If && target->kind == CmdKind::Seq)
    return backmap_proof(if_seq(t), target, fp);

  // a fused loop proof standing for a loop with a real increment step
  if (c->kind == CmdKind::For && target->kind == CmdKind::For &&
      target->b->kind != CmdKind::Skip && c->b->kind == CmdKind::Skip) {
    LoopSplit ls = inv_loop(t);
    ProofPtr body = backmap_proof(ls.body, cmd_seq(target->a, target->b), fp);
    ProofPtr loop = r_loop(ls.i1, ls.i2, body, ls.incr);
    ProofPtr rebuilt =
        r_conseq(loop, concl.pre, concl.post, concl.post_brk, concl.post_con);
    return loop_nocontinue(rebuilt);
  }

  if (c->kind != target->kind) throw ShapeError("cannot align proof with the program");

  switch (target->kind) {
    case CmdKind::Seq: {
      size_t want = seq_leaf_count(target->a);
      ProofPtr cur = t;
      // rotate fully to the right, then gather the left block leaf by leaf
      while (conclusion(cur).cmd->a->kind == CmdKind::Seq) cur = seq_assoc(cur);
      while (seq_leaf_count(conclusion(cur).cmd->a) < want) cur = seq_unassoc(cur);
      SplitResult s = inv_seq(cur);
      ProofPtr left = backmap_proof(s.left, target->a, fp);
      ProofPtr right = backmap_proof(s.right, target->b, fp);
      return r_seq(s.mid, left, right);
    }
    case CmdKind::If: {
      auto [th, el] = inv_if(t);
      ProofPtr th2 = backmap_proof(th, target->a, fp);
      ProofPtr el2 = backmap_proof(el, target->b, fp);
      return r_if(target->expr, th2, el2);
    }
    case CmdKind::For: {
      LoopSplit ls = inv_loop(t);
      ProofPtr body = backmap_proof(ls.body, target->a, fp);
      ProofPtr incr = backmap_proof(ls.incr, target->b, fp);
      ProofPtr loop = r_loop(ls.i1, ls.i2, body, incr);
      return r_conseq(loop, concl.pre, concl.post, concl.post_brk, concl.post_con);
    }
    default: throw ShapeError("cannot align proof with the program");
  }
}

VerifyResult verify_file(const std::string& program_text, const std::string& spec_text,
                         const VerifyOptions& opts) {
  VerifyResult result;
  SpecFile spec = parse_spec_file(spec_text);
  result.fp = spec.fp;
  AnnPtr ann = parse_annotated_command(program_text, spec.fp);
  CmdPtr plain = erase_annotations(ann);

  AnnPtr pre = preprocess(ann, opts);
  SymResult sym = symexec(pre, spec.pre, spec.fp);

  // terminal goals against the declared postconditions
  std::vector<VC> vcs = sym.vcs;
  auto emit_terminal = [&](const AssertionPtr& lhs, const AssertionPtr& rhs, const char* what) {
    if (is_false(lhs) || assertion_equal(lhs, rhs)) return;
    vcs.push_back(VC{lhs, rhs, std::string("final: ") + what});
  };
  emit_terminal(sym.posts.normal, spec.post, "normal post");
  emit_terminal(sym.posts.brk, spec.post_brk, "break post");
  emit_terminal(sym.posts.con, spec.post_con, "continue post");

  bool posts_match = assertion_equal(sym.posts.normal, spec.post) &&
                     assertion_equal(sym.posts.brk, spec.post_brk) &&
                     assertion_equal(sym.posts.con, spec.post_con);
  ProofPtr final_tree =
      posts_match ? sym.tree
                  : r_conseq(sym.tree, spec.pre, spec.post, spec.post_brk, spec.post_con);
  final_tree = backmap_proof(final_tree, plain, spec.fp);

  result.vcs = discharge(vcs, spec.fp, opts.cap);
  result.check_report = check(final_tree, spec.fp, opts.cap);
  result.concluded = conclusion(final_tree);
  result.ok = result.vcs.ok && result.check_report.ok;
  if (result.ok)
    result.certificate =
        Certificate{final_tree, spec.fp, source_hash_of(pretty(plain))};
  return result;
}

} // namespace whilecf
