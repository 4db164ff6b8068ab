#include "whilecf/annotated.hpp"

namespace whilecf {

namespace {
AnnPtr make_ann(AnnKind k) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = k;
  return a;
}
} // namespace

AnnPtr ann_skip() {
  static const AnnPtr a = make_ann(AnnKind::Skip);
  return a;
}

AnnPtr ann_break() {
  static const AnnPtr a = make_ann(AnnKind::Break);
  return a;
}

AnnPtr ann_continue() {
  static const AnnPtr a = make_ann(AnnKind::Continue);
  return a;
}

AnnPtr ann_assign(std::string var, ExprPtr e) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = AnnKind::Assign;
  a->var = std::move(var);
  a->expr = std::move(e);
  return a;
}

AnnPtr ann_seq(AnnPtr x, AnnPtr y) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = AnnKind::Seq;
  a->a = std::move(x);
  a->b = std::move(y);
  return a;
}

AnnPtr ann_if(ExprPtr cond, AnnPtr t, AnnPtr e) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = AnnKind::If;
  a->expr = std::move(cond);
  a->a = std::move(t);
  a->b = std::move(e);
  return a;
}

AnnPtr ann_for(AnnPtr body, AnnPtr incr, AssertionPtr body_pre, AssertionPtr incr_pre) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = AnnKind::ForAnn;
  a->a = std::move(body);
  a->b = std::move(incr);
  a->body_pre = std::move(body_pre);
  a->incr_pre = std::move(incr_pre);
  return a;
}

AnnPtr ann_assert(AssertionPtr p) {
  auto a = std::make_shared<AnnotatedCommand>();
  a->kind = AnnKind::MidAssert;
  a->mid = std::move(p);
  return a;
}

AnnPtr ann_of_plain(const CmdPtr& c) {
  if (!c) return nullptr;
  switch (c->kind) {
    case CmdKind::Skip: return ann_skip();
    case CmdKind::Break: return ann_break();
    case CmdKind::Continue: return ann_continue();
    case CmdKind::Assign: return ann_assign(c->var, c->expr);
    case CmdKind::Seq: return ann_seq(ann_of_plain(c->a), ann_of_plain(c->b));
    case CmdKind::If: return ann_if(c->expr, ann_of_plain(c->a), ann_of_plain(c->b));
    case CmdKind::For:
      return ann_for(ann_of_plain(c->a), ann_of_plain(c->b), nullptr, nullptr);
  }
  return nullptr;
}

CmdPtr erase_annotations(const AnnPtr& c) {
  if (!c) return nullptr;
  switch (c->kind) {
    case AnnKind::Skip: return cmd_skip();
    case AnnKind::Break: return cmd_break();
    case AnnKind::Continue: return cmd_continue();
    case AnnKind::MidAssert: return cmd_skip();
    case AnnKind::Assign: return cmd_assign(c->var, c->expr);
    case AnnKind::Seq: {
      if (c->a && c->a->kind == AnnKind::MidAssert) return erase_annotations(c->b);
      if (c->b && c->b->kind == AnnKind::MidAssert) return erase_annotations(c->a);
      return cmd_seq(erase_annotations(c->a), erase_annotations(c->b));
    }
    case AnnKind::If: return cmd_if(c->expr, erase_annotations(c->a), erase_annotations(c->b));
    case AnnKind::ForAnn: return cmd_for(erase_annotations(c->a), erase_annotations(c->b));
  }
  return nullptr;
}

} // namespace whilecf
