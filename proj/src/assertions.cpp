#include "whilecf/assertions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace whilecf {

ATermPtr aterm_lvar(std::string name) {
  auto t = std::make_shared<ATerm>();
  t->kind = ATermKind::LVar;
  t->name = std::move(name);
  return t;
}

ATermPtr aterm_lit(Value v) {
  auto t = std::make_shared<ATerm>();
  t->kind = ATermKind::Lit;
  t->value = v;
  return t;
}

ATermPtr aterm_prog(ExprPtr e) {
  auto t = std::make_shared<ATerm>();
  t->kind = ATermKind::Prog;
  t->prog = std::move(e);
  return t;
}

ATermPtr aterm_arith(AArith op, ATermPtr a, ATermPtr b) {
  auto t = std::make_shared<ATerm>();
  t->kind = ATermKind::Arith;
  t->op = op;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

namespace {
AssertionPtr make_assertion(AKind k) {
  auto a = std::make_shared<Assertion>();
  a->kind = k;
  return a;
}
} // namespace

AssertionPtr a_true() {
  static const AssertionPtr a = make_assertion(AKind::True);
  return a;
}

AssertionPtr a_false() {
  static const AssertionPtr a = make_assertion(AKind::False);
  return a;
}

AssertionPtr a_cmp(CmpRel rel, ATermPtr ta, ATermPtr tb) {
  auto a = make_assertion(AKind::Cmp);
  auto m = std::const_pointer_cast<Assertion>(a);
  m->rel = rel;
  m->ta = std::move(ta);
  m->tb = std::move(tb);
  return a;
}

AssertionPtr a_not(AssertionPtr x) {
  auto a = make_assertion(AKind::Not);
  std::const_pointer_cast<Assertion>(a)->a = std::move(x);
  return a;
}

namespace {
AssertionPtr binary_assertion(AKind k, AssertionPtr x, AssertionPtr y) {
  auto a = make_assertion(k);
  auto m = std::const_pointer_cast<Assertion>(a);
  m->a = std::move(x);
  m->b = std::move(y);
  return a;
}
} // namespace

AssertionPtr a_and(AssertionPtr x, AssertionPtr y) {
  return binary_assertion(AKind::And, std::move(x), std::move(y));
}
AssertionPtr a_or(AssertionPtr x, AssertionPtr y) {
  return binary_assertion(AKind::Or, std::move(x), std::move(y));
}
AssertionPtr a_implies(AssertionPtr x, AssertionPtr y) {
  return binary_assertion(AKind::Implies, std::move(x), std::move(y));
}

AssertionPtr a_or_join(AssertionPtr x, AssertionPtr y) {
  if (is_false(x)) return y;
  if (is_false(y)) return x;
  return a_or(std::move(x), std::move(y));
}

AssertionPtr a_forall(std::string var, AssertionPtr body) {
  auto a = make_assertion(AKind::Forall);
  auto m = std::const_pointer_cast<Assertion>(a);
  m->var = std::move(var);
  m->a = std::move(body);
  return a;
}

AssertionPtr a_exists(std::string var, AssertionPtr body) {
  auto a = make_assertion(AKind::Exists);
  auto m = std::const_pointer_cast<Assertion>(a);
  m->var = std::move(var);
  m->a = std::move(body);
  return a;
}

AssertionPtr a_prog_eq(ExprPtr e, Value v) {
  return a_cmp(CmpRel::Eq, aterm_prog(std::move(e)), aterm_lit(v));
}

AssertionPtr guard_true(ExprPtr e) {
  return a_cmp(CmpRel::Lt, aterm_lit(0), aterm_prog(std::move(e)));
}

AssertionPtr guard_false(ExprPtr e) {
  return a_cmp(CmpRel::Eq, aterm_prog(std::move(e)), aterm_lit(0));
}

AssertionPtr a_defined(ExprPtr e) {
  auto t = aterm_prog(std::move(e));
  return a_cmp(CmpRel::Eq, t, t);
}

bool aterm_equal(const ATermPtr& a, const ATermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ATermKind::LVar: return a->name == b->name;
    case ATermKind::Lit: return a->value == b->value;
    case ATermKind::Prog: return expr_equal(a->prog, b->prog);
    case ATermKind::Arith:
      return a->op == b->op && aterm_equal(a->a, b->a) && aterm_equal(a->b, b->b);
  }
  return false;
}

bool assertion_equal(const AssertionPtr& a, const AssertionPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AKind::True:
    case AKind::False: return true;
    case AKind::Cmp:
      return a->rel == b->rel && aterm_equal(a->ta, b->ta) && aterm_equal(a->tb, b->tb);
    case AKind::Not: return assertion_equal(a->a, b->a);
    case AKind::And:
    case AKind::Or:
    case AKind::Implies: return assertion_equal(a->a, b->a) && assertion_equal(a->b, b->b);
    case AKind::Forall:
    case AKind::Exists: return a->var == b->var && assertion_equal(a->a, b->a);
  }
  return false;
}

bool is_false(const AssertionPtr& a) { return a && a->kind == AKind::False; }
bool is_true(const AssertionPtr& a) { return a && a->kind == AKind::True; }

namespace {

void collect_lvars_term(const ATermPtr& t, const std::vector<std::string>& bound,
                        std::vector<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case ATermKind::LVar:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end() &&
          std::find(out.begin(), out.end(), t->name) == out.end())
        out.push_back(t->name);
      break;
    case ATermKind::Prog: {
      // LogicRef leaves inside embedded expressions are logic variables too.
      std::vector<const Expr*> stack{t->prog.get()};
      while (!stack.empty()) {
        const Expr* e = stack.back();
        stack.pop_back();
        if (!e) continue;
        if (e->kind == ExprKind::LogicRef &&
            std::find(bound.begin(), bound.end(), e->name) == bound.end() &&
            std::find(out.begin(), out.end(), e->name) == out.end())
          out.push_back(e->name);
        stack.push_back(e->a.get());
        stack.push_back(e->b.get());
      }
      break;
    }
    case ATermKind::Arith:
      collect_lvars_term(t->a, bound, out);
      collect_lvars_term(t->b, bound, out);
      break;
    default: break;
  }
}

void collect_lvars(const AssertionPtr& a, std::vector<std::string> bound,
                   std::vector<std::string>& out) {
  if (!a) return;
  switch (a->kind) {
    case AKind::True:
    case AKind::False: return;
    case AKind::Cmp:
      collect_lvars_term(a->ta, bound, out);
      collect_lvars_term(a->tb, bound, out);
      return;
    case AKind::Not: collect_lvars(a->a, bound, out); return;
    case AKind::And:
    case AKind::Or:
    case AKind::Implies:
      collect_lvars(a->a, bound, out);
      collect_lvars(a->b, bound, out);
      return;
    case AKind::Forall:
    case AKind::Exists:
      bound.push_back(a->var);
      collect_lvars(a->a, std::move(bound), out);
      return;
  }
}

std::optional<Value> eval_aterm(const ATermPtr& t, const State& sigma, const Env& env,
                                const Footprint& fp) {
  if (!t) return std::nullopt;
  const uint64_t m = fp.modulus();
  switch (t->kind) {
    case ATermKind::LVar: {
      auto v = env.lookup(t->name);
      if (!v) return std::nullopt;
      return *v % m;
    }
    case ATermKind::Lit: return t->value % m;
    case ATermKind::Prog: return eval_expr(t->prog, sigma, fp, &env);
    case ATermKind::Arith: {
      auto a = eval_aterm(t->a, sigma, env, fp);
      auto b = eval_aterm(t->b, sigma, env, fp);
      if (!a || !b) return std::nullopt;
      switch (t->op) {
        case AArith::Add: return (*a + *b) % m;
        case AArith::Sub: return (*a + m - *b) % m;
        case AArith::Mul: return (*a * *b) % m;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

} // namespace

void collect_free_logic_vars(const AssertionPtr& a, std::vector<std::string>& out) {
  collect_lvars(a, {}, out);
}

std::vector<std::string> free_logic_vars(const AssertionPtr& a) {
  std::vector<std::string> out;
  collect_lvars(a, {}, out);
  return out;
}

bool satisfies(const State& sigma, const Env& env, const AssertionPtr& p, const Footprint& fp) {
  if (!p) return false;
  switch (p->kind) {
    case AKind::True: return true;
    case AKind::False: return false;
    case AKind::Cmp: {
      auto a = eval_aterm(p->ta, sigma, env, fp);
      auto b = eval_aterm(p->tb, sigma, env, fp);
      if (!a || !b) return false; // strict atoms absorb evaluation errors
      switch (p->rel) {
        case CmpRel::Eq: return *a == *b;
        case CmpRel::Le: return *a <= *b;
        case CmpRel::Lt: return *a < *b;
      }
      return false;
    }
    case AKind::Not: return !satisfies(sigma, env, p->a, fp);
    case AKind::And: return satisfies(sigma, env, p->a, fp) && satisfies(sigma, env, p->b, fp);
    case AKind::Or: return satisfies(sigma, env, p->a, fp) || satisfies(sigma, env, p->b, fp);
    case AKind::Implies:
      return !satisfies(sigma, env, p->a, fp) || satisfies(sigma, env, p->b, fp);
    case AKind::Forall: {
      for (Value v = 0; v < fp.modulus(); ++v)
        if (!satisfies(sigma, env.with(p->var, v), p->a, fp)) return false;
      return true;
    }
    case AKind::Exists: {
      for (Value v = 0; v < fp.modulus(); ++v)
        if (satisfies(sigma, env.with(p->var, v), p->a, fp)) return true;
      return false;
    }
  }
  return false;
}

namespace {

ATermPtr subst_term(const ATermPtr& t, const std::string& x, const ExprPtr& e) {
  if (!t) return t;
  switch (t->kind) {
    case ATermKind::LVar:
    case ATermKind::Lit: return t;
    case ATermKind::Prog: {
      ExprPtr p = expr_subst(t->prog, x, e);
      return p == t->prog ? t : aterm_prog(p);
    }
    case ATermKind::Arith: {
      ATermPtr a = subst_term(t->a, x, e);
      ATermPtr b = subst_term(t->b, x, e);
      return (a == t->a && b == t->b) ? t : aterm_arith(t->op, a, b);
    }
  }
  return t;
}

} // namespace

AssertionPtr subst(const AssertionPtr& p, const std::string& x, const ExprPtr& e) {
  if (!p) return p;
  switch (p->kind) {
    case AKind::True:
    case AKind::False: return p;
    case AKind::Cmp: {
      ATermPtr a = subst_term(p->ta, x, e);
      ATermPtr b = subst_term(p->tb, x, e);
      return (a == p->ta && b == p->tb) ? p : a_cmp(p->rel, a, b);
    }
    case AKind::Not: {
      AssertionPtr a = subst(p->a, x, e);
      return a == p->a ? p : a_not(a);
    }
    case AKind::And:
    case AKind::Or:
    case AKind::Implies: {
      AssertionPtr a = subst(p->a, x, e);
      AssertionPtr b = subst(p->b, x, e);
      if (a == p->a && b == p->b) return p;
      return binary_assertion(p->kind, a, b);
    }
    case AKind::Forall:
    case AKind::Exists: {
      // Binders are logic variables, the substitution target is a program
      // variable; no capture is possible.
      AssertionPtr a = subst(p->a, x, e);
      if (a == p->a) return p;
      return p->kind == AKind::Forall ? a_forall(p->var, a) : a_exists(p->var, a);
    }
  }
  return p;
}

Verdict Verdict::counterexample(State s, Env e, std::string detail) {
  Verdict v;
  v.kind = VerdictKind::CounterExample;
  v.witness_state = std::move(s);
  v.witness_env = std::move(e);
  v.detail = std::move(detail);
  return v;
}

Verdict Verdict::inconclusive(std::vector<State> states) {
  Verdict v;
  v.kind = VerdictKind::Inconclusive;
  v.inconclusive_states = std::move(states);
  return v;
}

std::string verdict_to_string(const Verdict& v, const Footprint& fp) {
  std::ostringstream os;
  switch (v.kind) {
    case VerdictKind::Holds:
      os << "Holds";
      if (v.bounded) os << " (bounded)";
      break;
    case VerdictKind::CounterExample:
      os << "CounterExample " << state_to_string(v.witness_state, fp);
      if (!v.witness_env.binds.empty()) os << " with " << v.witness_env.to_string();
      if (!v.detail.empty()) os << " -- " << v.detail;
      break;
    case VerdictKind::Inconclusive:
      os << "Inconclusive (" << v.inconclusive_states.size() << " fuel-exhausted states)";
      break;
  }
  return os.str();
}

// Enumerates all environments over `names`, calling fn until it returns false.
bool for_each_env(const std::vector<std::string>& names, const Footprint& fp,
                  const std::function<bool(const Env&)>& fn) {
  std::vector<Value> vals(names.size(), 0);
  while (true) {
    Env e;
    for (size_t i = 0; i < names.size(); ++i) e.binds.emplace_back(names[i], vals[i]);
    if (!fn(e)) return false;
    size_t j = 0;
    for (; j < vals.size(); ++j) {
      if (++vals[j] < fp.modulus()) break;
      vals[j] = 0;
    }
    if (j == vals.size()) return true;
  }
}

Verdict entails(const AssertionPtr& p, const AssertionPtr& q, const Footprint& fp, uint64_t cap) {
  std::vector<std::string> lvars = free_logic_vars(p);
  collect_free_logic_vars(q, lvars);

  uint64_t envs = 1;
  for (size_t i = 0; i < lvars.size(); ++i) {
    if (envs > cap / fp.modulus() + 1) throw CapExceeded("entailment environment space too large");
    envs *= fp.modulus();
  }
  uint64_t states = state_space_size(fp);
  if (states > cap || envs > cap / states + 1 || states * envs > cap)
    throw CapExceeded("entailment enumeration budget exceeded");

  std::vector<State> all = enumerate_states(fp, cap);
  Verdict result = Verdict::pass();
  bool ok = for_each_env(lvars, fp, [&](const Env& env) {
    for (const State& s : all) {
      if (satisfies(s, env, p, fp) && !satisfies(s, env, q, fp)) {
        result = Verdict::counterexample(s, env, "entailment fails");
        return false;
      }
    }
    return true;
  });
  (void)ok;
  return result;
}

} // namespace whilecf
