#include "whilecf/lang.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

namespace whilecf {

namespace {

size_t hash_mix(size_t h, size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

} // namespace

Footprint::Footprint(std::vector<std::string> vars, uint64_t modulus)
    : vars_(std::move(vars)), modulus_(modulus) {
  if (vars_.empty()) throw std::invalid_argument("footprint needs at least one variable");
  if (modulus_ < 2) throw std::invalid_argument("footprint modulus must be >= 2");
  std::unordered_set<std::string> seen;
  for (const auto& v : vars_) {
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate footprint variable: " + v);
  }
}

std::optional<size_t> Footprint::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

ExprPtr expr_const(Value v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Const;
  e->value = v;
  return e;
}

ExprPtr expr_var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr expr_logic_ref(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::LogicRef;
  e->name = std::move(name);
  return e;
}

ExprPtr expr_unary(UnOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->un = op;
  e->a = std::move(a);
  return e;
}

ExprPtr expr_binary(BinOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->bin = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Const: return a->value == b->value;
    case ExprKind::Var:
    case ExprKind::LogicRef: return a->name == b->name;
    case ExprKind::Unary: return a->un == b->un && expr_equal(a->a, b->a);
    case ExprKind::Binary:
      return a->bin == b->bin && expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
  return false;
}

size_t expr_hash(const ExprPtr& e) {
  if (!e) return 0;
  size_t h = static_cast<size_t>(e->kind) * 131;
  switch (e->kind) {
    case ExprKind::Const: h = hash_mix(h, static_cast<size_t>(e->value)); break;
    case ExprKind::Var:
    case ExprKind::LogicRef: h = hash_mix(h, std::hash<std::string>{}(e->name)); break;
    case ExprKind::Unary:
      h = hash_mix(h, static_cast<size_t>(e->un));
      h = hash_mix(h, expr_hash(e->a));
      break;
    case ExprKind::Binary:
      h = hash_mix(h, static_cast<size_t>(e->bin));
      h = hash_mix(h, expr_hash(e->a));
      h = hash_mix(h, expr_hash(e->b));
      break;
  }
  return h;
}

size_t expr_node_count(const ExprPtr& e) {
  if (!e) return 0;
  return 1 + expr_node_count(e->a) + expr_node_count(e->b);
}

bool expr_has_div(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::Binary && (e->bin == BinOp::Div || e->bin == BinOp::Mod)) return true;
  return expr_has_div(e->a) || expr_has_div(e->b);
}

void expr_collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Var) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
  }
  expr_collect_vars(e->a, out);
  expr_collect_vars(e->b, out);
}

ExprPtr expr_subst(const ExprPtr& e, const std::string& x, const ExprPtr& r) {
  if (!e) return e;
  switch (e->kind) {
    case ExprKind::Const:
    case ExprKind::LogicRef: return e;
    case ExprKind::Var: return e->name == x ? r : e;
    case ExprKind::Unary: {
      ExprPtr a = expr_subst(e->a, x, r);
      return a == e->a ? e : expr_unary(e->un, a);
    }
    case ExprKind::Binary: {
      ExprPtr a = expr_subst(e->a, x, r);
      ExprPtr b = expr_subst(e->b, x, r);
      return (a == e->a && b == e->b) ? e : expr_binary(e->bin, a, b);
    }
  }
  return e;
}

namespace {
CmdPtr make_cmd(CmdKind k) {
  auto c = std::make_shared<Command>();
  c->kind = k;
  return c;
}
} // namespace

CmdPtr cmd_skip() {
  static const CmdPtr c = make_cmd(CmdKind::Skip);
  return c;
}

CmdPtr cmd_break() {
  static const CmdPtr c = make_cmd(CmdKind::Break);
  return c;
}

CmdPtr cmd_continue() {
  static const CmdPtr c = make_cmd(CmdKind::Continue);
  return c;
}

CmdPtr cmd_assign(std::string var, ExprPtr e) {
  auto c = std::make_shared<Command>();
  c->kind = CmdKind::Assign;
  c->var = std::move(var);
  c->expr = std::move(e);
  return c;
}

CmdPtr cmd_seq(CmdPtr a, CmdPtr b) {
  auto c = std::make_shared<Command>();
  c->kind = CmdKind::Seq;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}

CmdPtr cmd_if(ExprPtr cond, CmdPtr then_branch, CmdPtr else_branch) {
  auto c = std::make_shared<Command>();
  c->kind = CmdKind::If;
  c->expr = std::move(cond);
  c->a = std::move(then_branch);
  c->b = std::move(else_branch);
  return c;
}

CmdPtr cmd_for(CmdPtr body, CmdPtr incr) {
  auto c = std::make_shared<Command>();
  c->kind = CmdKind::For;
  c->a = std::move(body);
  c->b = std::move(incr);
  return c;
}

bool cmd_equal(const CmdPtr& a, const CmdPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
    case CmdKind::Continue: return true;
    case CmdKind::Assign: return a->var == b->var && expr_equal(a->expr, b->expr);
    case CmdKind::Seq:
    case CmdKind::For: return cmd_equal(a->a, b->a) && cmd_equal(a->b, b->b);
    case CmdKind::If:
      return expr_equal(a->expr, b->expr) && cmd_equal(a->a, b->a) && cmd_equal(a->b, b->b);
  }
  return false;
}

size_t cmd_hash(const CmdPtr& c) {
  if (!c) return 0;
  size_t h = static_cast<size_t>(c->kind) * 257;
  switch (c->kind) {
    case CmdKind::Skip:
    case CmdKind::Break:
    case CmdKind::Continue: break;
    case CmdKind::Assign:
      h = hash_mix(h, std::hash<std::string>{}(c->var));
      h = hash_mix(h, expr_hash(c->expr));
      break;
    case CmdKind::If: h = hash_mix(h, expr_hash(c->expr)); [[fallthrough]];
    case CmdKind::Seq:
    case CmdKind::For:
      h = hash_mix(h, cmd_hash(c->a));
      h = hash_mix(h, cmd_hash(c->b));
      break;
  }
  return h;
}

size_t cmd_node_count(const CmdPtr& c) {
  if (!c) return 0;
  return 1 + cmd_node_count(c->a) + cmd_node_count(c->b);
}

void cmd_collect_vars(const CmdPtr& c, std::vector<std::string>& out) {
  if (!c) return;
  if (c->kind == CmdKind::Assign) {
    if (std::find(out.begin(), out.end(), c->var) == out.end()) out.push_back(c->var);
  }
  expr_collect_vars(c->expr, out);
  cmd_collect_vars(c->a, out);
  cmd_collect_vars(c->b, out);
}

bool has_toplevel_continue(const CmdPtr& c) {
  if (!c) return false;
  switch (c->kind) {
    case CmdKind::Continue: return true;
    case CmdKind::Seq: return has_toplevel_continue(c->a) || has_toplevel_continue(c->b);
    case CmdKind::If: return has_toplevel_continue(c->a) || has_toplevel_continue(c->b);
    case CmdKind::For: return false; // inner loop scopes its continues
    default: return false;
  }
}

Value state_get(const State& s, const Footprint& fp, const std::string& name) {
  auto idx = fp.var_index(name);
  if (!idx) throw std::out_of_range("no such program variable: " + name);
  return s.vals[*idx];
}

State state_set(State s, const Footprint& fp, const std::string& name, Value v) {
  auto idx = fp.var_index(name);
  if (!idx) throw std::out_of_range("no such program variable: " + name);
  s.vals[*idx] = v % fp.modulus();
  return s;
}

std::string state_to_string(const State& s, const Footprint& fp) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < fp.vars().size(); ++i) {
    if (i) os << ", ";
    os << fp.vars()[i] << '=' << s.vals[i];
  }
  os << '}';
  return os.str();
}

size_t state_hash(const State& s) {
  size_t h = 17;
  for (Value v : s.vals) h = hash_mix(h, static_cast<size_t>(v));
  return h;
}

const char* exit_kind_name(ExitKind ek) {
  switch (ek) {
    case ExitKind::Normal: return "normal";
    case ExitKind::Brk: return "break";
    case ExitKind::Con: return "continue";
  }
  return "?";
}

std::optional<Value> Env::lookup(const std::string& name) const {
  for (auto it = binds.rbegin(); it != binds.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

Env Env::with(const std::string& name, Value v) const {
  Env e = *this;
  e.binds.emplace_back(name, v);
  return e;
}

std::string Env::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < binds.size(); ++i) {
    if (i) os << ", ";
    os << binds[i].first << '=' << binds[i].second;
  }
  os << '}';
  return os.str();
}

std::optional<Value> eval_expr(const ExprPtr& e, const State& sigma, const Footprint& fp,
                               const Env* env) {
  if (!e) return std::nullopt;
  const uint64_t m = fp.modulus();
  switch (e->kind) {
    case ExprKind::Const: return e->value % m;
    case ExprKind::Var: {
      auto idx = fp.var_index(e->name);
      if (!idx) return std::nullopt;
      return sigma.vals[*idx];
    }
    case ExprKind::LogicRef: {
      if (!env) return std::nullopt;
      auto v = env->lookup(e->name);
      if (!v) return std::nullopt;
      return *v % m;
    }
    case ExprKind::Unary: {
      auto a = eval_expr(e->a, sigma, fp, env);
      if (!a) return std::nullopt;
      if (e->un == UnOp::Neg) return (m - *a) % m;
      return *a == 0 ? 1 : 0;
    }
    case ExprKind::Binary: {
      auto a = eval_expr(e->a, sigma, fp, env);
      auto b = eval_expr(e->b, sigma, fp, env);
      if (!a || !b) return std::nullopt;
      switch (e->bin) {
        case BinOp::Add: return (*a + *b) % m;
        case BinOp::Sub: return (*a + m - *b) % m;
        case BinOp::Mul: return (*a * *b) % m;
        case BinOp::Div:
          if (*b == 0) return std::nullopt;
          return *a / *b;
        case BinOp::Mod:
          if (*b == 0) return std::nullopt;
          return *a % *b;
        case BinOp::Eq: return *a == *b ? 1 : 0;
        case BinOp::Ne: return *a != *b ? 1 : 0;
        case BinOp::Lt: return *a < *b ? 1 : 0;
        case BinOp::Le: return *a <= *b ? 1 : 0;
        case BinOp::And: return (*a != 0 && *b != 0) ? 1 : 0;
        case BinOp::Or: return (*a != 0 || *b != 0) ? 1 : 0;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

uint64_t state_space_size(const Footprint& fp) {
  uint64_t n = 1;
  for (size_t i = 0; i < fp.vars().size(); ++i) {
    if (n > (UINT64_MAX / fp.modulus())) return UINT64_MAX;
    n *= fp.modulus();
  }
  return n;
}

std::vector<State> enumerate_states(const Footprint& fp, uint64_t cap) {
  uint64_t n = state_space_size(fp);
  if (n > cap)
    throw CapExceeded("state space " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<State> out;
  out.reserve(n);
  const size_t k = fp.vars().size();
  State s;
  s.vals.assign(k, 0);
  for (uint64_t i = 0; i < n; ++i) {
    out.push_back(s);
    for (size_t j = 0; j < k; ++j) {
      if (++s.vals[j] < fp.modulus()) break;
      s.vals[j] = 0;
    }
  }
  return out;
}

namespace {

// Local PRNG helpers: mt19937_64 output is standard-fixed; avoid
// uniform_int_distribution so generated programs are stable across stdlibs.
uint64_t rnd_below(std::mt19937_64& rng, uint64_t n) { return n ? rng() % n : 0; }

ExprPtr gen_expr(std::mt19937_64& rng, const Footprint& fp, size_t depth) {
  if (depth == 0 || rnd_below(rng, 3) == 0) {
    if (rnd_below(rng, 2) == 0) return expr_const(rnd_below(rng, fp.modulus()));
    return expr_var(fp.vars()[rnd_below(rng, fp.vars().size())]);
  }
  static const BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod,
                              BinOp::Eq,  BinOp::Ne,  BinOp::Lt,  BinOp::Le,  BinOp::And,
                              BinOp::Or};
  if (rnd_below(rng, 8) == 0)
    return expr_unary(rnd_below(rng, 2) ? UnOp::Neg : UnOp::Not, gen_expr(rng, fp, depth - 1));
  BinOp op = ops[rnd_below(rng, sizeof(ops) / sizeof(ops[0]))];
  return expr_binary(op, gen_expr(rng, fp, depth - 1), gen_expr(rng, fp, depth - 1));
}

// Budget counts command constructors only; gen_cmd never exceeds `size`.
CmdPtr gen_cmd(std::mt19937_64& rng, const Footprint& fp, size_t size) {
  if (size <= 2) {
    switch (rnd_below(rng, 4)) {
      case 0: return cmd_skip();
      case 1: return cmd_break();
      case 2: return cmd_continue();
      default:
        return cmd_assign(fp.vars()[rnd_below(rng, fp.vars().size())], gen_expr(rng, fp, 2));
    }
  }
  switch (rnd_below(rng, 6)) {
    case 0:
      return cmd_assign(fp.vars()[rnd_below(rng, fp.vars().size())], gen_expr(rng, fp, 2));
    case 1:
    case 2: {
      size_t left = 1 + rnd_below(rng, size - 2);
      return cmd_seq(gen_cmd(rng, fp, left), gen_cmd(rng, fp, size - 1 - left));
    }
    case 3: {
      size_t half = (size - 1) / 2;
      return cmd_if(gen_expr(rng, fp, 2), gen_cmd(rng, fp, half), gen_cmd(rng, fp, half));
    }
    case 4: {
      size_t half = (size - 1) / 2;
      return cmd_for(gen_cmd(rng, fp, half), gen_cmd(rng, fp, half));
    }
    default: return gen_cmd(rng, fp, 2);
  }
}

} // namespace

CmdPtr gen_random_command(uint64_t seed, size_t size, const Footprint& fp) {
  if (size < 1) size = 1;
  std::mt19937_64 rng(seed);
  CmdPtr c = gen_cmd(rng, fp, size);
  return c;
}

} // namespace whilecf
