#pragma once

// Core definitions for the While-CF toy language: values over a finite
// modular domain, expressions, commands, program states, and exit kinds.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace whilecf {

// Declared variable set plus the value-domain modulus. Every oracle in this
// toolkit enumerates states over a footprint, so keeping it small keeps
// everything decidable in practice.
class Footprint {
public:
  Footprint(std::vector<std::string> vars, uint64_t modulus);

  const std::vector<std::string>& vars() const { return vars_; }
  uint64_t modulus() const { return modulus_; }
  std::optional<size_t> var_index(const std::string& name) const;
  bool has_var(const std::string& name) const { return var_index(name).has_value(); }

private:
  std::vector<std::string> vars_;
  uint64_t modulus_;
};

// A value is a residue in [0, M). Residues are stored raw; reduction mod M
// happens wherever a footprint is in scope (evaluation, state construction).
using Value = uint64_t;

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Const, Var, LogicRef, Unary, Binary };

// Expression syntax tree. LogicRef never appears in program text; it is
// produced by assertion-level substitution (a logic variable standing for a
// value inside an embedded expression) and evaluates against an environment.
struct Expr {
  ExprKind kind;
  Value value = 0;     // Const
  std::string name;    // Var / LogicRef
  UnOp un = UnOp::Neg; // Unary
  BinOp bin = BinOp::Add;
  ExprPtr a, b;
};

ExprPtr expr_const(Value v);
ExprPtr expr_var(std::string name);
ExprPtr expr_logic_ref(std::string name);
ExprPtr expr_unary(UnOp op, ExprPtr a);
ExprPtr expr_binary(BinOp op, ExprPtr a, ExprPtr b);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
size_t expr_hash(const ExprPtr& e);
size_t expr_node_count(const ExprPtr& e);
// True iff e contains a Div or Mod operator, the only partial operations.
bool expr_has_div(const ExprPtr& e);
void expr_collect_vars(const ExprPtr& e, std::vector<std::string>& out);
// Substitute every occurrence of program variable x by expression r.
ExprPtr expr_subst(const ExprPtr& e, const std::string& x, const ExprPtr& r);

struct Command;
using CmdPtr = std::shared_ptr<const Command>;

enum class CmdKind { Skip, Assign, Seq, If, For, Break, Continue };

// Command syntax tree. For is the C-style loop: `a` is the body, `b` the
// increment step run after each iteration (continue jumps to it).
struct Command {
  CmdKind kind;
  std::string var; // Assign target
  ExprPtr expr;    // Assign rhs / If condition
  CmdPtr a, b;     // Seq(a,b), If(then,else), For(body,incr)
};

CmdPtr cmd_skip();
CmdPtr cmd_assign(std::string var, ExprPtr e);
CmdPtr cmd_seq(CmdPtr a, CmdPtr b);
CmdPtr cmd_if(ExprPtr cond, CmdPtr then_branch, CmdPtr else_branch);
CmdPtr cmd_for(CmdPtr body, CmdPtr incr);
CmdPtr cmd_break();
CmdPtr cmd_continue();

bool cmd_equal(const CmdPtr& a, const CmdPtr& b);
size_t cmd_hash(const CmdPtr& c);
size_t cmd_node_count(const CmdPtr& c);
void cmd_collect_vars(const CmdPtr& c, std::vector<std::string>& out);

// True iff some continue in c would escape c itself, i.e. is not enclosed by
// a For inside c. Continues inside nested loops are scoped by them.
bool has_toplevel_continue(const CmdPtr& c);

// Total map from footprint variables to values, stored in footprint order.
struct State {
  std::vector<Value> vals;

  bool operator==(const State& o) const { return vals == o.vals; }
};

Value state_get(const State& s, const Footprint& fp, const std::string& name);
State state_set(State s, const Footprint& fp, const std::string& name, Value v);
std::string state_to_string(const State& s, const Footprint& fp);
size_t state_hash(const State& s);

enum class ExitKind { Normal, Brk, Con };
const char* exit_kind_name(ExitKind ek);

// Logic-variable environment (assertions module fills these in; evaluation
// only reads them for LogicRef leaves).
struct Env {
  std::vector<std::pair<std::string, Value>> binds;

  std::optional<Value> lookup(const std::string& name) const;
  Env with(const std::string& name, Value v) const;
  std::string to_string() const;
};

// Evaluates e on sigma; arithmetic is mod M except Div/Mod on representatives.
// Returns nullopt exactly when a divisor or modulus is zero, or a name cannot
// be resolved. Comparisons and logic connectives yield 0/1 and are strict.
std::optional<Value> eval_expr(const ExprPtr& e, const State& sigma, const Footprint& fp,
                               const Env* env = nullptr);

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// All M^|vars| states in a fixed order: vals[0] varies fastest.
std::vector<State> enumerate_states(const Footprint& fp, uint64_t cap = 1u << 20);
uint64_t state_space_size(const Footprint& fp);

// Seed-deterministic random command with at most `size` command nodes, all
// variables drawn from fp. Used by the differential and rule fuzz suites.
CmdPtr gen_random_command(uint64_t seed, size_t size, const Footprint& fp);

} // namespace whilecf
