#pragma once

// First-order assertions over program states: terms, satisfaction, program
// variable substitution, and the finite-domain entailment oracle used to
// discharge consequence side conditions.

#include "whilecf/lang.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace whilecf {

struct ATerm;
using ATermPtr = std::shared_ptr<const ATerm>;

enum class ATermKind { LVar, Lit, Prog, Arith };
enum class AArith { Add, Sub, Mul };

// Assertion-level term: logic variable, literal residue, embedded program
// expression [e] (its value in the current state), or modular arithmetic.
struct ATerm {
  ATermKind kind;
  std::string name; // LVar
  Value value = 0;  // Lit
  ExprPtr prog;     // Prog
  AArith op = AArith::Add;
  ATermPtr a, b;
};

ATermPtr aterm_lvar(std::string name);
ATermPtr aterm_lit(Value v);
ATermPtr aterm_prog(ExprPtr e);
ATermPtr aterm_arith(AArith op, ATermPtr a, ATermPtr b);

struct Assertion;
using AssertionPtr = std::shared_ptr<const Assertion>;

enum class AKind { True, False, Cmp, Not, And, Or, Implies, Forall, Exists };
enum class CmpRel { Eq, Le, Lt };

struct Assertion {
  AKind kind;
  CmpRel rel = CmpRel::Eq; // Cmp
  ATermPtr ta, tb;         // Cmp
  AssertionPtr a, b;       // Not(a), And/Or/Implies(a,b), quantifier body a
  std::string var;         // Forall / Exists binder (logic variable)
};

AssertionPtr a_true();
AssertionPtr a_false();
AssertionPtr a_cmp(CmpRel rel, ATermPtr a, ATermPtr b);
AssertionPtr a_not(AssertionPtr a);
AssertionPtr a_and(AssertionPtr a, AssertionPtr b);
AssertionPtr a_or(AssertionPtr a, AssertionPtr b);
// disjunction with false units collapsed (keeps control-flow posts canonical)
AssertionPtr a_or_join(AssertionPtr a, AssertionPtr b);
AssertionPtr a_implies(AssertionPtr a, AssertionPtr b);
AssertionPtr a_forall(std::string var, AssertionPtr body);
AssertionPtr a_exists(std::string var, AssertionPtr body);

// Convenience atoms. Truth of a condition is nonzero, so the positive guard
// is 0 < [e] and the negative guard [e] = 0; both are false when e errors.
AssertionPtr a_prog_eq(ExprPtr e, Value v);
AssertionPtr guard_true(ExprPtr e);
AssertionPtr guard_false(ExprPtr e);
// [e] = [e]: holds exactly when e evaluates without error.
AssertionPtr a_defined(ExprPtr e);

bool aterm_equal(const ATermPtr& a, const ATermPtr& b);
bool assertion_equal(const AssertionPtr& a, const AssertionPtr& b);
bool is_false(const AssertionPtr& a);
bool is_true(const AssertionPtr& a);

// Free logic variables (program variables are never bound, never counted).
std::vector<std::string> free_logic_vars(const AssertionPtr& a);
void collect_free_logic_vars(const AssertionPtr& a, std::vector<std::string>& out);

// Two-valued satisfaction. Quantifiers range over the M residues; an atom
// whose embedded expression errors is false.
bool satisfies(const State& sigma, const Env& env, const AssertionPtr& p, const Footprint& fp);

// Replace program variable x by expression e inside every embedded program
// expression; logical structure is untouched.
AssertionPtr subst(const AssertionPtr& p, const std::string& x, const ExprPtr& e);

enum class VerdictKind { Holds, CounterExample, Inconclusive };

// Shared verdict record for the oracles. Counterexamples carry a replayable
// state (and logic environment where one was involved).
struct Verdict {
  VerdictKind kind = VerdictKind::Holds;
  State witness_state;
  Env witness_env;
  std::string detail;
  // Fuel-exhausted initial states (Inconclusive).
  std::vector<State> inconclusive_states;
  // Set when a Holds verdict only covers a generated finite family.
  bool bounded = false;

  bool holds() const { return kind == VerdictKind::Holds; }
  bool is_counterexample() const { return kind == VerdictKind::CounterExample; }
  static Verdict pass() { return {}; }
  static Verdict counterexample(State s, Env e, std::string detail = "");
  static Verdict inconclusive(std::vector<State> states);
};

std::string verdict_to_string(const Verdict& v, const Footprint& fp);

// Finite entailment: free logic variables of P and Q are universally closed
// over the residues. CounterExample carries (sigma, J) with P true, Q false.
Verdict entails(const AssertionPtr& p, const AssertionPtr& q, const Footprint& fp,
                uint64_t cap = 1u << 22);

// Enumerates every environment assigning residues to `names`; stops early and
// returns false when fn does.
bool for_each_env(const std::vector<std::string>& names, const Footprint& fp,
                  const std::function<bool(const Env&)>& fn);

} // namespace whilecf
