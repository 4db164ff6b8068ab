#pragma once

// Seeded random generation and enumeration helpers used by the differential
// and rule suites: random expressions/assertions, exact outcome sets by
// brute-force evaluation, state-characterizing assertions, and loop
// invariant synthesis good enough to feed the symbolic executor.

#include "whilecf/annotated.hpp"
#include "whilecf/bigstep.hpp"
#include "whilecf/proof.hpp"

#include <optional>
#include <random>
#include <vector>

namespace whilecf::gen {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  uint64_t below(uint64_t n) { return n ? eng() % n : 0; }
  bool chance(unsigned pct) { return below(100) < pct; }
};

ExprPtr random_expr(Rng& rng, const Footprint& fp, int depth, bool allow_div);
AssertionPtr random_closed_assertion(Rng& rng, const Footprint& fp, int depth);

// [x]=a /\ [y]=b /\ ... pinning exactly one state; disjunction over a set
// (false for the empty set).
AssertionPtr char_state(const State& s, const Footprint& fp);
AssertionPtr char_states(const std::vector<State>& ss, const Footprint& fp);

std::vector<State> random_state_subset(Rng& rng, const Footprint& fp, unsigned density_pct);

struct OutcomeSets {
  std::vector<State> normal, brk, con;
  bool error = false;
  bool fuel_out = false;

  bool clean() const { return !error && !fuel_out; }
};

// Exact exit sets of c started from each state in `from`, deduplicated.
OutcomeSets outcome_sets(const CmdPtr& c, const std::vector<State>& from, const Footprint& fp,
                         uint64_t fuel);

struct LoopReach {
  std::vector<State> head;   // states at the body entry (invariant set)
  std::vector<State> ientry; // states at the increment entry
  std::vector<State> exits;  // loop exit states
  bool failed = false;       // error, fuel, or an increment continue/loop
};

// Reachable-state fixpoint of a loop started from `init`.
LoopReach loop_reachable(const CmdPtr& body, const CmdPtr& incr, const std::vector<State>& init,
                         const Footprint& fp, uint64_t fuel);

// Attaches loop invariants computed as reachable-state fixpoints. Fails when
// an execution errors, runs out of fuel, or an increment step exits by
// continue.
std::optional<AnnPtr> annotate_with_invariants(const CmdPtr& c, const std::vector<State>& from,
                                               const Footprint& fp, uint64_t fuel);

// A checking certificate tree for {pre} c {...} with exact symbolic posts;
// pre_states must be exactly the states satisfying pre.
std::optional<ProofPtr> make_checked_tree(const CmdPtr& c, const AssertionPtr& pre,
                                          const std::vector<State>& pre_states,
                                          const Footprint& fp, uint64_t fuel);

// As above but bridged to a caller-supplied conclusion (which must be valid;
// the consequence obligations discharge over the exact sets).
std::optional<ProofPtr> make_tree_for_triple(const Triple& t,
                                             const std::vector<State>& pre_states,
                                             const Footprint& fp, uint64_t fuel);

// Occasionally stacks a harmless consequence layer on top (narrower pre,
// wider posts) so inversion paths through consequence nodes get exercised.
ProofPtr maybe_wrap_benign_conseq(Rng& rng, const ProofPtr& t, const Footprint& fp);

} // namespace whilecf::gen
