#pragma once

// Executable simulation checking between machine configurations, the
// relation builders for the if-seq and loop-nocontinue transformations,
// small-step refinement, and the lifting checks that connect simulations to
// the weakest-precondition and guard oracles.

#include "whilecf/errors.hpp"
#include "whilecf/smallstep.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace whilecf {

// One related pair: the source (lhs) is simulated by the target (rhs).
struct ProgPair {
  CmdPtr lc;
  KontPtr lk;
  CmdPtr rc;
  KontPtr rk;
};

std::string prog_pair_to_string(const ProgPair& p);

struct RelationTable {
  std::vector<ProgPair> pairs;
  uint64_t match_bound = 8; // max target steps matching one source step
  bool allow_state_preserving_cycle = false; // guard-mode termination clause

  bool contains(const CmdPtr& lc, const KontPtr& lk, const CmdPtr& rc, const KontPtr& rk) const;
};

enum class SimClause { Termination, Preservation, Error };
const char* sim_clause_name(SimClause c);

struct SimViolation {
  size_t pair_index;
  State state;
  SimClause clause;
  std::string trace;
};

struct SimReport {
  bool ok = true;
  std::vector<SimViolation> violations;
  // one line per successful preservation/termination match when tracing
  std::vector<std::string> trace;
};

// Checks every pair against every footprint state: source termination is
// matched by the target reaching the same terminal configuration with the
// state untouched (or, in guard mode, cycling without touching it), each
// source step is matched by at most match_bound target steps ending in a
// related pair at the same state, and a stuck source forces the target to
// get stuck within fuel.
SimReport check_simulation(const RelationTable& rel, const Footprint& fp, uint64_t fuel,
                           bool with_trace = false, uint64_t cap = 1u << 22);

struct SimBounds {
  uint64_t match_bound = 8;
  uint64_t max_pairs = 20000;
  uint64_t fuel = 4000;
};

// Seeds the given pairs and closes them under preservation matching over all
// footprint states (preferring existing pairs, then identity, then the first
// state-matching target configuration).
RelationTable close_relation(std::vector<ProgPair> seeds, const Footprint& fp,
                             const SimBounds& bounds);

// ((if e then c1 else c2);;c3, eps) simulated by the branch-distributed
// program (if e then c1;;c3 else c2;;c3, eps).
RelationTable build_rel_ifseq(const ExprPtr& e, const CmdPtr& c1, const CmdPtr& c2,
                              const CmdPtr& c3, const Footprint& fp, const SimBounds& bounds);

// (for(;;c2)c1, eps) simulated by the fused loop (for(;;skip)(c1;;c2), eps);
// requires continue-free c1 and c2.
RelationTable build_rel_loop_nocontinue(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp,
                                        const SimBounds& bounds);

// Every terminal outcome of c1 is reached identically by c2, and a stuck c1
// forces a stuck c2.
Verdict refines_small(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp, uint64_t fuel,
                      uint64_t cap = 1u << 22);

// For each pair (source ~ target): the target's weakest precondition implies
// the source's, pointwise over states and post environments.
Verdict lemma_wp_sim_check(const RelationTable& rel, const Posts& posts, const Footprint& fp,
                           uint64_t fuel, uint64_t cap = 1u << 22);

// For each pair (source ~ target): P guards the target implies P guards the
// source.
Verdict lemma_guard_sim_check(const RelationTable& rel, const AssertionPtr& p,
                              const Footprint& fp, uint64_t fuel, uint64_t cap = 1u << 22);

} // namespace whilecf
