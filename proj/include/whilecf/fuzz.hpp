#pragma once

// Seeded differential and property suites: big/small agreement, local
// soundness of the primary rules, soundness and conclusion contracts of the
// proof-tree transformers, the two refinement schemas, oracle agreement,
// symbolic-executor certificates, big-step theorems, and simulation tables.
// Each suite is deterministic in its seed and reports minimized reproducers.

#include "whilecf/gen.hpp"
#include "whilecf/lang.hpp"

#include <string>
#include <vector>

namespace whilecf::fuzz {

struct SuiteConfig {
  Footprint fp;
  uint64_t seed = 1;
  int count = 100;
  size_t size = 12;     // command node budget for generated programs
  uint64_t fuel = 400;  // big-step depth / small-step step budget
  uint64_t cap = 1u << 22;

  explicit SuiteConfig(Footprint footprint) : fp(std::move(footprint)) {}
};

struct SuiteReport {
  std::string name;
  int performed = 0;
  int skipped = 0; // generated instances that did not meet the preconditions
  int violations = 0;
  std::vector<std::string> reproducers;

  bool ok() const { return violations == 0; }
};

std::string report_to_string(const SuiteReport& r);

// Big-step and small-step outcomes agree on every (program, state) pair
// where both are conclusive.
SuiteReport semantics_suite(const SuiteConfig& cfg);

// For each primary rule, randomized instances with oracle-valid premises
// yield oracle-valid conclusions under both the big-step and the
// weakest-precondition oracle.
SuiteReport rules_suite(const SuiteConfig& cfg);

// Every transformer, applied to random checked premise proofs, returns a
// checking tree with the expected conclusion, and that conclusion is valid.
SuiteReport transformers_suite(const SuiteConfig& cfg);

// The two refinement schemas hold under both refinement checkers.
SuiteReport refinements_suite(const SuiteConfig& cfg);

// valid_big and valid_wp verdicts agree on every conclusive pair.
SuiteReport oracle_agreement_suite(const SuiteConfig& cfg);

// Certificates emitted by the symbolic executor re-check (also after a
// serialization round trip) and are never refuted by the big-step oracle.
SuiteReport checker_suite(const SuiteConfig& cfg);

// The big-step if-seq and nocontinue theorems as oracle implications.
SuiteReport bigstep_theorems_suite(const SuiteConfig& cfg);

// Relation builders pass the simulation check, the wp/guard lifting lemmas
// hold over them, and a one-pair table mutation is detected.
SuiteReport simulation_suite(const SuiteConfig& cfg);

} // namespace whilecf::fuzz
