#pragma once

// Fuel-bounded big-step evaluator, triple validity over it, and big-step
// refinement checking.

#include "whilecf/assertions.hpp"
#include "whilecf/lang.hpp"

#include <cstdint>

namespace whilecf {

enum class OutcomeKind { Terminated, Error, OutOfFuel };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Error;
  ExitKind ek = ExitKind::Normal;
  State state;

  static Outcome terminated(ExitKind ek, State s) {
    return Outcome{OutcomeKind::Terminated, ek, std::move(s)};
  }
  static Outcome error() { return Outcome{OutcomeKind::Error, ExitKind::Normal, {}}; }
  static Outcome out_of_fuel() { return Outcome{OutcomeKind::OutOfFuel, ExitKind::Normal, {}}; }

  bool operator==(const Outcome& o) const {
    if (kind != o.kind) return false;
    if (kind != OutcomeKind::Terminated) return true;
    return ek == o.ek && state == o.state;
  }
};

std::string outcome_to_string(const Outcome& o, const Footprint& fp);

// Big-step evaluation with fuel measuring derivation depth. Error is an
// ordinary value here, not a fault. A break exiting the increment step ends
// the loop normally; a continue exiting the increment step is an error.
Outcome eval_big(const CmdPtr& c, const State& sigma, const Footprint& fp, uint64_t fuel);

// The four assertions of a judgement about c. Free logic variables are
// shared across all components and universally closed by the oracles.
struct Triple {
  AssertionPtr pre;
  CmdPtr cmd;
  AssertionPtr post;
  AssertionPtr post_brk;
  AssertionPtr post_con;
};

bool triple_equal(const Triple& a, const Triple& b);
std::string triple_to_string(const Triple& t);

// Validity under big-step semantics: from every pre-state no error occurs
// and each terminated run lands in the exit-kind-matching postcondition.
// Fuel-exhausted initial states make the verdict Inconclusive (never a
// counterexample: partial correctness is not falsified by divergence).
Verdict valid_big(const Triple& t, const Footprint& fp, uint64_t fuel,
                  uint64_t cap = 1u << 22);

// Definition of refinement: every terminated outcome of c1 is an outcome of
// c2 and an error of c1 implies an error of c2.
Verdict refines_big(const CmdPtr& c1, const CmdPtr& c2, const Footprint& fp, uint64_t fuel,
                    uint64_t cap = 1u << 22);

} // namespace whilecf
