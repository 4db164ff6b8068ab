#pragma once

// Continuation-stack small-step machine and the two small-step validity
// oracles: step-indexed weakest precondition and guard (continuation)
// validity over a generated continuation family.

#include "whilecf/assertions.hpp"
#include "whilecf/bigstep.hpp"
#include "whilecf/lang.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace whilecf {

enum class FrameKind { KSeq, KLoop1, KLoop2 };

struct Frame {
  FrameKind kind;
  CmdPtr c1; // KSeq command / loop body
  CmdPtr c2; // loop increment
};

Frame frame_seq(CmdPtr c);
Frame frame_loop1(CmdPtr body, CmdPtr incr);
Frame frame_loop2(CmdPtr body, CmdPtr incr);
bool frame_equal(const Frame& a, const Frame& b);

// Immutable continuation stack, top first. Sharing tails keeps stepping and
// the simulation closures cheap.
struct Kont;
using KontPtr = std::shared_ptr<const Kont>;

struct Kont {
  Frame top;
  KontPtr rest;
};

KontPtr kont_empty();
KontPtr kont_push(Frame f, KontPtr rest);
size_t kont_depth(const KontPtr& k);
bool kont_equal(const KontPtr& a, const KontPtr& b);
KontPtr kont_from_frames(const std::vector<Frame>& frames); // frames[0] on top
std::string kont_to_string(const KontPtr& k);

struct Config {
  CmdPtr cmd;
  KontPtr kont;
  State state;
};

std::string config_to_string(const Config& c, const Footprint& fp);

enum class StepKind { Next, Terminal, Stuck };

struct StepResult {
  StepKind kind;
  Config next;    // Next
  ExitKind ek;    // Terminal
};

// One machine step. Terminal exactly when the stack is empty and the focused
// command is skip/break/continue; Stuck exactly when no rule applies (an
// expression error or continue meeting a KLoop2 frame). Deterministic.
StepResult step(const Config& cfg, const Footprint& fp);

Outcome run_small(Config cfg, const Footprint& fp, uint64_t fuel);
// Same, reporting the number of transitions taken.
Outcome run_small_counted(Config cfg, const Footprint& fp, uint64_t fuel, uint64_t* steps);

struct Posts {
  AssertionPtr normal;
  AssertionPtr brk;
  AssertionPtr con;

  const AssertionPtr& for_exit(ExitKind ek) const {
    switch (ek) {
      case ExitKind::Normal: return normal;
      case ExitKind::Brk: return brk;
      case ExitKind::Con: return con;
    }
    return normal;
  }
};

// Step-indexed weakest precondition. n = 0 is vacuously true; at n > 0 the
// configuration must either be terminal with the matching postcondition
// satisfied or reducible with the successor safe at n - 1.
bool wp_indexed(const State& sigma, const Env& env, const CmdPtr& c, const KontPtr& k,
                const Posts& posts, const Footprint& fp, uint64_t n);

Verdict valid_wp(const Triple& t, const Footprint& fp, uint64_t fuel, uint64_t cap = 1u << 22);

// Safety alone: terminal (any exit) or reducible with a safe successor.
bool safe_indexed(const CmdPtr& c, const KontPtr& k, const State& sigma, const Footprint& fp,
                  uint64_t n);

// P guards (c, k): every P-state runs (c, k) without getting stuck.
Verdict guards(const AssertionPtr& p, const CmdPtr& c, const KontPtr& k, const Footprint& fp,
               uint64_t fuel, uint64_t cap = 1u << 22);

// Continuation validity over a finite family standing in for "for all k".
// A Holds verdict is therefore bounded (sound for refutation only).
Verdict valid_cont(const Triple& t, const Footprint& fp, uint64_t fuel,
                   const std::vector<KontPtr>& family, uint64_t cap = 1u << 22);

// All stacks of at most `depth` frames whose embedded commands each have at
// most `size` command nodes over the footprint variables, plus the empty
// stack. Deterministic order.
std::vector<KontPtr> enumerate_continuations(const Footprint& fp, size_t depth, size_t size,
                                             uint64_t cap = 200000);
// Commands used by the family enumeration, exposed for the closed-form
// cardinality check.
std::vector<CmdPtr> enumerate_small_commands(const Footprint& fp, size_t size);

// No top-level continue can escape (c, k): continues issued above a loop
// frame are absorbed by it, so only the region below the bottom-most loop
// frame (or the whole stack when there is none) matters.
bool config_has_no_continue(const CmdPtr& c, const KontPtr& k);

} // namespace whilecf
