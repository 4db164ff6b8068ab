#pragma once

// Forward symbolic execution over annotated programs, emitting a deep
// certificate: assignments introduce an existential over the old value, if
// joins branches disjunctively, loops use the two supplied invariants. The
// returned VCs are the junction entailments (loop entry/invariants/exit,
// mid-asserts, final postconditions); everything else lives as consequence
// obligations inside the tree and is verified by check().

#include "whilecf/annotated.hpp"
#include "whilecf/errors.hpp"
#include "whilecf/extended.hpp"
#include "whilecf/proof.hpp"
#include "whilecf/smallstep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whilecf {

struct AnnotationMissing : std::runtime_error {
  explicit AnnotationMissing(const std::string& what) : std::runtime_error(what) {}
};

struct VC {
  AssertionPtr lhs;
  AssertionPtr rhs;
  std::string origin; // node path plus rule name
};

struct SymResult {
  ProofPtr tree;
  Posts posts;
  std::vector<VC> vcs;
};

SymResult symexec(const AnnPtr& ac, const AssertionPtr& pre, const Footprint& fp);

struct VCOutcome {
  VC vc;
  Verdict verdict;
};

struct DischargeReport {
  bool ok = true;
  std::vector<VCOutcome> results;
};

DischargeReport discharge(const std::vector<VC>& vcs, const Footprint& fp,
                          uint64_t cap = 1u << 22);

struct VerifyOptions {
  bool use_if_seq = false;
  bool use_loop_nocontinue = false;
  uint64_t cap = 1u << 22;
};

// Right-associates sequences, distributes sequenced tails into if branches
// (when enabled), and fuses continue-free loop increments into the body
// (when enabled). The proof found for the preprocessed program is mapped
// back to the original one, so preprocessing never changes the verified
// triple.
AnnPtr preprocess(const AnnPtr& ac, const VerifyOptions& opts);

// Rebuilds a proof of `target` from a proof of a preprocessed variant by
// applying the inverse transformers (seq rotations, if_seq,
// loop_nocontinue) at the mismatching positions.
ProofPtr backmap_proof(const ProofPtr& t, const CmdPtr& target, const Footprint& fp);

struct VerifyResult {
  bool ok = false;
  std::optional<Footprint> fp;
  std::optional<Certificate> certificate;
  Triple concluded;
  DischargeReport vcs;
  CheckReport check_report;
  std::string error; // parse/annotation failures
};

VerifyResult verify_file(const std::string& program_text, const std::string& spec_text,
                         const VerifyOptions& opts = {});

} // namespace whilecf
