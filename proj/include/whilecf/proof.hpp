#pragma once

// Deeply embedded proof trees over the eight primary rules, the conclusion
// function, the certificate checker, and the certificate text format.

#include "whilecf/assertions.hpp"
#include "whilecf/bigstep.hpp"
#include "whilecf/lang.hpp"

#include <memory>
#include <string>
#include <vector>

namespace whilecf {

struct ProofTree;
using ProofPtr = std::shared_ptr<const ProofTree>;

enum class RuleKind { RSkip, RBreak, RContinue, RAssign, RSeq, RIf, RLoop, RConseq };

// One node per primary rule; each node stores exactly what is needed to
// rebuild its conclusion, so trees serialize and re-check byte for byte.
struct ProofTree {
  RuleKind kind;
  AssertionPtr p1; // RSkip/RBreak/RContinue pre; RAssign post; RSeq mid;
                   // RLoop body invariant; RConseq pre
  AssertionPtr p2; // RLoop increment invariant; RConseq post
  AssertionPtr p3; // RConseq break post
  AssertionPtr p4; // RConseq continue post
  std::string var; // RAssign target
  ExprPtr expr;    // RAssign rhs; RIf condition
  ProofPtr a, b;   // children
};

ProofPtr r_skip(AssertionPtr p);
ProofPtr r_break(AssertionPtr p);
ProofPtr r_continue(AssertionPtr p);
ProofPtr r_assign(std::string var, ExprPtr e, AssertionPtr post);
ProofPtr r_seq(AssertionPtr mid, ProofPtr left, ProofPtr right);
ProofPtr r_if(ExprPtr cond, ProofPtr then_tree, ProofPtr else_tree);
ProofPtr r_loop(AssertionPtr body_inv, AssertionPtr incr_inv, ProofPtr body, ProofPtr incr);
ProofPtr r_conseq(ProofPtr child, AssertionPtr pre, AssertionPtr post, AssertionPtr post_brk,
                  AssertionPtr post_con);

struct MalformedNode : std::runtime_error {
  explicit MalformedNode(const std::string& what) : std::runtime_error(what) {}
};

// The unique triple a derivation concludes. Throws MalformedNode when the
// children's conclusions do not compose.
Triple conclusion(const ProofPtr& t);

struct CheckFailure {
  std::string path;       // node path like "root.left.child"
  std::string obligation; // which obligation failed
  Verdict verdict;        // counterexample when the entailment oracle refuted
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckFailure> failures;
};

// Validates a derivation: node composition, the four entailments of every
// consequence node, and expression-definedness obligations for assignment
// and if nodes whose expressions contain a partial operator.
CheckReport check(const ProofPtr& t, const Footprint& fp, uint64_t cap = 1u << 22);

bool proof_equal(const ProofPtr& a, const ProofPtr& b);
size_t proof_node_count(const ProofPtr& t);

// Certificate text: one parenthesized form per node, assertions and
// expressions in the surface syntax. Round-trips bit-exactly.
std::string print_proof(const ProofPtr& t);
ProofPtr parse_proof(const std::string& text, const Footprint& fp);

struct Certificate {
  ProofPtr tree;
  Footprint fp;
  std::string source_hash;
};

std::string print_certificate(const Certificate& c);
Certificate parse_certificate(const std::string& text);
std::string source_hash_of(const std::string& program_text);

} // namespace whilecf
