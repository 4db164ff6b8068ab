#pragma once

// Extended proof rules realized as executable proof-tree transformers:
// inversions by structural recursion, structural rules (nocontinue, the
// finite existential rule), and the transformation rules assembled from
// inversions (if-seq, loop-nocontinue, loop-unroll1, seq-assoc).

#include "whilecf/errors.hpp"
#include "whilecf/proof.hpp"

#include <utility>
#include <vector>

namespace whilecf {

// Rewrites a tree so that a consequence node appears at most once directly
// above each syntax-directed node; stacked consequences are collapsed into
// one (their entailments compose).
ProofPtr normalize_conseq(const ProofPtr& t);

struct SplitResult {
  AssertionPtr mid;
  ProofPtr left;
  ProofPtr right;
};

// From a proof of {P} c1 ;; c2 {Q,[R]} recover proofs of the two premises.
SplitResult inv_seq(const ProofPtr& t);

struct LoopSplit {
  AssertionPtr i1; // invariant at the body entry
  AssertionPtr i2; // invariant at the increment entry
  ProofPtr body;   // {i1} c1 {i2, [Q, i2]}
  ProofPtr incr;   // {i2} c2 {i1, [Q, false]}
  AssertionPtr entry_from; // conclusion precondition P
  AssertionPtr entry_to;   // i1 (P |- i1 holds whenever the input checks)
};

LoopSplit inv_loop(const ProofPtr& t);
std::pair<ProofPtr, ProofPtr> inv_if(const ProofPtr& t);

// {P1} c {Q1,[R1]} and {P2} c {Q2,[R2]} give {P1 \/ P2} c {Q1 \/ Q2, ...},
// by simultaneous recursion after consequence normalization.
ProofPtr merge_disj(const ProofPtr& t1, const ProofPtr& t2);

// Finite existential introduction: every family member proves {P_d} c
// {Q,[R]} for its value d with shared c and posts; the result concludes
// {exists_pre} c {Q,[R]} where exists_pre must entail the disjunction of the
// members' preconditions (checked when the output tree is checked). When no
// exists_pre is supplied, one of shape `exists x. \/_d (x = d /\ P_d)` is
// synthesized.
ProofPtr ex_finite(const std::vector<std::pair<Value, ProofPtr>>& family, const Footprint& fp,
                   AssertionPtr exists_pre = nullptr);

// Replace the continue postcondition by rc (valid because no continue in the
// command can escape): rewrites continue-posts to false outside loop scopes,
// then one consequence step to rc.
ProofPtr nocontinue(const ProofPtr& t, const AssertionPtr& rc);

// From {P} if e then c1;;c3 else c2;;c3 {Q,[R]} build
// {P} (if e then c1 else c2) ;; c3 {Q,[R]}.
ProofPtr if_seq(const ProofPtr& t);

// From {P} for(;;skip)(c1;;c2) {Q,[R]} (c1, c2 continue-free) build
// {P} for(;;c2)c1 {Q,[R]}.
ProofPtr loop_nocontinue(const ProofPtr& t);

// Peel the first iteration: t1 proves it for the body, t2 for the increment,
// t3 proves the loop from there. Side conditions: the premises' break post
// entails the loop post, and the increment is continue-free.
ProofPtr loop_unroll1(const ProofPtr& t1, const ProofPtr& t2, const ProofPtr& t3,
                      const Footprint& fp);

// {P} (c1;;c2);;c3 {Q,[R]}  <->  {P} c1;;(c2;;c3) {Q,[R]}
ProofPtr seq_assoc(const ProofPtr& t);
ProofPtr seq_unassoc(const ProofPtr& t);

// Weaken only the precondition; the entailment is checked eagerly.
ProofPtr conseq_pre(const ProofPtr& t, const AssertionPtr& pre, const Footprint& fp);

} // namespace whilecf
