// Alternation-level classification and compilers from quantifier-prefix
// formula specifications to machines.
//
// A formula is a prefix of alternating quantifier blocks over string
// variables followed by a decidable matrix, given as a deterministic
// acceptor machine. Compiled machines realize an existential block as a
// nondeterministic witness writer and a universal block as a lexicographic
// enumerator that forks between advancing the tuple and descending into
// the rest of the formula. Each block contributes at most one alternation
// pivot per computation branch.
//
// Tape layout: the input stays at the left of the tape, and each block
// appends `#`-separated variable segments after it. A matrix of arity r
// is started in its own start state with the cursor on the leading blank
// of a tape holding `input # v1 # v2 ... # vr` and must run to one of its
// two designated dead-end states.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altm/machine.hpp"
#include "altm/semantics.hpp"

namespace altm::hierarchy {

/// Deterministic single-tape decision module with two designated dead-end
/// outcomes: a universal accept state and an existential reject state.
struct MatrixAcceptor {
    Machine machine;
    StateIdx accept_halt;
    StateIdx reject_halt;
    unsigned arity;  // number of variable segments expected after the input
};

/// Structural checks: single tape, designated states are dead ends of the
/// right kinds, at most one rule per (state, read vector).
std::vector<std::string> validate_matrix(const MatrixAcceptor& matrix);

enum class Quantifier : uint8_t { Exists, Forall };

struct QuantifierBlock {
    Quantifier kind;
    unsigned var_count;

    bool operator==(const QuantifierBlock&) const = default;
};

struct FormulaSpec {
    std::vector<QuantifierBlock> blocks;  // adjacent blocks alternate kinds
    MatrixAcceptor matrix;                // arity == sum of var_count
};

std::vector<std::string> validate_formula(const FormulaSpec& spec);

/// Existential witness search: guesses r `#`-separated strings after the
/// input and runs the matrix on the result. Accepts an input iff some
/// witness tuple drives the matrix to its accept halt. Matrix-internal
/// states run existentially here, so an accepting run's single pivot is
/// the accept-halt configuration and a failing run stays pivot-free.
Machine compile_sigma1(const MatrixAcceptor& matrix, unsigned r);

/// Universal refutation search: enumerates witness tuples in length-first
/// lexicographic order, forking universally between advancing to the next
/// tuple and running the matrix on the current one. Rejects an input as
/// soon as an enumerated tuple drives the matrix to its reject halt; at
/// finite budgets acceptance is out of reach because the enumeration never
/// ends, so non-refuted inputs stay Unknown.
Machine compile_pi1(const MatrixAcceptor& matrix, unsigned r);

/// General prefix compiler; compile_sigma1/compile_pi1 are the one-block
/// instances. Matrix-internal states take the kind of the innermost block.
Machine compile_prefix(const FormulaSpec& spec);

/// The unbounded-alternation acceptor: run the matrix on an empty z-block;
/// on failure universally choose a string z0, existentially guess a string
/// x, re-run the matrix, and continue forever, growing the z-block by one
/// segment per stage.
///
/// The matrix must have arity 2 in the following on-tape encoding: after
/// the input, even-numbered segments (second, fourth, ...) hold the
/// z-block values in choice order and the final segment holds the current
/// x; remaining segments are stale scratch. Stage zero presents a single
/// empty segment (no z values, x empty).
Machine compile_pi11(const MatrixAcceptor& matrix);

struct LevelReport {
    StateKind start_kind;
    /// Largest number of pivots on any explored branch; empty when pivots
    /// recur along a cycle (the count is unbounded).
    std::optional<uint32_t> max_pivots_per_branch;
    bool exceeded = false;  // pivot cycle found or budget hit

    enum class Level : uint8_t { Sigma, Pi, Unknown };
    Level claimed = Level::Unknown;  // asserted only for complete exploration
    uint32_t claimed_k = 0;
};

/// Explores the bounded pivot graph for `input`, reporting the maximum
/// pivot count per branch and, when exploration completed with no pivot
/// cycle, the resulting level claim.
LevelReport classify_level(const Machine& m, std::string_view input, const Budget& b);

}  // namespace altm::hierarchy
