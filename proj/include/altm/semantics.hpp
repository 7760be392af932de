// Global acceptance semantics: phases, alternation pivots, and the
// accepted/rejected configuration sets computed as least fixpoints over a
// budget-bounded pivot graph.
//
// A phase is the maximal set of same-kind configurations reachable from a
// root without leaving that kind; the opposite-kind configurations first
// reached are its alternation pivots. Acceptance is global: an existential
// root is accepted when some pivot is accepted, a universal root when its
// phase is fully known and all pivots are accepted (vacuously so for an
// empty pivot set). Rejection is dual. Nodes proved by neither fixpoint
// are Unknown, which covers both genuine divergence and budget truncation.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "altm/machine.hpp"

namespace altm {

/// Exploration caps. The underlying computation trees are infinite in
/// general; budgets make every call terminate. Verdicts computed under any
/// budget are sound: growing a budget can turn Unknown into a verdict but
/// never flips Accepted and Rejected.
struct Budget {
    uint32_t max_configs;      // total configuration expansions across all phases
    uint32_t max_phase_steps;  // distinct configurations within one phase
    uint32_t max_pivot_depth;  // pivot-graph depth expanded from the root

    static Budget uniform(uint32_t n) { return {n, n, n}; }
};

struct PhaseResult {
    Configuration root;
    std::vector<Configuration> pivots;  // first-reached order, deduplicated
    bool complete = false;              // whole phase enumerated (cycles detected)
    std::vector<Configuration> internal_leaves;  // same-kind dead ends in the phase
};

/// Explores the same-kind phase spawned by `root`, collecting its
/// alternation pivots. Revisited configurations are detected, so a phase
/// that loops through finitely many configurations still comes back
/// complete. complete == false only when a cap was hit.
PhaseResult explore_phase(const Machine& m, const Configuration& root, const Budget& b);

using NodeId = uint32_t;

/// Bipartite graph of phase roots (the start configuration plus every
/// discovered pivot) connected by pivot edges.
struct PivotGraph {
    struct Node {
        Configuration config;
        StateKind kind;
        bool expanded = false;        // phase exploration ran for this node
        bool phase_complete = false;  // meaningful only when expanded
        uint32_t depth = 0;           // pivot edges from the root
        std::vector<NodeId> pivots;   // discovery order
        std::vector<Configuration> internal_leaves;
    };

    std::vector<Node> nodes;  // index = NodeId, discovery order; nodes[0] is the root
    NodeId root = 0;

    /// A node is truncated when its phase was cut short or never explored.
    bool is_truncated(NodeId n) const {
        return !nodes[n].expanded || !nodes[n].phase_complete;
    }
    bool any_truncated() const;
};

PivotGraph build_pivot_graph(const Machine& m, const Configuration& start, const Budget& b);

enum class Verdict : uint8_t { Accepted, Rejected, Unknown };

const char* to_string(Verdict v);

struct SolveResult {
    std::vector<Verdict> verdicts;  // index = NodeId
    std::vector<char> accepted;     // the accepted-set fixpoint, per node
    std::vector<char> rejected;     // the rejected-set fixpoint, per node
    uint32_t ac_iterations = 0;     // rounds (fixpoint) / insertions (game)
    uint32_t rc_iterations = 0;
    bool budget_exhausted = false;  // some node of the graph is truncated
};

/// Round-based Kleene iteration of the closure conditions.
///
/// Accepted: existential node with some accepted pivot; universal node
/// with a complete phase whose pivots are all accepted. Rejected is dual.
/// An existence clause may fire on an incomplete phase (a witness is a
/// witness); a for-all clause requires completeness. Unexpanded nodes
/// enter neither set.
SolveResult solve_fixpoint(const PivotGraph& g);

/// Independent oracle for solve_fixpoint: backward induction over the same
/// graph with predecessor counters, in the style of attractor computation
/// on two-player game graphs. The existential player moves to a pivot of
/// their choice and wins at complete universal nodes once every pivot is
/// winning (immediately if there are none); the universal player dually.
/// Produces the identical verdict map by construction of the game.
SolveResult solve_game(const PivotGraph& g);

/// Verdict of the initial configuration for `input`.
Verdict decide(const Machine& m, std::string_view input, const Budget& b);

struct ClosureViolation {
    NodeId node;
    std::string detail;
};

/// Checks the solved graph against the truth-value closure properties at
/// pivot granularity: an existential node is accepted iff some pivot is,
/// and rejected iff its phase is complete and all pivots are rejected;
/// universal nodes dually. Truncated nodes are skipped. Any violation
/// indicates a solver bug.
std::vector<ClosureViolation> check_local_closure(const PivotGraph& g, const SolveResult& s);

enum class Wf : uint8_t { Yes, No, Unknown };

/// Whether every computation branch has finitely many alternation pivots,
/// as far as the explored graph can tell: Yes when the graph is fully
/// explored and its pivot edges are acyclic, No when a pivot cycle is
/// reachable, Unknown otherwise.
Wf is_alternation_wf(const PivotGraph& g);

}  // namespace altm
