#include "altm/semantics.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace altm {

namespace {

size_t tape_cells(const Configuration& c) {
    size_t n = 0;
    for (const auto& t : c.tapes) n += t.left.size() + 1 + t.right.size();
    return n;
}

// Frontier entry for phase exploration, ordered shortest-tape-first with
// discovery order breaking ties. Plain breadth-first drowns in machines
// that nondeterministically grow the tape (witness guessers): the frontier
// at depth d holds every guess of length ~d/2, so the short guesses' halt
// configurations would sit behind exponentially many longer ones. Keying
// on tape length lets every short run finish before longer guesses are
// touched. Verdict sets do not depend on the order; it is fixed for
// reproducibility.
struct FrontierItem {
    size_t cells;
    uint32_t seq;
    Configuration config;

    bool operator>(const FrontierItem& other) const {
        return std::tie(cells, seq) > std::tie(other.cells, other.seq);
    }
};

using Frontier =
    std::priority_queue<FrontierItem, std::vector<FrontierItem>, std::greater<>>;

// Shared implementation for the standalone call and the graph builder.
// `work_budget`, when given, is the remaining global expansion budget and
// is decremented per visited configuration.
PhaseResult explore_phase_impl(const Machine& m, const Configuration& root,
                               uint32_t max_phase_steps, uint32_t* work_budget) {
    PhaseResult res;
    res.root = root;
    res.complete = true;
    const StateKind kind = m.kind(root.state);

    std::unordered_set<Configuration, ConfigurationHash> visited;
    std::unordered_set<Configuration, ConfigurationHash> pivot_seen;
    Frontier frontier;
    uint32_t seq = 0;

    auto try_visit = [&](const Configuration& c) -> bool {
        if (visited.size() >= max_phase_steps) return false;
        if (work_budget) {
            if (*work_budget == 0) return false;
            --*work_budget;
        }
        visited.insert(c);
        return true;
    };

    if (!try_visit(root)) {
        res.complete = false;
        return res;
    }
    frontier.push({tape_cells(root), seq++, root});

    while (!frontier.empty()) {
        Configuration c = std::move(const_cast<FrontierItem&>(frontier.top()).config);
        frontier.pop();
        auto succs = successors(m, c);
        if (succs.empty()) {
            res.internal_leaves.push_back(c);
            continue;
        }
        for (auto& [ri, next] : succs) {
            (void)ri;
            if (m.kind(next.state) != kind) {
                if (pivot_seen.insert(next).second) res.pivots.push_back(next);
                continue;
            }
            if (visited.count(next)) continue;
            if (!try_visit(next)) {
                res.complete = false;
                return res;
            }
            frontier.push({tape_cells(next), seq++, std::move(next)});
        }
    }
    return res;
}

}  // namespace

PhaseResult explore_phase(const Machine& m, const Configuration& root, const Budget& b) {
    uint32_t work = b.max_configs;
    return explore_phase_impl(m, canonicalize(m, root), b.max_phase_steps, &work);
}

bool PivotGraph::any_truncated() const {
    for (NodeId n = 0; n < nodes.size(); ++n)
        if (is_truncated(n)) return true;
    return false;
}

PivotGraph build_pivot_graph(const Machine& m, const Configuration& start, const Budget& b) {
    PivotGraph g;
    std::unordered_map<Configuration, NodeId, ConfigurationHash> index;

    auto intern = [&](Configuration c, uint32_t depth) -> NodeId {
        auto it = index.find(c);
        if (it != index.end()) return it->second;
        NodeId id = static_cast<NodeId>(g.nodes.size());
        PivotGraph::Node node;
        node.kind = m.kind(c.state);
        node.depth = depth;
        node.config = c;
        g.nodes.push_back(std::move(node));
        index.emplace(std::move(c), id);
        return id;
    };

    uint32_t work = b.max_configs;
    g.root = intern(canonicalize(m, start), 0);
    std::deque<NodeId> worklist{g.root};
    std::unordered_set<NodeId> queued{g.root};

    while (!worklist.empty()) {
        NodeId id = worklist.front();
        worklist.pop_front();
        if (g.nodes[id].depth >= b.max_pivot_depth && id != g.root) continue;
        if (work == 0) continue;

        PhaseResult phase =
            explore_phase_impl(m, g.nodes[id].config, b.max_phase_steps, &work);
        g.nodes[id].expanded = true;
        g.nodes[id].phase_complete = phase.complete;
        g.nodes[id].internal_leaves = std::move(phase.internal_leaves);
        for (auto& pivot : phase.pivots) {
            NodeId pid = intern(std::move(pivot), g.nodes[id].depth + 1);
            g.nodes[id].pivots.push_back(pid);
            if (queued.insert(pid).second && !g.nodes[pid].expanded)
                worklist.push_back(pid);
        }
    }
    return g;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "Accepted";
        case Verdict::Rejected: return "Rejected";
        default: return "Unknown";
    }
}

namespace {

// Evaluates one closure condition for `n` against the current set
// membership `in_set`. `witness_kind` is the kind whose clause is
// existential ("some pivot"); the other kind requires a complete phase and
// all pivots in the set.
bool clause_fires(const PivotGraph& g, NodeId n, const std::vector<char>& in_set,
                  StateKind witness_kind) {
    const auto& node = g.nodes[n];
    if (!node.expanded) return false;
    if (node.kind == witness_kind) {
        for (NodeId p : node.pivots)
            if (in_set[p]) return true;
        return false;
    }
    if (!node.phase_complete) return false;
    for (NodeId p : node.pivots)
        if (!in_set[p]) return false;
    return true;
}

}  // namespace

SolveResult solve_fixpoint(const PivotGraph& g) {
    const size_t n = g.nodes.size();
    std::vector<char> ac(n, 0), rc(n, 0);

    auto iterate = [&g, n](std::vector<char>& set, StateKind witness_kind) {
        uint32_t rounds = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            ++rounds;
            for (NodeId i = 0; i < n; ++i) {
                if (set[i]) continue;
                if (clause_fires(g, i, set, witness_kind)) {
                    set[i] = 1;
                    changed = true;
                }
            }
        }
        return rounds;
    };

    SolveResult res;
    res.ac_iterations = iterate(ac, StateKind::Existential);
    res.rc_iterations = iterate(rc, StateKind::Universal);
    res.budget_exhausted = g.any_truncated();
    res.verdicts.resize(n, Verdict::Unknown);
    for (NodeId i = 0; i < n; ++i) {
        if (ac[i]) res.verdicts[i] = Verdict::Accepted;
        else if (rc[i]) res.verdicts[i] = Verdict::Rejected;
    }
    res.accepted = std::move(ac);
    res.rejected = std::move(rc);
    return res;
}

SolveResult solve_game(const PivotGraph& g) {
    const size_t n = g.nodes.size();

    std::vector<std::vector<NodeId>> preds(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId p : g.nodes[i].pivots) preds[p].push_back(i);

    // Wins the set for the player whose nodes are of kind `mover`: a mover
    // node wins by moving to any winning pivot; an opponent node is lost for
    // the opponent once all pivots of its complete phase are winning.
    auto attract = [&](StateKind mover, uint32_t& count) {
        std::vector<char> won(n, 0);
        std::vector<uint32_t> remaining(n, 0);
        std::deque<NodeId> queue;

        auto mark = [&](NodeId i) {
            if (!won[i]) {
                won[i] = 1;
                queue.push_back(i);
                ++count;
            }
        };

        for (NodeId i = 0; i < n; ++i) {
            const auto& node = g.nodes[i];
            remaining[i] = static_cast<uint32_t>(node.pivots.size());
            if (node.kind != mover && node.expanded && node.phase_complete &&
                node.pivots.empty())
                mark(i);
        }
        while (!queue.empty()) {
            NodeId i = queue.front();
            queue.pop_front();
            for (NodeId pred : preds[i]) {
                const auto& pn = g.nodes[pred];
                if (won[pred] || !pn.expanded) continue;
                if (pn.kind == mover) {
                    mark(pred);
                } else if (pn.phase_complete) {
                    // `i` may appear several times among pred's pivot edges.
                    uint32_t hits = 0;
                    for (NodeId p : pn.pivots)
                        if (p == i) ++hits;
                    if (remaining[pred] >= hits) remaining[pred] -= hits;
                    if (remaining[pred] == 0) mark(pred);
                }
            }
        }
        return won;
    };

    SolveResult res;
    res.budget_exhausted = g.any_truncated();
    res.accepted = attract(StateKind::Existential, res.ac_iterations);
    res.rejected = attract(StateKind::Universal, res.rc_iterations);
    res.verdicts.resize(n, Verdict::Unknown);
    for (NodeId i = 0; i < n; ++i) {
        if (res.accepted[i]) res.verdicts[i] = Verdict::Accepted;
        else if (res.rejected[i]) res.verdicts[i] = Verdict::Rejected;
    }
    return res;
}

Verdict decide(const Machine& m, std::string_view input, const Budget& b) {
    PivotGraph g = build_pivot_graph(m, initial_config(m, input), b);
    return solve_fixpoint(g).verdicts[g.root];
}

std::vector<ClosureViolation> check_local_closure(const PivotGraph& g, const SolveResult& s) {
    if (s.verdicts.size() != g.nodes.size())
        throw std::invalid_argument("solve result does not match graph");
    std::vector<ClosureViolation> out;
    auto report = [&out](NodeId n, std::string msg) { out.push_back({n, std::move(msg)}); };

    for (NodeId i = 0; i < g.nodes.size(); ++i) {
        if (g.is_truncated(i)) continue;
        const auto& node = g.nodes[i];
        bool some_acc = false, all_acc = true, some_rej = false, all_rej = true;
        for (NodeId p : node.pivots) {
            Verdict v = s.verdicts[p];
            some_acc |= v == Verdict::Accepted;
            all_acc &= v == Verdict::Accepted;
            some_rej |= v == Verdict::Rejected;
            all_rej &= v == Verdict::Rejected;
        }
        bool acc = s.verdicts[i] == Verdict::Accepted;
        bool rej = s.verdicts[i] == Verdict::Rejected;
        if (node.kind == StateKind::Existential) {
            if (acc != some_acc)
                report(i, acc ? "accepted existential node without accepted pivot"
                              : "existential node has an accepted pivot but is not accepted");
            if (rej != all_rej)
                report(i, rej ? "rejected existential node with a non-rejected pivot"
                              : "existential node with all pivots rejected is not rejected");
        } else {
            if (acc != all_acc)
                report(i, acc ? "accepted universal node with a non-accepted pivot"
                              : "universal node with all pivots accepted is not accepted");
            if (rej != some_rej)
                report(i, rej ? "rejected universal node without rejected pivot"
                              : "universal node has a rejected pivot but is not rejected");
        }
    }
    return out;
}

Wf is_alternation_wf(const PivotGraph& g) {
    // Cycle detection over the known pivot edges, iterative DFS with colors.
    enum : char { White, Grey, Black };
    std::vector<char> color(g.nodes.size(), White);
    std::vector<std::pair<NodeId, size_t>> stack;
    bool cycle = false;

    stack.push_back({g.root, 0});
    color[g.root] = Grey;
    while (!stack.empty() && !cycle) {
        auto& [node, next] = stack.back();
        if (next < g.nodes[node].pivots.size()) {
            NodeId child = g.nodes[node].pivots[next++];
            if (color[child] == Grey) {
                cycle = true;
            } else if (color[child] == White) {
                color[child] = Grey;
                stack.push_back({child, 0});
            }
        } else {
            color[node] = Black;
            stack.pop_back();
        }
    }
    if (cycle) return Wf::No;
    if (g.any_truncated()) return Wf::Unknown;
    return Wf::Yes;
}

}  // namespace altm
