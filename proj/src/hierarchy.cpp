#include "altm/hierarchy.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace altm::hierarchy {

namespace {

constexpr const char* kHash = "#";


}  // namespace

std::vector<std::string> validate_matrix(const MatrixAcceptor& matrix) {
    std::vector<std::string> problems;
    const Machine& m = matrix.machine;
    if (m.tape_count() != 1) problems.push_back("matrix must be single-tape");
    if (matrix.accept_halt >= m.state_count() || matrix.reject_halt >= m.state_count()) {
        problems.push_back("designated halt state out of range");
        return problems;
    }
    if (matrix.accept_halt == matrix.reject_halt)
        problems.push_back("accept and reject halts must differ");
    if (m.kind(matrix.accept_halt) != StateKind::Universal)
        problems.push_back("accept halt must be a universal state");
    if (!m.rules_from(matrix.accept_halt).empty())
        problems.push_back("accept halt must be a dead end");
    if (m.kind(matrix.reject_halt) != StateKind::Existential)
        problems.push_back("reject halt must be an existential state");
    if (!m.rules_from(matrix.reject_halt).empty())
        problems.push_back("reject halt must be a dead end");

    std::unordered_set<std::string> seen;
    for (const auto& r : m.rules()) {
        std::string key = std::to_string(r.from) + ":";
        for (Symbol s : r.reads) key += static_cast<char>(s);
        if (!seen.insert(key).second) {
            problems.push_back("matrix is nondeterministic in state '" +
                               m.state_name(r.from) + "' on '" +
                               m.spelling(r.reads[0]) + "'");
        }
    }
    return problems;
}

std::vector<std::string> validate_formula(const FormulaSpec& spec) {
    std::vector<std::string> problems = validate_matrix(spec.matrix);
    if (spec.blocks.empty()) problems.push_back("formula needs at least one block");
    unsigned total = 0;
    for (size_t i = 0; i < spec.blocks.size(); ++i) {
        if (spec.blocks[i].var_count == 0)
            problems.push_back("block " + std::to_string(i + 1) + " has no variables");
        if (i > 0 && spec.blocks[i].kind == spec.blocks[i - 1].kind)
            problems.push_back("adjacent blocks " + std::to_string(i) + "/" +
                               std::to_string(i + 1) + " do not alternate");
        total += spec.blocks[i].var_count;
    }
    if (!spec.blocks.empty() && total != spec.matrix.arity)
        problems.push_back("matrix arity " + std::to_string(spec.matrix.arity) +
                           " does not match " + std::to_string(total) +
                           " declared variables");
    auto hash = spec.matrix.machine.find_symbol(kHash);
    if (hash && spec.matrix.machine.in_sigma(*hash))
        problems.push_back("'#' is reserved as the segment separator and cannot be "
                           "an input symbol");
    return problems;
}

namespace {

// Accumulates states and single-tape rules for a compiled machine,
// uniquifying machinery names against everything declared so far.
struct DocBuilder {
    MachineDoc doc;
    std::unordered_set<std::string> names;
    std::vector<std::string> sigma;  // input spellings, declared order
    std::vector<std::string> walk;   // sigma plus '#': the clean content symbols
    std::string blank;

    std::string unique(std::string base) {
        if (names.insert(base).second) return base;
        for (int i = 2;; ++i) {
            std::string c = base + "_" + std::to_string(i);
            if (names.insert(c).second) return c;
        }
    }

    void state(const std::string& name, StateKind kind) {
        doc.states.push_back({name, kind});
    }

    void rule(const std::string& from, const std::string& read, char op,
              const std::string& write, const std::string& to) {
        doc.rules.push_back({from, {read}, {{op, op == '=' ? write : std::string{}}}, to});
    }
    void move_right(const std::string& from, const std::string& read, const std::string& to) {
        rule(from, read, '+', {}, to);
    }
    void move_left(const std::string& from, const std::string& read, const std::string& to) {
        rule(from, read, '-', {}, to);
    }
    void write(const std::string& from, const std::string& read, const std::string& sym,
               const std::string& to) {
        rule(from, read, '=', sym, to);
    }
};

DocBuilder begin_compiled(const MatrixAcceptor& matrix, const std::string& name_suffix) {
    const Machine& mx = matrix.machine;
    DocBuilder b;
    b.doc.name = mx.name() + "." + name_suffix;
    b.doc.tapes = 1;
    for (size_t s = 0; s < mx.gamma().size(); ++s) {
        b.doc.gamma.push_back(mx.spelling(static_cast<Symbol>(s)));
        if (mx.in_sigma(static_cast<Symbol>(s)))
            b.doc.input.push_back(mx.spelling(static_cast<Symbol>(s)));
    }
    if (std::find(b.doc.gamma.begin(), b.doc.gamma.end(), kHash) == b.doc.gamma.end())
        b.doc.gamma.push_back(kHash);
    b.doc.blank = mx.spelling(mx.blank());
    b.blank = b.doc.blank;
    b.sigma = b.doc.input;
    b.walk = b.sigma;
    b.walk.push_back(kHash);
    for (StateIdx q = 0; q < mx.state_count(); ++q) b.names.insert(mx.state_name(q));
    return b;
}

// Declares the matrix states (with machinery-imposed kinds) and copies its
// rules verbatim.
void add_matrix(DocBuilder& b, const MatrixAcceptor& matrix, StateKind internal_kind) {
    const Machine& mx = matrix.machine;
    for (StateIdx q = 0; q < mx.state_count(); ++q) {
        StateKind k = internal_kind;
        if (q == matrix.accept_halt) k = StateKind::Universal;
        if (q == matrix.reject_halt) k = StateKind::Existential;
        b.state(mx.state_name(q), k);
    }
    for (const auto& r : mx.rules()) {
        MachineDoc::RuleSpec rs;
        rs.from = mx.state_name(r.from);
        rs.to = mx.state_name(r.to);
        rs.reads = {mx.spelling(r.reads[0])};
        switch (r.acts[0].kind) {
            case Action::Kind::MoveRight: rs.acts = {{'+', {}}}; break;
            case Action::Kind::MoveLeft: rs.acts = {{'-', {}}}; break;
            case Action::Kind::Write: rs.acts = {{'=', mx.spelling(r.acts[0].symbol)}}; break;
        }
        b.doc.rules.push_back(std::move(rs));
    }
}

// Existential block: append a '#' boundary, nondeterministically write
// var_count '#'-separated strings over sigma, rewind, hand over. One
// existential phase; entered at the leading blank, leaves at it.
std::string build_exists_block(DocBuilder& b, unsigned vars, unsigned index,
                               const std::string& next_entry) {
    const std::string p = "b" + std::to_string(index) + ".";
    const std::string seek = b.unique(p + "seek");
    const std::string scan = b.unique(p + "scan");
    const std::string stepb = b.unique(p + "step");
    const std::string rew = b.unique(p + "rew");
    std::vector<std::string> guess(vars), put(vars), sep(vars > 1 ? vars - 1 : 0);
    for (unsigned j = 0; j < vars; ++j) {
        guess[j] = b.unique(p + "g" + std::to_string(j + 1));
        put[j] = b.unique(p + "w" + std::to_string(j + 1));
        if (j + 1 < vars) sep[j] = b.unique(p + "sep" + std::to_string(j + 1));
    }

    const StateKind K = StateKind::Existential;
    b.state(seek, K);
    b.state(scan, K);
    b.state(stepb, K);
    for (unsigned j = 0; j < vars; ++j) {
        b.state(guess[j], K);
        b.state(put[j], K);
        if (j + 1 < vars) b.state(sep[j], K);
    }
    b.state(rew, K);

    b.move_right(seek, b.blank, scan);
    for (const auto& c : b.walk) b.move_right(scan, c, scan);
    b.write(scan, b.blank, kHash, stepb);
    b.move_right(stepb, kHash, guess[0]);
    for (unsigned j = 0; j < vars; ++j) {
        for (const auto& a : b.sigma) b.write(guess[j], b.blank, a, put[j]);
        for (const auto& a : b.sigma) b.move_right(put[j], a, guess[j]);
        if (j + 1 < vars) {
            b.write(guess[j], b.blank, kHash, sep[j]);
            b.move_right(sep[j], kHash, guess[j + 1]);
        } else {
            b.move_left(guess[j], b.blank, rew);
        }
    }
    for (const auto& c : b.walk) b.move_left(rew, c, rew);
    b.write(rew, b.blank, b.blank, next_entry);
    return seek;
}

// Universal block: write the all-empty tuple, then loop on a two-way
// universal fork between advancing the tuple (length-first lexicographic
// successor with exactly var_count-1 separators) and descending into the
// rest of the formula. One universal phase; the descend target is the only
// kind of exit.
std::string build_forall_block(DocBuilder& b, unsigned vars, unsigned index,
                               const std::string& next_entry) {
    const unsigned m = vars - 1;  // separators inside this block's region
    const std::string p = "b" + std::to_string(index) + ".";
    const std::string seek = b.unique(p + "seek");
    const std::string scan = b.unique(p + "scan");
    const std::string back = b.unique(p + "back");
    const std::string fork = b.unique(p + "fork");
    const std::string adv = b.unique(p + "adv");
    const std::string advscan = b.unique(p + "advscan");
    const std::string arw = b.unique(p + "arw");
    const std::string xdone = b.unique(p + "xdone");
    std::vector<std::string> ini_m(m), ini_w(m);
    for (unsigned k = 0; k < m; ++k) {
        ini_m[k] = b.unique(p + "im" + std::to_string(k + 1));
        ini_w[k] = b.unique(p + "iw" + std::to_string(k + 1));
    }
    // od[h][f]: backward scan having passed h separators, f records whether
    // a sigma symbol lies in the passed suffix (needed to re-place a bumped
    // separator).
    std::vector<std::array<std::string, 2>> od(m + 1);
    for (unsigned h = 0; h <= m; ++h)
        for (int f = 0; f < 2; ++f)
            od[h][f] = b.unique(p + "od" + std::to_string(h) + (f ? "s" : "n"));
    std::vector<std::string> rfm(m + 1), rfw(m + 1), xm(m + 1), xw(m + 1);
    for (unsigned j = 0; j <= m; ++j) {
        rfm[j] = b.unique(p + "rm" + std::to_string(j));
        rfw[j] = b.unique(p + "rw" + std::to_string(j));
    }
    for (unsigned j = 0; j <= m; ++j) {
        xm[j] = b.unique(p + "xm" + std::to_string(j));
        xw[j] = b.unique(p + "xw" + std::to_string(j));
    }

    const StateKind K = StateKind::Universal;
    b.state(seek, K);
    b.state(scan, K);
    for (unsigned k = 0; k < m; ++k) {
        b.state(ini_m[k], K);
        b.state(ini_w[k], K);
    }
    b.state(back, K);
    b.state(fork, K);
    b.state(adv, K);
    b.state(advscan, K);
    for (unsigned h = 0; h <= m; ++h)
        for (int f = 0; f < 2; ++f) b.state(od[h][f], K);
    for (unsigned j = 0; j <= m; ++j) {
        b.state(rfm[j], K);
        b.state(rfw[j], K);
    }
    for (unsigned j = 0; j <= m; ++j) {
        b.state(xm[j], K);
        b.state(xw[j], K);
    }
    b.state(xdone, K);

    // Initial tuple: boundary '#' plus m more separators (all slots empty).
    b.move_right(seek, b.blank, scan);
    for (const auto& c : b.walk) b.move_right(scan, c, scan);
    b.write(scan, b.blank, kHash, m > 0 ? ini_m[0] : back);
    for (unsigned k = 0; k < m; ++k) {
        b.move_right(ini_m[k], kHash, ini_w[k]);
        b.write(ini_w[k], b.blank, kHash, k + 1 < m ? ini_m[k + 1] : back);
    }
    b.move_left(back, kHash, arw);
    for (const auto& c : b.walk) b.move_left(arw, c, arw);
    b.write(arw, b.blank, b.blank, fork);

    // The enumeration fork: advance, and independently descend.
    b.write(fork, b.blank, b.blank, adv);
    b.write(fork, b.blank, b.blank, next_entry);

    // Advance: walk to the end, then scan backwards for the rightmost
    // bumpable cell of this block's region.
    b.move_right(adv, b.blank, advscan);
    for (const auto& c : b.walk) b.move_right(advscan, c, advscan);
    b.move_left(advscan, b.blank, od[0][0]);

    const std::string& sig1 = b.sigma.front();
    for (unsigned h = 0; h <= m; ++h) {
        for (int f = 0; f < 2; ++f) {
            const std::string& st = od[h][f];
            // bump a non-maximal sigma symbol, refill h separators
            for (size_t i = 0; i + 1 < b.sigma.size(); ++i)
                b.write(st, b.sigma[i], b.sigma[i + 1], rfm[h]);
            // skip the maximal symbol
            b.move_left(st, b.sigma.back(), od[h][1]);
            if (h < m) {
                if (f == 1) {
                    // bump '#' to the smallest symbol; the killed separator
                    // moves into the refilled suffix
                    b.write(st, kHash, sig1, rfm[h + 1]);
                } else {
                    b.move_left(st, kHash, od[h + 1][0]);
                }
            } else {
                // boundary separator: region is maximal for its length, so
                // rewrite it as the minimal content one cell longer
                b.move_right(st, kHash, xw[m]);
            }
        }
    }
    for (unsigned j = 0; j <= m; ++j) {
        for (const auto& c : b.walk) b.move_right(rfm[j], c, rfw[j]);
        if (j > 0) {
            for (const auto& c : b.walk) b.write(rfw[j], c, kHash, rfm[j - 1]);
        } else {
            for (const auto& c : b.walk) b.write(rfw[j], c, sig1, rfm[0]);
            b.move_left(rfw[j], b.blank, arw);
        }
    }
    for (unsigned j = 0; j <= m; ++j) {
        for (const auto& c : b.walk) b.move_right(xm[j], c, xw[j]);
        if (j > 0) {
            for (const auto& c : b.walk) b.write(xw[j], c, kHash, xm[j - 1]);
        } else {
            for (const auto& c : b.walk) b.write(xw[j], c, sig1, xm[0]);
            // the former end-of-tape blank carries the extension symbol
            b.write(xw[j], b.blank, sig1, xdone);
        }
    }
    b.move_left(xdone, kHash, arw);
    b.move_left(xdone, sig1, arw);
    return seek;
}

std::string block_suffix(const std::vector<QuantifierBlock>& blocks) {
    std::string s;
    for (const auto& bl : blocks) {
        s += bl.kind == Quantifier::Exists ? 'e' : 'a';
        s += std::to_string(bl.var_count);
    }
    return s;
}

[[noreturn]] void fail_with(const std::vector<std::string>& problems, const char* what) {
    std::ostringstream os;
    os << what << ":";
    for (const auto& p : problems) os << "\n  " << p;
    throw std::invalid_argument(os.str());
}

}  // namespace

Machine compile_prefix(const FormulaSpec& spec) {
    auto problems = validate_formula(spec);
    if (!problems.empty()) fail_with(problems, "invalid formula specification");

    DocBuilder b = begin_compiled(spec.matrix, block_suffix(spec.blocks));
    const StateKind inner = spec.blocks.back().kind == Quantifier::Exists
                                ? StateKind::Existential
                                : StateKind::Universal;
    add_matrix(b, spec.matrix, inner);

    std::string entry = spec.matrix.machine.state_name(spec.matrix.machine.start());
    for (size_t i = spec.blocks.size(); i-- > 0;) {
        const auto& bl = spec.blocks[i];
        entry = bl.kind == Quantifier::Exists
                    ? build_exists_block(b, bl.var_count, static_cast<unsigned>(i + 1), entry)
                    : build_forall_block(b, bl.var_count, static_cast<unsigned>(i + 1), entry);
    }
    b.doc.start = entry;
    return compile(b.doc);
}

Machine compile_sigma1(const MatrixAcceptor& matrix, unsigned r) {
    return compile_prefix({{{Quantifier::Exists, r}}, matrix});
}

Machine compile_pi1(const MatrixAcceptor& matrix, unsigned r) {
    return compile_prefix({{{Quantifier::Forall, r}}, matrix});
}

Machine compile_pi11(const MatrixAcceptor& matrix) {
    auto problems = validate_matrix(matrix);
    if (matrix.arity != 2)
        problems.push_back("the unbounded-alternation compiler needs an arity-2 matrix "
                           "(z-block and x)");
    auto hash = matrix.machine.find_symbol(kHash);
    if (hash && matrix.machine.in_sigma(*hash))
        problems.push_back("'#' is reserved as the segment separator and cannot be "
                           "an input symbol");
    if (matrix.machine.find_symbol("%"))
        problems.push_back("'%' is reserved as the probe marker of this construction");
    if (!problems.empty()) fail_with(problems, "invalid matrix");

    DocBuilder b = begin_compiled(matrix, "pi11");
    const std::string kProbe = "%";
    if (std::find(b.doc.gamma.begin(), b.doc.gamma.end(), kProbe) == b.doc.gamma.end())
        b.doc.gamma.push_back(kProbe);
    add_matrix(b, matrix, StateKind::Existential);
    const Machine& mx = matrix.machine;
    const std::string matrix_start = mx.state_name(mx.start());
    const std::string reject = mx.state_name(matrix.reject_halt);

    // Content symbols a rejected matrix run may leave under the cursor or
    // in segments: anything but the blank and the probe marker.
    std::vector<std::string> content;
    for (const auto& g : b.doc.gamma)
        if (g != b.blank && g != kProbe) content.push_back(g);

    const std::string pr_seek = b.unique("p11.seek");
    const std::string pr_scan = b.unique("p11.scan");
    const std::string pr_back = b.unique("p11.back");
    const std::string pr_rw = b.unique("p11.rw");
    const std::string rj = b.unique("p11.rj");
    const std::string pb = b.unique("p11.probe");
    const std::string pk = b.unique("p11.peek");
    const std::string px = b.unique("p11.place");
    const std::string py = b.unique("p11.undo");
    const std::string pz = b.unique("p11.stepl");
    const std::string rj0 = b.unique("p11.home");
    const std::string sk = b.unique("p11.grow");
    const std::string ch_step = b.unique("p11.zstep");
    const std::string ch_w = b.unique("p11.z");
    const std::string ch_put = b.unique("p11.zput");
    const std::string gu_step = b.unique("p11.xstep");
    const std::string gu_w = b.unique("p11.x");
    const std::string gu_put = b.unique("p11.xput");
    const std::string gu_rw = b.unique("p11.xrw");

    for (const auto& nm : {pr_seek, pr_scan, pr_back, pr_rw})
        b.state(nm, StateKind::Existential);
    for (const auto& nm : {rj, pb, pk, px, py, pz, rj0, sk, ch_step, ch_w, ch_put})
        b.state(nm, StateKind::Universal);
    for (const auto& nm : {gu_step, gu_w, gu_put, gu_rw})
        b.state(nm, StateKind::Existential);

    // Stage zero: append one empty segment (no z values, x empty) and run
    // the matrix on it.
    b.move_right(pr_seek, b.blank, pr_scan);
    for (const auto& a : b.sigma) b.move_right(pr_scan, a, pr_scan);
    b.write(pr_scan, b.blank, kHash, pr_back);
    b.move_left(pr_back, kHash, pr_rw);
    for (const auto& a : b.sigma) b.move_left(pr_rw, a, pr_rw);
    b.write(pr_rw, b.blank, b.blank, matrix_start);

    // A failed matrix run resumes here, wherever the matrix halted. Find
    // the first cell past the written content and plant a '#' there. A
    // scanned blank is ambiguous (leading cell, first free cell, or deeper
    // in the blank tail), so it is probed: write a marker, try to move
    // left, and see whether the cursor actually moved.
    for (const auto& g : b.doc.gamma)
        if (g != kProbe) b.write(reject, g, g, rj);
    for (const auto& c : content) b.move_right(rj, c, sk);
    b.write(rj, b.blank, kProbe, pb);
    b.move_left(pb, kProbe, pk);
    b.write(pk, kProbe, b.blank, rj0);  // did not move: at the leading cell
    for (const auto& c : content) b.move_right(pk, c, px);
    b.move_right(pk, b.blank, py);
    b.write(px, kProbe, kHash, ch_step);  // first free cell: plant the boundary
    b.write(py, kProbe, b.blank, pz);     // deeper in the tail: undo, step left
    b.move_left(pz, b.blank, rj);
    b.move_right(rj0, b.blank, sk);
    for (const auto& c : content) b.move_right(sk, c, sk);
    b.write(sk, b.blank, kHash, ch_step);

    // Universally choose the next z value (appended as a fresh segment),
    // then existentially guess a fresh x segment and re-run the matrix.
    b.move_right(ch_step, kHash, ch_w);
    for (const auto& a : b.sigma) b.write(ch_w, b.blank, a, ch_put);
    for (const auto& a : b.sigma) b.move_right(ch_put, a, ch_w);
    b.write(ch_w, b.blank, kHash, gu_step);
    b.move_right(gu_step, kHash, gu_w);
    for (const auto& a : b.sigma) b.write(gu_w, b.blank, a, gu_put);
    for (const auto& a : b.sigma) b.move_right(gu_put, a, gu_w);
    b.move_left(gu_w, b.blank, gu_rw);
    for (const auto& c : content) b.move_left(gu_rw, c, gu_rw);
    b.write(gu_rw, b.blank, b.blank, matrix_start);

    b.doc.start = pr_seek;
    return compile(b.doc);
}

LevelReport classify_level(const Machine& m, std::string_view input, const Budget& b) {
    PivotGraph g = build_pivot_graph(m, initial_config(m, input), b);
    LevelReport rep;
    rep.start_kind = m.kind(m.start());

    Wf wf = is_alternation_wf(g);
    if (wf == Wf::No) {
        rep.exceeded = true;
        return rep;
    }

    // Longest pivot chain from the root over the (acyclic) explored edges.
    std::vector<uint32_t> dist(g.nodes.size(), 0);
    std::vector<NodeId> topo;
    {
        std::vector<char> done(g.nodes.size(), 0);
        std::vector<std::pair<NodeId, size_t>> stack{{g.root, 0}};
        done[g.root] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < g.nodes[node].pivots.size()) {
                NodeId child = g.nodes[node].pivots[next++];
                if (!done[child]) {
                    done[child] = 1;
                    stack.push_back({child, 0});
                }
            } else {
                topo.push_back(node);
                stack.pop_back();
            }
        }
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        for (NodeId p : g.nodes[*it].pivots)
            dist[p] = std::max(dist[p], dist[*it] + 1);
    }
    uint32_t max_pivots = 0;
    for (uint32_t d : dist) max_pivots = std::max(max_pivots, d);
    rep.max_pivots_per_branch = max_pivots;

    for (const auto& n : g.nodes)
        if (!n.expanded && n.depth >= b.max_pivot_depth) rep.exceeded = true;

    if (wf == Wf::Yes) {
        rep.claimed = rep.start_kind == StateKind::Existential
                          ? LevelReport::Level::Sigma
                          : LevelReport::Level::Pi;
        rep.claimed_k = max_pivots;
    }
    return rep;
}

}  // namespace altm::hierarchy
