#include "support.hpp"

#include <algorithm>
#include <stdexcept>

namespace altm::testing {

namespace {

Machine::Builder base(std::string name) {
    Machine::Builder b(std::move(name));
    b.input_symbol("a").input_symbol("b").blank("_");
    return b;
}

}  // namespace

Machine make_u0() {
    Machine::Builder b("u0");
    b.input_symbol("a").input_symbol("b").blank("_");
    b.state("u", StateKind::Universal);
    return b.build();
}

Machine make_e0() {
    Machine::Builder b("e0");
    b.input_symbol("a").input_symbol("b").blank("_");
    b.state("e", StateKind::Existential);
    return b.build();
}

Machine make_self_loop() {
    auto b = base("eloop");
    b.state("q", StateKind::Existential);
    b.rule1w("q", "_", "_", "q");
    return b.build();
}

Machine make_mutual_loop() {
    auto b = base("flip");
    b.state("e", StateKind::Existential);
    b.state("u", StateKind::Universal);
    b.rule1w("e", "_", "_", "u");
    b.rule1w("u", "_", "_", "e");
    return b.build();
}

namespace {

Machine make_parity(std::string name, bool accept_even) {
    auto b = base(std::move(name));
    b.state("st", StateKind::Existential);
    b.state("p0", accept_even ? StateKind::Universal : StateKind::Existential);
    b.state("p1", accept_even ? StateKind::Existential : StateKind::Universal);
    b.start("st");
    b.rule1("st", "_", Action::right(), "p0");
    for (const char* g : {"a", "b"}) {
        b.rule1("p0", g, Action::right(), "p1");
        b.rule1("p1", g, Action::right(), "p0");
    }
    return b.build();
}

}  // namespace

Machine make_even() { return make_parity("even", true); }
Machine make_odd() { return make_parity("odd", false); }

Machine make_starts_a() {
    auto b = base("starts_a");
    b.state("st", StateKind::Existential);
    b.state("look", StateKind::Existential);
    b.state("yes", StateKind::Universal);
    b.start("st");
    b.rule1("st", "_", Action::right(), "look");
    b.rule1("look", "a", Action::right(), "yes");
    return b.build();
}

Machine make_starts_b_or_empty() {
    auto b = base("starts_b_or_empty");
    b.state("st", StateKind::Existential);
    b.state("look", StateKind::Existential);
    b.state("yes", StateKind::Universal);
    b.start("st");
    b.rule1("st", "_", Action::right(), "look");
    b.rule1("look", "b", Action::right(), "yes");
    b.rule1w("look", "_", "_", "yes");
    return b.build();
}

Machine make_len_ge2() {
    auto b = base("len_ge2");
    b.state("st", StateKind::Existential);
    b.state("c1", StateKind::Existential);
    b.state("c2", StateKind::Existential);
    b.state("yes", StateKind::Universal);
    b.start("st");
    b.rule1("st", "_", Action::right(), "c1");
    for (const char* g : {"a", "b"}) {
        b.rule1("c1", g, Action::right(), "c2");
        b.rule1("c2", g, Action::right(), "yes");
    }
    return b.build();
}

Machine make_len_le1() {
    auto b = base("len_le1");
    b.state("st", StateKind::Existential);
    b.state("d1", StateKind::Existential);
    b.state("d2", StateKind::Existential);
    b.state("yes", StateKind::Universal);
    b.start("st");
    b.rule1("st", "_", Action::right(), "d1");
    b.rule1w("d1", "_", "_", "yes");
    b.rule1w("d2", "_", "_", "yes");
    for (const char* g : {"a", "b"}) b.rule1("d1", g, Action::right(), "d2");
    return b.build();
}

std::vector<Machine> sample_corpus(const CorpusParams& params) {
    std::mt19937 rng(params.seed);
    const std::vector<std::string> gamma = {"a", "b", "_"};
    std::vector<Machine> out;
    out.reserve(params.count);
    for (uint32_t n = 0; n < params.count; ++n) {
        std::uniform_int_distribution<unsigned> nstates_d(1, params.max_states);
        unsigned nstates = nstates_d(rng);
        std::uniform_int_distribution<unsigned> nrules_d(0, params.max_rules);
        unsigned nrules = nrules_d(rng);
        std::uniform_int_distribution<unsigned> state_d(0, nstates - 1);
        std::uniform_int_distribution<unsigned> sym_d(0, 2);
        std::uniform_int_distribution<unsigned> act_d(0, 4);  // +, -, =a, =b, =_
        std::uniform_int_distribution<unsigned> kind_d(0, 1);

        Machine::Builder b("c" + std::to_string(n));
        b.input_symbol("a").input_symbol("b").blank("_");
        for (unsigned q = 0; q < nstates; ++q)
            b.state("q" + std::to_string(q),
                    kind_d(rng) ? StateKind::Universal : StateKind::Existential);
        b.start("q" + std::to_string(state_d(rng)));
        for (unsigned r = 0; r < nrules; ++r) {
            std::string from = "q" + std::to_string(state_d(rng));
            std::string to = "q" + std::to_string(state_d(rng));
            std::string read = gamma[sym_d(rng)];
            unsigned a = act_d(rng);
            Action act = a == 0   ? Action::right()
                         : a == 1 ? Action::left()
                                  : Action::write(0);
            if (a >= 2) {
                b.rule1w(from, read, gamma[a - 2], to);
            } else {
                b.rule1(from, read, act, to);
            }
        }
        out.push_back(b.build());
    }
    return out;
}

std::vector<std::string> inputs_up_to(unsigned max_len) {
    std::vector<std::string> out{""};
    size_t level_begin = 0;
    for (unsigned len = 1; len <= max_len; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_begin; i < level_end; ++i) {
            out.push_back(out[i] + "a");
            out.push_back(out[i] + "b");
        }
        level_begin = level_end;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.size() < y.size();
    });
    return out;
}

std::vector<char> least_closed_set_bruteforce(const PivotGraph& g, bool accepting) {
    const size_t n = g.nodes.size();
    if (n > 20) throw std::invalid_argument("graph too large for subset enumeration");
    const StateKind witness_kind =
        accepting ? StateKind::Existential : StateKind::Universal;

    auto closed = [&](uint32_t mask) {
        for (NodeId i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            const auto& node = g.nodes[i];
            if (!node.expanded) continue;
            bool fires;
            if (node.kind == witness_kind) {
                fires = false;
                for (NodeId p : node.pivots)
                    if (mask & (1u << p)) fires = true;
            } else {
                fires = node.phase_complete;
                for (NodeId p : node.pivots)
                    if (!(mask & (1u << p))) fires = false;
            }
            if (fires) return false;
        }
        return true;
    };

    uint32_t least = (n == 32 ? 0xffffffffu : (1u << n) - 1);
    for (uint32_t mask = 0; mask < (1u << n); ++mask)
        if (closed(mask)) least &= mask;
    std::vector<char> out(n, 0);
    for (NodeId i = 0; i < n; ++i) out[i] = (least >> i) & 1;
    return out;
}

namespace {

Configuration matrix_tape(const Machine& m, const std::string& w,
                          const std::vector<std::string>& tuple) {
    Configuration c;
    c.state = m.start();
    c.tapes.resize(1);
    c.tapes[0].head = m.blank();
    auto push = [&](const std::string& glyph) {
        auto s = m.find_symbol(glyph);
        if (!s) throw std::invalid_argument("matrix alphabet lacks '" + glyph + "'");
        c.tapes[0].right.push_back(static_cast<char>(*s));
    };
    for (char g : w) push(std::string(1, g));
    for (const auto& seg : tuple) {
        push("#");
        for (char g : seg) push(std::string(1, g));
    }
    return canonicalize(m, std::move(c));
}

}  // namespace

MatrixOutcome run_matrix(const hierarchy::MatrixAcceptor& matrix, const std::string& w,
                         const std::vector<std::string>& tuple, unsigned max_steps) {
    const Machine& m = matrix.machine;
    Configuration c = matrix_tape(m, w, tuple);
    for (unsigned step = 0; step < max_steps; ++step) {
        auto succ = successors(m, c);
        if (succ.empty()) {
            if (c.state == matrix.accept_halt) return MatrixOutcome::Accept;
            if (c.state == matrix.reject_halt) return MatrixOutcome::Reject;
            return MatrixOutcome::Stuck;
        }
        if (succ.size() > 1) return MatrixOutcome::Stuck;
        c = std::move(succ.front().second);
    }
    return MatrixOutcome::DidNotHalt;
}

std::vector<std::vector<std::string>> all_tuples(unsigned r, unsigned max_len) {
    std::vector<std::vector<std::string>> out{{}};
    auto components = inputs_up_to(max_len);
    for (unsigned slot = 0; slot < r; ++slot) {
        std::vector<std::vector<std::string>> next;
        for (const auto& partial : out) {
            for (const auto& comp : components) {
                auto t = partial;
                t.push_back(comp);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

bool witness_exists(const hierarchy::MatrixAcceptor& matrix, const std::string& w,
                    unsigned max_len) {
    for (const auto& tuple : all_tuples(matrix.arity, max_len))
        if (run_matrix(matrix, w, tuple) == MatrixOutcome::Accept) return true;
    return false;
}

std::string next_block(const std::string& block, const std::string& sigma,
                       unsigned separators) {
    // Alphabet order: '#' < sigma[0] < sigma[1] < ...
    auto rank = [&](char c) -> size_t {
        if (c == '#') return 0;
        return sigma.find(c) + 1;
    };
    const size_t L = block.size();
    for (size_t pos = L; pos-- > 0;) {
        size_t hashes_right = 0;
        bool sigma_right = false;
        for (size_t i = pos + 1; i < L; ++i) {
            if (block[i] == '#') ++hashes_right;
            else sigma_right = true;
        }
        char c = block[pos];
        if (c == '#') {
            // bump to sigma[0]; the separator must fit in the suffix
            if (!sigma_right) continue;
            std::string out = block.substr(0, pos);
            out += sigma[0];
            size_t need = hashes_right + 1;
            out += std::string(need, '#');
            out += std::string(L - pos - 1 - need, sigma[0]);
            return out;
        }
        size_t r = rank(c);
        if (r == sigma.size()) continue;  // maximal symbol
        std::string out = block.substr(0, pos);
        out += sigma[r];  // rank r means sigma[r-1]; successor is sigma[r]
        out += std::string(hashes_right, '#');
        out += std::string(L - pos - 1 - hashes_right, sigma[0]);
        return out;
    }
    // maximal for this length: minimal block one longer
    return std::string(separators, '#') + std::string(L + 1 - separators, sigma[0]);
}

namespace {

Machine::Builder matrix_base(std::string name) {
    Machine::Builder b(std::move(name));
    b.input_symbol("a").input_symbol("b").blank("_").tape_symbol("#");
    return b;
}

hierarchy::MatrixAcceptor finish_matrix(Machine m, unsigned arity) {
    StateIdx acc = *m.find_state("yes");
    StateIdx rej = *m.find_state("no");
    return {std::move(m), acc, rej, arity};
}

}  // namespace

hierarchy::MatrixAcceptor matrix_accept_all(unsigned arity) {
    auto b = matrix_base("top");
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("yes");
    return finish_matrix(b.build(), arity);
}

hierarchy::MatrixAcceptor matrix_reject_all(unsigned arity) {
    auto b = matrix_base("bot");
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("no");
    return finish_matrix(b.build(), arity);
}

hierarchy::MatrixAcceptor matrix_first_nonempty() {
    auto b = matrix_base("nonempty");
    b.state("st", StateKind::Universal);
    b.state("sc", StateKind::Universal);
    b.state("look", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");
    b.rule1("st", "_", Action::right(), "sc");
    for (const char* g : {"a", "b"}) b.rule1("sc", g, Action::right(), "sc");
    b.rule1("sc", "#", Action::right(), "look");
    for (const char* g : {"a", "b"}) b.rule1w("look", g, g, "yes");
    b.rule1w("look", "_", "_", "no");
    b.rule1w("look", "#", "#", "no");
    return finish_matrix(b.build(), 1);
}

hierarchy::MatrixAcceptor matrix_starts_a() {
    auto b = matrix_base("heads_a");
    b.state("st", StateKind::Universal);
    b.state("sc", StateKind::Universal);
    b.state("look", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");
    b.rule1("st", "_", Action::right(), "sc");
    for (const char* g : {"a", "b"}) b.rule1("sc", g, Action::right(), "sc");
    b.rule1("sc", "#", Action::right(), "look");
    b.rule1w("look", "a", "a", "yes");
    b.rule1w("look", "b", "b", "no");
    b.rule1w("look", "_", "_", "no");
    b.rule1w("look", "#", "#", "no");
    return finish_matrix(b.build(), 1);
}

hierarchy::MatrixAcceptor matrix_even_witness() {
    auto b = matrix_base("even_w");
    b.state("st", StateKind::Universal);
    b.state("sc", StateKind::Universal);
    b.state("pe", StateKind::Universal);
    b.state("po", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");
    b.rule1("st", "_", Action::right(), "sc");
    for (const char* g : {"a", "b"}) b.rule1("sc", g, Action::right(), "sc");
    b.rule1("sc", "#", Action::right(), "pe");
    for (const char* g : {"a", "b"}) {
        b.rule1("pe", g, Action::right(), "po");
        b.rule1("po", g, Action::right(), "pe");
    }
    b.rule1w("pe", "_", "_", "yes");
    b.rule1w("po", "_", "_", "no");
    return finish_matrix(b.build(), 1);
}

hierarchy::MatrixAcceptor matrix_eq_input() {
    Machine::Builder b("eq_input");
    b.input_symbol("a").input_symbol("b").blank("_").tape_symbol("#");
    b.tape_symbol("A").tape_symbol("B");  // checked-off tags
    b.state("st", StateKind::Universal);
    b.state("fw", StateKind::Universal);
    b.state("ca", StateKind::Universal);
    b.state("cb", StateKind::Universal);
    b.state("sa", StateKind::Universal);
    b.state("sb", StateKind::Universal);
    b.state("rew", StateKind::Universal);
    b.state("fin", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");

    b.rule1("st", "_", Action::right(), "fw");
    // find the next unchecked input symbol
    b.rule1("fw", "A", Action::right(), "fw");
    b.rule1("fw", "B", Action::right(), "fw");
    b.rule1w("fw", "a", "A", "ca");
    b.rule1w("fw", "b", "B", "cb");
    b.rule1("fw", "#", Action::right(), "fin");
    // carry the expected symbol across the separator
    for (auto [carry, seek] : {std::pair{"ca", "sa"}, std::pair{"cb", "sb"}}) {
        b.rule1(carry, "a", Action::right(), carry);
        b.rule1(carry, "b", Action::right(), carry);
        b.rule1(carry, "A", Action::right(), carry);
        b.rule1(carry, "B", Action::right(), carry);
        b.rule1(carry, "#", Action::right(), seek);
    }
    // match against the next unchecked witness symbol
    b.rule1("sa", "A", Action::right(), "sa");
    b.rule1("sa", "B", Action::right(), "sa");
    b.rule1w("sa", "a", "A", "rew");
    b.rule1w("sa", "b", "b", "no");
    b.rule1w("sa", "_", "_", "no");
    b.rule1("sb", "A", Action::right(), "sb");
    b.rule1("sb", "B", Action::right(), "sb");
    b.rule1w("sb", "b", "B", "rew");
    b.rule1w("sb", "a", "a", "no");
    b.rule1w("sb", "_", "_", "no");
    for (const char* g : {"a", "b", "A", "B", "#"}) b.rule1("rew", g, Action::left(), "rew");
    b.rule1("rew", "_", Action::right(), "fw");
    // input exhausted: the witness must be fully checked too
    b.rule1("fin", "A", Action::right(), "fin");
    b.rule1("fin", "B", Action::right(), "fin");
    b.rule1w("fin", "a", "a", "no");
    b.rule1w("fin", "b", "b", "no");
    b.rule1w("fin", "_", "_", "yes");
    return finish_matrix(b.build(), 1);
}

hierarchy::MatrixAcceptor matrix_not_b() {
    auto b = matrix_base("not_b");
    b.state("st", StateKind::Universal);
    b.state("sc", StateKind::Universal);
    b.state("look", StateKind::Universal);
    b.state("look2", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");
    b.rule1("st", "_", Action::right(), "sc");
    for (const char* g : {"a", "b"}) b.rule1("sc", g, Action::right(), "sc");
    b.rule1("sc", "#", Action::right(), "look");
    b.rule1w("look", "a", "a", "yes");
    b.rule1w("look", "_", "_", "yes");
    b.rule1("look", "b", Action::right(), "look2");
    b.rule1w("look2", "_", "_", "no");
    b.rule1w("look2", "a", "a", "yes");
    b.rule1w("look2", "b", "b", "yes");
    return finish_matrix(b.build(), 1);
}

hierarchy::MatrixAcceptor matrix_two_hashes() {
    auto b = matrix_base("two_hashes");
    b.state("st", StateKind::Universal);
    b.state("sc", StateKind::Universal);
    b.state("h1", StateKind::Universal);
    b.state("yes", StateKind::Universal);
    b.state("no", StateKind::Existential);
    b.start("st");
    b.rule1("st", "_", Action::right(), "sc");
    for (const char* g : {"a", "b"}) b.rule1("sc", g, Action::right(), "sc");
    b.rule1("sc", "#", Action::right(), "h1");
    for (const char* g : {"a", "b"}) b.rule1("h1", g, Action::right(), "h1");
    b.rule1w("h1", "#", "#", "yes");
    b.rule1w("h1", "_", "_", "no");
    return finish_matrix(b.build(), 2);
}

}  // namespace altm::testing
