#include "altm/transforms.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace altm::transforms {

namespace {

std::string fresh_name(const Machine& m, std::string base) {
    if (!m.find_state(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!m.find_state(candidate)) return candidate;
    }
}

MachineDoc doc_with_new_name(const Machine& m, std::string name) {
    MachineDoc doc = to_doc(m);
    doc.name = std::move(name);
    return doc;
}

MachineDoc::Act write_act(const std::string& spelling) { return {'=', spelling}; }

}  // namespace

Machine dual(const Machine& m) {
    MachineDoc doc = to_doc(m);
    for (auto& st : doc.states) st.kind = opposite(st.kind);
    return compile(doc);
}

Machine one_sided(const Machine& m, Side side) {
    if (m.tape_count() != 1)
        throw std::invalid_argument("one_sided requires a single-tape machine");
    const StateKind entry_kind =
        side == Side::Plus ? StateKind::Universal : StateKind::Existential;
    const StateKind escaped_kind = opposite(entry_kind);

    MachineDoc doc = doc_with_new_name(m, m.name() + (side == Side::Plus ? "+" : "-"));
    const std::string a = fresh_name(m, "limbo_a");
    const std::string b = fresh_name(m, "limbo_b");
    doc.states.push_back({a, entry_kind});
    doc.states.push_back({b, opposite(entry_kind)});

    // Escapes are appended after the original rules so the child ordering of
    // original behavior is unchanged.
    for (StateIdx q = 0; q < m.state_count(); ++q) {
        if (m.kind(q) != escaped_kind) continue;
        for (const auto& g : doc.gamma)
            doc.rules.push_back({m.state_name(q), {g}, {write_act(g)}, a});
    }
    for (const auto& g : doc.gamma) {
        doc.rules.push_back({a, {g}, {write_act(g)}, b});
        doc.rules.push_back({b, {g}, {write_act(g)}, a});
    }
    return compile(doc);
}

unsigned one_sided_budget_factor(const Machine& m) {
    return 2 * static_cast<unsigned>(m.gamma().size());
}

namespace {

bool start_is_normalized(const Machine& m) {
    if (m.kind(m.start()) != StateKind::Existential) return false;
    std::unordered_set<std::string> seen;
    for (uint32_t ri : m.rules_from(m.start())) {
        std::string key(m.rules()[ri].reads.begin(), m.rules()[ri].reads.end());
        if (!seen.insert(key).second) return false;
    }
    return true;
}

// All read vectors over the tape alphabet, in lexicographic declared order.
void each_read_vector(const MachineDoc& doc, unsigned tapes,
                      const std::function<void(const std::vector<std::string>&)>& fn) {
    std::vector<size_t> idx(tapes, 0);
    std::vector<std::string> reads(tapes);
    while (true) {
        for (unsigned i = 0; i < tapes; ++i) reads[i] = doc.gamma[idx[i]];
        fn(reads);
        unsigned i = tapes;
        while (i > 0) {
            --i;
            if (++idx[i] < doc.gamma.size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
    }
}

}  // namespace

Machine normalize_start(const Machine& m) {
    if (start_is_normalized(m)) return m;

    MachineDoc doc = to_doc(m);
    const std::string init = fresh_name(m, "init");
    doc.states.insert(doc.states.begin(), {init, StateKind::Existential});
    std::vector<MachineDoc::RuleSpec> entry;
    each_read_vector(doc, doc.tapes, [&](const std::vector<std::string>& reads) {
        std::vector<MachineDoc::Act> acts;
        for (const auto& g : reads) acts.push_back(write_act(g));
        entry.push_back({init, reads, acts, doc.start});
    });
    doc.rules.insert(doc.rules.begin(), entry.begin(), entry.end());
    doc.start = init;
    return compile(doc);
}

Machine combine(const Machine& m0_raw, const Machine& m1) {
    if (m0_raw.tape_count() != 1 || m1.tape_count() != 1)
        throw std::invalid_argument("combine requires single-tape machines");
    Machine m0 = normalize_start(m0_raw);
    if (std::vector<std::string>(m0.gamma().begin(), m0.gamma().end()) !=
            std::vector<std::string>(m1.gamma().begin(), m1.gamma().end()) ||
        m0.spelling(m0.blank()) != m1.spelling(m1.blank()))
        throw std::invalid_argument("combine requires identical tape alphabets");
    for (size_t s = 0; s < m0.gamma().size(); ++s) {
        if (m0.in_sigma(static_cast<Symbol>(s)) != m1.in_sigma(static_cast<Symbol>(s)))
            throw std::invalid_argument("combine requires identical input alphabets");
    }

    MachineDoc doc;
    doc.name = m0_raw.name() + "*" + m1.name();
    doc.tapes = 2;
    for (size_t s = 0; s < m0.gamma().size(); ++s) {
        doc.gamma.push_back(m0.spelling(static_cast<Symbol>(s)));
        if (m0.in_sigma(static_cast<Symbol>(s)))
            doc.input.push_back(m0.spelling(static_cast<Symbol>(s)));
    }
    doc.blank = m0.spelling(m0.blank());
    const std::string blank = doc.blank;

    auto product_name = [&](StateIdx q0, StateIdx q1, int j) {
        return m0.state_name(q0) + "." + m1.state_name(q1) + "." + std::to_string(j);
    };
    auto product_kind = [&](StateIdx q0, StateIdx q1, int j) {
        return j == 0 ? m0.kind(q0) : m1.kind(q1);
    };

    // Preprocessing chain: copy the input to tape 2, rewind both cursors to
    // the blank start cell, and hand control to <s0,s1,0>. All universal and
    // deterministic, so the opening universal phase has exactly one pivot.
    const std::string pre0 = "copy.begin", pre1 = "copy.scan", pre2 = "copy.step",
                      rew = "copy.rewind";
    for (const auto& nm : {pre0, pre1, pre2, rew})
        doc.states.push_back({nm, StateKind::Universal});
    for (StateIdx q0 = 0; q0 < m0.state_count(); ++q0)
        for (StateIdx q1 = 0; q1 < m1.state_count(); ++q1)
            for (int j = 0; j < 2; ++j)
                doc.states.push_back({product_name(q0, q1, j), product_kind(q0, q1, j)});
    doc.start = pre0;

    std::vector<std::string> sigma = doc.input;
    doc.rules.push_back({pre0, {blank, blank}, {{'+', {}}, {'+', {}}}, pre1});
    for (const auto& a : sigma) {
        doc.rules.push_back({pre1, {a, blank}, {write_act(a), write_act(a)}, pre2});
        doc.rules.push_back({pre2, {a, a}, {{'+', {}}, {'+', {}}}, pre1});
        doc.rules.push_back({rew, {a, a}, {{'-', {}}, {'-', {}}}, rew});
    }
    doc.rules.push_back({pre1, {blank, blank}, {{'-', {}}, {'-', {}}}, rew});
    doc.rules.push_back(
        {rew, {blank, blank}, {write_act(blank), write_act(blank)},
         product_name(m0.start(), m1.start(), 0)});

    auto act_of = [&](const Action& a) -> MachineDoc::Act {
        switch (a.kind) {
            case Action::Kind::MoveRight: return {'+', {}};
            case Action::Kind::MoveLeft: return {'-', {}};
            default: return write_act(m0.spelling(a.symbol));
        }
    };

    // m0 steps run on tape 1 while control is at j=0; control stays with m0
    // only when both rule endpoints are universal.
    for (const auto& r : m0.rules()) {
        const int next_j =
            (m0.kind(r.from) == StateKind::Universal && m0.kind(r.to) == StateKind::Universal)
                ? 0
                : 1;
        for (StateIdx q1 = 0; q1 < m1.state_count(); ++q1) {
            for (const auto& d : doc.gamma) {
                doc.rules.push_back({product_name(r.from, q1, 0),
                                     {m0.spelling(r.reads[0]), d},
                                     {act_of(r.acts[0]), write_act(d)},
                                     product_name(r.to, q1, next_j)});
            }
        }
    }
    // m1 steps dually on tape 2 at j=1; control stays with m1 only when both
    // endpoints are existential.
    for (const auto& r : m1.rules()) {
        const int next_j =
            (m1.kind(r.from) == StateKind::Existential &&
             m1.kind(r.to) == StateKind::Existential)
                ? 1
                : 0;
        for (StateIdx q0 = 0; q0 < m0.state_count(); ++q0) {
            for (const auto& d : doc.gamma) {
                doc.rules.push_back({product_name(q0, r.from, 1),
                                     {d, m1.spelling(r.reads[0])},
                                     {write_act(d), act_of(r.acts[0])},
                                     product_name(q0, r.to, next_j)});
            }
        }
    }
    return compile(doc);
}

unsigned combine_budget_factor(const Machine& m0, const Machine& m1) {
    unsigned states = m0.state_count() + m1.state_count() + 4;
    return 2 * states * static_cast<unsigned>(m0.gamma().size());
}

}  // namespace altm::transforms
