#include "altm/machine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace altm {

StateKind opposite(StateKind k) {
    return k == StateKind::Existential ? StateKind::Universal : StateKind::Existential;
}

std::optional<Symbol> Machine::find_symbol(std::string_view spelling) const {
    for (size_t i = 0; i < gamma_.size(); ++i) {
        if (gamma_[i] == spelling) return static_cast<Symbol>(i);
    }
    return std::nullopt;
}

std::optional<StateIdx> Machine::find_state(std::string_view name) const {
    for (size_t i = 0; i < state_names_.size(); ++i) {
        if (state_names_[i] == name) return static_cast<StateIdx>(i);
    }
    return std::nullopt;
}

std::span<const uint32_t> Machine::rules_from(StateIdx q) const {
    return rules_by_state_[q];
}

Machine::Builder::Builder(std::string name, unsigned tapes) {
    m_.name_ = std::move(name);
    m_.tapes_ = tapes;
    if (tapes == 0) throw std::invalid_argument("machine must have at least one tape");
}

Machine::Builder& Machine::Builder::input_symbol(std::string spelling) {
    if (!m_.find_symbol(spelling)) {
        m_.gamma_.push_back(spelling);
        m_.in_sigma_.push_back(true);
    } else {
        m_.in_sigma_[*m_.find_symbol(spelling)] = true;
    }
    return *this;
}

Machine::Builder& Machine::Builder::tape_symbol(std::string spelling) {
    if (!m_.find_symbol(spelling)) {
        m_.gamma_.push_back(std::move(spelling));
        m_.in_sigma_.push_back(false);
    }
    return *this;
}

Machine::Builder& Machine::Builder::blank(std::string spelling) {
    tape_symbol(spelling);
    m_.blank_ = *m_.find_symbol(spelling);
    blank_set_ = true;
    return *this;
}

Machine::Builder& Machine::Builder::state(std::string name, StateKind kind) {
    if (m_.find_state(name))
        throw std::invalid_argument("duplicate state '" + name + "'");
    m_.state_names_.push_back(std::move(name));
    m_.kinds_.push_back(kind);
    return *this;
}

Machine::Builder& Machine::Builder::start(std::string name) {
    start_name_ = std::move(name);
    start_set_ = true;
    return *this;
}

Symbol Machine::Builder::resolve_symbol(std::string_view spelling) const {
    auto s = m_.find_symbol(spelling);
    if (!s)
        throw std::invalid_argument("unknown symbol '" + std::string(spelling) + "'");
    return *s;
}

Machine::Builder& Machine::Builder::rule(std::string_view from,
                                         std::vector<std::string> reads,
                                         std::vector<Action> acts,
                                         std::string_view to) {
    auto q = m_.find_state(from);
    auto p = m_.find_state(to);
    if (!q) throw std::invalid_argument("unknown state '" + std::string(from) + "'");
    if (!p) throw std::invalid_argument("unknown state '" + std::string(to) + "'");
    if (reads.size() != m_.tapes_ || acts.size() != m_.tapes_)
        throw std::invalid_argument("rule arity does not match tape count");
    Rule r;
    r.from = *q;
    r.to = *p;
    for (const auto& s : reads) r.reads.push_back(resolve_symbol(s));
    r.acts = std::move(acts);
    m_.rules_.push_back(std::move(r));
    return *this;
}

Machine::Builder& Machine::Builder::rule1(std::string_view from, std::string_view read,
                                          Action act, std::string_view to) {
    return rule(from, {std::string(read)}, {act}, to);
}

Machine::Builder& Machine::Builder::rule1w(std::string_view from, std::string_view read,
                                           std::string_view write, std::string_view to) {
    return rule(from, {std::string(read)}, {Action::write(resolve_symbol(write))}, to);
}

Machine Machine::Builder::build() {
    if (!blank_set_) blank("_");
    if (m_.gamma_.size() > 255)
        throw std::invalid_argument("too many tape symbols (limit 255)");
    if (m_.state_names_.empty())
        throw std::invalid_argument("machine has no states");
    if (!start_set_) start_name_ = m_.state_names_.front();
    auto s = m_.find_state(start_name_);
    if (!s) throw std::invalid_argument("unknown start state '" + start_name_ + "'");
    m_.start_ = *s;
    if (m_.in_sigma_[m_.blank_])
        throw std::invalid_argument("blank symbol cannot be an input symbol");
    m_.rules_by_state_.assign(m_.state_count(), {});
    for (uint32_t i = 0; i < m_.rules_.size(); ++i)
        m_.rules_by_state_[m_.rules_[i].from].push_back(i);
    return std::move(m_);
}

namespace {

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

ValidationReport validate(const MachineDoc& doc) {
    ValidationReport rep;
    auto err = [&rep](std::string msg) { rep.errors.push_back(std::move(msg)); };

    if (doc.tapes == 0) err("machine must have at least one tape");
    if (doc.gamma.size() > 255) err("too many tape symbols (limit 255)");

    auto in_gamma = [&doc](std::string_view s) {
        return std::find(doc.gamma.begin(), doc.gamma.end(), s) != doc.gamma.end();
    };
    std::unordered_set<std::string> gamma_seen;
    for (const auto& g : doc.gamma) {
        if (g.empty()) err("empty symbol spelling in tape alphabet");
        if (!gamma_seen.insert(g).second) err("duplicate tape symbol " + quoted(g));
    }
    for (const auto& s : doc.input) {
        if (!in_gamma(s)) err("input symbol " + quoted(s) + " not in tape alphabet");
        if (s == doc.blank) err("blank in input alphabet");
    }
    if (!in_gamma(doc.blank)) err("blank symbol " + quoted(doc.blank) + " not in tape alphabet");

    std::unordered_map<std::string, StateKind> state_kind;
    for (const auto& st : doc.states) {
        if (st.name.empty()) err("empty state name");
        if (!state_kind.emplace(st.name, st.kind).second)
            err("duplicate state " + quoted(st.name));
    }
    if (doc.states.empty()) err("machine has no states");
    if (!state_kind.count(doc.start)) err("unknown start state " + quoted(doc.start));

    std::unordered_set<std::string> used_symbols;
    for (size_t i = 0; i < doc.rules.size(); ++i) {
        const auto& r = doc.rules[i];
        std::string where = "rule #" + std::to_string(i + 1);
        if (!state_kind.count(r.from)) err(where + ": unknown state " + quoted(r.from));
        if (!state_kind.count(r.to)) err(where + ": unknown state " + quoted(r.to));
        if (r.reads.size() != doc.tapes)
            err(where + ": expected " + std::to_string(doc.tapes) + " read symbols");
        if (r.acts.size() != doc.tapes)
            err(where + ": expected " + std::to_string(doc.tapes) + " actions");
        for (const auto& s : r.reads) {
            if (!in_gamma(s))
                err(where + ": read symbol " + quoted(s) + " not in tape alphabet");
            used_symbols.insert(s);
        }
        for (const auto& a : r.acts) {
            if (a.op == '=') {
                if (!in_gamma(a.symbol))
                    err(where + ": written symbol " + quoted(a.symbol) +
                        " not in tape alphabet");
                used_symbols.insert(a.symbol);
            } else if (a.op != '+' && a.op != '-') {
                err(where + ": unknown action");
            }
        }
    }
    for (const auto& g : doc.gamma) {
        if (g != doc.blank && !used_symbols.count(g) &&
            std::find(doc.input.begin(), doc.input.end(), g) == doc.input.end()) {
            rep.warnings.push_back("tape symbol " + quoted(g) + " is never used by a rule");
        }
    }
    return rep;
}

Machine compile(const MachineDoc& doc) {
    auto rep = validate(doc);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "invalid machine";
        if (!doc.name.empty()) os << " '" << doc.name << "'";
        os << ":";
        for (const auto& e : rep.errors) os << "\n  " << e;
        throw std::invalid_argument(os.str());
    }
    Machine::Builder b(doc.name, doc.tapes);
    for (const auto& g : doc.gamma) b.tape_symbol(g);
    for (const auto& s : doc.input) b.input_symbol(s);
    b.blank(doc.blank);
    for (const auto& st : doc.states) b.state(st.name, st.kind);
    b.start(doc.start);
    // Symbols were declared in doc.gamma order, so indices match positions.
    auto symbol_of = [&doc](const std::string& spelling) {
        auto it = std::find(doc.gamma.begin(), doc.gamma.end(), spelling);
        return static_cast<Symbol>(it - doc.gamma.begin());
    };
    for (const auto& r : doc.rules) {
        std::vector<Action> acts;
        for (const auto& a : r.acts) {
            switch (a.op) {
                case '+': acts.push_back(Action::right()); break;
                case '-': acts.push_back(Action::left()); break;
                default: acts.push_back(Action::write(symbol_of(a.symbol))); break;
            }
        }
        b.rule(r.from, r.reads, std::move(acts), r.to);
    }
    return b.build();
}

MachineDoc to_doc(const Machine& m) {
    MachineDoc doc;
    doc.name = m.name();
    doc.tapes = m.tape_count();
    for (size_t s = 0; s < m.gamma().size(); ++s) {
        doc.gamma.push_back(m.spelling(static_cast<Symbol>(s)));
        if (m.in_sigma(static_cast<Symbol>(s)))
            doc.input.push_back(m.spelling(static_cast<Symbol>(s)));
    }
    doc.blank = m.spelling(m.blank());
    for (StateIdx q = 0; q < m.state_count(); ++q)
        doc.states.push_back({m.state_name(q), m.kind(q)});
    doc.start = m.state_name(m.start());
    for (const auto& r : m.rules()) {
        MachineDoc::RuleSpec rs;
        rs.from = m.state_name(r.from);
        rs.to = m.state_name(r.to);
        for (Symbol s : r.reads) rs.reads.push_back(m.spelling(s));
        for (const auto& a : r.acts) {
            switch (a.kind) {
                case Action::Kind::MoveRight: rs.acts.push_back({'+', {}}); break;
                case Action::Kind::MoveLeft: rs.acts.push_back({'-', {}}); break;
                case Action::Kind::Write: rs.acts.push_back({'=', m.spelling(a.symbol)}); break;
            }
        }
        doc.rules.push_back(std::move(rs));
    }
    return doc;
}

size_t ConfigurationHash::operator()(const Configuration& c) const {
    size_t h = std::hash<uint32_t>{}(c.state);
    auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& t : c.tapes) {
        mix(std::hash<std::string>{}(t.left));
        mix(static_cast<size_t>(t.head));
        mix(std::hash<std::string>{}(t.right));
    }
    return h;
}

Configuration canonicalize(const Machine& m, Configuration c) {
    const char blank = static_cast<char>(m.blank());
    for (auto& t : c.tapes) {
        size_t end = t.right.size();
        while (end > 0 && t.right[end - 1] == blank) --end;
        t.right.resize(end);
    }
    return c;
}

Configuration initial_config(const Machine& m, std::span<const Symbol> input) {
    Configuration c;
    c.state = m.start();
    c.tapes.resize(m.tape_count());
    for (auto& t : c.tapes) t.head = m.blank();
    for (Symbol s : input) {
        if (s >= m.gamma().size() || !m.in_sigma(s))
            throw std::invalid_argument("input symbol not in the input alphabet");
        c.tapes[0].right.push_back(static_cast<char>(s));
    }
    return canonicalize(m, std::move(c));
}

Configuration initial_config(const Machine& m, std::string_view input_glyphs) {
    std::vector<Symbol> syms;
    for (char g : input_glyphs) {
        auto s = m.find_symbol(std::string_view(&g, 1));
        if (!s || !m.in_sigma(*s))
            throw std::invalid_argument(std::string("input glyph '") + g +
                                        "' is not an input symbol");
        syms.push_back(*s);
    }
    return initial_config(m, std::span<const Symbol>(syms));
}

std::vector<std::pair<uint32_t, Configuration>> successors(const Machine& m,
                                                           const Configuration& c) {
    std::vector<std::pair<uint32_t, Configuration>> out;
    for (uint32_t ri : m.rules_from(c.state)) {
        const Rule& r = m.rules()[ri];
        bool applies = true;
        for (unsigned i = 0; i < m.tape_count(); ++i) {
            if (c.tapes[i].head != r.reads[i]) {
                applies = false;
                break;
            }
        }
        if (!applies) continue;
        Configuration next = c;
        next.state = r.to;
        for (unsigned i = 0; i < m.tape_count(); ++i) {
            Tape& t = next.tapes[i];
            switch (r.acts[i].kind) {
                case Action::Kind::Write:
                    t.head = r.acts[i].symbol;
                    break;
                case Action::Kind::MoveRight:
                    t.left.push_back(static_cast<char>(t.head));
                    if (t.right.empty()) {
                        t.head = m.blank();
                    } else {
                        t.head = static_cast<Symbol>(static_cast<unsigned char>(t.right.front()));
                        t.right.erase(t.right.begin());
                    }
                    break;
                case Action::Kind::MoveLeft:
                    // At the left end the cursor does not move.
                    if (!t.left.empty()) {
                        t.right.insert(t.right.begin(), static_cast<char>(t.head));
                        t.head = static_cast<Symbol>(static_cast<unsigned char>(t.left.back()));
                        t.left.pop_back();
                    }
                    break;
            }
        }
        out.emplace_back(ri, canonicalize(m, std::move(next)));
    }
    return out;
}

ConfigClass classify_config(const Machine& m, const Configuration& c) {
    ConfigClass cc{m.kind(c.state), true};
    for (uint32_t ri : m.rules_from(c.state)) {
        const Rule& r = m.rules()[ri];
        bool applies = true;
        for (unsigned i = 0; i < m.tape_count(); ++i) {
            if (c.tapes[i].head != r.reads[i]) {
                applies = false;
                break;
            }
        }
        if (applies) {
            cc.dead_end = false;
            break;
        }
    }
    return cc;
}

std::string format_configuration(const Machine& m, const Configuration& c) {
    std::ostringstream os;
    os << m.state_name(c.state);
    for (const auto& t : c.tapes) {
        os << " | ";
        for (char ch : t.left) os << m.spelling(static_cast<Symbol>(static_cast<unsigned char>(ch)));
        os << "[" << m.spelling(t.head) << "]";
        for (char ch : t.right) os << m.spelling(static_cast<Symbol>(static_cast<unsigned char>(ch)));
    }
    return os.str();
}

}  // namespace altm
