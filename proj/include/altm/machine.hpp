// Core model: alternating Turing machines over t >= 1 tapes, their
// configurations, and the one-step yield relation.
//
// Machines are immutable after construction and all operations here are
// pure, so everything in this header is safe to share across threads.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altm {

enum class StateKind : uint8_t { Existential, Universal };

StateKind opposite(StateKind k);

/// Index into a machine's tape alphabet. The text format restricts symbol
/// spellings to single glyphs, but in memory a symbol is any token; a
/// machine may declare at most 255 of them.
using Symbol = uint8_t;

using StateIdx = uint32_t;

/// A transition action: overwrite the scanned cell or move the cursor,
/// never both.
struct Action {
    enum class Kind : uint8_t { Write, MoveLeft, MoveRight };
    Kind kind;
    Symbol symbol = 0;  // meaningful only for Kind::Write

    static Action write(Symbol s) { return {Kind::Write, s}; }
    static Action left() { return {Kind::MoveLeft, 0}; }
    static Action right() { return {Kind::MoveRight, 0}; }

    bool operator==(const Action&) const = default;
};

/// One transition rule; reads/acts hold one entry per tape. The position
/// of a rule in the machine's rule list is significant: it fixes the
/// ordering of child configurations.
struct Rule {
    StateIdx from;
    std::vector<Symbol> reads;
    std::vector<Action> acts;
    StateIdx to;

    bool operator==(const Rule&) const = default;
};

/// Raw, spelling-based machine description as read from a machine file.
/// May violate every invariant; run validate() before compiling it into
/// an operational Machine.
struct MachineDoc {
    std::string name;
    unsigned tapes = 1;
    std::vector<std::string> input;  // sigma spellings
    std::vector<std::string> gamma;  // tape alphabet spellings, declared order
    std::string blank = "_";

    struct State {
        std::string name;
        StateKind kind;
    };
    std::vector<State> states;
    std::string start;

    struct Act {
        char op;             // '+', '-', or '=' (write)
        std::string symbol;  // for '='
    };
    struct RuleSpec {
        std::string from;
        std::vector<std::string> reads;
        std::vector<Act> acts;
        std::string to;
    };
    std::vector<RuleSpec> rules;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;  // e.g. declared-but-unused symbols

    bool ok() const { return errors.empty(); }
};

class Machine {
public:
    class Builder;

    const std::string& name() const { return name_; }
    unsigned tape_count() const { return tapes_; }

    std::span<const std::string> gamma() const { return gamma_; }
    const std::string& spelling(Symbol s) const { return gamma_[s]; }
    Symbol blank() const { return blank_; }
    bool in_sigma(Symbol s) const { return in_sigma_[s]; }
    std::optional<Symbol> find_symbol(std::string_view spelling) const;

    unsigned state_count() const { return static_cast<unsigned>(kinds_.size()); }
    const std::string& state_name(StateIdx q) const { return state_names_[q]; }
    StateKind kind(StateIdx q) const { return kinds_[q]; }
    std::optional<StateIdx> find_state(std::string_view name) const;
    StateIdx start() const { return start_; }

    std::span<const Rule> rules() const { return rules_; }
    /// Indices into rules() of the rules leaving `q`, in rule-list order.
    std::span<const uint32_t> rules_from(StateIdx q) const;

    bool operator==(const Machine&) const = default;

private:
    friend class Builder;
    Machine() = default;

    std::string name_;
    unsigned tapes_ = 1;
    std::vector<std::string> gamma_;
    std::vector<bool> in_sigma_;
    Symbol blank_ = 0;
    std::vector<std::string> state_names_;
    std::vector<StateKind> kinds_;
    StateIdx start_ = 0;
    std::vector<Rule> rules_;
    std::vector<std::vector<uint32_t>> rules_by_state_;
};

/// Convenience for building machines in code. Throws std::invalid_argument
/// on references that cannot be resolved; use MachineDoc + validate() when
/// broken descriptions must be representable.
class Machine::Builder {
public:
    explicit Builder(std::string name, unsigned tapes = 1);

    Builder& input_symbol(std::string spelling);
    Builder& tape_symbol(std::string spelling);
    /// Declares `spelling` as the blank; adds it to gamma if missing.
    Builder& blank(std::string spelling);
    Builder& state(std::string name, StateKind kind);
    Builder& start(std::string name);
    Builder& rule(std::string_view from, std::vector<std::string> reads,
                  std::vector<Action> acts_with_symbols, std::string_view to);
    /// Single-tape shorthand: read one symbol, perform one action.
    Builder& rule1(std::string_view from, std::string_view read, Action act,
                   std::string_view to);
    /// Single-tape shorthand for a write action.
    Builder& rule1w(std::string_view from, std::string_view read,
                    std::string_view write, std::string_view to);

    Machine build();

private:
    Symbol resolve_symbol(std::string_view spelling) const;
    Machine m_;
    bool blank_set_ = false;
    bool start_set_ = false;
    std::string start_name_;
};

/// Checks the structural invariants of a machine description: alphabet
/// containment, blank reservation, referential integrity of states and
/// symbols, read/act arity. Violations are data, not failures.
ValidationReport validate(const MachineDoc& doc);

/// Compiles a validated description into an operational machine.
/// Throws std::invalid_argument listing the violations if validation fails.
Machine compile(const MachineDoc& doc);

/// Inverse of compile(); loses nothing, round-trips exactly.
MachineDoc to_doc(const Machine& m);

/// One tape of a configuration, represented as the cells strictly left of
/// the cursor (leftmost first), the scanned cell, and the cells to the
/// right. Bytes index the machine's tape alphabet. Canonical form strips
/// trailing blanks from `right` only; cells in `left` were really visited
/// and are kept.
struct Tape {
    std::string left;
    Symbol head = 0;
    std::string right;

    bool operator==(const Tape&) const = default;
};

struct Configuration {
    StateIdx state = 0;
    std::vector<Tape> tapes;

    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    size_t operator()(const Configuration& c) const;
};

/// Removes trailing blanks from every tape's right component. Idempotent
/// and semantics-preserving.
Configuration canonicalize(const Machine& m, Configuration c);

/// The initial configuration for `input`: cursor on a blank cell with the
/// input written to its right on tape 1, auxiliary tapes blank.
/// Throws std::invalid_argument if a glyph is not an input symbol.
Configuration initial_config(const Machine& m, std::string_view input_glyphs);
Configuration initial_config(const Machine& m, std::span<const Symbol> input);

/// All configurations yielded by one step, paired with the index of the
/// rule that produced them, in rule-list order. Results are canonical.
/// Empty iff `c` is a dead end.
std::vector<std::pair<uint32_t, Configuration>> successors(const Machine& m,
                                                           const Configuration& c);

struct ConfigClass {
    StateKind kind;
    bool dead_end;  // no applicable rule: universal accepts, existential rejects
};

ConfigClass classify_config(const Machine& m, const Configuration& c);

/// Renders a configuration as "state | u[g]v | ..." using symbol spellings.
std::string format_configuration(const Machine& m, const Configuration& c);

}  // namespace altm
