// Line-oriented text formats for machines and formula specifications.
//
// Machine files use single-glyph symbol spellings; `_` is the conventional
// blank and `+`/`-` are reserved for the cursor actions, so neither may be
// declared as a tape symbol. Example:
//
//     machine even
//     tapes 1
//     input ab
//     tape ab_
//     blank _
//     state st existential
//     state chk_even universal
//     state chk_odd existential
//     start st
//     rule st _ + chk_even
//     rule chk_even a + chk_odd
//
// Rule columns are FROM READS ACTS TO where READS/ACTS hold one
// comma-separated entry per tape; an action is `+`, `-`, or the glyph to
// write. `#` starts a comment. Parsing preserves declaration and rule
// order exactly, so parse and serialize round-trip.
//
// A formula file is a quantifier prefix plus an inline matrix machine:
//
//     blocks exists:1 forall:2
//     accept yes
//     reject no
//     machine my_matrix
//     ...machine lines...

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "altm/hierarchy.hpp"
#include "altm/machine.hpp"

namespace altm::textio {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses a machine description. Throws ParseError on malformed syntax or
/// references that cannot be represented (unknown states in rules are
/// reported through validate(), which the caller should run next).
MachineDoc parse_machine(std::string_view text);

std::string serialize_machine(const MachineDoc& doc);
std::string serialize_machine(const Machine& m);

/// Parses and compiles in one step; throws ParseError or
/// std::invalid_argument (validation failure).
Machine load_machine(std::string_view text);

struct FormulaDoc {
    std::vector<hierarchy::QuantifierBlock> blocks;
    std::string accept_state;
    std::string reject_state;
    MachineDoc matrix;
};

FormulaDoc parse_formula(std::string_view text);

/// Resolves and validates a parsed formula into a compiler-ready spec.
hierarchy::FormulaSpec build_formula_spec(const FormulaDoc& doc);

}  // namespace altm::textio
