// Machine-to-machine constructions: the dual machine, one-sided variants
// that carry an undetermined pivot gadget, start-state normalization, and
// the two-tape control-swap product of two machines.

#pragma once

#include "altm/machine.hpp"

namespace altm::transforms {

/// Same rules and alphabets with existential and universal states
/// interchanged. Involution: dual(dual(m)) == m. Accepts exactly what `m`
/// rejects and vice versa.
Machine dual(const Machine& m);

enum class Side { Plus, Minus };

/// M+ / M-: adds a two-state gadget (a universal and an existential state
/// writing every symbol back and bouncing between each other) whose
/// configurations form a pivot 2-cycle and so are never accepted nor
/// rejected. For Plus, every existential state gains an escape into the
/// gadget, killing every rejection while preserving acceptance; Minus is
/// the dual. Requires a single-tape machine.
Machine one_sided(const Machine& m, Side side);

/// Budget multiplier to use when comparing verdicts of one_sided(m) against
/// m: the gadget adds two states reachable on every tape content, each
/// entered via |gamma| rules.
unsigned one_sided_budget_factor(const Machine& m);

/// Ensures the start state is existential with at most one applicable rule
/// per symbol, prepending a fresh deterministic existential state that
/// copies the scanned symbol back and enters the old start when necessary.
/// Identity on already-normalized machines; idempotent; language-preserving.
Machine normalize_start(const Machine& m);

/// Two-tape product that interleaves m0 (on tape 1) and m1 (on tape 2),
/// swapping control only at phase boundaries: an m0-step keeps control iff
/// both endpoint states are universal, an m1-step keeps it iff both are
/// existential. A deterministic universal preprocessing chain first copies
/// the input to tape 2 and rewinds both cursors. m0 is start-normalized
/// internally. Intended for m0 with no rejected configurations and m1 with
/// no accepted ones, making the product total.
///
/// Throws std::invalid_argument unless both machines are single-tape with
/// identical input and tape alphabets.
Machine combine(const Machine& m0, const Machine& m1);

unsigned combine_budget_factor(const Machine& m0, const Machine& m1);

}  // namespace altm::transforms
