// Shared fixtures for the test suites: tiny reference machines, the
// random-machine corpus sampler, and independent oracles (exhaustive
// closed-subset search, deterministic matrix runs, brute-force witness
// search, and the tuple-order successor).

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "altm/hierarchy.hpp"
#include "altm/machine.hpp"
#include "altm/semantics.hpp"

namespace altm::testing {

// --- reference machines -------------------------------------------------

/// One universal state, no rules: accepts everything vacuously.
Machine make_u0();
/// One existential state, no rules: rejects everything.
Machine make_e0();
/// One existential state looping on the blank: still rejects (empty pivot
/// set, cycle detected).
Machine make_self_loop();
/// Existential and universal states pivoting into each other forever:
/// neither accepts nor rejects.
Machine make_mutual_loop();
/// Deterministic scanners over {a,b} deciding input length parity.
Machine make_even();
Machine make_odd();
/// "starts with a" and its complement "empty or starts with b".
Machine make_starts_a();
Machine make_starts_b_or_empty();
/// "length >= 2" and its complement "length <= 1".
Machine make_len_ge2();
Machine make_len_le1();

// --- corpus --------------------------------------------------------------

/// Deterministic sample of small machines: up to `max_states` states over
/// input {a,b}, tape {a,b,_}, up to `max_rules` rules.
struct CorpusParams {
    uint32_t count = 1000;
    uint32_t seed = 20240811;
    unsigned max_states = 3;
    unsigned max_rules = 4;
};
std::vector<Machine> sample_corpus(const CorpusParams& params);

/// All strings over {a,b} of length <= max_len, shortlex order.
std::vector<std::string> inputs_up_to(unsigned max_len);

// --- oracles -------------------------------------------------------------

/// Least set closed under the acceptance (accepting=true) or rejection
/// closure conditions, found by enumerating every subset of the graph's
/// nodes and intersecting the closed ones. Only for graphs with <= 20
/// nodes.
std::vector<char> least_closed_set_bruteforce(const PivotGraph& g, bool accepting);

enum class MatrixOutcome { Accept, Reject, Stuck, DidNotHalt };

/// Runs a matrix machine directly (single-step simulation, no pivot-graph
/// machinery) on the tape `_ w # s1 # ... # sr` from its start state.
MatrixOutcome run_matrix(const hierarchy::MatrixAcceptor& matrix, const std::string& w,
                         const std::vector<std::string>& tuple, unsigned max_steps = 100000);

/// All r-tuples over {a,b}* with every component of length <= max_len.
std::vector<std::vector<std::string>> all_tuples(unsigned r, unsigned max_len);

/// Whether some tuple (components over {a,b}, length <= max_len) drives the
/// matrix to Accept on input w.
bool witness_exists(const hierarchy::MatrixAcceptor& matrix, const std::string& w,
                    unsigned max_len);

/// Length-first lexicographic successor of a packed tuple block over
/// `sigma` with exactly `separators` '#' characters ('#' sorts first).
std::string next_block(const std::string& block, const std::string& sigma,
                       unsigned separators);

// --- test matrices -------------------------------------------------------

hierarchy::MatrixAcceptor matrix_accept_all(unsigned arity);
hierarchy::MatrixAcceptor matrix_reject_all(unsigned arity);
/// Accepts iff the first witness segment is nonempty.
hierarchy::MatrixAcceptor matrix_first_nonempty();
/// Accepts iff the first witness segment starts with 'a'.
hierarchy::MatrixAcceptor matrix_starts_a();
/// Accepts iff the first witness segment has even length.
hierarchy::MatrixAcceptor matrix_even_witness();
/// Accepts iff the first witness segment equals the input (uses tag
/// symbols, so not suitable where rejecting runs must leave the tape
/// unchanged).
hierarchy::MatrixAcceptor matrix_eq_input();
/// Rejects exactly the witness "b".
hierarchy::MatrixAcceptor matrix_not_b();
/// Accepts iff the tape holds at least two '#' separators; under the
/// unbounded-alternation layout that means the z-block is nonempty.
hierarchy::MatrixAcceptor matrix_two_hashes();

}  // namespace altm::testing
