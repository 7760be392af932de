// Command-line frontend.
//
// Exit codes: 0 Accepted, 1 Rejected, 2 Unknown, 3 parse/validation/input
// error, 4 usage error, 5 selfcheck found an inconsistency.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "altm/graph_export.hpp"
#include "altm/hierarchy.hpp"
#include "altm/machine.hpp"
#include "altm/semantics.hpp"
#include "altm/text_format.hpp"
#include "altm/transforms.hpp"

namespace {

constexpr int kExitUnknown = 2;
constexpr int kExitDataError = 3;
constexpr int kExitUsage = 4;
constexpr int kExitSelfcheckFailed = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

altm::Machine load(const std::string& path) {
    return altm::textio::load_machine(read_file(path));
}

int verdict_code(altm::Verdict v) {
    switch (v) {
        case altm::Verdict::Accepted: return 0;
        case altm::Verdict::Rejected: return 1;
        default: return kExitUnknown;
    }
}

struct BudgetFlags {
    uint32_t max_configs = 2000;
    uint32_t max_phase_steps = 2000;
    uint32_t max_pivot_depth = 2000;

    altm::Budget budget() const { return {max_configs, max_phase_steps, max_pivot_depth}; }

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-configs", max_configs,
                        "total configuration expansions across all phases")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-phase-steps", max_phase_steps,
                        "distinct configurations explored per phase")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-pivot-depth", max_pivot_depth,
                        "pivot-graph depth expanded from the root")
            ->check(CLI::PositiveNumber);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alternating Turing machines with global acceptance semantics"};
    app.require_subcommand(1);

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "check a machine description");
    std::string validate_file;
    validate_cmd->add_option("file", validate_file, "machine file")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "solve a machine on an input");
    std::string run_file, run_input;
    BudgetFlags run_budget;
    std::vector<std::string> run_export;
    run_cmd->add_option("file", run_file, "machine file")->required();
    run_cmd->add_option("--input", run_input, "input string (glyphs over the input alphabet)");
    run_budget.attach(run_cmd);
    run_cmd->add_option("--export", run_export, "FORMAT PATH: write the solved graph (dot|structured)")
        ->expected(2);

    // transform
    auto* tr_cmd = app.add_subcommand("transform", "apply a machine transformation");
    std::string tr_file, tr_op, tr_out;
    tr_cmd->add_option("file", tr_file, "machine file")->required();
    tr_cmd->add_option("--op", tr_op, "dual|plus|minus|normalize-start")->required();
    tr_cmd->add_option("-o,--output", tr_out, "output file (default stdout)");

    // combine
    auto* cb_cmd = app.add_subcommand("combine", "control-swap product of two machines");
    std::string cb_file0, cb_file1, cb_out;
    cb_cmd->add_option("file0", cb_file0, "machine accepting the language")->required();
    cb_cmd->add_option("file1", cb_file1, "machine rejecting the complement")->required();
    cb_cmd->add_option("-o,--output", cb_out, "output file (default stdout)");

    // classify
    auto* cl_cmd = app.add_subcommand("classify", "alternation level of a machine on an input");
    std::string cl_file, cl_input;
    BudgetFlags cl_budget;
    cl_cmd->add_option("file", cl_file, "machine file")->required();
    cl_cmd->add_option("--input", cl_input, "input string");
    cl_budget.attach(cl_cmd);

    // compile
    auto* cp_cmd = app.add_subcommand("compile", "compile a formula specification to a machine");
    std::string cp_spec, cp_out;
    bool cp_pi11 = false;
    cp_cmd->add_option("--spec", cp_spec, "formula specification file")->required();
    cp_cmd->add_option("-o,--output", cp_out, "output file (default stdout)");
    cp_cmd->add_flag("--pi11", cp_pi11,
                     "ignore the quantifier blocks and build the unbounded-alternation "
                     "machine from the matrix");

    // selfcheck
    auto* sc_cmd = app.add_subcommand("selfcheck",
                                      "cross-check the two solvers and the closure laws");
    std::string sc_file, sc_input;
    BudgetFlags sc_budget;
    sc_cmd->add_option("file", sc_file, "machine file")->required();
    sc_cmd->add_option("--input", sc_input, "input string");
    sc_budget.attach(sc_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate_cmd) {
            auto doc = altm::textio::parse_machine(read_file(validate_file));
            auto rep = altm::validate(doc);
            for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
            for (const auto& e : rep.errors) std::cout << "error: " << e << "\n";
            if (!rep.ok()) {
                std::cout << "invalid\n";
                return kExitDataError;
            }
            std::cout << "ok\n";
            return 0;
        }

        if (*run_cmd) {
            altm::Machine m = load(run_file);
            auto graph = altm::build_pivot_graph(m, altm::initial_config(m, run_input),
                                                 run_budget.budget());
            auto result = altm::solve_fixpoint(graph);
            altm::Verdict v = result.verdicts[graph.root];
            std::cout << altm::to_string(v) << "\n";
            std::cout << "nodes " << graph.nodes.size() << "\n";
            uint32_t truncated = 0;
            for (altm::NodeId i = 0; i < graph.nodes.size(); ++i)
                if (graph.is_truncated(i)) ++truncated;
            std::cout << "truncated " << truncated << "\n";
            std::cout << "ac-iterations " << result.ac_iterations << "\n";
            std::cout << "rc-iterations " << result.rc_iterations << "\n";
            if (!run_export.empty()) {
                altm::exports::Format fmt;
                if (run_export[0] == "dot") fmt = altm::exports::Format::Dot;
                else if (run_export[0] == "structured") fmt = altm::exports::Format::Structured;
                else throw CLI::ValidationError("--export", "format must be dot or structured");
                write_output(run_export[1], altm::exports::export_graph(m, graph, result, fmt));
            }
            return verdict_code(v);
        }

        if (*tr_cmd) {
            altm::Machine m = load(tr_file);
            altm::Machine out = [&] {
                if (tr_op == "dual") return altm::transforms::dual(m);
                if (tr_op == "plus")
                    return altm::transforms::one_sided(m, altm::transforms::Side::Plus);
                if (tr_op == "minus")
                    return altm::transforms::one_sided(m, altm::transforms::Side::Minus);
                if (tr_op == "normalize-start") return altm::transforms::normalize_start(m);
                throw CLI::ValidationError("--op", "must be dual|plus|minus|normalize-start");
            }();
            write_output(tr_out, altm::textio::serialize_machine(out));
            return 0;
        }

        if (*cb_cmd) {
            altm::Machine out = altm::transforms::combine(load(cb_file0), load(cb_file1));
            write_output(cb_out, altm::textio::serialize_machine(out));
            return 0;
        }

        if (*cl_cmd) {
            altm::Machine m = load(cl_file);
            auto rep = altm::hierarchy::classify_level(m, cl_input, cl_budget.budget());
            std::cout << "start-kind "
                      << (rep.start_kind == altm::StateKind::Existential ? "existential"
                                                                         : "universal")
                      << "\n";
            std::cout << "max-pivots-per-branch ";
            if (rep.max_pivots_per_branch) std::cout << *rep.max_pivots_per_branch;
            else std::cout << "exceeded";
            if (rep.exceeded && rep.max_pivots_per_branch) std::cout << " (exceeded)";
            std::cout << "\n";
            std::cout << "level ";
            switch (rep.claimed) {
                case altm::hierarchy::LevelReport::Level::Sigma:
                    std::cout << "Sigma_" << rep.claimed_k;
                    break;
                case altm::hierarchy::LevelReport::Level::Pi:
                    std::cout << "Pi_" << rep.claimed_k;
                    break;
                default: std::cout << "Unknown";
            }
            std::cout << "\n";
            return 0;
        }

        if (*cp_cmd) {
            auto formula = altm::textio::parse_formula(read_file(cp_spec));
            auto spec = altm::textio::build_formula_spec(formula);
            altm::Machine out = cp_pi11 ? altm::hierarchy::compile_pi11(spec.matrix)
                                        : altm::hierarchy::compile_prefix(spec);
            write_output(cp_out, altm::textio::serialize_machine(out));
            return 0;
        }

        if (*sc_cmd) {
            altm::Machine m = load(sc_file);
            auto graph = altm::build_pivot_graph(m, altm::initial_config(m, sc_input),
                                                 sc_budget.budget());
            auto fix = altm::solve_fixpoint(graph);
            auto game = altm::solve_game(graph);
            bool ok = true;
            if (fix.verdicts != game.verdicts) {
                ok = false;
                std::cout << "solver-mismatch: fixpoint and game verdicts differ\n";
            }
            auto violations = altm::check_local_closure(graph, fix);
            for (const auto& v : violations)
                std::cout << "closure-violation node " << v.node << ": " << v.detail << "\n";
            ok = ok && violations.empty();
            uint32_t acc = 0, rej = 0;
            for (altm::NodeId i = 0; i < graph.nodes.size(); ++i) {
                acc += fix.verdicts[i] == altm::Verdict::Accepted;
                rej += fix.verdicts[i] == altm::Verdict::Rejected;
            }
            std::cout << "nodes " << graph.nodes.size() << " accepted " << acc
                      << " rejected " << rej << "\n";
            std::cout << "verdict " << altm::to_string(fix.verdicts[graph.root]) << "\n";
            std::cout << (ok ? "selfcheck ok" : "selfcheck FAILED") << "\n";
            return ok ? verdict_code(fix.verdicts[graph.root]) : kExitSelfcheckFailed;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}
