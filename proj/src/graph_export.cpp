#include "altm/graph_export.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace altm::exports {

namespace {

const char* kind_name(StateKind k) {
    return k == StateKind::Existential ? "existential" : "universal";
}

const char* verdict_color(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "palegreen";
        case Verdict::Rejected: return "lightcoral";
        default: return "lightgray";
    }
}

std::string escape_dot(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string export_dot(const Machine& m, const PivotGraph& g, const SolveResult& s) {
    std::ostringstream os;
    os << "digraph pivots {\n";
    os << "  rankdir=LR;\n";
    os << "  node [fontname=\"monospace\"];\n";
    for (NodeId i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        os << "  n" << i << " [shape="
           << (n.kind == StateKind::Existential ? "diamond" : "box")
           << ", style=\"filled" << (g.is_truncated(i) ? ",dashed" : "")
           << "\", fillcolor=" << verdict_color(s.verdicts[i])
           << (i == g.root ? ", peripheries=2" : "") << ", label=\""
           << escape_dot(format_configuration(m, n.config)) << "\\n"
           << to_string(s.verdicts[i]) << "\"];\n";
    }
    for (NodeId i = 0; i < g.nodes.size(); ++i)
        for (NodeId p : g.nodes[i].pivots) os << "  n" << i << " -> n" << p << ";\n";
    os << "}\n";
    return os.str();
}

std::string export_json(const Machine& m, const PivotGraph& g, const SolveResult& s) {
    nlohmann::ordered_json doc;
    doc["machine"] = m.name();
    doc["root"] = g.root;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (NodeId i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        nlohmann::ordered_json node;
        node["id"] = i;
        node["kind"] = kind_name(n.kind);
        node["config"] = format_configuration(m, n.config);
        node["verdict"] = to_string(s.verdicts[i]);
        node["expanded"] = n.expanded;
        node["phase_complete"] = n.phase_complete;
        node["truncated"] = g.is_truncated(i);
        node["depth"] = n.depth;
        node["pivots"] = n.pivots;
        doc["nodes"].push_back(std::move(node));
    }
    doc["stats"] = {{"ac_iterations", s.ac_iterations},
                    {"rc_iterations", s.rc_iterations},
                    {"budget_exhausted", s.budget_exhausted}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string export_graph(const Machine& m, const PivotGraph& g, const SolveResult& s,
                         Format format) {
    if (s.verdicts.size() != g.nodes.size())
        throw std::invalid_argument("solve result does not match graph");
    return format == Format::Dot ? export_dot(m, g, s) : export_json(m, g, s);
}

}  // namespace altm::exports
