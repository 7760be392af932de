#include "altm/text_format.hpp"

#include <algorithm>
#include <sstream>

namespace altm::textio {

namespace {

struct Token {
    std::string text;
    int column;
};

struct Line {
    int number;
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++lineno;
        Line line{lineno, {}};
        size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            // '#' opens a comment only at the start of a line; elsewhere it
            // is an ordinary glyph (the compilers use it as a separator).
            if (raw[i] == '#' && line.tokens.empty()) break;
            size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            line.tokens.push_back({std::string(raw.substr(start, i - start)),
                                   static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return lines;
}

[[noreturn]] void fail(const Line& line, int column, const std::string& msg) {
    throw ParseError(line.number, column, msg);
}

void expect_count(const Line& line, size_t n, const char* what) {
    if (line.tokens.size() != n)
        fail(line, 1, std::string("expected `") + what + "`");
}

std::vector<std::string> split_glyphs(const Line& line, const Token& tok) {
    std::vector<std::string> out;
    for (char c : tok.text) {
        if (c == ',') continue;
        if (c == '+' || c == '-')
            fail(line, tok.column, "'+' and '-' are reserved action glyphs");
        out.emplace_back(1, c);
    }
    return out;
}

std::vector<std::string> split_list(const Line& line, const Token& tok, unsigned tapes) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok.text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    for (const auto& p : parts) {
        if (p.size() != 1)
            fail(line, tok.column, "expected one glyph per tape (got '" + tok.text + "')");
    }
    if (parts.size() != tapes)
        fail(line, tok.column,
             "expected " + std::to_string(tapes) + " entries, got " +
                 std::to_string(parts.size()));
    return parts;
}

}  // namespace

MachineDoc parse_machine(std::string_view text) {
    MachineDoc doc;
    bool saw_machine = false, saw_tape = false, saw_start = false;

    for (const Line& line : tokenize(text)) {
        const std::string& kw = line.tokens[0].text;
        if (kw == "machine") {
            expect_count(line, 2, "machine NAME");
            doc.name = line.tokens[1].text;
            saw_machine = true;
        } else if (kw == "tapes") {
            expect_count(line, 2, "tapes N");
            try {
                doc.tapes = static_cast<unsigned>(std::stoul(line.tokens[1].text));
            } catch (const std::exception&) {
                fail(line, line.tokens[1].column, "tape count must be a number");
            }
            if (doc.tapes == 0)
                fail(line, line.tokens[1].column, "tape count must be positive");
        } else if (kw == "input") {
            if (line.tokens.size() > 2) expect_count(line, 2, "input GLYPHS");
            doc.input = line.tokens.size() == 2 ? split_glyphs(line, line.tokens[1])
                                                : std::vector<std::string>{};
        } else if (kw == "tape") {
            expect_count(line, 2, "tape GLYPHS");
            doc.gamma = split_glyphs(line, line.tokens[1]);
            saw_tape = true;
        } else if (kw == "blank") {
            expect_count(line, 2, "blank GLYPH");
            if (line.tokens[1].text.size() != 1)
                fail(line, line.tokens[1].column, "blank must be a single glyph");
            doc.blank = line.tokens[1].text;
        } else if (kw == "state") {
            expect_count(line, 3, "state NAME KIND");
            const std::string& kind = line.tokens[2].text;
            if (kind != "existential" && kind != "universal")
                fail(line, line.tokens[2].column,
                     "state kind must be 'existential' or 'universal'");
            doc.states.push_back({line.tokens[1].text, kind == "existential"
                                                           ? StateKind::Existential
                                                           : StateKind::Universal});
        } else if (kw == "start") {
            expect_count(line, 2, "start NAME");
            doc.start = line.tokens[1].text;
            saw_start = true;
        } else if (kw == "rule") {
            expect_count(line, 5, "rule FROM READS ACTS TO");
            MachineDoc::RuleSpec rs;
            rs.from = line.tokens[1].text;
            rs.to = line.tokens[4].text;
            rs.reads = split_list(line, line.tokens[2], doc.tapes);
            for (const auto& a : split_list(line, line.tokens[3], doc.tapes)) {
                if (a == "+") rs.acts.push_back({'+', {}});
                else if (a == "-") rs.acts.push_back({'-', {}});
                else rs.acts.push_back({'=', a});
            }
            doc.rules.push_back(std::move(rs));
        } else {
            fail(line, line.tokens[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (!saw_machine) throw ParseError(1, 1, "missing `machine NAME` line");
    if (!saw_tape) throw ParseError(1, 1, "missing `tape GLYPHS` line");
    if (!saw_start) throw ParseError(1, 1, "missing `start NAME` line");
    return doc;
}

namespace {

std::string join_glyphs(const std::vector<std::string>& glyphs) {
    std::string out;
    for (const auto& g : glyphs) out += g;
    return out;
}

void check_serializable(const MachineDoc& doc) {
    for (const auto& g : doc.gamma) {
        if (g.size() != 1 || g == "+" || g == "-" ||
            std::isspace(static_cast<unsigned char>(g[0])) || g[0] == ',')
            throw std::invalid_argument(
                "symbol '" + g + "' cannot be written in the single-glyph text format");
    }
    auto check_name = [](const std::string& n) {
        if (n.empty() || n.find_first_of(" \t\n") != std::string::npos)
            throw std::invalid_argument("name '" + n + "' cannot be serialized");
    };
    check_name(doc.name);
    for (const auto& st : doc.states) check_name(st.name);
}

}  // namespace

std::string serialize_machine(const MachineDoc& doc) {
    check_serializable(doc);
    std::ostringstream os;
    os << "machine " << doc.name << "\n";
    os << "tapes " << doc.tapes << "\n";
    os << "input";
    if (!doc.input.empty()) os << " " << join_glyphs(doc.input);
    os << "\n";
    os << "tape " << join_glyphs(doc.gamma) << "\n";
    os << "blank " << doc.blank << "\n";
    for (const auto& st : doc.states)
        os << "state " << st.name << " "
           << (st.kind == StateKind::Existential ? "existential" : "universal") << "\n";
    os << "start " << doc.start << "\n";
    for (const auto& r : doc.rules) {
        os << "rule " << r.from << " ";
        for (size_t i = 0; i < r.reads.size(); ++i) os << (i ? "," : "") << r.reads[i];
        os << " ";
        for (size_t i = 0; i < r.acts.size(); ++i) {
            os << (i ? "," : "");
            if (r.acts[i].op == '=') os << r.acts[i].symbol;
            else os << r.acts[i].op;
        }
        os << " " << r.to << "\n";
    }
    return os.str();
}

std::string serialize_machine(const Machine& m) { return serialize_machine(to_doc(m)); }

Machine load_machine(std::string_view text) { return compile(parse_machine(text)); }

FormulaDoc parse_formula(std::string_view text) {
    FormulaDoc doc;
    bool saw_blocks = false, saw_accept = false, saw_reject = false;

    // Header lines come first; everything from the `machine` line onward is
    // the inline matrix description.
    size_t machine_at = std::string_view::npos;
    {
        size_t pos = 0;
        while (pos < text.size()) {
            size_t eol = text.find('\n', pos);
            std::string_view raw =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                               : eol - pos);
            size_t first = raw.find_first_not_of(" \t");
            if (first != std::string_view::npos &&
                raw.substr(first).starts_with("machine")) {
                machine_at = pos;
                break;
            }
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
    }
    if (machine_at == std::string_view::npos)
        throw ParseError(1, 1, "formula file must embed a matrix machine description");

    for (const Line& line : tokenize(text.substr(0, machine_at))) {
        const std::string& kw = line.tokens[0].text;
        if (kw == "blocks") {
            if (line.tokens.size() < 2) fail(line, 1, "expected `blocks KIND:N ...`");
            for (size_t i = 1; i < line.tokens.size(); ++i) {
                const auto& tok = line.tokens[i];
                size_t colon = tok.text.find(':');
                std::string kind = tok.text.substr(0, colon);
                unsigned count = 1;
                if (colon != std::string::npos) {
                    try {
                        count = static_cast<unsigned>(std::stoul(tok.text.substr(colon + 1)));
                    } catch (const std::exception&) {
                        fail(line, tok.column, "variable count must be a number");
                    }
                }
                if (kind == "exists")
                    doc.blocks.push_back({hierarchy::Quantifier::Exists, count});
                else if (kind == "forall")
                    doc.blocks.push_back({hierarchy::Quantifier::Forall, count});
                else
                    fail(line, tok.column, "block kind must be 'exists' or 'forall'");
            }
            saw_blocks = true;
        } else if (kw == "accept") {
            expect_count(line, 2, "accept STATE");
            doc.accept_state = line.tokens[1].text;
            saw_accept = true;
        } else if (kw == "reject") {
            expect_count(line, 2, "reject STATE");
            doc.reject_state = line.tokens[1].text;
            saw_reject = true;
        } else {
            fail(line, line.tokens[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (!saw_blocks) throw ParseError(1, 1, "missing `blocks` line");
    if (!saw_accept || !saw_reject)
        throw ParseError(1, 1, "missing `accept`/`reject` state lines");
    doc.matrix = parse_machine(text.substr(machine_at));
    return doc;
}

hierarchy::FormulaSpec build_formula_spec(const FormulaDoc& doc) {
    Machine matrix = compile(doc.matrix);
    auto acc = matrix.find_state(doc.accept_state);
    auto rej = matrix.find_state(doc.reject_state);
    if (!acc) throw std::invalid_argument("unknown accept state '" + doc.accept_state + "'");
    if (!rej) throw std::invalid_argument("unknown reject state '" + doc.reject_state + "'");

    unsigned arity = 0;
    for (const auto& b : doc.blocks) arity += b.var_count;

    hierarchy::FormulaSpec spec{doc.blocks, {std::move(matrix), *acc, *rej, arity}};
    auto problems = hierarchy::validate_formula(spec);
    if (!problems.empty()) {
        std::ostringstream os;
        os << "invalid formula specification:";
        for (const auto& p : problems) os << "\n  " << p;
        throw std::invalid_argument(os.str());
    }
    return spec;
}

}  // namespace altm::textio
