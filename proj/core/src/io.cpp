#include "gmr/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace gmr {

InvalidGMapError::InvalidGMapError(Report report)
    : Error("document is not a valid G-map: " +
            (report.lines().empty() ? std::string("?") : report.lines().front())),
      report_(std::move(report)) {}

namespace {

struct Line {
    int number;
    std::string text;
};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && blank(s[b])) ++b;
    while (e > b && blank(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string line = trim(text.substr(pos, end - pos));
        // `#` opens a comment only at the start of a line; colours use it too
        if (!line.empty() && line.front() != '#') out.push_back({number, std::move(line)});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool is_ident(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_node_name(std::string_view s) {
    return !s.empty() && s.find('=') == std::string_view::npos &&
           std::none_of(s.begin(), s.end(), [](char c) { return blank(c); });
}

// `k1=v1 k2=v2 ...` where values may contain blanks; a new pair starts at
// an identifier directly followed by `=` after a blank.
std::vector<std::pair<std::string, std::string>> split_assignments(std::string_view s, int line) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && !blank(s[i - 1])) continue;
        if (blank(s[i])) continue;
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        if (j > i && j < s.size() && s[j] == '=' && is_ident(s.substr(i, j - i))) starts.push_back(i);
    }
    std::vector<std::pair<std::string, std::string>> out;
    if (!trim(s).empty() && (starts.empty() || !trim(s.substr(0, starts.front())).empty())) {
        throw ParseError(line, "expected name=value pairs, got '" + trim(s) + "'");
    }
    for (std::size_t k = 0; k < starts.size(); ++k) {
        std::size_t end = k + 1 < starts.size() ? starts[k + 1] : s.size();
        std::string_view pair = s.substr(starts[k], end - starts[k]);
        std::size_t eq = pair.find('=');
        out.emplace_back(std::string(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
    }
    return out;
}

enum class DocKind { GMap, Rule, Scheme };

struct ArcRecord {
    int line;
    bool directed;
    std::string u, v;
    std::optional<ArcLabel> label;
};

struct NodeRecord {
    int line;
    std::string id;
    std::vector<std::pair<std::string, std::string>> labels;
};

struct Section {
    std::vector<NodeRecord> nodes;
    std::vector<ArcRecord> arcs;
};

struct RawDocument {
    DocKind kind;
    GMapSpec spec;
    std::map<int, std::pair<int, std::string>> refs;  // k -> (line, text)
    std::map<char, Section> sections;                  // ' ' for plain G-maps
};

std::string arc_base_id(const std::string& u, const std::optional<ArcLabel>& l, const std::string& v) {
    return u + "-" + (l ? to_string(*l) : std::string("_")) + "-" + v;
}

std::string unique_arc_id(const IGraph& g, const std::string& base) {
    if (!g.has_arc(base)) return base;
    for (int k = 2;; ++k) {
        std::string id = base + "#" + std::to_string(k);
        if (!g.has_arc(id)) return id;
    }
}

RawDocument read_raw(std::string_view text) {
    auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError(1, "empty document");
    RawDocument doc;
    {
        auto words = split_words(lines.front().text);
        if (words.size() != 2) throw ParseError(lines.front().number, "expected 'gmap|rule|scheme <dimension>'");
        if (words[0] == "gmap") {
            doc.kind = DocKind::GMap;
        } else if (words[0] == "rule") {
            doc.kind = DocKind::Rule;
        } else if (words[0] == "scheme") {
            doc.kind = DocKind::Scheme;
        } else {
            throw ParseError(lines.front().number, "unknown document kind '" + words[0] + "'");
        }
        int n = -1;
        try {
            std::size_t used = 0;
            n = std::stoi(words[1], &used);
            if (used != words[1].size()) n = -1;
        } catch (const std::exception&) {
            n = -1;
        }
        if (n < 0) throw ParseError(lines.front().number, "bad dimension '" + words[1] + "'");
        doc.spec.dimension = n;
    }

    char section = doc.kind == DocKind::GMap ? ' ' : 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& [number, line] = lines[k];
        if (line == "L" || line == "K" || line == "R") {
            if (doc.kind == DocKind::GMap) throw ParseError(number, "sections only appear in rules");
            section = line[0];
            if (doc.sections.contains(section)) throw ParseError(number, "section " + line + " repeated");
            doc.sections[section];
            continue;
        }
        std::size_t sp = line.find_first_of(" \t");
        std::string keyword = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));

        if (keyword == "embedding") {
            if (section != 0 && section != ' ') throw ParseError(number, "embedding declared inside a section");
            std::size_t lt = rest.find('<');
            std::size_t gt = rest.find('>');
            if (lt == std::string::npos || gt == std::string::npos || gt < lt) {
                throw ParseError(number, "expected 'embedding <name> <orbit> <sort>'");
            }
            std::string name = trim(rest.substr(0, lt));
            std::string sort = trim(rest.substr(gt + 1));
            if (!is_ident(name)) throw ParseError(number, "bad embedding name '" + name + "'");
            OrbitType domain;
            try {
                domain = parse_orbit_type(rest.substr(lt, gt - lt + 1));
            } catch (const ParseError& e) {
                throw ParseError(number, e.what());
            }
            if (!sort_kind(sort)) throw ParseError(number, "unknown sort '" + sort + "'");
            if (doc.spec.find(name)) throw ParseError(number, "embedding '" + name + "' declared twice");
            if (domain.max_label() > doc.spec.dimension) {
                throw ParseError(number, "orbit " + to_string(domain) + " exceeds dimension");
            }
            doc.spec.embeddings.push_back({name, domain, sort});
            continue;
        }
        if (!keyword.empty() && keyword.front() == '(') {
            if (doc.kind != DocKind::Scheme) throw ParseError(number, "numbered terms only appear in schemes");
            std::size_t close = line.find(')');
            std::size_t eq = line.find('=', close == std::string::npos ? 0 : close);
            int ref = -1;
            if (close != std::string::npos) {
                try {
                    ref = std::stoi(line.substr(1, close - 1));
                } catch (const std::exception&) {
                    ref = -1;
                }
            }
            if (ref < 0 || eq == std::string::npos || !trim(line.substr(close + 1, eq - close - 1)).empty()) {
                throw ParseError(number, "expected '(k) = term'");
            }
            if (doc.refs.contains(ref)) throw ParseError(number, "term (" + std::to_string(ref) + ") defined twice");
            doc.refs[ref] = {number, trim(line.substr(eq + 1))};
            continue;
        }
        if (section == 0) throw ParseError(number, "record outside an L, K or R section");
        Section& s = doc.sections[section];
        if (keyword == "node") {
            std::size_t idsp = rest.find_first_of(" \t");
            NodeRecord rec{number, rest.substr(0, idsp), {}};
            if (!is_node_name(rec.id)) throw ParseError(number, "bad node name '" + rec.id + "'");
            if (idsp != std::string::npos) rec.labels = split_assignments(rest.substr(idsp), number);
            s.nodes.push_back(std::move(rec));
        } else if (keyword == "arc" || keyword == "darc") {
            auto words = split_words(rest);
            if (words.size() != 3) throw ParseError(number, "expected '" + keyword + " <u> <v> <aI|_>'");
            ArcRecord rec{number, keyword == "darc", words[0], words[1], std::nullopt};
            if (words[2] != "_") {
                rec.label = parse_arc_label(words[2]);
                if (!rec.label) throw ParseError(number, "bad arc label '" + words[2] + "'");
                if (rec.label->index > doc.spec.dimension) {
                    throw ParseError(number, "arc label " + words[2] + " exceeds dimension " +
                                                 std::to_string(doc.spec.dimension));
                }
            }
            s.arcs.push_back(std::move(rec));
        } else {
            throw ParseError(number, "unknown record '" + keyword + "'");
        }
    }
    if (doc.kind == DocKind::GMap) {
        doc.sections[' '];
    } else {
        for (char c : {'L', 'K', 'R'}) {
            if (!doc.sections.contains(c)) throw ParseError(0, std::string("missing section ") + c);
        }
    }
    return doc;
}

// Builds the base and records each node's raw label texts.
IGraph build_base(const RawDocument& doc, const Section& s) {
    IGraph g(doc.spec.index_set());
    for (const auto& rec : s.nodes) {
        if (g.has_node(rec.id)) throw ParseError(rec.line, "node '" + rec.id + "' declared twice");
        g.add_node(rec.id);
    }
    for (const auto& rec : s.arcs) {
        for (const auto& end : {rec.u, rec.v}) {
            if (!g.has_node(end)) throw ParseError(rec.line, "unknown node '" + end + "'");
        }
        g.add_arc(unique_arc_id(g, arc_base_id(rec.u, rec.label, rec.v)), rec.u, rec.v, rec.label);
        if (!rec.directed && rec.u != rec.v) {
            g.add_arc(unique_arc_id(g, arc_base_id(rec.v, rec.label, rec.u)), rec.v, rec.u, rec.label);
        }
    }
    return g;
}

const EmbeddingOp& declared(const GMapSpec& spec, const std::string& name, int line) {
    const EmbeddingOp* op = spec.find(name);
    if (!op) throw ParseError(line, "undeclared embedding '" + name + "'");
    return *op;
}

IGraph build_concrete(const RawDocument& doc, const Section& s) {
    IGraph g = build_base(doc, s);
    for (const auto& rec : s.nodes) {
        for (const auto& [key, text] : rec.labels) {
            const EmbeddingOp& op = declared(doc.spec, key, rec.line);
            if (g.label(key, rec.id)) throw ParseError(rec.line, "label '" + key + "' given twice");
            Value v;
            try {
                v = parse_value(text);
            } catch (const ParseError& e) {
                throw ParseError(rec.line, e.what());
            }
            if (v.kind() != *sort_kind(op.sort)) {
                throw ParseError(rec.line, "value " + text + " is not a " + op.sort);
            }
            g.set_label(key, rec.id, std::move(v));
        }
    }
    return g;
}

std::optional<int> reference(std::string_view text) {
    if (text.size() < 3 || text.front() != '(' || text.back() != ')') return std::nullopt;
    std::string_view digits = text.substr(1, text.size() - 2);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return std::nullopt;
    }
    return std::stoi(std::string(digits));
}

GraphScheme build_scheme(const RawDocument& doc, const Section& s, const std::set<std::string>& vars) {
    GraphScheme h{build_base(doc, s), {}};
    ParseOptions options{vars};
    for (const auto& rec : s.nodes) {
        for (const auto& [key, text] : rec.labels) {
            declared(doc.spec, key, rec.line);
            if (h.label(key, rec.id)) throw ParseError(rec.line, "label '" + key + "' given twice");
            std::string term = text;
            int line = rec.line;
            if (auto ref = reference(text)) {
                auto it = doc.refs.find(*ref);
                if (it == doc.refs.end()) throw ParseError(rec.line, "undefined term " + text);
                line = it->second.first;
                term = it->second.second;
            }
            try {
                h.set_label(key, rec.id, parse_expression(term, doc.spec, options));
            } catch (const ParseError& e) {
                throw ParseError(line, e.what());
            } catch (const SortError& e) {
                throw SortError("line " + std::to_string(line) + ": " + e.what());
            }
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Writing

std::string header(const char* kind, const GMapSpec& spec) {
    std::string out = std::string(kind) + " " + std::to_string(spec.dimension) + "\n";
    for (const auto& e : spec.embeddings) {
        out += "embedding " + e.name + " " + to_string(e.domain) + " " + e.sort + "\n";
    }
    return out;
}

std::string arc_records(const IGraph& g) {
    // (label, u, v, directed)
    using Key = std::tuple<int, std::string, std::string, int>;
    std::vector<Key> records;
    std::map<std::tuple<int, std::string, std::string>, int> count;
    for (const auto& [id, a] : g.arcs()) {
        int l = a.label ? a.label->index : 1 << 20;
        ++count[{l, a.source, a.target}];
    }
    for (const auto& [key, n] : count) {
        const auto& [l, u, v] = key;
        if (u == v) {
            for (int k = 0; k < n; ++k) records.emplace_back(l, u, v, 0);
            continue;
        }
        auto back = count.find({l, v, u});
        int reverse = back == count.end() ? 0 : back->second;
        int pairs = std::min(n, reverse);
        if (u < v) {
            for (int k = 0; k < pairs; ++k) records.emplace_back(l, u, v, 0);
        }
        for (int k = pairs; k < n; ++k) records.emplace_back(l, u, v, 1);
    }
    std::sort(records.begin(), records.end());
    std::string out;
    for (const auto& [l, u, v, directed] : records) {
        out += std::string(directed ? "darc " : "arc ") + u + " " + v + " " +
               (l == (1 << 20) ? std::string("_") : "a" + std::to_string(l)) + "\n";
    }
    return out;
}

template <class LabelText>
std::string node_records(const IGraph& g, const GMapSpec& spec, LabelText label_text) {
    std::string out;
    for (const auto& v : g.nodes()) {
        out += "node " + v;
        for (const auto& e : spec.embeddings) {
            if (auto text = label_text(e.name, v)) out += " " + e.name + "=" + *text;
        }
        out += "\n";
    }
    return out;
}

std::string concrete_body(const IGraph& g, const GMapSpec& spec) {
    return node_records(g, spec, [&](const std::string& pi, const std::string& v) -> std::optional<std::string> {
               const Value* value = g.label(pi, v);
               return value ? std::optional<std::string>(to_string(*value)) : std::nullopt;
           }) +
           arc_records(g);
}

}  // namespace

// ---------------------------------------------------------------------------

GMap parse_gmap(std::string_view text, bool force) {
    RawDocument doc = read_raw(text);
    if (doc.kind != DocKind::GMap) throw ParseError(1, "expected a 'gmap' document");
    GMap g{doc.spec, build_concrete(doc, doc.sections.at(' '))};
    if (!force) {
        Report r = check_gmap(g);
        if (!r.passed()) throw InvalidGMapError(std::move(r));
    }
    return g;
}

std::string write_gmap(const GMap& g) {
    std::string out = header("gmap", g.spec);
    if (g.graph.node_count()) {
        out += "\n";
        std::string body = node_records(g.graph, g.spec, [&](const std::string& pi, const std::string& v)
                                                             -> std::optional<std::string> {
            const Value* value = g.graph.label(pi, v);
            return value ? std::optional<std::string>(to_string(*value)) : std::nullopt;
        });
        out += body;
    }
    if (g.graph.arc_count()) out += "\n" + arc_records(g.graph);
    return out;
}

namespace {

Rule build_rule(const RawDocument& doc) {
    Rule r{build_concrete(doc, doc.sections.at('L')), build_concrete(doc, doc.sections.at('K')),
           build_concrete(doc, doc.sections.at('R'))};
    check_inclusions(r);
    return r;
}

std::string sectioned(const char* kind, const GMapSpec& spec, const std::string& preamble,
                      const std::string bodies[3]) {
    std::string out = header(kind, spec) + preamble;
    const char* names[] = {"L", "K", "R"};
    for (int k = 0; k < 3; ++k) out += std::string("\n") + names[k] + "\n" + bodies[k];
    return out;
}

}  // namespace

RuleDocument parse_rule(std::string_view text) {
    RawDocument doc = read_raw(text);
    if (doc.kind != DocKind::Rule) throw ParseError(1, "expected a 'rule' document");
    return RuleDocument{doc.spec, build_rule(doc)};
}

std::string write_rule(const RuleDocument& r) {
    const std::string bodies[3] = {concrete_body(r.rule.left, r.spec), concrete_body(r.rule.kernel, r.spec),
                                   concrete_body(r.rule.right, r.spec)};
    return sectioned("rule", r.spec, "", bodies);
}

RuleScheme parse_scheme(std::string_view text) {
    RawDocument doc = read_raw(text);
    if (doc.kind != DocKind::Scheme) throw ParseError(1, "expected a 'scheme' document");
    std::set<std::string> vars;
    for (const auto& rec : doc.sections.at('L').nodes) vars.insert(rec.id);
    RuleScheme r{doc.spec, build_scheme(doc, doc.sections.at('L'), vars),
                 build_scheme(doc, doc.sections.at('K'), vars), build_scheme(doc, doc.sections.at('R'), vars)};
    check_inclusions(r.base_rule());
    return r;
}

std::string write_scheme(const RuleScheme& r) {
    // number terms by first appearance: L, K, R, nodes in order, embeddings in order
    std::map<std::string, int> numbers;
    std::vector<std::string> texts;
    std::string bodies[3];
    const GraphScheme* sides[] = {&r.left, &r.kernel, &r.right};
    for (int k = 0; k < 3; ++k) {
        const GraphScheme& h = *sides[k];
        bodies[k] = node_records(h.base, r.spec, [&](const std::string& pi, const std::string& v)
                                                     -> std::optional<std::string> {
            const Expr* t = h.label(pi, v);
            if (!t) return std::nullopt;
            std::string text = to_string(*t);
            auto [it, fresh] = numbers.emplace(text, static_cast<int>(texts.size()) + 1);
            if (fresh) texts.push_back(text);
            return "(" + std::to_string(it->second) + ")";
        }) + arc_records(h.base);
    }
    std::string preamble;
    if (!texts.empty()) {
        preamble = "\n";
        for (std::size_t k = 0; k < texts.size(); ++k) {
            preamble += "(" + std::to_string(k + 1) + ") = " + texts[k] + "\n";
        }
    }
    return sectioned("scheme", r.spec, preamble, bodies);
}

std::variant<RuleDocument, RuleScheme> parse_rule_or_scheme(std::string_view text) {
    for (const auto& line : significant_lines(text)) {
        if (line.text.rfind("scheme", 0) == 0) return parse_scheme(text);
        return parse_rule(text);
    }
    throw ParseError(1, "empty document");
}

IGraph canonicalize_arc_ids(const IGraph& g) {
    IGraph out(g.indexes());
    for (const auto& v : g.nodes()) out.add_node(v);
    for (const auto& i : g.indexes()) {
        for (const auto& [v, value] : g.labelling(i)) out.set_label(i, v, value);
    }
    // sort by the canonical base id, then by the old id
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& [id, a] : g.arcs()) order.emplace_back(arc_base_id(a.source, a.label, a.target), id);
    std::sort(order.begin(), order.end());
    for (const auto& [base, id] : order) {
        const Arc& a = g.arc(id);
        out.add_arc(unique_arc_id(out, base), a.source, a.target, a.label);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

GMap load_gmap(const std::filesystem::path& path, bool force) { return parse_gmap(read_file(path), force); }

void save_gmap(const GMap& g, const std::filesystem::path& path) { write_file(path, write_gmap(g)); }

}  // namespace gmr
