#include "commands.hpp"

#include <CLI11.hpp>

#include "gmr/consistency.hpp"
#include "gmr/expression.hpp"
#include "gmr/io.hpp"
#include "gmr/svg.hpp"

namespace gmr::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == sep) {
            out.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    out.push_back(item);
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// a=x,b=y
std::map<std::string, std::string> parse_bindings(const std::string& text) {
    std::map<std::string, std::string> out;
    if (strip(text).empty()) return out;
    for (const auto& item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("binding '" + item + "' is not name=node");
        std::string k = strip(item.substr(0, eq)), v = strip(item.substr(eq + 1));
        if (k.empty() || v.empty()) throw UsageError("binding '" + item + "' is not name=node");
        if (!out.emplace(k, v).second) throw UsageError("variable '" + k + "' bound twice");
    }
    return out;
}

// point:<a1 a2>:point;color:<a0 a1>:color
std::vector<EmbeddingOp> parse_signature(const std::string& text) {
    std::vector<EmbeddingOp> out;
    if (strip(text).empty()) return out;
    for (const auto& item : split(text, ';')) {
        auto parts = split(item, ':');
        if (parts.size() != 3) throw UsageError("signature entry '" + item + "' is not name:<orbit>:sort");
        EmbeddingOp op{strip(parts[0]), parse_orbit_type(strip(parts[1])), strip(parts[2])};
        out.push_back(std::move(op));
    }
    return out;
}

void print(std::ostream& out, const Report& r) {
    for (const auto& line : r.lines()) out << line << '\n';
    if (r.passed()) out << "PASS\n";
}

int verdict(const Report& r) { return r.passed() ? kPass : kFail; }

std::string describe(const Match& m) {
    std::string line = m.id;
    for (const auto& [x, y] : m.morphism.nodes) line += " " + x + "=" + y;
    return line;
}

struct Options {
    bool force = false;
    // check-rule
    int dim = -1;
    std::string signature;
    // match / apply
    std::string bindings;
    bool first = false;
    bool all = false;
    bool unsafe = false;
    std::size_t limit = 0;
    std::string output;
    // orbit / eval
    std::string orbit_type;
    std::string expression;
    std::string path;
    std::vector<std::string> files;
    std::string node;
};

GMap load_host(const std::string& path, bool force) { return parse_gmap(read_file(path), force); }

int cmd_check(const Options& o, std::ostream& out) {
    GMap g = load_host(o.files.at(0), true);
    Report r = check_gmap(g);
    print(out, r);
    return verdict(r);
}

GMapSpec override_spec(GMapSpec spec, const Options& o) {
    if (o.dim >= 0) spec.dimension = o.dim;
    if (!o.signature.empty()) spec.embeddings = parse_signature(o.signature);
    spec.validate();
    return spec;
}

int cmd_check_rule(const Options& o, std::ostream& out) {
    auto doc = parse_rule_or_scheme(read_file(o.files.at(0)));
    Report r;
    if (auto* rule = std::get_if<RuleDocument>(&doc)) {
        r = check_rule(rule->rule, override_spec(rule->spec, o));
    } else {
        RuleScheme scheme = std::get<RuleScheme>(doc);
        scheme.spec = override_spec(scheme.spec, o);
        r = validate_scheme(scheme);
    }
    print(out, r);
    return verdict(r);
}

const IGraph& pattern_of(const std::variant<RuleDocument, RuleScheme>& doc) {
    if (auto* rule = std::get_if<RuleDocument>(&doc)) return rule->rule.left;
    return std::get<RuleScheme>(doc).left.base;
}

int cmd_match(const Options& o, std::ostream& out) {
    auto doc = parse_rule_or_scheme(read_file(o.files.at(0)));
    GMap g = load_host(o.files.at(1), o.force);
    MatchOptions mo{o.limit, parse_bindings(o.bindings)};
    auto matches = find_matches(pattern_of(doc), g.graph, mo);
    for (const auto& m : matches) out << describe(m) << '\n';
    return matches.empty() ? kFail : kPass;
}

int cmd_apply(const Options& o, std::ostream& out, std::ostream& err) {
    auto doc = parse_rule_or_scheme(read_file(o.files.at(0)));
    GMap g = load_host(o.files.at(1), o.force);
    const int selectors = int(!o.bindings.empty()) + int(o.first) + int(o.all);
    if (selectors != 1) throw UsageError("choose exactly one of --match, --first, --all");

    const RuleDocument* rule = std::get_if<RuleDocument>(&doc);
    const RuleScheme* scheme = std::get_if<RuleScheme>(&doc);
    if (scheme && scheme->spec.dimension != g.spec.dimension) {
        throw UsageError("scheme dimension differs from the G-map's");
    }
    if (!o.unsafe) {
        Report r = rule ? check_rule(rule->rule, g.spec) : validate_scheme(*scheme);
        if (!r.passed()) {
            print(out, r);
            err << "refusing to apply an inconsistent rule (use --unsafe)\n";
            return kFail;
        }
    }

    MatchOptions mo;
    mo.bindings = parse_bindings(o.bindings);
    if (o.first) mo.limit = 1;
    const IGraph& pattern = pattern_of(doc);
    auto matches = find_matches(pattern, g.graph, mo);
    if (matches.empty()) {
        out << "FAIL match (no match)\n";
        return kFail;
    }
    if (!o.bindings.empty() && matches.size() > 1 && mo.bindings.size() < pattern.node_count()) {
        throw UsageError("binding selects " + std::to_string(matches.size()) + " matches; bind more nodes");
    }
    if (!o.all) matches.resize(1);

    const Rule* fixed = rule ? &rule->rule : nullptr;
    std::size_t applied = 0;
    for (const auto& m : matches) {
        const bool later = applied > 0;
        try {
            if (later) {
                Report still = check_match(pattern, m.morphism, g.graph);
                if (!still.passed()) {
                    err << "skipping " << m.id << " (no longer a match)\n";
                    continue;
                }
            }
            if (fixed) {
                Report d = check_dangling(*fixed, m.morphism, g.graph);
                if (!d.passed()) {
                    if (o.all) {
                        err << "skipping " << m.id << " (dangling)\n";
                        continue;
                    }
                    print(out, d);
                    return kFail;
                }
                g.graph = apply(*fixed, m, g.graph).result;
            } else {
                Instantiation inst = instantiate(*scheme, m.morphism, g);
                if (!o.unsafe) {
                    Report r = check_rule(inst.rule, g.spec);
                    if (!r.passed()) {
                        print(out, r);
                        err << "refusing: instantiated rule of " << m.id << " is inconsistent\n";
                        return kFail;
                    }
                }
                Report d = check_dangling(inst.rule, inst.match, g.graph);
                if (!d.passed()) {
                    if (o.all) {
                        err << "skipping " << m.id << " (dangling)\n";
                        continue;
                    }
                    print(out, d);
                    return kFail;
                }
                g.graph = apply(inst.rule, Match{m.id, inst.match}, g.graph).result;
            }
            ++applied;
        } catch (const StructureError& e) {
            if (!later) throw;
            err << "skipping " << m.id << " (" << e.what() << ")\n";
        }
    }

    g.graph = canonicalize_arc_ids(g.graph);
    if (!o.unsafe) {
        Report r = check_gmap(g);
        if (!r.passed()) {
            print(out, r);
            err << "refusing: result is not a valid G-map (use --unsafe)\n";
            return kFail;
        }
    }
    if (o.output.empty()) {
        out << write_gmap(g);
    } else {
        save_gmap(g, o.output);
    }
    return kPass;
}

int cmd_orbit(const Options& o, std::ostream& out) {
    GMap g = load_host(o.files.at(0), o.force);
    Orbit orb = orbit(g.graph, parse_orbit_type(o.orbit_type), o.node);
    for (std::size_t k = 0; k < orb.nodes.size(); ++k) out << (k ? " " : "") << orb.nodes[k];
    out << '\n';
    return kPass;
}

int cmd_eval(const Options& o, std::ostream& out) {
    GMap g = load_host(o.files.at(0), o.force);
    ExprPtr e = parse_expression(o.expression, g.spec);
    Assignment sigma;
    for (const auto& [k, v] : parse_bindings(o.bindings)) sigma.emplace(k, v);
    // unbound variables name host nodes directly
    for (const auto& v : variables(*e)) sigma.emplace(v, v);
    Evaluated r = eval(*e, sigma, g);
    if (auto* node = std::get_if<std::string>(&r)) {
        out << *node << '\n';
    } else {
        out << to_string(std::get<Value>(r)) << '\n';
    }
    return kPass;
}

int cmd_render(const Options& o, std::ostream& out) {
    GMap g = load_host(o.files.at(0), o.force);
    std::string svg = render_svg(g);
    if (o.files.size() > 1) {
        write_file(o.files[1], svg);
    } else {
        out << svg;
    }
    return kPass;
}

int cmd_fmt(const Options& o, std::ostream& out) {
    std::string text = read_file(o.files.at(0));
    auto header = text.find_first_not_of(" \t\r\n");
    if (header != std::string::npos && text.compare(header, 5, "gmap ") == 0) {
        out << write_gmap(parse_gmap(text, true));
    } else {
        auto doc = parse_rule_or_scheme(text);
        if (auto* rule = std::get_if<RuleDocument>(&doc)) {
            out << write_rule(*rule);
        } else {
            out << write_scheme(std::get<RuleScheme>(doc));
        }
    }
    return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Embedded generalized maps: checks, rule application and rendering", "gmap"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "Check the G-map and embedding constraints");
    check->add_option("gmap", o.path, "G-map document")->required();

    auto* check_rule_cmd = app.add_subcommand("check-rule", "Check a rule or scheme for consistency preservation");
    check_rule_cmd->add_option("rule", o.path, "rule or scheme document")->required();
    check_rule_cmd->add_option("--dim", o.dim, "override the dimension");
    check_rule_cmd->add_option("--spec", o.signature, "override the signature, e.g. 'point:<a1 a2>:point'");

    auto* match = app.add_subcommand("match", "List matches of a rule's left-hand side");
    match->add_option("files", o.files, "rule and G-map documents")->required()->expected(2);
    match->add_option("--match", o.bindings, "fix some images, a=x,b=y");
    match->add_option("--limit", o.limit, "stop after this many matches");
    match->add_flag("--force", o.force, "load an invalid G-map");

    auto* apply_cmd = app.add_subcommand("apply", "Apply a rule or scheme");
    apply_cmd->add_option("files", o.files, "rule and G-map documents")->required()->expected(2);
    apply_cmd->add_option("--match", o.bindings, "match binding, a=x,b=y");
    apply_cmd->add_flag("--first", o.first, "use the first match");
    apply_cmd->add_flag("--all", o.all, "apply at every initial match still valid in turn");
    apply_cmd->add_option("-o,--output", o.output, "output file (default: stdout)");
    apply_cmd->add_flag("--unsafe", o.unsafe, "skip consistency checks");
    apply_cmd->add_flag("--force", o.force, "load an invalid G-map");

    auto* orbit_cmd = app.add_subcommand("orbit", "Print the nodes of an orbit");
    orbit_cmd->add_option("gmap", o.path, "G-map document")->required();
    orbit_cmd->add_option("node", o.node, "seed node")->required();
    orbit_cmd->add_option("-t,--type", o.orbit_type, "orbit type, e.g. '<a1 a2>'")->required();
    orbit_cmd->add_flag("--force", o.force, "load an invalid G-map");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an embedding expression");
    eval_cmd->add_option("gmap", o.path, "G-map document")->required();
    eval_cmd->add_option("expression", o.expression, "term, e.g. 'a.a0.point'")->required();
    eval_cmd->add_option("--bind", o.bindings, "variable bindings, a=x,b=y");
    eval_cmd->add_flag("--force", o.force, "load an invalid G-map");

    auto* render = app.add_subcommand("render", "Draw a 2-G-map as SVG");
    render->add_option("files", o.files, "G-map document and optional SVG output")->required()->expected(1, 2);
    render->add_flag("--force", o.force, "load an invalid G-map");

    auto* fmt = app.add_subcommand("fmt", "Print a document in canonical form");
    fmt->add_option("file", o.path, "document")->required();

    std::vector<std::string> argv_store{"gmap"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    if (!o.path.empty()) o.files.insert(o.files.begin(), o.path);

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (check_rule_cmd->parsed()) return cmd_check_rule(o, out);
        if (match->parsed()) return cmd_match(o, out);
        if (apply_cmd->parsed()) return cmd_apply(o, out, err);
        if (orbit_cmd->parsed()) return cmd_orbit(o, out);
        if (eval_cmd->parsed()) return cmd_eval(o, out);
        if (render->parsed()) return cmd_render(o, out);
        if (fmt->parsed()) return cmd_fmt(o, out);
    } catch (const InvalidGMapError& e) {
        print(out, e.report());
        err << "error: " << e.what() << '\n';
        return kFail;
    } catch (const DanglingError& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace gmr::cli
