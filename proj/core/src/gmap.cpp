#include "gmr/gmap.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

#include "gmr/error.hpp"

namespace gmr {

bool OrbitType::contains(int index) const {
    return std::binary_search(labels.begin(), labels.end(), index);
}

std::string to_string(const OrbitType& o) {
    std::string out = "<";
    for (std::size_t k = 0; k < o.labels.size(); ++k) {
        if (k) out += ' ';
        out += "a" + std::to_string(o.labels[k]);
    }
    return out + ">";
}

std::optional<OrbitType> parse_orbit_type_prefix(std::string_view text, std::size_t& pos) {
    std::size_t p = pos;
    auto blank = [&] {
        while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
    };
    blank();
    if (p >= text.size() || text[p] != '<') return std::nullopt;
    ++p;
    OrbitType out;
    while (true) {
        blank();
        if (p < text.size() && text[p] == '>') {
            ++p;
            break;
        }
        std::size_t start = p;
        while (p < text.size() && std::isalnum(static_cast<unsigned char>(text[p]))) ++p;
        auto label = parse_arc_label(text.substr(start, p - start));
        if (!label) return std::nullopt;
        if (!out.labels.empty() && label->index <= out.labels.back()) return std::nullopt;
        out.labels.push_back(label->index);
    }
    pos = p;
    return out;
}

OrbitType parse_orbit_type(std::string_view text) {
    std::size_t pos = 0;
    auto o = parse_orbit_type_prefix(text, pos);
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (!o || pos != text.size()) {
        throw ParseError("not an orbit type (expected e.g. <a0 a1>): '" + std::string(text) + "'");
    }
    return *o;
}

const EmbeddingOp* GMapSpec::find(std::string_view name) const {
    for (const auto& e : embeddings) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

std::set<std::string, std::less<>> GMapSpec::index_set() const {
    std::set<std::string, std::less<>> out;
    for (const auto& e : embeddings) out.insert(e.name);
    return out;
}

void GMapSpec::validate() const {
    if (dimension < 0) throw StructureError("negative dimension");
    std::set<std::string> names;
    for (const auto& e : embeddings) {
        if (!names.insert(e.name).second) throw StructureError("duplicate embedding '" + e.name + "'");
        if (!sort_kind(e.sort)) throw StructureError("embedding '" + e.name + "': unknown sort '" + e.sort + "'");
        if (e.domain.max_label() > dimension) {
            throw StructureError("embedding '" + e.name + "': domain " + to_string(e.domain) +
                                 " exceeds dimension " + std::to_string(dimension));
        }
    }
}

bool Orbit::contains(std::string_view node) const {
    return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
}

namespace {

// Neighbours of v through arcs labelled in o, either direction, sorted by
// (label, neighbour name).
std::vector<std::pair<int, std::string>> orbit_neighbours(const IGraph& g, const OrbitType& o,
                                                         const std::string& v) {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& e : g.out_arcs(v)) {
        const Arc& a = g.arc(e);
        if (a.label && o.contains(a.label->index)) out.emplace_back(a.label->index, a.target);
    }
    for (const auto& e : g.in_arcs(v)) {
        const Arc& a = g.arc(e);
        if (a.label && o.contains(a.label->index)) out.emplace_back(a.label->index, a.source);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Orbit orbit(const IGraph& g, const OrbitType& o, const std::string& v) {
    if (!g.has_node(v)) throw StructureError("unknown node '" + v + "'");
    Orbit out{v, o, {v}, {}};
    std::set<std::string, std::less<>> seen{v};
    std::deque<std::string> queue{v};
    while (!queue.empty()) {
        std::string u = std::move(queue.front());
        queue.pop_front();
        for (auto& [label, w] : orbit_neighbours(g, o, u)) {
            if (seen.insert(w).second) {
                out.nodes.push_back(w);
                queue.push_back(w);
            }
        }
    }
    for (const auto& u : out.nodes) {
        for (const auto& e : g.out_arcs(u)) {
            const Arc& a = g.arc(e);
            if (a.label && o.contains(a.label->index) && seen.contains(a.target)) out.arcs.insert(e);
        }
    }
    return out;
}

std::map<std::string, int, std::less<>> orbit_classes(const IGraph& g, const OrbitType& o) {
    std::vector<std::string> names(g.nodes().begin(), g.nodes().end());
    std::map<std::string_view, int, std::less<>> pos;
    for (std::size_t k = 0; k < names.size(); ++k) pos.emplace(names[k], static_cast<int>(k));
    std::vector<int> parent(names.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [id, a] : g.arcs()) {
        if (!a.label || !o.contains(a.label->index)) continue;
        int x = find(pos.at(a.source));
        int y = find(pos.at(a.target));
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::map<int, int> class_of_root;
    std::map<std::string, int, std::less<>> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        int root = find(static_cast<int>(k));
        auto [it, fresh] = class_of_root.emplace(root, static_cast<int>(class_of_root.size()));
        out.emplace(names[k], it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constraints

Report check_arc_labels(const IGraph& g, int n) {
    Report r;
    for (const auto& [id, a] : g.arcs()) {
        if (!a.label) {
            r.fail("arc-labels", {id}, "unlabelled arc");
        } else if (a.label->index > n) {
            r.fail("arc-labels", {id}, to_string(*a.label) + " exceeds dimension " + std::to_string(n));
        }
    }
    return r;
}

Report check_non_orientation(const IGraph& g) {
    Report r;
    for (const auto& [id, a] : g.arcs()) {
        if (a.source == a.target) continue;
        bool found = false;
        for (const auto& e : g.out_arcs(a.target)) {
            const Arc& b = g.arc(e);
            if (b.target == a.source && b.label == a.label) {
                found = true;
                break;
            }
        }
        if (!found) r.fail("non-orientation", {id}, "no reversed arc");
    }
    return r;
}

Report check_adjacent_arcs(const IGraph& g, int n) {
    Report r;
    for (const auto& v : g.nodes()) {
        std::vector<int> count(static_cast<std::size_t>(n + 1), 0);
        for (const auto& e : g.out_arcs(v)) {
            const auto& label = g.arc(e).label;
            if (!label || label->index > n) {
                r.fail("adjacent-arcs", {v, e}, "arc outside a0..a" + std::to_string(n));
            } else {
                ++count[label->index];
            }
        }
        for (int i = 0; i <= n; ++i) {
            if (count[i] != 1) {
                r.fail("adjacent-arcs", {v, "a" + std::to_string(i)},
                       std::to_string(count[i]) + " arcs instead of 1");
            }
        }
    }
    return r;
}

Report check_cycles(const IGraph& g, int n) {
    Report r;
    if (!check_adjacent_arcs(g, n).passed()) {
        r.block("cycles", "adjacent-arcs failed");
        return r;
    }
    for (const auto& v : g.nodes()) {
        for (int i = 0; i + 2 <= n; ++i) {
            for (int j = i + 2; j <= n; ++j) {
                std::string w = link(g, link(g, link(g, link(g, v, i), j), i), j);
                if (w != v) {
                    r.fail("cycles", {v, "a" + std::to_string(i), "a" + std::to_string(j)},
                           "a" + std::to_string(i) + " a" + std::to_string(j) + " cycle ends at " + w);
                }
            }
        }
    }
    return r;
}

Report check_topology(const IGraph& g, int n) {
    Report r = check_arc_labels(g, n);
    r.merge(check_non_orientation(g));
    r.merge(check_adjacent_arcs(g, n));
    r.merge(check_cycles(g, n));
    return r;
}

Report check_embedding(const GMap& g) {
    Report r;
    for (const auto& pi : g.spec.embeddings) {
        auto kind = sort_kind(pi.sort);
        for (const auto& [node, value] : g.graph.labelling(pi.name)) {
            if (kind && value.kind() != *kind) {
                r.fail("embedding-sort", {pi.name, node},
                       std::string(kind_name(value.kind())) + " value for sort " + pi.sort);
            }
        }
        // group nodes by class, in class order
        auto classes = orbit_classes(g.graph, pi.domain);
        std::map<int, std::vector<std::string>> members;
        for (const auto& [node, c] : classes) members[c].push_back(node);
        for (const auto& [c, nodes] : members) {
            const Value* ref = nullptr;
            std::string ref_node;
            for (const auto& v : nodes) {
                const Value* value = g.graph.label(pi.name, v);
                if (!value) {
                    r.fail("embedding", {pi.name, nodes.front(), v}, "undefined");
                    continue;
                }
                if (!ref) {
                    ref = value;
                    ref_node = v;
                } else if (!(*ref == *value)) {
                    r.fail("embedding", {pi.name, nodes.front(), v},
                           to_string(*value) + " differs from " + to_string(*ref) + " at " + ref_node);
                }
            }
        }
    }
    return r;
}

Report check_gmap(const GMap& g) {
    Report r = check_topology(g.graph, g.spec.dimension);
    r.merge(check_embedding(g));
    return r;
}

// ---------------------------------------------------------------------------
// Embedding algebra

std::optional<Value> access(const GMap& g, std::string_view v, std::string_view pi) {
    if (!g.graph.has_node(v)) throw StructureError("unknown node '" + std::string(v) + "'");
    if (!g.spec.find(pi)) throw StructureError("unknown embedding '" + std::string(pi) + "'");
    const Value* value = g.graph.label(pi, v);
    return value ? std::optional<Value>(*value) : std::nullopt;
}

std::string link(const IGraph& g, std::string_view v, int i) {
    if (!g.has_node(v)) throw StructureError("unknown node '" + std::string(v) + "'");
    const std::string* found = nullptr;
    int count = 0;
    for (const auto& e : g.out_arcs(v)) {
        const Arc& a = g.arc(e);
        if (a.label && a.label->index == i) {
            found = &a.target;
            ++count;
        }
    }
    if (count != 1) {
        throw StructureError("node '" + std::string(v) + "' has " + std::to_string(count) + " a" +
                             std::to_string(i) + " arcs");
    }
    return *found;
}

Multiset collect(const GMap& g, std::string_view pi, const OrbitType& traverse, const std::string& v) {
    const EmbeddingOp* op = g.spec.find(pi);
    if (!op) throw StructureError("unknown embedding '" + std::string(pi) + "'");
    Orbit w = orbit(g.graph, traverse, v);
    auto classes = orbit_classes(g.graph, op->domain);
    std::set<int> seen;
    Multiset out;
    for (const auto& node : w.nodes) {
        if (!seen.insert(classes.at(node)).second) continue;
        const Value* value = g.graph.label(pi, node);
        if (!value) {
            throw EvalError("collect: node '" + node + "' has no " + std::string(pi) + " label");
        }
        out.push_back(*value);
    }
    return out;
}

std::string arc_id(const std::string& u, int i, const std::string& v) {
    return u + "-a" + std::to_string(i) + "-" + v;
}

void add_edge(IGraph& g, const std::string& u, const std::string& v, int i) {
    g.add_arc(arc_id(u, i, v), u, v, ArcLabel{i});
    if (u != v) g.add_arc(arc_id(v, i, u), v, u, ArcLabel{i});
}

}  // namespace gmr
