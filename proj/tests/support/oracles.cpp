#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gmr::oracle {

namespace {

std::vector<std::string> names(const IGraph& g) { return {g.nodes().begin(), g.nodes().end()}; }

std::size_t index_of(const std::vector<std::string>& v, const std::string& x) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

bool labels_fit(const IGraph& from, const std::string& x, const IGraph& to, const std::string& y) {
    for (const auto& index : from.indexes()) {
        const Value* a = from.label(index, x);
        if (!a) continue;
        const Value* b = to.has_index(index) ? to.label(index, y) : nullptr;
        if (!b || !(*a == *b)) return false;
    }
    return true;
}

bool arc_fits(const Arc& a, const Arc& b) { return !a.label || a.label == b.label; }

std::size_t defined_labels(const IGraph& g) {
    std::size_t n = 0;
    for (const auto& index : g.indexes()) n += g.labelling(index).size();
    return n;
}

std::size_t labelled_arcs(const IGraph& g) {
    return static_cast<std::size_t>(
        std::count_if(g.arcs().begin(), g.arcs().end(), [](const auto& kv) { return kv.second.label.has_value(); }));
}

}  // namespace

std::vector<std::vector<bool>> closure(const IGraph& g, const OrbitType& o) {
    auto ids = names(g);
    const std::size_t n = ids.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < n; ++k) r[k][k] = true;
    for (const auto& [id, a] : g.arcs()) {
        if (!a.label || !o.contains(a.label->index)) continue;
        auto s = index_of(ids, a.source), t = index_of(ids, a.target);
        r[s][t] = r[t][s] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

std::set<std::string> closure_orbit(const IGraph& g, const OrbitType& o, const std::string& v) {
    auto ids = names(g);
    auto r = closure(g, o);
    std::set<std::string> out;
    auto s = index_of(ids, v);
    for (std::size_t k = 0; k < ids.size(); ++k)
        if (r[s][k]) out.insert(ids[k]);
    return out;
}

Multiset quotient_collect(const GMap& g, const std::string& pi, const OrbitType& traverse,
                          const std::string& v) {
    const EmbeddingOp* op = g.spec.find(pi);
    auto ids = names(g.graph);
    auto same = closure(g.graph, op->domain);
    auto walk = closure_orbit(g.graph, traverse, v);
    std::vector<std::size_t> representatives;
    for (const auto& w : walk) {
        auto k = index_of(ids, w);
        bool known = std::any_of(representatives.begin(), representatives.end(),
                                 [&](std::size_t r) { return same[r][k]; });
        if (!known) representatives.push_back(k);
    }
    Multiset out;
    for (auto k : representatives) out.push_back(*g.graph.label(pi, ids[k]));
    return out;
}

std::vector<Morphism> all_morphisms(const IGraph& from, const IGraph& to, bool injective, std::size_t limit) {
    std::vector<Morphism> out;
    auto xs = names(from);
    auto ys = names(to);
    std::vector<std::string> arcs;
    for (const auto& [id, a] : from.arcs()) arcs.push_back(id);

    Morphism m;
    std::set<std::string> used_nodes, used_arcs;

    std::function<void(std::size_t)> map_arcs = [&](std::size_t k) {
        if (out.size() >= limit) return;
        if (k == arcs.size()) {
            out.push_back(m);
            return;
        }
        const Arc& a = from.arc(arcs[k]);
        for (const auto& [id, b] : to.arcs()) {
            if (b.source != m.nodes[a.source] || b.target != m.nodes[a.target] || !arc_fits(a, b)) continue;
            if (injective && used_arcs.contains(id)) continue;
            m.arcs[arcs[k]] = id;
            used_arcs.insert(id);
            map_arcs(k + 1);
            used_arcs.erase(id);
            m.arcs.erase(arcs[k]);
        }
    };

    std::function<void(std::size_t)> map_nodes = [&](std::size_t k) {
        if (out.size() >= limit) return;
        if (k == xs.size()) {
            map_arcs(0);
            return;
        }
        for (const auto& y : ys) {
            if (injective && used_nodes.contains(y)) continue;
            if (!labels_fit(from, xs[k], to, y)) continue;
            m.nodes[xs[k]] = y;
            used_nodes.insert(y);
            map_nodes(k + 1);
            used_nodes.erase(y);
            m.nodes.erase(xs[k]);
        }
    };
    map_nodes(0);
    return out;
}

bool isomorphic(const IGraph& a, const IGraph& b) {
    if (a.node_count() != b.node_count() || a.arc_count() != b.arc_count()) return false;
    if (a.indexes() != b.indexes()) return false;
    for (const auto& index : a.indexes()) {
        if (a.labelling(index).size() != b.labelling(index).size()) return false;
    }
    if (defined_labels(a) != defined_labels(b) || labelled_arcs(a) != labelled_arcs(b)) return false;
    return !all_morphisms(a, b, true, 1).empty();
}

std::optional<DpoSteps> explicit_dpo(const Rule& r, const Morphism& m, const IGraph& g) {
    std::set<std::string> deleted_nodes, deleted_arcs;
    for (const auto& x : r.left.nodes())
        if (!r.kernel.has_node(x)) deleted_nodes.insert(m.nodes.at(x));
    for (const auto& [e, a] : r.left.arcs())
        if (!r.kernel.has_arc(e)) deleted_arcs.insert(m.arcs.at(e));
    for (const auto& [id, a] : g.arcs()) {
        if (deleted_arcs.contains(id)) continue;
        if (deleted_nodes.contains(a.source) || deleted_nodes.contains(a.target)) return std::nullopt;
    }

    DpoSteps steps;
    IGraph d = g;
    for (const auto& e : deleted_arcs) d.remove_arc(e);
    for (const auto& v : deleted_nodes) d.remove_node(v);
    for (const auto& x : r.kernel.nodes()) {
        for (const auto& index : r.left.indexes()) {
            if (r.left.label(index, x) && !r.kernel.label(index, x)) d.clear_label(index, m.nodes.at(x));
        }
    }
    for (const auto& [e, a] : r.kernel.arcs()) {
        if (r.left.arc(e).label && !a.label) d.set_arc_label(m.arcs.at(e), std::nullopt);
    }
    steps.context = d;

    Morphism k_to_d;
    for (const auto& x : r.kernel.nodes()) k_to_d.nodes[x] = m.nodes.at(x);
    for (const auto& [e, a] : r.kernel.arcs()) k_to_d.arcs[e] = m.arcs.at(e);
    Morphism k_to_l, k_to_r;
    for (const auto& x : r.kernel.nodes()) k_to_l.nodes[x] = k_to_r.nodes[x] = x;
    for (const auto& [e, a] : r.kernel.arcs()) k_to_l.arcs[e] = k_to_r.arcs[e] = e;

    steps.glued = pushout(k_to_d, k_to_l, r.kernel, d, r.left).object;
    steps.result = pushout(k_to_d, k_to_r, r.kernel, d, r.right).object;
    return steps;
}

}  // namespace gmr::oracle
