#include "gmr/consistency.hpp"

#include <algorithm>
#include <tuple>

namespace gmr {

namespace {

std::string alpha(int i) { return "a" + std::to_string(i); }

std::vector<int> out_labels(const IGraph& g, const std::string& v) {
    std::vector<int> out;
    for (const auto& e : g.out_arcs(v)) {
        const auto& l = g.arc(e).label;
        out.push_back(l ? l->index : -1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string describe(const std::vector<int>& labels) {
    std::string out = "{";
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k) out += ' ';
        out += labels[k] < 0 ? "_" : alpha(labels[k]);
    }
    return out + "}";
}

std::set<std::string> step(const IGraph& g, const std::set<std::string>& from, int label) {
    std::set<std::string> out;
    for (const auto& v : from) {
        for (const auto& e : g.out_arcs(v)) {
            const Arc& a = g.arc(e);
            if (a.label && a.label->index == label) out.insert(a.target);
        }
    }
    return out;
}

void prefix_witnesses(Report& into, const Report& from, const std::string& side) {
    Report prefixed;
    for (const auto& v : from.violations()) {
        std::vector<std::string> w;
        for (const auto& x : v.witness) w.push_back(side + ":" + x);
        prefixed.fail(v.check, std::move(w), v.detail);
    }
    into.merge(prefixed);
}

}  // namespace

bool has_cycle(const IGraph& g, const std::string& v, int i, int j) {
    std::set<std::string> at{v};
    for (int label : {i, j, i, j}) at = step(g, at, label);
    return at.contains(v);
}

Report check_topo_preservation(const Rule& r, int n) {
    Report report;
    const std::pair<const IGraph*, const char*> sides[] = {
        {&r.left, "L"}, {&r.kernel, "K"}, {&r.right, "R"}};
    for (const auto& [g, name] : sides) {
        prefix_witnesses(report, check_arc_labels(*g, n), name);
        prefix_witnesses(report, check_non_orientation(*g), name);
    }

    std::vector<int> full(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) full[i] = i;

    for (const auto& v : r.kernel.nodes()) {
        auto l = out_labels(r.left, v);
        auto rr = out_labels(r.right, v);
        if (l != rr) {
            report.fail("adjacent-arcs", {v},
                        "preserved node has " + describe(l) + " in L and " + describe(rr) + " in R");
        }
    }
    for (const auto& [g, name, kind] :
         {std::tuple{&r.left, "L", "removed"}, std::tuple{&r.right, "R", "added"}}) {
        for (const auto& v : g->nodes()) {
            if (r.kernel.has_node(v)) continue;
            auto labels = out_labels(*g, v);
            if (labels != full) {
                report.fail("adjacent-arcs", {std::string(name) + ":" + v},
                            std::string(kind) + " node has " + describe(labels));
            }
        }
    }

    for (int i = 0; i + 2 <= n; ++i) {
        for (int j = i + 2; j <= n; ++j) {
            const std::string word = alpha(i) + " " + alpha(j);
            for (const auto& v : r.right.nodes()) {
                if (r.kernel.has_node(v)) continue;
                if (!has_cycle(r.right, v, i, j)) {
                    report.fail("cycles", {"R:" + v, alpha(i), alpha(j)},
                                "added node lacks the " + word + " " + word + " cycle");
                }
            }
            for (const auto& v : r.kernel.nodes()) {
                if (has_cycle(r.left, v, i, j)) {
                    if (!has_cycle(r.right, v, i, j)) {
                        report.fail("cycles", {v, alpha(i), alpha(j)},
                                    "cycle " + word + " " + word + " of L lost in R");
                    }
                    continue;
                }
                // incomplete in L: its αi and αj arcs must be kept
                auto kept = [&](const std::vector<std::string>& arcs) {
                    for (const auto& e : arcs) {
                        const auto& label = r.left.arc(e).label;
                        if (!label || (label->index != i && label->index != j)) continue;
                        if (!r.kernel.has_arc(e)) {
                            report.fail("cycles", {v, e},
                                        "incomplete " + word + " " + word + " cycle but arc not preserved");
                        }
                    }
                };
                kept(r.left.out_arcs(v));
                kept(r.left.in_arcs(v));
            }
        }
    }
    return report;
}

Report check_embedding_preservation(const Rule& r, const GMapSpec& spec) {
    Report report;
    for (const auto& pi : spec.embeddings) {
        auto classes = orbit_classes(r.right, pi.domain);
        std::map<int, std::vector<std::string>> members;
        for (const auto& [node, c] : classes) members[c].push_back(node);

        for (const auto& [c, nodes] : members) {
            bool added = std::any_of(nodes.begin(), nodes.end(),
                                     [&](const std::string& v) { return !r.kernel.has_node(v); });
            const Value* first = r.right.label(pi.name, nodes.front());
            for (const auto& v : nodes) {
                const Value* value = r.right.label(pi.name, v);
                bool same = (!first && !value) || (first && value && *first == *value);
                if (!same) {
                    report.fail("embedding-uniformity", {pi.name, nodes.front(), v},
                                added ? "non-consistent added vertex" : "non-uniform orbit");
                }
            }
        }

        std::set<int> reported;
        for (const auto& v : r.right.nodes()) {
            bool trigger = !r.kernel.has_node(v);
            if (!trigger) {
                const Value* before = r.left.label(pi.name, v);
                const Value* after = r.right.label(pi.name, v);
                trigger = (before == nullptr) != (after == nullptr) ||
                          (before && after && !(*before == *after));
            }
            if (!trigger || !reported.insert(classes.at(v)).second) continue;
            Orbit o = orbit(r.right, pi.domain, v);
            for (const auto& w : o.nodes) {
                for (int i : pi.domain.labels) {
                    int count = 0;
                    for (const auto& e : r.right.out_arcs(w)) {
                        const auto& l = r.right.arc(e).label;
                        if (l && l->index == i) ++count;
                    }
                    if (count != 1) {
                        report.fail("embedding-completeness", {pi.name, v, w, alpha(i)},
                                    "incomplete redefinition");
                    }
                }
            }
        }
    }
    return report;
}

Report check_rule(const Rule& r, const GMapSpec& spec) {
    Report report = validate_rule(r);
    Report topo = check_topo_preservation(r, spec.dimension);
    report.merge(topo);
    if (topo.passed()) {
        report.merge(check_embedding_preservation(r, spec));
    } else {
        report.block("embedding-uniformity", "topological preservation failed");
        report.block("embedding-completeness", "topological preservation failed");
    }
    return report;
}

}  // namespace gmr
