#include "gmr/scheme.hpp"

#include <algorithm>

#include "gmr/consistency.hpp"
#include "gmr/error.hpp"

namespace gmr {

const Expr* GraphScheme::label(std::string_view pi, std::string_view node) const {
    auto li = labels.find(pi);
    if (li == labels.end()) return nullptr;
    auto it = li->second.find(std::string(node));
    return it == li->second.end() ? nullptr : it->second.get();
}

void GraphScheme::set_label(const std::string& pi, const std::string& node, ExprPtr term) {
    if (!base.has_node(node)) throw StructureError("unknown node '" + node + "'");
    labels[pi][node] = std::move(term);
}

Rule RuleScheme::base_rule() const {
    return Rule{strip_labels(left.base), strip_labels(kernel.base), strip_labels(right.base)};
}

IGraph eval_graph_scheme(const GraphScheme& h, const Assignment& sigma, const GMap& g) {
    IGraph out = strip_labels(h.base);
    for (const auto& [pi, terms] : h.labels) {
        if (!out.has_index(pi)) out.add_index(pi);
        for (const auto& [node, term] : terms) out.set_label(pi, node, eval_value(*term, sigma, g));
    }
    return out;
}

Report validate_scheme(const RuleScheme& r) {
    check_inclusions(r.base_rule());
    Report report;
    for (const auto* side : {&r.left, &r.kernel}) {
        for (const auto& [pi, terms] : side->labels) {
            for (const auto& [node, term] : terms) {
                report.fail("scheme-labelled-left", {side == &r.left ? "L:" + node : "K:" + node, pi},
                            "left-hand side and kernel must be unlabelled");
            }
        }
    }
    for (const auto& [pi, terms] : r.right.labels) {
        const EmbeddingOp* op = r.spec.find(pi);
        if (!op) {
            report.fail("scheme-embedding", {pi}, "undeclared embedding");
            continue;
        }
        const Sort expected = Sort::of(*sort_kind(op->sort));
        for (const auto& [node, term] : terms) {
            if (!(term->sort == expected)) {
                report.fail("scheme-sort", {node, pi}, to_string(term->sort) + " term for sort " + op->sort);
            }
            for (const auto& v : variables(*term)) {
                if (!r.left.base.has_node(v)) {
                    report.fail("scheme-variable", {node, pi, v}, "variable is not a node of L");
                }
            }
        }
    }
    for (const auto& pi : r.spec.embeddings) {
        auto classes = orbit_classes(r.right.base, pi.domain);
        std::map<int, std::vector<std::string>> members;
        for (const auto& [node, c] : classes) members[c].push_back(node);
        for (const auto& [c, nodes] : members) {
            auto text = [&](const std::string& v) {
                const Expr* t = r.right.label(pi.name, v);
                return t ? to_string(*t) : std::string("_");
            };
            const std::string first = text(nodes.front());
            for (const auto& v : nodes) {
                if (text(v) != first) {
                    report.fail("scheme-uniformity", {pi.name, nodes.front(), v},
                                "'" + text(v) + "' differs from '" + first + "'");
                }
            }
        }
    }
    report.merge(check_topo_preservation(r.base_rule(), r.spec.dimension));
    return report;
}

std::vector<Trigger> saturation_triggers(const RuleScheme& r, bool full) {
    std::vector<Trigger> out;
    for (const auto& pi : r.spec.embeddings) {
        for (const auto& v : r.kernel.base.nodes()) {
            if (full || r.right.label(pi.name, v)) out.emplace_back(pi.name, v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

class Saturator {
public:
    Saturator(const RuleScheme& r, const Morphism& m, const GMap& g) : r_(r), m_(m), g_(g) {
        for (const auto& [x, y] : m.nodes) sigma_.emplace(x, y);
    }

    Instantiation run(const InstantiateOptions& options) {
        if (Report check = check_morphism(m_, r_.left.base, g_.graph); !check.passed()) {
            throw StructureError("match is not a morphism: " + check.lines().front());
        }
        if (!is_injective(m_)) throw StructureError("match is not injective");
        const auto indexes = r_.spec.index_set();
        left_ = IGraph(indexes);
        kernel_ = IGraph(indexes);
        right_ = IGraph(indexes);
        base_case();
        for (const auto& t : ordered(options)) saturate(t.first, t.second);

        Instantiation out;
        for (const auto& v : left_.nodes()) out.match.nodes.emplace(v, v);
        for (const auto& [id, a] : left_.arcs()) out.match.arcs.emplace(id, id);
        out.rule = Rule{std::move(left_), std::move(kernel_), std::move(right_)};
        return out;
    }

private:
    std::vector<Trigger> ordered(const InstantiateOptions& options) const {
        std::vector<Trigger> all = saturation_triggers(r_, options.full_saturation);
        std::vector<Trigger> out;
        for (const auto& t : options.order) {
            if (std::find(all.begin(), all.end(), t) != all.end() &&
                std::find(out.begin(), out.end(), t) == out.end()) {
                out.push_back(t);
            }
        }
        for (const auto& t : all) {
            if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
        }
        return out;
    }

    std::string added_name(const std::string& x, bool arc) const {
        auto taken = [&](const std::string& n) { return arc ? g_.graph.has_arc(n) : g_.graph.has_node(n); };
        std::string name = x;
        for (int k = 1; taken(name); ++k) name = x + "." + std::to_string(k);
        return name;
    }

    void copy_host_labels(IGraph& into, const std::string& v) const {
        for (const auto& pi : r_.spec.embeddings) {
            if (const Value* value = g_.graph.label(pi.name, v)) into.set_label(pi.name, v, *value);
        }
    }

    void add_host_arc(IGraph& into, const std::string& id) const {
        const Arc& a = g_.graph.arc(id);
        into.add_arc(id, a.source, a.target, a.label);
    }

    void assign(const std::string& pi, const std::string& node, const Value& value, bool strong) {
        auto key = std::make_pair(pi, node);
        const Value* existing = right_.label(pi, node);
        if (existing) {
            const bool was_strong = strong_.contains(key);
            if (was_strong && strong) {
                if (!(*existing == value)) {
                    throw EvalError("saturation assigns " + pi + " of '" + node + "' both " +
                                    to_string(*existing) + " and " + to_string(value));
                }
                return;
            }
            if (was_strong || !strong) return;
        }
        right_.set_label(pi, node, value);
        if (strong) strong_.insert(key);
    }

    void base_case() {
        for (const auto& x : r_.left.base.nodes()) {
            const std::string& v = m_.nodes.at(x);
            left_.add_node(v);
            copy_host_labels(left_, v);
        }
        for (const auto& [e, a] : r_.left.base.arcs()) add_host_arc(left_, m_.arcs.at(e));
        for (const auto& x : r_.kernel.base.nodes()) {
            kernel_.add_node(m_.nodes.at(x));
            right_.add_node(m_.nodes.at(x));
            matched_kernel_.insert(m_.nodes.at(x));
            names_.emplace(x, m_.nodes.at(x));
        }
        for (const auto& [e, a] : r_.kernel.base.arcs()) {
            add_host_arc(kernel_, m_.arcs.at(e));
            add_host_arc(right_, m_.arcs.at(e));
        }
        for (const auto& x : r_.right.base.nodes()) {
            if (r_.kernel.base.has_node(x)) continue;
            std::string name = added_name(x, false);
            right_.add_node(name);
            names_.emplace(x, name);
        }
        for (const auto& [e, a] : r_.right.base.arcs()) {
            if (r_.kernel.base.has_arc(e)) continue;
            right_.add_arc(added_name(e, true), names_.at(a.source), names_.at(a.target), a.label);
        }
        for (const auto& pi : r_.spec.embeddings) {
            for (const auto& x : r_.right.base.nodes()) {
                if (const Expr* t = r_.right.label(pi.name, x)) {
                    assign(pi.name, names_.at(x), evaluate(*t), true);
                } else if (r_.kernel.base.has_node(x)) {
                    if (const Value* kept = g_.graph.label(pi.name, m_.nodes.at(x))) {
                        assign(pi.name, names_.at(x), *kept, false);
                    }
                }
            }
        }
    }

    Value evaluate(const Expr& t) {
        std::string key = to_string(t);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Value v = eval_value(t, sigma_, g_);
        cache_.emplace(key, v);
        return v;
    }

    void saturate(const std::string& pi, const std::string& v) {
        const EmbeddingOp* op = r_.spec.find(pi);
        const std::string& host = m_.nodes.at(v);
        Orbit o = orbit(g_.graph, op->domain, host);
        const Expr* t = r_.right.label(pi, v);
        std::optional<Value> value;
        if (t) value = evaluate(*t);

        for (const auto& w : o.nodes) {
            const bool deleted = left_.has_node(w) && !kernel_.has_node(w);
            if (!left_.has_node(w)) {
                left_.add_node(w);
                copy_host_labels(left_, w);
            }
            if (deleted) continue;
            if (!kernel_.has_node(w)) {
                kernel_.add_node(w);
                right_.add_node(w);
                // glued context keeps every host label it is not redefined on
                for (const auto& other : r_.spec.embeddings) {
                    if (const Value* hv = g_.graph.label(other.name, w)) assign(other.name, w, *hv, false);
                }
            }
            // matched kernel nodes answer to their own term (or keep)
            if (matched_kernel_.contains(w)) continue;
            if (value) assign(pi, w, *value, true);
        }
        for (const auto& e : o.arcs) {
            if (left_.has_arc(e)) continue;
            add_host_arc(left_, e);
            const Arc& a = g_.graph.arc(e);
            if (kernel_.has_node(a.source) && kernel_.has_node(a.target)) {
                add_host_arc(kernel_, e);
                add_host_arc(right_, e);
            }
        }
    }

    const RuleScheme& r_;
    const Morphism& m_;
    const GMap& g_;
    Assignment sigma_;
    IGraph left_, kernel_, right_;
    std::map<std::string, std::string> names_;  // R_T node -> R[m] node
    std::set<std::string> matched_kernel_;
    std::set<std::pair<std::string, std::string>> strong_;
    std::map<std::string, Value> cache_;
};

}  // namespace

Instantiation instantiate(const RuleScheme& r, const Morphism& m, const GMap& g,
                          const InstantiateOptions& options) {
    return Saturator(r, m, g).run(options);
}

SchemeApplication apply_scheme(const RuleScheme& r, const Match& m, const GMap& g,
                               const InstantiateOptions& options) {
    Instantiation inst = instantiate(r, m.morphism, g, options);
    Derivation d = apply(inst.rule, Match{m.id, inst.match}, g.graph);
    GMap result{g.spec, d.result};
    return SchemeApplication{std::move(inst), std::move(d), std::move(result)};
}

}  // namespace gmr
