#include "gmr/rewrite.hpp"

#include <algorithm>
#include <tuple>

#include "gmr/error.hpp"

namespace gmr {

Rule invert(const Rule& r) { return Rule{r.right, r.kernel, r.left}; }

std::set<std::string, std::less<>> rule_indexes(const Rule& r) {
    std::set<std::string, std::less<>> out = r.left.indexes();
    out.insert(r.kernel.indexes().begin(), r.kernel.indexes().end());
    out.insert(r.right.indexes().begin(), r.right.indexes().end());
    return out;
}

namespace {

void check_inclusion(const IGraph& k, const IGraph& side, const char* name) {
    Report r = check_morphism(identity_morphism(k), k, side);
    if (!r.passed()) {
        throw StructureError(std::string("K is not included in ") + name + ": " + r.lines().front());
    }
}

}  // namespace

void check_inclusions(const Rule& r) {
    for (const auto& v : r.kernel.nodes()) {
        if (!r.left.has_node(v)) throw StructureError("K node '" + v + "' missing from L");
        if (!r.right.has_node(v)) throw StructureError("K node '" + v + "' missing from R");
    }
    for (const auto& [id, a] : r.kernel.arcs()) {
        if (!r.left.has_arc(id)) throw StructureError("K arc '" + id + "' missing from L");
        if (!r.right.has_arc(id)) throw StructureError("K arc '" + id + "' missing from R");
    }
    check_inclusion(r.kernel, r.left, "L");
    check_inclusion(r.kernel, r.right, "R");
}

Report validate_rule(const Rule& r) {
    check_inclusions(r);
    Report report;
    const auto indexes = rule_indexes(r);
    auto side = [&](const IGraph& one, const IGraph& other, const char* one_name, const char* other_name) {
        for (const auto& v : one.nodes()) {
            for (const auto& i : indexes) {
                if (one.label(i, v)) continue;
                if (!r.kernel.has_node(v)) {
                    report.fail("rule-label", {v, i},
                                std::string("unlabelled in ") + one_name + " but not in K");
                } else if (other.label(i, v)) {
                    report.fail("rule-label", {v, i},
                                std::string("unlabelled in ") + one_name + " but labelled in " + other_name);
                }
            }
        }
        for (const auto& [id, a] : one.arcs()) {
            if (a.label) continue;
            if (!r.kernel.has_arc(id)) {
                report.fail("rule-arc-label", {id}, std::string("unlabelled in ") + one_name + " but not in K");
            } else if (other.arc(id).label) {
                report.fail("rule-arc-label", {id},
                            std::string("unlabelled in ") + one_name + " but labelled in " + other_name);
            }
        }
    };
    side(r.left, r.right, "L", "R");
    side(r.right, r.left, "R", "L");
    return report;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool labels_preserved(const IGraph& left, const std::string& x, const IGraph& g, const std::string& y) {
    for (const auto& i : left.indexes()) {
        const Value* lv = left.label(i, x);
        if (!lv) continue;
        const Value* gv = g.label(i, y);
        if (!gv || !(*gv == *lv)) return false;
    }
    return true;
}

bool arc_compatible(const Arc& pattern, const Arc& host) {
    return !pattern.label || pattern.label == host.label;
}

// (direction, label) -> count; label -1 stands for any.
using DegreeSignature = std::map<std::pair<int, int>, int>;

DegreeSignature degree_signature(const IGraph& g, const std::string& v) {
    DegreeSignature s;
    for (const auto& e : g.out_arcs(v)) {
        const auto& l = g.arc(e).label;
        ++s[{0, l ? l->index : -1}];
    }
    for (const auto& e : g.in_arcs(v)) {
        const auto& l = g.arc(e).label;
        ++s[{1, l ? l->index : -1}];
    }
    return s;
}

// A host node can host a pattern node only if it has at least as many arcs
// of each (direction, label) and at least as many arcs overall per direction.
bool dominates(const DegreeSignature& host, const DegreeSignature& pattern) {
    int total[2] = {0, 0};
    int host_total[2] = {0, 0};
    for (const auto& [key, count] : host) host_total[key.first] += count;
    for (const auto& [key, count] : pattern) {
        total[key.first] += count;
        if (key.second < 0) continue;
        auto it = host.find(key);
        if (it == host.end() || it->second < count) return false;
    }
    return total[0] <= host_total[0] && total[1] <= host_total[1];
}

class Matcher {
public:
    Matcher(const IGraph& left, const IGraph& g, const MatchOptions& options)
        : left_(left), g_(g), options_(options) {}

    std::vector<Match> run() {
        for (const auto& [x, y] : options_.bindings) {
            if (!left_.has_node(x)) throw StructureError("binding for unknown pattern node '" + x + "'");
            if (!g_.has_node(y)) throw StructureError("binding to unknown host node '" + y + "'");
        }
        plan_order();
        std::vector<std::string> hosts(g_.nodes().begin(), g_.nodes().end());
        for (const auto& x : order_) {
            auto sig = degree_signature(left_, x);
            auto bound = options_.bindings.find(x);
            for (const auto& y : hosts) {
                if (bound != options_.bindings.end() && bound->second != y) continue;
                if (!labels_preserved(left_, x, g_, y)) continue;
                if (!dominates(degree_signature(g_, y), sig)) continue;
                candidates_[x].push_back(y);
            }
        }
        arc_order_.assign(left_.arcs().size(), nullptr);
        std::size_t k = 0;
        for (const auto& entry : left_.arcs()) arc_order_[k++] = &entry;
        extend_nodes(0);
        return std::move(out_);
    }

private:
    // Connected order: smallest unplaced neighbour of the placed set first,
    // falling back to the smallest unplaced name.
    void plan_order() {
        std::set<std::string> placed;
        while (placed.size() < left_.node_count()) {
            std::optional<std::string> next;
            for (const auto& x : placed) {
                auto consider = [&](const std::string& y) {
                    if (!placed.contains(y) && (!next || y < *next)) next = y;
                };
                for (const auto& e : left_.out_arcs(x)) consider(left_.arc(e).target);
                for (const auto& e : left_.in_arcs(x)) consider(left_.arc(e).source);
            }
            if (!next) {
                for (const auto& x : left_.nodes()) {
                    if (!placed.contains(x)) {
                        next = x;
                        break;
                    }
                }
            }
            placed.insert(*next);
            order_.push_back(*next);
        }
        // an arc to an earlier node narrows the candidates to host neighbours
        anchors_.assign(order_.size(), std::nullopt);
        std::map<std::string, std::size_t> rank;
        for (std::size_t d = 0; d < order_.size(); ++d) rank[order_[d]] = d;
        for (std::size_t d = 0; d < order_.size(); ++d) {
            const std::string& x = order_[d];
            for (const auto& e : left_.in_arcs(x))
                if (rank.at(left_.arc(e).source) < d) anchors_[d] = Anchor{left_.arc(e).source, true};
            for (const auto& e : left_.out_arcs(x))
                if (rank.at(left_.arc(e).target) < d) anchors_[d] = Anchor{left_.arc(e).target, false};
        }
    }

    // Host candidates for order_[depth], in candidate order.
    std::vector<std::string> narrowed(std::size_t depth) const {
        auto it = candidates_.find(order_[depth]);
        if (it == candidates_.end()) return {};
        const auto& all = it->second;
        if (!anchors_[depth]) return all;
        const std::string& p = node_map_.at(anchors_[depth]->node);
        std::vector<std::string> out;
        if (anchors_[depth]->forward) {
            for (const auto& h : g_.out_arcs(p)) out.push_back(g_.arc(h).target);
        } else {
            for (const auto& h : g_.in_arcs(p)) out.push_back(g_.arc(h).source);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        std::erase_if(out, [&](const std::string& y) { return !std::binary_search(all.begin(), all.end(), y); });
        return out;
    }

    bool done() const { return options_.limit && out_.size() >= options_.limit; }

    // Every pattern arc between x and already placed nodes has a host candidate.
    bool arcs_feasible(const std::string& x) const {
        auto check = [&](const std::string& e) {
            const Arc& a = left_.arc(e);
            auto s = node_map_.find(a.source);
            auto t = node_map_.find(a.target);
            if (s == node_map_.end() || t == node_map_.end()) return true;
            for (const auto& h : g_.out_arcs(s->second)) {
                const Arc& b = g_.arc(h);
                if (b.target == t->second && arc_compatible(a, b)) return true;
            }
            return false;
        };
        for (const auto& e : left_.out_arcs(x)) {
            if (!check(e)) return false;
        }
        for (const auto& e : left_.in_arcs(x)) {
            if (!check(e)) return false;
        }
        return true;
    }

    void extend_nodes(std::size_t depth) {
        if (done()) return;
        if (depth == order_.size()) {
            extend_arcs(0);
            return;
        }
        const std::string& x = order_[depth];
        for (const auto& y : narrowed(depth)) {
            if (used_nodes_.contains(y)) continue;
            node_map_[x] = y;
            used_nodes_.insert(y);
            if (arcs_feasible(x)) extend_nodes(depth + 1);
            used_nodes_.erase(y);
            node_map_.erase(x);
            if (done()) return;
        }
    }

    void extend_arcs(std::size_t k) {
        if (done()) return;
        if (k == arc_order_.size()) {
            Match m;
            m.id = "m" + std::to_string(out_.size());
            m.morphism.nodes = node_map_;
            m.morphism.arcs = arc_map_;
            out_.push_back(std::move(m));
            return;
        }
        const auto& [id, a] = *arc_order_[k];
        const std::string& s = node_map_.at(a.source);
        const std::string& t = node_map_.at(a.target);
        for (const auto& h : g_.out_arcs(s)) {
            const Arc& b = g_.arc(h);
            if (b.target != t || !arc_compatible(a, b) || used_arcs_.contains(h)) continue;
            arc_map_[id] = h;
            used_arcs_.insert(h);
            extend_arcs(k + 1);
            used_arcs_.erase(h);
            arc_map_.erase(id);
            if (done()) return;
        }
    }

    const IGraph& left_;
    const IGraph& g_;
    const MatchOptions& options_;
    std::vector<std::string> order_;
    std::map<std::string, std::vector<std::string>> candidates_;
    struct Anchor {
        std::string node;
        bool forward;  // the pattern arc runs from the anchor to the node
    };
    std::vector<std::optional<Anchor>> anchors_;
    std::vector<const std::pair<const std::string, Arc>*> arc_order_;
    std::map<std::string, std::string> node_map_;
    std::map<std::string, std::string> arc_map_;
    std::set<std::string> used_nodes_;
    std::set<std::string> used_arcs_;
    std::vector<Match> out_;
};

}  // namespace

std::vector<Match> find_matches(const IGraph& left, const IGraph& g, const MatchOptions& options) {
    return Matcher(left, g, options).run();
}

Report check_match(const IGraph& left, const Morphism& m, const IGraph& g) {
    Report r = check_morphism(m, left, g);
    if (!is_injective(m)) r.fail("injective", {}, "match is not injective");
    return r;
}

Report check_dangling(const Rule& r, const Morphism& m, const IGraph& g) {
    Report report;
    std::set<std::string> image_arcs;
    for (const auto& [x, y] : m.arcs) image_arcs.insert(y);
    for (const auto& x : r.left.nodes()) {
        if (r.kernel.has_node(x)) continue;
        const std::string& v = m.nodes.at(x);
        std::set<std::string> touching(g.out_arcs(v).begin(), g.out_arcs(v).end());
        touching.insert(g.in_arcs(v).begin(), g.in_arcs(v).end());
        for (const auto& e : touching) {
            if (!image_arcs.contains(e)) report.fail("dangling", {v, e}, "deleted node keeps arc " + e);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Direct transformation

namespace {

template <class Exists>
std::string fresh_name(const std::string& prefix, const std::string& item, Exists exists) {
    std::string name = prefix + "." + item;
    for (int k = 1; exists(name); ++k) name = prefix + "." + std::to_string(k) + "." + item;
    return name;
}

}  // namespace

Derivation apply(const Rule& r, const Match& match, const IGraph& g) {
    if (Report v = validate_rule(r); !v.passed()) {
        throw StructureError("invalid rule: " + v.lines().front());
    }
    const Morphism& m = match.morphism;
    if (Report v = check_match(r.left, m, g); !v.passed()) {
        throw StructureError("invalid match: " + v.lines().front());
    }
    if (Report v = check_dangling(r, m, g); !v.passed()) {
        throw DanglingError("dangling condition fails: " + v.lines().front());
    }

    // D
    IGraph h = g;
    for (const auto& [id, a] : r.left.arcs()) {
        if (!r.kernel.has_arc(id)) h.remove_arc(m.arcs.at(id));
    }
    for (const auto& x : r.left.nodes()) {
        if (!r.kernel.has_node(x)) h.remove_node(m.nodes.at(x));
    }
    for (const auto& x : r.kernel.nodes()) {
        for (const auto& i : r.left.indexes()) {
            if (r.left.label(i, x) && !r.kernel.label(i, x)) h.clear_label(i, m.nodes.at(x));
        }
    }
    for (const auto& [id, a] : r.kernel.arcs()) {
        if (r.left.arc(id).label && !a.label) h.set_arc_label(m.arcs.at(id), std::nullopt);
    }

    // H
    for (const auto& i : r.right.indexes()) {
        if (!h.has_index(i)) h.add_index(i);
    }
    Derivation out;
    for (const auto& x : r.right.nodes()) {
        if (r.kernel.has_node(x)) {
            out.comatch.nodes.emplace(x, m.nodes.at(x));
            continue;
        }
        std::string name = fresh_name(match.id, x, [&](const std::string& n) { return h.has_node(n); });
        h.add_node(name);
        out.comatch.nodes.emplace(x, name);
    }
    for (const auto& [id, a] : r.right.arcs()) {
        if (r.kernel.has_arc(id)) {
            const std::string& image = m.arcs.at(id);
            if (a.label) h.set_arc_label(image, a.label);
            out.comatch.arcs.emplace(id, image);
            continue;
        }
        std::string name = fresh_name(match.id, id, [&](const std::string& n) { return h.has_arc(n); });
        h.add_arc(name, out.comatch.nodes.at(a.source), out.comatch.nodes.at(a.target), a.label);
        out.comatch.arcs.emplace(id, name);
    }
    for (const auto& i : r.right.indexes()) {
        for (const auto& [x, value] : r.right.labelling(i)) h.set_label(i, out.comatch.nodes.at(x), value);
    }
    out.result = std::move(h);
    return out;
}

}  // namespace gmr
