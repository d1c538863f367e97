#include "gmr/labelled_graph.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "gmr/error.hpp"

namespace gmr {

std::string to_string(ArcLabel label) { return "a" + std::to_string(label.index); }

std::optional<ArcLabel> parse_arc_label(std::string_view text) {
    if (text.size() < 2 || text[0] != 'a') return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) return std::nullopt;
    if (text.size() > 2 && text[1] == '0') return std::nullopt;
    return ArcLabel{value};
}

// ---------------------------------------------------------------------------
// IGraph

IGraph::IGraph(std::set<std::string, std::less<>> indexes) {
    for (const auto& i : indexes) add_index(i);
}

void IGraph::add_index(const std::string& index) {
    indexes_.insert(index);
    labels_.try_emplace(index);
}

void IGraph::add_node(const std::string& id) {
    if (!nodes_.insert(id).second) throw StructureError("duplicate node '" + id + "'");
    out_.try_emplace(id);
    in_.try_emplace(id);
}

void IGraph::remove_node(const std::string& id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw StructureError("unknown node '" + id + "'");
    if (!out_[id].empty() || !in_[id].empty()) {
        throw StructureError("node '" + id + "' still has incident arcs");
    }
    for (auto& [index, labelling] : labels_) labelling.erase(id);
    out_.erase(id);
    in_.erase(id);
    nodes_.erase(it);
}

namespace {

void insert_sorted(std::vector<std::string>& v, const std::string& id) {
    v.insert(std::lower_bound(v.begin(), v.end(), id), id);
}

void erase_sorted(std::vector<std::string>& v, const std::string& id) {
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it != v.end() && *it == id) v.erase(it);
}

const std::vector<std::string> kNoArcs;
const NodeLabelling kNoLabels;

}  // namespace

void IGraph::add_arc(const std::string& id, const std::string& source, const std::string& target,
                     std::optional<ArcLabel> label) {
    if (!has_node(source)) throw StructureError("arc '" + id + "': unknown source '" + source + "'");
    if (!has_node(target)) throw StructureError("arc '" + id + "': unknown target '" + target + "'");
    if (!arcs_.emplace(id, Arc{source, target, label}).second) {
        throw StructureError("duplicate arc '" + id + "'");
    }
    insert_sorted(out_[source], id);
    insert_sorted(in_[target], id);
}

void IGraph::remove_arc(const std::string& id) {
    auto it = arcs_.find(id);
    if (it == arcs_.end()) throw StructureError("unknown arc '" + id + "'");
    erase_sorted(out_[it->second.source], id);
    erase_sorted(in_[it->second.target], id);
    arcs_.erase(it);
}

const Arc& IGraph::arc(std::string_view id) const {
    auto it = arcs_.find(id);
    if (it == arcs_.end()) throw StructureError("unknown arc '" + std::string(id) + "'");
    return it->second;
}

void IGraph::set_arc_label(const std::string& id, std::optional<ArcLabel> label) {
    auto it = arcs_.find(id);
    if (it == arcs_.end()) throw StructureError("unknown arc '" + id + "'");
    it->second.label = label;
}

const std::vector<std::string>& IGraph::out_arcs(std::string_view node) const {
    auto it = out_.find(node);
    return it == out_.end() ? kNoArcs : it->second;
}

const std::vector<std::string>& IGraph::in_arcs(std::string_view node) const {
    auto it = in_.find(node);
    return it == in_.end() ? kNoArcs : it->second;
}

const Value* IGraph::label(std::string_view index, std::string_view node) const {
    auto li = labels_.find(index);
    if (li == labels_.end()) return nullptr;
    auto it = li->second.find(node);
    return it == li->second.end() ? nullptr : &it->second;
}

void IGraph::set_label(const std::string& index, const std::string& node, Value value) {
    if (!has_index(index)) throw StructureError("undeclared label index '" + index + "'");
    if (!has_node(node)) throw StructureError("unknown node '" + node + "'");
    labels_[index].insert_or_assign(node, std::move(value));
}

void IGraph::clear_label(std::string_view index, std::string_view node) {
    auto li = labels_.find(index);
    if (li == labels_.end()) return;
    auto it = li->second.find(node);
    if (it != li->second.end()) li->second.erase(it);
}

const NodeLabelling& IGraph::labelling(std::string_view index) const {
    auto it = labels_.find(index);
    return it == labels_.end() ? kNoLabels : it->second;
}

bool operator==(const IGraph& a, const IGraph& b) {
    return a.indexes_ == b.indexes_ && a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_ &&
           a.labels_ == b.labels_;
}

// ---------------------------------------------------------------------------
// Morphisms

Morphism identity_morphism(const IGraph& g) {
    Morphism m;
    for (const auto& v : g.nodes()) m.nodes.emplace(v, v);
    for (const auto& [id, arc] : g.arcs()) m.arcs.emplace(id, id);
    return m;
}

Morphism compose(const Morphism& second, const Morphism& first) {
    Morphism out;
    for (const auto& [x, y] : first.nodes) {
        auto it = second.nodes.find(y);
        if (it == second.nodes.end()) throw StructureError("compose: node '" + y + "' not mapped");
        out.nodes.emplace(x, it->second);
    }
    for (const auto& [x, y] : first.arcs) {
        auto it = second.arcs.find(y);
        if (it == second.arcs.end()) throw StructureError("compose: arc '" + y + "' not mapped");
        out.arcs.emplace(x, it->second);
    }
    return out;
}

bool is_injective(const Morphism& m) {
    std::set<std::string> seen;
    for (const auto& [x, y] : m.nodes) {
        if (!seen.insert(y).second) return false;
    }
    seen.clear();
    for (const auto& [x, y] : m.arcs) {
        if (!seen.insert(y).second) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Base, projection, product

namespace {

IGraph copy_base(const IGraph& g, const std::set<std::string, std::less<>>& indexes) {
    IGraph out(indexes);
    for (const auto& v : g.nodes()) out.add_node(v);
    for (const auto& [id, arc] : g.arcs()) out.add_arc(id, arc.source, arc.target, arc.label);
    return out;
}

}  // namespace

IGraph strip_labels(const IGraph& g) { return copy_base(g, g.indexes()); }

IGraph project(const IGraph& g, std::string_view index) {
    if (!g.has_index(index)) {
        throw StructureError("project: unknown index '" + std::string(index) + "'");
    }
    std::string key(index);
    IGraph out = copy_base(g, {key});
    for (const auto& [node, value] : g.labelling(index)) out.set_label(key, node, value);
    return out;
}

bool same_base(const IGraph& a, const IGraph& b) {
    return a.nodes() == b.nodes() && a.arcs() == b.arcs();
}

namespace {

std::string first_base_difference(const IGraph& a, const IGraph& b) {
    for (const auto& v : a.nodes()) {
        if (!b.has_node(v)) return "node '" + v + "'";
    }
    for (const auto& v : b.nodes()) {
        if (!a.has_node(v)) return "node '" + v + "'";
    }
    for (const auto& [id, arc] : a.arcs()) {
        if (!b.has_arc(id) || !(b.arc(id) == arc)) return "arc '" + id + "'";
    }
    for (const auto& [id, arc] : b.arcs()) {
        if (!a.has_arc(id)) return "arc '" + id + "'";
    }
    return {};
}

}  // namespace

IGraph product(std::span<const IGraph> components) {
    if (components.empty()) return IGraph{};
    std::set<std::string, std::less<>> indexes;
    for (const auto& c : components) {
        if (auto diff = first_base_difference(components.front(), c); !diff.empty()) {
            throw StructureError("product: components differ at " + diff);
        }
        for (const auto& i : c.indexes()) {
            if (!indexes.insert(i).second) {
                throw StructureError("product: index '" + i + "' occurs in two components");
            }
        }
    }
    IGraph out = copy_base(components.front(), indexes);
    for (const auto& c : components) {
        for (const auto& i : c.indexes()) {
            for (const auto& [node, value] : c.labelling(i)) out.set_label(i, node, value);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// check_morphism

Report check_morphism(const Morphism& g, const IGraph& from, const IGraph& to) {
    for (const auto& [x, y] : g.nodes) {
        if (!from.has_node(x)) throw StructureError("morphism maps unknown node '" + x + "'");
        if (!to.has_node(y)) throw StructureError("morphism targets unknown node '" + y + "'");
    }
    for (const auto& [x, y] : g.arcs) {
        if (!from.has_arc(x)) throw StructureError("morphism maps unknown arc '" + x + "'");
        if (!to.has_arc(y)) throw StructureError("morphism targets unknown arc '" + y + "'");
    }
    Report report;
    for (const auto& v : from.nodes()) {
        if (!g.nodes.contains(v)) report.fail("total", {v}, "node not mapped");
    }
    for (const auto& [id, arc] : from.arcs()) {
        auto it = g.arcs.find(id);
        if (it == g.arcs.end()) {
            report.fail("total", {id}, "arc not mapped");
            continue;
        }
        const Arc& image = to.arc(it->second);
        auto src = g.nodes.find(arc.source);
        auto tgt = g.nodes.find(arc.target);
        if (src != g.nodes.end() && src->second != image.source) {
            report.fail("source", {id, it->second}, "source not preserved");
        }
        if (tgt != g.nodes.end() && tgt->second != image.target) {
            report.fail("target", {id, it->second}, "target not preserved");
        }
        if (arc.label && image.label != arc.label) {
            report.fail("arc-label", {id, it->second},
                        to_string(*arc.label) + " mapped to " +
                            (image.label ? to_string(*image.label) : std::string("unlabelled")));
        }
    }
    for (const auto& index : from.indexes()) {
        for (const auto& [node, value] : from.labelling(index)) {
            auto it = g.nodes.find(node);
            if (it == g.nodes.end()) continue;
            const Value* image = to.label(index, it->second);
            if (!image || !(*image == value)) {
                report.fail("node-label", {node, it->second, index},
                            to_string(value) + " not preserved");
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Pushout

namespace {

struct PushoutPlan {
    std::map<std::string, std::string> c_node_image;
    std::map<std::string, std::string> c_arc_image;
    // preimages in C (through g ∘ f⁻¹) of every B item
    std::map<std::string, std::vector<std::string>> b_node_partners;
    std::map<std::string, std::vector<std::string>> b_arc_partners;
};

PushoutPlan plan_pushout(const Morphism& f, const Morphism& g, const IGraph& b, const IGraph& c) {
    PushoutPlan plan;
    for (const auto& v : b.nodes()) plan.b_node_partners[v];
    for (const auto& [id, arc] : b.arcs()) plan.b_arc_partners[id];
    for (const auto& [a_node, c_node] : g.nodes) {
        const std::string& b_node = f.nodes.at(a_node);
        plan.c_node_image[c_node] = "B:" + b_node;
        plan.b_node_partners[b_node].push_back(c_node);
    }
    for (const auto& [a_arc, c_arc] : g.arcs) {
        const std::string& b_arc = f.arcs.at(a_arc);
        plan.c_arc_image[c_arc] = "B:" + b_arc;
        plan.b_arc_partners[b_arc].push_back(c_arc);
    }
    for (const auto& v : c.nodes()) plan.c_node_image.try_emplace(v, "C:" + v);
    for (const auto& [id, arc] : c.arcs()) plan.c_arc_image.try_emplace(id, "C:" + id);
    return plan;
}

// Builds D's base plus, when `index` is set, that single node labelling.
PushoutResult pushout_component(const PushoutPlan& plan, const IGraph& b, const IGraph& c,
                                const std::string* index) {
    std::set<std::string, std::less<>> indexes;
    if (index) indexes.insert(*index);
    PushoutResult out{IGraph(indexes), {}, {}};
    IGraph& d = out.object;

    for (const auto& v : b.nodes()) {
        d.add_node("B:" + v);
        out.from_b.nodes.emplace(v, "B:" + v);
    }
    for (const auto& v : c.nodes()) {
        const std::string& image = plan.c_node_image.at(v);
        if (!d.has_node(image)) d.add_node(image);
        out.from_c.nodes.emplace(v, image);
    }
    for (const auto& [id, arc] : b.arcs()) {
        std::optional<ArcLabel> label = arc.label;
        for (const auto& partner : plan.b_arc_partners.at(id)) {
            const auto& other = c.arc(partner).label;
            if (!other) continue;
            if (label && *label != *other) {
                throw PushoutError("pushout: arc '" + id + "' receives labels " + to_string(*label) +
                                   " and " + to_string(*other));
            }
            label = other;
        }
        d.add_arc("B:" + id, "B:" + arc.source, "B:" + arc.target, label);
        out.from_b.arcs.emplace(id, "B:" + id);
    }
    for (const auto& [id, arc] : c.arcs()) {
        const std::string& image = plan.c_arc_image.at(id);
        if (!d.has_arc(image)) {
            d.add_arc(image, plan.c_node_image.at(arc.source), plan.c_node_image.at(arc.target),
                      arc.label);
        }
        out.from_c.arcs.emplace(id, image);
    }

    if (index) {
        for (const auto& v : b.nodes()) {
            const Value* value = b.label(*index, v);
            for (const auto& partner : plan.b_node_partners.at(v)) {
                const Value* other = c.label(*index, partner);
                if (!other) continue;
                if (value && !(*value == *other)) {
                    throw PushoutError("pushout: node '" + v + "' receives two '" + *index +
                                       "' labels " + to_string(*value) + " and " +
                                       to_string(*other));
                }
                value = other;
            }
            if (value) d.set_label(*index, "B:" + v, *value);
        }
        for (const auto& v : c.nodes()) {
            const std::string& image = plan.c_node_image.at(v);
            if (image.rfind("C:", 0) != 0) continue;
            if (const Value* value = c.label(*index, v)) d.set_label(*index, image, *value);
        }
    }
    return out;
}

// The i-component of g, declaring i even when g does not.
IGraph component(const IGraph& g, const std::string& index) {
    if (g.has_index(index)) return project(g, index);
    IGraph out = copy_base(g, {index});
    return out;
}

}  // namespace

PushoutResult pushout(const Morphism& f, const Morphism& g, const IGraph& a, const IGraph& b,
                      const IGraph& c) {
    if (auto r = check_morphism(f, a, b); !r.passed()) {
        throw PushoutError("pushout: f is not a morphism A -> B: " + r.lines().front());
    }
    if (auto r = check_morphism(g, a, c); !r.passed()) {
        throw PushoutError("pushout: g is not a morphism A -> C: " + r.lines().front());
    }
    if (!is_injective(g)) throw PushoutError("pushout: g is not injective");

    const PushoutPlan plan = plan_pushout(f, g, b, c);

    std::set<std::string, std::less<>> indexes = b.indexes();
    indexes.insert(c.indexes().begin(), c.indexes().end());
    if (indexes.empty()) return pushout_component(plan, b, c, nullptr);

    std::vector<IGraph> parts;
    PushoutResult result;
    bool first = true;
    for (const auto& index : indexes) {
        PushoutResult part = pushout_component(plan, component(b, index), component(c, index), &index);
        if (first) {
            result.from_b = part.from_b;
            result.from_c = part.from_c;
            first = false;
        }
        parts.push_back(std::move(part.object));
    }
    result.object = product(parts);
    return result;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using LabelBag = std::vector<int>;  // -1 for unlabelled arcs

int label_code(const std::optional<ArcLabel>& l) { return l ? l->index : -1; }

struct NodeSignature {
    LabelBag out;
    LabelBag in;
    std::vector<std::optional<Value>> labels;

    bool operator==(const NodeSignature& o) const {
        return out == o.out && in == o.in && labels == o.labels;
    }
};

NodeSignature signature(const IGraph& g, const std::string& v) {
    NodeSignature s;
    for (const auto& e : g.out_arcs(v)) s.out.push_back(label_code(g.arc(e).label));
    for (const auto& e : g.in_arcs(v)) s.in.push_back(label_code(g.arc(e).label));
    std::sort(s.out.begin(), s.out.end());
    std::sort(s.in.begin(), s.in.end());
    for (const auto& i : g.indexes()) {
        const Value* value = g.label(i, v);
        s.labels.push_back(value ? std::optional<Value>(*value) : std::nullopt);
    }
    return s;
}

LabelBag arcs_between(const IGraph& g, const std::string& u, const std::string& v) {
    LabelBag bag;
    for (const auto& e : g.out_arcs(u)) {
        const Arc& arc = g.arc(e);
        if (arc.target == v) bag.push_back(label_code(arc.label));
    }
    std::sort(bag.begin(), bag.end());
    return bag;
}

class IsoSearch {
public:
    IsoSearch(const IGraph& g, const IGraph& h) : g_(g), h_(h) {}

    std::optional<Morphism> run() {
        if (g_.indexes() != h_.indexes() || g_.node_count() != h_.node_count() ||
            g_.arc_count() != h_.arc_count()) {
            return std::nullopt;
        }
        std::vector<std::string> h_nodes(h_.nodes().begin(), h_.nodes().end());
        std::vector<NodeSignature> h_sigs;
        for (const auto& v : h_nodes) h_sigs.push_back(signature(h_, v));
        for (const auto& v : g_.nodes()) {
            NodeSignature s = signature(g_, v);
            std::vector<std::string> cands;
            for (std::size_t k = 0; k < h_nodes.size(); ++k) {
                if (h_sigs[k] == s) cands.push_back(h_nodes[k]);
            }
            if (cands.empty()) return std::nullopt;
            order_.push_back(v);
            candidates_[v] = std::move(cands);
        }
        // most constrained first, then connected order would be nicer, but
        // signatures already prune G-map shaped graphs well
        std::stable_sort(order_.begin(), order_.end(), [&](const auto& x, const auto& y) {
            return candidates_[x].size() < candidates_[y].size();
        });
        if (!extend(0)) return std::nullopt;
        return build();
    }

private:
    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        const std::string& v = order_[depth];
        for (const auto& cand : candidates_[v]) {
            if (used_.contains(cand)) continue;
            if (!consistent(v, cand)) continue;
            map_[v] = cand;
            used_.insert(cand);
            if (extend(depth + 1)) return true;
            used_.erase(cand);
            map_.erase(v);
        }
        return false;
    }

    bool consistent(const std::string& v, const std::string& image) const {
        if (arcs_between(g_, v, v) != arcs_between(h_, image, image)) return false;
        for (const auto& [w, wi] : map_) {
            if (arcs_between(g_, v, w) != arcs_between(h_, image, wi)) return false;
            if (arcs_between(g_, w, v) != arcs_between(h_, wi, image)) return false;
        }
        return true;
    }

    Morphism build() const {
        Morphism m;
        m.nodes = map_;
        // parallel arcs with equal labels are interchangeable; pair them in id order
        std::map<std::tuple<std::string, std::string, int>, std::vector<std::string>> pool;
        for (const auto& [id, arc] : h_.arcs()) {
            pool[{arc.source, arc.target, label_code(arc.label)}].push_back(id);
        }
        for (const auto& [id, arc] : g_.arcs()) {
            auto& bucket =
                pool[{map_.at(arc.source), map_.at(arc.target), label_code(arc.label)}];
            m.arcs.emplace(id, bucket.front());
            bucket.erase(bucket.begin());
        }
        return m;
    }

    const IGraph& g_;
    const IGraph& h_;
    std::vector<std::string> order_;
    std::map<std::string, std::vector<std::string>> candidates_;
    std::map<std::string, std::string> map_;
    std::set<std::string> used_;
};

}  // namespace

std::optional<Morphism> find_isomorphism(const IGraph& g, const IGraph& h) {
    return IsoSearch(g, h).run();
}

bool isomorphic(const IGraph& g, const IGraph& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace gmr
