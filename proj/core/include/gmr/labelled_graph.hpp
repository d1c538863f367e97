#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmr/report.hpp"
#include "gmr/value.hpp"

namespace gmr {

/// Arc label αi, rendered `a<i>`.
struct ArcLabel {
    int index = 0;
    auto operator<=>(const ArcLabel&) const = default;
};

std::string to_string(ArcLabel label);
/// Accepts `a0`, `a1`, ... ; nullopt otherwise.
std::optional<ArcLabel> parse_arc_label(std::string_view text);

struct Arc {
    std::string source;
    std::string target;
    std::optional<ArcLabel> label;

    friend bool operator==(const Arc&, const Arc&) = default;
};

using NodeLabelling = std::map<std::string, Value, std::less<>>;

/// A directed multigraph with partially labelled arcs and one partial node
/// labelling per declared index. Node and arc ids are opaque strings.
///
/// The index set is explicit: a declared index with no labels is the
/// everywhere-undefined labelling, and labels may only be written for
/// declared indexes.
class IGraph {
public:
    IGraph() = default;
    explicit IGraph(std::set<std::string, std::less<>> indexes);

    const std::set<std::string, std::less<>>& indexes() const { return indexes_; }
    bool has_index(std::string_view index) const { return indexes_.contains(index); }
    void add_index(const std::string& index);

    void add_node(const std::string& id);
    /// Removes the node and its labels. Throws if arcs are still attached.
    void remove_node(const std::string& id);
    bool has_node(std::string_view id) const { return nodes_.contains(id); }
    const std::set<std::string, std::less<>>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }

    void add_arc(const std::string& id, const std::string& source, const std::string& target,
                 std::optional<ArcLabel> label);
    void remove_arc(const std::string& id);
    bool has_arc(std::string_view id) const { return arcs_.contains(id); }
    const Arc& arc(std::string_view id) const;
    void set_arc_label(const std::string& id, std::optional<ArcLabel> label);
    const std::map<std::string, Arc, std::less<>>& arcs() const { return arcs_; }
    std::size_t arc_count() const { return arcs_.size(); }

    /// Ids of arcs leaving / entering `node`, sorted.
    const std::vector<std::string>& out_arcs(std::string_view node) const;
    const std::vector<std::string>& in_arcs(std::string_view node) const;

    /// nullptr when undefined.
    const Value* label(std::string_view index, std::string_view node) const;
    void set_label(const std::string& index, const std::string& node, Value value);
    void clear_label(std::string_view index, std::string_view node);
    /// The partial labelling for `index` (empty when undeclared).
    const NodeLabelling& labelling(std::string_view index) const;

    /// Identity on names: same nodes, arcs, arc labels, index set and node labels.
    friend bool operator==(const IGraph& a, const IGraph& b);

private:
    std::set<std::string, std::less<>> indexes_;
    std::set<std::string, std::less<>> nodes_;
    std::map<std::string, Arc, std::less<>> arcs_;
    std::map<std::string, NodeLabelling, std::less<>> labels_;
    std::map<std::string, std::vector<std::string>, std::less<>> out_;
    std::map<std::string, std::vector<std::string>, std::less<>> in_;
};

/// Graph morphism as a pair of total maps on node and arc ids.
struct Morphism {
    std::map<std::string, std::string> nodes;
    std::map<std::string, std::string> arcs;

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

Morphism identity_morphism(const IGraph& g);
/// `second ∘ first`.
Morphism compose(const Morphism& second, const Morphism& first);
bool is_injective(const Morphism& m);

/// The base G⊥: same nodes, arcs and arc labels, index set kept, every node
/// labelling undefined.
IGraph strip_labels(const IGraph& g);

/// The i-component: only the labelling of `index` survives.
IGraph project(const IGraph& g, std::string_view index);

/// Recombines components sharing one base into a single graph whose index
/// set is the union of the components' index sets.
IGraph product(std::span<const IGraph> components);

/// True when the two graphs have the same nodes, arcs (ends and labels).
bool same_base(const IGraph& a, const IGraph& b);

/// Checks that `g` is a labelled morphism from `from` to `to`: totality,
/// commutation with source and target, preservation of every defined arc
/// label and node label. Throws StructureError for ids outside either graph.
Report check_morphism(const Morphism& g, const IGraph& from, const IGraph& to);

struct PushoutResult {
    IGraph object;
    Morphism from_c;  // f' : C -> D
    Morphism from_b;  // g' : B -> D
};

/// Pushout of f : A -> B and g : A -> C with g injective. Items of D are
/// named `B:x` for every x of B and `C:y` for items of C outside g(A).
/// Built per index on the projections and recombined with `product`.
/// Throws PushoutError on a non-injective g or a label clash.
PushoutResult pushout(const Morphism& f, const Morphism& g, const IGraph& a, const IGraph& b,
                      const IGraph& c);

/// A bijective morphism whose inverse is also a morphism, i.e. equality of
/// labels both ways. nullopt when the graphs are not isomorphic.
std::optional<Morphism> find_isomorphism(const IGraph& g, const IGraph& h);
bool isomorphic(const IGraph& g, const IGraph& h);

}  // namespace gmr
