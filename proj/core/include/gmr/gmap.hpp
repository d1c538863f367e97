#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gmr/labelled_graph.hpp"
#include "gmr/report.hpp"
#include "gmr/value.hpp"

namespace gmr {

/// A strictly increasing word over α0…αn, written `<a0 a2>`.
struct OrbitType {
    std::vector<int> labels;

    bool contains(int index) const;
    int max_label() const { return labels.empty() ? -1 : labels.back(); }
    friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

std::string to_string(const OrbitType& o);
/// Parses `<a0 a1>` (also `<>`). Throws ParseError when the word is not
/// strictly increasing or malformed.
OrbitType parse_orbit_type(std::string_view text);
/// Same as above, reading from `pos` and advancing past the closing `>`.
std::optional<OrbitType> parse_orbit_type_prefix(std::string_view text, std::size_t& pos);

/// π : ⟨o⟩ → s
struct EmbeddingOp {
    std::string name;
    OrbitType domain;
    std::string sort;

    friend bool operator==(const EmbeddingOp&, const EmbeddingOp&) = default;
};

struct GMapSpec {
    int dimension = 2;
    std::vector<EmbeddingOp> embeddings;

    const EmbeddingOp* find(std::string_view name) const;
    std::set<std::string, std::less<>> index_set() const;
    /// Throws StructureError on duplicate names, unknown sorts or domains
    /// exceeding the dimension.
    void validate() const;

    friend bool operator==(const GMapSpec&, const GMapSpec&) = default;
};

/// A graph checked against a spec. Construction does not validate; use
/// check_gmap.
struct GMap {
    GMapSpec spec;
    IGraph graph;
};

/// The subgraph G⟨o⟩(v). `nodes` is in breadth-first discovery order.
struct Orbit {
    std::string seed;
    OrbitType type;
    std::vector<std::string> nodes;
    std::set<std::string> arcs;

    bool contains(std::string_view node) const;
};

Orbit orbit(const IGraph& g, const OrbitType& o, const std::string& v);

/// Every node mapped to the index of its ⟨o⟩-class; classes are numbered in
/// order of their smallest node name.
std::map<std::string, int, std::less<>> orbit_classes(const IGraph& g, const OrbitType& o);

Report check_arc_labels(const IGraph& g, int n);
Report check_non_orientation(const IGraph& g);
Report check_adjacent_arcs(const IGraph& g, int n);
/// v.αi.αj.αi.αj = v for 0 ≤ i, i+2 ≤ j ≤ n. Blocked when adjacent-arcs fails.
Report check_cycles(const IGraph& g, int n);
Report check_topology(const IGraph& g, int n);
/// Uniform, defined and well-sorted π-labels on every ⟨o⟩-orbit.
Report check_embedding(const GMap& g);
Report check_gmap(const GMap& g);

/// nullopt when v carries no π-label. Throws for unknown node or embedding.
std::optional<Value> access(const GMap& g, std::string_view v, std::string_view pi);
/// The unique αi-neighbour. Throws StructureError if there is not exactly one.
std::string link(const IGraph& g, std::string_view v, int i);
/// One π-value per ⟨o_π⟩-class of the whole graph meeting the traversal
/// orbit, in traversal order. Throws EvalError on an undefined label.
Multiset collect(const GMap& g, std::string_view pi, const OrbitType& traverse, const std::string& v);

/// Adds both arcs of an undirected αi edge, or one loop when u == v, using
/// the canonical ids `u-aI-v`.
void add_edge(IGraph& g, const std::string& u, const std::string& v, int i);
std::string arc_id(const std::string& u, int i, const std::string& v);

}  // namespace gmr
