#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gmr/labelled_graph.hpp"
#include "gmr/report.hpp"

namespace gmr {

/// L ⊇ K ⊆ R as literal inclusions: K's items carry the same ids in L and R.
struct Rule {
    IGraph left;
    IGraph kernel;
    IGraph right;
};

/// R ⊇ K ⊆ L.
Rule invert(const Rule& r);

/// Union of the index sets of L, K and R.
std::set<std::string, std::less<>> rule_indexes(const Rule& r);

/// Throws StructureError when K is not a labelled subgraph of L and R.
void check_inclusions(const Rule& r);

/// Label conditions on undefined node and arc labels: an item left
/// unlabelled on one side must be in K and unlabelled on the other side.
/// Throws StructureError when the inclusions are broken.
Report validate_rule(const Rule& r);

struct Match {
    std::string id;
    Morphism morphism;  // L -> G
};

struct MatchOptions {
    /// Stop after this many matches (0: all).
    std::size_t limit = 0;
    /// Fixed images for some L nodes.
    std::map<std::string, std::string> bindings;
};

/// All injective label-preserving morphisms L -> G in deterministic order.
/// Matches are named m0, m1, ... in that order.
std::vector<Match> find_matches(const IGraph& left, const IGraph& g, const MatchOptions& options = {});

/// Whether `m` is an injective label-preserving morphism L -> G.
Report check_match(const IGraph& left, const Morphism& m, const IGraph& g);

/// No node of m(L) \ m(K) touches an arc of G outside m(L).
Report check_dangling(const Rule& r, const Morphism& m, const IGraph& g);

struct Derivation {
    IGraph result;
    Morphism comatch;  // R -> H
};

/// Relabelling double pushout. D is G without m(L \ K), with labels erased
/// where K is unlabelled and L is labelled; H adds fresh copies of R \ K and
/// writes every label R defines. Fresh items are named `<id>.<x>`, then
/// `<id>.<k>.<x>` on collision.
///
/// Throws StructureError for an invalid rule or match and DanglingError when
/// the dangling condition fails.
Derivation apply(const Rule& r, const Match& m, const IGraph& g);

}  // namespace gmr
