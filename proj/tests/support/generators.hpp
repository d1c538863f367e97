#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gmr/gmap.hpp"
#include "gmr/rewrite.hpp"
#include "gmr/scheme.hpp"

namespace gmr::gen {

using Rng = std::mt19937_64;

/// GMAP_SEED when set, else `fallback`.
std::uint64_t seed(std::uint64_t fallback = 20100601);
Rng rng(std::uint64_t salt = 0);

int uniform(Rng& r, int lo, int hi);
bool chance(Rng& r, double p);

/// point on vertices, color on faces.
GMapSpec plane_spec();

/// Directed multigraph with arcs labelled a0..a<max_label> or unlabelled.
IGraph random_arc_graph(Rng& r, int max_nodes, int max_label);

/// Polygons sewn along α2, points per vertex and colors per face.
/// At most `max_nodes` darts (and at least 2).
GMap random_gmap(Rng& r, int max_nodes);

/// A concrete relabelling rule, a host containing a copy of L and the
/// match onto that copy. Indexes `p` and `q`, small number labels.
struct RuleCase {
    Rule rule;
    IGraph host;
    Morphism match;
};
RuleCase random_rule_case(Rng& r, int max_nodes);

/// Candidate rule built around `g`: identity, relabelling of whole or cut
/// orbits, deletion of a component, addition of a polygon, sometimes
/// mutated. Not necessarily consistent.
Rule random_gmap_rule(Rng& r, const GMap& g);

/// Scheme with random terms over its left-hand nodes (for serialization).
RuleScheme random_scheme(Rng& r, const GMap& g);

}  // namespace gmr::gen
