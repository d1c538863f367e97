#pragma once

#include "gmr/gmap.hpp"
#include "gmr/report.hpp"
#include "gmr/rewrite.hpp"

namespace gmr {

/// Syntactic conditions under which a rule maps n-G-maps to n-G-maps:
/// non-orientation of L, K and R, adjacent arcs of preserved, removed and
/// added nodes, and the αi αj αi αj cycle conditions.
Report check_topo_preservation(const Rule& r, int n);

/// For every π : ⟨o⟩ → s of the signature:
///  - `embedding-uniformity`: each ⟨o⟩-orbit of R is uniformly labelled,
///    all defined and equal or all undefined;
///  - `embedding-completeness`: added nodes and relabelled preserved nodes
///    lie in complete ⟨o⟩-orbits of R.
Report check_embedding_preservation(const Rule& r, const GMapSpec& spec);

/// validate_rule, then topological preservation, then (when the former
/// pass) embedding preservation.
Report check_rule(const Rule& r, const GMapSpec& spec);

/// Whether v starts a path labelled αi αj αi αj back to itself.
bool has_cycle(const IGraph& g, const std::string& v, int i, int j);

}  // namespace gmr
