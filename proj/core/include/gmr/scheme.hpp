#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmr/expression.hpp"
#include "gmr/gmap.hpp"
#include "gmr/report.hpp"
#include "gmr/rewrite.hpp"

namespace gmr {

/// A graph whose node labels are embedding terms.
struct GraphScheme {
    IGraph base;  // node labellings unused
    std::map<std::string, std::map<std::string, ExprPtr>, std::less<>> labels;  // π -> node -> term

    const Expr* label(std::string_view pi, std::string_view node) const;
    void set_label(const std::string& pi, const std::string& node, ExprPtr term);
};

struct RuleScheme {
    GMapSpec spec;
    GraphScheme left;
    GraphScheme kernel;
    GraphScheme right;

    /// The unlabelled rule L_T ⊇ K_T ⊆ R_T.
    Rule base_rule() const;
};

/// Same base, each term replaced by its value under σ.
IGraph eval_graph_scheme(const GraphScheme& h, const Assignment& sigma, const GMap& g);

/// L_T and K_T unlabelled, variables drawn from L_T, term sorts matching
/// their embeddings, syntactically uniform terms on every ⟨o⟩-orbit of R_T,
/// and topological preservation of the base rule.
Report validate_scheme(const RuleScheme& r);

/// A saturation trigger (π, v) with v a node of K_T.
using Trigger = std::pair<std::string, std::string>;

/// Pairs where R_T defines a π-term at a kernel node, or all of Π × V_K
/// when `full` is set. Sorted.
std::vector<Trigger> saturation_triggers(const RuleScheme& r, bool full = false);

struct InstantiateOptions {
    /// Saturate over all of Π × V_K; silent pairs keep host values.
    bool full_saturation = false;
    /// Processing order; unlisted triggers follow in sorted order.
    std::vector<Trigger> order;
};

struct Instantiation {
    Rule rule;
    Morphism match;  // m* : L[m] -> G, the identity on host names
};

/// Builds r[m] and m*. L[m] and K[m] items carry host names, added R items
/// keep their scheme names (suffixed `.k` on a clash with the host).
/// Throws EvalError when two terms assign different values to one node.
Instantiation instantiate(const RuleScheme& r, const Morphism& m, const GMap& g,
                          const InstantiateOptions& options = {});

struct SchemeApplication {
    Instantiation instance;
    Derivation derivation;
    GMap result;
};

/// instantiate, then apply the instantiated rule at m*.
SchemeApplication apply_scheme(const RuleScheme& r, const Match& m, const GMap& g,
                               const InstantiateOptions& options = {});

}  // namespace gmr
