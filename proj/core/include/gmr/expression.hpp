#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gmr/gmap.hpp"
#include "gmr/value.hpp"

namespace gmr {

/// Static sort of an embedding term. `Multi` carries its element sort.
struct Sort {
    enum Kind { Node, Number, Point, Vector, Color, Multi };
    Kind kind = Node;
    Kind element = Node;

    static Sort of(ValueKind k);
    friend bool operator==(const Sort&, const Sort&) = default;
};

std::string to_string(const Sort& s);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Embedding term. Immutable once built; subterms are shared.
struct Expr {
    enum Kind { Var, Link, Access, Collect, Literal, Binary, Negate, Call };

    Kind kind;
    Sort sort;
    std::string name;        // variable, embedding, operator or function name
    int label = 0;           // Link
    OrbitType orbit;         // Collect
    std::optional<Value> literal;
    std::vector<ExprPtr> args;
};

struct ParseOptions {
    /// When set, variables outside this set are rejected.
    std::optional<std::set<std::string>> variables;
};

/// Parses and sort-checks a term. Throws ParseError on bad syntax and
/// SortError on unknown embeddings, operations or sort mismatches.
ExprPtr parse_expression(std::string_view text, const GMapSpec& spec, const ParseOptions& options = {});

/// Canonical text; parse_expression(to_string(e)) yields the same text.
std::string to_string(const Expr& e);

/// Free node variables of the term.
std::set<std::string> variables(const Expr& e);

/// σ : variables -> host nodes.
using Assignment = std::map<std::string, std::string, std::less<>>;

/// Either a host node (sort Node) or a value.
using Evaluated = std::variant<std::string, Value>;

Evaluated eval(const Expr& e, const Assignment& sigma, const GMap& g);
/// Evaluates a term of value sort. Throws EvalError for Node-sorted terms.
Value eval_value(const Expr& e, const Assignment& sigma, const GMap& g);

/// Value arithmetic shared by the evaluator: `+ - * /` and mean.
Value apply_binary(char op, const Value& a, const Value& b);
Value mean(const Multiset& values);

}  // namespace gmr
