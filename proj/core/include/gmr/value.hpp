#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmr {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

struct Vector2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vector2&, const Vector2&) = default;
};

// Channels are kept as doubles so that averaging stays exact where possible;
// integral channels in [0, 255] print as #RRGGBB.
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    friend bool operator==(const Color&, const Color&) = default;
};

enum class ValueKind { Number, Point, Vector, Color, Multiset };

std::string_view kind_name(ValueKind kind);

class Value;
using Multiset = std::vector<Value>;

/// A node label datum. Embedding values are numbers, points, vectors or
/// colors; multisets only appear as intermediate results of collect.
class Value {
public:
    using Storage = std::variant<double, Point2, Vector2, Color, Multiset>;

    Value() : data_(0.0) {}
    Value(double v) : data_(v) {}  // NOLINT(google-explicit-constructor)
    Value(Point2 v) : data_(v) {}  // NOLINT
    Value(Vector2 v) : data_(v) {}  // NOLINT
    Value(Color v) : data_(v) {}  // NOLINT
    Value(Multiset v) : data_(std::move(v)) {}  // NOLINT

    ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }

    template <class T>
    bool is() const { return std::holds_alternative<T>(data_); }
    template <class T>
    const T& as() const { return std::get<T>(data_); }

    const Storage& storage() const { return data_; }

    friend bool operator==(const Value&, const Value&) = default;

private:
    Storage data_;
};

/// Total order used for canonical sorting (not a geometric order).
bool value_less(const Value& a, const Value& b);

/// Order-insensitive equality of two multisets.
bool multiset_equal(const Multiset& a, const Multiset& b);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// Literal syntax: `(x, y)`, `<x, y>`, `#RRGGBB` or `rgb(r, g, b)`, plain
/// numbers, and `{...}` for multisets.
std::string to_string(const Value& v);

/// Parses one literal starting at `pos`, skipping leading blanks, and
/// advances `pos` past it. Returns nullopt without moving `pos` when the
/// text does not start with a literal.
std::optional<Value> parse_value_prefix(std::string_view text, std::size_t& pos);

/// Parses a complete literal; throws gmr::ParseError on trailing garbage.
Value parse_value(std::string_view text);

/// Maps an embedding sort name (`point`, `color`, ...) to its value kind.
std::optional<ValueKind> sort_kind(std::string_view sort_name);

}  // namespace gmr
