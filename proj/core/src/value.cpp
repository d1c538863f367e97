#include "gmr/value.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "gmr/error.hpp"

namespace gmr {

std::string_view kind_name(ValueKind kind) {
    switch (kind) {
        case ValueKind::Number: return "number";
        case ValueKind::Point: return "point";
        case ValueKind::Vector: return "vector";
        case ValueKind::Color: return "color";
        case ValueKind::Multiset: return "multiset";
    }
    return "?";
}

namespace {

template <class T>
auto fields(const T& v) {
    if constexpr (std::is_same_v<T, Color>) {
        return std::tuple(v.r, v.g, v.b);
    } else {
        return std::tuple(v.x, v.y);
    }
}

}  // namespace

bool value_less(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    return std::visit(
        [&](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.storage());
            if constexpr (std::is_same_v<T, double>) {
                return lhs < rhs;
            } else if constexpr (std::is_same_v<T, Multiset>) {
                return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                                    value_less);
            } else {
                return fields(lhs) < fields(rhs);
            }
        },
        a.storage());
}

bool multiset_equal(const Multiset& a, const Multiset& b) {
    if (a.size() != b.size()) return false;
    Multiset sa = a;
    Multiset sb = b;
    std::sort(sa.begin(), sa.end(), value_less);
    std::sort(sb.begin(), sb.end(), value_less);
    return sa == sb;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

namespace {

bool is_byte(double c) { return c >= 0.0 && c <= 255.0 && std::floor(c) == c; }

std::string format_color(const Color& c) {
    if (is_byte(c.r) && is_byte(c.g) && is_byte(c.b)) {
        std::array<char, 8> buf{};
        std::snprintf(buf.data(), buf.size(), "#%02X%02X%02X", static_cast<int>(c.r),
                      static_cast<int>(c.g), static_cast<int>(c.b));
        return buf.data();
    }
    return "rgb(" + format_number(c.r) + ", " + format_number(c.g) + ", " + format_number(c.b) + ")";
}

}  // namespace

std::string to_string(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(x);
            } else if constexpr (std::is_same_v<T, Point2>) {
                return "(" + format_number(x.x) + ", " + format_number(x.y) + ")";
            } else if constexpr (std::is_same_v<T, Vector2>) {
                return "<" + format_number(x.x) + ", " + format_number(x.y) + ">";
            } else if constexpr (std::is_same_v<T, Color>) {
                return format_color(x);
            } else {
                std::string out = "{";
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (i) out += ", ";
                    out += to_string(x[i]);
                }
                return out + "}";
            }
        },
        v.storage());
}

namespace {

struct LiteralCursor {
    std::string_view text;
    std::size_t pos;

    void skip_blank() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_blank();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<double> number() {
        skip_blank();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        bool digits = false;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E' ||
                                     ((text[pos] == '-' || text[pos] == '+') &&
                                      (text[pos - 1] == 'e' || text[pos - 1] == 'E')))) {
            digits = digits || std::isdigit(static_cast<unsigned char>(text[pos]));
            ++pos;
        }
        if (!digits) {
            pos = start;
            return std::nullopt;
        }
        std::string_view token = text.substr(start, pos - start);
        if (!token.empty() && token.front() == '+') token.remove_prefix(1);
        double out = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            pos = start;
            return std::nullopt;
        }
        return out;
    }
    std::optional<std::pair<double, double>> pair(char close) {
        auto x = number();
        if (!x || !eat(',')) return std::nullopt;
        auto y = number();
        if (!y || !eat(close)) return std::nullopt;
        return std::pair{*x, *y};
    }
};

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::optional<Value> parse_value_prefix(std::string_view text, std::size_t& pos) {
    LiteralCursor cur{text, pos};
    cur.skip_blank();
    if (cur.pos >= text.size()) return std::nullopt;
    const char c = text[cur.pos];
    std::optional<Value> out;
    if (c == '(') {
        ++cur.pos;
        if (auto p = cur.pair(')')) out = Point2{p->first, p->second};
    } else if (c == '<') {
        ++cur.pos;
        if (auto p = cur.pair('>')) out = Vector2{p->first, p->second};
    } else if (c == '#') {
        if (cur.pos + 7 <= text.size()) {
            std::array<int, 6> d{};
            bool ok = true;
            for (int i = 0; i < 6; ++i) {
                d[i] = hex_digit(text[cur.pos + 1 + i]);
                ok = ok && d[i] >= 0;
            }
            if (ok) {
                cur.pos += 7;
                out = Color{static_cast<double>(d[0] * 16 + d[1]), static_cast<double>(d[2] * 16 + d[3]),
                            static_cast<double>(d[4] * 16 + d[5])};
            }
        }
    } else if (text.substr(cur.pos, 4) == "rgb(") {
        cur.pos += 4;
        auto r = cur.number();
        bool ok = r && cur.eat(',');
        auto g = ok ? cur.number() : std::nullopt;
        ok = ok && g && cur.eat(',');
        auto b = ok ? cur.number() : std::nullopt;
        ok = ok && b && cur.eat(')');
        if (ok) out = Color{*r, *g, *b};
    } else if (c == '{') {
        ++cur.pos;
        Multiset items;
        bool ok = true;
        if (!cur.eat('}')) {
            while (true) {
                std::size_t p = cur.pos;
                auto item = parse_value_prefix(text, p);
                if (!item) {
                    ok = false;
                    break;
                }
                cur.pos = p;
                items.push_back(std::move(*item));
                if (cur.eat('}')) break;
                if (!cur.eat(',')) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out = Value(std::move(items));
    } else if (auto n = cur.number()) {
        out = *n;
    }
    if (out) pos = cur.pos;
    return out;
}

Value parse_value(std::string_view text) {
    std::size_t pos = 0;
    auto v = parse_value_prefix(text, pos);
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (!v || pos != text.size()) {
        throw ParseError("not a value literal: '" + std::string(text) + "'");
    }
    return *v;
}

std::optional<ValueKind> sort_kind(std::string_view sort_name) {
    if (sort_name == "point" || sort_name == "point_type") return ValueKind::Point;
    if (sort_name == "vector" || sort_name == "vector_type") return ValueKind::Vector;
    if (sort_name == "color" || sort_name == "color_type") return ValueKind::Color;
    if (sort_name == "number" || sort_name == "scalar") return ValueKind::Number;
    return std::nullopt;
}

}  // namespace gmr
