#include <doctest.h>

#include "gmr/error.hpp"
#include "gmr/value.hpp"

using namespace gmr;

TEST_CASE("literals round-trip through text") {
    for (const char* text : {"(0, 2)", "<1, -0.5>", "#555555", "3.25", "-7", "{(0, 1), (1, 1)}"}) {
        CHECK(to_string(parse_value(text)) == text);
    }
    CHECK(parse_value("(0,2)") == Value(Point2{0, 2}));
    CHECK(parse_value("<1, 2>").kind() == ValueKind::Vector);
}

TEST_CASE("colors") {
    Value c = parse_value("#0A0B0C");
    REQUIRE(c.is<Color>());
    CHECK(c.as<Color>() == Color{10, 11, 12});
    CHECK(parse_value("rgb(10, 11, 12)") == c);
    CHECK(to_string(Value(Color{10, 11, 12})) == "#0A0B0C");
    // channels that do not fit #RRGGBB keep their exact value
    Value odd = Color{300, -4, 127.6};
    CHECK(to_string(odd) == "rgb(300, -4, 127.6)");
    CHECK(parse_value(to_string(odd)) == odd);
}

TEST_CASE("numbers print shortest round-trip text") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(2) == "2");
}

TEST_CASE("bad literals") {
    CHECK_THROWS_AS(parse_value("(1, 2"), ParseError);
    CHECK_THROWS_AS(parse_value("#12345"), ParseError);
    CHECK_THROWS_AS(parse_value("(1, 2) x"), ParseError);
    std::size_t pos = 0;
    CHECK_FALSE(parse_value_prefix("abc", pos).has_value());
    CHECK(pos == 0);
}

TEST_CASE("multisets compare without order") {
    Multiset a{Value(1.0), Value(2.0), Value(2.0)};
    Multiset b{Value(2.0), Value(1.0), Value(2.0)};
    Multiset c{Value(1.0), Value(1.0), Value(2.0)};
    CHECK(multiset_equal(a, b));
    CHECK_FALSE(multiset_equal(a, c));
}

TEST_CASE("sort names") {
    CHECK(sort_kind("point") == ValueKind::Point);
    CHECK(sort_kind("color") == ValueKind::Color);
    CHECK_FALSE(sort_kind("texture").has_value());
}
