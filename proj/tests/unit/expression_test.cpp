#include <doctest.h>

#include "fixtures.hpp"
#include "gmr/error.hpp"
#include "gmr/expression.hpp"

using namespace gmr;

namespace {

Value ev(const std::string& text, const Assignment& sigma = {{"a", "a"}, {"e", "e"}, {"f", "f"}}) {
    GMap g = fixtures::house();
    return eval_value(*parse_expression(text, g.spec), sigma, g);
}

Sort sort_of(const std::string& text) { return parse_expression(text, fixtures::house().spec)->sort; }

}  // namespace

TEST_CASE("sorts") {
    CHECK(sort_of("a") == Sort{Sort::Node});
    CHECK(sort_of("a.a0") == Sort{Sort::Node});
    CHECK(sort_of("a.point") == Sort{Sort::Point});
    CHECK(sort_of("a.point - e.point") == Sort{Sort::Vector});
    CHECK(sort_of("a.point + <1, 0>") == Sort{Sort::Point});
    CHECK(sort_of("(a.point + e.point) / 2") == Sort{Sort::Point});
    CHECK(sort_of("point{<a0 a1>(a)}") == Sort{Sort::Multi, Sort::Point});
    CHECK(sort_of("mean(point{<a0 a1>(a)})") == Sort{Sort::Point});
    CHECK(sort_of("2 * a.color") == Sort{Sort::Color});
    CHECK(sort_of("-(a.point - e.point)") == Sort{Sort::Vector});

    const GMapSpec spec = fixtures::house().spec;
    CHECK_THROWS_AS(parse_expression("a.point + a.color", spec), SortError);
    CHECK_THROWS_AS(parse_expression("a.texture", spec), SortError);
    CHECK_THROWS_AS(parse_expression("-a.point", spec), SortError);
    CHECK_THROWS_AS(parse_expression("mean(a.point)", spec), SortError);
    CHECK_THROWS_AS(parse_expression("a.point +", spec), ParseError);
    CHECK_THROWS_AS(parse_expression("a.a9.point", spec), SortError);
    ParseOptions only_e{std::set<std::string>{"e"}};
    CHECK_THROWS_AS(parse_expression("a.point", spec, only_e), SortError);
}

TEST_CASE("canonical printing") {
    const GMapSpec spec = fixtures::house().spec;
    for (const char* text : {"(e.point + f.point) / 2", "a.a2.color", "mean(point{<a0 a1>(a)})",
                             "a.point + <1, 0.5>", "a.point - (e.point - f.point)", "#888888"}) {
        CHECK(to_string(*parse_expression(text, spec)) == text);
    }
    CHECK(to_string(*parse_expression("((a.point))", spec)) == "a.point");
    CHECK(to_string(*parse_expression("(2*a.color)/ 4", spec)) == "2 * a.color / 4");
    CHECK(variables(*parse_expression("(e.point + f.a0.point) / 2", spec)) == std::set<std::string>{"e", "f"});
}

TEST_CASE("evaluation on the house") {
    CHECK(ev("a.a0.point") == Value(Point2{0, 1}));
    CHECK(ev("(e.point + f.point) / 2") == Value(Point2{0.5, 1}));
    CHECK(ev("a.point - e.point") == Value(Vector2{0, 1}));
    CHECK(ev("(e.color + e.a2.color) / 2") == Value(Color{136, 136, 136}));
    CHECK(ev("mean(point{<a0 a1>(a)})") == Value(Point2{1.0 / 3.0, 4.0 / 3.0}));
    CHECK(ev("a.point + <1, 0.5>") == Value(Point2{1, 2.5}));

    GMap g = fixtures::house();
    CHECK(std::get<std::string>(eval(*parse_expression("a.a0.a1", g.spec), {{"a", "a"}}, g)) == "e");
    CHECK_THROWS_AS(ev("a.point", {}), EvalError);
}

TEST_CASE("arithmetic table") {
    Value p = Point2{1, 2}, q = Point2{3, 4};
    Value v = Vector2{1, 1};
    CHECK(apply_binary('+', p, v) == Value(Point2{2, 3}));
    CHECK(apply_binary('-', q, p) == Value(Vector2{2, 2}));
    CHECK(apply_binary('+', p, q) == Value(Point2{4, 6}));
    CHECK(apply_binary('*', Value(2.0), v) == Value(Vector2{2, 2}));
    CHECK(apply_binary('/', q, Value(2.0)) == Value(Point2{1.5, 2}));
    CHECK_THROWS_AS(apply_binary('/', q, Value(0.0)), EvalError);
    CHECK(mean({p, q}) == Value(Point2{2, 3}));
    CHECK_THROWS_AS(mean({}), EvalError);
}
