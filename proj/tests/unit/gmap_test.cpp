#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "gmr/error.hpp"
#include "gmr/gmap.hpp"
#include "oracles.hpp"

using namespace gmr;

TEST_CASE("orbit types") {
    CHECK(parse_orbit_type("<a1 a2>") == OrbitType{{1, 2}});
    CHECK(parse_orbit_type("<>") == OrbitType{});
    CHECK(to_string(OrbitType{{0, 2}}) == "<a0 a2>");
    CHECK_THROWS_AS(parse_orbit_type("<a2 a1>"), ParseError);
    CHECK_THROWS_AS(parse_orbit_type("<a1 a1>"), ParseError);
    CHECK_THROWS_AS(parse_orbit_type("a1 a2"), ParseError);
}

TEST_CASE("house is a valid embedded 2-G-map") {
    GMap g = fixtures::house();
    CHECK(g.graph.node_count() == 14);
    CHECK(check_gmap(g).passed());
    CHECK(orbit(g.graph, OrbitType{{1, 2}}, "e").nodes == std::vector<std::string>{"e", "c", "g", "i"});
    CHECK(orbit(g.graph, OrbitType{{0, 1}}, "a").nodes.size() == 6);
    CHECK(orbit(g.graph, OrbitType{{0, 2}}, "e").nodes == std::vector<std::string>{"e", "f", "g", "h"});
}

TEST_CASE("each constraint is reported by name") {
    GMap g = fixtures::house();

    SUBCASE("arc label beyond dimension") {
        g.graph.add_arc("x", "a", "b", ArcLabel{3});
        CHECK(check_topology(g.graph, 2).has_failure("arc-labels"));
    }
    SUBCASE("one-way arc") {
        g.graph.remove_arc(arc_id("e", 2, "g"));
        auto r = check_topology(g.graph, 2);
        CHECK(r.has_failure("non-orientation"));
        CHECK(r.has_failure("adjacent-arcs"));
        CHECK(r.is_blocked("cycles"));
    }
    SUBCASE("broken cycle") {
        // sew a to i alone: a.a0.a2.a0.a2 = i
        g.graph.remove_arc(arc_id("a", 2, "a"));
        g.graph.remove_arc(arc_id("i", 2, "i"));
        add_edge(g.graph, "a", "i", 2);
        auto r = check_topology(g.graph, 2);
        CHECK(r.failed_checks() == std::set<std::string>{"cycles"});
    }
    SUBCASE("mixed embedding") {
        g.graph.set_label("point", "i", Value(Point2{9, 9}));
        CHECK(check_gmap(g).failed_checks() == std::set<std::string>{"embedding"});
    }
    SUBCASE("wrong sort") {
        g.graph.set_label("point", "a", Value(Color{1, 2, 3}));
        CHECK(check_embedding(g).has_failure("embedding-sort"));
    }
}

TEST_CASE("access, link and collect on the house") {
    GMap g = fixtures::house();
    CHECK(*access(g, "a", "point") == Value(Point2{0, 2}));
    CHECK(link(g.graph, "a", 0) == "c");
    CHECK(link(g.graph, "a", 2) == "a");
    CHECK_THROWS_AS(link(g.graph, "zz", 0), StructureError);

    Multiset all = collect(g, "point", OrbitType{{0, 1, 2}}, "a");
    Multiset expected{Value(Point2{0, 2}), Value(Point2{0, 1}), Value(Point2{1, 1}), Value(Point2{0, 0}),
                      Value(Point2{1, 0})};
    CHECK(multiset_equal(all, expected));
    // the triangle face meets three vertices, the square four
    CHECK(collect(g, "point", OrbitType{{0, 1}}, "a").size() == 3);
    CHECK(collect(g, "point", OrbitType{{0, 1}}, "k").size() == 4);
    // two faces share the edge orbit: colors are kept as a multiset
    CHECK(collect(g, "color", OrbitType{{0, 2}}, "e").size() == 2);
}

TEST_CASE("orbits match the closure oracle on random graphs") {
    auto r = gen::rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        IGraph g = gen::random_arc_graph(r, 12, 2);
        OrbitType o;
        for (int i = 0; i <= 2; ++i)
            if (gen::chance(r, 0.5)) o.labels.push_back(i);
        for (const auto& v : g.nodes()) {
            auto got = orbit(g, o, v);
            CHECK(std::set<std::string>(got.nodes.begin(), got.nodes.end()) == oracle::closure_orbit(g, o, v));
        }
    }
}

TEST_CASE("random generated G-maps are valid and collect matches the quotient oracle") {
    auto r = gen::rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        GMap g = gen::random_gmap(r, 16);
        REQUIRE(check_gmap(g).passed());
        const std::string v = *g.graph.nodes().begin();
        for (const auto& o : {OrbitType{{0, 1}}, OrbitType{{0, 2}}, OrbitType{{0, 1, 2}}}) {
            CHECK(multiset_equal(collect(g, "point", o, v), oracle::quotient_collect(g, "point", o, v)));
        }
    }
}
