#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "gmr/error.hpp"
#include "gmr/rewrite.hpp"
#include "oracles.hpp"

using namespace gmr;

TEST_CASE("matches are exactly the injective morphisms") {
    auto r = gen::rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        IGraph g = gen::random_arc_graph(r, 7, 1);
        IGraph left = gen::random_arc_graph(r, 3, 1);
        auto got = find_matches(left, g);
        auto expected = oracle::all_morphisms(left, g, true);
        CHECK(got.size() == expected.size());
        for (const auto& m : got) {
            CHECK(check_match(left, m.morphism, g).passed());
            CHECK(std::find(expected.begin(), expected.end(), m.morphism) != expected.end());
        }
    }
}

TEST_CASE("partial bindings and limits") {
    GMap g = fixtures::house();
    auto split = fixtures::scheme("split-edge.rule");
    CHECK(find_matches(split.left.base, g.graph).size() == 4);
    MatchOptions fixed;
    fixed.bindings = {{"e", "e"}, {"f", "f"}};
    auto ms = find_matches(split.left.base, g.graph, fixed);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].morphism.nodes.at("g") == "g");
    CHECK(ms[0].id == "m0");
    MatchOptions few;
    few.limit = 2;
    CHECK(find_matches(split.left.base, g.graph, few).size() == 2);
}

TEST_CASE("dangling deletions are refused") {
    IGraph g({"p"});
    g.add_node("x");
    g.add_node("y");
    g.set_label("p", "x", Value(1.0));
    g.set_label("p", "y", Value(1.0));
    g.add_arc("xy", "x", "y", ArcLabel{0});
    Rule del{IGraph({"p"}), IGraph({"p"}), IGraph({"p"})};
    del.left.add_node("v");
    del.left.set_label("p", "v", Value(1.0));
    Match m{"m0", Morphism{{{"v", "x"}}, {}}};
    CHECK(check_dangling(del, m.morphism, g).has_failure("dangling"));
    CHECK_THROWS_AS(apply(del, m, g), DanglingError);
    Match free{"m0", Morphism{{{"v", "y"}}, {}}};
    g.remove_arc("xy");
    CHECK(apply(del, free, g).result.node_count() == 1);
}

TEST_CASE("relabelling erases and rewrites labels") {
    IGraph g({"p"});
    g.add_node("x");
    g.set_label("p", "x", Value(1.0));
    Rule r{IGraph({"p"}), IGraph({"p"}), IGraph({"p"})};
    r.left.add_node("v");
    r.left.set_label("p", "v", Value(1.0));
    r.kernel.add_node("v");
    r.right.add_node("v");
    r.right.set_label("p", "v", Value(2.0));
    r.right.add_node("w");
    r.right.set_label("p", "w", Value(0.0));
    r.right.add_arc("vw", "v", "w", ArcLabel{0});
    Derivation d = apply(r, Match{"m3", Morphism{{{"v", "x"}}, {}}}, g);
    CHECK(*d.result.label("p", "x") == Value(2.0));
    CHECK(d.result.has_node("m3.w"));
    CHECK(d.comatch.nodes.at("w") == "m3.w");
    CHECK(d.comatch.arcs.at("vw") == "m3.vw");

    // a relabelling rule may not leave the redefined label out of R
    r.right.clear_label("p", "v");
    CHECK(validate_rule(r).has_failure("rule-label"));
    CHECK_THROWS_AS(apply(r, Match{"m0", Morphism{{{"v", "x"}}, {}}}, g), StructureError);
}

TEST_CASE("inverse rule undoes an application") {
    auto r = gen::rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = gen::random_rule_case(r, 8);
        if (!check_dangling(c.rule, c.match, c.host).passed()) continue;
        Derivation d = apply(c.rule, Match{"m0", c.match}, c.host);
        Rule back = invert(c.rule);
        if (!check_dangling(back, d.comatch, d.result).passed()) continue;
        // undoing restores the shape, and the labels L fixes
        IGraph undone = apply(back, Match{"u0", d.comatch}, d.result).result;
        CHECK(oracle::isomorphic(strip_labels(undone), strip_labels(c.host)));
        for (const auto& x : c.rule.kernel.nodes())
            for (const auto& i : c.rule.left.indexes())
                if (const Value* l = c.rule.left.label(i, x)) CHECK(*undone.label(i, c.match.nodes.at(x)) == *l);
    }
}

TEST_CASE("invalid rules are rejected") {
    Rule r{IGraph({"p"}), IGraph({"p"}), IGraph({"p"})};
    r.kernel.add_node("v");
    CHECK_THROWS_AS(check_inclusions(r), StructureError);
    r.left.add_node("v");
    r.right.add_node("v");
    r.left.set_label("p", "v", Value(1.0));
    r.kernel.set_label("p", "v", Value(2.0));
    r.right.set_label("p", "v", Value(2.0));
    CHECK_THROWS_AS(validate_rule(r), StructureError);  // K is not a subgraph of L
    r.kernel.clear_label("p", "v");
    r.right.clear_label("p", "v");
    CHECK(validate_rule(r).has_failure("rule-label"));
    r.left.add_node("gone");
    r.left.add_arc("loose", "v", "gone", std::nullopt);
    CHECK(validate_rule(r).has_failure("rule-arc-label"));
}
