#include <doctest.h>

#include "fixtures.hpp"
#include "gmr/consistency.hpp"

using namespace gmr;

namespace {

bool has_detail(const Report& r, const std::string& check, const std::string& detail) {
    for (const auto& v : r.violations())
        if (v.check == check && v.detail == detail) return true;
    return false;
}

}  // namespace

TEST_CASE("the edge insertion rule preserves consistency") {
    auto doc = fixtures::rule("fig5.rule");
    CHECK(check_rule(doc.rule, doc.spec).passed());
}

TEST_CASE("partial redefinitions are named") {
    auto a = fixtures::rule("fig6a.rule");
    Report ra = check_rule(a.rule, a.spec);
    CHECK(ra.failed_checks() == std::set<std::string>{"embedding-completeness"});
    CHECK(has_detail(ra, "embedding-completeness", "incomplete redefinition"));

    auto b = fixtures::rule("fig6b.rule");
    Report rb = check_rule(b.rule, b.spec);
    CHECK(rb.failed_checks() == std::set<std::string>{"embedding-uniformity"});
    CHECK(has_detail(rb, "embedding-uniformity", "non-consistent added vertex"));
}

TEST_CASE("topological conditions") {
    auto doc = fixtures::rule("fig5.rule");
    Rule r = doc.rule;

    SUBCASE("added node without α1") {
        r.right.remove_arc(arc_id("x1", 1, "x2"));
        r.right.remove_arc(arc_id("x2", 1, "x1"));
        Report rep = check_topo_preservation(r, 2);
        CHECK(rep.failed_checks() == std::set<std::string>{"adjacent-arcs"});
        CHECK(check_rule(r, doc.spec).is_blocked("embedding-uniformity"));
    }
    SUBCASE("preserved node changes its arcs") {
        r.right.add_arc("extra", "e", "e", ArcLabel{1});
        CHECK(check_topo_preservation(r, 2).has_failure("adjacent-arcs"));
    }
    SUBCASE("one-way arc in R") {
        r.right.remove_arc(arc_id("x3", 2, "x1"));
        Report rep = check_topo_preservation(r, 2);
        CHECK(rep.has_failure("non-orientation"));
        CHECK(rep.violations().front().witness.front().rfind("R:", 0) == 0);
    }
    SUBCASE("incomplete cycle loses an arc") {
        // e keeps its node but its α0 arc goes away while the cycle is open in L
        Rule cut = r;
        cut.kernel.remove_arc(arc_id("e", 2, "g"));
        cut.kernel.remove_arc(arc_id("g", 2, "e"));
        cut.right.remove_arc(arc_id("e", 2, "g"));
        cut.right.remove_arc(arc_id("g", 2, "e"));
        CHECK(check_topo_preservation(cut, 2).has_failure("cycles"));
    }
}

TEST_CASE("cycle helper") {
    GMap g = fixtures::house();
    CHECK(has_cycle(g.graph, "e", 0, 2));
    CHECK(has_cycle(g.graph, "a", 0, 2));
    IGraph h = g.graph;
    h.remove_arc(arc_id("a", 2, "a"));
    CHECK_FALSE(has_cycle(h, "a", 0, 2));
}
