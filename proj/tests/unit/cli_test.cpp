#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"

using gmr::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result gmap(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return fixtures::path(name); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "gmr_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("check") {
    auto ok = gmap({"check", data("house.gmap")});
    CHECK(ok.code == 0);
    CHECK(ok.out == "PASS\n");
    auto broken = gmap({"check", data("broken.gmap")});
    CHECK(broken.code == 1);
    CHECK(broken.out.rfind("FAIL adjacent-arcs a a2", 0) == 0);
    CHECK(gmap({"check", data("empty.gmap")}).code == 0);
    CHECK(gmap({"check", data("missing.gmap")}).code == 2);
}

TEST_CASE("check-rule") {
    CHECK(gmap({"check-rule", data("rules/fig5.rule")}).code == 0);
    auto a = gmap({"check-rule", data("rules/fig6a.rule")});
    CHECK(a.code == 1);
    CHECK(a.out.find("FAIL embedding-completeness") != std::string::npos);
    auto b = gmap({"check-rule", data("rules/fig6b.rule")});
    CHECK(b.code == 1);
    CHECK(b.out.find("non-consistent added vertex") != std::string::npos);
    for (const char* s : {"rules/translate.rule", "rules/split-edge.rule", "rules/triangulate.rule"}) {
        CHECK(gmap({"check-rule", data(s)}).code == 0);
    }
    // under a signature with face colors the edge insertion cannot be consistent
    auto colored = gmap({"check-rule", data("rules/fig5.rule"), "--spec",
                         "point:<a1 a2>:point;color:<a0 a1>:color"});
    CHECK(colored.code == 1);
    CHECK(gmap({"check-rule", data("rules/fig5.rule"), "--dim", "1"}).code == 2);
}

TEST_CASE("match") {
    auto all = gmap({"match", data("rules/split-edge.rule"), data("house.gmap")});
    CHECK(all.code == 0);
    CHECK(all.out.rfind("m0 e=e f=f g=g h=h\n", 0) == 0);
    auto one = gmap({"match", data("rules/translate.rule"), data("house.gmap"), "--match", "a=c", "--limit", "1"});
    CHECK(one.out == "m0 a=c b=e\n");
    CHECK(gmap({"match", data("rules/split-edge.rule"), data("empty.gmap")}).code == 1);
}

TEST_CASE("apply") {
    auto split = gmap({"apply", data("rules/split-edge.rule"), data("house.gmap"), "--match", "e=e,f=f,g=g,h=h"});
    REQUIRE(split.code == 0);
    CHECK(split.out.find("node m0.x1 point=(0.5, 1) color=#555555\n") != std::string::npos);

    auto out = scratch("tri.gmap");
    auto tri = gmap({"apply", data("rules/triangulate.rule"), data("house.gmap"), "--first", "-o", out.string()});
    REQUIRE(tri.code == 0);
    CHECK(tri.out.empty());
    CHECK(gmap({"check", out.string()}).code == 0);

    // the same document twice through fmt is stable
    auto once = gmap({"fmt", out.string()});
    CHECK(once.out == gmr::read_file(out));

    auto ambiguous = gmap({"apply", data("rules/split-edge.rule"), data("house.gmap"), "--match", "g=g"});
    CHECK(ambiguous.code == 0);  // g=g forces e=e, f=f, h=h
    auto none = gmap({"apply", data("rules/split-edge.rule"), data("house.gmap"), "--match", "e=a"});
    CHECK(none.code == 1);
    CHECK(none.out == "FAIL match (no match)\n");
    auto loose = gmap({"apply", data("rules/translate.rule"), data("house.gmap"), "--match", "a=c"});
    CHECK(loose.code == 0);
    auto both = gmap({"apply", data("rules/translate.rule"), data("house.gmap"), "--first", "--all"});
    CHECK(both.code == 2);

    auto refused = gmap({"apply", data("rules/fig6a.rule"), data("house.gmap"), "--first"});
    CHECK(refused.code == 1);
    CHECK(refused.out.find("FAIL embedding-completeness") != std::string::npos);
    auto unsafe = gmap({"apply", data("rules/fig6a.rule"), data("house.gmap"), "--first", "--unsafe"});
    CHECK(unsafe.code == 0);
    CHECK(gmap({"apply", data("rules/translate.rule"), data("broken.gmap"), "--first"}).code == 1);
}

TEST_CASE("apply --all") {
    // a vertex moves once per matched α1 arc: D has one α1 pair (two matches), B has two
    auto moved = gmap({"apply", data("rules/translate.rule"), data("house.gmap"), "--all"});
    REQUIRE(moved.code == 0);
    CHECK(moved.out.find("node k point=(2, 1)") != std::string::npos);
    CHECK(moved.out.find("node c point=(4, 3)") != std::string::npos);
}

TEST_CASE("orbit, eval, render") {
    auto o = gmap({"orbit", data("house.gmap"), "e", "--type", "<a1 a2>"});
    CHECK(o.out == "e c g i\n");
    CHECK(gmap({"orbit", data("house.gmap"), "zz", "--type", "<a1>"}).code == 2);
    auto e = gmap({"eval", data("house.gmap"), "mean(point{<a0 a1 a2>(a)})"});
    CHECK(e.out == "(0.4, 0.8)\n");
    CHECK(gmap({"eval", data("house.gmap"), "x.a0", "--bind", "x=a"}).out == "c\n");
    CHECK(gmap({"eval", data("house.gmap"), "a.point +"}).code == 2);
    auto svg = scratch("house.svg");
    CHECK(gmap({"render", data("house.gmap"), svg.string()}).code == 0);
    CHECK(gmr::read_file(svg).find("<polygon") != std::string::npos);
}

TEST_CASE("usage") {
    CHECK(gmap({}).code == 2);
    CHECK(gmap({"frobnicate"}).code == 2);
    auto help = gmap({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("check-rule") != std::string::npos);
}
