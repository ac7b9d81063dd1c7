#include <convrad/generate.hpp>
#include <convrad/skeleton.hpp>

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace convrad;
using namespace testutil;

TEST_CASE("validate: clean instances pass") {
    CurveSkeleton sk = disk_skeleton();
    CHECK(sk.validate().empty());
    CurveSkeleton mark;
    mark.markers.push_back({"d", 1});
    CHECK(mark.validate().empty());
}

TEST_CASE("validate: skeleton edge with an off-skeleton endpoint") {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("a"));
    sk.vertices.push_back(vx("b", false, 0, Rat(1)));
    sk.edges.push_back(ed("e", "a", "b", Rat(1), true));
    sk.rays.push_back(ra("r", "a"));
    auto viol = sk.validate();
    REQUIRE_FALSE(viol.empty());
    bool found = false;
    for (const auto& v : viol)
        if (v.where == "e") found = true;
    CHECK(found);
}

TEST_CASE("validate: pseudo-annulus component without an S vertex") {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("a", false));
    sk.rays.push_back(ra("r1", "a"));
    sk.rays.push_back(ra("r2", "a"));
    auto viol = sk.validate();
    REQUIRE_FALSE(viol.empty());
    CHECK(viol.front().what.find("S") != std::string::npos);
}

TEST_CASE("validate: dist fields must be the exact graph distance") {
    CurveSkeleton sk = disk_skeleton();
    sk.vertices.push_back(vx("w", false, 0, Rat(2)));  // true distance is 1
    sk.edges.push_back(ed("b", "x", "w", Rat(1), false));
    auto viol = sk.validate();
    REQUIRE_FALSE(viol.empty());
    CHECK(viol.front().where == "w");
}

TEST_CASE("chi_c: disk marker, pseudo-annulus, genus-1 with one ray") {
    CurveSkeleton mark;
    mark.markers.push_back({"d", 1});
    CHECK(mark.chi_c() == 1);

    CHECK(annulus_skeleton().chi_c() == 0);

    CurveSkeleton g1;
    g1.vertices.push_back(vx("x", true, 1));
    g1.rays.push_back(ra("r", "x"));
    CHECK(g1.chi_c() == -1);  // 2 - 2*1 - 1
}

TEST_CASE("chi_x with explicit germ sets") {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("x"));
    sk.vertices.push_back(vx("a"));
    sk.vertices.push_back(vx("b"));
    sk.edges.push_back(ed("e1", "x", "a"));
    sk.edges.push_back(ed("e2", "x", "b"));
    CHECK(sk.chi_x_gamma("x") == 0);  // genus 0, t 1, two germs

    CurveSkeleton g1;
    g1.vertices.push_back(vx("x", true, 1));
    g1.vertices.push_back(vx("a"));
    g1.edges.push_back(ed("e", "x", "a"));
    CHECK(g1.chi_x_gamma("x") == -1);  // 2 - 2 - 1

    CurveSkeleton deg2;
    deg2.vertices.push_back(vx("x", true, 0, Rat(0), false, 2));
    deg2.vertices.push_back(vx("a", true, 0, Rat(0), false, 2));
    deg2.vertices.push_back(vx("b", true, 0, Rat(0), false, 2));
    deg2.edges.push_back(ed("e1", "x", "a", Rat(1), true, 2));
    deg2.edges.push_back(ed("e2", "x", "b", Rat(1), true, 2));
    CHECK(deg2.chi_x_gamma("x") == 0);  // 4 - 0 - 4
}

TEST_CASE("sum_chi_check on the spec instances") {
    CurveSkeleton d = disk_skeleton();
    auto res = d.sum_chi_check({"x"});
    CHECK(res.lhs == 1);
    CHECK(res.rhs == 1);
    CHECK(res.equal);

    CurveSkeleton path;
    path.vertices.push_back(vx("a"));
    path.vertices.push_back(vx("b"));
    path.vertices.push_back(vx("c"));
    path.edges.push_back(ed("e1", "a", "b"));
    path.edges.push_back(ed("e2", "b", "c"));
    path.rays.push_back(ra("r1", "a"));
    path.rays.push_back(ra("r2", "c"));
    REQUIRE(path.validate().empty());
    auto r2 = path.sum_chi_check({"a", "b", "c"});
    CHECK(r2.lhs == 0);
    CHECK(r2.equal);
    // b is a pass-through point: dropping it must not change the sum
    auto r3 = path.sum_chi_check({"a", "c"});
    CHECK(r3.lhs == 0);
    CHECK(r3.equal);

    CurveSkeleton g2;
    g2.vertices.push_back(vx("x", true, 2));
    auto r4 = g2.sum_chi_check({"x"});
    CHECK(r4.lhs == -2);
    CHECK(r4.rhs == -2);
    CHECK(r4.equal);
}

TEST_CASE("sum_chi_check names a missing core point") {
    CurveSkeleton g1;
    g1.vertices.push_back(vx("x", true, 1));
    g1.rays.push_back(ra("r", "x"));
    CHECK_THROWS_WITH_AS(g1.sum_chi_check({}), "sum_chi_check: S' misses the core point x",
                         std::invalid_argument);
}

TEST_CASE("chi_c_cover on the spec instances") {
    // annulus split into two overlapping annuli
    CurveSkeleton ann;
    ann.vertices.push_back(vx("a"));
    ann.vertices.push_back(vx("b"));
    ann.edges.push_back(ed("e", "a", "b"));
    ann.rays.push_back(ra("r1", "a"));
    ann.rays.push_back(ra("r2", "b"));
    REQUIRE(ann.validate().empty());
    SubDomain u{{"a"}, {"e"}, {"r1"}, {}};
    SubDomain v{{"b"}, {"e"}, {"r2"}, {}};
    auto res = ann.chi_c_cover(u, v);
    CHECK(res.lhs == 0);
    CHECK(res.rhs == 0);
    CHECK(res.equal);

    // disk-with-S-point covered by a disk piece and an annulus piece
    CurveSkeleton d = disk_skeleton();
    SubDomain du{{"x"}, {}, {"r"}, {}};  // everything
    SubDomain dv{{}, {}, {"r"}, {}};     // the open annulus toward infinity
    auto res2 = d.chi_c_cover(du, dv);
    CHECK(res2.lhs == 1);
    CHECK(res2.equal);

    // genus-1 component: 2-vertex cycle, intersection two annuli
    CurveSkeleton cyc;
    cyc.vertices.push_back(vx("a"));
    cyc.vertices.push_back(vx("b"));
    cyc.edges.push_back(ed("e1", "a", "b"));
    cyc.edges.push_back(ed("e2", "a", "b"));
    REQUIRE(cyc.validate().empty());
    CHECK(cyc.chi_c() == 0);
    SubDomain cu{{"a"}, {"e1", "e2"}, {}, {}};
    SubDomain cv{{"b"}, {"e1", "e2"}, {}, {}};
    auto res3 = cyc.chi_c_cover(cu, cv);
    CHECK(res3.lhs == 0);
    CHECK(res3.equal);

    SubDomain not_cover{{"a"}, {"e1", "e2"}, {}, {}};
    CHECK_THROWS_AS(cyc.chi_c_cover(not_cover, not_cover), std::invalid_argument);
}

TEST_CASE("tube_chi by singular directions") {
    CurveSkeleton sk;
    sk.vertices.push_back(vx("x"));
    sk.vertices.push_back(vx("a"));
    sk.vertices.push_back(vx("b"));
    sk.vertices.push_back(vx("c"));
    sk.edges.push_back(ed("e1", "x", "a"));
    sk.edges.push_back(ed("e2", "x", "b"));
    sk.edges.push_back(ed("e3", "x", "c"));
    Germ g1{Germ::Kind::Edge, "e1", true};
    Germ g2{Germ::Kind::Edge, "e2", true};
    Germ g3{Germ::Kind::Edge, "e3", true};
    CHECK(sk.tube_chi("x", {g1}) == 1);            // closed disk tube
    CHECK(sk.tube_chi("x", {g1, g2, g3}) == -1);   // three singular directions
    CurveSkeleton g1sk;
    g1sk.vertices.push_back(vx("x", true, 1));
    g1sk.vertices.push_back(vx("a"));
    g1sk.vertices.push_back(vx("b"));
    g1sk.edges.push_back(ed("e1", "x", "a"));
    g1sk.edges.push_back(ed("e2", "x", "b"));
    CHECK(g1sk.tube_chi("x", {g1, g2}) == -2);     // genus 1, two directions
}

TEST_CASE("chi_c is invariant under edge subdivision") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 60; ++iter) {
        GeneratedInstance gi = random_instance(rng);
        REQUIRE(gi.sk.validate().empty());
        long chi0 = gi.sk.chi_c();
        if (gi.sk.edges.empty()) continue;
        const Edge e = gi.sk.edges[rng() % gi.sk.edges.size()];
        CurveSkeleton sub = gi.sk;
        sub.edges.erase(std::remove_if(sub.edges.begin(), sub.edges.end(),
                                       [&](const Edge& x) { return x.id == e.id; }),
                        sub.edges.end());
        Rat t = e.length / Rat(2);
        Vertex mid = vx(e.id + ".mid", false, 0, gi.sk.dist_along_edge(e.id).eval(t));
        mid.in_S = false;
        sub.vertices.push_back(mid);
        sub.edges.push_back(ed(e.id + ".l", e.from, mid.id, t, e.in_gamma, e.deg));
        sub.edges.push_back(ed(e.id + ".r", mid.id, e.to, e.length - t, e.in_gamma, e.deg));
        REQUIRE(sub.validate().empty());
        CHECK(sub.chi_c() == chi0);
    }
}

TEST_CASE("sum_chi_check holds for every S' containing the core, on random skeletons") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        GeneratedInstance gi = random_instance(rng);
        REQUIRE(gi.sk.validate().empty());
        auto core = gi.sk.core_points();
        std::vector<std::string> optional_pts;
        for (const Vertex& v : gi.sk.vertices)
            if (v.in_S && !core.count(v.id)) optional_pts.push_back(v.id);
        for (int round = 0; round < 8; ++round) {
            std::set<std::string> s_prime = core;
            for (const auto& id : optional_pts)
                if (rng() % 2) s_prime.insert(id);
            auto res = gi.sk.sum_chi_check(s_prime);
            CHECK(res.equal);
        }
    }
}

TEST_CASE("chi_c_cover additivity on random covers") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 120) {
        GeneratedInstance gi = random_instance(rng);
        REQUIRE(gi.sk.validate().empty());
        auto [u, v] = random_cover(rng, gi.sk);
        auto res = gi.sk.chi_c_cover(u, v);
        CHECK(res.equal);
        ++done;
    }
}
