#include <convrad/generate.hpp>
#include <convrad/radii.hpp>

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace convrad;
using namespace testutil;

namespace {

// Disk with a branch chain of the given depth hanging off the S point.
CurveSkeleton disk_with_chain(long depth) {
    CurveSkeleton sk = disk_skeleton();
    std::string prev = "x";
    for (long k = 1; k <= depth; ++k) {
        std::string id = "w" + std::to_string(k);
        sk.vertices.push_back(vx(id, false, 0, Rat(k)));
        sk.edges.push_back(ed("c" + std::to_string(k), prev, id, Rat(1), false));
        prev = id;
    }
    return sk;
}

// The rank-3 shape flagged as the unproven pathology: two radii meet the
// solvability line at an off-skeleton point and the third keeps climbing, so
// the top height has a strictly positive Laplacian there.
struct Pathology {
    CurveSkeleton sk;
    MultiRadiusProfile prof;
};
Pathology pathological_rank3() {
    Pathology out;
    CurveSkeleton& sk = out.sk;
    sk.vertices.push_back(vx("a"));
    sk.vertices.push_back(vx("x", false, 0, Rat(1)));
    sk.vertices.push_back(vx("y", false, 0, Rat(2)));
    sk.rays.push_back(ra("ra", "a"));
    sk.edges.push_back(ed("einf", "a", "x", Rat(1), false));
    sk.edges.push_back(ed("ein", "x", "y", Rat(1), false));
    MultiRadiusProfile& p = out.prof;
    p.rank = 3;
    auto seg = [](Rat len, std::vector<PLFunction::Point> pts) { return PLFunction::segment(len, std::move(pts)); };
    p.edge_fns["einf"] = {seg(Rat(1), {{Rat(0), Rat(0)}, {Rat(1), Rat(-2)}}),
                          seg(Rat(1), {{Rat(0), Rat(0)}, {Rat(1), Rat(-1)}}),
                          seg(Rat(1), {{Rat(0), Rat(0)}, {Rat(1), Rat(-1)}})};
    p.edge_fns["ein"] = {seg(Rat(1), {{Rat(0), Rat(-2)}, {Rat(1, 2), Rat(-3)}, {Rat(1), Rat(-3)}}),
                         seg(Rat(1), {{Rat(0), Rat(-1)}, {Rat(1), Rat(-2)}}),
                         seg(Rat(1), {{Rat(0), Rat(-1)}, {Rat(1), Rat(-1)}})};
    p.ray_fns["ra"] = {PLFunction::constant(PLDomain::ray(), Rat(0)),
                       PLFunction::constant(PLDomain::ray(), Rat(0)),
                       PLFunction::constant(PLDomain::ray(), Rat(0))};
    return out;
}

}  // namespace

TEST_CASE("classify against the solvability threshold") {
    CurveSkeleton d = disk_skeleton();
    MultiRadiusProfile p = constant_profile(d, {Rat(-1)});
    auto c = classify(d, p, "x");
    CHECK(c.cls == std::vector<RadiusClass>{RadiusClass::SpectralNonsolvable});
    CHECK(c.i_sp == 1);
    CHECK(c.i_sol == 1);

    CurveSkeleton sk = disk_with_chain(2);
    MultiRadiusProfile p2 = constant_profile(sk, {Rat(-2)});
    auto c2 = classify(sk, p2, "w2");
    CHECK(c2.cls == std::vector<RadiusClass>{RadiusClass::Solvable});
    CHECK(c2.i_sp == 0);
    CHECK(c2.i_sol == 1);

    MultiRadiusProfile p3 = constant_profile(sk, {Rat(-3), Rat(-2), Rat(-1)});
    REQUIRE(p3.validate(sk).empty());
    auto c3 = classify(sk, p3, "w2");
    CHECK(c3.cls == std::vector<RadiusClass>{RadiusClass::SpectralNonsolvable, RadiusClass::Solvable,
                                             RadiusClass::Oversolvable});
    CHECK(c3.i_sp == 1);
    CHECK(c3.i_sol == 2);
}

TEST_CASE("partial heights") {
    CurveSkeleton d = disk_skeleton();
    MultiRadiusProfile p = constant_profile(d, {Rat(-1), Rat(-1)});
    CHECK(p.height_at(d, "x", 2) == Rat(-2));

    MultiRadiusProfile q;
    q.rank = 2;
    q.edge_fns["e"] = {PLFunction::segment(Rat(1), {{Rat(0), Rat(0)}, {Rat(1), Rat(-1)}}),
                       PLFunction::segment(Rat(1), {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}})};
    PLFunction h = q.height_plf_edge("e", 2);
    CHECK(h.is_constant());
    CHECK(h.eval(Rat(1, 2)) == Rat(0));
}

TEST_CASE("laplacian: constant, harmonic, degree-weighted") {
    CurveSkeleton d = disk_skeleton();
    MultiRadiusProfile p = constant_profile(d, {Rat(-1)});
    CHECK(laplacian_height(d, p, "x", 1) == Rat(0));

    CurveSkeleton star;
    star.vertices.push_back(vx("x"));
    star.vertices.push_back(vx("a"));
    star.vertices.push_back(vx("b"));
    star.edges.push_back(ed("e1", "x", "a"));
    star.edges.push_back(ed("e2", "x", "b"));
    MultiRadiusProfile q;
    q.rank = 1;
    q.edge_fns["e1"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(1))};
    q.edge_fns["e2"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(-1))};
    CHECK(laplacian_height(star, q, "x", 1) == Rat(0));

    CurveSkeleton w;
    w.vertices.push_back(vx("x"));
    w.vertices.push_back(vx("a"));
    w.vertices.push_back(vx("b"));
    w.vertices.push_back(vx("c"));
    w.edges.push_back(ed("e1", "x", "a", Rat(1), true, 1));
    w.edges.push_back(ed("e2", "x", "b", Rat(1), true, 1));
    w.edges.push_back(ed("e3", "x", "c", Rat(1), true, 2));
    MultiRadiusProfile r;
    r.rank = 1;
    r.edge_fns["e1"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(-1))};
    r.edge_fns["e2"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(-1))};
    r.edge_fns["e3"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(1))};
    CHECK(laplacian_height(w, r, "x", 1) == Rat(0));  // -1 - 1 + 2*1
}

TEST_CASE("controlling graphs") {
    CurveSkeleton sk = disk_with_chain(1);
    MultiRadiusProfile p = constant_profile(sk, {Rat(-3)});
    auto cg = controlling_graph(sk, p, 1);
    CHECK(cg.edges.empty());           // constant radii: only Gamma_S remains
    CHECK(cg.rays.count("r") == 1);

    // radius moving on the branch edge pulls it into the controlling graph
    p.edge_fns["c1"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-3), Rat(1))};
    auto cg2 = controlling_graph(sk, p, 1);
    CHECK(cg2.edges.count("c1") == 1);
    CHECK(germ_in_controlling(sk, p, Germ{Germ::Kind::Edge, "c1", true}, 1));
    CHECK(vertex_in_controlling(sk, p, "w1", 1));
    CHECK(endpoint_of_controlling(sk, p, "w1", 1));  // only one moving germ
    // a radius flattening before the stored leaf leaves it outside the graph
    p.edge_fns["c1"] = {PLFunction::segment(
        Rat(1), {{Rat(0), Rat(-3)}, {Rat(1, 2), Rat(-5, 2)}, {Rat(1), Rat(-5, 2)}})};
    CHECK_FALSE(vertex_in_controlling(sk, p, "w1", 1));
}

TEST_CASE("localized boundary slopes, three cases") {
    // case (i): a skeleton germ is left unchanged
    CurveSkeleton ann;
    ann.vertices.push_back(vx("a"));
    ann.vertices.push_back(vx("b"));
    ann.edges.push_back(ed("e", "a", "b"));
    ann.rays.push_back(ra("r1", "a"));
    ann.rays.push_back(ra("r2", "b"));
    MultiRadiusProfile p;
    p.rank = 1;
    p.edge_fns["e"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(3))};
    p.ray_fns["r1"] = {PLFunction::constant(PLDomain::ray(), Rat(-5))};
    p.ray_fns["r2"] = {PLFunction::constant(PLDomain::ray(), Rat(-2))};
    CHECK(localized_boundary_slope(ann, p, "a", Germ{Germ::Kind::Edge, "e", true}) == Rat(3));

    // case (ii): r = 2, stored height slope 3, one solution on the disk
    CurveSkeleton d2 = disk_skeleton();
    d2.vertices.push_back(vx("w", false, 0, Rat(1)));
    d2.edges.push_back(ed("b", "x", "w", Rat(1), false));
    MultiRadiusProfile q;
    q.rank = 2;
    q.edge_fns["b"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-5), Rat(3)),
                       PLFunction::constant(PLDomain::segment(Rat(1)), Rat(0))};
    q.ray_fns["r"] = {PLFunction::constant(PLDomain::ray(), Rat(-5)),
                      PLFunction::constant(PLDomain::ray(), Rat(0))};
    REQUIRE(q.validate(d2).empty());
    Germ into_disk{Germ::Kind::Edge, "b", true};
    CHECK(h0_disk_germ(d2, q, "x", into_disk) == 1);
    CHECK(localized_boundary_slope(d2, q, "x", into_disk) == Rat(4));

    // case (iii): toward Gamma_S at an off-skeleton point, one
    // overconvergent solution through it
    MultiRadiusProfile t;
    t.rank = 2;
    t.edge_fns["b"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-2), Rat(-3)),
                       PLFunction::constant(PLDomain::segment(Rat(1)), Rat(-1, 2))};
    t.ray_fns["r"] = {PLFunction::constant(PLDomain::ray(), Rat(-2)),
                      PLFunction::constant(PLDomain::ray(), Rat(-1, 2))};
    REQUIRE(t.validate(d2).empty());
    Germ toward{Germ::Kind::Edge, "b", false};  // out of w, toward x
    CHECK(h0_dagger(d2, t, "w") == 1);
    CHECK(localized_boundary_slope(d2, t, "w", toward) == Rat(2));

    // per-index route reproduces the case formulas exactly
    for (const auto& [sk, prof, v, g] :
         {std::make_tuple(ann, p, std::string("a"), Germ{Germ::Kind::Edge, "e", true}),
          std::make_tuple(d2, q, std::string("x"), into_disk),
          std::make_tuple(d2, t, std::string("w"), toward)}) {
        Rat sum(0);
        for (const Rat& s : localized_slopes_per_index(sk, prof, v, g)) sum += s;
        CHECK(sum == localized_boundary_slope(sk, prof, v, g));
    }
}

TEST_CASE("tube localization") {
    // trivial equation: everything cancels
    CurveSkeleton sk = disk_with_chain(1);
    MultiRadiusProfile triv = constant_profile(sk, {Rat(0)});
    TubeSpec all;
    for (const Germ& g : sk.germs_at("x")) all.singular.push_back(g);
    CHECK(localize_tube_laplacian(sk, triv, "x", all) == Rat(0));

    // off-skeleton point: dd - r chi_c(V^dag) + h0_dagger, no other singular
    // directions: -1 - 1*1 + 1 = -1. (Formula exercise on raw data.)
    CurveSkeleton d = disk_with_chain(1);
    MultiRadiusProfile p;
    p.rank = 1;
    p.edge_fns["c1"] = {PLFunction::affine(PLDomain::segment(Rat(1)), Rat(-1), Rat(1))};
    p.ray_fns["r"] = {PLFunction::constant(PLDomain::ray(), Rat(-1))};
    TubeSpec tube;
    tube.singular.push_back(d.toward_gamma_germ("w1"));
    CHECK(laplacian_height(d, p, "w1", 1) == Rat(-1));
    CHECK(h0_dagger(d, p, "w1") == 1);
    CHECK(d.tube_chi("w1", tube.singular) == 1);
    CHECK(localize_tube_laplacian(d, p, "w1", tube) == Rat(-1));

    // skeleton point with N_V > N_S
    CurveSkeleton w;
    w.vertices.push_back(vx("x"));
    w.vertices.push_back(vx("a"));
    w.vertices.push_back(vx("b"));
    w.vertices.push_back(vx("u", false, 0, Rat(1)));
    w.edges.push_back(ed("e1", "x", "a"));
    w.edges.push_back(ed("e2", "x", "b"));
    w.edges.push_back(ed("bb", "x", "u", Rat(1), false));
    MultiRadiusProfile q;
    q.rank = 2;
    auto aff = [&](Rat v, Rat s, Rat len) { return PLFunction::affine(PLDomain::segment(len), v, s); };
    q.edge_fns["e1"] = {aff(Rat(-4), Rat(0), Rat(1)), aff(Rat(-2), Rat(-1), Rat(1))};
    q.edge_fns["e2"] = {aff(Rat(-4), Rat(0), Rat(1)), aff(Rat(-2), Rat(-1), Rat(1))};
    q.edge_fns["bb"] = {aff(Rat(-4), Rat(0), Rat(1)), aff(Rat(-2), Rat(0), Rat(1))};
    REQUIRE(q.validate(w).empty());
    // dd^c H_2(x) = -1 - 1 + 0 = -2; N_V = 3, N_S = 2, h0(bb) = 0
    TubeSpec tube2;
    for (const Germ& g : w.germs_at("x")) tube2.singular.push_back(g);
    CHECK(laplacian_height(w, q, "x", 2) == Rat(-2));
    CHECK(localize_tube_laplacian(w, q, "x", tube2) == Rat(0));

    // a tube missing a moving germ is not adapted
    TubeSpec not_adapted;
    not_adapted.singular.push_back(Germ{Germ::Kind::Edge, "e1", true});
    CHECK_THROWS_AS(localize_tube_laplacian(w, q, "x", not_adapted), std::invalid_argument);
}

TEST_CASE("canonical tube picks the controlling directions") {
    CurveSkeleton sk = disk_with_chain(1);
    MultiRadiusProfile p = constant_profile(sk, {Rat(-3)});
    TubeSpec tube = canonical_tube(sk, p, "x");
    REQUIRE(tube.singular.size() == 1);  // just the ray: the branch is constant
    CHECK(tube.singular[0].kind == Germ::Kind::Ray);
}

TEST_CASE("weak super-harmonicity: trivial pass and injected violation") {
    CurveSkeleton ann = annulus_skeleton();
    MultiRadiusProfile triv = constant_profile(ann, {Rat(0)});
    WshReport rep = check_weak_superharmonicity(ann, triv);
    CHECK(rep.pass);

    std::mt19937_64 rng(99);
    GenOptions opt;
    opt.inject_wsh_violation = true;
    for (int k = 0; k < 20; ++k) {
        GeneratedInstance gi = random_instance(rng, opt);
        REQUIRE(gi.sk.validate().empty());
        REQUIRE(gi.prof.validate(gi.sk).empty());
        WshReport r = check_weak_superharmonicity(gi.sk, gi.prof);
        CHECK_FALSE(r.pass);
        bool found = false;
        for (const WshItem& item : r.violations)
            if (item.vertex == gi.injected_at && item.lhs > Rat(0)) found = true;
        CHECK(found);
    }
}

TEST_CASE("pathological sets") {
    // C_1 is empty and fully spectral profiles have no pathological points
    std::mt19937_64 rng(3);
    GeneratedInstance gi = random_instance(rng);
    PathologicalSets ps = pathological_sets(gi.sk, gi.prof);
    CHECK(ps.C.front().empty());
    for (const auto& c : ps.C) CHECK(c.empty());

    // the constructed rank-3 pathology: x lands in C_{S,3}
    Pathology path = pathological_rank3();
    REQUIRE(path.sk.validate().empty());
    REQUIRE(path.prof.validate(path.sk).empty());
    PathologicalSets ps3 = pathological_sets(path.sk, path.prof);
    CHECK(ps3.C[2].count("x") == 1);
    CHECK(ps3.C[0].empty());
    CHECK(ps3.E[2].count("x") == 1);  // dd^c H_3(x) = +1

    // rank 2 on a three-vertex tree: R_2 solvable at an end-point of its
    // controlling graph that carries variation of R_1 and of the height
    CurveSkeleton t3;
    t3.vertices.push_back(vx("a"));
    t3.vertices.push_back(vx("x", false, 0, Rat(1)));
    t3.vertices.push_back(vx("y", false, 0, Rat(2)));
    t3.rays.push_back(ra("ra", "a"));
    t3.edges.push_back(ed("e1", "a", "x", Rat(1), false));
    t3.edges.push_back(ed("e2", "x", "y", Rat(1), false));
    MultiRadiusProfile q;
    q.rank = 2;
    auto seg1 = [](std::vector<PLFunction::Point> pts) { return PLFunction::segment(Rat(1), std::move(pts)); };
    // R_2 climbs to the threshold at x and stays clamped beyond; R_1 keeps
    // moving past x, so x is an end-point of Gamma_{S,2} inside Gamma_{S,1}
    q.edge_fns["e1"] = {seg1({{Rat(0), Rat(-3)}, {Rat(1), Rat(-3)}}), seg1({{Rat(0), Rat(-2)}, {Rat(1), Rat(-1)}})};
    q.edge_fns["e2"] = {seg1({{Rat(0), Rat(-3)}, {Rat(1), Rat(-4)}}), seg1({{Rat(0), Rat(-1)}, {Rat(1), Rat(-1)}})};
    q.ray_fns["ra"] = {PLFunction::constant(PLDomain::ray(), Rat(-3)),
                       PLFunction::constant(PLDomain::ray(), Rat(-2))};
    REQUIRE(t3.validate().empty());
    REQUIRE(q.validate(t3).empty());
    CHECK(classify(t3, q, "x").cls[1] == RadiusClass::Solvable);
    CHECK(endpoint_of_controlling(t3, q, "x", 2));
    CHECK(vertex_in_controlling(t3, q, "x", 1));
    CHECK(vertex_in_height_controlling(t3, q, "x", 2));
    PathologicalSets ps2 = pathological_sets(t3, q);
    CHECK(ps2.C[1].count("x") == 1);
    CHECK(ps2.C[0].empty());
}

TEST_CASE("super-harmonicity at C: gate and surfaced pathology") {
    CurveSkeleton sk = disk_with_chain(1);
    MultiRadiusProfile triv = constant_profile(sk, {Rat(-1)});
    CSuperharmonicityFlags all{true, true, true};
    auto v = check_superharmonicity_at_C(sk, triv, "w1", all);
    CHECK(v.kind == CSuperharmonicityVerdict::Kind::Pass);

    CSuperharmonicityFlags no_dual{true, false, true};
    auto v2 = check_superharmonicity_at_C(sk, triv, "w1", no_dual);
    CHECK(v2.kind == CSuperharmonicityVerdict::Kind::NoClaim);
    CHECK(v2.detail == "hypotheses not met, no claim");

    CHECK_THROWS_AS(check_superharmonicity_at_C(sk, triv, "x", all), std::invalid_argument);

    Pathology path = pathological_rank3();
    auto v3 = check_superharmonicity_at_C(path.sk, path.prof, "x", all);
    CHECK(v3.kind == CSuperharmonicityVerdict::Kind::Violation);
    CHECK(v3.laplacians[2] == Rat(1));
}

TEST_CASE("change of triangulation") {
    std::mt19937_64 rng(31);
    GeneratedInstance gi = random_instance(rng);
    REQUIRE(gi.sk.validate().empty());

    // identity refinement
    RefinedInstance same = change_triangulation(gi.sk, gi.prof, TriangulationRefinement{});
    CHECK(same.prof.edge_fns == gi.prof.edge_fns);
    CHECK(same.prof.ray_fns == gi.prof.ray_fns);

    // promoted disk marker: spectral constant shifts by the depth
    CurveSkeleton mk;
    mk.markers.push_back({"d", 1});
    MultiRadiusProfile mp;
    mp.rank = 1;
    mp.marker_consts["d"] = {Rat(-3)};
    TriangulationRefinement ref;
    ref.promote_markers["d"] = Rat(1);
    RefinedInstance prom = change_triangulation(mk, mp, ref);
    CHECK(prom.sk.markers.empty());
    CHECK(prom.sk.vertex("d.v").in_S);
    const PLFunction& f = prom.prof.ray_fns.at("d.ray")[0];
    CHECK(f.start_value() == Rat(-2));
    CHECK(f.tail_slope() == Rat(-1));  // the spectral value marches down along the new skeleton

    // oversolvable clamp at the threshold
    MultiRadiusProfile mp2;
    mp2.rank = 1;
    mp2.marker_consts["d"] = {Rat(-1, 2)};
    RefinedInstance prom2 = change_triangulation(mk, mp2, ref);
    CHECK(prom2.prof.ray_fns.at("d.ray")[0].start_value() == Rat(0));
    CHECK(prom2.prof.ray_fns.at("d.ray")[0].eval(Rat(1, 2)) == Rat(0));  // clamped until the old threshold
}

TEST_CASE("split by a separating index") {
    CurveSkeleton mk;
    mk.markers.push_back({"d", 1});
    MultiRadiusProfile mp;
    mp.rank = 2;
    mp.marker_consts["d"] = {Rat(-2), Rat(-1)};
    SplitResult full = split_profile(mk, mp, 1);
    CHECK(full.ok);
    CHECK(full.geq.rank == 2);
    CHECK(full.lt.rank == 0);

    SplitResult s = split_profile(mk, mp, 2);
    CHECK(s.ok);
    CHECK(s.geq.rank == 1);
    CHECK(s.lt.rank == 1);
    CHECK(s.geq.marker_consts.at("d")[0] == Rat(-1));
    CHECK(s.direct_summand);

    // separation fails where the radii touch
    CurveSkeleton sk = disk_skeleton();
    sk.vertices.push_back(vx("w", false, 0, Rat(2)));
    sk.edges.push_back(ed("b", "x", "w", Rat(2), false));
    MultiRadiusProfile p;
    p.rank = 2;
    p.edge_fns["b"] = {PLFunction::segment(Rat(2), {{Rat(0), Rat(-6)}, {Rat(1), Rat(-5)}, {Rat(2), Rat(-6)}}),
                       PLFunction::constant(PLDomain::segment(Rat(2)), Rat(-5))};
    p.ray_fns["r"] = {PLFunction::constant(PLDomain::ray(), Rat(-6)),
                      PLFunction::constant(PLDomain::ray(), Rat(-5))};
    REQUIRE(p.validate(sk).empty());
    SplitResult bad = split_profile(sk, p, 2);
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness == "edge b at t=1/1");
}

TEST_CASE("localization consistency on random instances") {
    std::mt19937_64 rng(57);
    for (int iter = 0; iter < 40; ++iter) {
        GeneratedInstance gi = random_instance(rng);
        for (const Vertex& v : gi.sk.vertices)
            for (const Germ& g : gi.sk.germs_at(v.id)) {
                Rat sum(0);
                for (const Rat& s : localized_slopes_per_index(gi.sk, gi.prof, v.id, g)) sum += s;
                CHECK(sum == localized_boundary_slope(gi.sk, gi.prof, v.id, g));
            }
    }
}

TEST_CASE("triangulation invariance of the intrinsic Laplacian and Irr_X") {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 25; ++iter) {
        GeneratedInstance gi = random_instance(rng);
        REQUIRE(gi.sk.validate().empty());
        InvarianceReport rep = invariance_check(gi.sk, gi.prof, gi.flags, rng, 3);
        for (const auto& f : rep.failures) MESSAGE(f);
        CHECK(rep.pass);
    }
}

TEST_CASE("monotone heights into solvability-free disk directions") {
    std::mt19937_64 rng(83);
    for (int iter = 0; iter < 40; ++iter) {
        GeneratedInstance gi = random_instance(rng);
        for (const Vertex& v : gi.sk.vertices) {
            if (v.dist != Rat(0)) continue;
            for (const Germ& g : gi.sk.germs_at(v.id)) {
                if (g.kind != Germ::Kind::Edge || gi.sk.germ_in_gamma(g)) continue;
                if (gi.sk.germ_far_vertex(g) == v.id) continue;
                for (long i = 1; i <= gi.prof.rank; ++i) {
                    if (!free_of_solvability_at(gi.sk, gi.prof, v.id, i)) continue;
                    CHECK(gi.prof.germ_height_slope(gi.sk, g, i) >= Rat(0));
                }
            }
        }
    }
}
