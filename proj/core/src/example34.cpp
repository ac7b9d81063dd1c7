#include <convrad/generate.hpp>

namespace convrad {

// Rank-2 operator on the open unit disk, in a cyclic basis
// (d/dT)^2 + f_1 (d/dT) + f_2 with 1 < |f_1| < |f_2| < |f_1|^2 near the
// boundary: log|f_1| climbs with two breaks (one zero of f_1 behind each),
// log|f_2| = 3 constant. The skeleton instance puts S at the entry point and
// the two break points; each break carries a branch edge into the disk where
// the moving radii merge and flatten, which is exactly what makes the first
// radius harmonic along the skeleton. The total height stays affine with
// slope -2 everywhere, and both index formulas give chi = 0.
WorkedExample worked_example_disk(const FieldConfig& fc) {
    WorkedExample ex;
    ex.inst.field = fc;
    const Rat W = fc.log_omega();
    CurveSkeleton& sk = ex.inst.sk;
    MultiRadiusProfile& prof = ex.inst.prof;
    prof.rank = 2;

    auto vertex = [&](const std::string& id, bool in_s, Rat dist) {
        Vertex v;
        v.id = id;
        v.in_S = in_s;
        v.dist = std::move(dist);
        sk.vertices.push_back(v);
    };
    vertex("x0", true, Rat(0));
    vertex("v1", true, Rat(0));
    vertex("v2", true, Rat(0));
    vertex("w1", false, Rat(1, 2));
    vertex("w2", false, Rat(3, 4));
    sk.edges.push_back({"a1", "x0", "v1", Rat(1, 4), 1, true});
    sk.edges.push_back({"a2", "v1", "v2", Rat(1, 4), 1, true});
    sk.edges.push_back({"b1", "v1", "w1", Rat(1, 2), 1, false});
    sk.edges.push_back({"b2", "v2", "w2", Rat(3, 4), 1, false});
    Ray ry;
    ry.id = "rb";
    ry.anchor = "v2";
    sk.rays.push_back(ry);

    auto seg = [&](const std::string& edge_id, std::vector<PLFunction::Point> pts) {
        return PLFunction::segment(sk.edge(edge_id).length, std::move(pts));
    };
    // Skeleton coordinate u from x0 toward the boundary (x0 at depth 1):
    // log R_1 = (1-u) + W - log|f_1|(u), log R_2 = (1-u) + W + log|f_1|(u) - 3
    // with log|f_1| = 7/4, then slope 1 from u=1/4, then slope 2 from u=1/2.
    prof.edge_fns["a1"] = {seg("a1", {{Rat(0), W - Rat(3, 4)}, {Rat(1, 4), W - Rat(1)}}),
                           seg("a1", {{Rat(0), W - Rat(1, 4)}, {Rat(1, 4), W - Rat(1, 2)}})};
    prof.edge_fns["a2"] = {seg("a2", {{Rat(0), W - Rat(1)}, {Rat(1, 4), W - Rat(3, 2)}}),
                           seg("a2", {{Rat(0), W - Rat(1, 2)}, {Rat(1, 4), W - Rat(1, 2)}})};
    prof.ray_fns["rb"] = {PLFunction::ray({{Rat(0), W - Rat(3, 2)}}, Rat(-3)),
                          PLFunction::ray({{Rat(0), W - Rat(1, 2)}}, Rat(1))};
    // Branch at the first break: the candidate radii omega/|f_1| and
    // omega |f_1| / |f_2| move toward each other with slope one and merge
    // where |f_1| crosses |f_2| / |f_1|; past the merge both are constant.
    prof.edge_fns["b1"] = {
        seg("b1", {{Rat(0), W - Rat(1)}, {Rat(1, 4), W - Rat(3, 4)}, {Rat(1, 2), W - Rat(3, 4)}}),
        seg("b1", {{Rat(0), W - Rat(1, 2)}, {Rat(1, 4), W - Rat(3, 4)}, {Rat(1, 2), W - Rat(3, 4)}})};
    prof.edge_fns["b2"] = {
        seg("b2", {{Rat(0), W - Rat(3, 2)}, {Rat(1, 2), W - Rat(1)}, {Rat(3, 4), W - Rat(1)}}),
        seg("b2", {{Rat(0), W - Rat(1, 2)}, {Rat(1, 2), W - Rat(1)}, {Rat(3, 4), W - Rat(1)}})};

    ex.inst.flags.liouville_all = true;

    // The matching cyclic operator on the segment u in [0, 3/4], with the
    // solvability threshold sigma(u) = u - 1 of the disk's empty
    // pseudo-triangulation.
    CyclicOperator& op = ex.op;
    op.rank = 2;
    op.domain = PLDomain::segment(Rat(3, 4));
    op.sigma = PLFunction::affine(op.domain, Rat(-1), Rat(1));
    op.coeff_logs.push_back(PLFunction::segment(
        Rat(3, 4),
        {{Rat(0), Rat(7, 4)}, {Rat(1, 4), Rat(7, 4)}, {Rat(1, 2), Rat(2)}, {Rat(3, 4), Rat(5, 2)}}));
    op.coeff_logs.push_back(PLFunction::constant(op.domain, Rat(3)));
    return ex;
}

}  // namespace convrad
