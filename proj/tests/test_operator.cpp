#include <convrad/cyclic_op.hpp>
#include <convrad/generate.hpp>

#include <doctest.h>

#include <random>

using namespace convrad;

namespace {

CyclicOperator constant_op(long rank, const std::vector<std::optional<Rat>>& logs, Rat sigma0) {
    CyclicOperator op;
    op.rank = rank;
    op.domain = PLDomain::segment(Rat(1));
    op.sigma = PLFunction::constant(op.domain, sigma0);
    for (const auto& l : logs) {
        if (l)
            op.coeff_logs.push_back(PLFunction::constant(op.domain, *l));
        else
            op.coeff_logs.push_back(std::nullopt);
    }
    return op;
}

}  // namespace

TEST_CASE("young radii at a point") {
    FieldConfig fc;  // residue characteristic 0: log omega = 0
    // worked coefficients: hull slopes [2, 1], both radii valid below the threshold
    CyclicOperator op = constant_op(2, {Rat(2), Rat(3)}, Rat(-1, 2));
    auto radii = young_radii(op, fc, Rat(0));
    REQUIRE(radii.size() == 2);
    CHECK(radii[0].log_R == Rat(-2));
    CHECK(radii[1].log_R == Rat(-1));
    CHECK(radii[0].valid);
    CHECK(radii[1].valid);

    CyclicOperator single = constant_op(1, {Rat(5)}, Rat(-1));
    auto r1 = young_radii(single, fc, Rat(1, 2));
    CHECK(r1[0].log_R == Rat(-5));
    CHECK(r1[0].valid);

    // (0,0),(1,1),(2,4),(3,4): hull slopes [2,2,0]; the third radius is at
    // the bound, hence invalid whenever sigma < 0
    CyclicOperator op3 = constant_op(3, {Rat(1), Rat(4), Rat(4)}, Rat(-1));
    auto r3 = young_radii(op3, fc, Rat(0));
    CHECK(r3[0].log_R == Rat(-2));
    CHECK(r3[1].log_R == Rat(-2));
    CHECK(r3[2].log_R == Rat(0));
    CHECK(r3[0].valid);
    CHECK(r3[1].valid);
    CHECK_FALSE(r3[2].valid);

    CyclicOperator triv = constant_op(2, {std::nullopt, std::nullopt}, Rat(-1));
    CHECK_THROWS_AS(young_radii(triv, fc, Rat(0)), std::domain_error);

    // log omega enters additively
    FieldConfig f5;
    f5.p = 5;
    auto r5 = young_radii(op, f5, Rat(0));
    CHECK(r5[0].log_R == Rat(-1, 4) - Rat(2));
}

TEST_CASE("young profile over the whole domain") {
    FieldConfig fc;
    WorkedExample ex = worked_example_disk(fc);
    YoungProfileResult res = young_profile(ex.op, fc);
    REQUIRE(res.ok);
    REQUIRE(res.log_R.size() == 2);
    // mirror slopes and a constant total height
    PLFunction h2 = plf_sum(res.log_R[0], res.log_R[1]);
    CHECK(h2.is_constant());
    CHECK(h2.eval(Rat(0)) == Rat(-3));
    CHECK(res.log_R[0].break_params() == res.log_R[1].break_params());
    CHECK(res.log_R[0].break_params().size() == 2);
    // the output satisfies the profile ordering pointwise
    for (const auto& pbp : res.log_R[0].breakpoints()) CHECK(res.log_R[0].eval(pbp.t) <= res.log_R[1].eval(pbp.t));
    for (const auto& pbp : res.log_R[1].breakpoints()) CHECK(res.log_R[0].eval(pbp.t) <= res.log_R[1].eval(pbp.t));
    // the radii match the skeleton instance after the A-4 shift by the depth
    const MultiRadiusProfile& prof = ex.inst.prof;
    auto check_at = [&](const std::string& edge, Rat t_local, Rat u_global) {
        for (long i = 1; i <= 2; ++i) {
            Rat young_v = res.log_R[static_cast<std::size_t>(i - 1)].eval(u_global);
            Rat stored = prof.fns_for_edge(edge)[static_cast<std::size_t>(i - 1)].eval(t_local);
            CHECK(stored == young_v + (Rat(1) - u_global));
        }
    };
    check_at("a1", Rat(0), Rat(0));
    check_at("a1", Rat(1, 8), Rat(1, 8));
    check_at("a2", Rat(1, 8), Rat(3, 8));
    check_at("a2", Rat(1, 4), Rat(1, 2));

    // constant coefficients give a constant profile (sigma = -1/2 keeps the
    // second radius strictly inside the small-radius regime; at equality the
    // candidate is conservatively invalid)
    CyclicOperator cst = constant_op(2, {Rat(2), Rat(3)}, Rat(-1, 2));
    YoungProfileResult rc = young_profile(cst, fc);
    REQUIRE(rc.ok);
    CHECK(rc.log_R[0].is_constant());
    CHECK(rc.log_R[1].is_constant());
    CyclicOperator at_bound = constant_op(2, {Rat(2), Rat(3)}, Rat(-1));
    CHECK_FALSE(young_profile(at_bound, fc).ok);  // equality with the bound refuses

    // a single break of slope change 2 in log|g_1| makes both radii break
    // there, with the total height staying harmonic across it
    CyclicOperator one_break;
    one_break.rank = 2;
    one_break.domain = PLDomain::segment(Rat(2));
    one_break.sigma = PLFunction::constant(one_break.domain, Rat(-2));
    one_break.coeff_logs.push_back(
        PLFunction::segment(Rat(2), {{Rat(0), Rat(7)}, {Rat(1), Rat(6)}, {Rat(2), Rat(7)}}));
    one_break.coeff_logs.push_back(PLFunction::constant(one_break.domain, Rat(11)));
    YoungProfileResult rb = young_profile(one_break, fc);
    REQUIRE(rb.ok);
    CHECK(rb.log_R[0].break_params() == std::vector<Rat>{Rat(1)});
    CHECK(rb.log_R[1].break_params() == std::vector<Rat>{Rat(1)});
    CHECK(rb.log_R[0].slope(Rat(1), Dir::Forward) - rb.log_R[0].slope(Rat(1, 2), Dir::Forward) == Rat(-2));
    CHECK(plf_sum(rb.log_R[0], rb.log_R[1]).is_constant());  // dd^c H_2 vanishes at the break

    // validity failure names the spot where the regime is left
    CyclicOperator shallow = constant_op(1, {Rat(1, 4)}, Rat(-1, 2));
    YoungProfileResult bad = young_profile(shallow, fc);
    CHECK_FALSE(bad.ok);
    CHECK(bad.refusal.find("small-radius") != std::string::npos);

    // absent top coefficient: the formula refuses
    CyclicOperator no_top = constant_op(2, {Rat(2), std::nullopt}, Rat(-1));
    YoungProfileResult nt = young_profile(no_top, fc);
    CHECK_FALSE(nt.ok);
}

TEST_CASE("hull consistency: young slopes total the top coefficient") {
    FieldConfig fc;
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        long r = 1 + static_cast<long>(rng() % 4);
        std::vector<std::optional<Rat>> logs;
        for (long j = 1; j <= r; ++j) {
            if (j < r && rng() % 4 == 0)
                logs.push_back(std::nullopt);
            else
                logs.push_back(Rat(static_cast<long>(rng() % 13) - 2));
        }
        CyclicOperator op = constant_op(r, logs, Rat(-100));
        auto radii = young_radii(op, fc, Rat(1, 2));
        Rat total(0);
        for (const auto& yr : radii) total += yr.log_R;
        CHECK(total == -*logs.back());  // sum of slopes = log|g_r| - 0
    }
}

TEST_CASE("frobenius slope transform") {
    CHECK(frobenius_height_slope(Rat(0), 1, 5) == Rat(-4));
    CHECK(frobenius_height_slope(Rat(3), 2, 3) == Rat(-1));
    CHECK(frobenius_height_slope(Rat(2 * (7 - 1)), 2, 7) == Rat(0));
    CHECK_THROWS_AS(frobenius_height_slope(Rat(1), 1, 0), std::domain_error);
    // k-fold composition drifts linearly
    Rat s(5);
    for (int k = 1; k <= 5; ++k) {
        s = frobenius_height_slope(s, 3, 2);
        CHECK(s == Rat(5) - Rat(k) * Rat(3));
    }
}

TEST_CASE("generalized index ledger") {
    FieldConfig fc;
    fc.p = 3;
    GenIndexLedger led = gen_index_ledger(0, 1, fc);
    CHECK(led.chi_gen_D0_nabla == 1);  // trivial equation on the disk has index 1
    CHECK(led.invariants_ok());

    GenIndexLedger led2 = gen_index_ledger(2, 2, fc);
    CHECK(led2.chi_gen_D0_nabla == 4);
    CHECK(led2.chi_gen_H_dagger == -2);
    CHECK(led2.invariants_ok());

    GenIndexLedger push = pushforward_ledger(led2);
    CHECK(push.chi_gen_D0 == led2.chi_gen_D0 + 4);
    CHECK(push.chi_gen_Dinf == led2.chi_gen_Dinf - 4);
    CHECK(push.chi_gen_D0 + push.chi_gen_Dinf == led2.chi_gen_D0 + led2.chi_gen_Dinf);
    CHECK(push.invariants_ok());

    FieldConfig f0;
    GenIndexLedger led0 = gen_index_ledger(1, 1, f0);
    CHECK_THROWS_AS(pushforward_ledger(led0), std::domain_error);
}

TEST_CASE("taylor oracle: trivial, exponential, worked constants") {
    // d/dT: polynomial solutions, no decay detected
    TaylorOracleResult triv = taylor_radius_oracle({{}}, 3, 64);
    CHECK(triv.applicable);
    CHECK_FALSE(triv.log_radius.has_value());

    // d/dT - 1: v(a_n) = -v_p(n!), the estimate approaches log omega
    for (long p : {2L, 3L}) {
        TaylorOracleResult e = taylor_radius_oracle({{Rat(-1)}}, p, 600);
        REQUIRE(e.applicable);
        REQUIRE(e.log_radius.has_value());
        Rat target(-1, p - 1);
        Rat diff = *e.log_radius - target;
        CHECK(diff * diff * Rat(600) <= Rat(1));
    }

    // rank-2 operator with constant coefficients in the worked regime:
    // the oracle agrees with the smallest Young radius
    const long p = 3;
    FieldConfig fc;
    fc.p = p;
    // g_1 = 1/p^2, g_2 = 1/p^3: log|g_1| = 2, log|g_2| = 3
    std::vector<std::vector<Rat>> coeffs = {{Rat(1, 9)}, {Rat(1, 27)}};
    CyclicOperator op = constant_op(2, {Rat(2), Rat(3)}, Rat(0));
    auto young = young_radii(op, fc, Rat(0));
    TaylorOracleResult o = taylor_radius_oracle(coeffs, p, 800);
    REQUIRE(o.applicable);
    REQUIRE(o.log_radius.has_value());
    Rat diff = *o.log_radius - young[0].log_R;
    CHECK(diff * diff * Rat(800) <= Rat(1));

    CHECK_FALSE(taylor_radius_oracle({{Rat(1)}}, 0, 100).applicable);
}
