#pragma once

#include <convrad/field.hpp>
#include <convrad/plf.hpp>

#include <optional>
#include <string>
#include <vector>

namespace convrad {

// Monic differential operator of order `rank` in a cyclic basis, described
// along one edge or ray by the log-norms of its coefficients: coeff_logs[j-1]
// is log|g_j| for j = 1..rank, absent meaning the zero coefficient. `sigma`
// is the solvability threshold along the domain (log of the generic-disk
// modulus), needed to decide where the small-radius regime applies.
struct CyclicOperator {
    long rank = 1;
    PLDomain domain = PLDomain::segment(Rat(1));
    PLFunction sigma;
    std::vector<std::optional<PLFunction>> coeff_logs;

    bool trivial() const {
        for (const auto& c : coeff_logs)
            if (c) return false;
        return true;
    }
    void check() const;
};

struct YoungRadius {
    Rat log_R;
    bool valid = false;  // log R < log omega + sigma(t); invalid entries are lower bounds only
};

// Radii at one point by the Young Newton-polygon formula: log R_i =
// log omega - s_i for the upper concave hull slopes s_1 >= ... of
// {(j, log|g_j|(t))}, returned sorted ascending. Indices not reachable from
// present coefficients (zero top coefficients) are reported maximal and
// invalid. Throws std::domain_error for a trivial operator.
std::vector<YoungRadius> young_radii(const CyclicOperator& op, const FieldConfig& fc, const Rat& t);

struct YoungProfileResult {
    bool ok = false;
    std::string refusal;
    std::vector<PLFunction> log_R;  // per index, on the operator's domain
};

// The radii as exact PL functions on the whole domain, assembled from the
// hull heights U_k(t) = max over chords (each affine in t): log R_k =
// log omega + U_{k-1} - U_k. Refuses when some candidate leaves the
// small-radius regime, naming where.
YoungProfileResult young_profile(const CyclicOperator& op, const FieldConfig& fc);

// Slope transform of the total height under one Frobenius push-forward:
// slope - r(p-1). Throws std::domain_error when the residue characteristic
// is not a prime.
Rat frobenius_height_slope(const Rat& slope, long r, long p);

// Generalized-index bookkeeping for an operator over the Robba ring with
// log-affine radii, free of Liouville numbers (asserted by the caller). The
// D0/Dinf/H^dag entries follow the T-multiplied derivation convention; the
// index over the disk for d/dT itself is chi_gen_D0_nabla = irr + rank.
struct GenIndexLedger {
    long irr = 0;
    long rank = 1;
    long p = 0;
    long chi_gen_D0 = 0;
    long chi_gen_Dinf = 0;
    long chi_gen_H_dagger = 0;
    long chi_annulus = 0;
    long chi_gen_D0_nabla = 0;

    bool invariants_ok() const {
        return chi_gen_D0 + chi_gen_Dinf == chi_annulus && chi_gen_D0 == -chi_gen_H_dagger && chi_annulus == 0 &&
               chi_gen_D0_nabla == chi_gen_D0 + rank;
    }
};

GenIndexLedger gen_index_ledger(long irr, long r, const FieldConfig& fc);
// One Frobenius push-forward: +- r(p-1) on the D0/Dinf entries, preserving
// the ledger sum. Throws std::domain_error when p is not a prime.
GenIndexLedger pushforward_ledger(const GenIndexLedger& ledger);

struct TaylorOracleResult {
    bool applicable = false;
    std::string reason;
    // min over the tail window of v_p(a_n)/n; nullopt when every tail
    // coefficient vanishes (solutions polynomial, radius maximal).
    std::optional<Rat> log_radius;
    long n_terms = 0;  // N; the reported uncertainty band is 1/sqrt(N)
};

// Desk-scale independent oracle: runs the order-r Taylor recursion at the
// regular center 0 with exact rational arithmetic and estimates the smallest
// radius from the valuations v_p(a_n). coeffs[j-1] lists the polynomial
// coefficients of g_j (constant term first).
TaylorOracleResult taylor_radius_oracle(const std::vector<std::vector<Rat>>& coeffs, long p, long num_terms);

}  // namespace convrad
