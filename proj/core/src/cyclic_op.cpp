#include <convrad/cyclic_op.hpp>

#include <convrad/hull.hpp>

#include <algorithm>
#include <stdexcept>

namespace convrad {

void CyclicOperator::check() const {
    if (rank < 1) throw std::invalid_argument("CyclicOperator: rank must be >= 1");
    if (coeff_logs.size() != static_cast<std::size_t>(rank))
        throw std::invalid_argument("CyclicOperator: expected one coefficient entry per index");
    if (!(sigma.domain() == domain)) throw std::invalid_argument("CyclicOperator: sigma domain mismatch");
    for (const auto& c : coeff_logs)
        if (c && !(c->domain() == domain)) throw std::invalid_argument("CyclicOperator: coefficient domain mismatch");
}

std::vector<YoungRadius> young_radii(const CyclicOperator& op, const FieldConfig& fc, const Rat& t) {
    op.check();
    if (op.trivial()) throw std::domain_error("young_radii: trivial operator, radii all maximal, Young inapplicable");
    if (!op.sigma.in_domain(t)) throw std::domain_error("young_radii: t outside the operator domain");

    HullPoints pts;
    pts.points.push_back({0, Rat(0)});  // monic: (0, log|g_0|) = (0, 0)
    for (long j = 1; j <= op.rank; ++j) {
        const auto& c = op.coeff_logs[static_cast<std::size_t>(j - 1)];
        pts.points.push_back({j, c ? std::optional<Rat>(c->eval(t)) : std::nullopt});
    }
    std::vector<Rat> slopes = newton_hull(pts, HullSide::UpperConcave);

    const Rat logw = fc.log_omega();
    const Rat sigma_t = op.sigma.eval(t);
    std::vector<YoungRadius> out;
    for (long i = 1; i <= op.rank; ++i) {
        if (i <= static_cast<long>(slopes.size())) {
            Rat lr = logw - slopes[static_cast<std::size_t>(i - 1)];
            out.push_back({lr, lr < logw + sigma_t});
        } else {
            // zero top coefficients: the remaining radii are maximal and the
            // Young formula says nothing about them
            out.push_back({Rat(0), false});
        }
    }
    std::sort(out.begin(), out.end(), [](const YoungRadius& a, const YoungRadius& b) { return a.log_R < b.log_R; });
    return out;
}

YoungProfileResult young_profile(const CyclicOperator& op, const FieldConfig& fc) {
    op.check();
    YoungProfileResult res;
    if (op.trivial()) {
        res.refusal = "trivial operator, radii all maximal, Young inapplicable";
        return res;
    }
    long jmax = 0;
    for (long j = 1; j <= op.rank; ++j)
        if (op.coeff_logs[static_cast<std::size_t>(j - 1)]) jmax = j;
    if (jmax < op.rank) {
        res.refusal = "top coefficient g_" + std::to_string(op.rank) + " absent: radii " +
                      std::to_string(jmax + 1) + ".." + std::to_string(op.rank) + " are maximal, Young inapplicable";
        return res;
    }

    // Hull height U_k(t) = max over chords between present indices spanning
    // k; every chord evaluation is an affine combination of coefficient
    // functions, so U_k is an exact PL max.
    std::vector<long> present;
    present.push_back(0);
    for (long j = 1; j <= op.rank; ++j)
        if (op.coeff_logs[static_cast<std::size_t>(j - 1)]) present.push_back(j);
    auto value_fn = [&](long j) -> PLFunction {
        if (j == 0) return PLFunction::constant(op.domain, Rat(0));
        return *op.coeff_logs[static_cast<std::size_t>(j - 1)];
    };
    std::vector<PLFunction> U;  // U[k] for k = 0..rank
    U.push_back(PLFunction::constant(op.domain, Rat(0)));
    for (long k = 1; k <= op.rank; ++k) {
        std::vector<PLFunction> chords;
        for (long a : present)
            for (long b : present) {
                if (a == k && b == k)
                    chords.push_back(value_fn(k));
                else if (a < k && k < b) {
                    Rat wa(b - k, b - a), wb(k - a, b - a);
                    chords.push_back(plf_sum(plf_scale(value_fn(a), wa), plf_scale(value_fn(b), wb)));
                }
            }
        if (chords.empty()) {
            res.refusal = "no hull chord spans index " + std::to_string(k);
            return res;
        }
        U.push_back(plf_combine(CombineOp::Max, chords));
    }

    const Rat logw = fc.log_omega();
    std::vector<PLFunction> radii;
    for (long k = 1; k <= op.rank; ++k) {
        PLFunction lr = plf_shift(plf_sum(U[static_cast<std::size_t>(k - 1)],
                                          plf_scale(U[static_cast<std::size_t>(k)], Rat(-1))),
                                  logw);
        // Small-radius regime on the whole domain: log R_k < log omega + sigma.
        PLFunction gap = plf_sum(lr, plf_scale(plf_shift(op.sigma, logw), Rat(-1)));
        for (const auto& p : gap.breakpoints())
            if (!(p.v < Rat(0))) {
                res.refusal = "radius " + std::to_string(k) + " leaves the small-radius regime at t=" + p.t.str();
                return res;
            }
        if (gap.domain().kind == DomainKind::Ray && gap.tail_slope() > Rat(0)) {
            Rat t0 = gap.breakpoints().back().t;
            Rat tc = t0 - gap.breakpoints().back().v / gap.tail_slope();
            res.refusal = "radius " + std::to_string(k) + " leaves the small-radius regime at t=" + tc.str();
            return res;
        }
        radii.push_back(std::move(lr));
    }
    res.ok = true;
    res.log_R = std::move(radii);
    return res;
}

Rat frobenius_height_slope(const Rat& slope, long r, long p) {
    if (p < 2) throw std::domain_error("frobenius_height_slope: needs positive residue characteristic");
    return slope - Rat(r) * Rat(p - 1);
}

GenIndexLedger gen_index_ledger(long irr, long r, const FieldConfig& fc) {
    if (r < 1) throw std::invalid_argument("gen_index_ledger: rank must be >= 1");
    GenIndexLedger led;
    led.irr = irr;
    led.rank = r;
    led.p = fc.p;
    led.chi_gen_D0 = irr;            // chi_gen(O(D_0), T.nabla) = Irr
    led.chi_gen_H_dagger = -irr;     // chi_gen(H^dag, T.nabla) = -Irr
    led.chi_gen_Dinf = -irr;         // annulus sum vanishes under (NL)
    led.chi_annulus = 0;
    led.chi_gen_D0_nabla = irr + r;  // multiplication by T shifts the index by r
    return led;
}

GenIndexLedger pushforward_ledger(const GenIndexLedger& ledger) {
    if (ledger.p < 2) throw std::domain_error("pushforward_ledger: needs positive residue characteristic");
    GenIndexLedger out = ledger;
    long shift = ledger.rank * (ledger.p - 1);
    out.irr += shift;
    out.chi_gen_D0 += shift;
    out.chi_gen_Dinf -= shift;
    out.chi_gen_H_dagger = -out.chi_gen_D0;
    out.chi_gen_D0_nabla += shift;
    return out;
}

namespace {

long val_p(const mpz_class& z, long p) {
    if (z == 0) throw std::logic_error("val_p of zero");
    mpz_class t = z;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

}  // namespace

TaylorOracleResult taylor_radius_oracle(const std::vector<std::vector<Rat>>& coeffs, long p, long num_terms) {
    TaylorOracleResult res;
    res.n_terms = num_terms;
    if (p < 2) {
        res.reason = "oracle needs a positive residue characteristic";
        return res;
    }
    if (coeffs.empty()) {
        res.reason = "operator of rank 0";
        return res;
    }
    const long r = static_cast<long>(coeffs.size());
    if (num_terms < 8 * r) {
        res.reason = "too few terms requested";
        return res;
    }
    res.applicable = true;

    // Work with the integer sequence d_n = a_n n! D^n, D the common
    // denominator of the coefficients:
    //   d_{n+r} = - sum_{j,k} (c_{jk} D^{j+k}) (n!/(n-k)!) d_{n-k+r-j},
    // which keeps the whole recursion in mpz (no gcd normalization) and
    // still yields exact valuations v(a_n) = v(d_n) - v_p(n!) - n v_p(D).
    mpz_class D = 1;
    for (const auto& poly : coeffs)
        for (const Rat& c : poly) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.den().get_mpz_t());
    struct Term {
        long j, k;
        mpz_class scaled;  // c_{jk} D^{j+k}
    };
    std::vector<Term> terms;
    for (long j = 1; j <= r; ++j) {
        const auto& poly = coeffs[static_cast<std::size_t>(j - 1)];
        for (long k = 0; k < static_cast<long>(poly.size()); ++k) {
            const Rat& c = poly[static_cast<std::size_t>(k)];
            if (c == Rat(0)) continue;
            mpz_class pow;
            mpz_pow_ui(pow.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(j + k));
            mpz_class scaled = c.num() * pow;
            mpz_divexact(scaled.get_mpz_t(), scaled.get_mpz_t(), c.den().get_mpz_t());
            terms.push_back({j, k, scaled});
        }
    }
    const long vD = val_p(D, p);
    auto legendre = [&](long n) {  // v_p(n!)
        long v = 0;
        for (long q = p; q <= n; q *= p) {
            v += n / q;
            if (q > n / p) break;
        }
        return v;
    };

    std::optional<Rat> best;
    const long tail_start = num_terms / 2;
    for (long seed = 0; seed < r; ++seed) {
        std::vector<mpz_class> d(static_cast<std::size_t>(num_terms + 1), mpz_class(0));
        mpz_class seed_weight = 1;  // d_seed = seed! D^seed
        for (long i = 2; i <= seed; ++i) seed_weight *= i;
        mpz_class dpow;
        mpz_pow_ui(dpow.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(seed));
        d[static_cast<std::size_t>(seed)] = seed_weight * dpow;
        mpz_class acc, tmp;
        for (long n = 0; n + r <= num_terms; ++n) {
            acc = 0;
            for (const Term& t : terms) {
                long m = n - t.k;
                if (m < 0) continue;
                const mpz_class& src = d[static_cast<std::size_t>(m + r - t.j)];
                if (src == 0) continue;
                mpz_class weight = 1;  // n!/(n-k)!
                for (long q = m + 1; q <= n; ++q) weight *= q;
                tmp = t.scaled * weight;
                acc -= tmp * src;
            }
            d[static_cast<std::size_t>(n + r)] = acc;
        }
        for (long n = tail_start; n <= num_terms; ++n) {
            if (d[static_cast<std::size_t>(n)] == 0) continue;
            long v = val_p(d[static_cast<std::size_t>(n)], p) - legendre(n) - n * vD;
            Rat est = Rat(v) / Rat(n);
            if (!best || est < *best) best = est;
        }
    }
    res.log_radius = best;  // nullopt: all tails vanish, radius maximal
    return res;
}

}  // namespace convrad
