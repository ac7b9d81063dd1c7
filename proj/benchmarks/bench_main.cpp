#include <convrad/cyclic_op.hpp>
#include <convrad/generate.hpp>
#include <convrad/hull.hpp>
#include <convrad/index.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace convrad;

PLFunction random_plf(std::mt19937_64& rng, long pieces) {
    std::vector<PLFunction::Point> pts;
    Rat t(0), v(static_cast<long>(rng() % 9) - 4);
    pts.push_back({t, v});
    for (long i = 0; i < pieces; ++i) {
        t += Rat(1 + static_cast<long>(rng() % 3), 2);
        v += Rat(static_cast<long>(rng() % 9) - 4);
        pts.push_back({t, v});
    }
    return PLFunction::segment(t, std::move(pts));
}

void BM_plf_min(benchmark::State& state) {
    std::mt19937_64 rng(1);
    PLFunction a = random_plf(rng, state.range(0));
    std::vector<PLFunction::Point> pts = a.breakpoints();
    for (auto& p : pts) p.v += Rat(static_cast<long>(rng() % 5) - 2);
    PLFunction b = PLFunction::segment(a.domain().length, std::move(pts));
    for (auto _ : state) benchmark::DoNotOptimize(plf_min(a, b));
}
BENCHMARK(BM_plf_min)->Arg(8)->Arg(64)->Arg(256);

void BM_newton_hull(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::vector<std::optional<Rat>> vals;
    for (long j = 0; j <= state.range(0); ++j) vals.push_back(Rat(static_cast<long>(rng() % 41) - 20));
    HullPoints pts = HullPoints::dense(vals);
    for (auto _ : state) benchmark::DoNotOptimize(newton_hull(pts, HullSide::UpperConcave));
}
BENCHMARK(BM_newton_hull)->Arg(8)->Arg(64)->Arg(512);

void BM_global_index(benchmark::State& state) {
    std::mt19937_64 rng(3);
    GenOptions opt;
    opt.max_gamma_vertices = state.range(0);
    GeneratedInstance gi = random_instance(rng, opt);
    for (auto _ : state) benchmark::DoNotOptimize(global_index(gi.sk, gi.prof, gi.flags));
}
BENCHMARK(BM_global_index)->Arg(8)->Arg(32);

void BM_young_profile(benchmark::State& state) {
    FieldConfig fc;
    fc.p = 3;
    std::mt19937_64 rng(4);
    CyclicOperator op;
    op.rank = 4;
    PLFunction base = random_plf(rng, state.range(0));
    op.domain = base.domain();
    op.sigma = PLFunction::constant(op.domain, Rat(-50));
    for (long j = 1; j <= op.rank; ++j) {
        std::vector<PLFunction::Point> pts = base.breakpoints();
        for (auto& p : pts) p.v = convrad::abs(p.v) + Rat(10 * j);
        op.coeff_logs.push_back(PLFunction::segment(op.domain.length, std::move(pts)));
    }
    for (auto _ : state) benchmark::DoNotOptimize(young_profile(op, fc));
}
BENCHMARK(BM_young_profile)->Arg(4)->Arg(32);

void BM_taylor_oracle(benchmark::State& state) {
    std::vector<std::vector<Rat>> coeffs = {{Rat(1, 9)}, {Rat(1, 27)}};
    for (auto _ : state) benchmark::DoNotOptimize(taylor_radius_oracle(coeffs, 3, state.range(0)));
}
BENCHMARK(BM_taylor_oracle)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
