#include <benchmark/benchmark.h>

#include "flexlocus/flex.hpp"
#include "flexlocus/macaulay.hpp"
#include "flexlocus/parser.hpp"

using namespace flexlocus;

namespace {

constexpr uint64_t kPrime = 10007;

std::vector<MultiPoly<Fp>> random_system(const Fp::Ctx& ctx, const std::vector<int>& degs,
                                         std::mt19937_64& rng) {
    const int nv = int(degs.size());
    std::vector<MultiPoly<Fp>> sys;
    for (int d : degs) {
        MultiPoly<Fp> f(nv, ctx);
        while (f.is_zero()) f = MultiPoly<Fp>::random_homogeneous(nv, ctx, d, rng);
        sys.push_back(std::move(f));
    }
    return sys;
}

void bm_resultant_scalar(benchmark::State& state) {
    Fp::Ctx ctx(kPrime);
    std::mt19937_64 rng(7);
    const int nv = int(state.range(0));
    const int d = int(state.range(1));
    auto sys = random_system(ctx, std::vector<int>(nv, d), rng);
    DegreeVector degs(std::vector<int>(nv, d));
    for (auto _ : state) benchmark::DoNotOptimize(resultant_scalar(sys, degs));
}
BENCHMARK(bm_resultant_scalar)->Args({2, 4})->Args({3, 2})->Args({3, 3})->Args({4, 2});

void bm_flex_polynomial_curve(benchmark::State& state) {
    Fp::Ctx ctx(kPrime);
    std::mt19937_64 rng(11);
    const int d = int(state.range(0));
    MultiPoly<Fp> f(3, ctx);
    while (f.is_zero()) f = MultiPoly<Fp>::random_homogeneous(3, ctx, d, rng);
    Hypersurface<Fp> V(f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(flex_polynomial(V));
}
BENCHMARK(bm_flex_polynomial_curve)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_flex_polynomial_surface(benchmark::State& state) {
    Fp::Ctx ctx(kPrime);
    std::mt19937_64 rng(13);
    MultiPoly<Fp> f(4, ctx);
    while (f.is_zero()) f = MultiPoly<Fp>::random_homogeneous(4, ctx, 3, rng);
    Hypersurface<Fp> V(f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(flex_polynomial(V));
}
BENCHMARK(bm_flex_polynomial_surface)->Unit(benchmark::kMillisecond);

void bm_is_flex_curve(benchmark::State& state) {
    Fp::Ctx ctx(kPrime);
    std::mt19937_64 rng(17);
    Hypersurface<Fp> V(parse_poly<Fp>("x0^3+x1^3+x2^3", ctx), rng);
    std::vector<Fp> p{ctx.one(), -ctx.one(), ctx.zero()};
    for (auto _ : state) benchmark::DoNotOptimize(is_flex(V, p));
}
BENCHMARK(bm_is_flex_curve);

}  // namespace

BENCHMARK_MAIN();
