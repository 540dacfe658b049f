// Microbenchmarks for the hot paths: ring arithmetic, digit conversion,
// canonical row reduction, intertwiner solving, and the census pipeline.
// Inputs are seeded so runs are comparable across builds.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "ordlat/census.hpp"
#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/genval.hpp"
#include "ordlat/group.hpp"
#include "ordlat/lattice.hpp"
#include "ordlat/linalg.hpp"
#include "ordlat/order.hpp"
#include "ordlat/witt.hpp"

using namespace ordlat;

namespace {

RingElement random_element(const CtxPtr& ctx, std::mt19937_64& rng) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(ctx->m()));
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % ctx->pN());
    return RingElement::from_coeffs(ctx, c);
}

Mat random_matrix(const CtxPtr& ctx, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Mat a(ctx, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = random_element(ctx, rng);
    return a;
}

void BM_ring_mul(benchmark::State& state) {
    CtxPtr ctx = Context::make(3, static_cast<int>(state.range(0)), 8);
    std::mt19937_64 rng(1);
    RingElement a = random_element(ctx, rng);
    RingElement b = random_element(ctx, rng);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ring_mul)->Arg(1)->Arg(2)->Arg(4);

void BM_digit_round_trip(benchmark::State& state) {
    CtxPtr ctx = Context::make(2, 2, 8);
    std::mt19937_64 rng(2);
    RingElement x = random_element(ctx, rng);
    for (auto _ : state) benchmark::DoNotOptimize(from_witt_digits(to_witt_digits(x, 8)));
}
BENCHMARK(BM_digit_round_trip);

void BM_row_span_basis(benchmark::State& state) {
    CtxPtr ctx = Context::make(2, 1, 8);
    std::mt19937_64 rng(3);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Mat a = random_matrix(ctx, n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(row_span_basis(a));
}
BENCHMARK(BM_row_span_basis)->Arg(8)->Arg(16)->Arg(32);

void BM_saturated_kernel(benchmark::State& state) {
    CtxPtr ctx = Context::make(3, 1, 8);
    std::mt19937_64 rng(4);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Mat a = random_matrix(ctx, n, 2 * n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(saturated_kernel(a));
}
BENCHMARK(BM_saturated_kernel)->Arg(8)->Arg(16);

void BM_end_reduction_coset_lattice(benchmark::State& state) {
    CtxPtr ctx = Context::make(2, 1, 8);
    GroupData G = make_group(parse_generators("(1 2 3 4),(1 3)"));
    Lattice L = permutation_lattice(G, subgroup_elements(G, {}), ctx);
    for (auto _ : state) benchmark::DoNotOptimize(end_reduction(L));
}
BENCHMARK(BM_end_reduction_coset_lattice);

void BM_census_regular_order2(benchmark::State& state) {
    CtxPtr ctx = Context::make(2, 1, 8);
    Lattice L = Lattice::regular(group_order(make_group(parse_generators("(1 2)")), ctx));
    for (auto _ : state) benchmark::DoNotOptimize(census_rigid(L, 3, 1, 9));
}
BENCHMARK(BM_census_regular_order2);

void BM_generic_valuation(benchmark::State& state) {
    CtxPtr ctx = Context::make(2, 1, 8);
    std::mt19937_64 rng(5);
    std::map<std::vector<int>, RingElement> terms;
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j) terms[{i, j}] = random_element(ctx, rng);
    PolyO f = PolyO::make(ctx, 2, terms);
    CtxPtr res = ctx->residue();
    std::vector<WittDigits> coords;
    for (int v = 0; v < 2; ++v) {
        std::vector<RingElement> ds;
        for (int j = 0; j < 2; ++j) ds.push_back(random_element(res, rng));
        coords.push_back(make_digits(ctx, ds));
    }
    WittPoint x = make_point(ctx, 2, coords);
    for (auto _ : state) benchmark::DoNotOptimize(generic_valuation(f, x));
}
BENCHMARK(BM_generic_valuation);

void BM_hochschild_probe(benchmark::State& state) {
    CtxPtr ctx = Context::make(3, 1, 8);
    OrderPtr lam = group_order(make_group(parse_generators("(1 2),(1 2 3)")), ctx);
    for (auto _ : state) benchmark::DoNotOptimize(hochschild1_vanishes(lam));
}
BENCHMARK(BM_hochschild_probe);

} // namespace

BENCHMARK_MAIN();
