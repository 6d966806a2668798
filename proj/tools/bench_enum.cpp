// Compares the parallel Fincke-Pohst kernel against the serial box-search
// reference on definite lattices of growing depth.

#include <benchmark/benchmark.h>

#include "heegner/hlattice.hpp"

using namespace heegner;

namespace {

HermitianLattice definite(long disc, const std::vector<long>& diag) {
    auto F = FieldSpec::create(disc);
    KMatrix g(diag.size(), KVector(diag.size(), FieldElem(F.get(), 0, 0)));
    for (size_t i = 0; i < diag.size(); ++i) g[i][i] = FieldElem(F.get(), diag[i], 0);
    return HermitianLattice(F, g);
}

void bench_fincke_pohst(benchmark::State& state) {
    HermitianLattice D = definite(-4, {-1, -2});
    Rational m(-state.range(0));
    for (auto _ : state) {
        auto v = enumerate_norm_coset(D, D.zero(), m);
        benchmark::DoNotOptimize(v);
    }
}

void bench_box_search(benchmark::State& state) {
    HermitianLattice D = definite(-4, {-1, -2});
    Rational m(-state.range(0));
    for (auto _ : state) {
        auto v = enumerate_norm_coset_ref(D, D.zero(), m);
        benchmark::DoNotOptimize(v);
    }
}

void bench_fincke_pohst_rank3(benchmark::State& state) {
    HermitianLattice D = definite(-3, {-1, -1, -2});
    Rational m(-state.range(0));
    for (auto _ : state) {
        auto v = enumerate_norm_coset(D, D.zero(), m);
        benchmark::DoNotOptimize(v);
    }
}

void bench_box_search_rank3(benchmark::State& state) {
    HermitianLattice D = definite(-3, {-1, -1, -2});
    Rational m(-state.range(0));
    for (auto _ : state) {
        auto v = enumerate_norm_coset_ref(D, D.zero(), m);
        benchmark::DoNotOptimize(v);
    }
}

}  // namespace

BENCHMARK(bench_fincke_pohst)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(bench_box_search)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK(bench_fincke_pohst_rank3)->Arg(4)->Arg(16);
BENCHMARK(bench_box_search_rank3)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
