#include <benchmark/benchmark.h>

#include <ensys/compiler.hpp>
#include <ensys/enumerator.hpp>
#include <ensys/solver.hpp>
#include <ensys/verifier.hpp>

namespace {

void BM_beta2(benchmark::State& state) {
    const std::uint64_t m = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ensys::beta2(2, m));
}
BENCHMARK(BM_beta2)->Arg(1)->Arg(2)->Arg(3);

void BM_beta2_workers(benchmark::State& state) {
    const unsigned workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ensys::beta2(2, 3, workers));
}
BENCHMARK(BM_beta2_workers)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_solve_family_box(benchmark::State& state) {
    const ensys::System sys = ensys::family_system(ensys::Family::Thm2, 2);
    for (auto _ : state) {
        auto res = ensys::solve_in_box(sys, ensys::Int(256));
        benchmark::DoNotOptimize(res.solutions.size());
    }
}
BENCHMARK(BM_solve_family_box);

void BM_witness(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto w = ensys::family_witness(ensys::Family::Thm2, n);
        benchmark::DoNotOptimize(w.claimed_max.get_mpz_t());
    }
}
BENCHMARK(BM_witness)->Arg(2)->Arg(7);

void BM_lucas_lehmer(benchmark::State& state) {
    const unsigned p = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ensys::lucas_lehmer(p));
}
BENCHMARK(BM_lucas_lehmer)->Arg(127)->Arg(521);

void BM_pell_minimal(benchmark::State& state) {
    const unsigned k = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto s = ensys::pell_minimal(k);
        benchmark::DoNotOptimize(s.x.get_mpz_t());
    }
}
BENCHMARK(BM_pell_minimal)->Arg(2)->Arg(4)->Arg(6);

void BM_compile(benchmark::State& state) {
    const ensys::Polynomial d = ensys::parse_poly("x1^3 - 2*x1*x2 + x2^2 - 5");
    for (auto _ : state) {
        auto r = ensys::compile_to_system(d);
        benchmark::DoNotOptimize(r.system.size());
    }
}
BENCHMARK(BM_compile);

}  // namespace

BENCHMARK_MAIN();
