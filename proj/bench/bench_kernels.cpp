// Serial reference vs OpenMP kernels on the enumeration workloads the tests lean on.
#include <benchmark/benchmark.h>

#include "twistfact/kernels.hpp"
#include "twistfact/su3.hpp"

using namespace twistfact;
using kernels::Exec;
using su3::Sign;

namespace {

const char* kRings[] = {"gf(4)", "gf(9)"};

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void set_label(benchmark::State& state) {
    state.SetLabel(std::string(kRings[state.range(0)]) + (state.range(1) ? " parallel" : " serial"));
}

void BM_LayeredUnitri(benchmark::State& state) {
    auto r = InvolutiveRing::parse(kRings[state.range(0)]);
    auto up = kernels::unipotents(r, Sign::plus), lo = kernels::unipotents(r, Sign::minus);
    for (auto _ : state) {
        auto t = kernels::layered_products(r, {mat::identity(r, 3)}, {up, lo, up, lo, up}, exec_of(state), 1ull << 32);
        benchmark::DoNotOptimize(t.last().size());
    }
    set_label(state);
}

void BM_WordProducts(benchmark::State& state) {
    auto r = InvolutiveRing::parse("gf(4)");
    auto up = kernels::unipotents(r, Sign::plus), lo = kernels::unipotents(r, Sign::minus);
    std::vector<std::vector<Matrix>> steps;
    for (int i = 0; i < state.range(0); ++i) steps.push_back(i % 2 == 0 ? up : lo);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::word_products(r, steps, exec_of(state)).size());
    state.SetLabel("gf(4) length " + std::to_string(state.range(0)) + (state.range(1) ? " parallel" : " serial"));
}

void BM_GaussRoundtrip(benchmark::State& state) {
    auto r = InvolutiveRing::parse(kRings[state.range(0)]);
    auto group = su3::su3_enumerate(r);
    auto solver = brute_row_solver(r);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::gauss_roundtrip(r, group, su3::Orientation::row, solver, exec_of(state)));
    set_label(state);
}

}  // namespace

BENCHMARK(BM_LayeredUnitri)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WordProducts)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaussRoundtrip)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
