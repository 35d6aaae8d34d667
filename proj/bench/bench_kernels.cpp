#include <benchmark/benchmark.h>

#include "flukin/surface.hpp"
#include "flukin/sweep.hpp"

using namespace flukin;

namespace {

ModelParams sample() {
    ModelParams m;
    m.beta = 0.8;
    m.p = 1.2;
    m.c = 3.0;
    m.n_E = 2;
    m.tau_E = 1.5;
    m.n_I = 4;
    m.tau_I = 2.0;
    m.D_PCF = 0.1;
    m.v_a = 0.5;
    m.a = 0.02;
    return m;
}

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_sweep_threshold(benchmark::State& state) {
    const ModelParams m = sample();
    const auto Ts = linspace(0.0, 2.0 * threshold_T(m), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_threshold(m, Ts, mode(state)));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_trace_surface(benchmark::State& state) {
    const ModelParams m = sample();
    const auto coeffs = FieldCoefficients::defaults(m);
    StateVector s0(m);
    s0.T() = 1.0;
    s0.V() = 0.05;
    s0.W() = 0.01;
    const double h = 1.0 / static_cast<double>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_surface(m, coeffs, s0, {0.0, 1.0}, {0.0, 1.0}, h, h, mode(state)));
    }
}

}  // namespace

BENCHMARK(BM_sweep_threshold)->ArgsProduct({{0, 1}, {256, 4096}})->ArgNames({"parallel", "points"});
BENCHMARK(BM_trace_surface)->ArgsProduct({{0, 1}, {50, 200}})->ArgNames({"parallel", "cells"});

BENCHMARK_MAIN();
