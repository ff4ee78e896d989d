// Serial reference kernels against the OpenMP versions.

#include "qtele/kernels.hpp"
#include "qtele/simulator.hpp"
#include "qtele/tomography.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace k = qtele::kernels;
using qtele::Amp;

namespace {

std::vector<Amp> uniform(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    return std::vector<Amp>(dim, Amp(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

template <bool Parallel>
void one_qubit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto v = uniform(n);
    const k::Mat2 h = qtele::gate_matrix(qtele::GateKind::H);
    for (auto _ : state) {
        for (std::size_t bit = 0; bit < n; ++bit) {
            if constexpr (Parallel) k::apply_1q(v, bit, h);
            else k::serial::apply_1q(v, bit, h);
        }
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * v.size()));
}

template <bool Parallel>
void cnot_chain(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto v = uniform(n);
    for (auto _ : state) {
        for (std::size_t bit = 0; bit + 1 < n; ++bit) {
            if constexpr (Parallel) k::apply_cnot(v, bit, bit + 1);
            else k::serial::apply_cnot(v, bit, bit + 1);
        }
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * (n - 1) * v.size()));
}

template <bool Parallel>
void norm(benchmark::State& state) {
    const auto v = uniform(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        if constexpr (Parallel) benchmark::DoNotOptimize(k::norm_squared(v));
        else benchmark::DoNotOptimize(k::serial::norm_squared(v));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * v.size()));
}

void report(benchmark::State& state) {
    const std::array<qtele::ProtocolId, 4> ps{qtele::ProtocolId::Ghz, qtele::ProtocolId::Cluster2,
                                              qtele::ProtocolId::Cluster3, qtele::ProtocolId::Entswap};
    const std::array<double, 2> thetas{std::numbers::pi / 3, std::numbers::pi / 4};
    for (auto _ : state) benchmark::DoNotOptimize(qtele::experiment_report(ps, thetas, 15360, 1));
}

}  // namespace

BENCHMARK(one_qubit<false>)->Name("apply_1q/serial")->DenseRange(12, 22, 5);
BENCHMARK(one_qubit<true>)->Name("apply_1q/openmp")->DenseRange(12, 22, 5);
BENCHMARK(cnot_chain<false>)->Name("apply_cnot/serial")->DenseRange(12, 22, 5);
BENCHMARK(cnot_chain<true>)->Name("apply_cnot/openmp")->DenseRange(12, 22, 5);
BENCHMARK(norm<false>)->Name("norm_squared/serial")->DenseRange(12, 22, 5);
BENCHMARK(norm<true>)->Name("norm_squared/openmp")->DenseRange(12, 22, 5);
BENCHMARK(report)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
