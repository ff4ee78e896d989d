#include "qtele/kernels.hpp"
#include "qtele/simulator.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtele;
namespace k = qtele::kernels;

namespace {

std::vector<Amp> random_amps(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const StateVector s = test::random_state(n, rng);
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

// Above the parallel threshold so the OpenMP path really runs threaded.
constexpr std::size_t kBig = 14;
static_assert((std::size_t{1} << kBig) >= k::kParallelMinDim);

}  // namespace

TEST(Kernels, InsertZero) {
    EXPECT_EQ(k::insert_zero(0b111, 0), 0b1110U);
    EXPECT_EQ(k::insert_zero(0b111, 1), 0b1101U);
    EXPECT_EQ(k::insert_zero(0b111, 3), 0b0111U);
    EXPECT_EQ(k::insert_two_zeros(0b11, 0, 2), 0b1010U);
    EXPECT_EQ(k::insert_two_zeros(0b11, 2, 0), 0b1010U);
}

TEST(Kernels, OneQubitMatchesSerial) {
    const k::Mat2 m = gate_matrix(GateKind::RY, 0.7);
    for (std::size_t bit = 0; bit < kBig; ++bit) {
        auto a = random_amps(kBig, bit);
        auto b = a;
        k::apply_1q(a, bit, m);
        k::serial::apply_1q(b, bit, m);
        EXPECT_EQ(a, b) << "bit " << bit;
    }
}

TEST(Kernels, TwoQubitMatchesSerial) {
    for (std::size_t x = 0; x < kBig; x += 3) {
        for (std::size_t y = 0; y < kBig; y += 2) {
            if (x == y) continue;
            auto a = random_amps(kBig, 100 + x * kBig + y);
            auto b = a;
            k::apply_cnot(a, x, y);
            k::serial::apply_cnot(b, x, y);
            k::apply_cz(a, x, y);
            k::serial::apply_cz(b, x, y);
            k::apply_swap(a, y, x);
            k::serial::apply_swap(b, y, x);
            EXPECT_EQ(a, b) << x << "," << y;
        }
    }
}

TEST(Kernels, ReductionsMatchSerial) {
    const auto a = random_amps(kBig, 7);
    std::vector<double> p(a.size());
    std::vector<double> q(a.size());
    k::probabilities(a, p);
    k::serial::probabilities(a, q);
    EXPECT_EQ(p, q);
    EXPECT_NEAR(k::norm_squared(a), k::serial::norm_squared(a), 1e-12);
    EXPECT_NEAR(k::norm_squared(a), 1.0, 1e-12);
}

TEST(Kernels, SmallRegisterCnot) {
    // |10> -> |11> with qubit 0 as the high bit.
    std::vector<Amp> v{0, 0, 1, 0};
    k::apply_cnot(v, 1, 0);
    EXPECT_EQ(v, (std::vector<Amp>{0, 0, 0, 1}));
}
