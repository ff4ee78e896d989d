#pragma once

// Amplitude-update kernels. Every kernel touches disjoint index pairs, so the
// OpenMP versions produce bit-identical results to the serial references for
// any thread count. The serial namespace is kept for tests and the benchmark.
//
// `bit` arguments are positions in the basis index (bit 0 = least significant).

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace qtele::kernels {

using Amp = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Amp, 4>;

/// Below this many amplitudes the OpenMP kernels run single-threaded.
inline constexpr std::size_t kParallelMinDim = std::size_t{1} << 12;

void apply_1q(std::span<Amp> amps, std::size_t bit, const Mat2& m);
void apply_cnot(std::span<Amp> amps, std::size_t control_bit, std::size_t target_bit);
void apply_cz(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b);
void apply_swap(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b);
void probabilities(std::span<const Amp> amps, std::span<double> out);
double norm_squared(std::span<const Amp> amps);

namespace serial {

void apply_1q(std::span<Amp> amps, std::size_t bit, const Mat2& m);
void apply_cnot(std::span<Amp> amps, std::size_t control_bit, std::size_t target_bit);
void apply_cz(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b);
void apply_swap(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b);
void probabilities(std::span<const Amp> amps, std::span<double> out);
double norm_squared(std::span<const Amp> amps);

}  // namespace serial

/// Spreads `k` by inserting a zero bit at position `bit`.
constexpr std::size_t insert_zero(std::size_t k, std::size_t bit) noexcept {
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

/// Inserts zero bits at two distinct positions.
constexpr std::size_t insert_two_zeros(std::size_t k, std::size_t bit_a, std::size_t bit_b) noexcept {
    const std::size_t lo = bit_a < bit_b ? bit_a : bit_b;
    const std::size_t hi = bit_a < bit_b ? bit_b : bit_a;
    return insert_zero(insert_zero(k, lo), hi);
}

}  // namespace qtele::kernels
