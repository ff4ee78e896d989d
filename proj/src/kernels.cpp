#include "qtele/kernels.hpp"

#include <cstdint>
#include <utility>

namespace qtele::kernels {

namespace {

// OpenMP wants a signed loop counter.
using Index = std::int64_t;

bool go_parallel(std::size_t dim) { return dim >= kParallelMinDim; }

}  // namespace

void apply_1q(std::span<Amp> amps, std::size_t bit, const Mat2& m) {
    const Index pairs = static_cast<Index>(amps.size() / 2);
    const std::size_t mask = std::size_t{1} << bit;
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
    for (Index k = 0; k < pairs; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), bit);
        const std::size_t i1 = i0 | mask;
        const Amp a0 = amps[i0];
        const Amp a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_cnot(std::span<Amp> amps, std::size_t control_bit, std::size_t target_bit) {
    const Index quads = static_cast<Index>(amps.size() / 4);
    const std::size_t cmask = std::size_t{1} << control_bit;
    const std::size_t tmask = std::size_t{1} << target_bit;
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
    for (Index k = 0; k < quads; ++k) {
        const std::size_t base =
            insert_two_zeros(static_cast<std::size_t>(k), control_bit, target_bit) | cmask;
        std::swap(amps[base], amps[base | tmask]);
    }
}

void apply_cz(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b) {
    const Index quads = static_cast<Index>(amps.size() / 4);
    const std::size_t both = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
    for (Index k = 0; k < quads; ++k) {
        const std::size_t i = insert_two_zeros(static_cast<std::size_t>(k), bit_a, bit_b) | both;
        amps[i] = -amps[i];
    }
}

void apply_swap(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b) {
    const Index quads = static_cast<Index>(amps.size() / 4);
    const std::size_t amask = std::size_t{1} << bit_a;
    const std::size_t bmask = std::size_t{1} << bit_b;
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
    for (Index k = 0; k < quads; ++k) {
        const std::size_t base = insert_two_zeros(static_cast<std::size_t>(k), bit_a, bit_b);
        std::swap(amps[base | amask], amps[base | bmask]);
    }
}

void probabilities(std::span<const Amp> amps, std::span<double> out) {
    const Index dim = static_cast<Index>(amps.size());
#pragma omp parallel for schedule(static) if (go_parallel(amps.size()))
    for (Index i = 0; i < dim; ++i) out[i] = std::norm(amps[i]);
}

double norm_squared(std::span<const Amp> amps) {
    const Index dim = static_cast<Index>(amps.size());
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) if (go_parallel(amps.size()))
    for (Index i = 0; i < dim; ++i) total += std::norm(amps[i]);
    return total;
}

namespace serial {

void apply_1q(std::span<Amp> amps, std::size_t bit, const Mat2& m) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
        for (std::size_t i0 = block; i0 < block + stride; ++i0) {
            const Amp a0 = amps[i0];
            const Amp a1 = amps[i0 + stride];
            amps[i0] = m[0] * a0 + m[1] * a1;
            amps[i0 + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_cnot(std::span<Amp> amps, std::size_t control_bit, std::size_t target_bit) {
    const std::size_t cmask = std::size_t{1} << control_bit;
    const std::size_t tmask = std::size_t{1} << target_bit;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
}

void apply_cz(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b) {
    const std::size_t both = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & both) == both) amps[i] = -amps[i];
}

void apply_swap(std::span<Amp> amps, std::size_t bit_a, std::size_t bit_b) {
    const std::size_t amask = std::size_t{1} << bit_a;
    const std::size_t bmask = std::size_t{1} << bit_b;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & amask) && !(i & bmask)) std::swap(amps[i], amps[(i & ~amask) | bmask]);
}

void probabilities(std::span<const Amp> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) out[i] = std::norm(amps[i]);
}

double norm_squared(std::span<const Amp> amps) {
    double total = 0.0;
    for (const Amp& a : amps) total += std::norm(a);
    return total;
}

}  // namespace serial

}  // namespace qtele::kernels
