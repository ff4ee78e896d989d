#pragma once

// Dense state-vector simulation, density matrices and measurement sampling.
//
// Basis ordering: qubit 0 is the most significant bit of the basis index, so
// the index of |q0 q1 ... q(n-1)> reads left to right like a printed ket.

#include "qtele/circuit.hpp"
#include "qtele/kernels.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qtele {

using Amp = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Message |M> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct MessageParams {
    double theta = 0.0;
    double phi = 0.0;

    Amp alpha() const noexcept;
    Amp beta() const noexcept;
};

/// Normalised amplitude vector over 2^n basis states.
class StateVector {
public:
    /// |0...0> on `qubit_count` qubits.
    explicit StateVector(std::size_t qubit_count);

    static StateVector basis(std::size_t qubit_count, std::size_t index);
    /// Takes ownership of `amps`; throws if the size is not 2^n or the norm is
    /// off by more than `tol`.
    static StateVector from_amplitudes(std::vector<Amp> amps, double tol = 1e-10);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Amp> amplitudes() const noexcept { return amps_; }
    std::span<Amp> mutable_amplitudes() noexcept { return amps_; }
    const Amp& operator[](std::size_t i) const { return amps_.at(i); }

    /// Bit position of `q` inside a basis index.
    std::size_t bit_of(Qubit q) const noexcept { return qubit_count_ - 1 - q; }
    double norm() const;

private:
    StateVector(std::size_t qubit_count, std::vector<Amp> amps)
        : qubit_count_(qubit_count), amps_(std::move(amps)) {}

    std::size_t qubit_count_;
    std::vector<Amp> amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (checked on construction).
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kEigenTol = 1e-10;

    explicit DensityMatrix(CMatrix m);

    /// |psi><psi|.
    static DensityMatrix pure(std::span<const Amp> psi);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& matrix() const noexcept { return m_; }
    Amp operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    CMatrix m_;
};

/// Single-qubit gate matrix for one of the fixed one-qubit kinds.
kernels::Mat2 gate_matrix(GateKind kind, double angle = 0.0);

/// Applies `g` in place. PREP acts as RY(angle) followed by phase e^{i phi} on |1>.
void apply_gate_inplace(StateVector& s, const Gate& g, double prep_phi = 0.0);
StateVector apply_gate(StateVector s, const Gate& g);

/// Runs `c` from |0...0>. A PREP gate takes its angle and phase from `m`.
StateVector run(const Circuit& c, const MessageParams& m = {});
/// Runs `c` from an arbitrary input state.
StateVector run_from(StateVector s, const Circuit& c, const MessageParams& m = {});

/// Column j is the circuit applied to |j>. Limited to 10 qubits, no PREP.
inline constexpr std::size_t kMaxUnitaryQubits = 10;
CMatrix circuit_unitary(const Circuit& c);

/// Partial trace of |s><s| down to `keep` (reported in ascending qubit order).
DensityMatrix reduced_density(const StateVector& s, std::span<const Qubit> keep);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Principal square root of a Hermitian PSD matrix; eigenvalues in
/// [-kEigenTol, 0) are clipped to zero.
CMatrix hermitian_sqrt(const CMatrix& m);

enum class Basis : std::uint8_t { Z, X, Y, Skip };

/// Outcome histogram keyed by the measured bits of the non-skip qubits in
/// ascending qubit order.
using Counts = std::map<std::string, std::uint64_t>;

/// Rotates each measured qubit into its basis (X: H, Y: S-dagger then H) and
/// draws `shots` samples from one std::mt19937_64 seeded with `seed`.
Counts sample_measurements(const StateVector& s, std::span<const Basis> basis, std::uint64_t shots,
                           std::uint64_t seed);

/// Outcome probabilities (same keys as Counts) after the basis rotations.
std::map<std::string, double> outcome_probabilities(const StateVector& s,
                                                    std::span<const Basis> basis);

}  // namespace qtele
