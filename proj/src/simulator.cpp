#include "qtele/simulator.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qtele {

Amp MessageParams::alpha() const noexcept { return {std::cos(theta / 2), 0.0}; }

Amp MessageParams::beta() const noexcept {
    return std::polar(1.0, phi) * std::sin(theta / 2);
}

StateVector::StateVector(std::size_t qubit_count)
    : qubit_count_(qubit_count), amps_(std::size_t{1} << qubit_count) {
    if (qubit_count == 0 || qubit_count > kMaxQubits)
        throw Error(fmt::format("state vector needs 1..{} qubits", kMaxQubits));
    amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t qubit_count, std::size_t index) {
    StateVector s(qubit_count);
    if (index >= s.dim()) throw Error("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amp> amps, double tol) {
    const std::size_t dim = amps.size();
    if (dim < 2 || (dim & (dim - 1)) != 0)
        throw Error(fmt::format("amplitude count {} is not a power of two", dim));
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n > kMaxQubits) throw Error("too many qubits");
    const double norm = std::sqrt(kernels::serial::norm_squared(amps));
    if (std::abs(norm - 1.0) > tol) throw Error(fmt::format("state norm {} is not 1", norm));
    return StateVector(n, std::move(amps));
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amps_)); }

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    const auto d = m_.rows();
    if (d == 0 || d != m_.cols() || (d & (d - 1)) != 0)
        throw Error("density matrix must be square with power-of-two dimension");
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) throw Error(fmt::format("matrix is not Hermitian (deviation {:.3g})", herm));
    const Amp tr = m_.trace();
    if (std::abs(tr - Amp(1.0)) > kTraceTol)
        throw Error(fmt::format("trace {:.12g} is not 1", tr.real()));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(m_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kEigenTol)
        throw Error(fmt::format("matrix has negative eigenvalue {:.3g}", eig.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::pure(std::span<const Amp> psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
    CMatrix m = v * v.adjoint();
    // Force exact Hermiticity; v * v^H is Hermitian only up to rounding.
    m = (m + m.adjoint().eval()) * 0.5;
    return DensityMatrix(std::move(m));
}

kernels::Mat2 gate_matrix(GateKind kind, double angle) {
    const double r = std::numbers::sqrt2 / 2;
    const Amp i{0.0, 1.0};
    switch (kind) {
    case GateKind::H:
        return {r, r, r, -r};
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z:
        return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S:
        return {1.0, 0.0, 0.0, i};
    case GateKind::SDG:
        return {1.0, 0.0, 0.0, -i};
    case GateKind::RY:
    case GateKind::PREP: {
        const double c = std::cos(angle / 2);
        const double s = std::sin(angle / 2);
        return {c, -s, s, c};
    }
    default:
        throw Error(fmt::format("'{}' is not a single-qubit gate", mnemonic(kind)));
    }
}

void apply_gate_inplace(StateVector& s, const Gate& g, double prep_phi) {
    for (Qubit q : g.qubits())
        if (q >= s.qubit_count())
            throw Error(fmt::format("qubit {} out of range for {}-qubit state", q, s.qubit_count()));
    auto amps = s.mutable_amplitudes();
    switch (g.kind()) {
    case GateKind::CNOT:
        kernels::apply_cnot(amps, s.bit_of(g.qubit(0)), s.bit_of(g.qubit(1)));
        return;
    case GateKind::CZ:
        kernels::apply_cz(amps, s.bit_of(g.qubit(0)), s.bit_of(g.qubit(1)));
        return;
    case GateKind::SWAP:
        kernels::apply_swap(amps, s.bit_of(g.qubit(0)), s.bit_of(g.qubit(1)));
        return;
    case GateKind::PREP: {
        auto m = gate_matrix(GateKind::RY, g.angle());
        const Amp phase = std::polar(1.0, prep_phi);
        m[2] *= phase;
        m[3] *= phase;
        kernels::apply_1q(amps, s.bit_of(g.qubit(0)), m);
        return;
    }
    default:
        kernels::apply_1q(amps, s.bit_of(g.qubit(0)), gate_matrix(g.kind(), g.angle()));
    }
}

StateVector apply_gate(StateVector s, const Gate& g) {
    apply_gate_inplace(s, g);
    return s;
}

StateVector run_from(StateVector s, const Circuit& c, const MessageParams& m) {
    if (s.qubit_count() != c.qubit_count()) throw Error("state and circuit sizes differ");
    for (const Gate& g : c) {
        if (g.kind() == GateKind::PREP)
            apply_gate_inplace(s, g.with_angle(m.theta), m.phi);
        else
            apply_gate_inplace(s, g);
    }
    return s;
}

StateVector run(const Circuit& c, const MessageParams& m) {
    return run_from(StateVector(c.qubit_count()), c, m);
}

CMatrix circuit_unitary(const Circuit& c) {
    if (c.qubit_count() > kMaxUnitaryQubits)
        throw Error(fmt::format("unitary extraction limited to {} qubits", kMaxUnitaryQubits));
    if (c.prep_index()) throw Error("circuit_unitary: circuit contains a PREP gate");
    const auto dim = static_cast<std::int64_t>(std::size_t{1} << c.qubit_count());
    CMatrix u(dim, dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(c.qubit_count(), static_cast<std::size_t>(col));
        for (const Gate& g : c) apply_gate_inplace(s, g);
        for (std::int64_t row = 0; row < dim; ++row) u(row, col) = s[static_cast<std::size_t>(row)];
    }
    return u;
}

DensityMatrix reduced_density(const StateVector& s, std::span<const Qubit> keep) {
    if (keep.empty()) throw Error("reduced_density: empty qubit subset");
    std::vector<Qubit> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw Error("reduced_density: repeated qubit");
    if (kept.back() >= s.qubit_count()) throw Error("reduced_density: qubit out of range");

    std::vector<bool> is_kept(s.qubit_count(), false);
    for (Qubit q : kept) is_kept[q] = true;
    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t de = s.dim() / dk;

    // Row = kept bits, column = traced bits; rho = M M^H.
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(de));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t row = 0;
        std::size_t col = 0;
        for (Qubit q = 0; q < s.qubit_count(); ++q) {
            const std::size_t bit = (i >> s.bit_of(q)) & 1U;
            if (is_kept[q])
                row = (row << 1) | bit;
            else
                col = (col << 1) | bit;
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[i];
    }
    CMatrix rho = m * m.adjoint();
    rho = (rho + rho.adjoint().eval()) * 0.5;
    return DensityMatrix(std::move(rho));
}

CMatrix hermitian_sqrt(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
    Eigen::VectorXd vals = eig.eigenvalues();
    for (auto& v : vals) {
        if (v < -DensityMatrix::kEigenTol)
            throw Error(fmt::format("matrix square root: eigenvalue {:.3g} below tolerance", v));
        v = std::sqrt(std::max(v, 0.0));
    }
    return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw Error(fmt::format("fidelity: dimension mismatch ({} vs {})", rho.dim(), sigma.dim()));
    const CMatrix root = hermitian_sqrt(rho.matrix());
    CMatrix inner = root * sigma.matrix() * root;
    inner = (inner + inner.adjoint().eval()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(inner, Eigen::EigenvaluesOnly);
    // Eigenvalues at rounding level are zero; their square roots would not be.
    const double cut = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(rho.dim()) *
                       std::max(eig.eigenvalues().maxCoeff(), 0.0);
    double trace_root = 0.0;
    for (double v : eig.eigenvalues())
        if (v > cut) trace_root += std::sqrt(v);
    return std::clamp(trace_root * trace_root, 0.0, 1.0);
}

namespace {

struct Marginal {
    std::vector<Qubit> measured;
    std::vector<double> probs;  // indexed by measured bits, first measured qubit most significant
};

Marginal marginal_after_rotation(const StateVector& s, std::span<const Basis> basis) {
    if (basis.size() != s.qubit_count())
        throw Error(fmt::format("basis selector has {} entries for {} qubits", basis.size(),
                                s.qubit_count()));
    Marginal out;
    StateVector rotated = s;
    for (Qubit q = 0; q < s.qubit_count(); ++q) {
        switch (basis[q]) {
        case Basis::Skip:
            continue;
        case Basis::X:
            apply_gate_inplace(rotated, Gate::h(q));
            break;
        case Basis::Y:
            apply_gate_inplace(rotated, Gate::sdg(q));
            apply_gate_inplace(rotated, Gate::h(q));
            break;
        case Basis::Z:
            break;
        }
        out.measured.push_back(q);
    }
    if (out.measured.empty()) throw Error("no qubit selected for measurement");

    std::vector<double> full(rotated.dim());
    kernels::probabilities(rotated.amplitudes(), full);
    out.probs.assign(std::size_t{1} << out.measured.size(), 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) {
        std::size_t key = 0;
        for (Qubit q : out.measured) key = (key << 1) | ((i >> rotated.bit_of(q)) & 1U);
        out.probs[key] += full[i];
    }
    return out;
}

std::string key_string(std::size_t key, std::size_t width) {
    std::string bits(width, '0');
    for (std::size_t b = 0; b < width; ++b)
        if ((key >> (width - 1 - b)) & 1U) bits[b] = '1';
    return bits;
}

}  // namespace

std::map<std::string, double> outcome_probabilities(const StateVector& s,
                                                    std::span<const Basis> basis) {
    const Marginal marg = marginal_after_rotation(s, basis);
    std::map<std::string, double> out;
    for (std::size_t k = 0; k < marg.probs.size(); ++k)
        out[key_string(k, marg.measured.size())] = marg.probs[k];
    return out;
}

Counts sample_measurements(const StateVector& s, std::span<const Basis> basis, std::uint64_t shots,
                           std::uint64_t seed) {
    if (shots == 0) throw Error("shots must be positive");
    const Marginal marg = marginal_after_rotation(s, basis);

    std::vector<double> cdf(marg.probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < cdf.size(); ++k) cdf[k] = (acc += marg.probs[k]);

    // Sequential draws: counts depend only on (seed, state, basis, shots).
    std::mt19937_64 gen(seed);
    std::vector<std::uint64_t> tally(cdf.size(), 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        ++tally[static_cast<std::size_t>(it - cdf.begin())];
    }

    Counts counts;
    for (std::size_t k = 0; k < tally.size(); ++k)
        if (tally[k] > 0) counts[key_string(k, marg.measured.size())] = tally[k];
    return counts;
}

}  // namespace qtele
