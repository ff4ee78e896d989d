#include "qtele/tomography.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace qtele {

namespace {

constexpr std::array<std::pair<Basis, const char*>, 3> kBases{
    {{Basis::Z, "Z"}, {Basis::X, "X"}, {Basis::Y, "Y"}}};

double expectation(const Counts& counts, std::uint64_t shots) {
    const auto get = [&](const char* k) {
        auto it = counts.find(k);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second);
    };
    return (get("0") - get("1")) / static_cast<double>(shots);
}

std::vector<Basis> selector(std::size_t n, Qubit target, Basis b) {
    std::vector<Basis> sel(n, Basis::Skip);
    sel.at(target) = b;
    return sel;
}

void finish(TomographyResult& r, const MessageParams& m) {
    r.rho = density_from_bloch(r.exp_x, r.exp_y, r.exp_z);
    r.fidelity = fidelity(theoretical_density(m), r.rho);
}

const std::array<PublishedMatrix, 8> kPublished{{
    {ProtocolId::Ghz, 3, 0.742, 0.435, 0.0, 0.258},
    {ProtocolId::Cluster2, 3, 0.749, 0.432, 0.001, 0.251},
    {ProtocolId::Cluster3, 3, 0.748, 0.427, -0.003, 0.252},
    {ProtocolId::Entswap, 3, 0.474, 0.436, -0.002, 0.253},
    {ProtocolId::Ghz, 4, 0.857, 0.345, -0.002, 0.143},
    {ProtocolId::Cluster2, 4, 0.856, 0.349, 0.008, 0.284},
    {ProtocolId::Cluster3, 4, 0.85, 0.35, -0.001, 0.15},
    {ProtocolId::Entswap, 4, 0.849, 0.347, -0.002, 0.151},
}};

}  // namespace

DensityMatrix theoretical_density(const MessageParams& m) {
    const std::array<Amp, 2> psi{m.alpha(), m.beta()};
    return DensityMatrix::pure(psi);
}

DensityMatrix density_from_bloch(double x, double y, double z) {
    const Amp i{0.0, 1.0};
    CMatrix rho(2, 2);
    rho << 0.5 * (1 + z), 0.5 * (x - i * y), 0.5 * (x + i * y), 0.5 * (1 - z);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho);
    if (eig.eigenvalues().minCoeff() < 0.0) {
        Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0);
        vals /= vals.sum();
        rho = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
        rho = (rho + rho.adjoint().eval()) * 0.5;
        rho /= rho.trace().real();
    }
    return DensityMatrix(std::move(rho));
}

TomographyResult tomograph(const Circuit& c, Qubit target, const MessageParams& m, std::uint64_t shots,
                           std::uint64_t seed) {
    if (shots == 0) throw Error("tomograph: shots must be positive");
    const StateVector out = run(c, m);
    TomographyResult r;
    r.theta = m.theta;
    r.shots = shots;
    r.seed = seed;
    for (std::size_t k = 0; k < kBases.size(); ++k) {
        const auto [basis, name] = kBases[k];
        const auto sel = selector(c.qubit_count(), target, basis);
        r.counts[name] = sample_measurements(out, sel, shots, seed + k);
    }
    r.exp_z = expectation(r.counts["Z"], shots);
    r.exp_x = expectation(r.counts["X"], shots);
    r.exp_y = expectation(r.counts["Y"], shots);
    finish(r, m);
    return r;
}

TomographyResult tomograph(ProtocolId id, const MessageParams& m, std::uint64_t shots, std::uint64_t seed) {
    const ProtocolSpec& p = protocol_spec(id);
    TomographyResult r = tomograph(build_simplified(p), p.target, m, shots, seed);
    r.protocol = std::string(to_string(id));
    return r;
}

TomographyResult tomograph_exact(const Circuit& c, Qubit target, const MessageParams& m) {
    const StateVector out = run(c, m);
    TomographyResult r;
    r.theta = m.theta;
    double* slots[] = {&r.exp_z, &r.exp_x, &r.exp_y};
    for (std::size_t k = 0; k < kBases.size(); ++k) {
        const auto probs = outcome_probabilities(out, selector(c.qubit_count(), target, kBases[k].first));
        *slots[k] = probs.at("0") - probs.at("1");
    }
    finish(r, m);
    return r;
}

std::vector<TomographyResult> experiment_report(std::span<const ProtocolId> protocols,
                                                std::span<const double> thetas, std::uint64_t shots,
                                                std::uint64_t seed) {
    if (shots == 0) throw Error("experiment_report: shots must be positive");
    const auto rows = static_cast<std::int64_t>(protocols.size() * thetas.size());
    std::vector<TomographyResult> out(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t row = 0; row < rows; ++row) {
        const auto i = static_cast<std::size_t>(row);
        const ProtocolId id = protocols[i / thetas.size()];
        const double theta = thetas[i % thetas.size()];
        out[i] = tomograph(id, {theta, 0.0}, shots, seed + kRowSeedStride * i);
    }
    return out;
}

double PublishedMatrix::theta() const { return std::numbers::pi / theta_divisor; }

CMatrix PublishedMatrix::matrix() const {
    CMatrix m(2, 2);
    m << Amp(rho00, 0.0), Amp(rho01_re, rho01_im), Amp(rho01_re, -rho01_im), Amp(rho11, 0.0);
    return m;
}

std::span<const PublishedMatrix> published_matrices() { return kPublished; }

std::vector<CrossCheckRow> cross_check_published() {
    std::vector<CrossCheckRow> rows;
    for (const PublishedMatrix& pm : kPublished) {
        CrossCheckRow row{pm, std::abs(pm.trace() - 1.0) > kPublishedTraceTol, std::nullopt};
        if (!row.trace_flagged)
            row.fidelity = fidelity(theoretical_density({pm.theta(), 0.0}), DensityMatrix(pm.matrix()));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qtele
