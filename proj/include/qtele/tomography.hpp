#pragma once

// Single-qubit state tomography of the teleported message and the experiment
// report built from it.

#include "qtele/protocols.hpp"
#include "qtele/simulator.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtele {

/// |M><M| for the message defined by `m`.
DensityMatrix theoretical_density(const MessageParams& m);

/// (I + xX + yY + zZ)/2. A Bloch vector outside the unit ball gives a negative
/// eigenvalue; it is clipped to zero and the trace renormalised.
DensityMatrix density_from_bloch(double x, double y, double z);

struct TomographyResult {
    std::string protocol;
    double theta = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double exp_x = 0.0;
    double exp_y = 0.0;
    double exp_z = 0.0;
    DensityMatrix rho{CMatrix::Identity(2, 2) * 0.5};
    double fidelity = 0.0;
    /// Raw outcome histograms keyed by basis name ("Z", "X", "Y").
    std::map<std::string, Counts> counts;
};

/// Samples the target in Z, X and Y with seeds seed, seed+1 and seed+2, takes
/// <P> = (n0 - n1)/shots and reconstructs by linear inversion.
TomographyResult tomograph(const Circuit& c, Qubit target, const MessageParams& m, std::uint64_t shots,
                           std::uint64_t seed);
TomographyResult tomograph(ProtocolId id, const MessageParams& m, std::uint64_t shots, std::uint64_t seed);

/// Infinite-shot limit: expectations from exact outcome probabilities.
TomographyResult tomograph_exact(const Circuit& c, Qubit target, const MessageParams& m);

/// Row i of the report uses seed + kRowSeedStride * i.
inline constexpr std::uint64_t kRowSeedStride = 3;

/// One tomography row per (protocol, theta), protocols outermost. Rows run in
/// parallel; each depends only on its derived seed.
std::vector<TomographyResult> experiment_report(std::span<const ProtocolId> protocols,
                                                std::span<const double> thetas, std::uint64_t shots,
                                                std::uint64_t seed);

/// A published experimental density matrix for the cross-check table.
struct PublishedMatrix {
    ProtocolId protocol;
    /// The message angle is pi / theta_divisor.
    int theta_divisor;
    double rho00;
    double rho01_re;
    double rho01_im;
    double rho11;

    double theta() const;
    double trace() const { return rho00 + rho11; }
    CMatrix matrix() const;
};

/// Experimental matrices for ghz, cluster2, cluster3 and entswap at pi/3 and pi/4.
std::span<const PublishedMatrix> published_matrices();

struct CrossCheckRow {
    PublishedMatrix source;
    /// Trace differs from 1; such rows are not scored.
    bool trace_flagged = false;
    std::optional<double> fidelity;
};

inline constexpr double kPublishedTraceTol = 1e-6;
std::vector<CrossCheckRow> cross_check_published();

}  // namespace qtele
