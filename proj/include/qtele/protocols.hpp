#pragma once

// The six teleportation protocols: simplified circuits, channel states,
// reconstructed originals and closed-form intermediate states.
//
// Register index k corresponds to qubit k+1 in the usual 1-based labelling.
// The message always starts on qubit 0.

#include "qtele/circuit.hpp"
#include "qtele/rewrite.hpp"
#include "qtele/simulator.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace qtele {

enum class ProtocolId : std::uint8_t { Ghz, Cluster2, Cluster3, Brown, Borras, Entswap };

inline constexpr std::array<ProtocolId, 6> kAllProtocols{ProtocolId::Ghz,   ProtocolId::Cluster2,
                                                         ProtocolId::Cluster3, ProtocolId::Brown,
                                                         ProtocolId::Borras, ProtocolId::Entswap};

std::string_view to_string(ProtocolId id) noexcept;
/// Throws Error for an unknown id.
ProtocolId protocol_from_string(std::string_view text);

/// One signed basis term of a closed-form state. `beta` selects the message
/// amplitude multiplying it; `bits` lists every qubit, qubit 0 first.
struct StateTerm {
    int sign = 1;
    bool beta = false;
    std::string bits;
};

/// Expected state after the first `prefix` gates of the simplified circuit.
struct Checkpoint {
    std::string id;
    std::size_t prefix = 0;
    double scale = 1.0;
    /// When set, the amplitudes are those of the message after a Hadamard,
    /// (alpha + beta)/sqrt2 and (alpha - beta)/sqrt2.
    bool absorbed_h = false;
    std::vector<StateTerm> terms;
};

struct ProtocolSpec {
    ProtocolId id;
    std::size_t qubit_count;
    Qubit message = 0;
    Qubit target;
    std::vector<Gate> simplified;
    /// Cost-raising rewrites that rebuild the original circuit.
    std::vector<RewriteStep> expansion;
    Metrics paper_simplified;
    Metrics paper_original;
    std::vector<Checkpoint> checkpoints;
};

const ProtocolSpec& protocol_spec(ProtocolId id);

Circuit build_simplified(const ProtocolSpec& p);

/// Replays the expansion chain on the simplified circuit. Throws Error when a
/// step has no matching site.
Circuit expand_to_original(const ProtocolSpec& p);

/// Entangled channel over the non-message qubits (ascending order).
StateVector channel_state(const ProtocolSpec& p);

struct TeleportResult {
    double fidelity = 0.0;
    bool deterministic = false;
};

/// Fidelity of the target's reduced state with |M>. Deterministic when the
/// basis messages |0>, |1> and `m` all arrive intact.
inline constexpr double kTeleportTolerance = 1e-10;
TeleportResult verify_teleportation(const Circuit& c, Qubit target, const MessageParams& m);

/// Amplitudes of a checkpoint's closed form on `qubit_count` qubits (not
/// renormalised, so a wrong prefactor shows up as a deviation).
std::vector<Amp> expected_state(const Checkpoint& cp, std::size_t qubit_count, const MessageParams& m);

struct CheckpointResult {
    std::string id;
    std::size_t prefix = 0;
    double deviation = 0.0;
};

/// Max amplitude difference between simulation and each closed form.
std::vector<CheckpointResult> checkpoint_states(const ProtocolSpec& p, const MessageParams& m);

struct ConformanceRow {
    ProtocolId id;
    Metrics simplified;
    Metrics paper_simplified;
    Metrics original;
    Metrics paper_original;

    bool simplified_match() const { return simplified == paper_simplified; }
    bool original_match() const { return original == paper_original; }
    bool match() const { return simplified_match() && original_match(); }
};

ConformanceRow conformance(const ProtocolSpec& p);

}  // namespace qtele
