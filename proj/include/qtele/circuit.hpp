#pragma once

// Gate set, circuit container and the gate-count / cost / depth metrics.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtele {

using Qubit = std::uint32_t;

/// Hard register limit; the protocols themselves need at most 7 qubits.
inline constexpr std::size_t kMaxQubits = 16;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed circuit text. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class GateKind : std::uint8_t { H, X, Z, S, SDG, RY, CNOT, CZ, SWAP, PREP };

std::string_view mnemonic(GateKind kind) noexcept;
std::optional<GateKind> kind_from_mnemonic(std::string_view text) noexcept;

constexpr std::size_t arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    default:
        return 1;
    }
}

constexpr bool has_angle(GateKind kind) noexcept {
    return kind == GateKind::RY || kind == GateKind::PREP;
}

/// Two-qubit weight used by the cost metric.
constexpr std::size_t cost_weight(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
        return 1;
    case GateKind::SWAP:
        return 3;
    default:
        return 0;
    }
}

/// One elementary operation. For CNOT the operands are (control, target).
class Gate {
public:
    /// Single-qubit gate; `angle` is ignored unless the kind carries one.
    static Gate one(GateKind kind, Qubit q, double angle = 0.0);
    static Gate two(GateKind kind, Qubit a, Qubit b);

    static Gate h(Qubit q) { return one(GateKind::H, q); }
    static Gate x(Qubit q) { return one(GateKind::X, q); }
    static Gate z(Qubit q) { return one(GateKind::Z, q); }
    static Gate s(Qubit q) { return one(GateKind::S, q); }
    static Gate sdg(Qubit q) { return one(GateKind::SDG, q); }
    static Gate ry(Qubit q, double angle) { return one(GateKind::RY, q, angle); }
    static Gate prep(Qubit q, double angle) { return one(GateKind::PREP, q, angle); }
    static Gate cnot(Qubit control, Qubit target) { return two(GateKind::CNOT, control, target); }
    static Gate cz(Qubit a, Qubit b) { return two(GateKind::CZ, a, b); }
    static Gate swap(Qubit a, Qubit b) { return two(GateKind::SWAP, a, b); }

    GateKind kind() const noexcept { return kind_; }
    std::span<const Qubit> qubits() const noexcept { return {qubits_.data(), arity(kind_)}; }
    Qubit qubit(std::size_t i) const {
        if (i >= arity(kind_)) throw std::out_of_range("gate operand index");
        return qubits_[i];
    }
    double angle() const noexcept { return angle_; }
    bool touches(Qubit q) const noexcept;
    bool is_two_qubit() const noexcept { return arity(kind_) == 2; }

    /// Same gate with `q` mapped through `relabel`.
    template <typename F>
    Gate mapped(F&& relabel) const {
        Gate g = *this;
        for (std::size_t i = 0; i < arity(kind_); ++i) g.qubits_[i] = relabel(qubits_[i]);
        return g;
    }

    Gate with_angle(double angle) const;

    friend bool operator==(const Gate& a, const Gate& b) noexcept;

private:
    Gate(GateKind kind, std::array<Qubit, 2> qubits, double angle)
        : kind_(kind), qubits_(qubits), angle_(angle) {}

    GateKind kind_;
    std::array<Qubit, 2> qubits_{};
    double angle_ = 0.0;
};

std::string to_string(const Gate& g);

/// Gate-count / cost / depth triple.
struct Metrics {
    std::size_t gate_count = 0;
    std::size_t cost = 0;
    std::size_t depth = 0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

std::string to_string(const Metrics& m);

/// Ordered gate sequence over a fixed register. Validated on construction:
/// operands in range and pairwise distinct, at most one PREP and no gate on the
/// PREP qubit before it.
class Circuit {
public:
    explicit Circuit(std::size_t qubit_count);
    Circuit(std::size_t qubit_count, std::vector<Gate> gates);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }
    const Gate& operator[](std::size_t i) const { return gates_.at(i); }
    auto begin() const noexcept { return gates_.begin(); }
    auto end() const noexcept { return gates_.end(); }

    /// Index of the PREP gate, if any.
    std::optional<std::size_t> prep_index() const noexcept;

    /// Returns a copy with `g` appended (validated).
    Circuit appended(const Gate& g) const;
    /// First `n` gates.
    Circuit prefix(std::size_t n) const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    void validate() const;

    std::size_t qubit_count_;
    std::vector<Gate> gates_;
};

/// Gate-count, weighted two-qubit cost and ASAP layer depth.
Metrics metrics(const Circuit& c);

/// Gates of `a` followed by the gates of `b`.
Circuit compose(const Circuit& a, const Circuit& b);

/// Relabels every operand through `perm` (perm[q] is the new index of q).
Circuit relabel(const Circuit& c, std::span<const Qubit> perm);

/// Replaces the PREP gate (if any) by RY with the same angle, so the circuit
/// has a well-defined unitary.
Circuit prep_as_ry(const Circuit& c);

Circuit parse_circuit(std::string_view text);
Circuit parse_circuit(std::istream& in);
std::string serialize_circuit(const Circuit& c);

}  // namespace qtele
