#pragma once

#include "qtele/circuit.hpp"
#include "qtele/simulator.hpp"

#include <random>
#include <vector>

namespace qtele::test {

enum class GateMix { Clifford, CnotOnly, All };

// Random circuit without PREP. Angles are uniform in [0, 2pi).
inline Circuit random_circuit(std::size_t n, std::size_t len, std::mt19937_64& rng, GateMix mix = GateMix::All) {
    std::uniform_int_distribution<Qubit> pick(0, static_cast<Qubit>(n - 1));
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::vector<GateKind> kinds;
    switch (mix) {
    case GateMix::CnotOnly:
        kinds = {GateKind::CNOT};
        break;
    case GateMix::Clifford:
        kinds = {GateKind::H, GateKind::X, GateKind::CNOT, GateKind::CZ};
        break;
    case GateMix::All:
        kinds = {GateKind::H,  GateKind::X,    GateKind::Z,  GateKind::S,   GateKind::SDG,
                 GateKind::RY, GateKind::CNOT, GateKind::CZ, GateKind::SWAP};
        break;
    }
    std::uniform_int_distribution<std::size_t> which(0, kinds.size() - 1);
    std::vector<Gate> gates;
    while (gates.size() < len) {
        const GateKind k = kinds[which(rng)];
        if (arity(k) == 2) {
            if (n < 2) continue;
            const Qubit a = pick(rng);
            Qubit b = pick(rng);
            while (b == a) b = pick(rng);
            gates.push_back(Gate::two(k, a, b));
        } else {
            gates.push_back(Gate::one(k, pick(rng), angle(rng)));
        }
    }
    return Circuit(n, std::move(gates));
}

inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Amp> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(v));
}

inline double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double max_diff(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace qtele::test
