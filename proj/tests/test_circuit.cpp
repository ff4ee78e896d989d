#include "qtele/circuit.hpp"
#include "qtele/protocols.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <numbers>
#include <random>

using namespace qtele;

TEST(Metrics, EmptyCircuit) {
    EXPECT_EQ(metrics(Circuit(3)), (Metrics{0, 0, 0}));
}

TEST(Metrics, DisjointGatesShareALayer) {
    const Circuit c(2, {Gate::h(0), Gate::h(1)});
    EXPECT_EQ(metrics(c), (Metrics{2, 0, 1}));
}

TEST(Metrics, SwapWeighsThree) {
    const Circuit c(3, {Gate::swap(0, 1), Gate::cz(1, 2), Gate::cnot(2, 0)});
    EXPECT_EQ(metrics(c), (Metrics{3, 5, 3}));
}

TEST(Metrics, PrepCountsAsOneGate) {
    const Circuit c(2, {Gate::prep(0, 1.0), Gate::cnot(0, 1)});
    EXPECT_EQ(metrics(c), (Metrics{2, 1, 2}));
}

TEST(Metrics, GhzAndEntswapTriples) {
    EXPECT_EQ(metrics(build_simplified(protocol_spec(ProtocolId::Ghz))), (Metrics{9, 4, 6}));
    EXPECT_EQ(metrics(build_simplified(protocol_spec(ProtocolId::Entswap))), (Metrics{10, 5, 5}));
}

TEST(Metrics, PermutationInvariant) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = test::random_circuit(6, 30, rng);
        std::vector<Qubit> perm(6);
        std::iota(perm.begin(), perm.end(), Qubit{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_EQ(metrics(relabel(c, perm)), metrics(c));
    }
}

TEST(Metrics, BoundsAndComposition) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit a = test::random_circuit(5, 20, rng);
        const Circuit b = test::random_circuit(5, 15, rng);
        const Metrics ma = metrics(a);
        EXPECT_LE(ma.depth, ma.gate_count);
        EXPECT_LE(metrics(compose(a, b)).depth, ma.depth + metrics(b).depth);
    }
}

TEST(Metrics, CostCountsTwoQubitGatesWithoutSwap) {
    std::mt19937_64 rng(13);
    const Circuit c = test::random_circuit(4, 40, rng, test::GateMix::Clifford);
    const auto two = std::count_if(c.begin(), c.end(), [](const Gate& g) { return g.is_two_qubit(); });
    EXPECT_EQ(metrics(c).cost, static_cast<std::size_t>(two));
}

TEST(Circuit, RejectsInvalidGates) {
    EXPECT_THROW(Circuit(2, {Gate::cnot(0, 2)}), Error);
    EXPECT_THROW(Gate::cnot(1, 1), Error);
    EXPECT_THROW(Circuit(0), Error);
    EXPECT_THROW(Circuit(17), Error);
    EXPECT_THROW(Circuit(2, {Gate::prep(0, 0.1), Gate::prep(1, 0.2)}), Error);
    EXPECT_THROW(Circuit(2, {Gate::h(0), Gate::prep(0, 0.1)}), Error);
    EXPECT_NO_THROW(Circuit(2, {Gate::h(1), Gate::prep(0, 0.1)}));
}

TEST(Circuit, ComposeRequiresEqualSize) {
    EXPECT_THROW(compose(Circuit(2), Circuit(3)), Error);
    const Circuit c(2, {Gate::h(0), Gate::cnot(0, 1)});
    EXPECT_EQ(compose(Circuit(2), c), c);
    const Circuit x(2, {Gate::x(1)});
    EXPECT_EQ(compose(compose(c, x), c), compose(c, compose(x, c)));
}

TEST(Parse, DirectTranscription) {
    const Circuit c = parse_circuit("qubits 2\nh 0\ncnot 0 1\n");
    EXPECT_EQ(c, Circuit(2, {Gate::h(0), Gate::cnot(0, 1)}));
}

TEST(Parse, PrepAngle) {
    const Circuit c = parse_circuit("qubits 1\nprep 0 1.0471975511965976\n");
    ASSERT_EQ(c.size(), 1U);
    EXPECT_EQ(c[0].kind(), GateKind::PREP);
    EXPECT_DOUBLE_EQ(c[0].angle(), std::numbers::pi / 3);
}

TEST(Parse, CommentsAndCase) {
    const Circuit c = parse_circuit("# header comment\nqubits 3\n\nCNOT 2 0  # trailing\nSdg 1\n");
    EXPECT_EQ(c, Circuit(3, {Gate::cnot(2, 0), Gate::sdg(1)}));
}

TEST(Parse, Errors) {
    auto message = [](const char* text) {
        try {
            parse_circuit(text);
        } catch (const ParseError& e) {
            return std::string(e.what()) + " @" + std::to_string(e.line());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("qubits 2\ncnot 0 0\n").find("duplicate operand @2"), std::string::npos);
    EXPECT_NE(message("qubits 2\nh 2\n").find("out of range @2"), std::string::npos);
    EXPECT_NE(message("qubits 2\nprep 0 1\nprep 1 1\n").find("duplicate PREP @3"), std::string::npos);
    EXPECT_NE(message("qubits 2\nfoo 0\n").find("unknown mnemonic"), std::string::npos);
    EXPECT_NE(message("h 0\n").find("@1"), std::string::npos);
    EXPECT_NE(message("qubits 2\nry 0\n").find("@2"), std::string::npos);
}

TEST(Serialize, CanonicalForm) {
    EXPECT_EQ(serialize_circuit(Circuit(3, {Gate::cnot(2, 0)})), "qubits 3\ncnot 2 0\n");
    EXPECT_EQ(serialize_circuit(Circuit(1, {Gate::ry(0, std::numbers::pi)})), "qubits 1\nry 3.1415926535897931 0\n");
}

TEST(Serialize, RoundTripRandomCircuits) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Gate> gates{Gate::prep(0, std::uniform_real_distribution<double>(0, 3)(rng))};
        const Circuit body = test::random_circuit(5, 25, rng);
        gates.insert(gates.end(), body.begin(), body.end());
        const Circuit c(5, gates);
        const std::string text = serialize_circuit(c);
        const Circuit back = parse_circuit(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_circuit(back), text);
    }
}
