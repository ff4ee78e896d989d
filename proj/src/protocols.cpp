#include "qtele/protocols.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace qtele {

namespace {

using G = Gate;
using D = Direction;

constexpr double kRt2 = std::numbers::sqrt2;

// "+a0101 -b1100 ..." with explicit amplitude letters.
std::vector<StateTerm> terms(std::string_view spec) {
    std::vector<StateTerm> out;
    std::istringstream in{std::string(spec)};
    std::string tok;
    while (in >> tok) out.push_back({tok[0] == '-' ? -1 : 1, tok[1] == 'b', tok.substr(2)});
    return out;
}

// Unsigned alpha strings and beta strings.
std::vector<StateTerm> split(std::string_view alpha, std::string_view beta) {
    std::vector<StateTerm> out;
    std::istringstream a{std::string(alpha)};
    std::istringstream b{std::string(beta)};
    std::string tok;
    while (a >> tok) out.push_back({1, false, tok});
    while (b >> tok) out.push_back({1, true, tok});
    return out;
}

// Each signed string over the other qubits times the message inserted at
// `pos`; flipped puts alpha on |1> and beta on |0>.
std::vector<StateTerm> with_message(std::size_t pos, std::string_view spec, bool flipped = false) {
    std::vector<StateTerm> out;
    std::istringstream in{std::string(spec)};
    std::string tok;
    while (in >> tok) {
        const int sign = tok[0] == '-' ? -1 : 1;
        std::string rest = tok.substr(1);
        std::string zero = rest;
        std::string one = rest;
        zero.insert(pos, 1, '0');
        one.insert(pos, 1, '1');
        out.push_back({sign, false, flipped ? one : zero});
        out.push_back({sign, true, flipped ? zero : one});
    }
    return out;
}

ProtocolSpec make_ghz() {
    ProtocolSpec p{ProtocolId::Ghz, 4, 0, 2, {}, {}, {9, 4, 6}, {10, 6, 8}, {}};
    p.simplified = {G::prep(0, 0.0), G::h(2), G::h(3),     G::cnot(2, 0), G::cnot(0, 1),
                    G::cnot(1, 2),   G::cnot(2, 3), G::h(0), G::h(3)};
    p.expansion = {{"R-REV", D::Reverse, {0, 2}, 3}};
    p.checkpoints = {
        {"psi0", 1, 1.0, false, terms("+a0000 +b1000")},
        {"psi1", 3, 1 / (2 * kRt2), true,
         terms("+a0000 +a1000 +b0000 -b1000 +a0001 +a1001 +b0001 -b1001 "
               "+a0010 +a1010 +b0010 -b1010 +a0011 +a1011 +b0011 -b1011")},
        {"psi2", 7, 1 / (2 * kRt2), true,
         terms("+a0000 +a0010 +a0001 +a0011 +a1100 +a1110 +a1101 +a1111 "
               "+b0000 -b0010 +b0001 -b0011 +b1100 -b1110 +b1101 -b1111")},
        {"psi3", 9, 0.5, false, with_message(2, "+000 +010 +100 -110")},
    };
    return p;
}

ProtocolSpec make_cluster2() {
    ProtocolSpec p{ProtocolId::Cluster2, 3, 0, 2, {}, {}, {6, 3, 5}, {9, 4, 5}, {}};
    p.simplified = {G::prep(0, 0.0), G::h(1), G::cnot(0, 1), G::cnot(0, 2), G::cnot(2, 0), G::h(0)};
    p.expansion = {{"R-T", D::Reverse, {0, 1, 2}, 2}};
    p.checkpoints = {
        {"varphi0", 1, 1.0, false, terms("+a000 +b100")},
        {"varphi1", 2, 1 / kRt2, false, terms("+a000 +a010 +b100 +b110")},
        {"varphi2", 5, 1 / kRt2, false, terms("+a000 +a010 +b011 +b001")},
        {"varphi3", 6, 0.5, false, with_message(2, "+00 +10 +01 +11")},
    };
    return p;
}

ProtocolSpec make_cluster3() {
    ProtocolSpec p{ProtocolId::Cluster3, 4, 0, 2, {}, {}, {8, 4, 5}, {12, 6, 7}, {}};
    p.simplified = {G::prep(0, 0.0), G::h(1),       G::h(3),       G::cnot(0, 2),
                    G::cnot(0, 1),   G::cnot(3, 0), G::cnot(2, 3), G::h(0)};
    p.expansion = {{"R-T", D::Reverse, {0, 2, 1}, 3}, {"R-REV", D::Reverse, {1, 2}, 3}};
    p.checkpoints = {
        {"phi0", 1, 1.0, false, terms("+a0000 +b1000")},
        {"phi1", 3, 0.5, false, split("0000 0001 0100 0101", "1000 1001 1100 1101")},
        {"phi2", 7, 0.5, false, split("0000 1001 0100 1101", "1111 0110 1011 0010")},
        {"phi3", 8, 1 / (2 * kRt2), false, with_message(2, "+000 +100 +001 -101 +010 +110 +011 -111")},
    };
    return p;
}

ProtocolSpec make_brown() {
    ProtocolSpec p{ProtocolId::Brown, 6, 0, 5, {}, {}, {18, 8, 7}, {25, 15, 17}, {}};
    p.simplified = {G::prep(0, 0.0), G::h(1),       G::h(5),       G::x(2),       G::x(3),       G::x(4),
                    G::cnot(1, 4),   G::cnot(5, 3), G::cnot(0, 3), G::cnot(5, 4), G::cnot(0, 1), G::cnot(4, 2),
                    G::cnot(5, 0),   G::cnot(3, 5), G::h(0),       G::x(1),       G::x(3),       G::x(5)};
    p.expansion = {
        {"COMM-TGT", D::Forward, {5, 0, 3}, 7}, {"R-C", D::Reverse, {5, 0, 3}, 7},
        {"R-T", D::Reverse, {5, 0, 4}, 9},      {"R-T", D::Reverse, {0, 3, 4}, 8},
        {"R-T", D::Reverse, {0, 4, 1}, 12},     {"R-T", D::Reverse, {4, 1, 2}, 14},
        {"R-X", D::Forward, {3, 5}, 18},        {"R-X", D::Forward, {1, 2}, 16},
    };
    p.checkpoints = {
        {"chi1", 6, 0.5, false, split("001110 001111 011110 011111", "101110 101111 111110 111111")},
        {"chi2", 8, 0.5, false, with_message(0, "+01110 +11100 +01011 +11001")},
        {"chi3", 15, 1 / (2 * kRt2), false,
         with_message(5, "+00011 +01110 +10011 +11110 +00100 +01001 -10100 -11001", true)},
        {"chi4", 18, 1 / (2 * kRt2), false,
         with_message(5, "+01001 +00100 +11001 +10100 +01110 +00011 -11110 -10011")},
    };
    return p;
}

ProtocolSpec make_borras() {
    ProtocolSpec p{ProtocolId::Borras, 7, 0, 6, {}, {}, {15, 8, 11}, {36, 25, 20}, {}};
    p.simplified = {G::prep(0, 0.0), G::x(1),       G::h(1),       G::cnot(1, 2), G::cnot(1, 5),
                    G::h(2),         G::cnot(0, 1), G::cnot(2, 5), G::cnot(0, 6), G::h(0),
                    G::cnot(0, 5),   G::h(4),       G::h(5),       G::cnot(2, 5), G::cnot(6, 2)};
    p.expansion = {
        {"R-T", D::Reverse, {0, 1, 6}, 6},  {"R-T", D::Reverse, {1, 2, 5}, 3},
        {"R-REV", D::Reverse, {2, 1}, 4},   {"R-REV", D::Reverse, {1, 2}, 6},
        {"R-REV", D::Reverse, {2, 1}, 8},   {"R-REV", D::Reverse, {1, 2}, 10},
        {"R-REV", D::Reverse, {2, 1}, 12},
    };
    p.checkpoints = {
        {"omega0", 1, 1.0, false, terms("+a0000000 +b1000000")},
        {"omega1", 5, 1 / kRt2, false, terms("+a0000000 -a0110010 +b1000000 -b1110010")},
        {"omega2", 11, 1 / (2 * kRt2), false,
         terms("+a0000000 -a0100010 +a0010010 +a0110000 +a1000010 -a1100000 +a1010000 +a1110010 "
               "+b0100001 -b0000011 +b0110011 +b0010001 -b1100011 +b1000001 -b1110001 -b1010011")},
        {"omega3", 15, 1 / (4 * kRt2), false,
         with_message(6, "+000000 -010000 +001001 +000010 -010010 +011011 +100000 -110000 "
                         "+101001 +111001 +100010 -110010 +101011 +111011 +000001 +010001 "
                         "-001000 +011000 +000011 +010011 -001010 +011010 -100001 -110001 "
                         "+101000 -111000 -100011 -110011 +101010 -111010 +001011 +011001")},
    };
    return p;
}

ProtocolSpec make_entswap() {
    ProtocolSpec p{ProtocolId::Entswap, 5, 0, 4, {}, {}, {10, 5, 5}, {13, 8, 8}, {}};
    p.simplified = {G::prep(0, 0.0), G::h(3),       G::h(4),       G::cnot(2, 1), G::cnot(4, 0),
                    G::cnot(1, 4),   G::cnot(4, 3), G::cnot(0, 4), G::h(1),       G::h(2)};
    p.expansion = {{"R-REV", D::Reverse, {0, 4}, 4}};
    p.checkpoints = {
        {"eta0", 1, 1.0, false, terms("+a00000 +b10000")},
        {"eta1", 3, 0.5, false, with_message(0, "+0000 +0001 +0010 +0011")},
        {"eta2", 8, 0.5, false, split("00000 00010 10010 10000", "10001 10011 00011 00001")},
        {"eta3", 10, 0.25, false,
         with_message(4, "+0000 +0001 +1001 +1000 +0100 +0101 +1101 +1100 "
                         "+0010 +0011 +1011 +1010 +0110 +0111 +1111 +1110")},
    };
    return p;
}

const std::array<ProtocolSpec, 6>& table() {
    static const std::array<ProtocolSpec, 6> specs{make_ghz(),   make_cluster2(), make_cluster3(),
                                                   make_brown(), make_borras(),   make_entswap()};
    return specs;
}

std::size_t index_of(std::string_view bits) {
    std::size_t i = 0;
    for (char ch : bits) i = (i << 1) | static_cast<std::size_t>(ch == '1');
    return i;
}

// Bell pair (|first> + sign |second>)/sqrt2 on two qubits.
struct Pair {
    const char* first;
    const char* second;
    double sign;
};

constexpr Pair kPsiPlus{"00", "11", 1.0};
constexpr Pair kPsiMinus{"00", "11", -1.0};
constexpr Pair kPhiPlus{"01", "10", 1.0};
constexpr Pair kPhiMinus{"01", "10", -1.0};

void add_pair(std::vector<Amp>& v, const std::string& head, const Pair& p, double coef) {
    v[index_of(head + p.first)] += coef / kRt2;
    v[index_of(head + p.second)] += coef * p.sign / kRt2;
}

std::vector<Amp> ket_sum(std::size_t n, std::string_view spec, double scale) {
    std::vector<Amp> v(std::size_t{1} << n);
    std::istringstream in{std::string(spec)};
    std::string tok;
    while (in >> tok) v[index_of(tok.substr(1))] += (tok[0] == '-' ? -scale : scale);
    return v;
}

}  // namespace

std::string_view to_string(ProtocolId id) noexcept {
    switch (id) {
    case ProtocolId::Ghz:
        return "ghz";
    case ProtocolId::Cluster2:
        return "cluster2";
    case ProtocolId::Cluster3:
        return "cluster3";
    case ProtocolId::Brown:
        return "brown";
    case ProtocolId::Borras:
        return "borras";
    case ProtocolId::Entswap:
        return "entswap";
    }
    return "?";
}

ProtocolId protocol_from_string(std::string_view text) {
    for (ProtocolId id : kAllProtocols)
        if (to_string(id) == text) return id;
    throw Error(fmt::format("unknown protocol '{}'", text));
}

const ProtocolSpec& protocol_spec(ProtocolId id) { return table()[static_cast<std::size_t>(id)]; }

Circuit build_simplified(const ProtocolSpec& p) { return Circuit(p.qubit_count, p.simplified); }

Circuit expand_to_original(const ProtocolSpec& p) {
    Circuit c = build_simplified(p);
    for (const RewriteStep& step : p.expansion) c = apply_step(c, step);
    return c;
}

StateVector channel_state(const ProtocolSpec& p) {
    const std::size_t n = p.qubit_count - 1;
    std::vector<Amp> v;
    switch (p.id) {
    case ProtocolId::Ghz:
        v = ket_sum(n, "+000 +111", 1 / kRt2);
        break;
    case ProtocolId::Cluster2:
        v = ket_sum(n, "+00 +01 +10 -11", 0.5);
        break;
    case ProtocolId::Cluster3:
        v = ket_sum(n, "+000 +001 +010 -011 +100 +101 -110 +111", 1 / (2 * kRt2));
        break;
    case ProtocolId::Brown:
        v.assign(std::size_t{1} << n, 0.0);
        add_pair(v, "001", kPhiMinus, 0.5);
        add_pair(v, "010", kPsiMinus, 0.5);
        add_pair(v, "100", kPhiPlus, 0.5);
        add_pair(v, "111", kPsiPlus, 0.5);
        break;
    case ProtocolId::Borras: {
        struct Row {
            const char* head;
            double sign;
            Pair zero;
            double one_sign;
            Pair one;
        };
        // Transcribed as printed, including the repeated pair in the last row.
        const Row rows[] = {
            {"000", 1, kPsiPlus, 1, kPhiPlus},    {"001", 1, kPhiMinus, -1, kPsiMinus},
            {"010", 1, kPhiPlus, -1, kPsiPlus},   {"011", 1, kPsiMinus, 1, kPhiMinus},
            {"100", -1, kPhiMinus, 1, kPsiMinus}, {"101", -1, kPsiPlus, -1, kPhiPlus},
            {"110", 1, kPsiMinus, -1, kPhiMinus}, {"111", 1, kPsiPlus, 1, kPsiPlus},
        };
        v.assign(std::size_t{1} << n, 0.0);
        for (const Row& r : rows) {
            add_pair(v, std::string(r.head) + "0", r.zero, 0.25 * r.sign);
            add_pair(v, std::string(r.head) + "1", r.one, 0.25 * r.sign * r.one_sign);
        }
        break;
    }
    case ProtocolId::Entswap:
        v = ket_sum(n, "+0000 +0011 +1100 +1111", 0.5);
        break;
    }
    return StateVector::from_amplitudes(std::move(v), 1e-12);
}

TeleportResult verify_teleportation(const Circuit& c, Qubit target, const MessageParams& m) {
    if (!c.prep_index()) throw Error("verify_teleportation: circuit has no PREP gate");
    if (target >= c.qubit_count()) throw Error("verify_teleportation: target out of range");
    const std::array<Qubit, 1> keep{target};
    auto fid = [&](const MessageParams& msg) {
        const std::array<Amp, 2> psi{msg.alpha(), msg.beta()};
        return fidelity(reduced_density(run(c, msg), keep), DensityMatrix::pure(psi));
    };
    TeleportResult r;
    r.fidelity = fid(m);
    const double f0 = fid({0.0, 0.0});
    const double f1 = fid({std::numbers::pi, 0.0});
    r.deterministic = r.fidelity >= 1 - kTeleportTolerance && f0 >= 1 - kTeleportTolerance &&
                      f1 >= 1 - kTeleportTolerance;
    return r;
}

std::vector<Amp> expected_state(const Checkpoint& cp, std::size_t qubit_count, const MessageParams& m) {
    Amp a = m.alpha();
    Amp b = m.beta();
    if (cp.absorbed_h) {
        const Amp ha = (a + b) / kRt2;
        const Amp hb = (a - b) / kRt2;
        a = ha;
        b = hb;
    }
    std::vector<Amp> v(std::size_t{1} << qubit_count);
    for (const StateTerm& t : cp.terms) {
        if (t.bits.size() != qubit_count)
            throw Error(fmt::format("checkpoint {}: term '{}' has the wrong width", cp.id, t.bits));
        v[index_of(t.bits)] += static_cast<double>(t.sign) * cp.scale * (t.beta ? b : a);
    }
    return v;
}

std::vector<CheckpointResult> checkpoint_states(const ProtocolSpec& p, const MessageParams& m) {
    const Circuit full = build_simplified(p);
    std::vector<CheckpointResult> out;
    for (const Checkpoint& cp : p.checkpoints) {
        const StateVector sim = run(full.prefix(cp.prefix), m);
        const std::vector<Amp> want = expected_state(cp, p.qubit_count, m);
        double dev = 0.0;
        for (std::size_t i = 0; i < sim.dim(); ++i) dev = std::max(dev, std::abs(sim[i] - want[i]));
        out.push_back({cp.id, cp.prefix, dev});
    }
    return out;
}

ConformanceRow conformance(const ProtocolSpec& p) {
    return {p.id, metrics(build_simplified(p)), p.paper_simplified, metrics(expand_to_original(p)),
            p.paper_original};
}

}  // namespace qtele
