#include "qtele/io.hpp"
#include "qtele/protocols.hpp"
#include "qtele/rewrite.hpp"
#include "qtele/simulator.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace qtele;

namespace {

const RewriteRule& rule(const char* id) { return rule_by_id(id); }

double unitary_gap(const Circuit& a, const Circuit& b) {
    return test::max_diff(circuit_unitary(prep_as_ry(a)), circuit_unitary(prep_as_ry(b)));
}

}  // namespace

TEST(Catalog, StableIdsAndOrder) {
    std::vector<std::string> ids;
    for (const auto& r : builtin_rules()) ids.push_back(r.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"R-T", "R-C", "R-CZ", "R-REV", "R-HSYM", "R-SWAP", "R-SWAP-REV", "R-X",
                                             "COMM-DISJ", "COMM-CTRL", "COMM-TGT"}));
    EXPECT_EQ(&builtin_rules(), &builtin_rules());
    EXPECT_THROW(rule_by_id("R-NOPE"), Error);
}

TEST(Catalog, SidesTouchTheSameRoles) {
    for (const auto& r : builtin_rules()) {
        auto roles = [](const std::vector<PatternGate>& side) {
            std::set<int> s;
            for (const auto& p : side)
                for (std::size_t i = 0; i < arity(p.kind); ++i) s.insert(p.roles[i]);
            return s;
        };
        EXPECT_EQ(roles(r.lhs), roles(r.rhs)) << r.id;
        EXPECT_EQ(roles(r.lhs).size(), r.role_count) << r.id;
        EXPECT_TRUE(r.bidirectional);
    }
}

TEST(ValidateRule, EveryCatalogRulePasses) {
    for (const auto& r : builtin_rules()) {
        const RuleCheck c = validate_rule(r);
        EXPECT_TRUE(c.pass) << r.id;
        EXPECT_LT(c.max_deviation, 1e-12) << r.id;
    }
}

TEST(ValidateRule, AnyInjectiveAssignmentOnALargerRegister) {
    for (const auto& r : builtin_rules()) {
        std::vector<Qubit> pool{0, 1, 2, 3};
        do {
            const std::span<const Qubit> roles(pool.data(), r.role_count);
            const Circuit lhs(4, instantiate(r.lhs, roles));
            const Circuit rhs(4, instantiate(r.rhs, roles));
            EXPECT_LT(test::max_diff(circuit_unitary(lhs), circuit_unitary(rhs)), 1e-12) << r.id;
        } while (std::next_permutation(pool.begin(), pool.end()));
    }
}

TEST(ValidateRule, SwapEqualsTripleCnot) {
    const std::array<Qubit, 2> ab{0, 1};
    const CMatrix swap = circuit_unitary(Circuit(2, {Gate::swap(0, 1)}));
    EXPECT_EQ(circuit_unitary(Circuit(2, instantiate(rule("R-SWAP").lhs, ab))), swap);
    EXPECT_TRUE(validate_rule(rule("R-X")).pass);
}

TEST(ValidateRule, CorruptedRuleFails) {
    RewriteRule bad = rule("R-C");
    bad.rhs = {{GateKind::CNOT, {0, 2}}};
    const RuleCheck c = validate_rule(bad);
    EXPECT_FALSE(c.pass);
    // |010>: left side gives |011>, the corrupted right side leaves it alone, so a column moves by 1.
    EXPECT_NEAR(c.max_deviation, 1.0, 1e-15);
}

TEST(Instances, CatalogInstancesReproduceProtocolIdentities) {
    // Control spread on 1-based qubits 3,2,1.
    const std::array<Qubit, 3> rc{2, 1, 0};
    EXPECT_EQ(instantiate(rule("R-C").lhs, rc),
              (std::vector<Gate>{Gate::cnot(2, 1), Gate::cnot(1, 0), Gate::cnot(2, 1)}));
    EXPECT_EQ(instantiate(rule("R-C").rhs, rc), (std::vector<Gate>{Gate::cnot(1, 0), Gate::cnot(2, 0)}));
    // Target spread with a=q0, b=q1, c=q6; its right side is written with the two CNOTs in the other order.
    const std::array<Qubit, 3> rt{0, 1, 6};
    EXPECT_EQ(instantiate(rule("R-T").lhs, rt),
              (std::vector<Gate>{Gate::cnot(1, 6), Gate::cnot(0, 1), Gate::cnot(1, 6)}));
    const Circuit rhs(7, instantiate(rule("R-T").rhs, rt));
    const auto comm = find_matches(rhs, rule("COMM-CTRL"));
    ASSERT_EQ(comm.size(), 1U);
    EXPECT_EQ(apply_at(rhs, comm[0]).gates(), (std::vector<Gate>{Gate::cnot(0, 6), Gate::cnot(0, 1)}));
    for (const auto& r : builtin_rules())
        for (const auto& inst : r.instances) {
            EXPECT_EQ(inst.roles.size(), r.role_count) << r.id;
            EXPECT_NO_THROW(protocol_from_string(inst.protocol));
        }
}

TEST(FindMatches, ControlSpreadSite) {
    const Circuit c(3, {Gate::cnot(2, 1), Gate::cnot(1, 0), Gate::cnot(2, 1)});
    const auto sites = find_matches(c, rule("R-C"));
    ASSERT_EQ(sites.size(), 1U);
    EXPECT_EQ(sites[0].roles, (std::vector<Qubit>{2, 1, 0}));
    EXPECT_EQ(sites[0].positions, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(apply_at(c, sites[0]), Circuit(3, {Gate::cnot(1, 0), Gate::cnot(2, 0)}));
}

TEST(FindMatches, NoSiteInUnrelatedCircuit) {
    EXPECT_TRUE(find_matches(Circuit(1, {Gate::h(0)}), rule("R-T")).empty());
}

TEST(FindMatches, DisjointInterleave) {
    const Circuit c(4, {Gate::cnot(1, 2), Gate::x(0), Gate::cnot(2, 3), Gate::cnot(1, 2)});
    const auto sites = find_matches(c, rule("R-C"));
    ASSERT_EQ(sites.size(), 1U);
    EXPECT_EQ(sites[0].positions, (std::vector<std::size_t>{0, 2, 3}));
    const Circuit out = apply_at(c, sites[0]);
    EXPECT_EQ(out, Circuit(4, {Gate::cnot(2, 3), Gate::cnot(1, 3), Gate::x(0)}));
    EXPECT_LT(unitary_gap(c, out), 1e-12);
}

TEST(FindMatches, BlockedByGateOnARole) {
    const Circuit c(3, {Gate::cnot(2, 1), Gate::h(1), Gate::cnot(1, 0), Gate::cnot(2, 1)});
    EXPECT_TRUE(find_matches(c, rule("R-C")).empty());
}

TEST(FindMatches, SymmetricGatesMatchBothOrders) {
    const Circuit c(2, {Gate::cz(1, 0)});
    EXPECT_EQ(find_matches(c, rule("R-CZ")).size(), 2U);
}

TEST(FindMatches, SitesAreAscendingAndSound) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = test::random_circuit(4, 25, rng, test::GateMix::Clifford);
        for (const auto& r : builtin_rules()) {
            for (Direction d : {Direction::Forward, Direction::Reverse}) {
                const auto sites = find_matches(c, r, d);
                for (std::size_t i = 1; i < sites.size(); ++i)
                    EXPECT_LE(sites[i - 1].position(), sites[i].position());
                for (const auto& s : sites) EXPECT_LT(unitary_gap(c, apply_at(c, s)), 1e-12) << r.id;
            }
        }
    }
}

TEST(ApplyAt, Involution) {
    const Circuit c(3, {Gate::cnot(2, 1), Gate::cnot(1, 0), Gate::cnot(2, 1)});
    const Circuit once = apply_at(c, find_matches(c, rule("R-C"))[0]);
    const auto back = find_matches(once, rule("R-C"), Direction::Reverse);
    ASSERT_FALSE(back.empty());
    EXPECT_EQ(apply_at(once, back[0]), c);
}

TEST(ApplyAt, StaleSiteRejected) {
    const Circuit c(3, {Gate::cnot(2, 1), Gate::cnot(1, 0), Gate::cnot(2, 1)});
    const MatchSite site = find_matches(c, rule("R-C"))[0];
    const Circuit changed = apply_at(c, site);
    EXPECT_THROW(apply_at(changed, site), Error);
    MatchSite wrong = site;
    wrong.roles = {0, 1, 2};
    EXPECT_THROW(apply_at(c, wrong), Error);
}

TEST(ApplyAt, CostDropsWhenReplacementIsCheaper) {
    const Circuit c(3, {Gate::cnot(2, 1), Gate::cnot(1, 0), Gate::cnot(2, 1)});
    EXPECT_LT(metrics(apply_at(c, find_matches(c, rule("R-C"))[0])).cost, metrics(c).cost);
}

TEST(ApplyAt, RandomSequencesPreserveTheUnitary) {
    std::mt19937_64 rng(32);
    Circuit c = test::random_circuit(5, 30, rng, test::GateMix::Clifford);
    const CMatrix u = circuit_unitary(c);
    std::size_t applied = 0;
    for (int step = 0; step < 60; ++step) {
        std::vector<MatchSite> all;
        for (const auto& r : builtin_rules())
            for (Direction d : {Direction::Forward, Direction::Reverse})
                for (auto& s : find_matches(c, r, d)) all.push_back(std::move(s));
        if (all.empty()) break;
        c = apply_at(c, all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
        ++applied;
    }
    EXPECT_GT(applied, 10U);
    EXPECT_LT(test::max_diff(circuit_unitary(c), u), 1e-10);
}

TEST(Optimize, FixpointHasEmptyTrace) {
    const Circuit c(2, {Gate::h(0), Gate::cnot(0, 1)});
    const OptimizeResult r = optimize(c);
    EXPECT_EQ(r.circuit, c);
    EXPECT_TRUE(r.trace.empty());
}

TEST(Optimize, ExpandedGhzRecoversCost) {
    const ProtocolSpec& p = protocol_spec(ProtocolId::Ghz);
    const OptimizeResult r = optimize(expand_to_original(p));
    EXPECT_LE(metrics(r.circuit).cost, 4U);
    EXPECT_FALSE(r.trace.empty());
}

TEST(Optimize, RandomCnotCircuitKeepsUnitary) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit c = test::random_circuit(6, 40, rng, test::GateMix::CnotOnly);
        const OptimizeResult r = optimize(c);
        EXPECT_LT(test::max_diff(circuit_unitary(r.circuit), circuit_unitary(c)), 1e-10);
        EXPECT_LE(metrics(r.circuit).cost, metrics(c).cost);
    }
}

TEST(Optimize, DeterministicAndReplayable) {
    std::mt19937_64 rng(34);
    const Circuit c = test::random_circuit(5, 40, rng, test::GateMix::Clifford);
    const OptimizeResult a = optimize(c);
    const OptimizeResult b = optimize(c);
    EXPECT_EQ(a.circuit, b.circuit);
    EXPECT_EQ(a.trace, b.trace);
    Circuit replay = c;
    for (const auto& step : a.trace) replay = apply_step(replay, step);
    EXPECT_EQ(replay, a.circuit);
    EXPECT_EQ(trace_from_json(trace_to_json(a.trace)), a.trace);
}

TEST(Optimize, MaxPassesBoundsRewrites) {
    const ProtocolSpec& p = protocol_spec(ProtocolId::Brown);
    const Circuit big = expand_to_original(p);
    const OptimizeResult one = optimize(big, 1);
    EXPECT_EQ(one.trace.size(), 1U);
    EXPECT_THROW(optimize(big, 0), Error);
}

TEST(Optimize, CostNeverIncreasesAlongTheTrace) {
    const Circuit big = expand_to_original(protocol_spec(ProtocolId::Borras));
    Circuit c = big;
    for (const auto& step : optimize(big).trace) {
        const Circuit next = apply_step(c, step);
        EXPECT_LE(metrics(next).cost, metrics(c).cost);
        c = next;
    }
}
