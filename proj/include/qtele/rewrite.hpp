#pragma once

// Pattern rewrite rules over qubit role variables, the matcher and the greedy
// optimizer.

#include "qtele/circuit.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtele {

/// One pattern element. `roles` index the rule's role variables (0 = a, 1 = b,
/// 2 = c); only the first arity(kind) entries are used.
struct PatternGate {
    GateKind kind;
    std::array<std::uint8_t, 2> roles{};

    friend bool operator==(const PatternGate&, const PatternGate&) = default;
};

/// Where a rule family shows up in one of the protocol reductions. Roles are
/// 0-based register indices of that protocol.
struct RuleInstance {
    std::string protocol;
    std::vector<Qubit> roles;
};

/// Equality lhs = rhs between two time-ordered gate sequences.
struct RewriteRule {
    std::string id;
    std::size_t role_count = 0;
    std::vector<PatternGate> lhs;
    std::vector<PatternGate> rhs;
    bool bidirectional = true;
    std::vector<RuleInstance> instances;

    /// Pattern searched for in the given direction, and its replacement.
    std::span<const PatternGate> pattern(bool reverse) const noexcept { return reverse ? rhs : lhs; }
    std::span<const PatternGate> replacement(bool reverse) const noexcept { return reverse ? lhs : rhs; }
};

enum class Direction : std::uint8_t { Forward, Reverse };

std::string_view to_string(Direction d) noexcept;
Direction direction_from_string(std::string_view text);

inline char role_name(std::size_t role) { return static_cast<char>('a' + role); }

struct MatchSite {
    std::string rule_id;
    Direction direction = Direction::Forward;
    /// roles[i] is the qubit bound to role i.
    std::vector<Qubit> roles;
    /// Circuit positions of the matched gates, in pattern order (ascending).
    std::vector<std::size_t> positions;

    std::size_t position() const { return positions.front(); }
};

/// One applied rewrite, addressed by rule, roles and first matched position.
struct RewriteStep {
    std::string rule_id;
    Direction direction = Direction::Forward;
    std::vector<Qubit> roles;
    std::size_t position = 0;

    friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

/// The fixed rule catalog. The order is part of the optimizer's contract.
const std::vector<RewriteRule>& builtin_rules();

/// Catalog lookup; throws Error for an unknown id.
const RewriteRule& rule_by_id(std::string_view id);

/// Gates of one side with roles bound to `roles`.
std::vector<Gate> instantiate(std::span<const PatternGate> side, std::span<const Qubit> roles);

struct RuleCheck {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Compares both sides on a register of role_count qubits; entrywise, no
/// global-phase allowance.
inline constexpr double kRuleTolerance = 1e-12;
RuleCheck validate_rule(const RewriteRule& r);

/// All sites of `r` in the given direction, by ascending first position.
/// Gates between matched elements must avoid every role qubit.
std::vector<MatchSite> find_matches(const Circuit& c, const RewriteRule& r,
                                    Direction dir = Direction::Forward);

/// Replaces the matched gates with the instantiated replacement at the first
/// matched position. Throws Error if the site no longer matches `c`.
Circuit apply_at(const Circuit& c, const RewriteRule& r, const MatchSite& site);
/// Same, looking the rule up in the builtin catalog.
Circuit apply_at(const Circuit& c, const MatchSite& site);

/// Finds the site addressed by `step` and applies it. Throws Error if no such
/// site exists.
Circuit apply_step(const Circuit& c, const RewriteStep& step);

struct OptimizeResult {
    Circuit circuit;
    std::vector<RewriteStep> trace;
};

/// Greedy descent on (cost, gate_count, depth). Each pass applies the first
/// strictly improving rewrite (catalog order, forward before reverse, ascending
/// position); `max_passes` bounds the number of rewrites.
OptimizeResult optimize(const Circuit& c, std::span<const RewriteRule> catalog, std::size_t max_passes);
OptimizeResult optimize(const Circuit& c, std::size_t max_passes = 1000);

}  // namespace qtele
