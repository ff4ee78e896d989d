#include "qtele/rewrite.hpp"

#include "qtele/simulator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

namespace qtele {

namespace {

constexpr std::uint8_t A = 0;
constexpr std::uint8_t B = 1;
constexpr std::uint8_t C = 2;

PatternGate cx(std::uint8_t control, std::uint8_t target) { return {GateKind::CNOT, {control, target}}; }
PatternGate hh(std::uint8_t r) { return {GateKind::H, {r, 0}}; }
PatternGate xx(std::uint8_t r) { return {GateKind::X, {r, 0}}; }
PatternGate cz(std::uint8_t r0, std::uint8_t r1) { return {GateKind::CZ, {r0, r1}}; }
PatternGate sw(std::uint8_t r0, std::uint8_t r1) { return {GateKind::SWAP, {r0, r1}}; }

std::vector<RewriteRule> make_catalog() {
    std::vector<RewriteRule> rules;
    rules.push_back({"R-T", 3, {cx(B, C), cx(A, B), cx(B, C)}, {cx(A, B), cx(A, C)}, true,
                     {{"ghz", {0, 2, 1}},
                      {"cluster2", {0, 1, 2}},
                      {"brown", {0, 1, 3}},
                      {"brown", {0, 2, 3}},
                      {"borras", {0, 1, 6}}}});
    rules.push_back({"R-C", 3, {cx(A, B), cx(B, C), cx(A, B)}, {cx(B, C), cx(A, C)}, true,
                     {{"ghz", {2, 1, 0}}, {"entswap", {0, 1, 2}}, {"entswap", {1, 4, 0}}}});
    rules.push_back({"R-CZ", 2, {cz(A, B)}, {hh(B), cx(A, B), hh(B)}, true, {{"cluster2", {0, 1}}}});
    rules.push_back({"R-REV", 2, {hh(A), hh(B), cx(A, B), hh(A), hh(B)}, {cx(B, A)}, true,
                     {{"cluster2", {0, 1}}}});
    rules.push_back({"R-HSYM", 2, {hh(B), cx(B, A), hh(B)}, {hh(A), cx(A, B), hh(A)}, true,
                     {{"ghz", {0, 1}}}});
    rules.push_back({"R-SWAP", 2, {cx(A, B), cx(B, A), cx(A, B)}, {sw(A, B)}, true, {{"cluster3", {0, 1}}}});
    rules.push_back({"R-SWAP-REV", 2, {cx(B, A), cx(A, B), cx(B, A)}, {sw(A, B)}, true,
                     {{"cluster3", {0, 1}}}});
    rules.push_back({"R-X", 2, {cx(A, B), xx(A)}, {xx(A), xx(B), cx(A, B)}, true, {{"brown", {0, 1}}}});
    // Representative of disjoint commutation; the matcher already skips
    // disjoint gates, so only this shape needs to exist as a rule.
    rules.push_back({"COMM-DISJ", 3, {cx(A, B), hh(C)}, {hh(C), cx(A, B)}, true, {}});
    rules.push_back({"COMM-CTRL", 3, {cx(A, B), cx(A, C)}, {cx(A, C), cx(A, B)}, true, {{"borras", {0, 1, 6}}}});
    rules.push_back({"COMM-TGT", 3, {cx(A, C), cx(B, C)}, {cx(B, C), cx(A, C)}, true, {}});
    return rules;
}

bool is_symmetric(GateKind k) { return k == GateKind::CZ || k == GateKind::SWAP; }

struct Binding {
    std::array<Qubit, 3> qubit{};
    std::array<bool, 3> bound{};

    bool uses(Qubit q) const {
        for (std::size_t r = 0; r < 3; ++r)
            if (bound[r] && qubit[r] == q) return true;
        return false;
    }
    bool touches(const Gate& g) const {
        for (Qubit q : g.qubits())
            if (uses(q)) return true;
        return false;
    }
};

// Binds the operands of `g` (in the given order) to the roles of `p`.
std::optional<Binding> bind_roles(const PatternGate& p, std::span<const Qubit> operands, Binding b) {
    for (std::size_t i = 0; i < operands.size(); ++i) {
        const auto r = p.roles[i];
        if (b.bound[r]) {
            if (b.qubit[r] != operands[i]) return std::nullopt;
        } else {
            if (b.uses(operands[i])) return std::nullopt;
            b.qubit[r] = operands[i];
            b.bound[r] = true;
        }
    }
    return b;
}

std::vector<Binding> match_element(const PatternGate& p, const Gate& g, const Binding& b) {
    std::vector<Binding> out;
    if (p.kind != g.kind()) return out;
    const auto ops = g.qubits();
    if (auto r = bind_roles(p, ops, b)) out.push_back(*r);
    if (is_symmetric(g.kind())) {
        const std::array<Qubit, 2> flipped{ops[1], ops[0]};
        if (auto r = bind_roles(p, flipped, b)) out.push_back(*r);
    }
    return out;
}

bool interleave_ok(const Circuit& c, const std::vector<std::size_t>& pos, const Binding& b) {
    std::size_t k = 0;
    for (std::size_t j = pos.front(); j <= pos.back(); ++j) {
        if (k < pos.size() && pos[k] == j) {
            ++k;
            continue;
        }
        if (b.touches(c[j])) return false;
    }
    return true;
}

struct Matcher {
    const Circuit& c;
    std::span<const PatternGate> pat;
    std::size_t role_count;
    std::vector<std::pair<Binding, std::vector<std::size_t>>> found;

    void rec(std::size_t e, std::size_t prev, const Binding& b, std::vector<std::size_t>& pos) {
        if (e == pat.size()) {
            for (std::size_t r = 0; r < role_count; ++r)
                if (!b.bound[r]) return;
            if (interleave_ok(c, pos, b)) found.emplace_back(b, pos);
            return;
        }
        for (std::size_t j = prev + 1; j < c.size(); ++j) {
            const bool touching = b.touches(c[j]);
            for (const Binding& nb : match_element(pat[e], c[j], b)) {
                pos.push_back(j);
                rec(e + 1, j, nb, pos);
                pos.pop_back();
            }
            // A gate on a bound role that is not the next element blocks the match.
            if (touching) break;
        }
    }
};

bool site_matches(const Circuit& c, std::span<const PatternGate> pat, std::size_t role_count,
                  const MatchSite& site) {
    if (site.roles.size() != role_count || site.positions.size() != pat.size()) return false;
    if (!std::is_sorted(site.positions.begin(), site.positions.end())) return false;
    if (std::adjacent_find(site.positions.begin(), site.positions.end()) != site.positions.end())
        return false;
    if (site.positions.back() >= c.size()) return false;
    Binding b;
    for (std::size_t r = 0; r < role_count; ++r) {
        b.qubit[r] = site.roles[r];
        b.bound[r] = true;
    }
    for (std::size_t e = 0; e < pat.size(); ++e) {
        const auto opts = match_element(pat[e], c[site.positions[e]], b);
        if (opts.empty()) return false;
    }
    return interleave_ok(c, site.positions, b);
}

using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

Key key_of(const Circuit& c) {
    const Metrics m = metrics(c);
    return {m.cost, m.gate_count, m.depth};
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
    return d == Direction::Forward ? "forward" : "reverse";
}

Direction direction_from_string(std::string_view text) {
    if (text == "forward") return Direction::Forward;
    if (text == "reverse") return Direction::Reverse;
    throw Error(fmt::format("unknown rewrite direction '{}'", text));
}

const std::vector<RewriteRule>& builtin_rules() {
    static const std::vector<RewriteRule> catalog = make_catalog();
    return catalog;
}

const RewriteRule& rule_by_id(std::string_view id) {
    for (const auto& r : builtin_rules())
        if (r.id == id) return r;
    throw Error(fmt::format("unknown rewrite rule '{}'", id));
}

std::vector<Gate> instantiate(std::span<const PatternGate> side, std::span<const Qubit> roles) {
    std::vector<Gate> gates;
    gates.reserve(side.size());
    for (const PatternGate& p : side) {
        if (arity(p.kind) == 2)
            gates.push_back(Gate::two(p.kind, roles[p.roles[0]], roles[p.roles[1]]));
        else
            gates.push_back(Gate::one(p.kind, roles[p.roles[0]]));
    }
    return gates;
}

RuleCheck validate_rule(const RewriteRule& r) {
    if (r.role_count == 0 || r.role_count > 3) throw Error("validate_rule: role_count must be 1..3");
    std::vector<Qubit> roles(r.role_count);
    std::iota(roles.begin(), roles.end(), Qubit{0});
    const Circuit lhs(r.role_count, instantiate(r.lhs, roles));
    const Circuit rhs(r.role_count, instantiate(r.rhs, roles));
    const double dev = (circuit_unitary(lhs) - circuit_unitary(rhs)).cwiseAbs().maxCoeff();
    return {dev < kRuleTolerance, dev};
}

std::vector<MatchSite> find_matches(const Circuit& c, const RewriteRule& r, Direction dir) {
    const auto pat = r.pattern(dir == Direction::Reverse);
    std::vector<MatchSite> sites;
    if (pat.empty()) return sites;
    Matcher m{c, pat, r.role_count, {}};
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (const Binding& b : match_element(pat[0], c[i], Binding{})) {
            pos.assign(1, i);
            m.rec(1, i, b, pos);
        }
    }
    sites.reserve(m.found.size());
    for (auto& [b, positions] : m.found) {
        MatchSite s{r.id, dir, {}, std::move(positions)};
        s.roles.assign(b.qubit.begin(), b.qubit.begin() + static_cast<std::ptrdiff_t>(r.role_count));
        sites.push_back(std::move(s));
    }
    return sites;
}

Circuit apply_at(const Circuit& c, const RewriteRule& r, const MatchSite& site) {
    const bool reverse = site.direction == Direction::Reverse;
    if (site.rule_id != r.id) throw Error(fmt::format("site is for rule '{}', not '{}'", site.rule_id, r.id));
    if (!site_matches(c, r.pattern(reverse), r.role_count, site))
        throw Error(fmt::format("stale match site for rule '{}'", r.id));
    const std::vector<Gate> repl = instantiate(r.replacement(reverse), site.roles);
    std::vector<Gate> out;
    out.reserve(c.size() + repl.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == site.positions.front()) out.insert(out.end(), repl.begin(), repl.end());
        if (k < site.positions.size() && site.positions[k] == j) {
            ++k;
            continue;
        }
        out.push_back(c[j]);
    }
    return Circuit(c.qubit_count(), std::move(out));
}

Circuit apply_at(const Circuit& c, const MatchSite& site) { return apply_at(c, rule_by_id(site.rule_id), site); }

Circuit apply_step(const Circuit& c, const RewriteStep& step) {
    const RewriteRule& r = rule_by_id(step.rule_id);
    for (const MatchSite& s : find_matches(c, r, step.direction))
        if (s.position() == step.position && s.roles == step.roles) return apply_at(c, r, s);
    throw Error(fmt::format("no {} site of rule '{}' at position {}", to_string(step.direction), step.rule_id,
                            step.position));
}

OptimizeResult optimize(const Circuit& c, std::span<const RewriteRule> catalog, std::size_t max_passes) {
    if (max_passes == 0) throw Error("optimize: max_passes must be at least 1");
    OptimizeResult res{c, {}};
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        const Key current = key_of(res.circuit);
        bool improved = false;
        for (const RewriteRule& r : catalog) {
            for (Direction dir : {Direction::Forward, Direction::Reverse}) {
                if (dir == Direction::Reverse && !r.bidirectional) continue;
                for (const MatchSite& s : find_matches(res.circuit, r, dir)) {
                    Circuit next = apply_at(res.circuit, r, s);
                    if (key_of(next) < current) {
                        res.trace.push_back({r.id, dir, s.roles, s.position()});
                        res.circuit = std::move(next);
                        improved = true;
                        break;
                    }
                }
                if (improved) break;
            }
            if (improved) break;
        }
        if (!improved) break;
    }
    return res;
}

OptimizeResult optimize(const Circuit& c, std::size_t max_passes) {
    return optimize(c, builtin_rules(), max_passes);
}

}  // namespace qtele
