#include "qtele/circuit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

namespace qtele {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(fmt::format("line {}: {}", line, what)), line_(line) {}

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kMnemonics{{
    {GateKind::H, "h"},
    {GateKind::X, "x"},
    {GateKind::Z, "z"},
    {GateKind::S, "s"},
    {GateKind::SDG, "sdg"},
    {GateKind::RY, "ry"},
    {GateKind::CNOT, "cnot"},
    {GateKind::CZ, "cz"},
    {GateKind::SWAP, "swap"},
    {GateKind::PREP, "prep"},
}};

}  // namespace

std::string_view mnemonic(GateKind kind) noexcept {
    for (const auto& [k, name] : kMnemonics)
        if (k == kind) return name;
    return "?";
}

std::optional<GateKind> kind_from_mnemonic(std::string_view text) noexcept {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (const auto& [k, name] : kMnemonics)
        if (name == lower) return k;
    return std::nullopt;
}

Gate Gate::one(GateKind kind, Qubit q, double angle) {
    if (arity(kind) != 1)
        throw Error(fmt::format("gate '{}' takes two operands", mnemonic(kind)));
    return Gate(kind, {q, 0}, has_angle(kind) ? angle : 0.0);
}

Gate Gate::two(GateKind kind, Qubit a, Qubit b) {
    if (arity(kind) != 2)
        throw Error(fmt::format("gate '{}' takes one operand", mnemonic(kind)));
    if (a == b) throw Error("duplicate operand");
    return Gate(kind, {a, b}, 0.0);
}

bool Gate::touches(Qubit q) const noexcept {
    const auto ops = qubits();
    return std::find(ops.begin(), ops.end(), q) != ops.end();
}

Gate Gate::with_angle(double angle) const {
    Gate g = *this;
    if (has_angle(kind_)) g.angle_ = angle;
    return g;
}

bool operator==(const Gate& a, const Gate& b) noexcept {
    if (a.kind_ != b.kind_) return false;
    if (!std::equal(a.qubits().begin(), a.qubits().end(), b.qubits().begin())) return false;
    return !has_angle(a.kind_) || a.angle_ == b.angle_;
}

std::string to_string(const Gate& g) {
    const auto q = g.qubits();
    switch (g.kind()) {
    case GateKind::RY:
        return fmt::format("ry {:.17g} {}", g.angle(), q[0]);
    case GateKind::PREP:
        return fmt::format("prep {} {:.17g}", q[0], g.angle());
    default:
        break;
    }
    if (q.size() == 2) return fmt::format("{} {} {}", mnemonic(g.kind()), q[0], q[1]);
    return fmt::format("{} {}", mnemonic(g.kind()), q[0]);
}

std::string to_string(const Metrics& m) {
    return fmt::format("{}/{}/{}", m.gate_count, m.cost, m.depth);
}

Circuit::Circuit(std::size_t qubit_count) : Circuit(qubit_count, {}) {}

Circuit::Circuit(std::size_t qubit_count, std::vector<Gate> gates)
    : qubit_count_(qubit_count), gates_(std::move(gates)) {
    validate();
}

void Circuit::validate() const {
    if (qubit_count_ == 0) throw Error("circuit needs at least one qubit");
    if (qubit_count_ > kMaxQubits)
        throw Error(fmt::format("qubit count {} exceeds limit {}", qubit_count_, kMaxQubits));
    std::optional<Qubit> prep_qubit;
    std::vector<bool> touched(qubit_count_, false);
    for (const Gate& g : gates_) {
        for (Qubit q : g.qubits())
            if (q >= qubit_count_)
                throw Error(fmt::format("qubit index {} out of range for {} qubits", q,
                                        qubit_count_));
        if (g.kind() == GateKind::PREP) {
            if (prep_qubit) throw Error("duplicate PREP");
            if (touched[g.qubit(0)]) throw Error("PREP must be the first gate on its qubit");
            prep_qubit = g.qubit(0);
        }
        for (Qubit q : g.qubits()) touched[q] = true;
    }
}

std::optional<std::size_t> Circuit::prep_index() const noexcept {
    for (std::size_t i = 0; i < gates_.size(); ++i)
        if (gates_[i].kind() == GateKind::PREP) return i;
    return std::nullopt;
}

Circuit Circuit::appended(const Gate& g) const {
    auto gates = gates_;
    gates.push_back(g);
    return Circuit(qubit_count_, std::move(gates));
}

Circuit Circuit::prefix(std::size_t n) const {
    n = std::min(n, gates_.size());
    return Circuit(qubit_count_, std::vector<Gate>(gates_.begin(), gates_.begin() + n));
}

Metrics metrics(const Circuit& c) {
    Metrics m;
    std::vector<std::size_t> last_layer(c.qubit_count(), 0);
    for (const Gate& g : c) {
        std::size_t layer = 0;
        for (Qubit q : g.qubits()) layer = std::max(layer, last_layer[q]);
        ++layer;
        for (Qubit q : g.qubits()) last_layer[q] = layer;
        m.depth = std::max(m.depth, layer);
        m.cost += cost_weight(g.kind());
    }
    m.gate_count = c.size();
    return m;
}

Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.qubit_count() != b.qubit_count())
        throw Error(fmt::format("cannot compose circuits on {} and {} qubits", a.qubit_count(),
                                b.qubit_count()));
    std::vector<Gate> gates = a.gates();
    gates.insert(gates.end(), b.begin(), b.end());
    return Circuit(a.qubit_count(), std::move(gates));
}

Circuit relabel(const Circuit& c, std::span<const Qubit> perm) {
    if (perm.size() != c.qubit_count()) throw Error("permutation size mismatch");
    std::vector<Gate> gates;
    gates.reserve(c.size());
    for (const Gate& g : c) gates.push_back(g.mapped([&](Qubit q) { return perm[q]; }));
    return Circuit(c.qubit_count(), std::move(gates));
}

Circuit prep_as_ry(const Circuit& c) {
    std::vector<Gate> gates;
    gates.reserve(c.size());
    for (const Gate& g : c)
        gates.push_back(g.kind() == GateKind::PREP ? Gate::ry(g.qubit(0), g.angle()) : g);
    return Circuit(c.qubit_count(), std::move(gates));
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

std::size_t parse_index(std::string_view word, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size())
        throw ParseError(line, fmt::format("expected a non-negative integer, got '{}'", word));
    return value;
}

double parse_angle(std::string_view word, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size())
        throw ParseError(line, fmt::format("expected an angle, got '{}'", word));
    return value;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::optional<std::size_t> qubit_count;
    std::vector<Gate> gates;
    bool seen_prep = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = split_words(line);
        if (words.empty()) {
            if (eol == text.size()) break;
            continue;
        }

        if (!qubit_count) {
            if (words[0] != "qubits" || words.size() != 2)
                throw ParseError(line_no, "expected 'qubits <n>' header");
            const std::size_t n = parse_index(words[1], line_no);
            if (n == 0 || n > kMaxQubits)
                throw ParseError(line_no, fmt::format("qubit count must be in 1..{}", kMaxQubits));
            qubit_count = n;
            continue;
        }

        const auto kind = kind_from_mnemonic(words[0]);
        if (!kind) throw ParseError(line_no, fmt::format("unknown mnemonic '{}'", words[0]));
        const std::size_t expected = 1 + arity(*kind) + (has_angle(*kind) ? 1 : 0);
        if (words.size() != expected)
            throw ParseError(line_no, fmt::format("'{}' expects {} operand(s)", mnemonic(*kind),
                                                  expected - 1));

        auto qubit = [&](std::string_view w) {
            const std::size_t q = parse_index(w, line_no);
            if (q >= *qubit_count)
                throw ParseError(line_no, fmt::format("qubit index {} out of range", q));
            return static_cast<Qubit>(q);
        };

        switch (*kind) {
        case GateKind::RY:
            gates.push_back(Gate::ry(qubit(words[2]), parse_angle(words[1], line_no)));
            break;
        case GateKind::PREP: {
            if (seen_prep) throw ParseError(line_no, "duplicate PREP");
            const Qubit q = qubit(words[1]);
            for (const Gate& g : gates)
                if (g.touches(q))
                    throw ParseError(line_no, "PREP must be the first gate on its qubit");
            gates.push_back(Gate::prep(q, parse_angle(words[2], line_no)));
            seen_prep = true;
            break;
        }
        default:
            if (arity(*kind) == 2) {
                const Qubit a = qubit(words[1]);
                const Qubit b = qubit(words[2]);
                if (a == b) throw ParseError(line_no, "duplicate operand");
                gates.push_back(Gate::two(*kind, a, b));
            } else {
                gates.push_back(Gate::one(*kind, qubit(words[1])));
            }
        }
        if (eol == text.size()) break;
    }

    if (!qubit_count) throw ParseError(line_no, "missing 'qubits <n>' header");
    return Circuit(*qubit_count, std::move(gates));
}

Circuit parse_circuit(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_circuit(std::string_view(text));
}

std::string serialize_circuit(const Circuit& c) {
    std::string out = fmt::format("qubits {}\n", c.qubit_count());
    for (const Gate& g : c) {
        out += to_string(g);
        out += '\n';
    }
    return out;
}

}  // namespace qtele
