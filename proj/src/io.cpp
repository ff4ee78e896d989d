#include "qtele/io.hpp"

#include <fmt/format.h>

namespace qtele {

Json to_json(const Metrics& m) {
    return Json{{"gate_count", m.gate_count}, {"cost", m.cost}, {"depth", m.depth}};
}

Json to_json(const DensityMatrix& rho) {
    Json re = Json::array();
    Json im = Json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            re_row.push_back(rho(i, j).real());
            im_row.push_back(rho(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"dim", rho.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const Counts& counts) {
    Json j = Json::object();
    for (const auto& [bits, n] : counts) j[bits] = n;
    return j;
}

Json to_json(const ConformanceRow& row) {
    return Json{{"protocol", to_string(row.id)},
                {"simplified", to_json(row.simplified)},
                {"paper_simplified", to_json(row.paper_simplified)},
                {"original", to_json(row.original)},
                {"paper_original", to_json(row.paper_original)},
                {"match", row.match()},
                {"simplified_match", row.simplified_match()},
                {"original_match", row.original_match()}};
}

Json to_json(const TomographyResult& r) {
    Json counts = Json::object();
    for (const auto& [basis, c] : r.counts) counts[basis] = to_json(c);
    return Json{{"protocol", r.protocol},
                {"theta", r.theta},
                {"shots", r.shots},
                {"seed", r.seed},
                {"exp_x", r.exp_x},
                {"exp_y", r.exp_y},
                {"exp_z", r.exp_z},
                {"rho00_re", r.rho(0, 0).real()},
                {"rho01_re", r.rho(0, 1).real()},
                {"rho01_im", r.rho(0, 1).imag()},
                {"rho11_re", r.rho(1, 1).real()},
                {"fidelity", r.fidelity},
                {"counts", std::move(counts)}};
}

Json to_json(const CrossCheckRow& row) {
    const PublishedMatrix& m = row.source;
    Json j{{"protocol", to_string(m.protocol)},
           {"theta", m.theta()},
           {"rho00_re", m.rho00},
           {"rho01_re", m.rho01_re},
           {"rho01_im", m.rho01_im},
           {"rho11_re", m.rho11},
           {"trace", m.trace()},
           {"trace_flagged", row.trace_flagged}};
    j["fidelity"] = row.fidelity ? Json(*row.fidelity) : Json(nullptr);
    return j;
}

Json trace_to_json(std::span<const RewriteStep> trace) {
    Json out = Json::array();
    for (const RewriteStep& s : trace) {
        Json roles = Json::object();
        for (std::size_t r = 0; r < s.roles.size(); ++r) roles[std::string(1, role_name(r))] = s.roles[r];
        out.push_back(Json{{"rule", s.rule_id},
                           {"direction", to_string(s.direction)},
                           {"roles", std::move(roles)},
                           {"position", s.position}});
    }
    return out;
}

std::vector<RewriteStep> trace_from_json(const Json& j) {
    if (!j.is_array()) throw Error("rewrite trace must be a JSON array");
    std::vector<RewriteStep> steps;
    for (const Json& e : j) {
        RewriteStep s;
        s.rule_id = e.at("rule").get<std::string>();
        s.direction = e.contains("direction") ? direction_from_string(e["direction"].get<std::string>())
                                              : Direction::Forward;
        const Json& roles = e.at("roles");
        for (std::size_t r = 0; r < roles.size(); ++r)
            s.roles.push_back(roles.at(std::string(1, role_name(r))).get<Qubit>());
        s.position = e.at("position").get<std::size_t>();
        steps.push_back(std::move(s));
    }
    return steps;
}

std::string tomography_csv(std::span<const TomographyResult> rows) {
    std::string out = "protocol,theta,shots,seed,exp_x,exp_y,exp_z,rho00_re,rho01_re,rho01_im,rho11_re,fidelity\n";
    for (const TomographyResult& r : rows)
        out += fmt::format("{},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           r.protocol, r.theta, r.shots, r.seed, r.exp_x, r.exp_y, r.exp_z, r.rho(0, 0).real(),
                           r.rho(0, 1).real(), r.rho(0, 1).imag(), r.rho(1, 1).real(), r.fidelity);
    return out;
}

std::string cross_check_csv(std::span<const CrossCheckRow> rows) {
    std::string out = "protocol,theta,rho00_re,rho01_re,rho01_im,rho11_re,trace,trace_flagged,fidelity\n";
    for (const CrossCheckRow& row : rows) {
        const PublishedMatrix& m = row.source;
        out += fmt::format("{},{:.17g},{},{},{},{},{:.6g},{},{}\n", to_string(m.protocol), m.theta(), m.rho00,
                           m.rho01_re, m.rho01_im, m.rho11, m.trace(), row.trace_flagged,
                           row.fidelity ? fmt::format("{:.6f}", *row.fidelity) : std::string());
    }
    return out;
}

}  // namespace qtele
