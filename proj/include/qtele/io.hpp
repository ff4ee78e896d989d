#pragma once

// JSON and CSV renditions of the library's results.

#include "qtele/circuit.hpp"
#include "qtele/protocols.hpp"
#include "qtele/rewrite.hpp"
#include "qtele/simulator.hpp"
#include "qtele/tomography.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace qtele {

using Json = nlohmann::ordered_json;

Json to_json(const Metrics& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const Counts& counts);
Json to_json(const ConformanceRow& row);
Json to_json(const TomographyResult& r);
Json to_json(const CrossCheckRow& row);

/// [{"rule", "direction", "roles": {"a": q, ...}, "position"}, ...]
Json trace_to_json(std::span<const RewriteStep> trace);
std::vector<RewriteStep> trace_from_json(const Json& j);

/// Header plus one line per row.
std::string tomography_csv(std::span<const TomographyResult> rows);
std::string cross_check_csv(std::span<const CrossCheckRow> rows);

}  // namespace qtele
