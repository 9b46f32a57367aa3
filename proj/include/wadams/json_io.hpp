#pragma once
// JSON (de)serialization for configs and reports, CSV writers for tabular
// outputs, and atomic file writes. Field names are part of the CLI contract;
// serialization is deterministic so reruns produce byte-identical reports.

#include <string>

#include <json.hpp>

#include "wadams/extremals.hpp"
#include "wadams/nonlinearity.hpp"
#include "wadams/radial_lemma.hpp"
#include "wadams/solver.hpp"
#include "wadams/weights.hpp"

namespace wadams {

using json = nlohmann::ordered_json;

json to_json(const ChiSpec& chi);
ChiSpec chi_from_json(const json& j);

json to_json(const WeightProfile& profile);
WeightProfile profile_from_json(const json& j);

json to_json(const QuadratureSpec& quad);
QuadratureSpec quad_from_json(const json& j);

json to_json(const GrowthParams& growth);
GrowthParams growth_from_json(const json& j);

json to_json(const SolveConfig& config);
// fills defaults for absent fields; throws std::invalid_argument on schema
// violations (wrong types, unknown chi kind, ...)
SolveConfig solve_config_from_json(const json& j);

json to_json(const ConditionEntry& entry);
json to_json(const ConditionReport& report);
json to_json(const MarginReport& report);
json to_json(const SweepReport& report);
json to_json(const SolveReport& report);
json to_json(const VerifyRecord& record);

std::string verdict_name(Verdict v);

// CSV with a header row each
std::string margin_csv(const MarginReport& report);
std::string sweep_csv(const SweepReport& report);
// r, u, lap_u sampled at the given radii
std::string solution_csv(const RadialFunction& u,
                         const std::vector<double>& radii);

// write via a temp file + rename so readers never observe partial output
void write_atomic(const std::string& path, const std::string& content);

}  // namespace wadams
