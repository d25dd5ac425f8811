#pragma once

#include <nlohmann/json.hpp>

#include "wellcascade/cascade.hpp"
#include "wellcascade/config.hpp"
#include "wellcascade/eigensolver.hpp"

namespace wellcascade {

inline constexpr int kSchemaVersion = 1;

/// Rounds to 9 significant digits, the precision used for energies on disk.
double round_sig9(double x);

nlohmann::json to_json(const WellPair& pair);
nlohmann::json to_json(const SolverConfig& cfg);
nlohmann::json to_json(const Level& level);

/// Time as {"s": ..., "ps": ...}.
nlohmann::json time_json(double seconds);

/// Level table written by `solve-pair`.
nlohmann::json levels_document(const std::string& pair_name, const WellPair& pair, double shift,
                               const SolverConfig& cfg, const SolveResult& result);

/// Full cascade report written as report.json.
nlohmann::json report_document(const CascadeReport& report);

}  // namespace wellcascade
