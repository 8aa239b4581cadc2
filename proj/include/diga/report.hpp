#pragma once

#include <string>

#include <json.hpp>

#include "diga/engine.hpp"

namespace diga {

/// Final leader/follower tables as JSON: one row per solution with its
/// architecture, cost and train/test accuracy percentages. Wall time is
/// deliberately left out so identical runs serialize identically.
nlohmann::json final_report(const RunRecord& record);

/// curve.csv: iteration,best_cost,leader_best,follower_best,mutation_rate,
/// swapped. Doubles use 17 significant digits; NaN renders as an empty cell.
void write_curve_csv(const std::string& path, const RunRecord& record);

void write_report_json(const std::string& path, const RunRecord& record);

} // namespace diga
