#include "diga/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace diga {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json solution_rows(const std::vector<SolutionReport>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["arch"] = r.arch.dims;
        row["cost"] = r.cost;
        row["train_accuracy_pct"] = 100.0 * r.train_accuracy;
        if (r.test_accuracy)
            row["test_accuracy_pct"] = 100.0 * *r.test_accuracy;
        else
            row["test_accuracy_pct"] = nullptr;
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

nlohmann::json final_report(const RunRecord& record) {
    if (!record.finalized) throw ConfigError("cannot report an unfinished run");
    nlohmann::json j;
    j["kind"] = record.kind == RunRecord::Kind::Evolution ? "evolution" : "gradient_descent";
    j["total_iterations"] = record.total_iterations;
    j["stopped_early"] = record.stopped_early;
    j["final_best_cost"] = record.curve.empty() ? 0.0 : record.curve.back().best_cost;
    j["leader"] = solution_rows(record.leader);
    j["follower"] = solution_rows(record.follower);
    return j;
}

void write_curve_csv(const std::string& path, const RunRecord& record) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out << "iteration,best_cost,leader_best,follower_best,mutation_rate,swapped\n";
    auto cell = [](double v) { return std::isnan(v) ? std::string() : fmt17(v); };
    for (const auto& row : record.curve)
        out << row.iteration << ',' << fmt17(row.best_cost) << ',' << fmt17(row.leader_best)
            << ',' << cell(row.follower_best) << ',' << cell(row.mutation_rate) << ','
            << (row.swapped ? 1 : 0) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

void write_report_json(const std::string& path, const RunRecord& record) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out << final_report(record).dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

} // namespace diga
