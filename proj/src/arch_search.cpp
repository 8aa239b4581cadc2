#include "diga/arch_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace diga {

void validate_arch_search_config(const ArchSearchConfig& cfg) {
    if (cfg.cr < 0.0 || cfg.cr > 1.0)
        throw ConfigError("cr must be in [0,1], got " + std::to_string(cfg.cr));
    if (cfg.par < 0.0 || cfg.par > 1.0)
        throw ConfigError("par must be in [0,1], got " + std::to_string(cfg.par));
    if (cfg.pitch_span < 1)
        throw ConfigError("pitch_span must be >= 1, got " + std::to_string(cfg.pitch_span));
    validate_architecture(cfg.max_dims);
}

SelectionWeights fitness_weights(const std::vector<double>& costs) {
    if (costs.empty()) throw ConfigError("fitness_weights needs at least one cost");
    SelectionWeights w;
    w.probs.resize(costs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (!std::isfinite(costs[i]) || costs[i] < 0.0)
            throw ConfigError("cost " + std::to_string(i) + " is not a finite nonnegative value");
        w.probs[i] = 1.0 / (1.0 + costs[i]);
        total += w.probs[i];
    }
    for (double& p : w.probs) p /= total;
    return w;
}

bool dominates(const ArchSolution& a, const ArchSolution& b) {
    const auto& da = a.arch.dims;
    const auto& db = b.arch.dims;
    if (da.size() != db.size())
        throw DimensionError("cannot compare architectures with " + std::to_string(da.size()) +
                             " and " + std::to_string(db.size()) + " layers");
    bool strictly_better = false;
    for (std::size_t i = 1; i + 1 < da.size(); ++i) {
        if (da[i] > db[i]) return false;
        if (da[i] < db[i]) strictly_better = true;
    }
    if (a.cost > b.cost) return false;
    if (a.cost < b.cost) strictly_better = true;
    return strictly_better;
}

std::vector<int> pareto_dominance_rank(const std::vector<ArchSolution>& solutions) {
    if (solutions.empty()) throw ConfigError("pareto_dominance_rank needs at least one solution");
    const std::size_t n = solutions.size();
    std::vector<int> rank(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && dominates(solutions[j], solutions[i])) ++rank[i];
    return rank;
}

std::vector<ArchSolution> sort_solutions(const std::vector<ArchSolution>& solutions) {
    const std::vector<int> rank = pareto_dominance_rank(solutions);
    std::vector<std::size_t> order(solutions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rank[a] != rank[b]) return rank[a] < rank[b];
        return solutions[a].cost < solutions[b].cost;
    });
    std::vector<ArchSolution> out;
    out.reserve(solutions.size());
    for (std::size_t i : order) out.push_back(solutions[i]);
    return out;
}

std::vector<ArchSolution> unique_by_arch(const std::vector<ArchSolution>& solutions) {
    std::vector<ArchSolution> out;
    for (const auto& s : solutions) {
        auto hit = std::find_if(out.begin(), out.end(),
                                [&](const ArchSolution& u) { return u.arch == s.arch; });
        if (hit == out.end())
            out.push_back(s);
        else if (s.cost < hit->cost)
            hit->cost = s.cost;
    }
    return out;
}

Architecture create_new_solution(const std::vector<ArchSolution>& unique_layers,
                                 const ArchSearchConfig& cfg, Rng& rng) {
    if (unique_layers.empty())
        throw ConfigError("create_new_solution needs a nonempty solution pool");
    validate_arch_search_config(cfg);

    std::vector<double> costs;
    costs.reserve(unique_layers.size());
    for (const auto& s : unique_layers) costs.push_back(s.cost);
    const SelectionWeights weights = fitness_weights(costs);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto roulette = [&]() {
        const double u = unit(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.probs.size(); ++i) {
            acc += weights.probs[i];
            if (u < acc) return i;
        }
        return weights.probs.size() - 1; // guard against rounding in the sum
    };

    Architecture out = unique_layers.front().arch;
    const auto& max = cfg.max_dims.dims;
    if (out.dims.size() != max.size())
        throw DimensionError("pool architectures have " + std::to_string(out.dims.size()) +
                             " entries, max_dims has " + std::to_string(max.size()));
    for (std::size_t i = 1; i + 1 < out.dims.size(); ++i) {
        if (unit(rng) < cfg.cr) {
            int v = unique_layers[roulette()].arch.dims[i];
            if (unit(rng) < cfg.par) {
                std::uniform_int_distribution<int> pitch(-cfg.pitch_span, cfg.pitch_span);
                v = std::clamp(v + pitch(rng), 1, max[i]);
            }
            out.dims[i] = v;
        } else {
            std::uniform_int_distribution<int> any(1, max[i]);
            out.dims[i] = any(rng);
        }
    }
    return out;
}

std::vector<Architecture> create_new_solutions(const std::vector<ArchSolution>& leader_layers,
                                               const std::vector<ArchSolution>& follower_layers,
                                               const ArchSearchConfig& cfg, int size, Rng& rng,
                                               const std::vector<Architecture>& exclude) {
    if (size < 1) throw ConfigError("size must be >= 1, got " + std::to_string(size));
    std::vector<ArchSolution> joined = leader_layers;
    joined.insert(joined.end(), follower_layers.begin(), follower_layers.end());
    const std::vector<ArchSolution> pool = unique_by_arch(joined);
    if (pool.empty()) throw ConfigError("create_new_solutions needs a nonempty solution pool");

    std::vector<Architecture> out;
    out.reserve(size);
    const long budget = 1000L * size;
    for (long attempt = 0; attempt < budget && static_cast<int>(out.size()) < size; ++attempt) {
        Architecture cand = create_new_solution(pool, cfg, rng);
        if (std::find(out.begin(), out.end(), cand) == out.end() &&
            std::find(exclude.begin(), exclude.end(), cand) == exclude.end())
            out.push_back(std::move(cand));
    }
    if (static_cast<int>(out.size()) < size)
        throw SearchError("could not generate " + std::to_string(size) +
                          " distinct architectures in " + std::to_string(budget) +
                          " attempts; search space too small");
    return out;
}

std::vector<ArchSolution> update_and_sort(const std::vector<Architecture>& archs,
                                          const ParamSet& params, const Dataset& data) {
    if (archs.empty()) throw ConfigError("update_and_sort needs at least one architecture");
    std::vector<ArchSolution> sols;
    sols.reserve(archs.size());
    for (const auto& a : archs) sols.push_back({a, evaluate_cost(params, a, data)});
    return sort_solutions(sols);
}

} // namespace diga
