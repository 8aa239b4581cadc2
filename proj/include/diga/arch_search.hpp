#pragma once

#include <random>
#include <vector>

#include "diga/model.hpp"

namespace diga {

using Rng = std::mt19937_64;

struct ArchSearchConfig {
    double cr = 0.9;  // chance to copy a column from a donor solution
    double par = 0.3; // chance to pitch-adjust a copied column
    int pitch_span = 2;
    Architecture max_dims;
};

/// Throws ConfigError on rates outside [0,1], pitch_span < 1 or bad max_dims.
void validate_arch_search_config(const ArchSearchConfig& cfg);

struct SelectionWeights {
    std::vector<double> probs; // nonnegative, sum to 1
};

/// Roulette weights: prob[i] proportional to 1/(1 + cost[i]).
SelectionWeights fitness_weights(const std::vector<double>& costs);

/// Pareto dominance over (hidden layer sizes..., cost), all minimized:
/// a <= b everywhere and a < b somewhere.
bool dominates(const ArchSolution& a, const ArchSolution& b);

/// rank[i] = number of other solutions that dominate solution i.
std::vector<int> pareto_dominance_rank(const std::vector<ArchSolution>& solutions);

/// Stable ascending sort by (dominance rank, cost).
std::vector<ArchSolution> sort_solutions(const std::vector<ArchSolution>& solutions);

/// Deduplicate by architecture dims, keeping the lower-cost occurrence.
/// First-seen order is preserved.
std::vector<ArchSolution> unique_by_arch(const std::vector<ArchSolution>& solutions);

/// One new architecture: endpoints copied from the pool, each middle column
/// either copied from a roulette-selected donor (prob cr, then pitch-adjusted
/// with prob par) or drawn uniformly from [1, max_dims[i]].
Architecture create_new_solution(const std::vector<ArchSolution>& unique_layers,
                                 const ArchSearchConfig& cfg, Rng& rng);

/// `size` pairwise-distinct architectures drawn from the deduplicated union
/// of both agents' lists, also avoiding anything in `exclude`. Throws
/// SearchError when 1000*size attempts cannot produce enough distinct
/// candidates.
std::vector<Architecture> create_new_solutions(const std::vector<ArchSolution>& leader_layers,
                                               const std::vector<ArchSolution>& follower_layers,
                                               const ArchSearchConfig& cfg, int size, Rng& rng,
                                               const std::vector<Architecture>& exclude = {});

/// Evaluate every architecture against params on the training set, then
/// sort_solutions the result.
std::vector<ArchSolution> update_and_sort(const std::vector<Architecture>& archs,
                                          const ParamSet& params, const Dataset& data);

} // namespace diga
