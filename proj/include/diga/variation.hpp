#pragma once

#include <utility>

#include "diga/arch_search.hpp"
#include "diga/model.hpp"

namespace diga {

struct MutationConfig {
    double rate_start = 0.9;
    double rate_end = 0.1;
    int max_iter = 20000; // schedule length in iterations
    double scale = 0.008; // Gaussian noise sigma
};

/// Throws ConfigError on rates outside [0,1], max_iter < 1 or scale <= 0.
void validate_mutation_config(const MutationConfig& cfg);

/// Linear interpolation from rate_start at iteration 0 to rate_end at
/// max_iter, held at rate_end afterwards. Exact at both endpoints.
double mutation_rate_at(long iteration, const MutationConfig& cfg);

/// Single-point row crossover for weights (per row, cut k in [0, cols]:
/// off1 takes the leader prefix and follower suffix, off2 the mirror) and
/// per-element alpha blending for biases (off1 + off2 = leader + follower).
std::pair<ParamSet, ParamSet> crossover_rows(const ParamSet& leader, const ParamSet& follower,
                                             Rng& rng);

/// Per entry: with probability `rate` add Normal(0, scale) noise.
ParamSet mutate(const ParamSet& params, double rate, double scale, Rng& rng);

} // namespace diga
