#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diga/arch_search.hpp"
#include "diga/model.hpp"
#include "diga/variation.hpp"

namespace diga {

struct EvolutionConfig {
    int size = 5;         // solutions per agent
    int max_iter = 20000; // generation cap
    double stop_cost = 0.0; // required, must be > 0
    Architecture max_dims;
    MutationConfig mutation;
    ArchSearchConfig arch_search; // max_dims is overwritten from this config
    std::uint64_t seed = 42;
};

void validate_evolution_config(const EvolutionConfig& cfg);

struct IterationLog {
    long iteration = 0;
    double best_cost = 0.0;
    double leader_best = 0.0;
    double follower_best = 0.0; // NaN for gradient-descent runs
    double mutation_rate = 0.0; // NaN for gradient-descent runs
    bool swapped = false;       // the previous step's role swap
};

struct SolutionReport {
    Architecture arch;
    double cost = 0.0;
    double train_accuracy = 0.0; // fraction in [0,1]
    std::optional<double> test_accuracy;
};

struct RunRecord {
    enum class Kind { Evolution, GradientDescent };
    Kind kind = Kind::Evolution;
    std::vector<IterationLog> curve;
    std::vector<SolutionReport> leader;   // one row for gradient descent
    std::vector<SolutionReport> follower; // empty for gradient descent
    long total_iterations = 0;
    bool stopped_early = false;
    double wall_seconds = 0.0;
    bool finalized = false;
};

/// The full evolution loop. Each logged row describes the state at the start
/// of that iteration (so a run that stops immediately logs exactly one row);
/// its `swapped` flag reports whether the step that produced this state
/// swapped the agents. Deterministic for a fixed config and seed.
RunRecord run_evolution(const EvolutionConfig& config, const Dataset& train,
                        const Dataset* test = nullptr);

} // namespace diga
