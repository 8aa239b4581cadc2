#include "diga/engine.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "diga/assimilation.hpp"

namespace diga {

void validate_evolution_config(const EvolutionConfig& cfg) {
    if (cfg.size < 1) throw ConfigError("size must be >= 1, got " + std::to_string(cfg.size));
    if (cfg.max_iter < 1)
        throw ConfigError("max_iter must be >= 1, got " + std::to_string(cfg.max_iter));
    if (!(cfg.stop_cost > 0.0))
        throw ConfigError("stop_cost must be > 0, got " + std::to_string(cfg.stop_cost));
    validate_architecture(cfg.max_dims);
    if (cfg.max_dims.dims.back() != 1)
        throw ConfigError("output layer must have size 1 for binary classification, got " +
                          std::to_string(cfg.max_dims.dims.back()));
    validate_mutation_config(cfg.mutation);
    ArchSearchConfig as = cfg.arch_search;
    as.max_dims = cfg.max_dims;
    validate_arch_search_config(as);
}

namespace {

std::vector<SolutionReport> report_rows(const std::vector<ArchSolution>& sols,
                                        const ParamSet& params, const Dataset& train,
                                        const Dataset* test) {
    std::vector<SolutionReport> rows;
    rows.reserve(sols.size());
    for (const auto& s : sols) {
        SolutionReport row;
        row.arch = s.arch;
        row.cost = s.cost;
        row.train_accuracy = predict(params, s.arch, train.X, train.Y).accuracy;
        if (test) row.test_accuracy = predict(params, s.arch, test->X, test->Y).accuracy;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

RunRecord run_evolution(const EvolutionConfig& config, const Dataset& train, const Dataset* test) {
    EvolutionConfig cfg = config;
    cfg.arch_search.max_dims = cfg.max_dims;
    validate_evolution_config(cfg);
    validate_dataset(train);
    if (train.features() != cfg.max_dims.dims.front())
        throw ConfigError("training data has " + std::to_string(train.features()) +
                          " features but max_dims starts with " +
                          std::to_string(cfg.max_dims.dims.front()));
    if (test) {
        validate_dataset(*test);
        if (test->features() != train.features())
            throw DataError("test data has " + std::to_string(test->features()) +
                            " features, train has " + std::to_string(train.features()));
    }

    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);

    ParamSet lead_p = init_zero_params(cfg.max_dims);
    ParamSet foll_p = init_zero_params(cfg.max_dims);
    // Seed the generator with the max architecture itself as the only donor.
    const std::vector<ArchSolution> seed_pool{{cfg.max_dims, 0.0}};
    const auto lead_archs = create_new_solutions(seed_pool, {}, cfg.arch_search, cfg.size, rng);
    const auto foll_archs = create_new_solutions(seed_pool, {}, cfg.arch_search, cfg.size, rng);
    auto lead_l = update_and_sort(lead_archs, lead_p, train);
    auto foll_l = update_and_sort(foll_archs, foll_p, train);

    RunRecord rec;
    rec.kind = RunRecord::Kind::Evolution;
    long it = 0;
    bool swapped_prev = false;
    for (;;) {
        const double best = lead_l.front().cost;
        const double rate = mutation_rate_at(it, cfg.mutation);
        rec.curve.push_back({it, best, best, foll_l.front().cost, rate, swapped_prev});
        if (best < cfg.stop_cost) {
            rec.stopped_early = true;
            break;
        }
        if (it >= cfg.max_iter) break;

        const auto off_archs = create_new_solutions(lead_l, foll_l, cfg.arch_search, cfg.size, rng);
        auto [off1_p, off2_p] = crossover_rows(lead_p, foll_p, rng);
        off1_p = mutate(off1_p, rate, cfg.mutation.scale, rng);
        off2_p = mutate(off2_p, rate, cfg.mutation.scale, rng);
        const auto off1_l = update_and_sort(off_archs, off1_p, train);
        const auto off2_l = update_and_sort(off_archs, off2_p, train);
        MergeResult merged = merge_two_offs(off1_p, off2_p, off1_l, off2_l, train);
        anabolism(lead_p, foll_p, merged.off_p, lead_l, foll_l, merged.off_l, cfg.arch_search,
                  train, rng);
        swapped_prev = update_lead_foll(lead_p, foll_p, lead_l, foll_l, train);
        ++it;
    }

    rec.total_iterations = it;
    rec.leader = report_rows(lead_l, lead_p, train, test);
    rec.follower = report_rows(foll_l, foll_p, train, test);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.finalized = true;
    return rec;
}

} // namespace diga
