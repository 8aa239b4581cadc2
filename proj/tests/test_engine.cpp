#include <doctest.h>

#include <cmath>

#include "diga/data_io.hpp"
#include "diga/engine.hpp"

using namespace diga;

namespace {

EvolutionConfig small_config() {
    EvolutionConfig cfg;
    cfg.size = 4;
    cfg.max_iter = 30;
    cfg.stop_cost = 1e-9;
    cfg.max_dims = Architecture{{10, 4, 4, 1}};
    cfg.seed = 42;
    return cfg;
}

bool same_curve(const std::vector<IterationLog>& a, const std::vector<IterationLog>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].iteration != b[i].iteration) return false;
        if (a[i].best_cost != b[i].best_cost) return false;
        if (a[i].leader_best != b[i].leader_best) return false;
        if (a[i].follower_best != b[i].follower_best) return false;
        if (a[i].mutation_rate != b[i].mutation_rate) return false;
        if (a[i].swapped != b[i].swapped) return false;
    }
    return true;
}

} // namespace

TEST_CASE("an immediate stop logs exactly one row") {
    const Dataset train = synth_dataset(10, 50, 3, false);
    EvolutionConfig cfg = small_config();
    cfg.stop_cost = 1.0; // zero-initialized agents already beat this

    const RunRecord rec = run_evolution(cfg, train);
    CHECK(rec.kind == RunRecord::Kind::Evolution);
    CHECK(rec.finalized);
    CHECK(rec.stopped_early);
    CHECK(rec.total_iterations == 0);
    REQUIRE(rec.curve.size() == 1);
    const IterationLog& row = rec.curve.front();
    CHECK(row.iteration == 0);
    CHECK(row.best_cost == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(row.leader_best == row.best_cost);
    CHECK(row.follower_best == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(row.mutation_rate == cfg.mutation.rate_start);
    CHECK_FALSE(row.swapped);

    REQUIRE(rec.leader.size() == 4);
    REQUIRE(rec.follower.size() == 4);
    double ones = 0.0;
    for (int e = 0; e < train.examples(); ++e) ones += train.Y(e);
    for (const auto& list : {rec.leader, rec.follower})
        for (const auto& s : list) {
            CHECK(s.cost == doctest::Approx(0.6931471805599453).epsilon(1e-12));
            // zero parameters output exactly 0.5, which predicts label 1
            CHECK(s.train_accuracy == doctest::Approx(ones / train.examples()));
            CHECK_FALSE(s.test_accuracy.has_value());
        }
}

TEST_CASE("runs with the same seed are identical") {
    const Dataset train = synth_dataset(10, 40, 5, true);
    const EvolutionConfig cfg = small_config();
    const RunRecord a = run_evolution(cfg, train);
    const RunRecord b = run_evolution(cfg, train);
    CHECK(same_curve(a.curve, b.curve));
    REQUIRE(a.leader.size() == b.leader.size());
    for (std::size_t i = 0; i < a.leader.size(); ++i) {
        CHECK(a.leader[i].arch == b.leader[i].arch);
        CHECK(a.leader[i].cost == b.leader[i].cost);
        CHECK(a.follower[i].arch == b.follower[i].arch);
        CHECK(a.follower[i].cost == b.follower[i].cost);
    }

    SUBCASE("and a different seed takes a different path") {
        EvolutionConfig other = cfg;
        other.seed = 43;
        const RunRecord c = run_evolution(other, train);
        CHECK_FALSE(same_curve(a.curve, c.curve));
    }
}

TEST_CASE("each row reports the state at the start of its iteration") {
    const Dataset train = synth_dataset(10, 40, 5, true);
    const EvolutionConfig cfg = small_config();
    const RunRecord rec = run_evolution(cfg, train);

    REQUIRE(rec.curve.size() == static_cast<std::size_t>(rec.total_iterations) + 1);
    if (!rec.stopped_early) CHECK(rec.total_iterations == cfg.max_iter);
    for (std::size_t i = 0; i < rec.curve.size(); ++i) {
        const IterationLog& row = rec.curve[i];
        CHECK(row.iteration == static_cast<long>(i));
        CHECK(row.best_cost == row.leader_best);
        CHECK(row.leader_best <= row.follower_best);
        CHECK(row.mutation_rate == mutation_rate_at(row.iteration, cfg.mutation));
        // only the last row may be past the stopping threshold
        if (i + 1 < rec.curve.size()) CHECK(row.best_cost >= cfg.stop_cost);
    }
    CHECK_FALSE(rec.curve.front().swapped);

    SUBCASE("the final row matches the reported solutions") {
        CHECK(rec.curve.back().best_cost == rec.leader.front().cost);
        CHECK(rec.curve.back().follower_best == rec.follower.front().cost);
    }

    SUBCASE("the leader's first solution is the global best") {
        for (const auto& list : {rec.leader, rec.follower})
            for (const auto& s : list) CHECK(rec.leader.front().cost <= s.cost);
    }
}

TEST_CASE("evolution drives down the cost of a separable problem") {
    const Dataset train = synth_dataset(10, 60, 7, true);
    EvolutionConfig cfg;
    cfg.size = 4;
    cfg.max_iter = 2000;
    cfg.mutation.max_iter = 2000; // complete the rate decay within the run
    cfg.stop_cost = 1e-9;
    cfg.max_dims = Architecture{{10, 5, 5, 1}};
    cfg.seed = 42;

    const RunRecord rec = run_evolution(cfg, train);
    CHECK(rec.curve.front().best_cost == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(rec.curve.back().best_cost < 0.1);
    CHECK(rec.leader.front().train_accuracy == 1.0);

    SUBCASE("the best cost never increases between rows") {
        for (std::size_t i = 0; i + 1 < rec.curve.size(); ++i)
            CHECK(rec.curve[i + 1].best_cost <= rec.curve[i].best_cost + 1e-12);
    }

    SUBCASE("at least one swap happened on the way down") {
        bool any = false;
        for (const auto& row : rec.curve) any |= row.swapped;
        CHECK(any);
    }
}

TEST_CASE("a held-out dataset fills in test accuracy") {
    const Dataset train = synth_dataset(10, 40, 5, true);
    const Dataset test = synth_dataset(10, 20, 6, true);
    EvolutionConfig cfg = small_config();
    cfg.max_iter = 5;
    const RunRecord rec = run_evolution(cfg, train, &test);
    for (const auto& list : {rec.leader, rec.follower})
        for (const auto& s : list) {
            REQUIRE(s.test_accuracy.has_value());
            CHECK(*s.test_accuracy >= 0.0);
            CHECK(*s.test_accuracy <= 1.0);
        }
}

TEST_CASE("evolution config validation") {
    const Dataset train = synth_dataset(10, 20, 3, false);

    SUBCASE("stop_cost must be positive") {
        EvolutionConfig cfg = small_config();
        cfg.stop_cost = 0.0;
        CHECK_THROWS_AS(validate_evolution_config(cfg), ConfigError);
    }
    SUBCASE("size must be at least one") {
        EvolutionConfig cfg = small_config();
        cfg.size = 0;
        CHECK_THROWS_AS(validate_evolution_config(cfg), ConfigError);
    }
    SUBCASE("max_iter must be at least one") {
        EvolutionConfig cfg = small_config();
        cfg.max_iter = 0;
        CHECK_THROWS_AS(validate_evolution_config(cfg), ConfigError);
    }
    SUBCASE("the output layer must be a single unit") {
        EvolutionConfig cfg = small_config();
        cfg.max_dims = Architecture{{10, 4, 2}};
        CHECK_THROWS_AS(validate_evolution_config(cfg), ConfigError);
    }
    SUBCASE("training data must match the input width") {
        EvolutionConfig cfg = small_config();
        cfg.max_dims = Architecture{{9, 4, 4, 1}};
        CHECK_THROWS_AS(run_evolution(cfg, train), ConfigError);
    }
    SUBCASE("test data must match the training width") {
        const Dataset test = synth_dataset(9, 10, 4, false);
        const EvolutionConfig cfg = small_config();
        CHECK_THROWS_AS(run_evolution(cfg, train, &test), DataError);
    }
}
