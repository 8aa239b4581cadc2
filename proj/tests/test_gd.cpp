#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "diga/data_io.hpp"
#include "diga/gd.hpp"

using namespace diga;

namespace {

// Central finite difference of the cost with respect to one entry.
double fd_derivative(ParamSet params, const Architecture& arch, const Dataset& data,
                     std::size_t layer, bool bias, Eigen::Index idx) {
    const double h = 1e-5;
    double* slot = bias ? &params.biases[layer](idx) : &params.weights[layer].data()[idx];
    const double base = *slot;
    *slot = base + h;
    const double up = evaluate_cost(params, arch, data);
    *slot = base - h;
    const double down = evaluate_cost(params, arch, data);
    return (up - down) / (2.0 * h);
}

// Instances too close to a ReLU kink make finite differences unreliable.
bool near_kink(const ParamSet& params, const Architecture& arch, const Matrix& X) {
    const ForwardResult fwd = forward(params, arch, X, true);
    for (int l = 0; l + 1 < arch.num_layers(); ++l)
        if ((fwd.pre_activations[l].array().abs() < 1e-3).any()) return true;
    return false;
}

ParamSet random_params(const Architecture& arch, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 0.8);
    ParamSet p = init_zero_params(arch);
    for (std::size_t l = 0; l < p.num_layers(); ++l) {
        for (Eigen::Index i = 0; i < p.weights[l].size(); ++i) p.weights[l].data()[i] = gauss(rng);
        for (Eigen::Index i = 0; i < p.biases[l].size(); ++i) p.biases[l](i) = gauss(rng);
    }
    return p;
}

Dataset random_dataset(int features, int examples, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Dataset d;
    d.X.resize(features, examples);
    d.Y.resize(examples);
    for (int e = 0; e < examples; ++e) {
        for (int f = 0; f < features; ++f) d.X(f, e) = unit(rng);
        d.Y(e) = unit(rng) < 0.5 ? 0.0 : 1.0;
    }
    return d;
}

} // namespace

TEST_CASE("gradients at zero parameters have a closed form") {
    // with zero weights the output is exactly 0.5, so the output delta is
    // 0.5 - y for every example
    Dataset d;
    d.X.resize(2, 2);
    d.X << 1.0, 0.0, 0.0, 1.0;
    d.Y.resize(2);
    d.Y << 1, 1;

    SUBCASE("single sigmoid layer") {
        const Architecture arch{{2, 1}};
        const ParamSet grads = backprop_grads(init_zero_params(arch), arch, d.X, d.Y);
        CHECK(grads.weights[0](0, 0) == -0.25);
        CHECK(grads.weights[0](0, 1) == -0.25);
        CHECK(grads.biases[0](0) == -0.5);
    }

    SUBCASE("a hidden layer blocks everything except the output bias") {
        const Architecture arch{{2, 3, 1}};
        const ParamSet grads = backprop_grads(init_zero_params(arch), arch, d.X, d.Y);
        CHECK((grads.weights[0].array() == 0.0).all());
        CHECK((grads.biases[0].array() == 0.0).all());
        CHECK((grads.weights[1].array() == 0.0).all());
        CHECK(grads.biases[1](0) == -0.5);
    }
}

TEST_CASE("backprop matches central finite differences") {
    const std::vector<Architecture> archs{Architecture{{2, 1}}, Architecture{{3, 2, 1}},
                                          Architecture{{4, 3, 2, 1}}, Architecture{{6, 4, 3, 1}}};
    Rng rng(314);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(archs.size()) - 1);
    std::uniform_int_distribution<int> m_dist(2, 8);

    int tested = 0;
    for (int attempt = 0; attempt < 400 && tested < 100; ++attempt) {
        const Architecture& arch = archs[static_cast<std::size_t>(pick(rng))];
        const Dataset d = random_dataset(arch.input_size(), m_dist(rng), rng);
        const ParamSet params = random_params(arch, rng);
        if (near_kink(params, arch, d.X)) continue;
        ++tested;

        const ParamSet grads = backprop_grads(params, arch, d.X, d.Y);
        for (std::size_t l = 0; l < grads.num_layers(); ++l) {
            for (Eigen::Index i = 0; i < grads.weights[l].size(); ++i) {
                const double fd = fd_derivative(params, arch, d, l, false, i);
                const double an = grads.weights[l].data()[i];
                CHECK(std::abs(an - fd) / std::max({1.0, std::abs(an), std::abs(fd)}) < 1e-6);
            }
            for (Eigen::Index i = 0; i < grads.biases[l].size(); ++i) {
                const double fd = fd_derivative(params, arch, d, l, true, i);
                const double an = grads.biases[l](i);
                CHECK(std::abs(an - fd) / std::max({1.0, std::abs(an), std::abs(fd)}) < 1e-6);
            }
        }
    }
    CHECK(tested == 100);
}

TEST_CASE("gradients vanish at a perfect saturated fit") {
    Dataset d;
    d.X.resize(1, 2);
    d.X << 0.0, 1.0;
    d.Y.resize(2);
    d.Y << 0, 1;
    const Architecture arch{{1, 1}};
    ParamSet p = init_zero_params(arch);
    p.weights[0](0, 0) = 60.0;
    p.biases[0](0) = -30.0;

    const ParamSet grads = backprop_grads(p, arch, d.X, d.Y);
    double norm = 0.0;
    for (std::size_t l = 0; l < grads.num_layers(); ++l)
        norm += grads.weights[l].squaredNorm() + grads.biases[l].squaredNorm();
    CHECK(std::sqrt(norm) < 1e-8);
}

TEST_CASE("He initialization scales weights by fan-in and zeroes biases") {
    const Architecture arch{{500, 300, 1}};
    Rng rng(99);
    const ParamSet p = init_he_params(arch, rng);

    CHECK((p.biases[0].array() == 0.0).all());
    CHECK((p.biases[1].array() == 0.0).all());
    const double n0 = static_cast<double>(p.weights[0].size());
    const double mean0 = p.weights[0].sum() / n0;
    const double var0 = (p.weights[0].array() - mean0).square().sum() / n0;
    const double sigma0 = std::sqrt(2.0 / 500.0);
    CHECK(std::abs(mean0) < 4.0 * sigma0 / std::sqrt(n0));
    CHECK(std::sqrt(var0) == doctest::Approx(sigma0).epsilon(0.02));
    const double var1 = (p.weights[1].array() - p.weights[1].mean()).square().sum() /
                        static_cast<double>(p.weights[1].size());
    CHECK(std::sqrt(var1) == doctest::Approx(std::sqrt(2.0 / 300.0)).epsilon(0.1));

    SUBCASE("the draw is deterministic per seed") {
        Rng again(99);
        const ParamSet q = init_he_params(arch, again);
        CHECK((p.weights[0].array() == q.weights[0].array()).all());
        CHECK((p.weights[1].array() == q.weights[1].array()).all());
    }
}

TEST_CASE("gd training descends on a separable problem") {
    const Dataset train = synth_dataset(10, 60, 7, true);
    GDConfig cfg;
    cfg.arch = Architecture{{10, 6, 1}};
    cfg.learning_rate = 0.5;
    cfg.iterations = 1500;
    cfg.seed = 42;

    const RunRecord rec = gd_train(cfg, train);
    REQUIRE(rec.curve.size() == 1501);
    CHECK(rec.total_iterations == 1500);
    CHECK(rec.curve.back().best_cost < 0.05);
    CHECK(rec.curve.back().best_cost < rec.curve.front().best_cost);
    CHECK(rec.leader.front().train_accuracy == 1.0);

    SUBCASE("the logged shape marks evolution-only columns as missing") {
        CHECK(rec.kind == RunRecord::Kind::GradientDescent);
        CHECK(rec.follower.empty());
        REQUIRE(rec.leader.size() == 1);
        CHECK(rec.leader.front().arch == cfg.arch);
        CHECK(rec.leader.front().cost == rec.curve.back().best_cost);
        for (const auto& row : rec.curve) {
            CHECK(std::isnan(row.follower_best));
            CHECK(std::isnan(row.mutation_rate));
            CHECK_FALSE(row.swapped);
            CHECK(row.best_cost == row.leader_best);
        }
    }

    SUBCASE("a small learning rate never increases the cost") {
        GDConfig slow = cfg;
        slow.learning_rate = 1e-3;
        slow.iterations = 200;
        const RunRecord r = gd_train(slow, train);
        for (std::size_t i = 0; i + 1 < r.curve.size(); ++i)
            CHECK(r.curve[i + 1].best_cost <= r.curve[i].best_cost + 1e-12);
    }
}

TEST_CASE("a zero learning rate leaves the parameters alone") {
    const Dataset train = synth_dataset(5, 30, 11, false);
    GDConfig cfg;
    cfg.arch = Architecture{{5, 3, 1}};
    cfg.learning_rate = 0.0;
    cfg.iterations = 50;
    const RunRecord rec = gd_train(cfg, train);
    CHECK(rec.curve.front().best_cost == rec.curve.back().best_cost);
    CHECK(rec.leader.front().cost == rec.curve.front().best_cost);
}

TEST_CASE("an overflowing run raises a numeric error instead of logging NaN") {
    Dataset train;
    train.X = Matrix::Constant(2, 4, 1e308);
    train.Y.resize(4);
    train.Y << 0, 1, 0, 1;
    GDConfig cfg;
    cfg.arch = Architecture{{2, 3, 1}};
    cfg.learning_rate = 0.001;
    cfg.iterations = 5;
    CHECK_THROWS_AS(gd_train(cfg, train), NumericError);
}

TEST_CASE("gd config validation") {
    GDConfig good;
    good.arch = Architecture{{4, 3, 1}};
    good.iterations = 10;
    validate_gd_config(good);

    SUBCASE("iteration count must be positive") {
        GDConfig cfg = good;
        cfg.iterations = 0;
        CHECK_THROWS_AS(validate_gd_config(cfg), ConfigError);
    }
    SUBCASE("learning rate must be finite and nonnegative") {
        GDConfig cfg = good;
        cfg.learning_rate = -0.1;
        CHECK_THROWS_AS(validate_gd_config(cfg), ConfigError);
        cfg.learning_rate = std::nan("");
        CHECK_THROWS_AS(validate_gd_config(cfg), ConfigError);
    }
    SUBCASE("only He scaling is recognized") {
        GDConfig cfg = good;
        cfg.init_scale = "xavier";
        CHECK_THROWS_AS(validate_gd_config(cfg), ConfigError);
    }
    SUBCASE("the output layer must be a single unit") {
        GDConfig cfg = good;
        cfg.arch = Architecture{{4, 3, 2}};
        CHECK_THROWS_AS(validate_gd_config(cfg), ConfigError);
    }
    SUBCASE("training data must match the input width") {
        const Dataset train = synth_dataset(3, 10, 17, false);
        CHECK_THROWS_AS(gd_train(good, train), ConfigError);
    }
    SUBCASE("test data must match the training width") {
        const Dataset train = synth_dataset(4, 10, 17, false);
        const Dataset test = synth_dataset(3, 10, 18, false);
        CHECK_THROWS_AS(gd_train(good, train, &test), DataError);
    }
}
