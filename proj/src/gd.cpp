#include "diga/gd.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace diga {

void validate_gd_config(const GDConfig& cfg) {
    validate_architecture(cfg.arch);
    if (cfg.arch.dims.back() != 1)
        throw ConfigError("output layer must have size 1 for binary classification, got " +
                          std::to_string(cfg.arch.dims.back()));
    if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate))
        throw ConfigError("learning_rate must be finite and >= 0, got " +
                          std::to_string(cfg.learning_rate));
    if (cfg.iterations < 1)
        throw ConfigError("iterations must be >= 1, got " + std::to_string(cfg.iterations));
    if (cfg.init_scale != "he")
        throw ConfigError("unknown init_scale '" + cfg.init_scale + "', only 'he' is supported");
}

ParamSet init_he_params(const Architecture& arch, Rng& rng) {
    validate_architecture(arch);
    ParamSet p = init_zero_params(arch);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t l = 0; l < p.num_layers(); ++l) {
        const double sigma = std::sqrt(2.0 / arch.dims[l]);
        double* data = p.weights[l].data();
        for (Eigen::Index i = 0; i < p.weights[l].size(); ++i) data[i] = gauss(rng) * sigma;
    }
    return p;
}

ParamSet backprop_grads(const ParamSet& params, const Architecture& arch, const Matrix& X,
                        const RowVector& Y) {
    if (X.cols() != Y.cols())
        throw DimensionError("input has " + std::to_string(X.cols()) + " examples but " +
                             std::to_string(Y.cols()) + " labels");
    const ParamSet p = trim_params(params, arch);
    const ForwardResult fwd = forward(p, arch, X, true);
    const int L = arch.num_layers();
    const double m = static_cast<double>(X.cols());

    ParamSet grads = init_zero_params(arch);
    Matrix dZ = fwd.activations[L] - Y; // sigmoid + cross-entropy pair
    for (int l = L - 1; l >= 0; --l) {
        grads.weights[l] = dZ * fwd.activations[l].transpose() / m;
        grads.biases[l] = dZ.rowwise().sum() / m;
        if (l > 0) {
            const Matrix dA = p.weights[l].transpose() * dZ;
            dZ = dA.cwiseProduct(
                (fwd.pre_activations[l - 1].array() > 0.0).cast<double>().matrix());
        }
    }
    return grads;
}

RunRecord gd_train(const GDConfig& config, const Dataset& train, const Dataset* test) {
    validate_gd_config(config);
    validate_dataset(train);
    if (train.features() != config.arch.input_size())
        throw ConfigError("training data has " + std::to_string(train.features()) +
                          " features but the architecture starts with " +
                          std::to_string(config.arch.input_size()));
    if (test) {
        validate_dataset(*test);
        if (test->features() != train.features())
            throw DataError("test data has " + std::to_string(test->features()) +
                            " features, train has " + std::to_string(train.features()));
    }

    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    ParamSet params = init_he_params(config.arch, rng);

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    RunRecord rec;
    rec.kind = RunRecord::Kind::GradientDescent;
    long it = 0;
    double last_finite = nan;
    for (;;) {
        const double c = evaluate_cost(params, config.arch, train);
        if (!std::isfinite(c))
            throw NumericError("cost diverged at iteration " + std::to_string(it) +
                               "; last finite cost was " + std::to_string(last_finite));
        last_finite = c;
        rec.curve.push_back({it, c, c, nan, nan, false});
        if (it >= config.iterations) break;
        const ParamSet grads = backprop_grads(params, config.arch, train.X, train.Y);
        for (std::size_t l = 0; l < params.num_layers(); ++l) {
            params.weights[l] -= config.learning_rate * grads.weights[l];
            params.biases[l] -= config.learning_rate * grads.biases[l];
        }
        ++it;
    }

    rec.total_iterations = it;
    SolutionReport row;
    row.arch = config.arch;
    row.cost = rec.curve.back().best_cost;
    row.train_accuracy = predict(params, config.arch, train.X, train.Y).accuracy;
    if (test) row.test_accuracy = predict(params, config.arch, test->X, test->Y).accuracy;
    rec.leader.push_back(std::move(row));
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.finalized = true;
    return rec;
}

} // namespace diga
