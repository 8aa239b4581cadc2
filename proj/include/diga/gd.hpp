#pragma once

#include <cstdint>
#include <string>

#include "diga/engine.hpp"
#include "diga/model.hpp"

namespace diga {

struct GDConfig {
    Architecture arch;
    double learning_rate = 0.001;
    int iterations = 0; // required, must be > 0
    std::uint64_t seed = 42;
    std::string init_scale = "he"; // only He scaling supported
};

void validate_gd_config(const GDConfig& cfg);

/// He-scaled Gaussian weights (sigma = sqrt(2 / fan_in)), zero biases.
ParamSet init_he_params(const Architecture& arch, Rng& rng);

/// Full-batch gradients of the cross-entropy cost for the ReLU/sigmoid
/// network. Returned shapes match the architecture transitions.
ParamSet backprop_grads(const ParamSet& params, const Architecture& arch, const Matrix& X,
                        const RowVector& Y);

/// Plain full-batch gradient descent, logged in the same RunRecord shape as
/// the evolution engine (follower columns empty).
RunRecord gd_train(const GDConfig& config, const Dataset& train, const Dataset* test = nullptr);

} // namespace diga
