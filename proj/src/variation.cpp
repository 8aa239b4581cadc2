#include "diga/variation.hpp"

#include <string>

namespace diga {

void validate_mutation_config(const MutationConfig& cfg) {
    if (cfg.rate_start < 0.0 || cfg.rate_start > 1.0)
        throw ConfigError("rate_start must be in [0,1], got " + std::to_string(cfg.rate_start));
    if (cfg.rate_end < 0.0 || cfg.rate_end > 1.0)
        throw ConfigError("rate_end must be in [0,1], got " + std::to_string(cfg.rate_end));
    if (cfg.max_iter < 1)
        throw ConfigError("mutation max_iter must be >= 1, got " + std::to_string(cfg.max_iter));
    if (!(cfg.scale > 0.0))
        throw ConfigError("mutation scale must be > 0, got " + std::to_string(cfg.scale));
}

double mutation_rate_at(long iteration, const MutationConfig& cfg) {
    if (iteration < 0) throw ConfigError("iteration must be >= 0");
    if (iteration >= cfg.max_iter) return cfg.rate_end;
    const double t = static_cast<double>(iteration) / cfg.max_iter;
    return cfg.rate_start * (1.0 - t) + cfg.rate_end * t;
}

namespace {

void check_same_shape(const ParamSet& a, const ParamSet& b) {
    if (a.num_layers() != b.num_layers())
        throw DimensionError("parameter sets have " + std::to_string(a.num_layers()) + " and " +
                             std::to_string(b.num_layers()) + " layers");
    for (std::size_t l = 0; l < a.num_layers(); ++l)
        if (a.weights[l].rows() != b.weights[l].rows() ||
            a.weights[l].cols() != b.weights[l].cols() ||
            a.biases[l].size() != b.biases[l].size())
            throw DimensionError("parameter sets disagree in shape at layer " + std::to_string(l));
}

} // namespace

std::pair<ParamSet, ParamSet> crossover_rows(const ParamSet& leader, const ParamSet& follower,
                                             Rng& rng) {
    check_same_shape(leader, follower);
    ParamSet off1 = leader;
    ParamSet off2 = follower;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t l = 0; l < leader.num_layers(); ++l) {
        const auto rows = leader.weights[l].rows();
        const auto cols = leader.weights[l].cols();
        std::uniform_int_distribution<Eigen::Index> cut(0, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Eigen::Index k = cut(rng);
            off1.weights[l].row(r).tail(cols - k) = follower.weights[l].row(r).tail(cols - k);
            off2.weights[l].row(r).tail(cols - k) = leader.weights[l].row(r).tail(cols - k);
        }
        for (Eigen::Index i = 0; i < leader.biases[l].size(); ++i) {
            const double alpha = unit(rng);
            const double bl = leader.biases[l](i);
            const double bf = follower.biases[l](i);
            // alpha*bl + (1-alpha)*bf, written so equal parents pass through
            // bit-for-bit and both blends stay inside [min, max]
            off1.biases[l](i) = bf + alpha * (bl - bf);
            off2.biases[l](i) = bl + alpha * (bf - bl);
        }
    }
    return {std::move(off1), std::move(off2)};
}

ParamSet mutate(const ParamSet& params, double rate, double scale, Rng& rng) {
    if (rate < 0.0 || rate > 1.0)
        throw ConfigError("mutation rate must be in [0,1], got " + std::to_string(rate));
    if (!(scale > 0.0))
        throw ConfigError("mutation scale must be > 0, got " + std::to_string(scale));
    ParamSet out = params;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, scale);
    // Mask draws first, then noise for every entry, so the draw count per
    // array does not depend on the mask.
    auto perturb = [&](double* data, Eigen::Index n) {
        std::vector<char> mask(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) mask[i] = unit(rng) < rate;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double delta = noise(rng);
            if (mask[i]) data[i] += delta;
        }
    };
    for (std::size_t l = 0; l < out.num_layers(); ++l) {
        perturb(out.weights[l].data(), out.weights[l].size());
        perturb(out.biases[l].data(), out.biases[l].size());
    }
    return out;
}

} // namespace diga
