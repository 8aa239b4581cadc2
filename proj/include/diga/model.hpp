#pragma once

#include <Eigen/Dense>
#include <vector>

#include "diga/error.hpp"

namespace diga {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Neuron counts per layer: dims[0] is the input width, dims.back() the
/// output width. The unit of architecture search.
struct Architecture {
    std::vector<int> dims;

    Architecture() = default;
    explicit Architecture(std::vector<int> d) : dims(std::move(d)) {}

    int num_layers() const { return static_cast<int>(dims.size()) - 1; }
    int input_size() const { return dims.front(); }
    int output_size() const { return dims.back(); }

    bool operator==(const Architecture&) const = default;
};

/// Throws ConfigError unless dims has length >= 2 and every entry >= 1.
void validate_architecture(const Architecture& arch);

/// True iff arch has the same layer count as max_dims and every width is
/// within the corresponding bound.
bool fits_within(const Architecture& arch, const Architecture& max_dims);

/// Per-layer weight matrices and bias vectors, allocated at the maximum
/// layer widths. weights[l] has shape (dims[l+1], dims[l]) and biases[l]
/// shape (dims[l+1]). Smaller architectures read the top-left corner.
struct ParamSet {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;

    std::size_t num_layers() const { return weights.size(); }
};

/// An architecture together with its evaluated cross-entropy cost.
struct ArchSolution {
    Architecture arch;
    double cost = 0.0;
};

/// Column-per-example design matrix with binary labels.
struct Dataset {
    Matrix X;    // features x examples
    RowVector Y; // 1 x examples, entries 0 or 1

    int features() const { return static_cast<int>(X.rows()); }
    int examples() const { return static_cast<int>(X.cols()); }
};

/// Throws DataError if shapes disagree or labels fall outside {0, 1}.
void validate_dataset(const Dataset& data);

struct ForwardResult {
    RowVector output;                    // sigmoid activations, 1 x m
    std::vector<Matrix> pre_activations; // Z per layer, filled on request
    std::vector<Matrix> activations;     // A per layer, activations[0] = input
};

/// All-zero weights and biases sized by max_dims.
ParamSet init_zero_params(const Architecture& max_dims);

/// Top-left submatrices of `full` matching `arch`.
ParamSet trim_params(const ParamSet& full, const Architecture& arch);

/// ReLU hidden layers, sigmoid output. Accepts params at arch size or
/// larger; larger ones are read through their top-left corner.
ForwardResult forward(const ParamSet& params, const Architecture& arch,
                      const Matrix& X, bool keep_layers = false);

/// Cross-entropy J = -(1/m) sum[y log a + (1-y) log(1-a)], activations
/// clamped to [1e-12, 1 - 1e-12] before the logs.
double cost(const RowVector& output, const RowVector& Y);

/// forward + cost against a dataset.
double evaluate_cost(const ParamSet& params, const Architecture& arch,
                     const Dataset& data);

struct Prediction {
    RowVector labels;      // 0/1, label 1 iff activation >= 0.5
    double accuracy = 0.0; // fraction in [0,1]
};

Prediction predict(const ParamSet& params, const Architecture& arch,
                   const Matrix& X, const RowVector& Y);

} // namespace diga
