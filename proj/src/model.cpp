#include "diga/model.hpp"

#include <cmath>
#include <string>

namespace diga {

void validate_architecture(const Architecture& arch) {
    if (arch.dims.size() < 2)
        throw ConfigError("architecture needs at least an input and an output layer, got " +
                          std::to_string(arch.dims.size()) + " entries");
    for (std::size_t i = 0; i < arch.dims.size(); ++i)
        if (arch.dims[i] < 1)
            throw ConfigError("architecture dim " + std::to_string(i) + " is " +
                              std::to_string(arch.dims[i]) + ", must be >= 1");
}

bool fits_within(const Architecture& arch, const Architecture& max_dims) {
    if (arch.dims.size() != max_dims.dims.size()) return false;
    for (std::size_t i = 0; i < arch.dims.size(); ++i)
        if (arch.dims[i] > max_dims.dims[i]) return false;
    return true;
}

void validate_dataset(const Dataset& data) {
    if (data.X.cols() != data.Y.cols())
        throw DataError("dataset has " + std::to_string(data.X.cols()) + " feature columns but " +
                        std::to_string(data.Y.cols()) + " labels");
    if (data.X.cols() == 0) throw DataError("dataset has no examples");
    for (int j = 0; j < data.Y.cols(); ++j)
        if (data.Y(j) != 0.0 && data.Y(j) != 1.0)
            throw DataError("label " + std::to_string(j) + " is " + std::to_string(data.Y(j)) +
                            ", must be 0 or 1");
}

ParamSet init_zero_params(const Architecture& max_dims) {
    validate_architecture(max_dims);
    ParamSet p;
    const int L = max_dims.num_layers();
    p.weights.reserve(L);
    p.biases.reserve(L);
    for (int l = 0; l < L; ++l) {
        p.weights.push_back(Matrix::Zero(max_dims.dims[l + 1], max_dims.dims[l]));
        p.biases.push_back(Vector::Zero(max_dims.dims[l + 1]));
    }
    return p;
}

ParamSet trim_params(const ParamSet& full, const Architecture& arch) {
    validate_architecture(arch);
    if (full.num_layers() != static_cast<std::size_t>(arch.num_layers()))
        throw DimensionError("parameter set has " + std::to_string(full.num_layers()) +
                             " layers, architecture wants " + std::to_string(arch.num_layers()));
    ParamSet p;
    const int L = arch.num_layers();
    p.weights.reserve(L);
    p.biases.reserve(L);
    for (int l = 0; l < L; ++l) {
        const int rows = arch.dims[l + 1];
        const int cols = arch.dims[l];
        if (full.weights[l].rows() < rows || full.weights[l].cols() < cols ||
            full.biases[l].size() < rows)
            throw DimensionError("layer " + std::to_string(l) + " params are smaller than " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        p.weights.push_back(full.weights[l].topLeftCorner(rows, cols));
        p.biases.push_back(full.biases[l].head(rows));
    }
    return p;
}

ForwardResult forward(const ParamSet& params, const Architecture& arch, const Matrix& X,
                      bool keep_layers) {
    validate_architecture(arch);
    if (X.rows() != arch.input_size())
        throw DimensionError("input has " + std::to_string(X.rows()) +
                             " features, architecture expects " +
                             std::to_string(arch.input_size()));
    const int L = arch.num_layers();
    if (params.num_layers() != static_cast<std::size_t>(L))
        throw DimensionError("parameter set has " + std::to_string(params.num_layers()) +
                             " layers, architecture wants " + std::to_string(L));

    ForwardResult r;
    if (keep_layers) {
        r.pre_activations.resize(L);
        r.activations.resize(L + 1);
        r.activations[0] = X;
    }
    Matrix A = X;
    for (int l = 0; l < L; ++l) {
        const int rows = arch.dims[l + 1];
        const int cols = arch.dims[l];
        if (params.weights[l].rows() < rows || params.weights[l].cols() < cols ||
            params.biases[l].size() < rows)
            throw DimensionError("layer " + std::to_string(l) + " params are smaller than " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        Matrix Z = params.weights[l].topLeftCorner(rows, cols) * A;
        Z.colwise() += params.biases[l].head(rows);
        if (l + 1 < L)
            A = Z.cwiseMax(0.0);
        else
            A = (1.0 + (-Z.array()).exp()).inverse().matrix();
        if (keep_layers) {
            r.pre_activations[l] = Z;
            r.activations[l + 1] = A;
        }
    }
    if (A.rows() != 1)
        throw DimensionError("output layer has " + std::to_string(A.rows()) +
                             " units, expected 1");
    r.output = A.row(0);
    return r;
}

double cost(const RowVector& output, const RowVector& Y) {
    if (output.cols() != Y.cols())
        throw DimensionError("output has " + std::to_string(output.cols()) + " columns, labels " +
                             std::to_string(Y.cols()));
    const int m = static_cast<int>(Y.cols());
    if (m == 0) throw DataError("cost needs at least one example");
    constexpr double eps = 1e-12;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        double a = output(j);
        if (a < eps) a = eps;
        if (a > 1.0 - eps) a = 1.0 - eps;
        sum += Y(j) * std::log(a) + (1.0 - Y(j)) * std::log(1.0 - a);
    }
    return -sum / m;
}

double evaluate_cost(const ParamSet& params, const Architecture& arch, const Dataset& data) {
    return cost(forward(params, arch, data.X).output, data.Y);
}

Prediction predict(const ParamSet& params, const Architecture& arch, const Matrix& X,
                   const RowVector& Y) {
    Prediction p;
    const RowVector out = forward(params, arch, X).output;
    p.labels.resize(out.cols());
    int hits = 0;
    for (int j = 0; j < out.cols(); ++j) {
        p.labels(j) = out(j) >= 0.5 ? 1.0 : 0.0;
        if (j < Y.cols() && p.labels(j) == Y(j)) ++hits;
    }
    p.accuracy = out.cols() > 0 ? hits / static_cast<double>(out.cols()) : 0.0;
    return p;
}

} // namespace diga
