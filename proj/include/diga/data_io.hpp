#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "diga/model.hpp"

namespace diga {

/// Read a DIGA1 file: magic "DIGA1", u32 feature count, u32 example count,
/// u8 label flag (must be 1), float32 features in feature-major order, u8
/// labels. Features are divided by normalize_divisor when given.
Dataset load_dataset(const std::string& path,
                     std::optional<double> normalize_divisor = std::nullopt);

/// Write a DIGA1 file. Features are narrowed to float32.
void save_dataset(const std::string& path, const Dataset& data);

/// Random dataset with features uniform in [0,1]. Labels are uniform coin
/// flips, or, with separable=true, the side of a random hyperplane through
/// the feature-space center with every example at margin >= 0.1.
Dataset synth_dataset(int features, int examples, std::uint64_t seed, bool separable);

} // namespace diga
