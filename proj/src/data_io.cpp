#include "diga/data_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace diga {

namespace {

constexpr char kMagic[5] = {'D', 'I', 'G', 'A', '1'};
constexpr std::size_t kHeaderBytes = 5 + 4 + 4 + 1;

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>(v >> 8 & 0xff),
                                static_cast<unsigned char>(v >> 16 & 0xff),
                                static_cast<unsigned char>(v >> 24 & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

float read_f32_le(const unsigned char* p) {
    const std::uint32_t bits = read_u32_le(p);
    float f;
    static_assert(sizeof f == 4);
    std::memcpy(&f, &bits, 4);
    return f;
}

void write_f32_le(std::ostream& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    write_u32_le(out, bits);
}

} // namespace

Dataset load_dataset(const std::string& path, std::optional<double> normalize_divisor) {
    if (normalize_divisor && !(*normalize_divisor > 0.0))
        throw ConfigError("normalize divisor must be > 0");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path);
    std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>()};
    if (bytes.size() < kHeaderBytes)
        throw DataError(path + ": truncated header, " + std::to_string(bytes.size()) +
                        " bytes before offset " + std::to_string(kHeaderBytes));
    if (std::memcmp(bytes.data(), kMagic, 5) != 0)
        throw DataError(path + ": bad magic at offset 0, expected DIGA1");
    const std::uint32_t features = read_u32_le(bytes.data() + 5);
    const std::uint32_t examples = read_u32_le(bytes.data() + 9);
    if (features == 0) throw DataError(path + ": feature count at offset 5 is 0");
    if (examples == 0) throw DataError(path + ": example count at offset 9 is 0");
    const unsigned char flag = bytes[13];
    if (flag != 1)
        throw DataError(path + ": label flag at offset 13 is " + std::to_string(flag) +
                        ", only labeled datasets (flag 1) are supported");
    const std::size_t feature_bytes = 4ull * features * examples;
    const std::size_t expected = kHeaderBytes + feature_bytes + examples;
    if (bytes.size() != expected)
        throw DataError(path + ": file is " + std::to_string(bytes.size()) +
                        " bytes, header at offset 5 implies " + std::to_string(expected));

    Dataset data;
    data.X.resize(features, examples);
    const unsigned char* p = bytes.data() + kHeaderBytes;
    for (std::uint32_t f = 0; f < features; ++f)
        for (std::uint32_t e = 0; e < examples; ++e, p += 4)
            data.X(f, e) = static_cast<double>(read_f32_le(p));
    if (normalize_divisor) data.X /= *normalize_divisor;

    data.Y.resize(examples);
    for (std::uint32_t e = 0; e < examples; ++e) {
        const unsigned char y = p[e];
        if (y > 1)
            throw DataError(path + ": label at offset " +
                            std::to_string(kHeaderBytes + feature_bytes + e) + " is " +
                            std::to_string(y) + ", must be 0 or 1");
        data.Y(e) = y;
    }
    validate_dataset(data);
    return data;
}

void save_dataset(const std::string& path, const Dataset& data) {
    validate_dataset(data);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path);
    out.write(kMagic, 5);
    write_u32_le(out, static_cast<std::uint32_t>(data.features()));
    write_u32_le(out, static_cast<std::uint32_t>(data.examples()));
    out.put(1);
    for (int f = 0; f < data.features(); ++f)
        for (int e = 0; e < data.examples(); ++e)
            write_f32_le(out, static_cast<float>(data.X(f, e)));
    for (int e = 0; e < data.examples(); ++e)
        out.put(data.Y(e) != 0.0 ? 1 : 0);
    if (!out) throw DataError("write failed: " + path);
}

Dataset synth_dataset(int features, int examples, std::uint64_t seed, bool separable) {
    if (features < 1) throw ConfigError("features must be >= 1, got " + std::to_string(features));
    if (examples < 1) throw ConfigError("examples must be >= 1, got " + std::to_string(examples));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Dataset data;
    data.X.resize(features, examples);
    data.Y.resize(examples);
    // Round through float32 so the values survive a save/load round trip.
    auto draw = [&] { return static_cast<double>(static_cast<float>(unit(rng))); };

    if (!separable) {
        for (int e = 0; e < examples; ++e)
            for (int f = 0; f < features; ++f) data.X(f, e) = draw();
        for (int e = 0; e < examples; ++e) data.Y(e) = unit(rng) < 0.5 ? 0.0 : 1.0;
        return data;
    }

    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector w(features);
    for (int f = 0; f < features; ++f) w(f) = gauss(rng);
    w.normalize();
    constexpr double margin = 0.1;
    for (int e = 0; e < examples; ++e) {
        double s = 0.0;
        for (int attempt = 0;; ++attempt) {
            for (int f = 0; f < features; ++f) data.X(f, e) = draw();
            s = w.dot(data.X.col(e) - Vector::Constant(features, 0.5));
            if (std::abs(s) >= margin) break;
            if (attempt >= 10000)
                throw SearchError("could not sample an example outside the margin band");
        }
        data.Y(e) = s > 0.0 ? 1.0 : 0.0;
    }
    return data;
}

} // namespace diga
