#include "diga/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diga/data_io.hpp"
#include "diga/engine.hpp"
#include "diga/gd.hpp"
#include "diga/report.hpp"

namespace diga {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json load_config_file(const std::string& path, const std::set<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown config key '" + key + "' in " + path);
    return j;
}

Architecture parse_dims(const std::string& text, const std::string& flag) {
    Architecture a;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string part = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            const int v = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            a.dims.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": '" + part + "' is not an integer in '" + text + "'");
        }
        pos = comma + 1;
    }
    return a;
}

Architecture dims_from_json(const json& j, const std::string& key) {
    if (!j.is_array()) throw ConfigError("config key '" + key + "' must be an integer array");
    Architecture a;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must hold integers");
        a.dims.push_back(v.get<int>());
    }
    return a;
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("DIGA_SEED");
    if (!env) return flag_seed;
    try {
        std::size_t used = 0;
        const std::string text(env);
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("DIGA_SEED is not an unsigned integer: '") + env + "'");
    }
}

Dataset load_train(const std::string& path, std::optional<double> normalize) {
    return load_dataset(path, normalize);
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

void print_summary(const RunRecord& rec, const fs::path& dir) {
    std::printf("final best cost %.17g after %ld iterations%s in %.2f s; artifacts in %s\n",
                rec.curve.empty() ? 0.0 : rec.curve.back().best_cost, rec.total_iterations,
                rec.stopped_early ? " (stopped early)" : "", rec.wall_seconds,
                dir.string().c_str());
}

struct EvolveArgs {
    std::string config_path;
    std::string max_dims_text;
    double stop_cost = 0.0;
    int size = 5;
    int max_iter = 20000;
    std::uint64_t seed = 42;
    double cr = 0.9;
    double par = 0.3;
    int pitch_span = 2;
    double rate_start = 0.9;
    double rate_end = 0.1;
    int mutation_max_iter = 20000;
    double scale = 0.008;
    std::string train_path;
    std::string test_path;
    std::string out_dir;
    std::optional<double> normalize;

    CLI::Option* max_dims_opt = nullptr;
    CLI::Option* stop_cost_opt = nullptr;
    CLI::Option* size_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* cr_opt = nullptr;
    CLI::Option* par_opt = nullptr;
    CLI::Option* pitch_opt = nullptr;
    CLI::Option* rate_start_opt = nullptr;
    CLI::Option* rate_end_opt = nullptr;
    CLI::Option* mut_iter_opt = nullptr;
    CLI::Option* scale_opt = nullptr;
};

int cmd_evolve(const EvolveArgs& args) {
    EvolutionConfig cfg;
    if (!args.config_path.empty()) {
        static const std::set<std::string> allowed{
            "size", "max_iter", "stop_cost", "max_dims",          "seed", "cr",
            "par",  "pitch_span", "rate_start", "rate_end", "mutation_max_iter", "scale"};
        const json j = load_config_file(args.config_path, allowed);
        if (j.contains("size")) cfg.size = j["size"].get<int>();
        if (j.contains("max_iter")) cfg.max_iter = j["max_iter"].get<int>();
        if (j.contains("stop_cost")) cfg.stop_cost = j["stop_cost"].get<double>();
        if (j.contains("max_dims")) cfg.max_dims = dims_from_json(j["max_dims"], "max_dims");
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("cr")) cfg.arch_search.cr = j["cr"].get<double>();
        if (j.contains("par")) cfg.arch_search.par = j["par"].get<double>();
        if (j.contains("pitch_span")) cfg.arch_search.pitch_span = j["pitch_span"].get<int>();
        if (j.contains("rate_start")) cfg.mutation.rate_start = j["rate_start"].get<double>();
        if (j.contains("rate_end")) cfg.mutation.rate_end = j["rate_end"].get<double>();
        if (j.contains("mutation_max_iter"))
            cfg.mutation.max_iter = j["mutation_max_iter"].get<int>();
        if (j.contains("scale")) cfg.mutation.scale = j["scale"].get<double>();
    }
    if (args.max_dims_opt->count()) cfg.max_dims = parse_dims(args.max_dims_text, "--max-dims");
    if (args.stop_cost_opt->count()) cfg.stop_cost = args.stop_cost;
    if (args.size_opt->count()) cfg.size = args.size;
    if (args.max_iter_opt->count()) cfg.max_iter = args.max_iter;
    if (args.seed_opt->count()) cfg.seed = args.seed;
    if (args.cr_opt->count()) cfg.arch_search.cr = args.cr;
    if (args.par_opt->count()) cfg.arch_search.par = args.par;
    if (args.pitch_opt->count()) cfg.arch_search.pitch_span = args.pitch_span;
    if (args.rate_start_opt->count()) cfg.mutation.rate_start = args.rate_start;
    if (args.rate_end_opt->count()) cfg.mutation.rate_end = args.rate_end;
    if (args.mut_iter_opt->count()) cfg.mutation.max_iter = args.mutation_max_iter;
    if (args.scale_opt->count()) cfg.mutation.scale = args.scale;
    if (cfg.max_dims.dims.empty())
        throw ConfigError("--max-dims is required (or supply max_dims in --config)");
    if (!(cfg.stop_cost > 0.0))
        throw ConfigError("--stop-cost is required (or supply stop_cost in --config)");
    cfg.seed = effective_seed(cfg.seed);
    cfg.arch_search.max_dims = cfg.max_dims;
    validate_evolution_config(cfg);

    const Dataset train = load_train(args.train_path, args.normalize);
    std::optional<Dataset> test;
    if (!args.test_path.empty()) test = load_dataset(args.test_path, args.normalize);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    json resolved;
    resolved["command"] = "evolve";
    resolved["size"] = cfg.size;
    resolved["max_iter"] = cfg.max_iter;
    resolved["stop_cost"] = cfg.stop_cost;
    resolved["max_dims"] = cfg.max_dims.dims;
    resolved["seed"] = cfg.seed;
    resolved["cr"] = cfg.arch_search.cr;
    resolved["par"] = cfg.arch_search.par;
    resolved["pitch_span"] = cfg.arch_search.pitch_span;
    resolved["rate_start"] = cfg.mutation.rate_start;
    resolved["rate_end"] = cfg.mutation.rate_end;
    resolved["mutation_max_iter"] = cfg.mutation.max_iter;
    resolved["scale"] = cfg.mutation.scale;
    resolved["train"] = args.train_path;
    resolved["test"] = args.test_path.empty() ? json() : json(args.test_path);
    resolved["normalize"] = args.normalize ? json(*args.normalize) : json();
    resolved["out"] = args.out_dir;
    write_json_file(dir / "config.resolved.json", resolved);

    const RunRecord rec = run_evolution(cfg, train, test ? &*test : nullptr);
    write_curve_csv((dir / "curve.csv").string(), rec);
    write_report_json((dir / "report.json").string(), rec);
    print_summary(rec, dir);
    return 0;
}

struct GdArgs {
    std::string config_path;
    std::string arch_text;
    double lr = 0.001;
    int iters = 0;
    std::uint64_t seed = 42;
    std::string train_path;
    std::string test_path;
    std::string out_dir;
    std::optional<double> normalize;

    CLI::Option* arch_opt = nullptr;
    CLI::Option* lr_opt = nullptr;
    CLI::Option* iters_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

int cmd_gd(const GdArgs& args) {
    GDConfig cfg;
    if (!args.config_path.empty()) {
        static const std::set<std::string> allowed{"arch", "learning_rate", "iterations", "seed",
                                                   "init_scale"};
        const json j = load_config_file(args.config_path, allowed);
        if (j.contains("arch")) cfg.arch = dims_from_json(j["arch"], "arch");
        if (j.contains("learning_rate")) cfg.learning_rate = j["learning_rate"].get<double>();
        if (j.contains("iterations")) cfg.iterations = j["iterations"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("init_scale")) cfg.init_scale = j["init_scale"].get<std::string>();
    }
    if (args.arch_opt->count()) cfg.arch = parse_dims(args.arch_text, "--arch");
    if (args.lr_opt->count()) cfg.learning_rate = args.lr;
    if (args.iters_opt->count()) cfg.iterations = args.iters;
    if (args.seed_opt->count()) cfg.seed = args.seed;
    if (cfg.arch.dims.empty())
        throw ConfigError("--arch is required (or supply arch in --config)");
    if (cfg.iterations < 1)
        throw ConfigError("--iters is required and must be >= 1 (or supply iterations in --config)");
    cfg.seed = effective_seed(cfg.seed);
    validate_gd_config(cfg);

    const Dataset train = load_train(args.train_path, args.normalize);
    std::optional<Dataset> test;
    if (!args.test_path.empty()) test = load_dataset(args.test_path, args.normalize);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    json resolved;
    resolved["command"] = "gd";
    resolved["arch"] = cfg.arch.dims;
    resolved["learning_rate"] = cfg.learning_rate;
    resolved["iterations"] = cfg.iterations;
    resolved["seed"] = cfg.seed;
    resolved["init_scale"] = cfg.init_scale;
    resolved["train"] = args.train_path;
    resolved["test"] = args.test_path.empty() ? json() : json(args.test_path);
    resolved["normalize"] = args.normalize ? json(*args.normalize) : json();
    resolved["out"] = args.out_dir;
    write_json_file(dir / "config.resolved.json", resolved);

    const RunRecord rec = gd_train(cfg, train, test ? &*test : nullptr);
    write_curve_csv((dir / "curve.csv").string(), rec);
    write_report_json((dir / "report.json").string(), rec);
    print_summary(rec, dir);
    return 0;
}

struct SynthArgs {
    int features = 50;
    int examples = 100;
    std::uint64_t seed = 42;
    bool separable = false;
    std::string out_path;
};

int cmd_synth(const SynthArgs& args) {
    const std::uint64_t seed = effective_seed(args.seed);
    const Dataset data = synth_dataset(args.features, args.examples, seed, args.separable);
    save_dataset(args.out_path, data);
    std::printf("wrote %dx%d dataset to %s\n", args.features, args.examples,
                args.out_path.c_str());
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Dual-individual evolution of layer sizes and weights for binary classifiers"};
    app.require_subcommand(1);

    EvolveArgs ev;
    CLI::App* evolve = app.add_subcommand("evolve", "Run the evolutionary trainer");
    evolve->add_option("--config", ev.config_path, "JSON config file");
    ev.max_dims_opt =
        evolve->add_option("--max-dims", ev.max_dims_text, "Layer size caps, e.g. 12288,20,5,1");
    ev.stop_cost_opt = evolve->add_option("--stop-cost", ev.stop_cost, "Stop when best cost drops below this");
    ev.size_opt = evolve->add_option("--size", ev.size, "Solutions per agent");
    ev.max_iter_opt = evolve->add_option("--max-iter", ev.max_iter, "Iteration cap");
    ev.seed_opt = evolve->add_option("--seed", ev.seed, "RNG seed");
    ev.cr_opt = evolve->add_option("--cr", ev.cr, "Consideration rate");
    ev.par_opt = evolve->add_option("--par", ev.par, "Pitch adjustment rate");
    ev.pitch_opt = evolve->add_option("--pitch-span", ev.pitch_span, "Pitch adjustment half-range");
    ev.rate_start_opt = evolve->add_option("--rate-start", ev.rate_start, "Initial mutation rate");
    ev.rate_end_opt = evolve->add_option("--rate-end", ev.rate_end, "Final mutation rate");
    ev.mut_iter_opt =
        evolve->add_option("--mutation-iters", ev.mutation_max_iter, "Mutation decay length");
    ev.scale_opt = evolve->add_option("--mutation-scale", ev.scale, "Mutation noise sigma");
    evolve->add_option("--train", ev.train_path, "Training dataset (DIGA1)")->required();
    evolve->add_option("--test", ev.test_path, "Test dataset (DIGA1)");
    evolve->add_option("--out", ev.out_dir, "Output directory")->required();
    evolve->add_option("--normalize", ev.normalize, "Divide features by this (e.g. 255)");

    GdArgs gd;
    CLI::App* gdcmd = app.add_subcommand("gd", "Run the gradient-descent baseline");
    gdcmd->add_option("--config", gd.config_path, "JSON config file");
    gd.arch_opt = gdcmd->add_option("--arch", gd.arch_text, "Layer sizes, e.g. 12288,17,4,1");
    gd.lr_opt = gdcmd->add_option("--lr", gd.lr, "Learning rate");
    gd.iters_opt = gdcmd->add_option("--iters", gd.iters, "Iteration count");
    gd.seed_opt = gdcmd->add_option("--seed", gd.seed, "RNG seed");
    gdcmd->add_option("--train", gd.train_path, "Training dataset (DIGA1)")->required();
    gdcmd->add_option("--test", gd.test_path, "Test dataset (DIGA1)");
    gdcmd->add_option("--out", gd.out_dir, "Output directory")->required();
    gdcmd->add_option("--normalize", gd.normalize, "Divide features by this (e.g. 255)");

    SynthArgs sy;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--features", sy.features, "Feature count");
    synth->add_option("--examples", sy.examples, "Example count");
    synth->add_option("--seed", sy.seed, "RNG seed");
    synth->add_flag("--separable", sy.separable, "Make the classes linearly separable");
    synth->add_option("--out", sy.out_path, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(evolve)) return cmd_evolve(ev);
        if (app.got_subcommand(gdcmd)) return cmd_gd(gd);
        return cmd_synth(sy);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace diga
