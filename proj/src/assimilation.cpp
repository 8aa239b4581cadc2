#include "diga/assimilation.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace diga {

WriteMask make_write_mask(const ParamSet& like) {
    WriteMask m;
    m.weights.reserve(like.num_layers());
    m.biases.reserve(like.num_layers());
    for (std::size_t l = 0; l < like.num_layers(); ++l) {
        m.weights.push_back(
            BoolMatrix::Constant(like.weights[l].rows(), like.weights[l].cols(), false));
        m.biases.push_back(BoolVector::Constant(like.biases[l].size(), false));
    }
    return m;
}

std::vector<TaggedSolution> rank_and_sort_tagged(const std::vector<TaggedSolution>& joined) {
    std::vector<ArchSolution> bare;
    bare.reserve(joined.size());
    for (const auto& t : joined) bare.push_back(t.solution);
    const std::vector<int> rank = pareto_dominance_rank(bare);
    std::vector<std::size_t> order(joined.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rank[a] != rank[b]) return rank[a] < rank[b];
        return joined[a].solution.cost < joined[b].solution.cost;
    });
    std::vector<TaggedSolution> out;
    out.reserve(joined.size());
    for (std::size_t i : order) out.push_back(joined[i]);
    return out;
}

void masked_paste(ParamSet& target, const ParamSet& donor, const Architecture& arch,
                  WriteMask& mask) {
    validate_architecture(arch);
    const std::size_t L = target.num_layers();
    if (donor.num_layers() != L || mask.weights.size() != L ||
        static_cast<std::size_t>(arch.num_layers()) != L)
        throw DimensionError("masked_paste inputs disagree on layer count");
    for (std::size_t l = 0; l < L; ++l) {
        if (donor.weights[l].rows() != target.weights[l].rows() ||
            donor.weights[l].cols() != target.weights[l].cols() ||
            mask.weights[l].rows() != target.weights[l].rows() ||
            mask.weights[l].cols() != target.weights[l].cols() ||
            donor.biases[l].size() != target.biases[l].size() ||
            mask.biases[l].size() != target.biases[l].size())
            throw DimensionError("masked_paste shapes disagree at layer " + std::to_string(l));
        const int rows = arch.dims[l + 1];
        const int cols = arch.dims[l];
        if (rows > target.weights[l].rows() || cols > target.weights[l].cols())
            throw DimensionError("architecture exceeds parameter shapes at layer " +
                                 std::to_string(l));
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r)
                if (!mask.weights[l](r, c)) {
                    target.weights[l](r, c) = donor.weights[l](r, c);
                    mask.weights[l](r, c) = true;
                }
        for (int r = 0; r < rows; ++r)
            if (!mask.biases[l](r)) {
                target.biases[l](r) = donor.biases[l](r);
                mask.biases[l](r) = true;
            }
    }
}

MergeResult merge_two_offs(const ParamSet& off1_p, const ParamSet& off2_p,
                           const std::vector<ArchSolution>& off1_l,
                           const std::vector<ArchSolution>& off2_l, const Dataset& data) {
    if (off1_l.size() != off2_l.size())
        throw ConfigError("offspring lists differ in size: " + std::to_string(off1_l.size()) +
                          " vs " + std::to_string(off2_l.size()));
    if (off1_l.empty()) throw ConfigError("offspring lists are empty");
    const std::size_t size = off1_l.size();

    std::vector<TaggedSolution> joined;
    joined.reserve(2 * size);
    for (const auto& s : off1_l) joined.push_back({s, SourceTag::Off1});
    for (const auto& s : off2_l) joined.push_back({s, SourceTag::Off2});
    const std::vector<TaggedSolution> sorted = rank_and_sort_tagged(joined);

    MergeResult out;
    // off_p starts as zeros shaped like the offspring params
    for (std::size_t l = 0; l < off1_p.num_layers(); ++l) {
        out.off_p.weights.push_back(Matrix::Zero(off1_p.weights[l].rows(), off1_p.weights[l].cols()));
        out.off_p.biases.push_back(Vector::Zero(off1_p.biases[l].size()));
    }
    WriteMask mask = make_write_mask(out.off_p);

    std::vector<Architecture> selected;
    selected.reserve(size);
    for (const auto& t : sorted) {
        if (selected.size() >= size) break;
        if (std::find(selected.begin(), selected.end(), t.solution.arch) != selected.end())
            continue;
        const ParamSet& donor = t.source == SourceTag::Off1 ? off1_p : off2_p;
        masked_paste(out.off_p, donor, t.solution.arch, mask);
        selected.push_back(t.solution.arch);
    }

    std::vector<ArchSolution> fresh;
    fresh.reserve(selected.size());
    for (const auto& a : selected) fresh.push_back({a, evaluate_cost(out.off_p, a, data)});
    out.off_l = sort_solutions(fresh);
    return out;
}

namespace {

bool contains_arch(const std::vector<ArchSolution>& list, const Architecture& arch) {
    return std::any_of(list.begin(), list.end(),
                       [&](const ArchSolution& s) { return s.arch == arch; });
}

std::vector<Architecture> arch_list(const std::vector<ArchSolution>& sols) {
    std::vector<Architecture> out;
    out.reserve(sols.size());
    for (const auto& s : sols) out.push_back(s.arch);
    return out;
}

} // namespace

void anabolism(ParamSet& lead_p, ParamSet& foll_p, const ParamSet& off_p,
               std::vector<ArchSolution>& lead_l, std::vector<ArchSolution>& foll_l,
               const std::vector<ArchSolution>& off_l, const ArchSearchConfig& cfg,
               const Dataset& data, Rng& rng) {
    const std::size_t size = lead_l.size();
    if (size == 0) throw ConfigError("agent solution lists are empty");
    if (foll_l.size() != size || off_l.size() != size)
        throw ConfigError("solution lists differ in size: " + std::to_string(size) + "/" +
                          std::to_string(foll_l.size()) + "/" + std::to_string(off_l.size()));

    std::vector<TaggedSolution> joined;
    joined.reserve(3 * size);
    for (const auto& s : lead_l) joined.push_back({s, SourceTag::Lead});
    for (const auto& s : foll_l) joined.push_back({s, SourceTag::Foll});
    for (const auto& s : off_l) joined.push_back({s, SourceTag::Off});
    const std::vector<TaggedSolution> sorted = rank_and_sort_tagged(joined);

    ParamSet new_lead_p = lead_p;
    ParamSet new_foll_p = foll_p;
    WriteMask lead_mask = make_write_mask(new_lead_p);
    WriteMask foll_mask = make_write_mask(new_foll_p);
    std::vector<ArchSolution> new_lead_l;
    std::vector<ArchSolution> new_foll_l;

    auto donor_of = [&](SourceTag tag) -> const ParamSet& {
        switch (tag) {
            case SourceTag::Lead: return lead_p;
            case SourceTag::Foll: return foll_p;
            default: return off_p;
        }
    };

    for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
        const TaggedSolution& t = sorted[idx];
        const bool leader_turn = idx % 2 == 0;
        auto& primary = leader_turn ? new_lead_l : new_foll_l;
        auto& fallback = leader_turn ? new_foll_l : new_lead_l;
        auto& primary_p = leader_turn ? new_lead_p : new_foll_p;
        auto& fallback_p = leader_turn ? new_foll_p : new_lead_p;
        auto& primary_mask = leader_turn ? lead_mask : foll_mask;
        auto& fallback_mask = leader_turn ? foll_mask : lead_mask;
        if (!contains_arch(primary, t.solution.arch)) {
            masked_paste(primary_p, donor_of(t.source), t.solution.arch, primary_mask);
            primary.push_back(t.solution);
        } else if (!contains_arch(fallback, t.solution.arch)) {
            masked_paste(fallback_p, donor_of(t.source), t.solution.arch, fallback_mask);
            fallback.push_back(t.solution);
        }
        // present in both chosen sets: skipped entirely
    }

    if (new_lead_l.size() > size) new_lead_l.resize(size);
    if (new_foll_l.size() > size) new_foll_l.resize(size);

    const std::vector<ArchSolution> pool = unique_by_arch(
        [&] {
            std::vector<ArchSolution> all;
            all.reserve(joined.size());
            for (const auto& t : joined) all.push_back(t.solution);
            return all;
        }());
    auto fill = [&](std::vector<ArchSolution>& list, const ParamSet& params) {
        if (list.size() >= size) return;
        const int missing = static_cast<int>(size - list.size());
        const std::vector<Architecture> extra =
            create_new_solutions(pool, {}, cfg, missing, rng, arch_list(list));
        for (const auto& a : extra) list.push_back({a, evaluate_cost(params, a, data)});
    };
    fill(new_lead_l, new_lead_p);
    fill(new_foll_l, new_foll_p);

    for (auto& s : new_lead_l) s.cost = evaluate_cost(new_lead_p, s.arch, data);
    for (auto& s : new_foll_l) s.cost = evaluate_cost(new_foll_p, s.arch, data);

    lead_p = std::move(new_lead_p);
    foll_p = std::move(new_foll_p);
    lead_l = sort_solutions(new_lead_l);
    foll_l = sort_solutions(new_foll_l);
}

bool update_lead_foll(ParamSet& lead_p, ParamSet& foll_p, std::vector<ArchSolution>& lead_l,
                      std::vector<ArchSolution>& foll_l, const Dataset& data) {
    if (lead_l.empty() || foll_l.empty()) throw ConfigError("agent solution lists are empty");
    lead_l = update_and_sort(arch_list(lead_l), lead_p, data);
    foll_l = update_and_sort(arch_list(foll_l), foll_p, data);
    if (foll_l.front().cost < lead_l.front().cost) {
        std::swap(lead_p, foll_p);
        std::swap(lead_l, foll_l);
        return true;
    }
    return false;
}

} // namespace diga
