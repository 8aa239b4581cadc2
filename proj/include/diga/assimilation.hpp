#pragma once

#include <vector>

#include "diga/arch_search.hpp"
#include "diga/model.hpp"

namespace diga {

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using BoolVector = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Per-cell "already written" flags mirroring a ParamSet's shapes.
struct WriteMask {
    std::vector<BoolMatrix> weights;
    std::vector<BoolVector> biases;
};

/// All-false mask with the same shapes as `like`.
WriteMask make_write_mask(const ParamSet& like);

/// Which ParamSet donates a solution's trimmed region during a merge.
enum class SourceTag { Lead, Foll, Off, Off1, Off2 };

struct TaggedSolution {
    ArchSolution solution;
    SourceTag source = SourceTag::Off;
};

/// Stable ascending sort by (dominance rank over the joined list, cost).
std::vector<TaggedSolution> rank_and_sort_tagged(const std::vector<TaggedSolution>& joined);

/// Copy donor's top-left `arch` region into target, only at cells not yet
/// claimed by `mask`; claims them. First writer wins across repeated pastes.
void masked_paste(ParamSet& target, const ParamSet& donor, const Architecture& arch,
                  WriteMask& mask);

struct MergeResult {
    ParamSet off_p;
    std::vector<ArchSolution> off_l;
};

/// Combine two offspring: rank the 2*size tagged solutions, walk them in
/// sorted order pasting each first-seen architecture's region from its own
/// offspring ParamSet into a zero-initialized one, then recompute costs
/// against the merged parameters and re-sort.
MergeResult merge_two_offs(const ParamSet& off1_p, const ParamSet& off2_p,
                           const std::vector<ArchSolution>& off1_l,
                           const std::vector<ArchSolution>& off2_l, const Dataset& data);

/// Fold the merged offspring back into both agents: rank all 3*size tagged
/// solutions, alternate assignment leader/follower (even/odd walk index)
/// with fallback to the other agent on duplicates, masked-paste each chosen
/// region into that agent's updated ParamSet, truncate or refill each list
/// to `size`, recompute costs and re-sort.
void anabolism(ParamSet& lead_p, ParamSet& foll_p, const ParamSet& off_p,
               std::vector<ArchSolution>& lead_l, std::vector<ArchSolution>& foll_l,
               const std::vector<ArchSolution>& off_l, const ArchSearchConfig& cfg,
               const Dataset& data, Rng& rng);

/// Re-evaluate and sort both agents, then swap them wholesale if the
/// follower's best cost strictly beats the leader's. Returns the swap flag.
bool update_lead_foll(ParamSet& lead_p, ParamSet& foll_p, std::vector<ArchSolution>& lead_l,
                      std::vector<ArchSolution>& foll_l, const Dataset& data);

} // namespace diga
