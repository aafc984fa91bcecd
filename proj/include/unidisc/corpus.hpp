#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unidisc/diffgeo.hpp"

namespace unidisc {

/// Named function with, when a closed form exists, the true infimum of its
/// spherical derivative over the open disc.
struct CorpusEntry {
    std::string name;
    FunctionExpr expr;
    std::optional<double> analytic_eps;
    std::string analytic_notes;
};

/// the standard verification corpus: identity and scalings, sphere rotations,
/// exponentials, the extremal family, a Mobius map with an interior pole, and
/// Mobius pre/post-compositions
const std::vector<CorpusEntry>& corpus();

const CorpusEntry* corpus_find(std::string_view name);

/// analytic epsilon when the entry has one, otherwise a grid measurement
EpsilonEstimate corpus_epsilon(const CorpusEntry& entry, const GridSpec& measure_grid,
                               bool parallel = false);

/// default grid for measuring epsilon: dense, boundary-refined, r_max 0.999
GridSpec default_epsilon_grid();

}  // namespace unidisc
