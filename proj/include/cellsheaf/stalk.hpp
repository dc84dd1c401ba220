#pragma once

#include <cstddef>
#include <vector>

#include "cellsheaf/sections.hpp"

namespace cellsheaf {

/// The stalk at p computed as a direct limit: the direct sum of the section
/// spaces over every open set containing p, modulo the span of all
/// s - s|_V. Nothing here assumes that the smallest neighbourhood suffices.
struct StalkOracle {
    ElementIndex point = 0;
    /// The open sets containing the point, in canonical order.
    std::vector<OpenSet> neighbourhoods;
    /// Start of each neighbourhood's block in the direct sum (plus the total).
    std::vector<std::size_t> offsets;
    std::size_t dim = 0;
    /// dim x (direct sum) matrix sending a tuple of sections to its class.
    Matrix quotient_map;
    /// (direct sum) x dim matrix choosing a representative of each class;
    /// quotient_map * lift = identity.
    Matrix lift;
    /// dim x stalk_dim(p): v in the stalk space goes to the germ of the
    /// section over U_p extending it.
    Matrix germ_of_point;

    /// Block of the direct sum belonging to neighbourhood `i`.
    std::size_t block_start(std::size_t i) const { return offsets.at(i); }
};

struct StalkOracleOptions {
    std::size_t max_elements = kDefaultMaxElements;
    /// Use every pair V subset of U as a generator instead of only the pairs
    /// where V is U minus one minimal element. Both span the same relations.
    bool all_pairs = false;
};

StalkOracle stalk_oracle(const CellularSheaf& s, ElementIndex p,
                         const StalkOracleOptions& options = {});
StalkOracle stalk_oracle(SectionAtlas& atlas, ElementIndex p,
                         const StalkOracleOptions& options = {});

/// Compares the stalk space at p with the direct-limit stalk.
struct StalkReport {
    ElementIndex point = 0;
    std::size_t theorem_dim = 0;
    std::size_t oracle_dim = 0;
    /// The canonical map from the stalk space at p to the direct limit.
    Matrix iso_witness;
    bool witness_invertible = false;

    bool passed() const noexcept { return theorem_dim == oracle_dim && witness_invertible; }
};

StalkReport stalk_at(const CellularSheaf& s, ElementIndex p, const StalkOracleOptions& options = {});
StalkReport stalk_at(SectionAtlas& atlas, ElementIndex p, const StalkOracleOptions& options = {});

} // namespace cellsheaf
