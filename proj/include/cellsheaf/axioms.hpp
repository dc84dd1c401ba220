#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cellsheaf/sections.hpp"

namespace cellsheaf {

/// One exactness check of 0 -> F(U) -phi-> prod F(U_i) -psi-> prod over overlaps.
struct CoverCheck {
    OpenSet open;
    std::vector<OpenSet> cover;
    bool injective = false; // phi has zero kernel
    bool exact = false;     // image(phi) = kernel(psi)
    /// For basic covers: the same sequence with the overlaps taken as whole
    /// intersections U_i ∩ U_j rather than the basic opens inside them.
    bool intersection_form_exact = true;

    bool passed() const noexcept { return injective && exact && intersection_form_exact; }
};

struct AxiomReport {
    std::vector<CoverCheck> checks;
    std::size_t opens_checked = 0;
    std::size_t opens_total = 0;

    std::size_t failures() const;
    bool passed() const { return failures() == 0; }
};

/// Every cover of every open star U_p by open stars, with overlaps indexed
/// by the basic opens inside each U_i ∩ U_j. Every such cover contains U_p
/// itself, since p lies in U_x only when x <= p.
AxiomReport verify_base_sheaf_axioms(const CellularSheaf& s);
AxiomReport verify_base_sheaf_axioms(SectionAtlas& atlas);

struct ExtendedAxiomOptions {
    std::uint64_t seed = 0;
    std::size_t random_covers = 50;
    /// Largest number of open sets checked; beyond this a seeded sample is used.
    std::size_t cover_budget = 1024;
    std::size_t max_elements = kDefaultMaxElements;
};

/// For each open U: the canonical cover by stars plus seeded random covers by
/// open subsets of U, checked on the section spaces.
AxiomReport verify_sheaf_axioms_extended(const CellularSheaf& s,
                                         const ExtendedAxiomOptions& options = {});
AxiomReport verify_sheaf_axioms_extended(SectionAtlas& atlas,
                                         const ExtendedAxiomOptions& options = {});

/// Exactness at F(U) and at the product for the given cover of U.
CoverCheck check_cover(SectionAtlas& atlas, const OpenSet& u, const std::vector<OpenSet>& cover);

std::string describe_cover(const AlexandrovSpace& space, const std::vector<OpenSet>& cover);

} // namespace cellsheaf
