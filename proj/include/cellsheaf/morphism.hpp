#pragma once

#include <cstddef>
#include <vector>

#include "cellsheaf/stalk.hpp"

namespace cellsheaf {

/// A natural family of linear maps phi(p): F(p) -> G(p) between two sheaves
/// on the same poset. Only the per-element components are stored; maps on
/// sections over other open sets are derived.
class SheafMorphism {
public:
    /// Throws InvalidArgument on mismatched bases, fields or shapes, and
    /// NaturalityError naming the covering pair where sigma phi(p) differs
    /// from phi(q) rho.
    static SheafMorphism build(CellularSheaf source, CellularSheaf target,
                               std::vector<Matrix> components);
    static SheafMorphism identity(const CellularSheaf& s);
    static SheafMorphism zero(const CellularSheaf& source, const CellularSheaf& target);

    const CellularSheaf& source() const noexcept { return source_; }
    const CellularSheaf& target() const noexcept { return target_; }
    const Matrix& component(ElementIndex p) const { return components_.at(p); }
    const std::vector<Matrix>& components() const& noexcept { return components_; }
    std::vector<Matrix> components() && { return std::move(components_); }

    friend bool operator==(const SheafMorphism&, const SheafMorphism&) = default;

private:
    SheafMorphism(CellularSheaf source, CellularSheaf target, std::vector<Matrix> components)
        : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

    CellularSheaf source_;
    CellularSheaf target_;
    std::vector<Matrix> components_;
};

/// The induced map F(U) -> G(U) in the canonical section bases.
Matrix section_map(const SheafMorphism& m, const OpenSet& u);
Matrix section_map(const SheafMorphism& m, const OpenSet& u, SectionAtlas& source_atlas,
                   SectionAtlas& target_atlas);

/// The stalk map at p; the stalk at p is the space attached to p.
inline const Matrix& stalk_map(const SheafMorphism& m, ElementIndex p) { return m.component(p); }

/// The stalk map computed on the direct limits of both sheaves, compared
/// with the component through the germ identifications.
struct StalkMapComparison {
    /// target oracle dim x source oracle dim.
    Matrix oracle_map;
    /// The oracle map kills the source relations, so it is well defined.
    bool well_defined = false;
    /// oracle_map * germ(source) == germ(target) * phi(p).
    bool agrees = false;
};

StalkMapComparison compare_stalk_map(const SheafMorphism& m, ElementIndex p,
                                     const StalkOracleOptions& options = {});

/// Stalkwise flags: phi is injective (surjective) when every component is.
struct MorphismClass {
    bool injective = false;
    bool surjective = false;
    bool isomorphism = false;
};

MorphismClass classify(const SheafMorphism& m);

/// The same properties read off the section maps of every open set.
struct SectionLevelClass {
    bool all_injective = true;
    bool all_surjective = true;
    bool all_invertible = true;
    /// Surjectivity restricted to the open stars.
    bool basic_surjective = true;
    std::size_t opens = 0;
};

SectionLevelClass classify_by_sections(const SheafMorphism& m,
                                       std::size_t max_elements = kDefaultMaxElements);

/// The morphism whose values on the open stars U_p are the given maps.
/// Naturality is checked on every inclusion U_q ⊆ U_p, not just covering
/// pairs; a failure throws NaturalityError.
SheafMorphism extend_from_basis(const CellularSheaf& source, const CellularSheaf& target,
                                const std::vector<Matrix>& basis_components);

/// phi(p) recovered from the section map over U_p by changing bases.
std::vector<Matrix> restrict_to_basis(const SheafMorphism& m);

/// For every open U: the restrictions G(U) -> G(U_x), x in U, are jointly
/// injective, so at most one map on U is compatible with the values on the
/// stars; and section_map(U) is compatible with them.
struct ExtensionReport {
    std::size_t opens = 0;
    std::size_t non_unique = 0;
    std::size_t incompatible = 0;

    bool passed() const noexcept { return non_unique == 0 && incompatible == 0; }
};

ExtensionReport check_unique_extension(const SheafMorphism& m,
                                       std::size_t max_elements = kDefaultMaxElements);

/// Every natural family F -> G as a subspace of the concatenated component
/// entries (component p row-major, elements in order).
SubspaceBasis hom_space(const CellularSheaf& source, const CellularSheaf& target);
/// Unpacks a vector of hom_space's ambient space into a morphism.
SheafMorphism morphism_from_vector(const CellularSheaf& source, const CellularSheaf& target,
                                   const Vector& v);

} // namespace cellsheaf
