#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "cellsheaf/sheaf.hpp"

namespace cellsheaf {

/// A family (s_p) for p in an open set, one vector per element. It is a
/// genuine section when rho_pq s_p = s_q for every p <= q inside the set.
struct Section {
    OpenSet open;
    /// Indexed like open.members().
    std::vector<Vector> components;

    const Vector& at(ElementIndex p) const { return components.at(open.position(p)); }
    friend bool operator==(const Section&, const Section&) = default;
};

bool is_compatible(const CellularSheaf& s, const Section& sec);

/// The sections over U as a subspace of the product of the stalks over U,
/// coordinates laid out element by element in members() order.
class SectionSpace {
public:
    SectionSpace(OpenSet open, std::vector<std::size_t> offsets, SubspaceBasis basis)
        : open_(std::move(open)), offsets_(std::move(offsets)), basis_(std::move(basis)) {}

    const OpenSet& open() const noexcept { return open_; }
    const SubspaceBasis& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.dim(); }
    std::size_t ambient_dim() const noexcept { return basis_.ambient_dim(); }
    /// Start of the block for the i-th member of the open set.
    std::size_t offset(std::size_t position) const { return offsets_.at(position); }

    Section section(std::size_t i) const { return unflatten(basis_.vector(i)); }
    Section from_coordinates(const Vector& coords) const;
    /// Throws InvalidArgument if the family is not a section over this open.
    Vector coordinates(const Section& sec) const;

    Vector flatten(const Section& sec) const;
    Section unflatten(const Vector& v) const;

private:
    OpenSet open_;
    std::vector<std::size_t> offsets_;
    SubspaceBasis basis_;
};

/// Kernel of (s_p) -> (rho_pq s_p - s_q) over covering pairs inside U.
/// Throws InvalidArgument if `u` is not an open set of the sheaf's base.
SectionSpace sections_over(const CellularSheaf& s, const OpenSet& u);
/// The same space from the constraints on every related pair in U: the
/// inverse limit over the basic opens contained in U, written out in full.
SectionSpace sections_over_all_pairs(const CellularSheaf& s, const OpenSet& u);

/// Componentwise restriction; throws InvalidArgument unless `target` is a
/// subset of sec.open.
Section restrict_section(const Section& sec, const OpenSet& target);

/// The unique section on the union of `cover` restricting to each local
/// section. Throws GluingError naming the element where two locals disagree,
/// and InvalidArgument when a local is not a section over its cover member.
Section glue(const CellularSheaf& s, const std::vector<OpenSet>& cover,
             const std::vector<Section>& locals);

/// The section over U_p extending a stalk vector v: (rho_pq v)_q.
Section extend_from_point(const CellularSheaf& s, ElementIndex p, const Vector& v);

/// Memoised section spaces and restriction matrices for one sheaf.
class SectionAtlas {
public:
    explicit SectionAtlas(const CellularSheaf& s) : sheaf_(&s) {}

    const CellularSheaf& sheaf() const noexcept { return *sheaf_; }
    const SectionSpace& over(const OpenSet& u);
    /// dim F(V) x dim F(U) matrix of the restriction F(U) -> F(V) in the
    /// two canonical bases. Requires V subset of U.
    const Matrix& restriction(const OpenSet& u, const OpenSet& v);

private:
    const CellularSheaf* sheaf_;
    std::map<ElementSet, std::unique_ptr<SectionSpace>> spaces_;
    std::map<std::pair<ElementSet, ElementSet>, Matrix> restrictions_;
};

/// dim F(U_p) x stalk_dim(p) matrix sending a stalk vector to the
/// coordinates of its extension over U_p. It is invertible.
Matrix extension_matrix(SectionAtlas& atlas, ElementIndex p);

/// Matrix reading basis coordinates off a vector of the subspace: the
/// pivot entries of an RREF basis are the coordinates.
Matrix coordinate_reader(const SubspaceBasis& b);

} // namespace cellsheaf
