#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cellsheaf/alexandrov.hpp"
#include "cellsheaf/linalg.hpp"
#include "cellsheaf/order.hpp"

namespace cellsheaf {

using RelationPair = std::pair<ElementIndex, ElementIndex>;
/// Restriction matrices keyed by (p, q) with p < q; shape dim(q) x dim(p).
using RestrictionMaps = std::map<RelationPair, Matrix>;

/// A functor from a finite poset to finite-dimensional vector spaces: a
/// stalk dimension per element and a restriction matrix per relation p <= q.
class CellularSheaf {
public:
    CellularSheaf() = default;

    /// Maps are required on covering pairs; longer relations are derived by
    /// composition and must not depend on the path taken. A map given for a
    /// non-covering pair is checked against the composite. Missing maps into
    /// or out of a zero-dimensional stalk default to the empty matrix.
    ///
    /// Throws InvalidArgument on shape errors and FunctorialityError naming
    /// the pair and two disagreeing products when composition is ambiguous.
    static CellularSheaf build(Poset base, std::vector<std::size_t> dims,
                               const RestrictionMaps& maps, Field field = Field::rationals());

    const Poset& base() const noexcept { return base_; }
    const AlexandrovSpace& space() const noexcept { return space_; }
    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return dims_.size(); }

    std::size_t stalk_dim(ElementIndex p) const { return dims_.at(p); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    /// rho_pq for p <= q (identity when p == q). Throws unless p <= q.
    const Matrix& full_map(ElementIndex p, ElementIndex q) const;
    const std::vector<RelationPair>& covering_pairs() const noexcept { return covers_; }
    /// The maps on covering pairs, as a document would list them.
    RestrictionMaps edge_maps() const;

    friend bool operator==(const CellularSheaf& a, const CellularSheaf& b) {
        return a.base_ == b.base_ && a.field_ == b.field_ && a.dims_ == b.dims_ &&
               a.full_ == b.full_;
    }

private:
    CellularSheaf(Poset base, std::vector<std::size_t> dims, Field field);

    Poset base_;
    AlexandrovSpace space_{PreOrder()};
    Field field_;
    std::vector<std::size_t> dims_;
    std::vector<RelationPair> covers_;
    // Row-major n x n; entries for unrelated pairs are left empty.
    std::vector<Matrix> full_;
};

/// Copy of `m` with every entry converted into `field`.
Matrix convert_matrix(const Matrix& m, const Field& field);

} // namespace cellsheaf
