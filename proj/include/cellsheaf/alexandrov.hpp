#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellsheaf/order.hpp"

namespace cellsheaf {

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<ElementIndex>;

inline constexpr std::size_t kDefaultMaxElements = 20;

/// An up-closed subset of a preorder. Only AlexandrovSpace can mint one, so
/// holding an OpenSet means the up-closure check has passed.
class OpenSet {
public:
    /// The empty open set.
    OpenSet() = default;

    const ElementSet& members() const& noexcept { return members_; }
    /// By value on temporaries, so `for (x : space.open_star(p).members())` is safe.
    ElementSet members() && { return std::move(members_); }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(ElementIndex x) const;
    bool is_subset_of(const OpenSet& other) const;
    /// Position of x within members(); x must be a member.
    std::size_t position(ElementIndex x) const;

    friend bool operator==(const OpenSet&, const OpenSet&) = default;
    /// Canonical order: by size, then lexicographically by members.
    friend bool operator<(const OpenSet& a, const OpenSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members_ < b.members_;
    }

private:
    friend class AlexandrovSpace;
    explicit OpenSet(ElementSet members) : members_(std::move(members)) {}

    ElementSet members_;
};

/// I(U): the basic opens U_x contained in U, each identified with x.
struct BasisIndex {
    OpenSet open;
    std::vector<ElementIndex> stars;
};

/// The three biconditionals relating U1, U2 and I(U1), I(U2).
struct IndexLemmaReport {
    bool inclusion = false;    // U1 ⊆ U2  <=>  I(U1) ⊆ I(U2)
    bool equality = false;     // U1 = U2  <=>  I(U1) = I(U2)
    bool intersection = false; // I(U1 ∩ U2) = I(U1) ∩ I(U2)

    bool all() const noexcept { return inclusion && equality && intersection; }
};

/// The Alexandrov topology of a finite preorder: opens are the up-closed sets
/// and the open stars U_x = {y : x <= y} form a basis.
class AlexandrovSpace {
public:
    explicit AlexandrovSpace(PreOrder order);

    const PreOrder& order() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }

    OpenSet open_star(ElementIndex x) const;
    OpenSet open_star(const ElementId& x) const { return open_star(order_.index(x)); }
    /// {y : y <= x}, the closure of the point x.
    ElementSet closure_of_point(ElementIndex x) const;

    bool is_open(const ElementSet& s) const;
    /// A pair (x, y) with x in s, x <= y and y not in s, if one exists.
    std::optional<std::pair<ElementIndex, ElementIndex>> up_closure_violation(
        const ElementSet& s) const;
    /// Sorts and dedupes `s`; throws InvalidArgument naming the missing
    /// successor when s is not up-closed.
    OpenSet make_open(ElementSet s) const;

    OpenSet empty_open() const { return OpenSet(); }
    OpenSet whole() const;
    OpenSet unite(const OpenSet& a, const OpenSet& b) const;
    OpenSet intersect(const OpenSet& a, const OpenSet& b) const;
    /// Union of the stars of the given elements.
    OpenSet union_of_stars(const std::vector<ElementIndex>& xs) const;

    /// Uses x ∈ U <=> U_x ⊆ U.
    BasisIndex basis_index(const OpenSet& u) const;
    /// Same result by testing star containment for every element.
    BasisIndex basis_index_by_scan(const OpenSet& u) const;

    IndexLemmaReport check_index_lemma(const OpenSet& u1, const OpenSet& u2) const;

    /// Every open set, in canonical order. Throws InvalidArgument when the
    /// space has more than `max_elements` points.
    std::vector<OpenSet> enumerate_opens(std::size_t max_elements = kDefaultMaxElements) const;

    std::string describe(const ElementSet& s) const;

private:
    PreOrder order_;
    std::vector<std::vector<ElementIndex>> strictly_above_;
};

/// Whether the preimage of every open set of the target is open in the source.
/// Preimages commute with unions, so testing the basic opens of the target is
/// enough.
bool is_continuous(const ElementMap& f);

ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);

} // namespace cellsheaf
