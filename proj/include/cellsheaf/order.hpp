#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cellsheaf {

using ElementId = std::string;
using ElementIndex = std::size_t;

/// A finite preorder: reflexive and transitive relation over opaque element
/// identifiers. The order of `elements()` fixes every tie-break and every
/// output ordering in the library.
///
/// The relation is a dense boolean table; closure is Floyd-Warshall style.
class PreOrder {
public:
    PreOrder() = default;

    /// Smallest reflexive-transitive relation containing `pairs` (x <= y).
    /// Throws InvalidArgument on duplicate or unknown identifiers.
    static PreOrder build(std::vector<ElementId> elements,
                          const std::vector<std::pair<ElementId, ElementId>>& pairs);
    static PreOrder from_indices(std::vector<ElementId> elements,
                                 const std::vector<std::pair<ElementIndex, ElementIndex>>& pairs);

    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<ElementId>& elements() const noexcept { return elements_; }
    const ElementId& name(ElementIndex x) const { return elements_.at(x); }
    /// Throws InvalidArgument for an unknown identifier.
    ElementIndex index(const ElementId& id) const;
    std::optional<ElementIndex> find(const ElementId& id) const;

    bool leq(ElementIndex x, ElementIndex y) const noexcept { return table_[x * size() + y]; }
    bool less(ElementIndex x, ElementIndex y) const noexcept { return x != y && leq(x, y); }
    bool equivalent(ElementIndex x, ElementIndex y) const noexcept {
        return leq(x, y) && leq(y, x);
    }

    /// All related pairs (x, y) with x <= y, x != y, in row-major order.
    std::vector<std::pair<ElementIndex, ElementIndex>> strict_pairs() const;

    bool operator==(const PreOrder& other) const = default;

private:
    std::vector<ElementId> elements_;
    std::unordered_map<ElementId, ElementIndex> lookup_;
    std::vector<bool> table_;
};

/// Antisymmetry check.
bool is_poset(const PreOrder& p);

/// A preorder that is antisymmetric.
class Poset : public PreOrder {
public:
    Poset() = default;
    /// Throws InvalidArgument naming a two-cycle if `order` is not antisymmetric.
    explicit Poset(PreOrder order);

    static Poset build(std::vector<ElementId> elements,
                       const std::vector<std::pair<ElementId, ElementId>>& pairs) {
        return Poset(PreOrder::build(std::move(elements), pairs));
    }
};

/// An arbitrary function between the carriers of two preorders. Whether it is
/// order-preserving is a property checked by is_monotone.
struct ElementMap {
    PreOrder source;
    PreOrder target;
    std::vector<ElementIndex> image;

    ElementIndex operator()(ElementIndex x) const { return image.at(x); }
};

bool is_monotone(const ElementMap& f);
ElementMap identity_map(const PreOrder& p);

/// The poset of equivalence classes of x ~ y (x <= y and y <= x), with the
/// projection onto it.
struct QuotientResult {
    Poset quotient;
    ElementMap projection;
    /// Members of each class, ascending input order.
    std::vector<std::vector<ElementIndex>> classes;
};

/// Classes are the strongly connected components of the relation digraph
/// (mutual comparability, since the relation is already closed);
/// each class is named after its first member in input order and classes are
/// listed in order of that member.
QuotientResult quotient_to_poset(const PreOrder& p);

/// The unique monotone map g on the quotient with g after projection = f.
/// Throws InvalidArgument if f is not monotone, its source differs from the
/// quotient's source, or its target is not a poset.
ElementMap factor_through_quotient(const ElementMap& f, const QuotientResult& q);

/// Covering pairs (x, y): x < y with nothing strictly between, row-major.
std::vector<std::pair<ElementIndex, ElementIndex>> hasse_edges(const Poset& p);

/// Elements sorted so that x < y implies x comes first; ties follow input order.
std::vector<ElementIndex> linear_extension(const PreOrder& p);

} // namespace cellsheaf
