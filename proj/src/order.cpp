#include "cellsheaf/order.hpp"

#include <algorithm>
#include <numeric>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

PreOrder PreOrder::build(std::vector<ElementId> elements,
                         const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    std::unordered_map<ElementId, ElementIndex> lookup;
    for (ElementIndex i = 0; i < elements.size(); ++i) {
        if (!lookup.emplace(elements[i], i).second) {
            throw InvalidArgument("duplicate element '" + elements[i] + "'");
        }
    }
    std::vector<std::pair<ElementIndex, ElementIndex>> indexed;
    indexed.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        const auto ix = lookup.find(x);
        const auto iy = lookup.find(y);
        if (ix == lookup.end()) throw InvalidArgument("unknown element '" + x + "' in relation");
        if (iy == lookup.end()) throw InvalidArgument("unknown element '" + y + "' in relation");
        indexed.emplace_back(ix->second, iy->second);
    }
    return from_indices(std::move(elements), indexed);
}

PreOrder PreOrder::from_indices(std::vector<ElementId> elements,
                                const std::vector<std::pair<ElementIndex, ElementIndex>>& pairs) {
    PreOrder p;
    const std::size_t n = elements.size();
    for (ElementIndex i = 0; i < n; ++i) {
        if (!p.lookup_.emplace(elements[i], i).second) {
            throw InvalidArgument("duplicate element '" + elements[i] + "'");
        }
    }
    p.elements_ = std::move(elements);
    p.table_.assign(n * n, false);
    for (ElementIndex i = 0; i < n; ++i) p.table_[i * n + i] = true;
    for (const auto& [x, y] : pairs) {
        if (x >= n || y >= n) throw InvalidArgument("relation index out of range");
        p.table_[x * n + y] = true;
    }
    for (ElementIndex k = 0; k < n; ++k) {
        for (ElementIndex i = 0; i < n; ++i) {
            if (!p.table_[i * n + k]) continue;
            for (ElementIndex j = 0; j < n; ++j) {
                if (p.table_[k * n + j]) p.table_[i * n + j] = true;
            }
        }
    }
    return p;
}

ElementIndex PreOrder::index(const ElementId& id) const {
    const auto it = lookup_.find(id);
    if (it == lookup_.end()) throw InvalidArgument("unknown element '" + id + "'");
    return it->second;
}

std::optional<ElementIndex> PreOrder::find(const ElementId& id) const {
    const auto it = lookup_.find(id);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<ElementIndex, ElementIndex>> PreOrder::strict_pairs() const {
    std::vector<std::pair<ElementIndex, ElementIndex>> out;
    for (ElementIndex x = 0; x < size(); ++x) {
        for (ElementIndex y = 0; y < size(); ++y) {
            if (less(x, y)) out.emplace_back(x, y);
        }
    }
    return out;
}

bool is_poset(const PreOrder& p) {
    for (ElementIndex x = 0; x < p.size(); ++x) {
        for (ElementIndex y = x + 1; y < p.size(); ++y) {
            if (p.equivalent(x, y)) return false;
        }
    }
    return true;
}

Poset::Poset(PreOrder order) : PreOrder(std::move(order)) {
    for (ElementIndex x = 0; x < size(); ++x) {
        for (ElementIndex y = x + 1; y < size(); ++y) {
            if (equivalent(x, y)) {
                throw InvalidArgument("not a poset: '" + name(x) + "' <= '" + name(y) + "' and '" +
                                      name(y) + "' <= '" + name(x) + "'");
            }
        }
    }
}

bool is_monotone(const ElementMap& f) {
    if (f.image.size() != f.source.size()) return false;
    for (ElementIndex x = 0; x < f.source.size(); ++x) {
        if (f.image[x] >= f.target.size()) return false;
    }
    for (ElementIndex x = 0; x < f.source.size(); ++x) {
        for (ElementIndex y = 0; y < f.source.size(); ++y) {
            if (f.source.leq(x, y) && !f.target.leq(f.image[x], f.image[y])) return false;
        }
    }
    return true;
}

ElementMap identity_map(const PreOrder& p) {
    ElementMap f{p, p, std::vector<ElementIndex>(p.size())};
    std::iota(f.image.begin(), f.image.end(), ElementIndex{0});
    return f;
}

QuotientResult quotient_to_poset(const PreOrder& p) {
    constexpr ElementIndex unassigned = static_cast<ElementIndex>(-1);
    std::vector<ElementIndex> class_of(p.size(), unassigned);
    std::vector<std::vector<ElementIndex>> classes;
    for (ElementIndex x = 0; x < p.size(); ++x) {
        if (class_of[x] != unassigned) continue;
        const ElementIndex c = classes.size();
        classes.emplace_back();
        for (ElementIndex y = x; y < p.size(); ++y) {
            if (p.equivalent(x, y)) {
                class_of[y] = c;
                classes.back().push_back(y);
            }
        }
    }
    std::vector<ElementId> names;
    std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
    for (const auto& members : classes) names.push_back(p.name(members.front()));
    for (ElementIndex a = 0; a < classes.size(); ++a) {
        for (ElementIndex b = 0; b < classes.size(); ++b) {
            if (a != b && p.leq(classes[a].front(), classes[b].front())) pairs.emplace_back(a, b);
        }
    }
    Poset quotient(PreOrder::from_indices(std::move(names), pairs));
    ElementMap projection{p, quotient, class_of};
    return QuotientResult{std::move(quotient), std::move(projection), std::move(classes)};
}

ElementMap factor_through_quotient(const ElementMap& f, const QuotientResult& q) {
    if (!(f.source == q.projection.source)) {
        throw InvalidArgument("map source is not the quotiented preorder");
    }
    if (!is_poset(f.target)) throw InvalidArgument("map target is not a poset");
    if (!is_monotone(f)) throw InvalidArgument("map is not order-preserving");
    ElementMap bar{q.quotient, f.target, {}};
    bar.image.reserve(q.classes.size());
    for (const auto& members : q.classes) bar.image.push_back(f.image[members.front()]);
    return bar;
}

std::vector<std::pair<ElementIndex, ElementIndex>> hasse_edges(const Poset& p) {
    std::vector<std::pair<ElementIndex, ElementIndex>> out;
    for (const auto& [x, y] : p.strict_pairs()) {
        bool covered = true;
        for (ElementIndex z = 0; z < p.size() && covered; ++z) {
            if (p.less(x, z) && p.less(z, y)) covered = false;
        }
        if (covered) out.emplace_back(x, y);
    }
    return out;
}

std::vector<ElementIndex> linear_extension(const PreOrder& p) {
    std::vector<std::size_t> below(p.size(), 0);
    for (ElementIndex x = 0; x < p.size(); ++x) {
        for (ElementIndex y = 0; y < p.size(); ++y) {
            if (p.leq(y, x)) ++below[x];
        }
    }
    std::vector<ElementIndex> order(p.size());
    std::iota(order.begin(), order.end(), ElementIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](ElementIndex a, ElementIndex b) { return below[a] < below[b]; });
    return order;
}

} // namespace cellsheaf
