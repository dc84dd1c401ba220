#include "cellsheaf/alexandrov.hpp"

#include <algorithm>
#include <iterator>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

bool OpenSet::contains(ElementIndex x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
}

bool OpenSet::is_subset_of(const OpenSet& other) const {
    return is_subset(members_, other.members_);
}

std::size_t OpenSet::position(ElementIndex x) const {
    const auto it = std::lower_bound(members_.begin(), members_.end(), x);
    if (it == members_.end() || *it != x) throw InvalidArgument("element is not in the open set");
    return static_cast<std::size_t>(it - members_.begin());
}

AlexandrovSpace::AlexandrovSpace(PreOrder order)
    : order_(std::move(order)), strictly_above_(order_.size()) {
    for (ElementIndex x = 0; x < order_.size(); ++x) {
        for (ElementIndex y = 0; y < order_.size(); ++y) {
            if (x != y && order_.leq(x, y)) strictly_above_[x].push_back(y);
        }
    }
}

OpenSet AlexandrovSpace::open_star(ElementIndex x) const {
    if (x >= size()) throw InvalidArgument("element index out of range");
    ElementSet members;
    for (ElementIndex y = 0; y < size(); ++y) {
        if (order_.leq(x, y)) members.push_back(y);
    }
    return OpenSet(std::move(members));
}

ElementSet AlexandrovSpace::closure_of_point(ElementIndex x) const {
    if (x >= size()) throw InvalidArgument("element index out of range");
    ElementSet members;
    for (ElementIndex y = 0; y < size(); ++y) {
        if (order_.leq(y, x)) members.push_back(y);
    }
    return members;
}

std::optional<std::pair<ElementIndex, ElementIndex>> AlexandrovSpace::up_closure_violation(
    const ElementSet& s) const {
    std::vector<bool> in(size(), false);
    for (auto x : s) {
        if (x >= size()) throw InvalidArgument("element index out of range");
        in[x] = true;
    }
    for (auto x : s) {
        for (auto y : strictly_above_[x]) {
            if (!in[y]) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

bool AlexandrovSpace::is_open(const ElementSet& s) const { return !up_closure_violation(s); }

OpenSet AlexandrovSpace::make_open(ElementSet s) const {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (const auto v = up_closure_violation(s)) {
        throw InvalidArgument("set " + describe(s) + " is not open: it contains '" +
                              order_.name(v->first) + "' but not its successor '" +
                              order_.name(v->second) + "'");
    }
    return OpenSet(std::move(s));
}

OpenSet AlexandrovSpace::whole() const {
    ElementSet all(size());
    for (ElementIndex x = 0; x < size(); ++x) all[x] = x;
    return OpenSet(std::move(all));
}

OpenSet AlexandrovSpace::unite(const OpenSet& a, const OpenSet& b) const {
    return make_open(set_union(a.members(), b.members()));
}

OpenSet AlexandrovSpace::intersect(const OpenSet& a, const OpenSet& b) const {
    return make_open(set_intersection(a.members(), b.members()));
}

OpenSet AlexandrovSpace::union_of_stars(const std::vector<ElementIndex>& xs) const {
    ElementSet acc;
    for (auto x : xs) acc = set_union(acc, open_star(x).members());
    return make_open(std::move(acc));
}

BasisIndex AlexandrovSpace::basis_index(const OpenSet& u) const { return BasisIndex{u, u.members()}; }

BasisIndex AlexandrovSpace::basis_index_by_scan(const OpenSet& u) const {
    BasisIndex out{u, {}};
    for (ElementIndex x = 0; x < size(); ++x) {
        if (open_star(x).is_subset_of(u)) out.stars.push_back(x);
    }
    return out;
}

IndexLemmaReport AlexandrovSpace::check_index_lemma(const OpenSet& u1, const OpenSet& u2) const {
    const auto i1 = basis_index_by_scan(u1).stars;
    const auto i2 = basis_index_by_scan(u2).stars;
    const auto i12 = basis_index_by_scan(intersect(u1, u2)).stars;
    IndexLemmaReport r;
    r.inclusion = u1.is_subset_of(u2) == is_subset(i1, i2);
    r.equality = (u1 == u2) == (i1 == i2);
    r.intersection = i12 == set_intersection(i1, i2);
    return r;
}

std::vector<OpenSet> AlexandrovSpace::enumerate_opens(std::size_t max_elements) const {
    if (size() > max_elements) {
        throw InvalidArgument("space has " + std::to_string(size()) +
                              " elements; open-set enumeration is limited to " +
                              std::to_string(max_elements));
    }
    // Decide membership class by class, top-down along a reversed linear
    // extension, so every class strictly above x is settled before x.
    std::vector<ElementIndex> order;
    for (auto x : linear_extension(order_)) {
        bool first_of_class = true;
        for (ElementIndex y = 0; y < x && first_of_class; ++y) first_of_class = !order_.equivalent(x, y);
        if (first_of_class) order.push_back(x);
    }
    std::reverse(order.begin(), order.end());
    std::vector<OpenSet> out;
    std::vector<bool> in(size(), false);
    const auto set_class = [&](ElementIndex x, bool value) {
        for (ElementIndex y = 0; y < size(); ++y) {
            if (order_.equivalent(x, y)) in[y] = value;
        }
    };
    const auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == order.size()) {
            ElementSet members;
            for (ElementIndex x = 0; x < size(); ++x) {
                if (in[x]) members.push_back(x);
            }
            out.push_back(OpenSet(std::move(members)));
            return;
        }
        const ElementIndex x = order[depth];
        self(self, depth + 1);
        const bool includable =
            std::all_of(strictly_above_[x].begin(), strictly_above_[x].end(),
                        [&](ElementIndex y) { return in[y] || order_.leq(y, x); });
        if (includable) {
            set_class(x, true);
            self(self, depth + 1);
            set_class(x, false);
        }
    };
    recurse(recurse, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::string AlexandrovSpace::describe(const ElementSet& s) const {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ", ";
        out += order_.name(s[i]);
    }
    return out + "}";
}

bool is_continuous(const ElementMap& f) {
    if (f.image.size() != f.source.size()) return false;
    const AlexandrovSpace source(f.source);
    const AlexandrovSpace target(f.target);
    for (ElementIndex y = 0; y < f.target.size(); ++y) {
        const OpenSet star = target.open_star(y);
        ElementSet preimage;
        for (ElementIndex x = 0; x < f.source.size(); ++x) {
            if (star.contains(f.image[x])) preimage.push_back(x);
        }
        if (!source.is_open(preimage)) return false;
    }
    return true;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace cellsheaf
