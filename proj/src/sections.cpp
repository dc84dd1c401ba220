#include "cellsheaf/sections.hpp"

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

void require_open(const CellularSheaf& s, const OpenSet& u) {
    for (auto x : u.members()) {
        if (x >= s.size()) throw InvalidArgument("open set has an element outside the base");
    }
    if (const auto v = s.space().up_closure_violation(u.members())) {
        throw InvalidArgument("set " + s.space().describe(u.members()) + " is not open: missing '" +
                              s.base().name(v->second) + "' above '" + s.base().name(v->first) + "'");
    }
}

std::vector<std::size_t> offsets_for(const CellularSheaf& s, const OpenSet& u) {
    std::vector<std::size_t> offsets;
    std::size_t acc = 0;
    for (auto x : u.members()) {
        offsets.push_back(acc);
        acc += s.stalk_dim(x);
    }
    offsets.push_back(acc);
    return offsets;
}

// One block row per constraint pair: +rho_pq in column p, -I in column q.
SectionSpace kernel_over(const CellularSheaf& s, const OpenSet& u,
                         const std::vector<RelationPair>& pairs) {
    std::vector<std::size_t> col_sizes;
    for (auto x : u.members()) col_sizes.push_back(s.stalk_dim(x));
    std::vector<std::size_t> row_sizes;
    for (const auto& pq : pairs) row_sizes.push_back(s.stalk_dim(pq.second));
    BlockLayout layout(row_sizes, col_sizes, s.field());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto [p, q] = pairs[r];
        layout.add(r, u.position(p), s.full_map(p, q));
        layout.add(r, u.position(q), -Matrix::identity(s.stalk_dim(q), s.field()));
    }
    const Matrix constraints = layout.assemble();
    return SectionSpace(u, offsets_for(s, u), kernel_basis(constraints));
}

} // namespace

bool is_compatible(const CellularSheaf& s, const Section& sec) {
    const auto& m = sec.open.members();
    if (sec.components.size() != m.size()) return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] >= s.size() || sec.components[i].size() != s.stalk_dim(m[i])) return false;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j || !s.base().leq(m[i], m[j])) continue;
            if (s.full_map(m[i], m[j]).apply(sec.components[i]) != sec.components[j]) return false;
        }
    }
    return true;
}

Section SectionSpace::from_coordinates(const Vector& coords) const {
    if (coords.size() != dim()) throw InvalidArgument("coordinate vector has the wrong length");
    return unflatten(basis_.embedding().apply(coords));
}

Vector SectionSpace::coordinates(const Section& sec) const {
    if (!(sec.open == open_)) throw InvalidArgument("section lives over a different open set");
    return basis_.coordinates(flatten(sec));
}

Vector SectionSpace::flatten(const Section& sec) const {
    Vector v;
    v.reserve(ambient_dim());
    for (std::size_t i = 0; i < sec.components.size(); ++i) {
        if (sec.components[i].size() != offsets_[i + 1] - offsets_[i]) {
            throw InvalidArgument("section component has the wrong dimension");
        }
        v.insert(v.end(), sec.components[i].begin(), sec.components[i].end());
    }
    if (v.size() != ambient_dim()) throw InvalidArgument("section has the wrong number of components");
    return v;
}

Section SectionSpace::unflatten(const Vector& v) const {
    Section sec{open_, {}};
    for (std::size_t i = 0; i < open_.size(); ++i) {
        sec.components.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                                    v.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    }
    return sec;
}

SectionSpace sections_over(const CellularSheaf& s, const OpenSet& u) {
    require_open(s, u);
    std::vector<RelationPair> pairs;
    for (const auto& pq : s.covering_pairs()) {
        // Open sets are up-closed, so p in U already puts q in U.
        if (u.contains(pq.first)) pairs.push_back(pq);
    }
    return kernel_over(s, u, pairs);
}

SectionSpace sections_over_all_pairs(const CellularSheaf& s, const OpenSet& u) {
    require_open(s, u);
    std::vector<RelationPair> pairs;
    for (auto p : u.members()) {
        for (auto q : u.members()) {
            if (s.base().less(p, q)) pairs.emplace_back(p, q);
        }
    }
    return kernel_over(s, u, pairs);
}

Section restrict_section(const Section& sec, const OpenSet& target) {
    if (!target.is_subset_of(sec.open)) {
        throw InvalidArgument("restriction target is not contained in the section's open set");
    }
    Section out{target, {}};
    for (auto x : target.members()) out.components.push_back(sec.at(x));
    return out;
}

Section glue(const CellularSheaf& s, const std::vector<OpenSet>& cover,
             const std::vector<Section>& locals) {
    if (cover.size() != locals.size()) {
        throw InvalidArgument("cover and local sections differ in length");
    }
    ElementSet whole;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        require_open(s, cover[i]);
        if (!(locals[i].open == cover[i])) {
            throw InvalidArgument("local section " + std::to_string(i) +
                                  " is not defined over its cover member");
        }
        if (!is_compatible(s, locals[i])) {
            throw InvalidArgument("local section " + std::to_string(i) + " is not a section over " +
                                  s.space().describe(cover[i].members()));
        }
        whole = set_union(whole, cover[i].members());
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
            for (auto x : set_intersection(cover[i].members(), cover[j].members())) {
                const Vector& a = locals[i].at(x);
                const Vector& b = locals[j].at(x);
                if (a != b) {
                    throw GluingError(s.base().name(x), "local " + std::to_string(i) + " has " +
                                                            to_string(a) + ", local " +
                                                            std::to_string(j) + " has " +
                                                            to_string(b));
                }
            }
        }
    }
    Section out{s.space().make_open(whole), {}};
    for (auto x : out.open.members()) {
        for (std::size_t i = 0; i < cover.size(); ++i) {
            if (cover[i].contains(x)) {
                out.components.push_back(locals[i].at(x));
                break;
            }
        }
    }
    return out;
}

Section extend_from_point(const CellularSheaf& s, ElementIndex p, const Vector& v) {
    if (v.size() != s.stalk_dim(p)) throw InvalidArgument("stalk vector has the wrong dimension");
    Section out{s.space().open_star(p), {}};
    for (auto q : out.open.members()) out.components.push_back(s.full_map(p, q).apply(v));
    return out;
}

const SectionSpace& SectionAtlas::over(const OpenSet& u) {
    auto& slot = spaces_[u.members()];
    if (!slot) slot = std::make_unique<SectionSpace>(sections_over(*sheaf_, u));
    return *slot;
}

const Matrix& SectionAtlas::restriction(const OpenSet& u, const OpenSet& v) {
    const auto key = std::make_pair(u.members(), v.members());
    if (const auto it = restrictions_.find(key); it != restrictions_.end()) return it->second;
    if (!v.is_subset_of(u)) throw InvalidArgument("restriction target is not contained in the source");
    const SectionSpace& from = over(u);
    const SectionSpace& to = over(v);
    // Select the V-blocks of the ambient U-coordinates, then read pivots.
    Matrix select(to.ambient_dim(), from.ambient_dim(), sheaf_->field());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t src = from.offset(u.position(v.members()[i]));
        for (std::size_t k = 0; k < to.offset(i + 1) - to.offset(i); ++k) {
            select.set(to.offset(i) + k, src + k, Scalar(1));
        }
    }
    Matrix m = coordinate_reader(to.basis()) * (select * from.basis().embedding());
    return restrictions_.emplace(key, std::move(m)).first->second;
}

Matrix extension_matrix(SectionAtlas& atlas, ElementIndex p) {
    const CellularSheaf& s = atlas.sheaf();
    const SectionSpace& star = atlas.over(s.space().open_star(p));
    Matrix out(star.dim(), s.stalk_dim(p), s.field());
    for (std::size_t k = 0; k < s.stalk_dim(p); ++k) {
        Vector e(s.stalk_dim(p), Scalar(0).in(s.field()));
        e[k] = Scalar(1).in(s.field());
        const Vector c = star.coordinates(extend_from_point(s, p, e));
        for (std::size_t i = 0; i < c.size(); ++i) out.set(i, k, c[i]);
    }
    return out;
}

Matrix coordinate_reader(const SubspaceBasis& b) {
    Matrix out(b.dim(), b.ambient_dim(), b.field());
    for (std::size_t i = 0; i < b.dim(); ++i) out.set(i, b.pivots()[i], Scalar(1));
    return out;
}

} // namespace cellsheaf
