#include "cellsheaf/axioms.hpp"

#include <algorithm>
#include <random>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

std::size_t AxiomReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CoverCheck& c) { return !c.passed(); }));
}

std::string describe_cover(const AlexandrovSpace& space, const std::vector<OpenSet>& cover) {
    std::string out = "[";
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (i > 0) out += ", ";
        out += space.describe(cover[i].members());
    }
    return out + "]";
}

namespace {

// Stacked rho_{x z} for z in W: the section over W extending a vector at x.
Matrix flat_extension(const CellularSheaf& s, ElementIndex x, const OpenSet& w) {
    std::vector<std::size_t> rows;
    for (auto z : w.members()) rows.push_back(s.stalk_dim(z));
    BlockLayout layout(rows, {s.stalk_dim(x)}, s.field());
    for (std::size_t i = 0; i < w.size(); ++i) layout.add(i, 0, s.full_map(x, w.members()[i]));
    return layout.assemble();
}

CoverCheck check_basic_cover(SectionAtlas& atlas, ElementIndex p, const std::vector<ElementIndex>& xs) {
    const CellularSheaf& s = atlas.sheaf();
    const AlexandrovSpace& X = s.space();
    const Field& field = s.field();
    CoverCheck check;
    check.open = X.open_star(p);
    for (auto x : xs) check.cover.push_back(X.open_star(x));

    std::vector<std::size_t> cover_dims;
    for (auto x : xs) cover_dims.push_back(s.stalk_dim(x));

    BlockLayout phi(cover_dims, {s.stalk_dim(p)}, field);
    for (std::size_t i = 0; i < xs.size(); ++i) phi.add(i, 0, s.full_map(p, xs[i]));

    // Rows indexed by (i, j, z) with U_z inside U_i ∩ U_j, every ordered pair.
    struct Row {
        std::size_t i, j;
        ElementIndex z;
    };
    std::vector<Row> rows;
    std::vector<std::size_t> row_dims;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const OpenSet w = X.intersect(check.cover[i], check.cover[j]);
            for (auto z : X.basis_index(w).stars) {
                rows.push_back({i, j, z});
                row_dims.push_back(s.stalk_dim(z));
            }
        }
    }
    BlockLayout psi(row_dims, cover_dims, field);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto [i, j, z] = rows[r];
        psi.add(r, j, s.full_map(xs[j], z));
        psi.add(r, i, -s.full_map(xs[i], z));
    }
    const Matrix phi_m = phi.assemble();
    check.injective = is_injective(phi_m);
    check.exact = is_exact_at(phi_m, psi.assemble());

    // Overlaps as single open sets, in section coordinates.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<OpenSet> overlaps;
    std::vector<std::size_t> overlap_dims;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            pairs.emplace_back(i, j);
            overlaps.push_back(X.intersect(check.cover[i], check.cover[j]));
            overlap_dims.push_back(atlas.over(overlaps.back()).dim());
        }
    }
    BlockLayout psi2(overlap_dims, cover_dims, field);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto [i, j] = pairs[r];
        const Matrix reader = coordinate_reader(atlas.over(overlaps[r]).basis());
        psi2.add(r, j, reader * flat_extension(s, xs[j], overlaps[r]));
        psi2.add(r, i, -(reader * flat_extension(s, xs[i], overlaps[r])));
    }
    check.intersection_form_exact = is_exact_at(phi_m, psi2.assemble());
    return check;
}

} // namespace

CoverCheck check_cover(SectionAtlas& atlas, const OpenSet& u, const std::vector<OpenSet>& cover) {
    const CellularSheaf& s = atlas.sheaf();
    const AlexandrovSpace& X = s.space();
    const Field& field = s.field();
    ElementSet covered;
    for (const auto& c : cover) {
        if (!c.is_subset_of(u)) throw InvalidArgument("cover member is not contained in the open set");
        covered = set_union(covered, c.members());
    }
    if (covered != u.members()) throw InvalidArgument("family does not cover the open set");

    CoverCheck check;
    check.open = u;
    check.cover = cover;
    std::vector<std::size_t> cover_dims;
    for (const auto& c : cover) cover_dims.push_back(atlas.over(c).dim());

    BlockLayout phi(cover_dims, {atlas.over(u).dim()}, field);
    for (std::size_t i = 0; i < cover.size(); ++i) phi.add(i, 0, atlas.restriction(u, cover[i]));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<OpenSet> overlaps;
    std::vector<std::size_t> overlap_dims;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
            pairs.emplace_back(i, j);
            overlaps.push_back(X.intersect(cover[i], cover[j]));
            overlap_dims.push_back(atlas.over(overlaps.back()).dim());
        }
    }
    BlockLayout psi(overlap_dims, cover_dims, field);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto [i, j] = pairs[r];
        psi.add(r, j, atlas.restriction(cover[j], overlaps[r]));
        psi.add(r, i, -atlas.restriction(cover[i], overlaps[r]));
    }
    const Matrix phi_m = phi.assemble();
    check.injective = is_injective(phi_m);
    check.exact = is_exact_at(phi_m, psi.assemble());
    return check;
}

AxiomReport verify_base_sheaf_axioms(const CellularSheaf& s) {
    SectionAtlas atlas(s);
    return verify_base_sheaf_axioms(atlas);
}

AxiomReport verify_base_sheaf_axioms(SectionAtlas& atlas) {
    const CellularSheaf& s = atlas.sheaf();
    const AlexandrovSpace& X = s.space();
    AxiomReport report;
    std::vector<ElementIndex> points(s.size());
    for (ElementIndex p = 0; p < s.size(); ++p) points[p] = p;
    // Canonical order of the open stars.
    std::stable_sort(points.begin(), points.end(),
                     [&](ElementIndex a, ElementIndex b) { return X.open_star(a) < X.open_star(b); });
    report.opens_total = s.size();
    for (auto p : points) {
        ++report.opens_checked;
        std::vector<ElementIndex> others;
        for (auto x : X.open_star(p).members()) {
            if (x != p) others.push_back(x);
        }
        if (others.size() >= 8 * sizeof(unsigned long long) - 1) {
            throw InvalidArgument("open star too large for exhaustive cover enumeration");
        }
        for (unsigned long long mask = 0; mask < (1ULL << others.size()); ++mask) {
            std::vector<ElementIndex> xs{p};
            for (std::size_t i = 0; i < others.size(); ++i) {
                if (mask >> i & 1ULL) xs.push_back(others[i]);
            }
            std::sort(xs.begin(), xs.end());
            report.checks.push_back(check_basic_cover(atlas, p, xs));
        }
    }
    return report;
}

AxiomReport verify_sheaf_axioms_extended(const CellularSheaf& s, const ExtendedAxiomOptions& options) {
    SectionAtlas atlas(s);
    return verify_sheaf_axioms_extended(atlas, options);
}

AxiomReport verify_sheaf_axioms_extended(SectionAtlas& atlas, const ExtendedAxiomOptions& options) {
    const CellularSheaf& s = atlas.sheaf();
    const AlexandrovSpace& X = s.space();
    std::mt19937_64 rng(options.seed);
    AxiomReport report;

    const std::vector<OpenSet> all = X.enumerate_opens(options.max_elements);
    report.opens_total = all.size();
    std::vector<OpenSet> chosen = all;
    if (chosen.size() > options.cover_budget) {
        std::shuffle(chosen.begin(), chosen.end(), rng);
        chosen.resize(options.cover_budget);
        std::sort(chosen.begin(), chosen.end());
    }

    for (const auto& u : chosen) {
        ++report.opens_checked;
        std::vector<OpenSet> inside;
        for (const auto& v : all) {
            if (!v.empty() && v.is_subset_of(u)) inside.push_back(v);
        }
        std::vector<OpenSet> canonical;
        for (auto x : u.members()) canonical.push_back(X.open_star(x));
        canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
        report.checks.push_back(check_cover(atlas, u, canonical));

        if (inside.empty()) continue;
        for (std::size_t k = 0; k < options.random_covers; ++k) {
            std::vector<OpenSet> cover;
            const std::size_t picks = 1 + rng() % std::min<std::size_t>(4, inside.size());
            for (std::size_t t = 0; t < picks; ++t) cover.push_back(inside[rng() % inside.size()]);
            // Patch holes with random members containing the missing point.
            while (true) {
                ElementSet covered;
                for (const auto& c : cover) covered = set_union(covered, c.members());
                if (covered == u.members()) break;
                ElementIndex missing = 0;
                for (auto x : u.members()) {
                    if (!std::binary_search(covered.begin(), covered.end(), x)) {
                        missing = x;
                        break;
                    }
                }
                std::vector<const OpenSet*> options_for;
                for (const auto& v : inside) {
                    if (v.contains(missing)) options_for.push_back(&v);
                }
                cover.push_back(*options_for[rng() % options_for.size()]);
            }
            std::sort(cover.begin(), cover.end());
            cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
            report.checks.push_back(check_cover(atlas, u, cover));
        }
    }
    return report;
}

} // namespace cellsheaf
