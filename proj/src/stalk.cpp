#include "cellsheaf/stalk.hpp"

#include <map>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

StalkOracle stalk_oracle(const CellularSheaf& s, ElementIndex p, const StalkOracleOptions& options) {
    SectionAtlas atlas(s);
    return stalk_oracle(atlas, p, options);
}

StalkOracle stalk_oracle(SectionAtlas& atlas, ElementIndex p, const StalkOracleOptions& options) {
    const CellularSheaf& s = atlas.sheaf();
    if (p >= s.size()) throw InvalidArgument("unknown element index");
    const Field& field = s.field();

    StalkOracle out;
    out.point = p;
    std::map<ElementSet, std::size_t> index_of;
    for (auto& u : s.space().enumerate_opens(options.max_elements)) {
        if (!u.contains(p)) continue;
        index_of.emplace(u.members(), out.neighbourhoods.size());
        out.neighbourhoods.push_back(std::move(u));
    }
    std::size_t total = 0;
    for (const auto& u : out.neighbourhoods) {
        out.offsets.push_back(total);
        total += atlas.over(u).dim();
    }
    out.offsets.push_back(total);

    // Generators s - s|_V, written in the direct sum.
    std::vector<Vector> generators;
    const auto add_pair = [&](std::size_t iu, std::size_t iv) {
        const Matrix& r = atlas.restriction(out.neighbourhoods[iu], out.neighbourhoods[iv]);
        for (std::size_t k = 0; k < r.cols(); ++k) {
            Vector g(total, Scalar(0).in(field));
            g[out.offsets[iu] + k] = Scalar(1).in(field);
            for (std::size_t i = 0; i < r.rows(); ++i) g[out.offsets[iv] + i] -= r(i, k);
            generators.push_back(std::move(g));
        }
    };
    for (std::size_t iu = 0; iu < out.neighbourhoods.size(); ++iu) {
        const OpenSet& u = out.neighbourhoods[iu];
        if (options.all_pairs) {
            for (std::size_t iv = 0; iv < out.neighbourhoods.size(); ++iv) {
                if (iv != iu && out.neighbourhoods[iv].is_subset_of(u)) add_pair(iu, iv);
            }
            continue;
        }
        // Any V subset of U (both containing p) is reached by removing
        // minimal elements one at a time, and the differences telescope.
        for (auto m : u.members()) {
            if (m == p) continue;
            ElementSet rest;
            for (auto x : u.members()) {
                if (x != m) rest.push_back(x);
            }
            if (!s.space().is_open(rest)) continue;
            add_pair(iu, index_of.at(rest));
        }
    }

    const SubspaceBasis relations = SubspaceBasis::span(generators, total, field);
    std::vector<bool> is_pivot(total, false);
    for (auto c : relations.pivots()) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < total; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    out.dim = free_cols.size();
    out.quotient_map = Matrix(out.dim, total, field);
    out.lift = Matrix(total, out.dim, field);
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        out.quotient_map.set(t, free_cols[t], Scalar(1));
        out.lift.set(free_cols[t], t, Scalar(1));
    }
    // A pivot column stands for minus the rest of its relation row.
    const Matrix& rb = relations.basis();
    for (std::size_t i = 0; i < relations.dim(); ++i) {
        const std::size_t pc = relations.pivots()[i];
        for (std::size_t t = 0; t < free_cols.size(); ++t) {
            out.quotient_map.set(t, pc, -rb(i, free_cols[t]));
        }
    }

    const OpenSet star = s.space().open_star(p);
    const std::size_t istar = index_of.at(star.members());
    const SectionSpace& star_sections = atlas.over(star);
    const Matrix extend = extension_matrix(atlas, p);
    out.germ_of_point =
        out.quotient_map.block(0, out.offsets[istar], out.dim, star_sections.dim()) * extend;
    return out;
}

StalkReport stalk_at(const CellularSheaf& s, ElementIndex p, const StalkOracleOptions& options) {
    SectionAtlas atlas(s);
    return stalk_at(atlas, p, options);
}

StalkReport stalk_at(SectionAtlas& atlas, ElementIndex p, const StalkOracleOptions& options) {
    const StalkOracle oracle = stalk_oracle(atlas, p, options);
    StalkReport r;
    r.point = p;
    r.theorem_dim = atlas.sheaf().stalk_dim(p);
    r.oracle_dim = oracle.dim;
    r.iso_witness = oracle.germ_of_point;
    r.witness_invertible = is_invertible(oracle.germ_of_point);
    return r;
}

} // namespace cellsheaf
