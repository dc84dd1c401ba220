#pragma once

// Random natural morphisms: isomorphisms by transporting a sheaf along
// invertible stalk maps, and arbitrary elements of the space of natural maps.

#include <random>

#include "cellsheaf/morphism.hpp"
#include "support/naive_linalg.hpp"
#include "support/random_sheaf.hpp"

namespace testsupport {

using cellsheaf::SheafMorphism;

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n, const Field& field) {
    while (true) {
        Matrix m = random_matrix(rng, n, n, field, 3, true, 0.3);
        if (cellsheaf::is_invertible(m)) return m;
    }
}

/// The sheaf t with sigma_pq = T_q rho_pq T_p^-1 and the isomorphism T: s -> t.
inline SheafMorphism random_isomorphism(std::mt19937_64& rng, const CellularSheaf& s) {
    std::vector<Matrix> t;
    for (ElementIndex p = 0; p < s.size(); ++p) t.push_back(random_invertible(rng, s.stalk_dim(p), s.field()));
    RestrictionMaps maps;
    for (const auto& [p, q] : s.covering_pairs()) {
        maps.emplace(std::make_pair(p, q), t[q] * s.full_map(p, q) * *cellsheaf::inverse(t[p]));
    }
    const auto target = CellularSheaf::build(s.base(), s.dims(), maps, s.field());
    return SheafMorphism::build(s, target, t);
}

/// A random combination of a basis of the natural maps s -> t.
inline SheafMorphism random_natural_map(std::mt19937_64& rng, const CellularSheaf& s,
                                        const CellularSheaf& t) {
    const auto hom = cellsheaf::hom_space(s, t);
    Vector v(hom.ambient_dim(), Scalar(0).in(s.field()));
    std::uniform_int_distribution<long long> coef(-2, 2);
    for (std::size_t i = 0; i < hom.dim(); ++i) {
        const Scalar c = Scalar(coef(rng)).in(s.field());
        const Vector b = hom.vector(i);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * b[k];
    }
    return cellsheaf::morphism_from_vector(s, t, v);
}

/// Mixes isomorphisms, maps into random sheaves, and endomorphisms.
inline SheafMorphism random_morphism(std::mt19937_64& rng, const Poset& base, const Field& field) {
    const auto s = random_sheaf(rng, base, field, {2, 3, true, 0.3});
    switch (rng() % 3) {
    case 0:
        return random_isomorphism(rng, s);
    case 1: {
        const auto t = random_sheaf(rng, base, field, {2, 3, true, 0.3});
        return random_natural_map(rng, s, t);
    }
    default: {
        // Endomorphisms of an isomorphic copy: often invertible, sometimes not.
        const auto iso = random_isomorphism(rng, s);
        return random_natural_map(rng, s, iso.target());
    }
    }
}

} // namespace testsupport
