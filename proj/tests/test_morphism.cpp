#include <doctest.h>

#include <cmath>
#include <random>

#include "cellsheaf/error.hpp"
#include "cellsheaf/morphism.hpp"
#include "support/fp_bruteforce.hpp"
#include "support/random_morphism.hpp"
#include "support/random_order.hpp"

using namespace cellsheaf;

namespace {

const Field Q = Field::rationals();

Poset two_chain() { return Poset::build({"a", "b"}, {{"a", "b"}}); }

Poset diamond() {
    return Poset::build({"p", "q1", "q2", "r"}, {{"p", "q1"}, {"p", "q2"}, {"q1", "r"}, {"q2", "r"}});
}

std::vector<Matrix> scaled_identities(const CellularSheaf& s, long long k) {
    std::vector<Matrix> out;
    for (ElementIndex p = 0; p < s.size(); ++p) out.push_back(Matrix::identity(s.stalk_dim(p)) * Scalar(k));
    return out;
}

// Natural families over F_2 counted by listing every tuple of components.
std::uint64_t count_natural_maps_f2(const CellularSheaf& s, const CellularSheaf& t) {
    std::size_t total = 0;
    for (ElementIndex p = 0; p < s.size(); ++p) total += s.stalk_dim(p) * t.stalk_dim(p);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << total); ++mask) {
        std::vector<Matrix> comps;
        std::size_t bit = 0;
        for (ElementIndex p = 0; p < s.size(); ++p) {
            Matrix c(t.stalk_dim(p), s.stalk_dim(p), s.field());
            for (std::size_t i = 0; i < c.rows(); ++i) {
                for (std::size_t j = 0; j < c.cols(); ++j) c.set(i, j, Scalar(static_cast<long long>(mask >> bit++ & 1)));
            }
            comps.push_back(std::move(c));
        }
        bool natural = true;
        for (ElementIndex p = 0; p < s.size() && natural; ++p) {
            for (ElementIndex q = 0; q < s.size() && natural; ++q) {
                if (s.base().less(p, q)) {
                    natural = t.full_map(p, q) * comps[p] == comps[q] * s.full_map(p, q);
                }
            }
        }
        if (natural) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("identity, zero and scaling are natural") {
    const auto s = testsupport::constant_sheaf(diamond(), 2);
    CHECK_NOTHROW(SheafMorphism::identity(s));
    CHECK_NOTHROW(SheafMorphism::zero(s, s));
    CHECK_NOTHROW(SheafMorphism::build(s, s, scaled_identities(s, 2)));
}

TEST_CASE("swapping coordinates against a shear is not natural") {
    const Matrix shear = Matrix::from_rows({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}});
    const Matrix swap = Matrix::from_rows({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
    const auto s = CellularSheaf::build(two_chain(), {2, 2}, {{{0, 1}, shear}});
    // shear * swap = [[1,1],[1,0]] while swap * shear = [[0,1],[1,1]].
    CHECK_FALSE(shear * swap == swap * shear);
    try {
        SheafMorphism::build(s, s, {swap, swap});
        FAIL("expected a naturality error");
    } catch (const NaturalityError& e) {
        CHECK(e.lower() == "a");
        CHECK(e.upper() == "b");
        CHECK(std::string(e.what()).find("[[1, 1], [1, 0]]") != std::string::npos);
    }
    CHECK_THROWS_AS(SheafMorphism::build(s, s, {swap}), InvalidArgument);
    CHECK_THROWS_AS(SheafMorphism::build(s, s, {swap, Matrix::identity(3)}), InvalidArgument);
    const auto other = testsupport::constant_sheaf(Poset::build({"a", "c"}, {{"a", "c"}}), 2);
    CHECK_THROWS_AS(SheafMorphism::zero(s, other), InvalidArgument);
}

TEST_CASE("natural on covering pairs means natural on every pair") {
    std::mt19937_64 rng(1);
    for (int iter = 0; iter < 60; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 6, 0.45);
        const auto m = testsupport::random_morphism(rng, P, Q);
        for (ElementIndex p = 0; p < P.size(); ++p) {
            for (ElementIndex q = 0; q < P.size(); ++q) {
                if (!P.leq(p, q)) continue;
                CHECK(m.target().full_map(p, q) * m.component(p) ==
                      m.component(q) * m.source().full_map(p, q));
            }
        }
    }
}

TEST_CASE("natural maps counted over F_2") {
    std::mt19937_64 rng(2);
    const Field f2 = Field::prime(2);
    int checked = 0;
    for (int iter = 0; iter < 60 && checked < 25; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 4, 0.5);
        const auto s = testsupport::random_sheaf(rng, P, f2, {2, 1, false, 0.3});
        const auto t = testsupport::random_sheaf(rng, P, f2, {2, 1, false, 0.3});
        std::size_t total = 0;
        for (ElementIndex p = 0; p < P.size(); ++p) total += s.stalk_dim(p) * t.stalk_dim(p);
        if (total > 14) continue;
        ++checked;
        const auto hom = hom_space(s, t);
        CHECK(count_natural_maps_f2(s, t) == (1ULL << hom.dim()));
    }
    CHECK(checked >= 20);
}

TEST_CASE("section maps") {
    const Poset P = diamond();
    const auto s = testsupport::constant_sheaf(P, 1);
    const auto& X = s.space();
    const auto id = SheafMorphism::identity(s);
    for (const auto& u : X.enumerate_opens()) {
        const Matrix sm = section_map(id, u);
        CHECK(sm == Matrix::identity(sm.rows()));
    }
    const auto twice = SheafMorphism::build(s, s, scaled_identities(s, 2));
    const auto u = X.union_of_stars({P.index("q1"), P.index("q2")});
    CHECK(section_map(twice, u) == Matrix::from_rows({{Scalar(2)}}));
}

TEST_CASE("section maps over open stars are the components after a change of basis") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 40; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 5, 0.45);
        const auto m = testsupport::random_morphism(rng, P, Q);
        SectionAtlas from(m.source());
        SectionAtlas to(m.target());
        for (ElementIndex p = 0; p < P.size(); ++p) {
            const Matrix sm = section_map(m, m.source().space().open_star(p), from, to);
            CHECK(sm * extension_matrix(from, p) == extension_matrix(to, p) * m.component(p));
        }
        CHECK(restrict_to_basis(m) == m.components());
    }
}

TEST_CASE("section maps commute with restriction") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 25; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 5, 0.45);
        const auto m = testsupport::random_morphism(rng, P, Q);
        SectionAtlas from(m.source());
        SectionAtlas to(m.target());
        const auto opens = m.source().space().enumerate_opens();
        for (const auto& u : opens) {
            for (const auto& v : opens) {
                if (!v.is_subset_of(u)) continue;
                CHECK(to.restriction(u, v) * section_map(m, u, from, to) ==
                      section_map(m, v, from, to) * from.restriction(u, v));
            }
        }
    }
}

TEST_CASE("stalk maps agree with the direct-limit construction") {
    std::mt19937_64 rng(5);
    const auto chain = two_chain();
    const auto s = testsupport::random_sheaf(rng, chain, Q, {2, 3, true, 0.2});
    const auto id = SheafMorphism::identity(s);
    CHECK(stalk_map(id, 0) == Matrix::identity(s.stalk_dim(0)));
    CHECK(stalk_map(SheafMorphism::zero(s, s), 1).is_zero());

    for (int iter = 0; iter < 40; ++iter) {
        const Poset P = iter < 10 ? chain : testsupport::random_poset(rng, 1 + iter % 5, 0.45);
        const auto m = testsupport::random_morphism(rng, P, Q);
        for (ElementIndex p = 0; p < P.size(); ++p) {
            const auto cmp = compare_stalk_map(m, p);
            CHECK(cmp.well_defined);
            CHECK(cmp.agrees);
        }
    }
}

TEST_CASE("classification") {
    const Poset P = diamond();
    const auto s = testsupport::constant_sheaf(P, 1);
    const auto c_id = classify(SheafMorphism::identity(s));
    CHECK((c_id.injective && c_id.surjective && c_id.isomorphism));
    CHECK(classify(SheafMorphism::build(s, s, scaled_identities(s, 2))).isomorphism);

    const auto big = testsupport::constant_sheaf(P, 2);
    std::vector<Matrix> inclusion(4, Matrix::from_rows({{Scalar(1)}, {Scalar(0)}}));
    const auto inc = SheafMorphism::build(s, big, inclusion);
    const auto c = classify(inc);
    CHECK(c.injective);
    CHECK_FALSE(c.surjective);
    CHECK_FALSE(c.isomorphism);
    const auto by_sections = classify_by_sections(inc);
    CHECK(by_sections.all_injective);
    CHECK_FALSE(by_sections.all_invertible);
}

TEST_CASE("stalkwise and section-level classifications agree") {
    std::mt19937_64 rng(6);
    int iso = 0, non_iso = 0, inj = 0, non_inj = 0;
    for (int iter = 0; iter < 80; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 5, 0.45);
        const auto m = testsupport::random_morphism(rng, P, Q);
        const auto c = classify(m);
        const auto sc = classify_by_sections(m);
        CHECK(c.isomorphism == sc.all_invertible);
        CHECK(c.injective == sc.all_injective);
        CHECK(c.surjective == sc.basic_surjective);
        (c.isomorphism ? iso : non_iso)++;
        (c.injective ? inj : non_inj)++;
    }
    CHECK(iso > 5);
    CHECK(non_iso > 5);
    CHECK(inj > 5);
    CHECK(non_inj > 5);
}

TEST_CASE("extension from the basis") {
    std::mt19937_64 rng(7);
    const Poset P = diamond();
    const auto s = testsupport::random_sheaf(rng, P, Q);
    CHECK(extend_from_basis(s, s, SheafMorphism::identity(s).components()) == SheafMorphism::identity(s));
    CHECK(extend_from_basis(s, s, SheafMorphism::zero(s, s).components()) == SheafMorphism::zero(s, s));

    const auto small = testsupport::constant_sheaf(P, 1);
    const auto big = testsupport::constant_sheaf(P, 2);
    std::vector<Matrix> family(4, Matrix::from_rows({{Scalar(1)}, {Scalar(0)}}));
    CHECK(classify(extend_from_basis(small, big, family)).injective);
    family[3] = Matrix::from_rows({{Scalar(0)}, {Scalar(1)}});
    CHECK_THROWS_AS(extend_from_basis(small, big, family), NaturalityError);

    for (int iter = 0; iter < 40; ++iter) {
        const Poset R = testsupport::random_poset(rng, 1 + iter % 5, 0.45);
        const auto m = testsupport::random_morphism(rng, R, Q);
        CHECK(extend_from_basis(m.source(), m.target(), restrict_to_basis(m)) == m);
        CHECK(check_unique_extension(m).passed());
    }
}

TEST_CASE("natural maps from the hom space satisfy naturality") {
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 30; ++iter) {
        const Poset P = testsupport::random_poset(rng, 1 + iter % 5, 0.5);
        const auto s = testsupport::random_sheaf(rng, P, Q);
        const auto t = testsupport::random_sheaf(rng, P, Q);
        const auto hom = hom_space(s, t);
        for (std::size_t i = 0; i < hom.dim(); ++i) {
            CHECK_NOTHROW(morphism_from_vector(s, t, hom.vector(i)));
        }
        // The identity always lies in the endomorphisms.
        const auto end = hom_space(s, s);
        Vector id;
        for (const auto& c : SheafMorphism::identity(s).components()) {
            for (std::size_t i = 0; i < c.rows(); ++i) {
                for (std::size_t j = 0; j < c.cols(); ++j) id.push_back(c(i, j));
            }
        }
        CHECK(end.contains(id));
    }
}
