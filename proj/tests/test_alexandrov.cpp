#include <doctest.h>

#include <random>

#include "cellsheaf/alexandrov.hpp"
#include "cellsheaf/error.hpp"
#include "support/random_order.hpp"

using namespace cellsheaf;

namespace {

// p <= q1, q2 <= r.
Poset diamond() {
    return Poset::build({"p", "q1", "q2", "r"}, {{"p", "q1"}, {"p", "q2"}, {"q1", "r"}, {"q2", "r"}});
}

ElementSet from_mask(unsigned mask, std::size_t n) {
    ElementSet s;
    for (ElementIndex i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i);
    }
    return s;
}

// Up-sets by testing every subset against the definition.
std::vector<ElementSet> brute_force_opens(const PreOrder& p) {
    std::vector<ElementSet> out;
    for (unsigned mask = 0; mask < (1u << p.size()); ++mask) {
        bool up = true;
        for (ElementIndex x = 0; x < p.size(); ++x) {
            for (ElementIndex y = 0; y < p.size(); ++y) {
                if ((mask >> x & 1u) && p.leq(x, y) && !(mask >> y & 1u)) up = false;
            }
        }
        if (up) out.push_back(from_mask(mask, p.size()));
    }
    return out;
}

ElementSet names_to_set(const PreOrder& p, std::initializer_list<const char*> names) {
    ElementSet s;
    for (auto n : names) s.push_back(p.index(n));
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

TEST_CASE("open stars and point closures on the diamond") {
    const AlexandrovSpace X(diamond());
    const auto& P = X.order();
    CHECK(X.open_star("r").members() == names_to_set(P, {"r"}));
    CHECK(X.open_star("p").members() == names_to_set(P, {"p", "q1", "q2", "r"}));
    CHECK(X.open_star("q1").members() == names_to_set(P, {"q1", "r"}));
    CHECK(X.closure_of_point(P.index("p")) == names_to_set(P, {"p"}));
    CHECK(X.closure_of_point(P.index("r")) == names_to_set(P, {"p", "q1", "q2", "r"}));
    CHECK_THROWS_AS(X.open_star("nope"), InvalidArgument);
}

TEST_CASE("openness") {
    const AlexandrovSpace X(diamond());
    const auto& P = X.order();
    CHECK(X.is_open({}));
    CHECK(X.is_open(X.whole().members()));
    CHECK_FALSE(X.is_open(names_to_set(P, {"p"})));
    const auto witness = X.up_closure_violation(names_to_set(P, {"q1"}));
    REQUIRE(witness);
    CHECK(P.name(witness->first) == "q1");
    CHECK(P.name(witness->second) == "r");
    try {
        X.make_open(names_to_set(P, {"q1"}));
        FAIL("expected rejection");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("'r'") != std::string::npos);
    }
}

TEST_CASE("open-set enumeration") {
    SUBCASE("antichain of two") {
        const AlexandrovSpace X(Poset::build({"a", "b"}, {}));
        CHECK(X.enumerate_opens().size() == 4);
    }
    SUBCASE("two-chain") {
        const AlexandrovSpace X(Poset::build({"a", "b"}, {{"a", "b"}}));
        const auto opens = X.enumerate_opens();
        REQUIRE(opens.size() == 3);
        CHECK(opens[0].members() == ElementSet{});
        CHECK(opens[1].members() == ElementSet{1});
        CHECK(opens[2].members() == ElementSet{0, 1});
    }
    SUBCASE("diamond") {
        const AlexandrovSpace X(diamond());
        // {}, {r}, {q1,r}, {q2,r}, {q1,q2,r}, everything.
        CHECK(X.enumerate_opens().size() == brute_force_opens(X.order()).size());
        CHECK(X.enumerate_opens().size() == 6);
    }
    SUBCASE("bound") {
        const AlexandrovSpace X(Poset(PreOrder::from_indices(testsupport::element_names(6), {})));
        CHECK_THROWS_AS(X.enumerate_opens(5), InvalidArgument);
        CHECK(X.enumerate_opens(6).size() == 64);
    }
    SUBCASE("random preorders against brute force") {
        std::mt19937_64 rng(21);
        for (int iter = 0; iter < 200; ++iter) {
            const auto p = testsupport::random_preorder(rng, iter % 9, 0.2);
            const AlexandrovSpace X(p);
            const auto opens = X.enumerate_opens();
            auto expected = brute_force_opens(p);
            std::vector<ElementSet> got;
            for (const auto& u : opens) got.push_back(u.members());
            std::sort(expected.begin(), expected.end());
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
            CHECK(std::is_sorted(opens.begin(), opens.end()));
        }
    }
}

TEST_CASE("basis index") {
    const AlexandrovSpace X(diamond());
    const auto& P = X.order();
    const auto up = X.open_star("p");
    CHECK(X.basis_index(up).stars == X.basis_index_by_scan(up).stars);
    CHECK(X.basis_index_by_scan(up).stars == up.members());
    CHECK(X.basis_index(X.empty_open()).stars.empty());
    const auto u = X.unite(X.open_star("q1"), X.open_star("q2"));
    CHECK(X.basis_index_by_scan(u).stars == names_to_set(P, {"q1", "q2", "r"}));

    std::mt19937_64 rng(2);
    for (int iter = 0; iter < 100; ++iter) {
        const AlexandrovSpace Y(testsupport::random_preorder(rng, 1 + iter % 7));
        for (const auto& v : Y.enumerate_opens()) {
            CHECK(Y.basis_index(v).stars == Y.basis_index_by_scan(v).stars);
        }
    }
}

TEST_CASE("index lemma") {
    const AlexandrovSpace X(diamond());
    const auto a = X.open_star("q1");
    const auto b = X.open_star("p");
    const auto c = X.open_star("q2");
    CHECK(X.check_index_lemma(a, a).all());
    const auto strict = X.check_index_lemma(a, b);
    CHECK(strict.all());
    CHECK(a.is_subset_of(b));
    CHECK(is_subset(X.basis_index_by_scan(a).stars, X.basis_index_by_scan(b).stars));
    const auto r_only = X.open_star("r");
    const auto q1_only = X.make_open(names_to_set(X.order(), {"q1", "r"}));
    CHECK(X.check_index_lemma(q1_only, c).all());
    CHECK(X.intersect(q1_only, c) == r_only);

    std::mt19937_64 rng(6);
    for (int iter = 0; iter < 60; ++iter) {
        const AlexandrovSpace Y(testsupport::random_poset(rng, 1 + iter % 6));
        const auto opens = Y.enumerate_opens();
        for (const auto& u1 : opens) {
            for (const auto& u2 : opens) CHECK(Y.check_index_lemma(u1, u2).all());
        }
    }
}

TEST_CASE("disjoint opens have disjoint indices") {
    const AlexandrovSpace X(Poset::build({"a", "b"}, {}));
    const auto a = X.open_star("a");
    const auto b = X.open_star("b");
    CHECK(X.check_index_lemma(a, b).all());
    CHECK(X.basis_index_by_scan(X.intersect(a, b)).stars.empty());
}

TEST_CASE("continuity") {
    const Poset two = Poset::build({"a", "b"}, {{"a", "b"}});
    CHECK(is_continuous(identity_map(two)));
    const ElementMap swap{two, two, {1, 0}};
    CHECK_FALSE(is_continuous(swap));
    // The open {b} pulls back to {a}, which is not up-closed.
    const AlexandrovSpace X(two);
    CHECK_FALSE(X.is_open({0}));

    // Against the definition: every open of the target, all maps between
    // small random posets.
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 80; ++iter) {
        const Poset src = testsupport::random_poset(rng, 1 + iter % 4, 0.5);
        const Poset tgt = testsupport::random_poset(rng, 1 + (iter / 4) % 4, 0.5);
        const AlexandrovSpace S(src);
        const AlexandrovSpace T(tgt);
        const auto target_opens = T.enumerate_opens();
        for (const auto& img : testsupport::all_functions(src.size(), tgt.size())) {
            const ElementMap f{src, tgt, img};
            bool by_definition = true;
            for (const auto& v : target_opens) {
                ElementSet pre;
                for (ElementIndex x = 0; x < src.size(); ++x) {
                    if (v.contains(img[x])) pre.push_back(x);
                }
                by_definition &= S.is_open(pre);
            }
            CHECK(is_continuous(f) == by_definition);
            CHECK(is_continuous(f) == is_monotone(f));
        }
    }
}

TEST_CASE("topology laws on random preorders") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 120; ++iter) {
        const auto p = testsupport::random_preorder(rng, 1 + iter % 6, 0.2);
        const AlexandrovSpace X(p);
        const auto opens = X.enumerate_opens();
        for (const auto& u : opens) {
            CHECK(X.union_of_stars(u.members()) == u);
            ElementSet acc = X.whole().members();
            for (const auto& v : opens) {
                CHECK(X.is_open(set_union(u.members(), v.members())));
                CHECK(X.is_open(set_intersection(u.members(), v.members())));
            }
        }
        // Intersection of all opens in random families.
        for (int fam = 0; fam < 10; ++fam) {
            ElementSet acc = X.whole().members();
            for (const auto& u : opens) {
                if (rng() % 2) acc = set_intersection(acc, u.members());
            }
            CHECK(X.is_open(acc));
        }
        for (ElementIndex x = 0; x < p.size(); ++x) {
            for (ElementIndex y = 0; y < p.size(); ++y) {
                CHECK(X.open_star(x).is_subset_of(X.open_star(y)) == p.leq(y, x));
            }
            // The closure is the complement of the largest open missing x.
            ElementSet union_missing;
            for (const auto& u : opens) {
                if (!u.contains(x)) union_missing = set_union(union_missing, u.members());
            }
            ElementSet complement;
            for (ElementIndex y = 0; y < p.size(); ++y) {
                if (!std::binary_search(union_missing.begin(), union_missing.end(), y)) {
                    complement.push_back(y);
                }
            }
            CHECK(X.closure_of_point(x) == complement);
        }
    }
}

TEST_CASE("distinct points have distinct stars only in posets") {
    const AlexandrovSpace poset(diamond());
    for (ElementIndex x = 0; x < 4; ++x) {
        for (ElementIndex y = 0; y < 4; ++y) {
            CHECK((poset.open_star(x) == poset.open_star(y)) == (x == y));
        }
    }
    const AlexandrovSpace cycle(PreOrder::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
    CHECK(cycle.open_star("a") == cycle.open_star("b"));
    CHECK(cycle.enumerate_opens().size() == 2);
}
