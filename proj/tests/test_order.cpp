#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cellsheaf/error.hpp"
#include "cellsheaf/order.hpp"
#include "support/random_order.hpp"

using namespace cellsheaf;
using testsupport::IndexPairs;

namespace {

// Power set of {1,2} under inclusion, bitmask-named.
Poset power_set_of_two() {
    return Poset::build({"{}", "{1}", "{2}", "{1,2}"},
                        {{"{}", "{1}"}, {"{}", "{2}"}, {"{1}", "{1,2}"}, {"{2}", "{1,2}"}});
}

// Covering pairs by definition, straight from a reachability matrix.
IndexPairs brute_force_reduction(const std::vector<std::vector<bool>>& reach) {
    const std::size_t n = reach.size();
    IndexPairs out;
    for (ElementIndex x = 0; x < n; ++x) {
        for (ElementIndex y = 0; y < n; ++y) {
            if (x == y || !reach[x][y]) continue;
            bool between = false;
            for (ElementIndex z = 0; z < n; ++z) {
                if (z != x && z != y && reach[x][z] && reach[z][y]) between = true;
            }
            if (!between) out.emplace_back(x, y);
        }
    }
    return out;
}

bool same_relation(const PreOrder& p, const std::vector<std::vector<bool>>& reach) {
    for (ElementIndex x = 0; x < p.size(); ++x) {
        for (ElementIndex y = 0; y < p.size(); ++y) {
            if (p.leq(x, y) != reach[x][y]) return false;
        }
    }
    return true;
}

// Order isomorphism by trying every bijection (small inputs only).
bool order_isomorphic(const PreOrder& a, const PreOrder& b) {
    if (a.size() != b.size()) return false;
    std::vector<ElementIndex> perm(a.size());
    for (ElementIndex i = 0; i < a.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (ElementIndex x = 0; x < a.size() && ok; ++x) {
            for (ElementIndex y = 0; y < a.size() && ok; ++y) {
                ok = a.leq(x, y) == b.leq(perm[x], perm[y]);
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace

TEST_CASE("preorder closure") {
    const auto single = PreOrder::build({"a"}, {});
    CHECK(single.leq(0, 0));
    CHECK(single.strict_pairs().empty());

    const auto chain = PreOrder::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(chain.leq(chain.index("a"), chain.index("c")));
    CHECK_FALSE(chain.leq(chain.index("c"), chain.index("a")));

    const auto cycle = PreOrder::build({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    CHECK(cycle.leq(0, 1));
    CHECK(cycle.leq(1, 0));
    CHECK_FALSE(is_poset(cycle));
    CHECK_THROWS_AS(Poset{cycle}, InvalidArgument);

    CHECK_THROWS_AS(PreOrder::build({"a"}, {{"a", "z"}}), InvalidArgument);
    CHECK_THROWS_AS(PreOrder::build({"a", "a"}, {}), InvalidArgument);
    CHECK_THROWS_AS(chain.index("zz"), InvalidArgument);
}

TEST_CASE("closure agrees with graph reachability") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 1 + iter % 8;
        std::bernoulli_distribution keep(0.2);
        IndexPairs gens;
        for (ElementIndex i = 0; i < n; ++i) {
            for (ElementIndex j = 0; j < n; ++j) {
                if (keep(rng)) gens.emplace_back(i, j);
            }
        }
        const auto p = PreOrder::from_indices(testsupport::element_names(n), gens);
        CHECK(same_relation(p, testsupport::reachability(n, gens)));
    }
}

TEST_CASE("poset recognition") {
    CHECK(is_poset(PreOrder::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
    CHECK(is_poset(power_set_of_two()));
}

TEST_CASE("quotient of a poset is isomorphic to it") {
    const Poset p = power_set_of_two();
    const auto q = quotient_to_poset(p);
    CHECK(q.quotient.size() == p.size());
    CHECK(q.quotient.elements() == p.elements());
    for (ElementIndex x = 0; x < p.size(); ++x) CHECK(q.projection(x) == x);
}

TEST_CASE("two-cycle collapses to a point") {
    const auto cycle = PreOrder::build({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    const auto q = quotient_to_poset(cycle);
    CHECK(q.quotient.size() == 1);
    CHECK(q.quotient.name(0) == "a");
    CHECK(q.classes == std::vector<std::vector<ElementIndex>>{{0, 1}});
    const auto comp = testsupport::tarjan_components(2, {{0, 1}, {1, 0}});
    CHECK(comp[0] == comp[1]);
}

TEST_CASE("cardinality preorder on subsets of a three-element set") {
    // Generators: A -> B whenever |A| <= |B|; the preorder is their closure.
    std::vector<std::string> names;
    std::vector<int> sizes;
    for (int mask = 0; mask < 8; ++mask) {
        std::string name = "{";
        for (int bit = 0; bit < 3; ++bit) {
            if (mask & (1 << bit)) name += std::to_string(bit + 1);
        }
        names.push_back(name + "}");
        sizes.push_back(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    IndexPairs gens;
    for (ElementIndex a = 0; a < 8; ++a) {
        for (ElementIndex b = 0; b < 8; ++b) {
            if (a != b && sizes[a] <= sizes[b]) gens.emplace_back(a, b);
        }
    }
    const auto p = PreOrder::from_indices(names, gens);
    CHECK_FALSE(is_poset(p));
    const auto q = quotient_to_poset(p);

    const auto comp = testsupport::tarjan_components(8, gens);
    CHECK(std::set<std::size_t>(comp.begin(), comp.end()).size() == 4);
    for (ElementIndex a = 0; a < 8; ++a) {
        for (ElementIndex b = 0; b < 8; ++b) {
            CHECK((comp[a] == comp[b]) == (q.projection(a) == q.projection(b)));
        }
    }
    REQUIRE(q.quotient.size() == 4);
    // A 4-chain: every pair comparable, exactly three covering pairs.
    for (ElementIndex x = 0; x < 4; ++x) {
        for (ElementIndex y = 0; y < 4; ++y) {
            CHECK((q.quotient.leq(x, y) || q.quotient.leq(y, x)));
        }
    }
    CHECK(hasse_edges(q.quotient).size() == 3);
}

TEST_CASE("factoring maps through the quotient") {
    std::mt19937_64 rng(5);
    const auto cycle = PreOrder::build({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}});
    const auto q = quotient_to_poset(cycle);

    SUBCASE("the projection factors as the identity") {
        const ElementMap pi{cycle, q.quotient, q.projection.image};
        const auto bar = factor_through_quotient(pi, q);
        CHECK(bar.image == identity_map(q.quotient).image);
    }
    SUBCASE("constant maps stay constant") {
        const Poset target = Poset::build({"x", "y"}, {{"x", "y"}});
        const auto bar = factor_through_quotient(ElementMap{cycle, target, {1, 1, 1}}, q);
        CHECK(bar.image == std::vector<ElementIndex>{1, 1});
    }
    SUBCASE("two-cycle into a point has exactly one factorisation") {
        const auto two = PreOrder::build({"a", "b"}, {{"a", "b"}, {"b", "a"}});
        const auto q2 = quotient_to_poset(two);
        const Poset point = Poset::build({"*"}, {});
        const ElementMap f{two, point, {0, 0}};
        const auto bar = factor_through_quotient(f, q2);
        int matches = 0;
        for (const auto& g : testsupport::all_functions(q2.quotient.size(), 1)) {
            const ElementMap cand{q2.quotient, point, g};
            if (!is_monotone(cand)) continue;
            bool factors = true;
            for (ElementIndex x = 0; x < 2; ++x) factors &= g[q2.projection(x)] == f(x);
            if (factors) {
                ++matches;
                CHECK(g == bar.image);
            }
        }
        CHECK(matches == 1);
    }
    SUBCASE("rejections") {
        const auto not_poset = PreOrder::build({"x", "y"}, {{"x", "y"}, {"y", "x"}});
        CHECK_THROWS_AS(factor_through_quotient(ElementMap{cycle, not_poset, {0, 0, 0}}, q),
                        InvalidArgument);
        const Poset target = Poset::build({"x", "y"}, {{"x", "y"}});
        // b <= c but f(b) = y, f(c) = x.
        CHECK_THROWS_AS(factor_through_quotient(ElementMap{cycle, target, {1, 1, 0}}, q),
                        InvalidArgument);
        const auto other = PreOrder::build({"a", "b"}, {});
        CHECK_THROWS_AS(factor_through_quotient(ElementMap{other, target, {0, 0}}, q),
                        InvalidArgument);
    }
}

TEST_CASE("monotone maps") {
    const Poset chain = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(is_monotone(identity_map(chain)));
    const Poset point = Poset::build({"*"}, {});
    CHECK(is_monotone(ElementMap{chain, point, {0, 0, 0}}));
    const Poset two = Poset::build({"a", "b"}, {{"a", "b"}});
    const ElementMap swap{two, two, {1, 0}};
    CHECK_FALSE(is_monotone(swap));
    // a <= b but swap(a) = b is not <= swap(b) = a.
    CHECK_FALSE(two.leq(swap(0), swap(1)));
}

TEST_CASE("covering pairs") {
    const Poset chain = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(hasse_edges(chain) == IndexPairs{{0, 1}, {1, 2}});
    CHECK(hasse_edges(Poset::build({"a", "b", "c"}, {})).empty());

    const Poset ps = power_set_of_two();
    const auto edges = hasse_edges(ps);
    CHECK(edges.size() == 4);
    std::vector<std::vector<bool>> reach(4, std::vector<bool>(4));
    for (ElementIndex x = 0; x < 4; ++x) {
        for (ElementIndex y = 0; y < 4; ++y) reach[x][y] = ps.leq(x, y);
    }
    CHECK(edges == brute_force_reduction(reach));
}

TEST_CASE("covering pairs regenerate the order") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = iter % 9;
        const Poset p = testsupport::random_poset(rng, n, 0.4);
        const auto edges = hasse_edges(p);
        CHECK(same_relation(p, testsupport::reachability(n, edges)));
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
        for (ElementIndex x = 0; x < n; ++x) {
            for (ElementIndex y = 0; y < n; ++y) reach[x][y] = p.leq(x, y);
        }
        CHECK(edges == brute_force_reduction(reach));
    }
}

TEST_CASE("linear extensions respect the order") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 200; ++iter) {
        const auto p = testsupport::random_preorder(rng, 1 + iter % 7);
        const auto order = linear_extension(p);
        std::vector<std::size_t> pos(p.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (const auto& [x, y] : p.strict_pairs()) {
            if (!p.leq(y, x)) CHECK(pos[x] < pos[y]);
        }
    }
}

TEST_CASE("quotienting is idempotent") {
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 150; ++iter) {
        const auto p = testsupport::random_preorder(rng, 1 + iter % 7);
        const auto once = quotient_to_poset(p);
        const auto twice = quotient_to_poset(once.quotient);
        CHECK(order_isomorphic(once.quotient, twice.quotient));
        CHECK(is_monotone(once.projection));
        std::set<ElementIndex> hit(once.projection.image.begin(), once.projection.image.end());
        CHECK(hit.size() == once.quotient.size());
    }
}

TEST_CASE("universal property of the quotient") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 60) {
        const auto p = testsupport::random_preorder(rng, 1 + checked % 6, 0.3);
        const auto q = quotient_to_poset(p);
        if (q.quotient.size() > 5) continue;
        const Poset target = testsupport::random_poset(rng, 1 + rng() % 4, 0.5);
        // A random monotone map: retry random functions until one is monotone.
        std::optional<ElementMap> f;
        for (int attempt = 0; attempt < 200 && !f; ++attempt) {
            std::vector<ElementIndex> img(p.size());
            for (auto& v : img) v = rng() % target.size();
            ElementMap cand{p, target, img};
            if (is_monotone(cand)) f = cand;
        }
        if (!f) continue;
        ++checked;
        const auto bar = factor_through_quotient(*f, q);
        CHECK(is_monotone(bar));
        for (ElementIndex x = 0; x < p.size(); ++x) CHECK(bar(q.projection(x)) == (*f)(x));
        int factorisations = 0;
        for (const auto& g : testsupport::all_functions(q.quotient.size(), target.size())) {
            if (!is_monotone(ElementMap{q.quotient, target, g})) continue;
            bool factors = true;
            for (ElementIndex x = 0; x < p.size(); ++x) factors &= g[q.projection(x)] == (*f)(x);
            if (factors) {
                ++factorisations;
                CHECK(g == bar.image);
            }
        }
        CHECK(factorisations == 1);
    }
}
