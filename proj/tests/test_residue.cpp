#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <numeric>
#include <set>

#include "witt/residue.hpp"

using namespace witt;

// independent per-factor dlog tables, built by plain iteration of the
// generator; used as the oracle against the Pohlig-Hellman implementation
namespace {
std::map<i64, i64> dlog_table(i64 g, i64 order, i64 m) {
    std::map<i64, i64> t;
    i64 x = 1 % m;
    for (i64 e = 0; e < order; ++e) {
        t[x] = e;
        x = mulmod(x, g, m);
    }
    return t;
}
}  // namespace

TEST_CASE("unit group basis matches the stated generator conventions") {
    auto g7 = unit_group(7);
    REQUIRE(g7->rank() == 1);
    CHECK(g7->basis()[0].residue == 3);  // smallest primitive root mod 7
    CHECK(g7->basis()[0].order == 6);

    auto g1 = unit_group(1);
    CHECK(g1->rank() == 0);
    CHECK(g1->order() == 1);

    auto g8 = unit_group(8);
    REQUIRE(g8->rank() == 2);
    CHECK(g8->basis()[0].residue == 7);  // -1 mod 8
    CHECK(g8->basis()[0].order == 2);
    CHECK(g8->basis()[1].residue == 5);
    CHECK(g8->basis()[1].order == 2);
}

TEST_CASE("element orders") {
    CHECK(element_order(*unit_group(17), 4) == 4);
    CHECK(element_order(*unit_group(5), 1) == 1);
    CHECK(element_order(*unit_group(12), 11) == 2);
    CHECK_THROWS_AS(element_order(*unit_group(12), 4), std::invalid_argument);
}

TEST_CASE("subgroups: order, index, membership") {
    auto g = unit_group(17);
    auto h = subgroup(g, {4});
    CHECK(h.order() == 4);
    CHECK(h.index() == 4);
    CHECK(h.elements() == std::vector<i64>{1, 4, 13, 16});

    auto t = subgroup(unit_group(5), {});
    CHECK(t.order() == 1);
    CHECK(t.index() == 4);

    auto f = subgroup(unit_group(8), {7, 5});
    CHECK(f.index() == 1);
    CHECK(f.order() == 4);

    CHECK_THROWS_AS(subgroup(unit_group(8), {2}), std::invalid_argument);
}

TEST_CASE("quotient structure") {
    auto q17 = quotient_structure(subgroup(unit_group(17), {4}));
    CHECK(q17.factors == std::vector<i64>{4});
    CHECK(q17.is_cyclic());

    auto q8 = quotient_structure(subgroup(unit_group(8), {1}));
    CHECK(q8.factors == std::vector<i64>{2, 2});
    CHECK_FALSE(q8.is_cyclic());

    auto q3 = quotient_structure(UnitSubgroup::full(unit_group(3)));
    CHECK(q3.factors.empty());

    // invariant factors multiply to the index
    for (i64 n : {12, 35, 40, 96, 300}) {
        auto g = unit_group(n);
        auto h = subgroup(g, {mod_pos(-1, n)});
        auto q = quotient_structure(h);
        CHECK(q.order() == h.index());
        // representatives generate factors of the stated order
        for (size_t i = 0; i < q.factors.size(); ++i) CHECK(q.order_of(q.representatives[i]) == q.factors[i]);
    }
}

TEST_CASE("unit count equals phi(n) and dlog round-trips, n <= 2000") {
    for (i64 n = 1; n <= 2000; ++n) {
        auto g = unit_group(n);
        REQUIRE(g->order() == euler_phi(n));
        if (n == 1) continue;
        // independent dlog tables per CRT factor
        std::vector<std::map<i64, i64>> tables;
        std::vector<i64> orders;
        for (auto& gen : g->basis()) {
            tables.push_back(dlog_table(gen.residue % n, gen.order, n));
            orders.push_back(gen.order);
        }
        i64 count = 0;
        for (i64 x = (n == 1 ? 0 : 1); x < n; ++x) {
            if (std::gcd(x, n) != 1) continue;
            ++count;
            auto e = g->dlog(x);
            CHECK(g->from_exponents(e) == x);
        }
        CHECK(count == euler_phi(n));
    }
}

TEST_CASE("subgroup canonical form is independent of the generating set") {
    u64 seed = 20260811;
    int done = 0;
    for (u64 trial = 0; done < 500; ++trial) {
        i64 n = 3 + i64(rng_at(seed, 2 * trial) % 400);
        auto g = unit_group(n);
        if (g->order() == 1) continue;
        // random generating set
        std::vector<i64> gens;
        int m = 1 + int(rng_at(seed, 2 * trial + 1) % 3);
        for (int i = 0; i < m; ++i) {
            i64 x = 1 + i64(rng_at(seed ^ 0xabc, trial * 7 + i) % (n - 1));
            if (std::gcd(x, n) == 1) gens.push_back(x);
        }
        auto h = subgroup(g, gens);
        // regenerate from the full element list
        auto h2 = subgroup(g, h.elements());
        CHECK(h.lattice() == h2.lattice());
        CHECK(h == h2);
        ++done;
    }
}

TEST_CASE("subgroup index agrees with brute-force enumeration") {
    for (auto [n, gen] : std::vector<std::pair<i64, i64>>{{100, 3}, {257, 4}, {9973, 2}, {8192, 5}}) {
        auto g = unit_group(n);
        auto h = subgroup(g, {gen});
        i64 ord = g->element_order(gen);
        CHECK(h.order() == ord);
        CHECK(h.index() == g->order() / ord);
    }
}

TEST_CASE("join and meet behave like subgroup lattice operations") {
    auto g = unit_group(40);
    auto a = subgroup(g, {3});
    auto b = subgroup(g, {7});
    auto j = a.join(b);
    auto m = a.meet(b);
    CHECK(j.contains_subgroup(a));
    CHECK(j.contains_subgroup(b));
    CHECK(a.contains_subgroup(m));
    CHECK(b.contains_subgroup(m));
    // |A||B| = |A join B| |A meet B| for abelian groups
    CHECK(mul_checked(a.order(), b.order()) == mul_checked(j.order(), m.order()));
}
