#include <catch2/catch_amalgamated.hpp>

#include "witt/brauer.hpp"

using namespace witt;

namespace {
BrauerClass cls(std::initializer_list<std::pair<i64, std::pair<i64, i64>>> entries) {
    std::map<i64, Frac> m;
    for (auto& [q, f] : entries) m[q] = Frac::of(f.first, f.second);
    return BrauerClass::from_finite(m);
}
}  // namespace

TEST_CASE("class construction and validation") {
    auto a = cls({{5, {1, 2}}, {7, {1, 2}}});
    CHECK(a.index() == 2);
    CHECK(a.support().size() == 2);

    CHECK(BrauerClass::zero().index() == 1);
    CHECK(BrauerClass::zero().support().empty());

    CHECK_THROWS_AS(cls({{5, {1, 3}}}), std::invalid_argument);  // nonzero sum
    std::map<Place, Frac> bad{{Place::archimedean(), Frac::of(1, 3)}, {Place::at(3), Frac::of(2, 3)}};
    CHECK_THROWS_AS(BrauerClass(bad), std::invalid_argument);  // bad real invariant

    std::map<Place, Frac> ok{{Place::archimedean(), Frac::of(1, 2)}, {Place::at(3), Frac::of(1, 2)}};
    CHECK(BrauerClass(ok).index() == 2);

    CHECK(cls({{5, {1, 8}}, {11, {7, 8}}}).index() == 8);
}

TEST_CASE("restriction of scalars") {
    auto K = quadratic_field(-3);
    auto a = cls({{5, {1, 2}}, {7, {1, 2}}});
    auto r = restrict_class(a, K);
    // 5 is inert (invariant doubles to 0... 2*(1/2) = 0), 7 splits into two
    // places keeping 1/2 each
    REQUIRE(r.invariants.size() == 2);
    CHECK(r.invariants[0].first.below.q == 7);
    CHECK(r.invariants[1].first.below.q == 7);
    CHECK(r.invariants[0].second == Frac::of(1, 2));
    CHECK(r.index() == 2);

    // restriction to Q is the identity
    auto rq = restrict_class(a, AbelianField::rationals());
    CHECK(rq.index() == 2);
    CHECK(rq.invariants.size() == 2);

    auto b = cls({{5, {1, 8}}, {11, {7, 8}}});
    auto rb = restrict_class(b, K);
    CHECK(rb.index() == 4);  // both inert: 1/4 and 3/4
    REQUIRE(rb.invariants.size() == 2);
    CHECK(rb.invariants[0].second == Frac::of(1, 4));
    CHECK(rb.invariants[1].second == Frac::of(3, 4));

    // archimedean restriction to a real field keeps all real places
    auto c = BrauerClass(std::map<Place, Frac>{{Place::archimedean(), Frac::of(1, 2)}, {Place::at(3), Frac::of(1, 2)}});
    auto rc = restrict_class(c, quadratic_field(5));
    int arch = 0;
    for (auto& [pl, f] : rc.invariants)
        if (pl.below.infinite) ++arch;
    CHECK(arch == 2);
}

TEST_CASE("supports") {
    auto b = cls({{5, {1, 8}}, {11, {7, 8}}});
    CHECK(b.restricted_support().size() == 2);

    auto c = cls({{5, {1, 2}}, {7, {1, 4}}, {11, {1, 4}}});
    auto sa = c.restricted_support();
    REQUIRE(sa.size() == 2);
    CHECK(sa[0].q == 7);
    CHECK(sa[1].q == 11);
    CHECK(BrauerClass::zero().restricted_support().empty());
}

TEST_CASE("fiber index formula") {
    auto chi = DirichletCharacter::quadratic(-3);
    CHECK(fiber_index(cls({{5, {1, 2}}, {7, {1, 2}}}), chi) == 4);
    CHECK(fiber_index(BrauerClass::zero(), chi) == 2);
    CHECK(fiber_index(cls({{5, {1, 8}}, {11, {7, 8}}}), chi) == 8);
}

TEST_CASE("fiber classification") {
    auto chi = DirichletCharacter::quadratic(-3);
    auto c4 = classify_fiber(chi, 4);
    CHECK(c4.verdict == FiberCase::CaseII);
    REQUIRE(c4.witness_primes.size() == 1);
    CHECK(c4.witness_primes[0] == 2);

    CHECK(classify_fiber(chi, 2).verdict == FiberCase::CaseI);

    DirichletCharacter cubic(7, 3, {1});
    CHECK(classify_fiber(cubic, 3).verdict == FiberCase::CaseII);
    CHECK(classify_fiber(cubic, 1).verdict == FiberCase::CaseI);
    // prime-to-|chi| part of m never triggers Case II
    CHECK(classify_fiber(cubic, 5).verdict == FiberCase::CaseI);
}

TEST_CASE("decide_crossed: the index-8 witness instance") {
    auto chi = DirichletCharacter::quadratic(-3);
    auto alpha = cls({{5, {1, 8}}, {11, {7, 8}}});
    auto res = decide_crossed(alpha, chi);
    CHECK(res.verdict == CrossedVerdict::Noncrossed);
    CHECK(res.m == 4);
    CHECK(res.fiber_index == 8);
    REQUIRE(res.q1.has_value());
    REQUIRE(res.q2.has_value());
    CHECK(*res.q1 == 5);   // 5 = 5 (mod 12)
    CHECK(*res.q2 == 11);  // 11 = -1 (mod 12)
    CHECK_FALSE(res.q0.has_value());  // m = 4 is a prime power

    // m = 2 instances are Case I, hence crossed
    auto res2 = decide_crossed(cls({{5, {1, 2}}, {7, {1, 2}}}), chi);
    CHECK(res2.verdict == CrossedVerdict::Crossed);
    CHECK(res2.m == 2);

    // 13 = 1 (mod 12) and 7 = 7 (mod 12) miss P1 and P2: undecided
    auto res3 = decide_crossed(cls({{13, {1, 4}}, {7, {3, 4}}}), chi);
    CHECK(res3.verdict == CrossedVerdict::Undecided);
    CHECK(res3.m == 4);
}

TEST_CASE("random classes: zero sum, index divisibility, fiber multiples") {
    u64 seed = 1234;
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    std::vector<i64> primes{5, 7, 11, 13, 17, 19, 23};
    int done = 0;
    for (u64 t = 0; done < 300; ++t) {
        std::map<i64, Frac> entries;
        Frac sum{0, 1};
        for (int j = 0; j < 3; ++j) {
            i64 q = primes[rng_at(seed, 4 * t + j) % primes.size()];
            i64 den = 1 + i64(rng_at(seed ^ 5, 4 * t + j) % 12);
            Frac f = Frac::of(i64(rng_at(seed ^ 9, 4 * t + j) % u64(den)), den);
            entries[q] = entries.count(q) ? entries[q] + f : f;
            sum = sum + f;
        }
        entries[29] = -sum;
        auto alpha = BrauerClass::from_finite(entries);
        auto r = restrict_class(alpha, K);  // zero-sum checked internally
        CHECK(alpha.index() % r.index() == 0);
        CHECK(fiber_index(alpha, chi) % chi.order() == 0);
        CHECK(fiber_index(alpha, chi) == chi.order() * r.index());
        // equality of indices when some restricted-support place splits
        bool split_witness = false;
        for (auto& pl : alpha.restricted_support())
            if (!pl.infinite && pl.q % 3 == 1) split_witness = true;
        if (split_witness) CHECK(r.index() == alpha.index());
        ++done;
    }
}

TEST_CASE("brute force over classes on {5,7,11,13} with denominators | 8") {
    // Independent oracle for the witnessed-noncrossed count: enumerate all
    // invariant vectors (a,b,c)/8 at 5, 7, 11 with the balancing entry at 13,
    // flag those with restriction index 4 and a witness pair, and compare
    // against decide_crossed.
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    // local degrees: 5, 11 inert (2); 7, 13 split (1)
    int witnessed = 0, noncrossed_flagged = 0, caseII_total = 0;
    for (i64 a = 0; a < 8; ++a)
        for (i64 b = 0; b < 8; ++b)
            for (i64 c = 0; c < 8; ++c) {
                Frac fa = Frac::of(a, 8), fb = Frac::of(b, 8), fc = Frac::of(c, 8);
                Frac fd = -(fa + fb + fc);
                std::map<i64, Frac> entries{{5, fa}, {7, fb}, {11, fc}, {13, fd}};
                auto alpha = BrauerClass::from_finite(entries);
                auto r = restrict_class(alpha, K);
                if (r.index() != 4) continue;
                ++caseII_total;
                // independent witness check per the explicit congruences:
                // q1 = 5 (mod 12) with full restricted index, q2 = -1 (mod 12)
                bool w1 = !fa.is_zero() && fa.scaled(2).order() == 4;   // 5 is in P1
                bool w2 = !fc.is_zero() && fc.scaled(2).order() == 4;  // 11 is in P2
                if (w1 && w2) ++witnessed;
                auto res = decide_crossed(alpha, chi);
                if (res.verdict == CrossedVerdict::Noncrossed) {
                    ++noncrossed_flagged;
                    CHECK((w1 && w2));
                }
                // never Noncrossed in a Case I fiber (these are all Case II)
                CHECK(res.classification.verdict == FiberCase::CaseII);
            }
    CHECK(witnessed == noncrossed_flagged);
    CHECK(witnessed > 0);
    // independent count: full restricted index at 5 and 11 needs odd
    // numerators there (4 choices each), and index exactly 4 forces an even
    // numerator at the split prime 7 (4 choices); the balancing entry at 13
    // is then automatically of order dividing 4: 4*4*4 = 64
    CHECK(witnessed == 64);
}

TEST_CASE("sample_class") {
    auto K = quadratic_field(-3);
    auto a = sample_class(K, 4, {5, 11}, 42);
    auto r = restrict_class(a, K);
    CHECK(r.index() == 4);
    auto sa = r.restricted_support_primes();
    CHECK(std::find(sa.begin(), sa.end(), 5) != sa.end());
    CHECK(std::find(sa.begin(), sa.end(), 11) != sa.end());

    CHECK(sample_class(K, 1, {}, 7).is_zero());

    // split place with local degree 1
    auto b = sample_class(K, 4, {7}, 9);
    auto rb = restrict_class(b, K);
    CHECK(rb.index() == 4);
    auto sb = rb.restricted_support_primes();
    CHECK(std::find(sb.begin(), sb.end(), 7) != sb.end());

    // determinism
    auto c1 = sample_class(K, 8, {5, 7}, 1001);
    auto c2 = sample_class(K, 8, {5, 7}, 1001);
    CHECK(c1.invariants().size() == c2.invariants().size());
    for (size_t i = 0; i < c1.invariants().size(); ++i) {
        CHECK(c1.invariants()[i].first == c2.invariants()[i].first);
        CHECK(c1.invariants()[i].second == c2.invariants()[i].second);
    }
}

TEST_CASE("composite m needs the full witness triple") {
    // m = 12: the P0 member q0 = 13 (split completely in K(mu_12)) joins the
    // prime-power pair
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    auto alpha = sample_class(K, 12, {13, 5, 11}, 77);
    auto res = decide_crossed(alpha, chi);
    CHECK(res.m == 12);
    CHECK(res.verdict == CrossedVerdict::Noncrossed);
    REQUIRE(res.q0.has_value());
    CHECK(*res.q0 == 13);
    CHECK(*res.q1 == 5);
    CHECK(*res.q2 == 11);

    // without a P0 member on the support the composite case stays undecided
    auto alpha2 = sample_class(K, 12, {5, 11}, 78);
    auto sa = restrict_class(alpha2, K).restricted_support_primes();
    bool has_p0 = false;
    for (i64 q : sa)
        if (q != 5 && q != 11 && p0_spec(K, 12).matches(q)) has_p0 = true;
    if (!has_p0) CHECK(decide_crossed(alpha2, chi).verdict == CrossedVerdict::Undecided);
}

TEST_CASE("tensoring an index-9 noncrossed witness into a crossed product") {
    // chi cubic mod 7; alpha with restricted index 3 witnessed at
    // q1 = 19 (P1: 1 mod 3, order-3 class mod 7) and q2 = 2 (P2: 2 mod 3,
    // order-3 class mod 7)
    DirichletCharacter cubic(7, 3, {1});
    auto alpha = cls({{19, {1, 9}}, {2, {8, 9}}});
    auto res = decide_crossed(alpha, cubic);
    CHECK(res.verdict == CrossedVerdict::Noncrossed);
    CHECK(res.fiber_index == 9);

    // tensor with the quaternion-type element 0 + quadratic character mod 3
    FiberElement e1{alpha, cubic};
    FiberElement e2{BrauerClass::zero(), DirichletCharacter::quadratic(-3)};
    auto prod = tensor(e1, e2);
    CHECK(prod.chi.order() == 6);
    CHECK(prod.index() == 18);
    i64 m = restrict_class(prod.alpha, field_of_character(prod.chi)).index();
    auto c = classify_fiber(prod.chi, m);
    CHECK(c.verdict == FiberCase::CaseI);
    auto dec = decide_crossed(prod.alpha, prod.chi);
    CHECK(dec.verdict == CrossedVerdict::Crossed);

    // tensoring with the trivial element changes nothing
    FiberElement triv{BrauerClass::zero(), DirichletCharacter::trivial()};
    auto same = tensor(e1, triv);
    CHECK(same.index() == 9);
    CHECK(same.chi == cubic);
}
