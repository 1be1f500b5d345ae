#include <catch2/catch_amalgamated.hpp>

#include "witt/primesets.hpp"

using namespace witt;

TEST_CASE("p0: split completely in K(mu_m)") {
    auto s = p0_spec(quadratic_field(-3), 4);
    CHECK(s.modulus == 12);
    CHECK(s.residues == std::vector<i64>{1});

    auto sq = p0_spec(AbelianField::rationals(), 2);
    CHECK(sq.modulus == 1);
    CHECK(sq.matches(97));

    auto si = p0_spec(quadratic_field(-1), 3);
    CHECK(si.modulus == 12);
    CHECK(si.residues == std::vector<i64>{1});
}

TEST_CASE("p1: the explicit congruence families") {
    auto ext = over_q(quadratic_field(-3));
    // n even: q = 1 + 2^n (mod 3*2^n); n odd: q = 1 + 2^(n+1) (mod 3*2^n)
    for (int n = 2; n <= 5; ++n) {
        auto s = p1_spec(ext, 2, n);
        i64 N = 3 * ipow(2, n);
        CHECK(s.modulus == N);
        i64 expect = (n % 2 == 0) ? 1 + ipow(2, n) : 1 + ipow(2, n + 1);
        CHECK(s.residues == std::vector<i64>{mod_pos(expect, N)});
    }
    // degenerate K = T = Q(i): the condition is that the place of T splits
    // completely in T(mu_8) = Q(mu_8); inert rational primes (3, 7 mod 8)
    // qualify since their T-place has norm q^2 = 1 (mod 8)
    auto exti = over_q(quadratic_field(-1));
    auto sT = p1_spec(exti, 2, 3);
    CHECK(sT.modulus == 8);
    CHECK(sT.residues == std::vector<i64>{1, 3, 7});
}

TEST_CASE("p2: case dispatch") {
    // Case A, s = 1: inert in K and in Q(i): q = -1 (mod 12)
    auto s = p2_spec(over_q(quadratic_field(-3)), 2);
    CHECK(s.modulus == 12);
    CHECK(s.residues == std::vector<i64>{11});

    // Case B for Q(i)/Q, s = 2: inert in Q(i) and in Q(eta_8) = Q(sqrt 2):
    // q = 3 (mod 4) and q = +-3 (mod 8), i.e. q = 3 (mod 8); this matches the
    // congruence N(p1) = -1 + 2^s (mod 2^{s+1})
    auto sb = p2_spec(over_q(quadratic_field(-1)), 2);
    CHECK(sb.modulus == 8);
    CHECK(sb.residues == std::vector<i64>{3});

    CHECK_THROWS_AS(p2_spec(cyclic_extension(quadratic_field(5), quadratic_field(5)), 2), std::invalid_argument);
}

TEST_CASE("enumerate and sieve") {
    PrimeSetSpec s{PRole::P1, 12, {5}, ""};
    CHECK(enumerate_primes(s, 60) == std::vector<i64>{5, 17, 29, 41, 53});
    PrimeSetSpec s2{PRole::P2, 12, {11}, ""};
    CHECK(enumerate_primes(s2, 60) == std::vector<i64>{11, 23, 47, 59});
    CHECK(enumerate_primes(s2, 10).empty());
}

TEST_CASE("members verify their defining Frobenius conditions") {
    auto ext = over_q(quadratic_field(-3));
    auto P1 = p1_spec(ext, 2, 2);
    auto K = ext.top();
    int checked = 0;
    for (i64 q : enumerate_primes(P1, 3000)) {
        if (checked >= 50) break;
        // inert in K over T = Q and split completely in Q(mu_4)
        auto ldK = local_data(AbelianField::rationals(), K, Place::at(q));
        CHECK(ldK.f == 2);
        CHECK(splits_completely(AbelianField::cyclotomic(4), q));
        ++checked;
    }
    CHECK(checked == 50);

    auto P2 = p2_spec(ext, 2);
    checked = 0;
    for (i64 q : enumerate_primes(P2, 3000)) {
        if (checked >= 50) break;
        auto ldK = local_data(AbelianField::rationals(), K, Place::at(q));
        CHECK(ldK.f == 2);  // generates Gal(K/Q)
        auto ldI = local_data(AbelianField::rationals(), AbelianField::cyclotomic(4), Place::at(q));
        CHECK(ldI.f == 2);  // generates Gal(Q(mu_4)/Q)
        ++checked;
    }
    CHECK(checked == 50);

    // Case-B congruence of the proof: members are -1 + 2^s mod 2^{s+1}
    auto PB = p2_spec(over_q(quadratic_field(-1)), 2);
    for (i64 q : enumerate_primes(PB, 500)) CHECK(mod_pos(q, 8) == 3);  // -1 + 4 mod 8
}

TEST_CASE("residue sets are unions of cosets of the compositum subgroup") {
    auto ext = over_q(quadratic_field(-3));
    for (int n : {2, 3}) {
        auto s = p1_spec(ext, 2, n);
        AbelianField comp =
            compositum(ext.top(), AbelianField::cyclotomic(ipow(2, n)));
        REQUIRE(comp.conductor() == s.modulus);
        for (i64 r : s.residues)
            for (i64 h : comp.subgroup().elements())
                CHECK(std::binary_search(s.residues.begin(), s.residues.end(), mulmod(r, h, s.modulus)));
    }
}

TEST_CASE("chebotarev sanity at 10^6") {
    auto ext = over_q(quadratic_field(-3));
    auto P1 = p1_spec(ext, 2, 2);
    auto P2 = p2_spec(ext, 2);
    auto r1 = chebotarev_check(P1, 1000000);
    auto r2 = chebotarev_check(P2, 1000000);
    CHECK(r1.predicted == Catch::Approx(0.25));
    CHECK(r2.predicted == Catch::Approx(0.25));
    CHECK(r1.relative_error < 0.02);
    CHECK(r2.relative_error < 0.02);
}
