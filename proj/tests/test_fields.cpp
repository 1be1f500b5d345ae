#include <catch2/catch_amalgamated.hpp>

#include "witt/fields.hpp"

using namespace witt;

TEST_CASE("conductor reduction and degree") {
    // Q(mu_12) described mod 24 reduces to conductor 12
    AbelianField K(24, {13});  // 13 = 1 mod 12
    CHECK(K.conductor() == 12);
    CHECK(K.degree() == 4);

    CHECK(AbelianField::cyclotomic(1).conductor() == 1);
    CHECK(AbelianField::cyclotomic(2).conductor() == 1);
    CHECK(AbelianField::cyclotomic(6).conductor() == 3);  // Q(mu_6) = Q(mu_3)
    CHECK(AbelianField::cyclotomic(7).degree() == 6);

    // idempotent
    AbelianField L(12, {5});
    AbelianField L2(L.conductor(), L.subgroup().generator_residues());
    CHECK(L == L2);
}

TEST_CASE("quadratic fields") {
    auto m3 = quadratic_field(-3);
    CHECK(m3.conductor() == 3);
    CHECK(m3.degree() == 2);
    CHECK(m3 == AbelianField::cyclotomic(3));  // third cyclotomic field
    CHECK_FALSE(m3.is_real());

    auto i = quadratic_field(-1);
    CHECK(i.conductor() == 4);
    CHECK(i == AbelianField::cyclotomic(4));

    auto m14 = quadratic_field(-14);
    CHECK(m14.conductor() == 56);
    CHECK(m14.degree() == 2);
    // Kronecker-kernel oracle: H = {x : (disc/x) = 1}
    for (i64 x = 1; x < 56; ++x) {
        if (std::gcd(x, i64(56)) != 1) continue;
        CHECK(m14.subgroup().contains(x) == (kronecker(-56, x) == 1));
    }

    auto r2 = quadratic_field(2);
    CHECK(r2.conductor() == 8);
    CHECK(r2.is_real());
    CHECK(r2 == AbelianField::real_cyclotomic(8));  // Q(sqrt 2) = Q(eta_8)

    CHECK_THROWS_AS(quadratic_field(0), std::invalid_argument);
    CHECK_THROWS_AS(quadratic_field(12), std::invalid_argument);
}

TEST_CASE("lattice operations") {
    auto m3 = quadratic_field(-3);
    auto qi = quadratic_field(-1);
    auto comp = compositum(m3, qi);
    CHECK(comp.degree() == 4);
    CHECK(comp.conductor() == 12);
    CHECK(contains(comp, m3));
    CHECK(contains(comp, qi));
    CHECK(contains(comp, quadratic_field(3)));  // sqrt(-3)*sqrt(-1) direction

    CHECK(intersection(m3, m3) == m3);
    CHECK(intersection(m3, qi) == AbelianField::rationals());
    CHECK(contains(AbelianField::cyclotomic(8), quadratic_field(2)));
    CHECK(!contains(quadratic_field(2), AbelianField::cyclotomic(8)));
}

TEST_CASE("lattice laws on a random corpus") {
    u64 seed = 99;
    std::vector<AbelianField> corpus;
    for (u64 t = 0; corpus.size() < 200; ++t) {
        i64 n = 3 + i64(rng_at(seed, t) % 498);
        std::vector<i64> gens;
        for (int j = 0; j < 2; ++j) {
            i64 x = 1 + i64(rng_at(seed ^ 7, 2 * t + j) % (n - 1));
            if (std::gcd(x, n) == 1) gens.push_back(x);
        }
        corpus.emplace_back(n, gens);
    }
    for (size_t t = 0; t + 1 < corpus.size(); t += 2) {
        const auto& A = corpus[t];
        const auto& B = corpus[t + 1];
        auto C = compositum(A, B);
        auto I = intersection(A, B);
        CHECK(contains(C, A));
        CHECK(contains(C, B));
        CHECK(contains(A, I));
        CHECK(contains(B, I));
        // degree identity in the coprime-degree cyclic case
        if (std::gcd(A.degree(), B.degree()) == 1)
            CHECK(mul_checked(A.degree(), B.degree()) == mul_checked(C.degree(), I.degree()));
    }
}

TEST_CASE("roots of unity counts s_p") {
    auto m3 = quadratic_field(-3);
    CHECK(s_p(m3, 2) == 1);
    CHECK(s_p(m3, 3) == 1);  // mu_6 inside Q(sqrt(-3))
    CHECK(s_p(AbelianField::rationals(), 2) == 1);
    CHECK(s_p(quadratic_field(-1), 2) == 2);
    CHECK(s_p(AbelianField::cyclotomic(16), 2) == 4);
    CHECK(s_p(AbelianField::cyclotomic(7), 7) == 1);
    CHECK(roots_of_unity_count(m3) == 6);
    CHECK(roots_of_unity_count(AbelianField::rationals()) == 2);

    // monotone under inclusion on sampled pairs
    for (auto [m, D] : std::vector<std::pair<i64, i64>>{{35, 5}, {60, -15}, {120, 10}, {136, 17}}) {
        auto K = AbelianField::cyclotomic(m);
        auto sub = quadratic_field(D);
        REQUIRE(contains(K, sub));
        for (i64 p : {2, 3, 5}) CHECK(s_p(sub, p) <= s_p(K, p));
    }
}

TEST_CASE("cyclotomic part and two_tilde") {
    auto Q = AbelianField::rationals();
    auto m3 = quadratic_field(-3);
    CHECK(cyclotomic_part(m3, Q, 3) == m3);
    CHECK(cyclotomic_part(m3, Q, 2) == Q);
    // T = k(i) for the Case-B configuration
    auto k = quadratic_field(-14);
    auto K = compositum(k, quadratic_field(-1));
    CHECK(cyclotomic_part(K, k, 2) == K);  // K = k(i) and i generates the 2-cyclotomic part over k

    auto expect_label = [](const TwoTildeLabel& got, TwoTilde kind, int s) {
        CHECK(got.kind == kind);
        CHECK(got.s == s);
    };
    expect_label(two_tilde(quadratic_field(2)), TwoTilde::Eta, 3);
    expect_label(two_tilde(m3), TwoTilde::Q, 0);
    expect_label(two_tilde(quadratic_field(-1)), TwoTilde::Zeta, 2);
    expect_label(two_tilde(quadratic_field(-2)), TwoTilde::IEta, 3);
    expect_label(two_tilde(AbelianField::cyclotomic(16)), TwoTilde::Zeta, 4);
    expect_label(two_tilde(AbelianField::real_cyclotomic(16)), TwoTilde::Eta, 4);
    expect_label(two_tilde(quadratic_field(-14)), TwoTilde::Q, 0);
}

TEST_CASE("cyclic extensions") {
    auto ext = over_q(quadratic_field(-3));
    CHECK(ext.degree() == 2);
    CHECK(ext.generator() == 2);  // 2 generates (Z/3)^*

    auto trivial = cyclic_extension(quadratic_field(5), quadratic_field(5));
    CHECK(trivial.is_trivial());

    auto biq = compositum(quadratic_field(5), quadratic_field(-1));
    CHECK_THROWS_WITH(over_q(biq), Catch::Matchers::ContainsSubstring("[2,2]"));
}

TEST_CASE("characters: fields and projections") {
    // Kronecker character mod 3 cuts out Q(sqrt(-3))
    auto chi = DirichletCharacter::quadratic(-3);
    CHECK(chi.order() == 2);
    CHECK(chi.modulus() == 3);
    CHECK(field_of_character(chi) == quadratic_field(-3));

    CHECK(field_of_character(DirichletCharacter::trivial()).is_rational());

    // order-4 character mod 17 sending the generator 3 to 1: kernel <4>
    DirichletCharacter chi17(17, 4, {1});
    auto K = field_of_character(chi17);
    CHECK(K.conductor() == 17);
    CHECK(K.degree() == 4);
    CHECK(K.subgroup().contains(4));
    CHECK(K.subgroup().order() == 4);

    // round-trip through character_of_field on reduced cyclic fields
    for (i64 D : {-3, -1, 5, -7, 2, -2, 13}) {
        auto F = quadratic_field(D);
        CHECK(field_of_character(character_of_field(F)) == F);
    }
    CHECK(field_of_character(character_of_field(K)) == K);

    // p-primary projection: order and field degree
    auto c7 = character_of_field(AbelianField::cyclotomic(7));  // order 6
    CHECK(c7.order() == 6);
    auto c7_3 = p_primary(c7, 3);
    CHECK(c7_3.order() == 3);
    CHECK(field_of_character(c7_3).degree() == 3);
    auto c7_2 = p_primary(c7, 2);
    CHECK(c7_2.order() == 2);
    CHECK(multiply(c7_2, c7_3) == c7);

    // chi_p has order p^{v_p(d)}
    for (auto& chi2 : all_characters_mod(40)) {
        for (i64 p : {2, 5}) {
            auto pp = p_primary(chi2, p);
            i64 expect = 1;
            i64 d = chi2.order();
            while (d % p == 0) d /= p, expect *= p;
            CHECK(pp.order() == expect);
        }
    }
}

TEST_CASE("character enumeration") {
    CHECK(all_characters_mod(40).size() == 16);
    // primitive characters mod n have conductor n
    int primitive = 0;
    for (auto& chi : all_characters_mod(12))
        if (conductor(chi) == 12) ++primitive;
    CHECK(primitive == 1);  // exactly the character of Q(zeta_12)... the quartic one
}
