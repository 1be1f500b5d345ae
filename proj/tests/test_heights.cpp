#include <catch2/catch_amalgamated.hpp>

#include "witt/heights.hpp"

using namespace witt;

TEST_CASE("local heights: tame, wild and archimedean rules") {
    // (Q(sqrt(-3))/Q, q=3, p=2): v_2(3-1) - v_2(2) = 0
    CHECK(local_height(over_q(quadratic_field(-3)), Place::at(3), 2) == ExtInt::of(0));
    // -1 is not a norm from Q_2(i)
    CHECK(local_height(over_q(quadratic_field(-1)), Place::at(2), 2) == ExtInt::of(0));
    // unramified place with p | [K:k]
    CHECK(local_height(over_q(quadratic_field(-3)), Place::at(7), 2) == ExtInt::infinity());
    // eta tower: -1 is a norm at 2 from Q_2(sqrt 2)
    CHECK(local_height(over_q(quadratic_field(2)), Place::at(2), 2) == ExtInt::infinity());
    // archimedean: real base, complex top, p = 2
    CHECK(local_height(over_q(quadratic_field(-3)), Place::archimedean(), 2) == ExtInt::of(0));
    CHECK(local_height(over_q(quadratic_field(5)), Place::archimedean(), 2) == ExtInt::infinity());
    CHECK(local_height(over_q(AbelianField::cyclotomic(7)), Place::archimedean(), 3) == ExtInt::infinity());
    // totally ramified cyclotomic prime: s_p(Q_q) - v_p(e) at q = 17, p = 2: 4 - 4 = 0
    CHECK(local_height(over_q(AbelianField::cyclotomic(17)), Place::at(17), 2) == ExtInt::of(0));
}

TEST_CASE("global heights: paper anchors") {
    // h_2(Q(i)/Q) = 0, h_2(Q(sqrt 2)/Q) = infinity
    auto hi = global_height(over_q(quadratic_field(-1)), 2);
    CHECK(hi.exact);
    CHECK(hi.upper == ExtInt::of(0));
    auto h2 = global_height(over_q(quadratic_field(2)), 2);
    CHECK(h2.exact);
    CHECK(h2.upper == ExtInt::infinity());
    // h_2(Q(sqrt(-3))/Q) = 0
    auto h3 = global_height(over_q(quadratic_field(-3)), 2);
    CHECK(h3.exact);
    CHECK(h3.upper == ExtInt::of(0));
    // trivial extension
    auto K = quadratic_field(5);
    auto ht = global_height(cyclic_extension(K, K), 2);
    CHECK((ht.exact && ht.upper == ExtInt::infinity()));
}

TEST_CASE("closed form: degree p^m subfield of Q(mu_q), q = a p^n + 1") {
    auto subfield_of_degree = [](i64 q, i64 deg) {
        auto G = unit_group(q);
        i64 g = G->basis()[0].residue;
        i64 phi = q - 1;
        AbelianField K(q, {powmod(g, deg, q)});
        REQUIRE(K.degree() == deg);
        (void)phi;
        return K;
    };
    struct Case {
        i64 p, q;
        int m, n;
    };
    for (auto c : {Case{2, 17, 1, 4}, Case{2, 17, 2, 4}, Case{3, 7, 1, 1}, Case{5, 11, 1, 1}, Case{2, 257, 2, 8}}) {
        auto K = subfield_of_degree(c.q, ipow(c.p, c.m));
        auto h = global_height(over_q(K), c.p);
        INFO("p=" << c.p << " q=" << c.q << " m=" << c.m);
        CHECK(h.exact);
        CHECK(h.upper == ExtInt::of(c.n - c.m));
    }
}

TEST_CASE("special fields") {
    CHECK_FALSE(is_special(AbelianField::rationals()).has_value());
    auto s14 = is_special(quadratic_field(-14));
    REQUIRE(s14.has_value());
    CHECK(*s14 == 2);
    CHECK_FALSE(is_special(quadratic_field(-1)).has_value());  // k~ = Q(i) is not real eta
    CHECK_FALSE(is_special(quadratic_field(-3)).has_value());  // completion at 2 adds none of sqrt2, sqrt-2, i
    // Q(sqrt(-30)): -30/-2 = 15 = 7 (mod 8), so sqrt(-30) = sqrt(2)*sqrt(-15)
    // with -15 = 1 (mod 8): the completion at 2 contains sqrt 2
    auto s30 = is_special(quadratic_field(-30));
    REQUIRE(s30.has_value());
    CHECK(*s30 == 2);
}

TEST_CASE("case A / case B") {
    CHECK(case_AB(over_q(quadratic_field(-3)), 2) == CoverCase::A);
    CHECK(case_AB(over_q(quadratic_field(-1)), 2) == CoverCase::B);  // Q(mu_8)/Q is Klein
    CHECK(case_AB(over_q(AbelianField::cyclotomic(7)), 3) == CoverCase::A);
    auto K = quadratic_field(7);
    CHECK(case_AB(cyclic_extension(K, K), 2) == CoverCase::A);  // degenerate convention
    // Case B over an intermediate base: K = k(i) over k = Q(sqrt(-14))
    auto k14 = quadratic_field(-14);
    auto Ki = compositum(k14, quadratic_field(-1));
    CHECK(case_AB(cyclic_extension(k14, Ki), 2) == CoverCase::B);
}

TEST_CASE("exceptional extensions") {
    // over Q: never exceptional
    CHECK(is_exceptional(over_q(quadratic_field(-1))).verdict == Bool3::False);
    CHECK(is_exceptional(over_q(AbelianField::cyclotomic(5))).verdict == Bool3::False);
    // i not in K
    CHECK(is_exceptional(over_q(quadratic_field(-3))).verdict == Bool3::False);

    // the Geyer-Jensen family: K = k(i), k = Q(sqrt(-14))
    auto k14 = quadratic_field(-14);
    auto Ki = compositum(k14, quadratic_field(-1));
    auto ext = cyclic_extension(k14, Ki);
    auto v = is_exceptional(ext);
    CHECK(v.verdict == Bool3::True);

    // its global height interval: lower 2, upper infinity, capped by s = 2
    auto h = global_height(ext, 2);
    CHECK_FALSE(h.exact);
    CHECK(h.lower == ExtInt::of(2));
    CHECK(h.upper == ExtInt::infinity());
    REQUIRE(h.special_cap.has_value());
    CHECK(*h.special_cap == 2);
}

TEST_CASE("b_p bounds") {
    auto b2 = b_p(over_q(quadratic_field(-3)), 2);
    CHECK(b2.exact);
    CHECK(b2.upper == ExtInt::of(1));  // h=0, s=1

    AbelianField cubic7(7, {6});  // cubic subfield of Q(mu_7)
    REQUIRE(cubic7.degree() == 3);
    auto b3 = b_p(over_q(cubic7), 3);
    CHECK(b3.exact);
    CHECK(b3.upper == ExtInt::of(0));  // h=0, s=0

    AbelianField quart17(17, {4});
    auto b17 = b_p(over_q(quart17), 2);
    CHECK(b17.exact);
    CHECK(b17.upper == ExtInt::of(3));  // h=2, s=1

    // over Q the +1 branch never fires
    for (i64 n : {5, 8, 12, 13, 16}) {
        for (auto& chi : all_characters_mod(n)) {
            auto F = field_of_character(chi);
            if (F.degree() < 2) continue;
            auto b = b_p(over_q(F), 2);
            CHECK(b.exceptional == Bool3::False);
        }
    }
}

TEST_CASE("cyclic cover existence") {
    CHECK(cyclic_cover_exists(over_q(quadratic_field(2)), 8) == Bool3::True);
    CHECK(cyclic_cover_exists(over_q(quadratic_field(-1)), 2) == Bool3::False);
    auto K = quadratic_field(13);
    CHECK(cyclic_cover_exists(cyclic_extension(K, K), 1) == Bool3::True);
    CHECK(cyclic_cover_exists(over_q(quadratic_field(17)), 8) == Bool3::True);   // h_2 = 3
    CHECK(cyclic_cover_exists(over_q(quadratic_field(17)), 16) == Bool3::False);
}

TEST_CASE("height divisibility oracle") {
    // witness for Q(sqrt 2): the quartic character mod 16
    auto chi2 = DirichletCharacter::quadratic(2);
    auto w = height_divisibility_oracle(chi2, 2, 1, 64);
    REQUIRE(w.has_value());
    CHECK(conductor(*w) == 16);
    CHECK(power(*w, 2) == primitive_part(chi2));

    // trivial character: trivial witness at any level
    CHECK(height_divisibility_oracle(DirichletCharacter::trivial(), 2, 3, 100).has_value());

    // Q(i) has height 0: no witness up to a large bound
    CHECK_FALSE(height_divisibility_oracle(DirichletCharacter::quadratic(-1), 2, 1, 10000).has_value());

    // coprime order: chi cubic mod 7, p = 2
    DirichletCharacter cubic(7, 3, {1});
    auto w2 = height_divisibility_oracle(cubic, 2, 2, 7);
    REQUIRE(w2.has_value());
    CHECK(power(*w2, 4) == cubic);
}

TEST_CASE("global height is the minimum of its breakdown") {
    u64 seed = 606;
    int done = 0;
    for (u64 t = 0; done < 40; ++t) {
        i64 n = 3 + i64(rng_at(seed, t) % 150);
        auto chars = all_characters_mod(n);
        auto& chi = chars[rng_at(seed ^ 1, t) % chars.size()];
        if (chi.order() < 2) continue;
        auto ext = over_q(field_of_character(chi));
        for (i64 p : {2, 3}) {
            auto h = global_height(ext, p);
            for (auto& [pl, v] : h.breakdown) CHECK(h.upper <= v);
        }
        ++done;
    }
}

TEST_CASE("imaginary cyclic fields of even degree have h_2 = 0") {
    // complex conjugation sits in the 2-primary part of a cyclic group, so
    // the 2-primary subfield is imaginary and the archimedean place caps the
    // height at 0
    int done = 0;
    for (i64 n = 3; n <= 300 && done < 50; ++n) {
        for (auto& chi : all_characters_mod(n)) {
            if (done >= 50) break;
            if (chi.order() % 2 != 0 || conductor(chi) != n) continue;
            auto K = field_of_character(chi);
            if (K.is_real()) continue;
            auto h = global_height(over_q(K), 2);
            REQUIRE(h.exact);
            CHECK(h.upper == ExtInt::of(0));
            // and the archimedean entry of the breakdown is the binding one
            bool arch_zero = false;
            for (auto& [pl, v] : h.breakdown)
                if (pl.infinite && v == ExtInt::of(0)) arch_zero = true;
            CHECK(arch_zero);
            ++done;
        }
    }
    CHECK(done == 50);
}

TEST_CASE("oracle concordance with global heights, small corpus") {
    // every found witness level is <= the exact global height, and for finite
    // heights the maximal witness level attains it
    int checked = 0;
    for (i64 n = 3; n <= 40; ++n) {
        for (auto& chi : all_characters_mod(n)) {
            if (conductor(chi) != n || chi.order() == 1) continue;
            auto K = field_of_character(chi);
            for (i64 p : {2, 3}) {
                if (K.degree() % p != 0) continue;
                auto h = global_height(over_q(K), p);
                REQUIRE(h.exact);
                i64 bound = std::min<i64>(16 * n, 10000);
                int rmax = 0;
                for (int r = 1; r <= 8; ++r) {
                    if (ExtInt::of(r) <= h.upper || r <= 8) {
                        auto w = height_divisibility_oracle(chi, p, r, bound);
                        if (w) {
                            CHECK(ExtInt::of(r) <= h.upper);
                            rmax = r;
                        } else {
                            break;
                        }
                    }
                }
                if (!h.upper.inf) CHECK(rmax == h.upper.v);
                ++checked;
            }
        }
    }
    CHECK(checked > 30);
}
