#include <catch2/catch_amalgamated.hpp>

#include "witt/density.hpp"

using namespace witt;

namespace {
SupportWindow window_of(std::vector<i64> primes, i64 q0) {
    SupportWindow w;
    w.primes = std::move(primes);
    w.x = w.primes.empty() ? 0 : w.primes.back();
    if (std::find(w.primes.begin(), w.primes.end(), q0) == w.primes.end()) w.primes.push_back(q0);
    w.pinned_q0 = q0;
    return w;
}

// zero-sum enumeration over the whole window, as an independent oracle
i64 count_Y_bruteforce(const AbelianField& K, i64 m, const SupportWindow& w) {
    std::vector<i64> qs = w.primes;
    std::vector<i64> radix;
    i64 D = 1;
    for (i64 q : qs) {
        i64 r = local_degree_in(K, q) * m;
        radix.push_back(r);
        D = std::lcm(D, r);
    }
    std::vector<i64> a(qs.size(), 0);
    i64 count = 0;
    while (true) {
        i64 s = 0;
        for (size_t i = 0; i < a.size(); ++i) s = mod_pos(s + a[i] * (D / radix[i]), D);
        if (s == 0) ++count;
        size_t i = 0;
        for (; i < a.size(); ++i) {
            if (++a[i] < radix[i]) break;
            a[i] = 0;
        }
        if (i == a.size()) break;
    }
    return count;
}
}  // namespace

TEST_CASE("count_Y formula") {
    auto K = quadratic_field(-3);
    CHECK(count_Y(K, 4, window_of({5, 7}, 11)) == 32);  // (2*4)*(1*4)
    CHECK(count_Y(K, 4, window_of({}, 11)) == 1);
    CHECK(count_Y(K, 2, window_of({7}, 11)) == 2);
}

TEST_CASE("count_Y matches zero-sum brute force") {
    auto K = quadratic_field(-3);
    for (auto& [primes, q0, m] : std::vector<std::tuple<std::vector<i64>, i64, i64>>{
             {{5, 7}, 11, 4}, {{7, 13}, 5, 2}, {{2, 7}, 11, 4}, {{5, 7, 13}, 17, 2}}) {
        auto w = window_of(primes, q0);
        CHECK(count_Y(K, m, w) == count_Y_bruteforce(K, m, w));
    }
    auto K5 = quadratic_field(5);
    auto w5 = window_of({11, 19}, 2);  // 2 is inert in Q(sqrt 5)
    CHECK(count_Y(K5, 3, w5) == count_Y_bruteforce(K5, 3, w5));
}

TEST_CASE("count_X on the worked example") {
    auto K = quadratic_field(-3);
    PrimeSetSpec P1{PRole::P1, 12, {5}, ""};
    auto w = window_of({5, 7}, 11);
    CHECK(count_X_bruteforce(K, 4, w, {P1}) == 16);
    // empty-intersection spec
    PrimeSetSpec none{PRole::P1, 12, {1}, ""};
    CHECK(count_X_bruteforce(K, 4, w, {none}) == 0);
}

TEST_CASE("density bound values") {
    CHECK(density_bound(2, 4, 3) == Catch::Approx(7.0 / 8));
    CHECK(density_bound(2, 4, 0) == Catch::Approx(0.0));
    CHECK(density_bound(2, 4, 10) == Catch::Approx(1023.0 / 1024));
}

TEST_CASE("exact densities respect the counting bound") {
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    auto ext = over_q(K);
    auto P1 = p1_spec(ext, 2, 2);
    auto P2 = p2_spec(ext, 2);
    u64 seed = 31;
    std::vector<i64> pool{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    int done = 0;
    for (u64 t = 0; done < 50; ++t) {
        // random small window
        std::vector<i64> primes;
        for (int j = 0; j < 4; ++j) {
            i64 q = pool[rng_at(seed, 8 * t + j) % pool.size()];
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
        }
        std::sort(primes.begin(), primes.end());
        i64 q0 = 59;  // inert, beyond the pool
        auto w = window_of(primes, q0);
        i64 m = 4;
        i64 Y = count_Y(K, m, w);
        if (Y > 100000) continue;
        for (auto& spec : {P1, P2}) {
            i64 X = count_X_bruteforce(K, m, w, {spec});
            i64 hits = 0;
            for (i64 q : primes)
                if (spec.matches(q)) ++hits;
            CHECK(density_bound_holds_exact(X, Y, K.degree(), m, hits));
            CHECK(double(X) / double(Y) >= density_bound(K.degree(), m, hits) - 1e-12);
        }
        ++done;
    }
}

TEST_CASE("noncrossed density report") {
    auto chi = DirichletCharacter::quadratic(-3);
    CHECK_THROWS_AS(noncrossed_density_report(chi, 2, 100), std::invalid_argument);  // Case I

    // small x: exact mode
    auto rep = noncrossed_density_report(chi, 4, 13);
    CHECK(rep.exact);
    CHECK(rep.Y_exact == count_Y(field_of_character(chi), 4,
                                 window_of({2, 3, 5, 7, 11, 13}, rep.q0)));
    CHECK(rep.d >= rep.lower_bound - 1e-12);
    CHECK(rep.d <= 1.0);

    // Monte Carlo agrees with the exact count on the same window
    auto mc = noncrossed_density_report(chi, 4, 13, 2024, 60000, true);
    CHECK_FALSE(mc.exact);
    CHECK(mc.ci_low <= rep.d);
    CHECK(rep.d <= mc.ci_high);

    // determinism of the estimator
    auto mc2 = noncrossed_density_report(chi, 4, 13, 2024, 60000, true);
    CHECK(mc.d == mc2.d);

    // growing windows: d_x beyond the first members keeps the bound and ends high
    auto r50 = noncrossed_density_report(chi, 4, 50, 7, 40000);
    auto r200 = noncrossed_density_report(chi, 4, 200, 7, 40000);
    CHECK(r50.d >= r50.lower_bound - 0.02);
    CHECK(r200.d >= r200.lower_bound - 0.02);
    CHECK(r200.d > 0.8);
    CHECK(r200.d >= r50.d - 0.05);  // monotone up to sampling noise
}
