#pragma once
// Natural density of witnessed noncrossed products in a fiber, measured by
// Hasse-invariant vectors on growing support windows.  With a pinned inert
// prime q0 absorbing the zero-sum constraint, the classes with supp <= S and
// ind(alpha^K) | m correspond bijectively to the product
//   Y_S = prod_{q in S'} (1/(n_q m)) Z/Z,      S' = S \ {q0},
// so |Y_S| = prod n_q m.  The witnessed subset X_S (index exactly m and a
// full-index place inside each given prime set) is counted exactly on small
// windows and estimated by a seeded, thread-split-stable Monte Carlo
// otherwise.  The counting bound
//   1 - |X_S|/|Y_S| <= (1 - phi(nm)/(nm))^{|S' ∩ P|}
// is exposed both as a number and as an exact comparison.

#include <cmath>

#include "brauer.hpp"

namespace witt {

struct SupportWindow {
    i64 x = 0;
    std::vector<i64> primes;       // ascending; includes q0 when pinned
    std::optional<i64> pinned_q0;  // an inert prime of K

    std::vector<i64> support_without_q0() const {
        std::vector<i64> out;
        for (i64 q : primes)
            if (!pinned_q0 || q != *pinned_q0) out.push_back(q);
        return out;
    }
};

// window of all primes <= x, pinned at the smallest inert prime beyond every
// P-set member inside the window (appended if that exceeds x)
inline SupportWindow make_window(const AbelianField& K, i64 x, const std::vector<PrimeSetSpec>& specs) {
    require(K.degree() > 1, "window pinning needs a nontrivial cyclic field");
    auto ext = over_q(K);
    require(ext.degree() == K.degree(), "window pinning needs a cyclic field");
    SupportWindow w;
    w.x = x;
    w.primes = primes_up_to(x);
    i64 floor_q0 = 0;
    for (auto& s : specs)
        for (i64 q : w.primes)
            if (s.matches(q)) floor_q0 = std::max(floor_q0, q);
    auto quot = quotient_structure(K.subgroup());
    for (i64 q = floor_q0 + 1;; ++q) {
        if (!is_prime(q) || K.conductor() % q == 0) continue;
        if (quot.order_of(q % K.conductor()) == K.degree()) {  // inert
            w.pinned_q0 = q;
            break;
        }
        require(q < floor_q0 + 100000, "no inert prime found for pinning");
    }
    if (std::find(w.primes.begin(), w.primes.end(), *w.pinned_q0) == w.primes.end())
        w.primes.push_back(*w.pinned_q0);
    return w;
}

inline i64 local_degree_in(const AbelianField& K, i64 q) {
    return local_data(AbelianField::rationals(), K, Place::at(q)).local_degree();
}

// |Y_S| = prod over S' of n_q * m
inline i64 count_Y(const AbelianField& K, i64 m, const SupportWindow& window) {
    require(window.pinned_q0.has_value(), "count_Y: window must be pinned at an inert prime");
    require(m > 1, "count_Y: m > 1");
    i64 total = 1;
    for (i64 q : window.support_without_q0()) total = mul_checked(total, mul_checked(local_degree_in(K, q), m));
    return total;
}

namespace detail {

struct WindowGeometry {
    std::vector<i64> qs;       // S'
    std::vector<i64> radix;    // n_q * m per coordinate
    std::vector<i64> deg;      // n_q
    i64 q0 = 0, n0 = 1;        // pinned prime and its local degree (= [K:Q])
    i64 D = 1;                 // lcm of all n_q * m (denominator for sums)
    std::vector<std::vector<char>> in_spec;  // spec x coordinate membership
};

inline WindowGeometry window_geometry(const AbelianField& K, i64 m, const SupportWindow& window,
                                      const std::vector<PrimeSetSpec>& specs) {
    WindowGeometry g;
    require(window.pinned_q0.has_value(), "window must be pinned");
    g.q0 = *window.pinned_q0;
    g.n0 = local_degree_in(K, g.q0);
    check(g.n0 == K.degree(), "pinned prime must be inert");
    for (i64 q : window.support_without_q0()) {
        g.qs.push_back(q);
        i64 nq = local_degree_in(K, q);
        g.deg.push_back(nq);
        g.radix.push_back(mul_checked(nq, m));
        g.D = std::lcm(g.D, nq * m);
    }
    g.D = std::lcm(g.D, g.n0 * m);
    g.in_spec.resize(specs.size());
    for (size_t s = 0; s < specs.size(); ++s) {
        g.in_spec[s].resize(g.qs.size());
        for (size_t i = 0; i < g.qs.size(); ++i) g.in_spec[s][i] = specs[s].matches(g.qs[i]) ? 1 : 0;
    }
    return g;
}

// X-membership of the invariant vector a (a_i over radix_i): restricted
// index exactly m and, for every spec, a full-index coordinate inside it
inline bool is_witnessed(const WindowGeometry& g, i64 m, const std::vector<i64>& a) {
    i64 ind = 1;
    i64 sum_num = 0;  // sum of invariants over denominator D
    for (size_t i = 0; i < g.qs.size(); ++i) {
        // inv = a_i / (n_i m); restricted order = m / gcd(a_i, m)
        ind = std::lcm(ind, m / std::gcd(a[i], m));
        sum_num = mod_pos(sum_num + a[i] * (g.D / g.radix[i]), g.D);
    }
    // balancing coordinate at the inert q0: inv0 = -sum, restricted order =
    // order of n0 * inv0
    i64 bal = mod_pos(-sum_num, g.D);
    i64 scaled = mod_pos(bal * g.n0, g.D);
    i64 ord0 = g.D / std::gcd(scaled == 0 ? g.D : scaled, g.D);
    ind = std::lcm(ind, ord0);
    if (ind != m) return false;
    for (auto& flags : g.in_spec) {
        bool hit = false;
        for (size_t i = 0; i < g.qs.size() && !hit; ++i)
            if (flags[i] && m / std::gcd(a[i], m) == m) hit = true;
        if (!hit) return false;
    }
    return true;
}

}  // namespace detail

// exact count of X_S by full enumeration (guarded)
inline i64 count_X_bruteforce(const AbelianField& K, i64 m, const SupportWindow& window,
                              const std::vector<PrimeSetSpec>& specs) {
    require(m > 1, "count_X: m > 1 (the zero class is never counted)");
    i64 Y = count_Y(K, m, window);
    require(Y <= 10000000, "count_X: enumeration guard exceeded");
    auto g = detail::window_geometry(K, m, window, specs);
    std::vector<i64> a(g.qs.size(), 0);
    i64 count = 0;
    while (true) {
        if (detail::is_witnessed(g, m, a)) ++count;
        size_t i = 0;
        for (; i < a.size(); ++i) {
            if (++a[i] < g.radix[i]) break;
            a[i] = 0;
        }
        if (i == a.size()) break;
    }
    return count;
}

// 1 - (1 - phi(nm)/(nm))^{hits}
inline double density_bound(i64 n, i64 m, i64 hits) {
    double ratio = 1.0 - double(euler_phi(mul_checked(n, m))) / double(n * m);
    double out = 1.0;
    for (i64 i = 0; i < hits; ++i) out *= ratio;
    return 1.0 - out;
}

// exact comparison  X/Y >= 1 - ((nm - phi(nm))/(nm))^h  via integers
inline bool density_bound_holds_exact(i64 X, i64 Y, i64 n, i64 m, i64 hits) {
    i64 nm = mul_checked(n, m);
    i64 miss = nm - euler_phi(nm);
    // X * nm^h >= Y * (nm^h - miss^h)
    i128 lhs = X, pw = 1, mw = 1;
    for (i64 i = 0; i < hits; ++i) {
        pw *= nm;
        mw *= miss;
        check(pw < (i128(1) << 120), "density bound: exponent too large for exact comparison");
    }
    lhs *= pw;
    return lhs >= i128(Y) * (pw - mw);
}

struct DensityReport {
    i64 x = 0;
    i64 m = 1;
    i64 q0 = 0;
    size_t support_size = 0;
    bool exact = false;
    double Y = 0;              // |Y_S| (exact value when representable)
    i64 Y_exact = 0;           // only when exact
    double X = 0;              // count or estimate scaled to |Y_S|
    i64 X_exact = 0;           // only when exact
    double d = 0;              // d_S = |X_S| / |Y_S|
    double ci_low = 0, ci_high = 1;  // 95% CI (Monte Carlo mode)
    u64 samples = 0, seed = 0;
    double lower_bound = 0;    // composed counting bound
    std::vector<i64> spec_hits;  // |S' ∩ P_i|
};

inline DensityReport noncrossed_density_report(const DirichletCharacter& chi, i64 m, i64 x, u64 seed = 1,
                                               u64 samples = 200000, bool force_monte_carlo = false) {
    auto cls = classify_fiber(chi, m);
    require(cls.verdict == FiberCase::CaseII, "density report: fiber must be Case II");
    AbelianField K = field_of_character(chi);
    auto ext = over_q(K);
    i64 p = cls.witness_primes.front();
    int n_p = valuation(m, p);
    std::vector<PrimeSetSpec> specs;
    if (factorize(m).size() > 1) specs.push_back(p0_spec(K, m));
    specs.push_back(p1_spec(ext, p, n_p));
    specs.push_back(p2_spec(ext, p));

    auto window = make_window(K, x, specs);
    auto g = detail::window_geometry(K, m, window, specs);

    DensityReport rep;
    rep.x = x;
    rep.m = m;
    rep.q0 = *window.pinned_q0;
    rep.support_size = g.qs.size();
    rep.seed = seed;
    double Yd = 1;
    i128 Yi = 1;
    bool fits = true;
    for (i64 r : g.radix) {
        Yd *= double(r);
        Yi *= r;
        if (Yi > i128(4e18)) fits = false;
    }
    rep.Y = Yd;

    i64 n = K.degree();
    rep.lower_bound = 1.0;
    for (size_t s = 0; s < specs.size(); ++s) {
        i64 hits = 0;
        for (char c : g.in_spec[s]) hits += c;
        rep.spec_hits.push_back(hits);
        rep.lower_bound -= std::pow(1.0 - double(euler_phi(mul_checked(n, m))) / double(n * m), double(hits));
    }
    rep.lower_bound = std::max(0.0, rep.lower_bound);

    if (!force_monte_carlo && fits && i64(Yi) <= 10000000) {
        rep.exact = true;
        rep.Y_exact = i64(Yi);
        rep.X_exact = count_X_bruteforce(K, m, window, specs);
        rep.X = double(rep.X_exact);
        rep.d = rep.Y_exact ? double(rep.X_exact) / double(rep.Y_exact) : 0.0;
        rep.ci_low = rep.ci_high = rep.d;
        return rep;
    }

    rep.samples = samples;
    u64 hits = 0;
    std::vector<i64> a(g.qs.size());
    for (u64 j = 0; j < samples; ++j) {
        for (size_t i = 0; i < a.size(); ++i) a[i] = i64(rng_at(seed, j * (a.size() + 1) + i) % u64(g.radix[i]));
        if (detail::is_witnessed(g, m, a)) ++hits;
    }
    rep.d = samples ? double(hits) / double(samples) : 0.0;
    double se = samples ? std::sqrt(std::max(rep.d * (1 - rep.d), 1e-12) / double(samples)) : 1.0;
    rep.ci_low = std::max(0.0, rep.d - 1.96 * se);
    rep.ci_high = std::min(1.0, rep.d + 1.96 * se);
    rep.X = rep.d * rep.Y;
    return rep;
}

}  // namespace witt
