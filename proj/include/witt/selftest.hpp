#pragma once
// The acceptance corpus: one entry per end-to-end criterion, shared by the
// dedicated acceptance binary and the CLI `selftest` subcommand.  Every
// tolerance is pinned here in code.

#include <chrono>
#include <functional>

#include "io.hpp"

namespace witt {

struct AcceptanceOutcome {
    bool pass = true;
    std::string detail;
    double ms = 0;
    void fail(const std::string& why) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

struct AcceptanceItem {
    int id;
    std::string name;
    std::string category;
    std::function<void(AcceptanceOutcome&)> run;
};

namespace acceptance {

// degree-d subfield of the q-th cyclotomic field, q prime
inline AbelianField cyclic_subfield(i64 q, i64 d) {
    auto G = unit_group(q);
    AbelianField K(q, {powmod(G->basis()[0].residue, d, q)});
    check(K.degree() == d, "cyclic subfield degree");
    return K;
}

inline void quadratic_fiber_over_sqrt_minus3(AcceptanceOutcome& out) {
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    out.expect(s_p(K, 2) == 1, "s_2 = 1");
    auto h = global_height(over_q(K), 2);
    out.expect(h.exact && h.upper == ExtInt::of(0), "h_2 = 0 exactly");
    auto b = b_p(over_q(K), 2);
    out.expect(b.exact && b.upper == ExtInt::of(1), "b_2 = 1 exactly");
    out.expect(classify_fiber(chi, 4).verdict == FiberCase::CaseII, "index 8 (m=4) is Case II");
    out.expect(classify_fiber(chi, 2).verdict == FiberCase::CaseI, "index 4 (m=2) is Case I");
}

inline void cubic_fiber_over_seventh_cyclotomic(AcceptanceOutcome& out) {
    auto K = cyclic_subfield(7, 3);
    auto chi = character_of_field(K);
    auto h = global_height(over_q(K), 3);
    out.expect(h.exact && h.upper == ExtInt::of(0), "h_3 = 0");
    out.expect(s_p(K, 3) == 0, "s_3 = 0");
    auto b = b_p(over_q(K), 3);
    out.expect(b.exact && b.upper == ExtInt::of(0), "b_3 = 0");
    out.expect(classify_fiber(chi, 3).verdict == FiberCase::CaseII, "index 9 (m=3) is Case II");
}

inline void height_closed_form(AcceptanceOutcome& out) {
    struct Inst {
        i64 p, q;
        int n;
    };
    for (auto inst : {Inst{2, 17, 4}, Inst{3, 7, 1}, Inst{5, 11, 1}, Inst{2, 257, 8}}) {
        for (int m = 1; m <= inst.n; ++m) {
            auto K = cyclic_subfield(inst.q, ipow(inst.p, m));
            auto h = global_height(over_q(K), inst.p);
            bool ok = h.exact && h.upper == ExtInt::of(inst.n - m);
            out.expect(ok, "height of the degree-" + std::to_string(ipow(inst.p, m)) + " subfield of Q(mu_" +
                               std::to_string(inst.q) + ") = " + std::to_string(inst.n - m) + ", got " + h.str());
        }
    }
}

inline void witness_congruences_verbatim(AcceptanceOutcome& out) {
    auto ext = over_q(quadratic_field(-3));
    for (int n = 2; n <= 5; ++n) {
        auto P1 = p1_spec(ext, 2, n);
        i64 N = 3 * ipow(2, n);
        i64 expect = (n % 2 == 0) ? 1 + ipow(2, n) : 1 + ipow(2, n + 1);
        bool ok = P1.modulus == N && P1.residues == std::vector<i64>{mod_pos(expect, N)};
        out.expect(ok, "P1(n=" + std::to_string(n) + ") = {" + std::to_string(mod_pos(expect, N)) + " mod " +
                           std::to_string(N) + "}");
    }
    auto P2 = p2_spec(ext, 2);
    out.expect(P2.modulus == 12 && P2.residues == std::vector<i64>{11}, "P2 = {-1 mod 12}");
}

inline void tensor_kills_noncrossedness(AcceptanceOutcome& out) {
    DirichletCharacter cubic(7, 3, {1});
    auto alpha = BrauerClass::from_finite({{19, Frac::of(1, 9)}, {2, Frac::of(8, 9)}});
    auto dec = decide_crossed(alpha, cubic);
    out.expect(dec.verdict == CrossedVerdict::Noncrossed, "index-9 class is witnessed noncrossed");
    out.expect(dec.fiber_index == 9, "fiber index 9");
    auto prod = tensor(FiberElement{alpha, cubic}, FiberElement{BrauerClass::zero(), DirichletCharacter::quadratic(-3)});
    out.expect(prod.index() == 18, "tensored index 18");
    auto dec2 = decide_crossed(prod.alpha, prod.chi);
    out.expect(dec2.classification.verdict == FiberCase::CaseI, "tensored fiber is Case I");
    out.expect(dec2.verdict == CrossedVerdict::Crossed, "tensored element is crossed");
}

inline void oracle_concordance(AcceptanceOutcome& out) {
    i64 violations = 0, checked = 0;
    for (i64 n = 3; n <= 200; ++n) {
        for (auto& chi : all_characters_mod(n)) {
            if (chi.order() == 1 || conductor(chi) != n) continue;
            auto K = field_of_character(chi);
            auto ext = over_q(K);
            for (i64 p : {2, 3, 5}) {
                if (chi.order() % p != 0) continue;
                auto h = global_height(ext, p);
                if (!h.exact) {
                    ++violations;
                    continue;
                }
                i64 bound = std::min<i64>(16 * n, 10000);
                ++checked;
                if (!h.upper.inf) {
                    // the witness ladder must stop exactly at the height
                    if (h.upper.v > 0) {
                        auto w = height_divisibility_oracle(chi, p, int(h.upper.v), bound);
                        if (!w) ++violations;
                    }
                    auto beyond = height_divisibility_oracle(chi, p, int(h.upper.v) + 1, bound);
                    if (beyond) ++violations;
                } else {
                    // unbounded height: some witness should exist at level 1
                    auto w = height_divisibility_oracle(chi, p, 1, bound);
                    if (!w) ++violations;
                }
            }
        }
    }
    out.expect(violations == 0, std::to_string(violations) + " oracle/height violations");
    out.detail = std::to_string(checked) + " (character, prime) pairs checked";
}

inline void classical_height_anchors(AcceptanceOutcome& out) {
    auto hi = global_height(over_q(quadratic_field(-1)), 2);
    out.expect(hi.exact && hi.upper == ExtInt::of(0), "h_2(Q(i)/Q) = 0");
    auto h2 = global_height(over_q(quadratic_field(2)), 2);
    out.expect(h2.exact && h2.upper.inf, "h_2(Q(sqrt 2)/Q) = infinity");
}

inline void specialness_and_exceptionality(AcceptanceOutcome& out) {
    out.expect(!is_special(AbelianField::rationals()).has_value(), "Q is not special");
    auto s14 = is_special(quadratic_field(-14));
    out.expect(s14.has_value() && *s14 == 2, "Q(sqrt(-14)) is special with index 2");
    auto k = quadratic_field(-14);
    auto v = is_exceptional(cyclic_extension(k, compositum(k, AbelianField::cyclotomic(4))));
    out.expect(v.verdict == Bool3::True, "Q(sqrt(-14), i)/Q(sqrt(-14)) is exceptional");
    // 100 random characters over Q: never exceptional
    u64 seed = 20260811;
    int done = 0, bad = 0;
    for (u64 t = 0; done < 100; ++t) {
        i64 n = 3 + i64(rng_at(seed, t) % 198);
        auto chars = all_characters_mod(n);
        auto& chi = chars[rng_at(seed ^ 3, t) % chars.size()];
        if (chi.order() < 2) continue;
        auto K = field_of_character(chi);
        if (is_exceptional(over_q(K)).verdict != Bool3::False) ++bad;
        ++done;
    }
    out.expect(bad == 0, "no exceptional extensions over Q (" + std::to_string(bad) + " failures)");
}

inline void brauer_arithmetic(AcceptanceOutcome& out) {
    u64 seed = 424242;
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    std::vector<i64> primes{5, 7, 11, 13, 17, 19, 23, 31};
    int bad = 0;
    for (u64 t = 0; t < 1000; ++t) {
        std::map<i64, Frac> entries;
        Frac sum{0, 1};
        for (int j = 0; j < 3; ++j) {
            i64 q = primes[rng_at(seed, 4 * t + j) % primes.size()];
            i64 den = 1 + i64(rng_at(seed ^ 5, 4 * t + j) % 12);
            Frac f = Frac::of(i64(rng_at(seed ^ 9, 4 * t + j) % u64(den)), den);
            entries[q] = entries.count(q) ? entries[q] + f : f;
            sum = sum + f;
        }
        entries[29] = entries.count(29) ? entries[29] + -sum : -sum;
        auto alpha = BrauerClass::from_finite(entries);
        try {
            auto r = restrict_class(alpha, K);  // zero-sum re-checked inside
            if (fiber_index(alpha, chi) != chi.order() * r.index()) ++bad;
            if (fiber_index(alpha, chi) % chi.order() != 0) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    out.expect(bad == 0, "restriction preserves exactness and the index formula");

    auto wit = decide_crossed(BrauerClass::from_finite({{5, Frac::of(1, 8)}, {11, Frac::of(7, 8)}}), chi);
    out.expect(wit.verdict == CrossedVerdict::Noncrossed, "witness instance is noncrossed");
    // every class with restricted index 2 decides Crossed
    int crossed_checked = 0;
    for (i64 a = 0; a < 4 && crossed_checked >= 0; ++a)
        for (i64 b = 0; b < 4; ++b) {
            Frac fa = Frac::of(a, 4), fb = Frac::of(b, 4);
            Frac fc = -(fa + fb);
            auto alpha = BrauerClass::from_finite({{5, fa}, {11, fb}, {29, fc}});
            if (restrict_class(alpha, K).index() != 2) continue;
            auto dc = decide_crossed(alpha, chi);
            out.expect(dc.verdict == CrossedVerdict::Crossed, "m = 2 instance must be crossed");
            ++crossed_checked;
        }
    out.expect(crossed_checked > 0, "some m = 2 instances exist");
}

inline void density_checks(AcceptanceOutcome& out) {
    auto chi = DirichletCharacter::quadratic(-3);
    auto K = field_of_character(chi);
    auto ext = over_q(K);
    auto P1 = p1_spec(ext, 2, 2);
    auto P2 = p2_spec(ext, 2);

    // count_Y vs zero-sum brute force on windows with product <= 10^5
    u64 seed = 99;
    std::vector<i64> pool{2, 3, 5, 7, 11, 13, 17, 19, 23};
    int windows = 0;
    for (u64 t = 0; windows < 12; ++t) {
        std::vector<i64> primes;
        for (int j = 0; j < 3; ++j) {
            i64 q = pool[rng_at(seed, 4 * t + j) % pool.size()];
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
        }
        std::sort(primes.begin(), primes.end());
        SupportWindow w;
        w.primes = primes;
        w.x = primes.back();
        w.pinned_q0 = 29;
        w.primes.push_back(29);
        i64 m = 2 + i64(rng_at(seed ^ 7, t) % 3);  // 2..4
        i64 Y = count_Y(K, m, w);
        if (Y > 100000) continue;
        // zero-sum brute force over the whole window
        std::vector<i64> radix;
        i64 D = 1;
        for (i64 q : w.primes) {
            radix.push_back(local_degree_in(K, q) * m);
            D = std::lcm(D, radix.back());
        }
        std::vector<i64> a(w.primes.size(), 0);
        i64 brute = 0;
        while (true) {
            i64 s = 0;
            for (size_t i = 0; i < a.size(); ++i) s = mod_pos(s + a[i] * (D / radix[i]), D);
            if (s == 0) ++brute;
            size_t i = 0;
            for (; i < a.size(); ++i) {
                if (++a[i] < radix[i]) break;
                a[i] = 0;
            }
            if (i == a.size()) break;
        }
        out.expect(brute == Y, "count_Y = brute force on window " + std::to_string(windows));
        ++windows;
    }

    // 50 exact instances of the counting bound
    int done = 0;
    for (u64 t = 0; done < 50; ++t) {
        std::vector<i64> primes;
        for (int j = 0; j < 4; ++j) {
            i64 q = pool[rng_at(seed ^ 21, 8 * t + j) % pool.size()];
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
        }
        std::sort(primes.begin(), primes.end());
        SupportWindow w;
        w.primes = primes;
        w.x = primes.back();
        w.pinned_q0 = 41;
        w.primes.push_back(41);
        i64 m = 4;
        if (count_Y(K, m, w) > 100000) continue;
        for (auto& spec : {P1, P2}) {
            i64 X = count_X_bruteforce(K, m, w, {spec});
            i64 hits = 0;
            for (i64 q : primes)
                if (spec.matches(q)) ++hits;
            out.expect(density_bound_holds_exact(X, count_Y(K, m, w), K.degree(), m, hits),
                       "bound violated on instance " + std::to_string(done));
        }
        ++done;
    }

    // d_x sequence
    double last = 0;
    std::string seq;
    for (i64 x : {50, 200, 1000}) {
        auto rep = noncrossed_density_report(chi, 4, x, 7, 60000);
        seq += (seq.empty() ? "" : ", ") + std::to_string(x) + ": " + std::to_string(rep.d);
        out.expect(rep.d >= rep.lower_bound - 0.02, "d_x respects the composed bound at x=" + std::to_string(x));
        last = rep.d;
    }
    out.expect(last > 0.8, "final density " + std::to_string(last) + " > 0.8");
    out.detail = "d_x: " + seq;
}

inline void metacyclic_suite(AcceptanceOutcome& out) {
    for (int s = 2; s <= 5; ++s)
        for (int t = 2; t <= 5; ++t) {
            MetacyclicGroup G(MFamily::E, s, t);
            out.expect(G.order() == ipow(2, s + t + 1), "group order 2^{s+t+1}");
            auto inv = structure_invariants(G);
            std::string at = " at (s,t)=(" + std::to_string(s) + "," + std::to_string(t) + ")";
            out.expect(inv.center_is_c2, "center = <c^2>" + at);
            out.expect(inv.commutator_is_a2, "commutator = <a^2>" + at);
            out.expect(inv.socle_is_a2s, "socle = <a^{2^s}>" + at);
            out.expect(presentation_isomorphism_check(s, t), "presentation isomorphism" + at);
            for (int l = 1; l < t; ++l)
                out.expect(kernel_decomposition(s, t, l).verified, "kernel decomposition" + at + " l=" + std::to_string(l));
        }
}

inline void h1_equivalence(AcceptanceOutcome& out) {
    // 200 random bicyclic instances with |G| |M| <= 10^5
    u64 seed = 8086;
    int done = 0, bad = 0;
    for (u64 t = 0; done < 200; ++t) {
        int k = 1 + int(rng_at(seed, 3 * t) % 2);
        std::vector<i64> orders;
        for (int i = 0; i < k; ++i) {
            i64 p = (rng_at(seed ^ 2, 3 * t + i) % 3 == 0) ? 3 : 2;
            orders.push_back(ipow(p, 1 + int(rng_at(seed ^ 4, 3 * t + i) % 3)));
        }
        FiniteModule M{orders};
        if (M.size() > 800) continue;
        Mat sig(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sig.at(i, j) = i64(rng_at(seed ^ 7, t * 16 + u64(4 * i + j)) % u64(M.orders[i]));
        if (!is_automorphism(M, sig)) continue;
        i64 so = matrix_order(M, sig);
        if (so > 16) continue;
        Mat tau = mat_pow_mod(M, sig, i64(rng_at(seed ^ 9, t) % u64(so)));
        if (rng_at(seed ^ 11, t) % 2) {
            Mat minus(k, k);
            for (int i = 0; i < k; ++i) minus.at(i, i) = M.orders[i] - 1;
            tau = mat_mul_mod(M, tau, minus);
        }
        i64 to = matrix_order(M, tau);
        if (so * to * M.size() > 100000) continue;
        BicyclicAction act{M, sig, tau, so, to};
        auto q = h1_restriction_kernel_Q(act);
        auto bf = h1_restriction_kernel_bruteforce(act);
        if (q != bf.invariant_factors) ++bad;
        ++done;
    }
    out.expect(bad == 0, std::to_string(bad) + " mismatches between the closed form and brute force");

    for (int s = 2; s <= 5; ++s)
        for (int l : {1, 2}) {
            auto r = lemma_E2_verify(s, l, s);
            std::string at = " (s=" + std::to_string(s) + ", l=" + std::to_string(l) + ")";
            out.expect(r.ok && r.Q.empty(), "dual-module identities and Q = 0" + at);
            if (r.ok) {
                AbelianActionGroup gp{r.dual_action.M, {2, 2}, {r.dual_action.sigma, r.dual_action.tau}};
                out.expect(ep_hypothesis_check(gp), "injectivity hypothesis" + at);
            }
        }
}

inline void chebotarev_sanity(AcceptanceOutcome& out) {
    auto ext = over_q(quadratic_field(-3));
    auto P1 = p1_spec(ext, 2, 2);
    auto P2 = p2_spec(ext, 2);
    auto r1 = chebotarev_check(P1, 1000000);
    auto r2 = chebotarev_check(P2, 1000000);
    out.expect(r1.relative_error < 0.02, "P1 density error " + std::to_string(r1.relative_error));
    out.expect(r2.relative_error < 0.02, "P2 density error " + std::to_string(r2.relative_error));
    out.detail = "P1: " + std::to_string(r1.observed) + " vs " + std::to_string(r1.predicted) +
                 "; P2: " + std::to_string(r2.observed) + " vs " + std::to_string(r2.predicted);
}

}  // namespace acceptance

inline const std::vector<AcceptanceItem>& acceptance_items() {
    static const std::vector<AcceptanceItem> items = {
        {1, "quadratic fiber over Q(sqrt(-3)): bounds and classification", "heights", acceptance::quadratic_fiber_over_sqrt_minus3},
        {2, "cubic fiber over the seventh cyclotomic subfield", "heights", acceptance::cubic_fiber_over_seventh_cyclotomic},
        {3, "closed-form heights of prime-cyclotomic subfields", "heights", acceptance::height_closed_form},
        {4, "witness congruence families for Q(sqrt(-3))", "primesets", acceptance::witness_congruences_verbatim},
        {5, "tensoring an index-9 noncrossed element into a crossed one", "brauer", acceptance::tensor_kills_noncrossedness},
        {6, "divisibility-witness concordance, conductors <= 200", "heights", acceptance::oracle_concordance},
        {7, "norm anchors: h_2(Q(i)/Q) = 0, h_2(Q(sqrt 2)/Q) = inf", "heights", acceptance::classical_height_anchors},
        {8, "special fields and exceptional extensions", "heights", acceptance::specialness_and_exceptionality},
        {9, "Hasse-invariant arithmetic and crossed/noncrossed verdicts", "brauer", acceptance::brauer_arithmetic},
        {10, "density counts, counting bound, d_x sequence", "density", acceptance::density_checks},
        {11, "metacyclic structure, presentation isomorphism, kernels", "metacyclic", acceptance::metacyclic_suite},
        {12, "H^1 restriction kernel: closed form vs brute force", "metacyclic", acceptance::h1_equivalence},
        {13, "sieved densities match the congruence prediction", "primesets", acceptance::chebotarev_sanity},
    };
    return items;
}

inline AcceptanceOutcome run_acceptance_item(const AcceptanceItem& item) {
    AcceptanceOutcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        item.run(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace witt
