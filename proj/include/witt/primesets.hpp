#pragma once
// Congruence compilations of the witness prime sets P0, P1, P2.  In the
// abelian-over-Q universe every Frobenius condition is a union of residue
// classes modulo one conductor (Chebotarev = Dirichlet), so each set is an
// exact pair (N, R): the primes q with gcd(q, N) = 1 and q mod N in R.
//
//   P0: the place of K splits completely in K(mu_m)
//   P1: the place of T = K ∩ k(mu_{p^infty}) is inert in K and splits
//       completely in T(mu_{p^n})
//   P2, Case A: the place of k is inert in K and in k(mu_{p^{s+1}})
//   P2, Case B (p = 2, also the exceptional case): inert in K and in
//       k(eta_{2^{s+1}})
//
// For a residue c, the Frobenius of the place of an intermediate field F
// below q is c^{f} with f the order of c in Gal(F/Q); the conditions are
// evaluated on that power, so the sets stay exact over any abelian base.

#include "heights.hpp"

namespace witt {

enum class PRole { P0, P1, P2 };

struct PrimeSetSpec {
    PRole role;
    i64 modulus = 1;
    std::vector<i64> residues;  // sorted subset of (Z/N)^*
    std::string note;

    bool matches(i64 q) const {
        if (modulus == 1) return true;
        if (std::gcd(mod_pos(q, modulus), modulus) != 1) return false;
        return std::binary_search(residues.begin(), residues.end(), mod_pos(q, modulus));
    }
    double predicted_density() const {
        return modulus == 1 ? 1.0 : double(residues.size()) / double(euler_phi(modulus));
    }
};

namespace detail {

inline void guard_spec_size(i64 N) { require(euler_phi(N) <= 2000000, "prime set spec: conductor too large to compile"); }

}  // namespace detail

// q splits completely in K(mu_m): Frobenius trivial on the compositum
inline PrimeSetSpec p0_spec(const AbelianField& K, i64 m) {
    require(m >= 2, "p0_spec: m >= 2");
    auto C = compositum(K, AbelianField::cyclotomic(m));
    i64 N = C.conductor();
    detail::guard_spec_size(N);
    PrimeSetSpec spec{PRole::P0, N, {}, "split completely in K(mu_" + std::to_string(m) + ")"};
    if (N == 1) return spec;
    spec.residues = C.subgroup().elements();
    return spec;
}

inline PrimeSetSpec p1_spec(const CyclicExtension& ext, i64 p, int n) {
    require(n >= 0, "p1_spec: n >= 0");
    auto T = cyclotomic_part(ext.top(), ext.base(), p);
    auto Tmu = compositum(T, AbelianField::cyclotomic(ipow(p, n)));
    auto full = compositum(ext.top(), Tmu);
    i64 N = full.conductor();
    detail::guard_spec_size(N);
    PrimeSetSpec spec{PRole::P1, N, {},
                      "inert in K over T = K ∩ k(mu_p^inf), split completely in T(mu_" + std::to_string(ipow(p, n)) + ")"};
    if (N == 1) return spec;
    auto HT = T.lifted_subgroup(N);
    auto HK = ext.top().lifted_subgroup(N);
    auto HTmu = Tmu.lifted_subgroup(N);
    auto qT = quotient_structure(HT);                 // Gal(T/Q)
    auto relKT = relative_quotient(HT, HK);           // Gal(K/T)
    i64 deg_KT = ext.top().degree() / T.degree();
    for (i64 c = 1; c < N; ++c) {
        if (std::gcd(c, N) != 1) continue;
        i64 f = qT.order_of(c);
        i64 frob = powmod(c, f, N);
        if (!HTmu.contains(frob)) continue;           // split completely in T(mu)
        if (relKT.order_of(frob) != deg_KT) continue;  // inert in K over T
        spec.residues.push_back(c);
    }
    check(!spec.residues.empty(), "p1_spec: empty residue set (K/T not cyclic or not disjoint?)");
    return spec;
}

inline PrimeSetSpec p2_spec(const CyclicExtension& ext, i64 p) {
    require(!ext.is_trivial(), "p2_spec: no inert condition exists for the trivial extension");
    CoverCase cse = case_AB(ext, p);
    int s = s_p(ext.top(), p);
    AbelianField M = cse == CoverCase::A ? compositum(ext.base(), AbelianField::cyclotomic(ipow(p, s + 1)))
                                         : compositum(ext.base(), AbelianField::real_cyclotomic(ipow(2, s + 1)));
    std::string note = cse == CoverCase::A
                           ? "Case A: inert in K and in k(mu_" + std::to_string(ipow(p, s + 1)) + ")"
                           : "Case B: inert in K and in k(eta_" + std::to_string(ipow(2, s + 1)) + ")";
    auto full = compositum(ext.top(), M);
    i64 N = full.conductor();
    detail::guard_spec_size(N);
    PrimeSetSpec spec{PRole::P2, N, {}, note};
    auto Hk = ext.base().lifted_subgroup(N);
    auto HK = ext.top().lifted_subgroup(N);
    auto HM = M.lifted_subgroup(N);
    auto qk = quotient_structure(Hk);  // Gal(k/Q)
    auto relK = relative_quotient(Hk, HK);
    auto relM = relative_quotient(Hk, HM);
    i64 dK = ext.degree();
    i64 dM = M.degree() / ext.base().degree();
    check(dM > 1, "p2_spec: the cyclotomic step above k must be nontrivial");
    for (i64 c = 1; c < N; ++c) {
        if (std::gcd(c, N) != 1) continue;
        i64 f = qk.order_of(c);
        i64 frob = powmod(c, f, N);
        if (relK.order_of(frob) != dK) continue;
        if (relM.order_of(frob) != dM) continue;
        spec.residues.push_back(c);
    }
    check(!spec.residues.empty(), "p2_spec: empty residue set");
    return spec;
}

// ascending primes q <= limit matching the spec (primes dividing N skipped)
inline std::vector<i64> enumerate_primes(const PrimeSetSpec& spec, i64 limit) {
    require(limit >= 2, "enumerate: limit >= 2");
    std::vector<i64> out;
    for (i64 q : primes_up_to(limit))
        if (spec.matches(q)) out.push_back(q);
    return out;
}

struct ChebotarevReport {
    i64 limit = 0;
    i64 matching = 0;
    i64 total_primes = 0;
    double observed = 0, predicted = 0;
    double relative_error = 0;
};

inline ChebotarevReport chebotarev_check(const PrimeSetSpec& spec, i64 limit) {
    ChebotarevReport rep;
    rep.limit = limit;
    rep.predicted = spec.predicted_density();
    for (i64 q : primes_up_to(limit)) {
        ++rep.total_primes;
        if (spec.matches(q)) ++rep.matching;
    }
    rep.observed = rep.total_primes ? double(rep.matching) / double(rep.total_primes) : 0.0;
    rep.relative_error = rep.predicted > 0 ? std::abs(rep.observed - rep.predicted) / rep.predicted : 0.0;
    return rep;
}

}  // namespace witt
