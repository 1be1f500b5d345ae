#pragma once
// Decomposition data of places in abelian extensions K/k of abelian fields:
// inertia and decomposition subgroups, ramification and residue degrees,
// Frobenius classes, the tame local Galois presentation
//   < x, y | x^e = 1, y^f = x^t, x^y = x^N >      (N = |residue field of k|),
// and local Artin symbols of roots of unity.
//
// Everything reduces to subgroup arithmetic in (Z/n)^*: the inertia group of
// q in Gal(Q(mu_n)/Q) is the CRT factor {x = 1 mod n/q^a}, and the Frobenius
// is the class of q on the prime-to-q part.  For an intermediate k, places of
// k over q are all conjugate, so the relative local data is canonical.

#include "fields.hpp"

namespace witt {

struct Place {
    bool infinite = false;
    i64 q = 0;  // rational prime when finite

    static Place at(i64 q) {
        require(is_prime(q), "place: q must be a rational prime");
        return {false, q};
    }
    static Place archimedean() { return {true, 0}; }
    bool operator==(const Place& o) const { return infinite == o.infinite && q == o.q; }
    bool operator<(const Place& o) const { return infinite != o.infinite ? infinite < o.infinite : q < o.q; }
};

struct RootOfUnity {
    i64 p = 2;
    int r = 0;       // lives in mu_{p^r}
    i64 exponent = 0;  // the root is zeta_{p^r}^exponent
    i64 order() const {
        i64 pr = ipow(p, r);
        return pr / std::gcd(pr, mod_pos(exponent, pr) == 0 ? pr : mod_pos(exponent, pr));
    }
    bool is_trivial() const { return order() == 1; }
    static RootOfUnity minus_one() { return {2, 1, 1}; }
    static RootOfUnity one() { return {2, 0, 0}; }
    static RootOfUnity i() { return {2, 2, 1}; }
};

namespace detail {

// inertia subgroup of Gal(Q(mu_n)/Q) at q, as a subgroup lattice of U(n)
inline UnitSubgroup cyclotomic_inertia(std::shared_ptr<const UnitGroup> g, i64 q) {
    i64 n = g->modulus();
    i64 qa = 1;
    while (n % (qa * q) == 0) qa *= q;
    return UnitSubgroup::from_generators(g, reduction_kernel_gens(n, n / qa));
}

// Frobenius lift at q: the class acting as x -> x^q on the prime-to-q part
// and trivially on the q-part
inline i64 cyclotomic_frobenius_lift(i64 n, i64 q) {
    i64 qa = 1;
    while (n % (qa * q) == 0) qa *= q;
    i64 rest = n / qa;
    if (rest == 1) return 1 % std::max<i64>(n, 2);
    if (qa == 1) return mod_pos(q, n);
    return crt_pair(1, qa, mod_pos(q, rest), rest);
}

}  // namespace detail

struct LocalData {
    Place place;
    i64 e = 1, f = 1, g = 1;
    i64 frobenius = 1;     // residue representing Frobenius mod inertia (finite places)
    i64 residue_norm = 1;  // N(p) = q^{f(k/Q)} for the base place
    i64 base_residue_degree = 1;
    bool base_real = false, top_real = false;  // archimedean only
    i64 local_degree() const { return e * f; }
};

// Local data of K/k (abelian fields, k inside K) at a rational place.
// Cyclicity of K/k is not needed.
inline LocalData local_data(const AbelianField& k, const AbelianField& K, const Place& place) {
    require(contains(K, k), "local_data: k must be a subfield of K");
    i64 n = K.conductor();
    i64 rel_degree = K.degree() / k.degree();
    LocalData out;
    out.place = place;

    if (place.infinite) {
        out.base_real = k.is_real();
        out.top_real = K.is_real();
        if (out.base_real && !out.top_real) out.e = 2;  // real place ramifies in a complex field
        out.g = rel_degree / (out.e * out.f);
        return out;
    }

    i64 q = place.q;
    auto G = K.group_ptr();
    auto HK = K.subgroup();
    auto Hk = k.lifted_subgroup(n);

    auto I_full = detail::cyclotomic_inertia(G, q).join(HK);  // inertia of Gal(K/Q)
    i64 frob = detail::cyclotomic_frobenius_lift(n, q);

    // residue degree of q in k/Q: order of Frobenius in Gal(k/Q) mod inertia
    auto I_k_level = I_full.join(Hk);
    auto qk = quotient_structure(I_k_level);
    i64 fk = (G->rank() == 0) ? 1 : order_in_quotient(qk.qs, G->dlog(frob));
    out.base_residue_degree = fk;
    out.residue_norm = ipow(q, int(fk));

    // relative inertia I(K/k) = I(K/Q) ∩ Gal(K/k)
    auto I_rel = I_full.meet(Hk);
    out.e = HK.index() / I_rel.index();

    // Frobenius of the k-place: frob^{f_k}; its order mod relative inertia
    i64 phi = powmod(frob, fk, std::max<i64>(n, 2));
    out.frobenius = phi;
    check(Hk.contains(phi) || n == 1, "local_data: Frobenius power must fix the base");
    auto qrel = quotient_structure(I_rel);
    out.f = (G->rank() == 0) ? 1 : order_in_quotient(qrel.qs, G->dlog(phi));
    check(rel_degree % (out.e * out.f) == 0, "local_data: efg | [K:k]");
    out.g = rel_degree / (out.e * out.f);
    return out;
}

inline LocalData local_data(const CyclicExtension& ext, const Place& place) {
    return local_data(ext.base(), ext.top(), place);
}

// p splits completely in K <=> N(p) = 1 (mod m) when K = Q(mu_m); in general
// the Frobenius class of q lands in H_K
inline bool splits_completely(const AbelianField& K, i64 q) {
    require(is_prime(q), "splits_completely: q prime");
    require(K.conductor() % q != 0, "splits_completely: q must be unramified (q | conductor)");
    return K.conductor() == 1 || K.subgroup().contains(q % K.conductor());
}

inline bool splits_in_mu(i64 m, i64 q) {
    require(m >= 1 && std::gcd(q, m) == 1, "splits_in_mu: gcd(q,m)=1 required");
    return mod_pos(q, m) == 1 % m;
}

inline bool splits_in_eta(i64 m, i64 q) {
    require(m >= 1 && std::gcd(q, m) == 1, "splits_in_eta: gcd(q,m)=1 required");
    return mod_pos(q, m) == 1 % m || mod_pos(q + 1, m) == 0;
}

struct TameLocalPresentation {
    i64 e = 1, f = 1, t = 1;
    i64 q = 1;                // N(p), the residue size of the base
    i64 inertia_generator = 1;  // residue class x with y^f = x^t
    bool abelian_criterion = true;  // N(p) = 1 (mod e); always true here
};

inline TameLocalPresentation tame_presentation(const CyclicExtension& ext, i64 q) {
    auto ld = local_data(ext, Place::at(q));
    require(ld.e % q != 0, "tame_presentation: wildly ramified place rejected");
    TameLocalPresentation pres;
    pres.e = ld.e;
    pres.f = ld.f;
    pres.q = ld.residue_norm;

    i64 n = ext.top().conductor();
    if (n == 1 || ld.e == 1) {
        pres.t = pres.e;  // y^f = 1 = x^e
        pres.inertia_generator = 1 % std::max<i64>(n, 2);
    } else {
        auto G = ext.top().group_ptr();
        auto HK = ext.top().subgroup();
        auto Hk = ext.galois_subgroup();
        auto I_rel = detail::cyclotomic_inertia(G, q).join(HK).meet(Hk);
        auto qI = relative_quotient(I_rel, HK);  // cyclic of order e
        check(qI.is_cyclic() && qI.order() == ld.e, "tame inertia must be cyclic of order e");
        i64 yf = powmod(ld.frobenius, ld.f, n);
        check(I_rel.contains(yf), "y^f must lie in the inertia subgroup");
        auto coords = qI.coords_of(yf);
        // choose the inertia generator x so that y^f = x^t with t | e
        i64 best_x = -1, best_t = 0;
        for (i64 x = 1; x < n; ++x) {
            if (std::gcd(x, n) != 1 || !I_rel.contains(x)) continue;
            if (qI.order_of(x) != ld.e) continue;
            i64 cx = qI.coords_of(x)[0];
            i64 j = mulmod(coords[0], inv_mod(cx, ld.e), ld.e);  // y^f = x^j
            i64 t = (j == 0) ? ld.e : j;
            if (ld.e % t == 0) {
                best_x = x;
                best_t = t;
                break;
            }
        }
        check(best_x > 0, "tame_presentation: no inertia generator with t | e");
        pres.inertia_generator = best_x;
        pres.t = best_t;
    }
    // relations forced by the presentation
    i64 Nq = pres.q;
    check(pres.e % pres.t == 0, "t | e");
    check(mod_pos(powmod(Nq % std::max<i64>(pres.e, 1), pres.f, std::max<i64>(pres.e, 1)) - 1, std::max<i64>(pres.e, 1)) == 0 || pres.e == 1,
          "q^f = 1 (mod e)");
    i64 et = pres.e / pres.t;
    check(et == 1 || mod_pos(Nq - 1, et) == 0, "q = 1 (mod e/t)");
    pres.abelian_criterion = (pres.e == 1) || mod_pos(Nq - 1, pres.e) == 0;
    check(pres.abelian_criterion, "abelian local extension must have N(p) = 1 (mod e)");
    return pres;
}

// s_p of the completion of k at a place over q
inline int s_p_local(const AbelianField& k, i64 q, i64 p) {
    if (q != p) {
        auto ld = local_data(AbelianField::rationals(), k, Place::at(q));
        return vp_of_power_minus_one(q, ld.base_residue_degree, p);
    }
    // wild case: largest r with mu_{p^r} inside the completion, i.e. the
    // place has local degree 1 in k(mu_{p^r})/k
    int r = (p == 2) ? 1 : 0;
    while (true) {
        auto C = compositum(k, AbelianField::cyclotomic(ipow(p, r + 1)));
        if (C == k) {
            ++r;  // mu_{p^{r+1}} is already in k globally
            continue;
        }
        auto ld = local_data(k, C, Place::at(p));
        if (ld.local_degree() != 1) break;
        ++r;
        check(r < 62, "s_p_local: runaway wild root count");
    }
    return r;
}

// Local Artin symbol of a root of unity u inside Q_q, evaluated on the
// abelian extension K/Q: a unit acts on the mu_{q^a}-part by zeta -> zeta^{u^{-1}}
// and trivially on the prime-to-q part.  Returns the residue class in
// (Z/n_K)^*; the root is a local norm from K iff the class lies in H_K.
struct SymbolResult {
    i64 residue = 1;   // class in (Z/n)^* of the symbol
    bool trivial = true;  // trivial on K <=> the root is a norm
};

inline SymbolResult artin_symbol_root_of_unity(const AbelianField& K, i64 q, const RootOfUnity& root) {
    require(is_prime(q), "artin symbol: q prime");
    i64 ord = root.order();
    if (q == 2) {
        require(ord <= 2, "artin symbol: only +-1 lie in Q_2");
    } else {
        require(ord == 1 || (root.p != q && (q - 1) % ord == 0), "artin symbol: root of unity not in Q_q");
    }
    i64 n = K.conductor();
    i64 qa = 1;
    while (n % (qa * q) == 0) qa *= q;
    SymbolResult res;
    if (ord == 1 || qa == 1 || n == 1) {
        res.residue = 1 % std::max<i64>(n, 2);
        res.trivial = true;  // units act trivially on the prime-to-q part
        return res;
    }
    i64 u;
    if (q == 2) {
        u = qa - 1;  // the root is -1
    } else {
        // Teichmueller lift to mod q^a of the canonical root
        i64 g = smallest_primitive_root(q, 1);
        i64 u0 = powmod(powmod(g, (q - 1) / ord, q), mod_pos(root.exponent, ord), q);
        u = u0;
        for (int it = 0; it < 2 * valuation(qa, q) + 4; ++it) u = powmod(u, q, qa);
        check(powmod(u, ord, qa) == 1 % qa, "Teichmueller lift must be a root of unity");
    }
    i64 cls = inv_mod(u, qa);
    res.residue = (n / qa == 1) ? cls : crt_pair(cls, qa, 1, n / qa);
    res.trivial = K.subgroup().contains(res.residue);
    return res;
}

// Norm of a root of unity from the completion k_p (place over q) down to Q_q:
// zeta^{sum of the decomposition group's cyclotomic exponents}.
inline RootOfUnity norm_of_root_down_tower(const AbelianField& k, i64 q, const RootOfUnity& root) {
    require(is_prime(q), "norm down: q prime");
    i64 ord = root.order();
    if (ord == 1) return RootOfUnity::one();
    int rr = root.r - valuation(std::gcd(mod_pos(root.exponent, ipow(root.p, root.r)), ipow(root.p, root.r)), root.p);
    require(rr <= s_p_local(k, q, root.p), "norm down: root of unity not in the local field");

    i64 pr = ipow(root.p, root.r);
    i64 sum;
    if (q != root.p) {
        // tame: inertia acts trivially; Frobenius acts as x -> x^q
        auto ld = local_data(AbelianField::rationals(), k, Place::at(q));
        i64 geom = 0;
        for (i64 i = 0, t = 1; i < ld.base_residue_degree; ++i, t = mulmod(t, q, pr)) geom = mod_pos(geom + t, pr);
        sum = mulmod(ld.e, geom, pr);
    } else if (root.p == 2 && rr <= 1) {
        // the root is -1: every automorphism fixes it, so N(-1) = (-1)^{[k_p:Q_2]}
        auto ld = local_data(AbelianField::rationals(), k, Place::at(q));
        sum = mod_pos(ld.local_degree(), pr);
    } else {
        // wild with rr >= 2: such roots are global cyclotomic ones
        // (mu_{p^infty} of Q_p(mu_n) is mu_{p^{v_p(n)}} up to sign), so the
        // decomposition group's residues act on them; sum those mod p^r
        i64 n = k.conductor();
        check(n % ipow(root.p, rr) == 0, "wild root must come from the global cyclotomic field");
        auto G = k.group_ptr();
        auto Hk = k.subgroup();
        auto W = detail::cyclotomic_inertia(G, q).join(UnitSubgroup::from_generators(G, {detail::cyclotomic_frobenius_lift(n, q)}));
        // cosets of W ∩ H_k inside W, enumerated by canonical lattice labels
        auto WH = W.meet(Hk);
        std::vector<std::vector<i64>> reps;
        std::vector<i64> rep_residues;
        auto canon = [&](i64 x) { return hnf_reduce(WH.lattice(), G->dlog(x)); };
        std::vector<i64> frontier{1 % n};
        reps.push_back(canon(1 % n));
        rep_residues.push_back(1 % n);
        std::vector<i64> gens = W.generator_residues();
        for (size_t head = 0; head < frontier.size(); ++head) {
            for (i64 g : gens) {
                i64 y = mulmod(frontier[head], g, n);
                auto c = canon(y);
                bool seen = false;
                for (auto& r0 : reps)
                    if (r0 == c) {
                        seen = true;
                        break;
                    }
                if (!seen) {
                    reps.push_back(c);
                    rep_residues.push_back(y);
                    frontier.push_back(y);
                }
            }
        }
        sum = 0;
        for (i64 x : rep_residues) sum = mod_pos(sum + x, pr);
    }
    return RootOfUnity{root.p, root.r, mulmod(root.exponent, sum, pr)};
}

}  // namespace witt
