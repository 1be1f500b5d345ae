#pragma once
// Brauer classes of Q as finite Hasse-invariant vectors with zero sum,
// restriction of scalars to an abelian field, supports, the fiber index
// formula ind(alpha + chi) = |chi| * ind(alpha^{k(chi)}), the Case I/II fiber
// classification against the bounds b_p, and the per-class crossed /
// noncrossed decision with witness primes.

#include <map>

#include "primesets.hpp"

namespace witt {

// reduced fraction in Q/Z
struct Frac {
    i64 num = 0, den = 1;

    static Frac of(i64 n, i64 d) {
        require(d != 0, "fraction: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        n = mod_pos(n, d);
        i64 g = std::gcd(n, d);
        if (n == 0) return {0, 1};
        return {n / g, d / g};
    }
    Frac operator+(const Frac& o) const { return of(checked_cast(i128(num) * o.den + i128(o.num) * den, "frac add"), mul_checked(den, o.den)); }
    Frac operator-() const { return of(-num, den); }
    Frac scaled(i64 s) const { return of(mul_checked(num, mod_pos(s, den)), den); }
    i64 order() const { return den; }
    bool is_zero() const { return num == 0; }
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool operator<(const Frac& o) const { return i128(num) * o.den < i128(o.num) * den; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

class BrauerClass {
  public:
    BrauerClass() = default;
    explicit BrauerClass(const std::map<Place, Frac>& entries) {
        Frac sum{0, 1};
        for (auto& [pl, inv] : entries) {
            if (inv.is_zero()) continue;
            if (pl.infinite)
                require(inv == Frac::of(1, 2), "real place invariant must be 0 or 1/2");
            sum = sum + inv;
            inv_.emplace_back(pl, inv);
        }
        require(sum.is_zero(), "Hasse invariants must sum to 0 in Q/Z");
    }

    static BrauerClass zero() { return BrauerClass(); }
    static BrauerClass from_finite(const std::map<i64, Frac>& at_primes) {
        std::map<Place, Frac> m;
        for (auto& [q, f] : at_primes) m[Place::at(q)] = f;
        return BrauerClass(m);
    }

    const std::vector<std::pair<Place, Frac>>& invariants() const { return inv_; }
    bool is_zero() const { return inv_.empty(); }

    Frac invariant_at(const Place& p) const {
        for (auto& [pl, f] : inv_)
            if (pl == p) return f;
        return {0, 1};
    }

    i64 index() const {
        i64 m = 1;
        for (auto& [pl, f] : inv_) m = std::lcm(m, f.order());
        return m;
    }

    BrauerClass operator+(const BrauerClass& o) const {
        std::map<Place, Frac> m;
        for (auto& [pl, f] : inv_) m[pl] = f;
        for (auto& [pl, f] : o.inv_) m[pl] = m.count(pl) ? m[pl] + f : f;
        return BrauerClass(m);
    }

    std::vector<Place> support() const {
        std::vector<Place> s;
        for (auto& [pl, f] : inv_) s.push_back(pl);
        return s;
    }

    // restricted support: places attaining the full index (at a real place
    // this means order (2, ind))
    std::vector<Place> restricted_support() const {
        i64 ind = index();
        std::vector<Place> s;
        for (auto& [pl, f] : inv_) {
            i64 want = pl.infinite ? std::gcd<i64>(2, ind) : ind;
            if (f.order() == want) s.push_back(pl);
        }
        return s;
    }

  private:
    std::vector<std::pair<Place, Frac>> inv_;  // sorted by Place, zeros pruned
};

// a place of an abelian field K, named by the rational place below it and a
// canonical coset representative of the decomposition group
struct PlaceOfK {
    Place below;
    i64 coset = 1;  // smallest residue in the coset of D_q(K/Q) in Gal(K/Q)
    bool operator==(const PlaceOfK& o) const { return below == o.below && coset == o.coset; }
    bool operator<(const PlaceOfK& o) const { return below == o.below ? coset < o.coset : below < o.below; }
};

struct RestrictedClass {
    AbelianField field;
    std::vector<std::pair<PlaceOfK, Frac>> invariants;  // zeros pruned

    i64 index() const {
        i64 m = 1;
        for (auto& [pl, f] : invariants) m = std::lcm(m, f.order());
        return m;
    }
    std::vector<PlaceOfK> support() const {
        std::vector<PlaceOfK> s;
        for (auto& [pl, f] : invariants) s.push_back(pl);
        return s;
    }
    std::vector<PlaceOfK> restricted_support() const {
        i64 ind = index();
        std::vector<PlaceOfK> s;
        for (auto& [pl, f] : invariants) {
            i64 want = pl.below.infinite ? std::gcd<i64>(2, ind) : ind;
            if (f.order() == want) s.push_back(pl);
        }
        return s;
    }
    // rational primes under the restricted support
    std::vector<i64> restricted_support_primes() const {
        std::vector<i64> out;
        for (auto& pl : restricted_support())
            if (!pl.below.infinite && (out.empty() || out.back() != pl.below.q)) out.push_back(pl.below.q);
        return out;
    }
};

namespace detail {

// canonical coset representatives of the subgroup D (given as residues
// generating it together with H_K) in (Z/n)^*/H: BFS with smallest-residue
// labels; count = g = number of places
inline std::vector<i64> coset_reps(const AbelianField& K, const UnitSubgroup& D) {
    i64 n = K.conductor();
    if (n == 1) return {1};
    auto G = K.group_ptr();
    // bucket units by canonical D-coset label; ascending scan keeps the
    // smallest representative
    std::map<std::vector<i64>, i64> best;
    for (i64 x = 1; x < n; ++x) {
        if (std::gcd(x, n) != 1) continue;
        best.emplace(hnf_reduce(D.lattice(), G->dlog(x)), x);
    }
    std::vector<i64> reps;
    for (auto& [lab, x] : best) reps.push_back(x);
    std::sort(reps.begin(), reps.end());
    return reps;
}

inline std::vector<i64> place_cosets(const AbelianField& K, i64 q) {
    if (K.conductor() == 1) return {1};
    auto G = K.group_ptr();
    auto D = cyclotomic_inertia(G, q)
                 .join(UnitSubgroup::from_generators(G, {cyclotomic_frobenius_lift(K.conductor(), q)}))
                 .join(K.subgroup());
    return coset_reps(K, D);
}

inline std::vector<i64> place_cosets_infinite(const AbelianField& K) {
    if (K.conductor() == 1) return {1};
    auto D = UnitSubgroup::from_generators(K.group_ptr(), {K.conductor() - 1}).join(K.subgroup());
    return coset_reps(K, D);
}

}  // namespace detail

// extension of scalars: inv at every place of K over p is [K_P : Q_p] * inv_p
inline RestrictedClass restrict_class(const BrauerClass& alpha, const AbelianField& K) {
    RestrictedClass out{K, {}};
    auto Q = AbelianField::rationals();
    for (auto& [pl, f] : alpha.invariants()) {
        i64 d = local_data(Q, K, pl).local_degree();
        Frac scaled = f.scaled(d);
        if (scaled.is_zero()) continue;
        auto reps = pl.infinite ? detail::place_cosets_infinite(K) : detail::place_cosets(K, pl.q);
        for (i64 rep : reps) out.invariants.emplace_back(PlaceOfK{pl, rep}, scaled);
    }
    std::sort(out.invariants.begin(), out.invariants.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    // exactness of the Hasse sequence survives restriction
    Frac sum{0, 1};
    for (auto& [pl, f] : out.invariants) sum = sum + f;
    check(sum.is_zero(), "restricted invariants must sum to zero");
    return out;
}

inline i64 fiber_index(const BrauerClass& alpha, const DirichletCharacter& chi) {
    return mul_checked(chi.order(), restrict_class(alpha, field_of_character(chi)).index());
}

// ---------------------------------------------------------------------------
// fiber classification: Case I (all crossed) vs Case II (noncrossed of
// density 1) by comparing n_p = v_p(m) with b_p(chi)

enum class FiberCase { CaseI, CaseII, Indeterminate };

struct FiberRow {
    i64 p = 2;
    int n_p = 0;
    BpBound bound;
    Bool3 exceeds = Bool3::False;  // n_p > b_p?
};

struct FiberClassification {
    i64 m = 1;
    FiberCase verdict = FiberCase::CaseI;
    std::vector<FiberRow> rows;
    std::vector<i64> witness_primes;  // the p with n_p > b_p
};

inline FiberClassification classify_fiber(const DirichletCharacter& chi, i64 m) {
    require(m >= 1, "classify_fiber: m >= 1");
    AbelianField K = field_of_character(chi);
    auto ext = over_q(K);
    FiberClassification out;
    out.m = m;
    std::vector<i64> ps;
    for (auto& pp : factorize(m)) ps.push_back(pp.p);
    for (auto& pp : factorize(chi.order()))
        if (std::find(ps.begin(), ps.end(), pp.p) == ps.end()) ps.push_back(pp.p);
    std::sort(ps.begin(), ps.end());

    bool any_unknown = false;
    for (i64 p : ps) {
        FiberRow row;
        row.p = p;
        row.n_p = m % p == 0 ? valuation(m, p) : 0;
        if (chi.order() % p != 0) {
            // h_p = infinity for p prime to |chi|: the bound never binds
            row.bound.lower = row.bound.upper = ExtInt::infinity();
            row.bound.exact = true;
            row.exceeds = Bool3::False;
        } else {
            row.bound = b_p(ext, p);
            ExtInt np = ExtInt::of(row.n_p);
            if (row.bound.upper < np)
                row.exceeds = Bool3::True;
            else if (np <= row.bound.lower)
                row.exceeds = Bool3::False;
            else {
                row.exceeds = Bool3::Unknown;
                any_unknown = true;
            }
        }
        if (row.exceeds == Bool3::True) out.witness_primes.push_back(p);
        out.rows.push_back(std::move(row));
    }
    out.verdict = !out.witness_primes.empty() ? FiberCase::CaseII
                  : any_unknown               ? FiberCase::Indeterminate
                                              : FiberCase::CaseI;
    return out;
}

// ---------------------------------------------------------------------------
// crossed / noncrossed decision for a single class alpha + chi

enum class CrossedVerdict { Crossed, Noncrossed, Undecided };

struct DecideResult {
    CrossedVerdict verdict = CrossedVerdict::Undecided;
    i64 m = 1;             // ind alpha^{k(chi)}
    i64 fiber_index = 1;   // |chi| m
    FiberClassification classification;
    std::optional<i64> witness_p;  // the prime whose P-sets witnessed
    std::optional<i64> q0, q1, q2;
    std::string detail;
};

// A noncrossed witness: restricted-support places over q1 in P1 and q2 in P2
// (and q0 in P0 when m is composite) rule out every m-cover with full local
// degree on the support, so alpha + chi cannot be a crossed product.  Case I
// fibers are entirely crossed.  Everything else stays undecided.
inline DecideResult decide_crossed(const BrauerClass& alpha, const DirichletCharacter& chi, i64 primeset_limit = 1000000) {
    DecideResult res;
    AbelianField K = field_of_character(chi);
    auto restricted = restrict_class(alpha, K);
    res.m = restricted.index();
    res.fiber_index = mul_checked(chi.order(), res.m);
    res.classification = classify_fiber(chi, res.m);
    if (res.classification.verdict == FiberCase::CaseI) {
        res.verdict = CrossedVerdict::Crossed;
        res.detail = "n_p <= b_p for all p | |chi|";
        return res;
    }
    if (res.classification.verdict == FiberCase::Indeterminate) {
        res.verdict = CrossedVerdict::Undecided;
        res.detail = "interval-valued b_p";
        return res;
    }
    bool composite = factorize(res.m).size() > 1;
    auto ext = over_q(K);
    auto sa = restricted.restricted_support_primes();
    for (i64 p : res.classification.witness_primes) {
        int n = valuation(res.m, p);
        auto P1 = p1_spec(ext, p, n);
        auto P2 = p2_spec(ext, p);
        std::optional<i64> q1, q2, q0;
        for (i64 q : sa) {
            if (q > primeset_limit) continue;
            if (!q1 && P1.matches(q)) q1 = q;
            else if (!q2 && P2.matches(q)) q2 = q;
        }
        if (composite) {
            auto P0 = p0_spec(K, res.m);
            for (i64 q : sa)
                if (q <= primeset_limit && q != q1 && q != q2 && P0.matches(q)) {
                    q0 = q;
                    break;
                }
        }
        if (q1 && q2 && (!composite || q0)) {
            res.verdict = CrossedVerdict::Noncrossed;
            res.witness_p = p;
            res.q0 = q0;
            res.q1 = q1;
            res.q2 = q2;
            res.detail = "restricted support meets the witness prime sets";
            return res;
        }
    }
    res.verdict = CrossedVerdict::Undecided;
    res.detail = "Case II fiber, but no witness places found on the restricted support";
    return res;
}

// a class with ind(alpha^K) = m whose restricted support covers the requested
// rational primes; deterministic in the seed
inline BrauerClass sample_class(const AbelianField& K, i64 m, const std::vector<i64>& required_places, u64 seed) {
    require(m >= 1, "sample_class: m >= 1");
    if (m == 1) {
        require(required_places.empty(), "sample_class: m = 1 forces the zero class");
        return BrauerClass::zero();
    }
    auto ext_q = AbelianField::rationals();
    std::map<i64, Frac> entries;
    Frac sum{0, 1};
    u64 ctr = 0;
    for (i64 q : required_places) {
        require(is_prime(q), "sample_class: required places must be rational primes");
        i64 nq = local_data(ext_q, K, Place::at(q)).local_degree();
        i64 den = mul_checked(nq, m);
        i64 a;
        do {
            a = 1 + i64(rng_at(seed, ctr++) % u64(den - 1));
        } while (std::gcd(a, m) != 1);
        entries[q] = Frac::of(a, den);
        sum = sum + entries[q];
    }
    if (!sum.is_zero()) {
        Frac bal = -sum;
        // fresh balancing prime: a split prime works when the balancing order
        // already divides m; otherwise use an inert prime, whose restricted
        // order ord(bal)/gcd(ord(bal), [K:Q]) always divides m
        bool need_inert = m % bal.order() != 0;
        i64 n_K = K.conductor();
        for (i64 q = 2;; q = q + 1) {
            if (!is_prime(q) || entries.count(q) || n_K % q == 0) continue;
            i64 nq = local_data(ext_q, K, Place::at(q)).local_degree();
            if (need_inert ? (nq == K.degree() && K.degree() > 1) : nq == 1) {
                entries[q] = bal;
                break;
            }
            require(q < 100000, "sample_class: no balancing prime found");
        }
    }
    auto alpha = BrauerClass::from_finite(entries);
    auto restricted = restrict_class(alpha, K);
    require(restricted.index() == m, "sample_class: unsatisfiable request (index mismatch)");
    auto sa = restricted.restricted_support_primes();
    for (i64 q : required_places)
        require(std::find(sa.begin(), sa.end(), q) != sa.end(), "sample_class: required place not in restricted support");
    return alpha;
}

// an element alpha + chi of the Brauer group of the Laurent series field
struct FiberElement {
    BrauerClass alpha;
    DirichletCharacter chi;
    i64 index() const { return fiber_index(alpha, chi); }
};

// (alpha + chi) tensor (alpha' + chi') = (alpha + alpha') + chi chi'
inline FiberElement tensor(const FiberElement& a, const FiberElement& b) {
    return {a.alpha + b.alpha, multiply(a.chi, b.chi)};
}

}  // namespace witt
