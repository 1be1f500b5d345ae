#pragma once
// Abelian number fields as pairs (n, H): the fixed field of H <= (Z/n)^*
// inside the n-th cyclotomic field.  Every field is stored reduced, i.e. n is
// the conductor, so equality is structural.  All field operations (lattice of
// subfields, degrees, roots of unity, cyclotomic parts) are subgroup
// arithmetic; no field element is ever represented.

#include <optional>

#include "residue.hpp"

namespace witt {

// generators of ker((Z/N)^* -> (Z/n)^*) for n | N, CRT-lifted
inline std::vector<i64> reduction_kernel_gens(i64 N, i64 n) {
    check(N % n == 0, "reduction kernel: n | N required");
    std::vector<i64> gens;
    auto lift_component = [&](i64 pe, i64 g) {
        i64 rest = N / pe;
        return rest == 1 ? mod_pos(g, N) : crt_pair(mod_pos(g, pe), pe, 1, rest);
    };
    for (auto& pp : factorize(N)) {
        int a = valuation(std::gcd(n, ipow(pp.p, pp.e)), pp.p);  // v_p(n)
        if (a == pp.e) continue;
        if (pp.p == 2) {
            if (pp.e == 1) continue;
            if (a <= 1) {
                if (pp.e == 2) {
                    gens.push_back(lift_component(4, 3));
                } else {
                    gens.push_back(lift_component(pp.pe, pp.pe - 1));
                    gens.push_back(lift_component(pp.pe, 5));
                }
            } else if (a == 2) {
                gens.push_back(lift_component(pp.pe, 5));
            } else {
                gens.push_back(lift_component(pp.pe, powmod(5, ipow(2, a - 2), pp.pe)));
            }
        } else {
            i64 g = smallest_primitive_root(pp.p, pp.e);
            i64 phi_a = a == 0 ? 1 : ipow(pp.p, a - 1) * (pp.p - 1);
            gens.push_back(lift_component(pp.pe, powmod(g, phi_a, pp.pe)));
        }
    }
    return gens;
}

// lift x (a unit mod n) to a unit mod N congruent to x modulo every prime
// power of n, and to 1 at the new primes
inline i64 lift_unit(i64 x, i64 n, i64 N) {
    check(N % n == 0, "lift_unit: n | N required");
    if (n == N) return mod_pos(x, n);
    i64 res = 0, mod = 1;
    for (auto& pp : factorize(N)) {
        i64 comp = (n % pp.p == 0) ? mod_pos(x, pp.pe) : 1;
        res = mod == 1 ? comp : crt_pair(res, mod, comp, pp.pe);
        mod *= pp.pe;
    }
    return res;
}

class AbelianField {
  public:
    // fixed field of the subgroup generated by `gens` inside Q(mu_n)
    AbelianField(i64 n, const std::vector<i64>& gens) {
        auto g = unit_group(n);
        init(UnitSubgroup::from_generators(g, gens));
    }
    explicit AbelianField(UnitSubgroup h) { init(std::move(h)); }

    static AbelianField rationals() { return AbelianField(1, {}); }
    static AbelianField cyclotomic(i64 m) {
        require(m >= 1, "cyclotomic: m >= 1");
        return AbelianField(m, {});
    }
    // real cyclotomic field Q(eta_m) = Q(zeta_m + zeta_m^{-1})
    static AbelianField real_cyclotomic(i64 m) {
        require(m >= 1, "real_cyclotomic: m >= 1");
        return AbelianField(m, {mod_pos(-1, std::max<i64>(m, 1))});
    }
    // Q(i * eta_{2^s}),  s >= 3
    static AbelianField i_eta(int s) {
        require(s >= 3, "i_eta: s >= 3");
        i64 m = ipow(2, s);
        return AbelianField(m, {m / 2 - 1});
    }

    i64 conductor() const { return n_; }
    i64 degree() const { return H_->index(); }
    const UnitSubgroup& subgroup() const { return *H_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return H_->group_ptr(); }

    bool is_rational() const { return n_ == 1; }
    // real <=> complex conjugation (the class of -1) fixes the field
    bool is_real() const { return n_ <= 2 || H_->contains(n_ - 1); }

    bool operator==(const AbelianField& o) const { return n_ == o.n_ && H_->lattice() == o.H_->lattice(); }
    bool operator!=(const AbelianField& o) const { return !(*this == o); }

    // subgroup of (Z/N)^* cutting out this field, for any N with n | N
    UnitSubgroup lifted_subgroup(i64 N) const {
        check(N % n_ == 0, "lifted_subgroup: conductor must divide N");
        if (N == n_) return *H_;
        std::vector<i64> gens = reduction_kernel_gens(N, n_);
        for (i64 h : H_->generator_residues()) gens.push_back(lift_unit(h, n_, N));
        return UnitSubgroup::from_generators(unit_group(N), gens);
    }

  private:
    i64 n_ = 1;
    std::shared_ptr<const UnitSubgroup> H_;

    void init(UnitSubgroup h) {
        // reduce to the conductor: strip primes q | n whose reduction kernel
        // lies inside H
        i64 n = h.group().modulus();
        while (true) {
            if (n <= 2) {
                n = 1;
                h = UnitSubgroup::full(unit_group(1));
                break;
            }
            bool reduced = false;
            for (auto& pp : factorize(n)) {
                i64 d = n / pp.p;
                bool kernel_fixed = true;
                for (i64 x : reduction_kernel_gens(n, d)) {
                    if (!h.contains(x)) {
                        kernel_fixed = false;
                        break;
                    }
                }
                if (kernel_fixed) {
                    auto gd = unit_group(d);
                    std::vector<i64> gens;
                    for (i64 r : h.generator_residues()) gens.push_back(r % std::max<i64>(d, 2));
                    h = UnitSubgroup::from_generators(gd, gens);
                    n = d;
                    reduced = true;
                    break;
                }
            }
            if (!reduced) break;
        }
        n_ = n;
        H_ = std::make_shared<const UnitSubgroup>(std::move(h));
    }
};

// does A contain B as fields (B subfield of A)?
inline bool contains(const AbelianField& a, const AbelianField& b) {
    i64 N = std::lcm(a.conductor(), b.conductor());
    if (N != a.conductor()) return false;  // conductor of a subfield divides
    return b.lifted_subgroup(N).contains_subgroup(a.lifted_subgroup(N));
}

inline AbelianField compositum(const AbelianField& a, const AbelianField& b) {
    i64 N = std::lcm(a.conductor(), b.conductor());
    return AbelianField(a.lifted_subgroup(N).meet(b.lifted_subgroup(N)));
}

inline AbelianField intersection(const AbelianField& a, const AbelianField& b) {
    i64 N = std::lcm(a.conductor(), b.conductor());
    return AbelianField(a.lifted_subgroup(N).join(b.lifted_subgroup(N)));
}

// Q(sqrt(D)) for squarefree D; conductor is |disc| = |D| or 4|D|
inline AbelianField quadratic_field(i64 D) {
    require(D != 0 && D != 1, "quadratic_field: D must be a nonzero squarefree integer != 1");
    for (auto& pp : factorize(D < 0 ? -D : D))
        require(pp.e == 1, "quadratic_field: D must be squarefree");
    i64 disc = (mod_pos(D, 4) == 1) ? D : 4 * D;
    i64 f = disc < 0 ? -disc : disc;
    std::vector<i64> gens;
    for (i64 x = 1; x < f; ++x) {
        if (std::gcd(x, f) != 1) continue;
        if (kronecker(disc, x) == 1) gens.push_back(x);
    }
    AbelianField K(f, gens);
    check(K.degree() == 2 && K.conductor() == f, "quadratic field construction");
    return K;
}

// largest r with Q(mu_{p^r}) contained in K  (s_2 >= 1 always: +-1 in Q)
inline int s_p(const AbelianField& k, i64 p) {
    require(is_prime(p), "s_p: p must be prime");
    int r = (p == 2) ? 1 : 0;
    while (true) {
        i64 next = ipow(p, r + 1);
        // conductor divisibility: mu_{p^{r+1}} in K forces p^{r+1} | n (p odd
        // or p^{r+1} >= 8) resp. 4 | n, so the loop is finite
        if (next > 4 * k.conductor()) break;
        if (!contains(k, AbelianField::cyclotomic(next))) break;
        ++r;
    }
    return r;
}

// number of roots of unity = prod p^{s_p}
inline i64 roots_of_unity_count(const AbelianField& k) {
    i64 w = ipow(2, s_p(k, 2));
    for (auto& pp : factorize(k.conductor()))
        if (pp.p != 2) w = mul_checked(w, ipow(pp.p, s_p(k, pp.p)));
    return w;
}

// T = K ∩ k(mu_{p^infty}); the level is capped rigorously: T corresponds to a
// finite-index subgroup of Gal(k(mu_{p^infty})/k), so it lies inside
// k(mu_{p^a}) once p^a passes both conductors' p-parts and [K:Q]'s p-part.
inline AbelianField cyclotomic_part(const AbelianField& K, const AbelianField& k, i64 p) {
    int cap = std::max(valuation(std::lcm(K.conductor(), k.conductor()), p), p == 2 ? 2 : 1) +
              valuation(K.degree(), p) + 2;
    auto at_level = [&](int a) {
        return intersection(K, compositum(k, AbelianField::cyclotomic(ipow(p, a))));
    };
    AbelianField T = at_level(cap);
    check(T == at_level(cap + 1), "cyclotomic_part: stabilization bound violated");
    return T;
}

// classification of k~ = k ∩ Q(mu_{2^infty}) against the subfield lattice of
// Q(mu_{2^infty}): Q, Q(zeta_{2^s}), Q(eta_{2^s}), Q(i*eta_{2^s})
enum class TwoTilde { Q, Zeta, Eta, IEta };
struct TwoTildeLabel {
    TwoTilde kind;
    int s;  // Zeta: s >= 2 (s = 2 is Q(i)); Eta/IEta: s >= 3; Q: s = 0
    AbelianField field;
    bool operator==(const TwoTildeLabel& o) const { return kind == o.kind && s == o.s; }
};

inline TwoTildeLabel two_tilde(const AbelianField& k) {
    AbelianField T = cyclotomic_part(k, AbelianField::rationals(), 2);
    i64 n = T.conductor();
    if (n == 1) return {TwoTilde::Q, 0, T};
    check((n & (n - 1)) == 0 && n >= 4, "two_tilde: conductor must be a 2-power >= 4");
    int s = valuation(n, 2);
    i64 hsize = T.subgroup().order();
    if (hsize == 1) return {TwoTilde::Zeta, s, T};
    check(hsize == 2, "two_tilde: reduced subgroup of a 2-power cyclotomic has order <= 2");
    if (T.subgroup().contains(n - 1)) return {TwoTilde::Eta, s, T};
    check(T.subgroup().contains(n / 2 - 1), "two_tilde: unexpected order-2 subgroup");
    return {TwoTilde::IEta, s, T};
}

// A validated cyclic extension K/k of abelian fields, with the canonical
// generator of Gal(K/k): the smallest residue class that generates it.
class CyclicExtension {
  public:
    CyclicExtension(AbelianField base, AbelianField top) : k_(std::move(base)), K_(std::move(top)) {
        require(contains(K_, k_), "cyclic_extension: base must be a subfield of the top");
        i64 N = K_.conductor();
        Hk_ = std::make_shared<UnitSubgroup>(k_.lifted_subgroup(N));
        auto rel = relative_quotient(*Hk_, K_.subgroup());
        if (!rel.is_cyclic()) {
            std::string msg = "cyclic_extension: Gal(K/k) is not cyclic; invariant factors [";
            for (size_t i = 0; i < rel.factors.size(); ++i)
                msg += (i ? "," : "") + std::to_string(rel.factors[i]);
            throw std::invalid_argument(msg + "]");
        }
        degree_ = rel.order();
        rel_ = std::make_shared<UnitQuotient>(std::move(rel));
        if (degree_ == 1) {
            generator_ = 1 % std::max<i64>(N, 2);
        } else {
            for (i64 x = 1; x < N; ++x) {
                if (std::gcd(x, N) != 1) continue;
                if (!Hk_->contains(x)) continue;
                if (order_in_quotient(rel_->qs, Hk_->group().dlog(x)) == degree_) {
                    generator_ = x;
                    break;
                }
            }
            check(generator_ > 0, "cyclic_extension: no generator found");
        }
    }

    const AbelianField& base() const { return k_; }
    const AbelianField& top() const { return K_; }
    i64 degree() const { return degree_; }
    i64 generator() const { return generator_; }
    bool is_trivial() const { return degree_ == 1; }
    // Gal(K/k) as the subgroup H_k' of (Z/n_K)^* containing H_K
    const UnitSubgroup& galois_subgroup() const { return *Hk_; }
    const UnitQuotient& galois_quotient() const { return *rel_; }

  private:
    AbelianField k_, K_;
    std::shared_ptr<UnitSubgroup> Hk_;
    std::shared_ptr<UnitQuotient> rel_;
    i64 degree_ = 1;
    i64 generator_ = 0;
};

inline CyclicExtension cyclic_extension(const AbelianField& k, const AbelianField& K) { return {k, K}; }
inline CyclicExtension over_q(const AbelianField& K) { return {AbelianField::rationals(), K}; }

// ---------------------------------------------------------------------------
// Dirichlet characters: surjections (Z/n)^* ->> Z/d, recorded by the images
// of the fixed basis generators.

class DirichletCharacter {
  public:
    DirichletCharacter(i64 n, i64 d, std::vector<i64> images) : G_(unit_group(n)), order_(d), images_(std::move(images)) {
        require(d >= 1, "character: order must be positive");
        require((int)images_.size() == G_->rank(), "character: one image per basis generator required");
        i64 g = d;
        for (int i = 0; i < G_->rank(); ++i) {
            images_[i] = mod_pos(images_[i], d);
            // well-defined: the image's order divides the generator's order
            require(mod_pos(mul_checked(G_->basis()[i].order, images_[i]), d) == 0,
                    "character: image order must divide the generator order");
            g = std::gcd(g, images_[i]);
        }
        require(g == 1 || d == 1, "character: images must generate Z/d");
    }

    static DirichletCharacter trivial() { return DirichletCharacter(1, 1, {}); }

    // the quadratic character cutting out Q(sqrt(D))
    static DirichletCharacter quadratic(i64 D);

    i64 modulus() const { return G_->modulus(); }
    i64 order() const { return order_; }
    const std::vector<i64>& images() const { return images_; }
    const UnitGroup& group() const { return *G_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return G_; }

    // chi(x) = value_num(x) / order in Q/Z
    i64 value_num(i64 x) const {
        if (G_->rank() == 0) return 0;
        auto e = G_->dlog(x);
        i128 acc = 0;
        for (int i = 0; i < G_->rank(); ++i) acc += i128(e[i]) * i128(images_[i]);
        return mod_pos(checked_cast(acc % i128(order_), "chi value"), order_);
    }

    bool operator==(const DirichletCharacter& o) const {
        return modulus() == o.modulus() && order_ == o.order_ && images_ == o.images_;
    }

  private:
    std::shared_ptr<const UnitGroup> G_;
    i64 order_;
    std::vector<i64> images_;
};

// fixed field of ker(chi): a cyclic field of degree |chi|
inline AbelianField field_of_character(const DirichletCharacter& chi) {
    const auto& G = chi.group();
    int k = G.rank();
    i64 d = chi.order();
    // kernel lattice {v : sum v_i img_i == 0 mod d} via HNF kernel extraction
    Mat m(2 * k + 1, k + 1);
    for (int i = 0; i < k; ++i) {
        m.at(i, 0) = chi.images()[i];
        m.at(i, 1 + i) = 1;
    }
    m.at(k, 0) = d;
    for (int i = 0; i < k; ++i) m.at(k + 1 + i, 1 + i) = G.basis()[i].order;
    hnf_rows_inplace(m);
    std::vector<i64> rows;
    for (int i = 0; i < m.rows; ++i) {
        if (m.at(i, 0) != 0) continue;
        for (int j = 0; j < k; ++j) rows.push_back(m.at(i, 1 + j));
    }
    Mat ker(k == 0 ? 0 : int(rows.size()) / k, k);
    ker.v = rows;
    AbelianField K(UnitSubgroup(chi.group_ptr(), k == 0 ? Mat::identity(0) : hnf_full_rank(std::move(ker))));
    check(K.degree() == d, "field_of_character: degree must equal the order");
    return K;
}

// character of a cyclic field K/Q normalized so chi(generator) = 1/d
inline DirichletCharacter character_of_field(const AbelianField& K) {
    if (K.is_rational()) return DirichletCharacter::trivial();
    auto ext = over_q(K);
    auto& q = ext.galois_quotient();
    i64 d = ext.degree();
    auto coord = [&](i64 x) { return q.coords_of(x)[0]; };
    i64 u = coord(ext.generator());
    i64 uinv = inv_mod(u, d);
    std::vector<i64> images;
    for (auto& g : K.group_ptr()->basis()) images.push_back(mulmod(coord(g.residue), uinv, d));
    return DirichletCharacter(K.conductor(), d, images);
}

inline DirichletCharacter DirichletCharacter::quadratic(i64 D) { return character_of_field(quadratic_field(D)); }

// restrict chi to its conductor (the primitive character inducing it)
inline DirichletCharacter primitive_part(const DirichletCharacter& chi) {
    AbelianField K = field_of_character(chi);
    if (K.conductor() == chi.modulus()) return chi;
    i64 m = K.conductor(), n = chi.modulus();
    auto gm = unit_group(m);
    std::vector<i64> images;
    for (auto& g : gm->basis()) images.push_back(chi.value_num(lift_unit(g.residue, m, n)));
    return DirichletCharacter(m, chi.order(), images);
}

// normalize a list of Q/Z values (numerators over L) into a character mod n
inline DirichletCharacter character_from_values(i64 n, i64 L, const std::vector<i64>& nums) {
    i64 g = L;
    for (i64 v : nums) g = std::gcd(g, v);
    i64 d = L / g;
    std::vector<i64> images;
    for (i64 v : nums) images.push_back(mod_pos(v / g, std::max<i64>(d, 1)));
    return DirichletCharacter(n, std::max<i64>(d, 1), images);
}

inline DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
    i64 N = std::lcm(a.modulus(), b.modulus());
    auto G = unit_group(N);
    i64 L = std::lcm(a.order(), b.order());
    std::vector<i64> nums;
    for (auto& g : G->basis()) {
        i64 va = a.value_num(g.residue % std::max<i64>(a.modulus(), 2));
        i64 vb = b.value_num(g.residue % std::max<i64>(b.modulus(), 2));
        nums.push_back(mod_pos(va * (L / a.order()) + vb * (L / b.order()), L));
    }
    return primitive_part(character_from_values(N, L, nums));
}

inline DirichletCharacter power(const DirichletCharacter& chi, i64 e) {
    e = mod_pos(e, chi.order());
    std::vector<i64> nums;
    for (i64 img : chi.images()) nums.push_back(mulmod(img, e, chi.order()));
    return primitive_part(character_from_values(chi.modulus(), chi.order(), nums));
}

// projection onto the p-primary component: chi_p = chi^e with e = 1 mod p^a,
// e = 0 mod d/p^a
inline DirichletCharacter p_primary(const DirichletCharacter& chi, i64 p) {
    i64 d = chi.order();
    i64 pa = 1;
    while (d % (pa * p) == 0) pa *= p;
    if (pa == d) return chi;
    i64 rest = d / pa;
    i64 e = (pa == 1) ? 0 : crt_pair(1, pa, 0, rest);
    return power(chi, e);
}

inline i64 conductor(const DirichletCharacter& chi) { return field_of_character(chi).conductor(); }

// all phi(n) characters modulo n (images of each basis generator range over
// multiples of d/d_i)
inline std::vector<DirichletCharacter> all_characters_mod(i64 n) {
    auto G = unit_group(n);
    std::vector<DirichletCharacter> out;
    int k = G->rank();
    std::vector<i64> c(k, 0);
    i64 L = 1;
    for (auto& g : G->basis()) L = std::lcm(L, g.order);
    while (true) {
        std::vector<i64> nums;
        for (int i = 0; i < k; ++i) nums.push_back(mod_pos(c[i] * (L / G->basis()[i].order), L));
        out.push_back(character_from_values(n, L, nums));
        int i = 0;
        for (; i < k; ++i) {
            if (++c[i] < G->basis()[i].order) break;
            c[i] = 0;
        }
        if (i == k) break;
    }
    return out;
}

}  // namespace witt
