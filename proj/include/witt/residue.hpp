#pragma once
// Exact arithmetic in (Z/n)^*: CRT basis, discrete logarithms, finitely
// generated subgroups as exponent-vector lattices, and quotient structure.
//
// The basis is fixed once per modulus: the smallest primitive root for each
// odd prime-power factor, and the pair (-1, 5) for the factor 2^a with a >= 3
// (a single generator -1 for a = 2).  Factors are listed by ascending prime.
// Subgroups are stored as the canonical HNF of the lattice of exponent
// vectors, which always contains the relation lattice diag(d_1, ..., d_k);
// two generating sets of the same subgroup therefore produce identical
// matrices, and the subgroup index is the determinant.

#include <memory>
#include <mutex>
#include <unordered_map>

#include "int_linalg.hpp"

namespace witt {

class UnitGroup {
  public:
    struct Gen {
        i64 residue;  // CRT-lifted generator in [0, n)
        i64 order;
    };

    explicit UnitGroup(i64 n) : n_(n) {
        require(n >= 1, "unit_group: modulus must be >= 1");
        factors_ = factorize(n);
        for (auto& pp : factors_) {
            if (pp.p == 2) {
                if (pp.e == 1) continue;  // (Z/2)^* trivial
                if (pp.e == 2) {
                    gens_.push_back({lift(pp, 3), 2});
                } else {
                    gens_.push_back({lift(pp, pp.pe - 1), 2});
                    gens_.push_back({lift(pp, 5), pp.pe / 4});
                }
            } else {
                i64 g = smallest_primitive_root(pp.p, pp.e);
                gens_.push_back({lift(pp, g), (pp.pe / pp.p) * (pp.p - 1)});
            }
        }
    }

    i64 modulus() const { return n_; }
    int rank() const { return (int)gens_.size(); }
    const std::vector<Gen>& basis() const { return gens_; }
    const std::vector<PrimePower>& factorization() const { return factors_; }

    i64 order() const {
        i64 o = 1;
        for (auto& g : gens_) o = mul_checked(o, g.order);
        return o;  // = phi(n)
    }

    bool is_unit(i64 x) const { return std::gcd(mod_pos(x, std::max<i64>(n_, 1)), n_) == 1 || n_ == 1; }

    // exponent vector of x with respect to the basis (Pohlig-Hellman + BSGS
    // per CRT factor)
    std::vector<i64> dlog(i64 x) const {
        x = mod_pos(x, std::max<i64>(n_, 2));
        if (n_ == 1) return {};
        require(std::gcd(x, n_) == 1, "dlog: not a unit mod n");
        std::vector<i64> out;
        for (auto& pp : factors_) {
            i64 xq = x % pp.pe;
            if (pp.p == 2) {
                if (pp.e == 1) continue;
                if (pp.e == 2) {
                    out.push_back(xq == 3 ? 1 : 0);
                } else {
                    i64 sign = (xq % 4 == 3) ? 1 : 0;
                    i64 y = sign ? mod_pos(-xq, pp.pe) : xq;  // now y = 5^e
                    out.push_back(sign);
                    out.push_back(dlog_cyclic(y, 5, pp.pe / 4, pp.pe));
                }
            } else {
                i64 g = smallest_primitive_root(pp.p, pp.e);
                out.push_back(dlog_cyclic(xq, g, (pp.pe / pp.p) * (pp.p - 1), pp.pe));
            }
        }
        check((int)out.size() == rank(), "dlog size");
        return out;
    }

    i64 from_exponents(const std::vector<i64>& e) const {
        check((int)e.size() == rank(), "from_exponents size");
        i64 x = 1 % std::max<i64>(n_, 1);
        if (n_ == 1) return 0;
        for (int i = 0; i < rank(); ++i) x = mulmod(x, powmod(gens_[i].residue, mod_pos(e[i], gens_[i].order), n_), n_);
        return x;
    }

    i64 element_order(i64 x) const {
        if (n_ <= 2) return 1;
        auto e = dlog(x);
        i64 o = 1;
        for (int i = 0; i < rank(); ++i) {
            i64 d = gens_[i].order;
            o = std::lcm(o, d / std::gcd(d, e[i]));
        }
        return o;
    }

    // relation lattice diag(d_1, ..., d_k)
    Mat relation_lattice() const {
        Mat m(rank(), rank());
        for (int i = 0; i < rank(); ++i) m.at(i, i) = gens_[i].order;
        return m;
    }

  private:
    i64 n_;
    std::vector<PrimePower> factors_;
    std::vector<Gen> gens_;

    i64 lift(const PrimePower& pp, i64 g) const {  // g mod pp.pe, 1 elsewhere
        i64 rest = n_ / pp.pe;
        if (rest == 1) return mod_pos(g, n_);
        return crt_pair(mod_pos(g, pp.pe), pp.pe, 1, rest);
    }

    // discrete log in the cyclic group <g> of order d inside (Z/m)^*
    static i64 dlog_cyclic(i64 x, i64 g, i64 d, i64 m) {
        i64 result = 0, result_mod = 1;
        for (auto& pp : factorize(d)) {
            // digit-by-digit in the Sylow-l chunk
            i64 le = pp.pe;
            i64 gamma = powmod(g, d / le, m);         // order le
            i64 target = powmod(x, d / le, m);        // in <gamma>
            i64 cur = 0;                              // log so far, mod l^j
            i64 gamma_l = powmod(gamma, le / pp.p, m);  // order l
            i64 lj = 1;
            for (int j = 0; j < pp.e; ++j) {
                i64 rhs = powmod(mulmod(target, inv_mod(powmod(gamma, cur, m), m), m), le / (lj * pp.p), m);
                i64 digit = bsgs_prime(rhs, gamma_l, pp.p, m);
                cur += digit * lj;
                lj *= pp.p;
            }
            result = crt_pair(result, result_mod, cur % le, le);
            result_mod *= le;
            result %= result_mod;
        }
        check(powmod(g, result, m) == x % m, "dlog verification");
        return result;
    }

    // baby-step giant-step for <g> of prime order l
    static i64 bsgs_prime(i64 x, i64 g, i64 l, i64 m) {
        if (x == 1 % m) return 0;
        i64 s = 1;
        while (s * s < l) ++s;
        std::unordered_map<i64, i64> baby;
        i64 cur = 1 % m;
        for (i64 j = 0; j < s; ++j) {
            baby.emplace(cur, j);
            cur = mulmod(cur, g, m);
        }
        i64 giant = inv_mod(cur, m);  // g^{-s}
        i64 y = x;
        for (i64 i = 0; i <= s; ++i) {
            auto it = baby.find(y);
            if (it != baby.end()) return mod_pos(i * s + it->second, l);
            y = mulmod(y, giant, m);
        }
        check(false, "bsgs: element not in cyclic subgroup");
        return -1;
    }
};

// memoized: unit groups are immutable and shared freely across threads
inline std::shared_ptr<const UnitGroup> unit_group(i64 n) {
    static std::mutex mu;
    static std::unordered_map<i64, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const UnitGroup>(n);
    return slot;
}

class UnitSubgroup {
  public:
    UnitSubgroup(std::shared_ptr<const UnitGroup> g, Mat hnf) : G_(std::move(g)), lat_(std::move(hnf)) {}

    static UnitSubgroup from_generators(std::shared_ptr<const UnitGroup> g, const std::vector<i64>& gens) {
        int k = g->rank();
        Mat m(int(gens.size()) + k, k);
        for (size_t i = 0; i < gens.size(); ++i) {
            require(g->is_unit(gens[i]), "subgroup: generator is not a unit");
            auto e = g->dlog(gens[i]);
            for (int j = 0; j < k; ++j) m.at(int(i), j) = e[j];
        }
        for (int i = 0; i < k; ++i) m.at(int(gens.size()) + i, i) = g->basis()[i].order;
        return UnitSubgroup(std::move(g), hnf_full_rank(std::move(m)));
    }

    static UnitSubgroup trivial(std::shared_ptr<const UnitGroup> g) { return from_generators(std::move(g), {}); }
    static UnitSubgroup full(std::shared_ptr<const UnitGroup> g) {
        auto lat = Mat::identity(g->rank());
        return UnitSubgroup(std::move(g), std::move(lat));
    }

    const UnitGroup& group() const { return *G_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return G_; }
    const Mat& lattice() const { return lat_; }

    i64 index() const { return hnf_det(lat_); }                      // [(Z/n)^* : H]
    i64 order() const { return G_->order() / index(); }              // |H|

    bool contains(i64 x) const { return G_->modulus() <= 2 ? true : lattice_contains(lat_, G_->dlog(x)); }
    bool contains_subgroup(const UnitSubgroup& h) const { return lattice_contains_lattice(lat_, h.lat_); }

    bool operator==(const UnitSubgroup& o) const { return G_->modulus() == o.G_->modulus() && lat_ == o.lat_; }

    UnitSubgroup join(const UnitSubgroup& o) const {
        check(G_->modulus() == o.G_->modulus(), "join: mismatched modulus");
        return UnitSubgroup(G_, lattice_sum(lat_, o.lat_));
    }
    UnitSubgroup meet(const UnitSubgroup& o) const {
        check(G_->modulus() == o.G_->modulus(), "meet: mismatched modulus");
        return UnitSubgroup(G_, lattice_intersection(lat_, o.lat_));
    }

    // residues of a small generating set (the HNF rows; trivial rows dropped)
    std::vector<i64> generator_residues() const {
        std::vector<i64> out;
        for (int i = 0; i < lat_.rows; ++i) {
            std::vector<i64> row(lat_.cols);
            for (int j = 0; j < lat_.cols; ++j) row[j] = lat_.at(i, j);
            i64 r = G_->from_exponents(row);
            if (r != 1 % std::max<i64>(G_->modulus(), 2)) out.push_back(r);
        }
        return out;
    }

    // all elements, by scanning exponent boxes (intended for small groups)
    std::vector<i64> elements() const {
        std::vector<i64> out;
        int k = G_->rank();
        std::vector<i64> e(k, 0);
        while (true) {
            if (lattice_contains(lat_, e)) out.push_back(G_->from_exponents(e));
            int i = 0;
            for (; i < k; ++i) {
                if (++e[i] < G_->basis()[i].order) break;
                e[i] = 0;
            }
            if (i == k) break;
            if (k == 0) break;
        }
        if (k == 0) out.push_back(G_->modulus() == 1 ? 0 : 1);
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    std::shared_ptr<const UnitGroup> G_;
    Mat lat_;  // canonical HNF, contains the relation lattice
};

// Invariant-factor decomposition of (Z/n)^*/H together with representatives.
struct UnitQuotient {
    std::vector<i64> factors;        // invariant factors > 1
    std::vector<i64> representatives;  // one residue generating each factor
    QuotientStructure qs;
    std::shared_ptr<const UnitGroup> G;
    bool is_cyclic() const { return factors.size() <= 1; }
    i64 order() const {
        i64 o = 1;
        for (i64 f : factors) o = mul_checked(o, f);
        return o;
    }
    i64 order_of(i64 x) const { return G->rank() == 0 ? 1 : order_in_quotient(qs, G->dlog(x)); }
    std::vector<i64> coords_of(i64 x) const {
        return G->rank() == 0 ? std::vector<i64>{} : quotient_coords(qs, G->dlog(x));
    }
};

inline UnitQuotient quotient_structure(const UnitSubgroup& h) {
    UnitQuotient q;
    q.G = h.group_ptr();
    int k = q.G->rank();
    q.qs = quotient_structure_of(Mat::identity(k), h.lattice());
    q.factors = q.qs.factors;
    for (auto& coords : q.qs.generator_coords) q.representatives.push_back(q.G->from_exponents(coords));
    return q;
}

// quotient H1/H2 for subgroups H2 <= H1 of the same unit group
inline UnitQuotient relative_quotient(const UnitSubgroup& h1, const UnitSubgroup& h2) {
    check(h1.contains_subgroup(h2), "relative_quotient: H2 must be <= H1");
    UnitQuotient q;
    q.G = h1.group_ptr();
    q.qs = quotient_structure_of(h1.lattice(), h2.lattice());
    q.factors = q.qs.factors;
    for (auto& coords : q.qs.generator_coords) q.representatives.push_back(q.G->from_exponents(coords));
    return q;
}

inline i64 element_order(const UnitGroup& g, i64 x) {
    require(g.is_unit(x), "element_order: not a unit");
    return g.element_order(x);
}

inline UnitSubgroup subgroup(std::shared_ptr<const UnitGroup> g, const std::vector<i64>& gens) {
    return UnitSubgroup::from_generators(std::move(g), gens);
}

}  // namespace witt
