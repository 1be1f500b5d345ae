#pragma once
// Integer lattices of small rank: Hermite and Smith normal forms, membership,
// intersection, and quotient structure.  A lattice L <= Z^k is stored as the
// row-style HNF of a spanning set; every lattice handled here has full rank k
// (callers always include the diagonal relation rows of the ambient finite
// group), so the HNF is a k x k upper-triangular matrix with positive
// diagonal and entries above each pivot reduced modulo it.  That form is
// canonical, which makes equality tests and serialization trivial.

#include <vector>

#include "arith.hpp"

namespace witt {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<i64> v;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), v(size_t(r) * c, 0) {}

    i64& at(int i, int j) { return v[size_t(i) * cols + j]; }
    i64 at(int i, int j) const { return v[size_t(i) * cols + j]; }

    static Mat identity(int k) {
        Mat m(k, k);
        for (int i = 0; i < k; ++i) m.at(i, i) = 1;
        return m;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && v == o.v; }
};

namespace detail {

inline void row_axpy(Mat& m, int dst, int src, i64 factor) {
    for (int j = 0; j < m.cols; ++j)
        m.at(dst, j) = checked_cast(i128(m.at(dst, j)) + i128(factor) * i128(m.at(src, j)), "hnf row op");
}

// rows dst <- u*dst + v*src ; src <- a*dst0 + b*src  (unimodular 2x2 combo)
inline void row_combine(Mat& m, int r1, int r2, i64 u, i64 v, i64 a, i64 b) {
    for (int j = 0; j < m.cols; ++j) {
        i128 x = m.at(r1, j), y = m.at(r2, j);
        m.at(r1, j) = checked_cast(i128(u) * x + i128(v) * y, "row combine");
        m.at(r2, j) = checked_cast(i128(a) * x + i128(b) * y, "row combine");
    }
}

}  // namespace detail

// In-place row HNF.  Returns the number of pivot rows (the rank).  For
// full-rank input the result is square upper-triangular after dropping the
// zero rows at the bottom.
inline int hnf_rows_inplace(Mat& m) {
    int piv = 0;
    for (int col = 0; col < m.cols && piv < m.rows; ++col) {
        // clear the column below 'piv' with gcd combinations
        for (int r = piv + 1; r < m.rows; ++r) {
            if (m.at(r, col) == 0) continue;
            i64 a = m.at(piv, col), b = m.at(r, col);
            if (a == 0) {
                for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
                continue;
            }
            i64 x, y;
            i64 g = ext_gcd(a, b, x, y);
            detail::row_combine(m, piv, r, x, y, -(b / g), a / g);
        }
        if (m.at(piv, col) == 0) continue;
        if (m.at(piv, col) < 0)
            for (int j = 0; j < m.cols; ++j) m.at(piv, j) = -m.at(piv, j);
        // reduce the entries above the pivot
        i64 d = m.at(piv, col);
        for (int r = 0; r < piv; ++r) {
            i64 q = floor_div(m.at(r, col), d);
            if (q != 0) detail::row_axpy(m, r, piv, -q);
        }
        ++piv;
    }
    return piv;
}

// HNF of a spanning set of a full-rank lattice in Z^k -> canonical k x k form.
inline Mat hnf_full_rank(Mat m) {
    int k = m.cols;
    int rank = hnf_rows_inplace(m);
    check(rank == k, "hnf_full_rank: input does not span a full-rank lattice");
    Mat out(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

inline i64 hnf_det(const Mat& h) {
    i64 d = 1;
    for (int i = 0; i < h.rows; ++i) d = mul_checked(d, h.at(i, i));
    return d;
}

// Canonical representative of v + L (entries reduced into [0, pivot)).
inline std::vector<i64> hnf_reduce(const Mat& h, std::vector<i64> v) {
    int k = h.rows;
    check((int)v.size() == k, "hnf_reduce size");
    for (int j = 0; j < k; ++j) {
        i64 q = floor_div(v[j], h.at(j, j));
        if (q != 0)
            for (int t = j; t < k; ++t) v[t] = checked_cast(i128(v[t]) - i128(q) * i128(h.at(j, t)), "hnf_reduce");
    }
    return v;
}

inline bool lattice_contains(const Mat& h, const std::vector<i64>& v) {
    auto r = hnf_reduce(h, v);
    for (i64 x : r)
        if (x != 0) return false;
    return true;
}

// Does lattice A contain lattice B?  (both canonical HNF, same k)
inline bool lattice_contains_lattice(const Mat& a, const Mat& b) {
    for (int i = 0; i < b.rows; ++i) {
        std::vector<i64> row(b.cols);
        for (int j = 0; j < b.cols; ++j) row[j] = b.at(i, j);
        if (!lattice_contains(a, row)) return false;
    }
    return true;
}

// Lattice generated by the rows of both arguments.
inline Mat lattice_sum(const Mat& a, const Mat& b) {
    check(a.cols == b.cols, "lattice_sum cols");
    Mat m(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, j) = b.at(i, j);
    return hnf_full_rank(std::move(m));
}

// Intersection via the standard [A|A ; B|0] kernel trick: rows of the HNF of
// that block matrix whose left block vanishes have right block spanning A ∩ B.
inline Mat lattice_intersection(const Mat& a, const Mat& b) {
    check(a.cols == b.cols, "lattice_intersection cols");
    int k = a.cols;
    Mat m(a.rows + b.rows, 2 * k);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < k; ++j) {
            m.at(i, j) = a.at(i, j);
            m.at(i, k + j) = a.at(i, j);
        }
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < k; ++j) m.at(a.rows + i, j) = b.at(i, j);
    hnf_rows_inplace(m);
    Mat inter(0, k);
    std::vector<i64> rows;
    for (int i = 0; i < m.rows; ++i) {
        bool left_zero = true;
        for (int j = 0; j < k; ++j)
            if (m.at(i, j) != 0) {
                left_zero = false;
                break;
            }
        if (!left_zero) continue;
        for (int j = 0; j < k; ++j) rows.push_back(m.at(i, k + j));
    }
    Mat res(int(rows.size() / k), k);
    res.v = rows;
    return hnf_full_rank(std::move(res));
}

// Smith normal form with the right transform tracked: returns diag entries
// s_1 | s_2 | ... and matrices V, Vinv with  U*M*V = diag(s)  for some
// unimodular U (not tracked).  Quotient coordinates of x are (x*V) mod s, and
// the i-th quotient generator has ambient coordinates given by row i of Vinv.
struct SmithResult {
    std::vector<i64> diag;
    Mat V, Vinv;
};

inline SmithResult smith_normal_form(Mat m) {
    check(m.rows == m.cols, "snf: square input expected");
    int k = m.rows;
    Mat V = Mat::identity(k), Vinv = Mat::identity(k);

    auto col_axpy = [&](int dst, int src, i64 f) {
        for (int i = 0; i < k; ++i) m.at(i, dst) = checked_cast(i128(m.at(i, dst)) + i128(f) * i128(m.at(i, src)), "snf col");
        for (int i = 0; i < k; ++i) V.at(i, dst) = checked_cast(i128(V.at(i, dst)) + i128(f) * i128(V.at(i, src)), "snf V");
        // inverse operation on Vinv acts on rows: row src -= f * row dst
        for (int j = 0; j < k; ++j)
            Vinv.at(src, j) = checked_cast(i128(Vinv.at(src, j)) - i128(f) * i128(Vinv.at(dst, j)), "snf Vinv");
    };
    auto col_swap = [&](int c1, int c2) {
        for (int i = 0; i < k; ++i) std::swap(m.at(i, c1), m.at(i, c2));
        for (int i = 0; i < k; ++i) std::swap(V.at(i, c1), V.at(i, c2));
        for (int j = 0; j < k; ++j) std::swap(Vinv.at(c1, j), Vinv.at(c2, j));
    };
    auto row_swap = [&](int r1, int r2) {
        for (int j = 0; j < k; ++j) std::swap(m.at(r1, j), m.at(r2, j));
    };

    for (int t = 0; t < k; ++t) {
        while (true) {
            // find smallest nonzero |entry| in the trailing submatrix
            int bi = -1, bj = -1;
            i64 best = 0;
            for (int i = t; i < k; ++i)
                for (int j = t; j < k; ++j) {
                    i64 a = m.at(i, j) < 0 ? -m.at(i, j) : m.at(i, j);
                    if (a != 0 && (bi < 0 || a < best)) {
                        best = a;
                        bi = i;
                        bj = j;
                    }
                }
            check(bi >= 0, "snf: rank deficient");
            if (bi != t) row_swap(bi, t);
            if (bj != t) col_swap(bj, t);
            bool again = false;
            for (int i = t + 1; i < k; ++i) {
                i64 q = floor_div(m.at(i, t), m.at(t, t));
                if (q != 0) detail::row_axpy(m, i, t, -q);
                if (m.at(i, t) != 0) again = true;
            }
            for (int j = t + 1; j < k; ++j) {
                i64 q = floor_div(m.at(t, j), m.at(t, t));
                if (q != 0) col_axpy(j, t, -q);
                if (m.at(t, j) != 0) again = true;
            }
            if (again) continue;
            // enforce divisibility: if some later entry is not divisible by
            // the pivot, mix its column in and restart this position
            bool fixed = true;
            for (int i = t + 1; i < k && fixed; ++i)
                for (int j = t + 1; j < k && fixed; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        col_axpy(t, j, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m.at(t, t) < 0) {
            for (int i = 0; i < k; ++i) m.at(i, t) = -m.at(i, t);
            for (int i = 0; i < k; ++i) V.at(i, t) = -V.at(i, t);
            for (int j = 0; j < k; ++j) Vinv.at(t, j) = -Vinv.at(t, j);
        }
    }
    SmithResult res;
    res.diag.resize(k);
    for (int i = 0; i < k; ++i) res.diag[i] = m.at(i, i);
    res.V = std::move(V);
    res.Vinv = std::move(Vinv);
    return res;
}

// Structure of the finite quotient A/B of two full-rank lattices B <= A:
// invariant factors (1's dropped) plus, for each retained factor, the ambient
// coordinates of a generator of that cyclic summand.
struct QuotientStructure {
    std::vector<i64> factors;                       // each > 1, ascending divisibility
    std::vector<std::vector<i64>> generator_coords; // ambient Z^k coordinates
    SmithResult snf;                                 // of the transition matrix
    Mat basis_a;                                     // the HNF basis of A used
    i64 order() const {
        i64 o = 1;
        for (i64 f : factors) o = mul_checked(o, f);
        return o;
    }
    bool is_cyclic() const { return factors.size() <= 1; }
};

// Express v (a member of the lattice with HNF basis 'a') in that basis.
inline std::vector<i64> coords_in_basis(const Mat& a, const std::vector<i64>& v) {
    int k = a.rows;
    std::vector<i64> c(k, 0), w = v;
    for (int j = 0; j < k; ++j) {
        check(w[j] % a.at(j, j) == 0, "coords_in_basis: vector not in lattice");
        i64 q = w[j] / a.at(j, j);
        c[j] = q;
        if (q != 0)
            for (int t = j; t < k; ++t) w[t] = checked_cast(i128(w[t]) - i128(q) * i128(a.at(j, t)), "coords");
    }
    return c;
}

inline QuotientStructure quotient_structure_of(const Mat& a, const Mat& b) {
    check(lattice_contains_lattice(a, b), "quotient: B must be contained in A");
    int k = a.rows;
    // transition C with rows-of-B = C * rows-of-A
    Mat c(k, k);
    for (int i = 0; i < k; ++i) {
        std::vector<i64> row(k);
        for (int j = 0; j < k; ++j) row[j] = b.at(i, j);
        auto co = coords_in_basis(a, row);
        for (int j = 0; j < k; ++j) c.at(i, j) = co[j];
    }
    QuotientStructure q;
    q.snf = smith_normal_form(std::move(c));
    q.basis_a = a;
    for (int i = 0; i < k; ++i) {
        if (q.snf.diag[i] == 1) continue;
        q.factors.push_back(q.snf.diag[i]);
        // generator i: coordinates (row i of Vinv) in the A-basis -> ambient
        std::vector<i64> amb(k, 0);
        for (int j = 0; j < k; ++j)
            for (int t = 0; t < k; ++t)
                amb[t] = checked_cast(i128(amb[t]) + i128(q.snf.Vinv.at(i, j)) * i128(a.at(j, t)), "quot gen");
        q.generator_coords.push_back(std::move(amb));
    }
    return q;
}

// Coordinates of x (in A) within the quotient A/B described by 'q'.
inline std::vector<i64> quotient_coords(const QuotientStructure& q, const std::vector<i64>& x) {
    auto c = coords_in_basis(q.basis_a, x);
    int k = q.basis_a.rows;
    std::vector<i64> out;
    for (int i = 0; i < k; ++i) {
        if (q.snf.diag[i] == 1) continue;
        i128 acc = 0;
        for (int j = 0; j < k; ++j) acc += i128(c[j]) * i128(q.snf.V.at(j, i));
        out.push_back(mod_pos(checked_cast(acc % i128(q.snf.diag[i]), "qc"), q.snf.diag[i]));
    }
    return out;
}

inline i64 order_in_quotient(const QuotientStructure& q, const std::vector<i64>& x) {
    auto c = quotient_coords(q, x);
    i64 o = 1;
    for (size_t i = 0; i < c.size(); ++i) {
        i64 d = q.factors[i];
        o = std::lcm(o, d / std::gcd(d, c[i]));
    }
    return o;
}

}  // namespace witt
