#pragma once
// Elementary exact arithmetic over 64-bit integers: factorization, modular
// powering, primitive roots, Kronecker symbols, prime sieves.  Everything is
// deterministic; overflow in intermediate products is caught by assertions.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace witt {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;
using u128 = unsigned __int128;

// Internal invariant violation (a bug, not bad input).
inline void check(bool ok, const char* msg) {
    if (!ok) throw std::logic_error(std::string("witt internal check failed: ") + msg);
}

// Precondition violation on user-supplied data.
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline i64 checked_cast(i128 v, const char* where = "checked_cast") {
    check(v <= i128(INT64_MAX) && v >= i128(INT64_MIN), where);
    return static_cast<i64>(v);
}

inline i64 mul_checked(i64 a, i64 b) { return checked_cast(i128(a) * i128(b), "mul overflow"); }

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline i64 mod_pos(i64 a, i64 m) {
    check(m > 0, "mod_pos modulus");
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return i64((u128(mod_pos(a, m)) * u128(mod_pos(b, m))) % u128(m));
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
    check(exp >= 0, "powmod exponent");
    if (m == 1) return 0;
    i64 r = 1 % m;
    base = mod_pos(base, m);
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// g = gcd(a,b) = ax+by
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline i64 inv_mod(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(mod_pos(a, m), m, x, y);
    require(g == 1, "inv_mod: not invertible");
    return mod_pos(x, m);
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

struct PrimePower {
    i64 p;
    int e;
    i64 pe;  // p^e
};

inline std::vector<PrimePower> factorize(i64 n) {
    require(n >= 1, "factorize: n must be positive");
    std::vector<PrimePower> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            PrimePower pp{p, 0, 1};
            while (n % p == 0) {
                n /= p;
                pp.e++;
                pp.pe *= p;
            }
            out.push_back(pp);
        }
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

inline i64 euler_phi(i64 n) {
    i64 phi = 1;
    for (auto& pp : factorize(n)) phi *= (pp.pe / pp.p) * (pp.p - 1);
    return phi;
}

inline int valuation(i64 n, i64 p) {
    check(n != 0 && p >= 2, "valuation args");
    int v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r = mul_checked(r, b);
    return r;
}

// v_p(q^f - 1) by lifting-the-exponent, avoiding the huge power itself.
inline int vp_of_power_minus_one(i64 q, i64 f, i64 p) {
    check(q >= 2 && f >= 1 && p >= 2 && q % p != 0, "vp_of_power_minus_one args");
    if (p == 2) {
        if (f % 2 == 1) return valuation(q - 1, 2);
        return valuation(q - 1, 2) + valuation(q + 1, 2) + valuation(f, 2) - 1;
    }
    // t = multiplicative order of q mod p (divides p-1, so prime to p)
    i64 t = 1, acc = mod_pos(q, p);
    while (acc != 1) {
        acc = mulmod(acc, q, p);
        ++t;
        check(t <= p, "order loop");
    }
    if (f % t != 0) return 0;
    // v_p(q^t - 1) by direct levels, then LTE: v_p(q^{tm}-1) = v_p(q^t-1) + v_p(m)
    int v = 0;
    i64 pk = 1;
    while (true) {
        i64 next = mul_checked(pk, p);
        if (powmod(q, t, next) != 1 % next) break;
        pk = next;
        ++v;
    }
    return v + valuation(f / t, p);
}

// smallest generator of the cyclic group (Z/q^a)^*, q odd prime
inline i64 smallest_primitive_root(i64 q, int a) {
    require(q % 2 == 1 && is_prime(q), "primitive root: odd prime required");
    i64 pe = ipow(q, a);
    i64 phi = (pe / q) * (q - 1);
    auto fac = factorize(phi);
    for (i64 g = 2; g < pe; ++g) {
        if (g % q == 0) continue;
        bool ok = true;
        for (auto& pp : fac) {
            if (powmod(g, phi / pp.p, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    check(false, "primitive root search exhausted");
    return -1;
}

inline std::vector<i64> primes_up_to(i64 n) {
    std::vector<bool> comp(std::max<i64>(n + 1, 2), false);
    std::vector<i64> ps;
    for (i64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (i64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

// Kronecker symbol (a/n), n arbitrary
inline int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v = 0;
    while (n % 2 == 0) n /= 2, ++v;
    if (v % 2 == 1) {
        i64 am = mod_pos(a, 8);
        if (am == 3 || am == 5) sign = -sign;
        if (am % 2 == 0) return 0;
    }
    a = mod_pos(a, n);
    while (a != 0) {
        int v2 = 0;
        while (a % 2 == 0) a /= 2, ++v2;
        if (v2 % 2 == 1) {
            i64 nm = n % 8;
            if (nm == 3 || nm == 5) sign = -sign;
        }
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        std::swap(a, n);
        a = mod_pos(a, n);
    }
    return n == 1 ? sign : 0;
}

// crt for coprime moduli
inline i64 crt_pair(i64 r1, i64 m1, i64 r2, i64 m2) {
    check(std::gcd(m1, m2) == 1, "crt_pair coprime");
    i64 m = mul_checked(m1, m2);
    i64 t = mulmod(mod_pos(r2 - r1, m2), inv_mod(m1 % m2, m2), m2);
    return mod_pos(r1 + i64((u128(t) * u128(m1)) % u128(m)), m);
}

// deterministic counter-based generator (stable under any parallel split)
inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline u64 rng_at(u64 seed, u64 index) { return splitmix64(seed * 0x9e3779b97f4a7c15ULL + splitmix64(index)); }

}  // namespace witt
