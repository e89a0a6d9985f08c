#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace premod {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long lgcd(long a, long b) { return std::gcd(a, b); }
inline long llcm(long a, long b) { return std::lcm(a, b); }

inline long mod_floor(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline long totient(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// {N : phi(N) <= d}, complete by phi(N) >= sqrt(N/2).
inline std::vector<long> inverse_totient(long d) {
    if (d < 1) throw std::invalid_argument("inverse_totient: d must be >= 1");
    std::vector<long> out;
    for (long n = 1; n <= 2 * d * d + 1; ++n)
        if (totient(n) == d) out.push_back(n);
    return out;
}

inline long mod_pow(long base, unsigned long exp, long mod) {
    unsigned __int128 r = 1, b = mod_floor(base, mod);
    while (exp) {
        if (exp & 1) r = r * b % (unsigned long)mod;
        b = b * b % (unsigned long)mod;
        exp >>= 1;
    }
    return (long)r;
}

inline long mul_mod(long a, long b, long mod) {
    return (long)((unsigned __int128)(unsigned long)mod_floor(a, mod) *
                  (unsigned long)mod_floor(b, mod) % (unsigned long)mod);
}

inline long inv_mod(long a, long mod) {
    long t = 0, nt = 1, r = mod, nr = mod_floor(a, mod);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    return mod_floor(t, mod);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(long n) {
    if (n < 2) return false;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        if (n % p == 0) return n == p;
    }
    long d = n - 1;
    int s = 0;
    while (d % 2 == 0) d /= 2, ++s;
    for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        long x = mod_pow(a, (unsigned long)d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline Rat rat(long p, long q = 1) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace premod
