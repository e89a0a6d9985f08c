#pragma once

#include <random>
#include <set>

#include "cyclotomic.hpp"
#include "polynomial.hpp"

namespace premod {

// zeta_order^exp with gcd(exp, order) = 1 after normalization
struct RootOfUnity {
    long order = 1;
    long exp = 0;

    static RootOfUnity make(long n, long k) {
        k = mod_floor(k, n);
        long g = lgcd(k == 0 ? n : k, n);
        RootOfUnity r;
        r.order = n / g;
        r.exp = k / g;
        return r;
    }
    Cyclotomic value() const { return Cyclotomic::zeta(order, exp); }
    bool operator<(const RootOfUnity& o) const {
        return order != o.order ? order < o.order : exp < o.exp;
    }
    bool operator==(const RootOfUnity& o) const { return order == o.order && exp == o.exp; }
};

// All roots of unity annihilated by p. A primitive n-th root works exactly
// when Phi_n divides p, and phi(n) <= deg p bounds the search.
inline std::vector<RootOfUnity> roots_of_unity_satisfying(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("roots_of_unity_satisfying: zero polynomial");
    std::vector<RootOfUnity> out;
    for (long d = 1; d <= p.degree(); ++d) {
        for (long n : inverse_totient(d)) {
            QPoly phi_n = qpoly_from_int(cyclotomic_poly(n));
            if (!p.divmod(phi_n).second.is_zero()) continue;
            for (long k = 0; k < n; ++k)
                if (lgcd(k == 0 ? n : k, n) == 1) out.push_back(RootOfUnity::make(n, k));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline std::pair<Int, Int> square_free_split(Int m) {
    // m = k^2 * f with f squarefree (trial division)
    Int k = 1, f = 1;
    for (Int p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        long e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e == 0) continue;
        for (long i = 0; i < e / 2; ++i) k *= p;
        if (e % 2) f *= p;
    }
    f *= m;
    return {k, f};
}

// exact square root of an odd prime via the quadratic Gauss sum
inline Cyclotomic gauss_sqrt_odd_prime(long p) {
    Cyclotomic g;
    for (long k = 1; k < p; ++k) {
        long ls = mod_pow(k, (unsigned long)((p - 1) / 2), p) == 1 ? 1 : -1;
        g = g + Cyclotomic(Rat(ls)) * Cyclotomic::zeta(p, k);
    }
    // g^2 = p for p = 1 mod 4, g^2 = -p for p = 3 mod 4
    if (p % 4 == 3) g = g * Cyclotomic::zeta(4, 3);
    return g;
}

}  // namespace detail

// Principal square root of a rational as a cyclotomic number: positive real
// for r > 0, positive imaginary for r < 0.
inline Cyclotomic gauss_sqrt(const Rat& r) {
    if (r == 0) return Cyclotomic();
    Rat a = abs(r);
    Int m = a.get_num() * a.get_den();
    auto [k, f] = detail::square_free_split(m);
    Cyclotomic c(Rat(k) / Rat(a.get_den()));
    Int fl = f;
    if (fl % 2 == 0) {
        c = c * (Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7));
        fl /= 2;
    }
    for (Int p = 3; p * p <= fl; p += 2)
        if (fl % p == 0) {
            c = c * detail::gauss_sqrt_odd_prime(p.get_si());
            fl /= p;
        }
    if (fl > 1) c = c * detail::gauss_sqrt_odd_prime(fl.get_si());
    if (c.sign_real() < 0) c = -c;
    if (r < 0) c = c * Cyclotomic::zeta(4);
    return c;
}

// Principal square root of a real element of degree <= 2 over Q whose norm is
// a rational square (covers a + b*sqrt(D) with a^2 - b^2 D square). Throws if
// the element is outside that family.
inline Cyclotomic sqrt_real_quadratic(const Cyclotomic& x) {
    if (auto r = x.rational_value()) return gauss_sqrt(*r);
    if (!x.is_real()) throw std::invalid_argument("sqrt_real_quadratic: not real");
    long n = x.conductor();
    Cyclotomic other;
    bool found = false;
    for (long k = 2; k < n && !found; ++k) {
        if (lgcd(k, n) != 1) continue;
        Cyclotomic y = x.galois_apply(k);
        if (y != x) {
            other = y;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("sqrt_real_quadratic: no conjugate");
    // degree check: orbit must be exactly {x, other}
    for (long k = 2; k < n; ++k) {
        if (lgcd(k, n) != 1) continue;
        Cyclotomic y = x.galois_apply(k);
        if (y != x && y != other) throw std::invalid_argument("sqrt_real_quadratic: degree > 2");
    }
    auto t = (x + other).rational_value();
    auto u = (x * other).rational_value();
    if (!t || !u) throw std::invalid_argument("sqrt_real_quadratic: trace/norm not rational");
    Rat a2 = *t / 2;
    Rat norm = *u;
    if (sgn(norm) < 0 || !mpz_perfect_square_p(norm.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(norm.get_den().get_mpz_t()))
        throw std::invalid_argument("sqrt_real_quadratic: norm not a rational square");
    Rat fr(sqrt(norm.get_num()), sqrt(norm.get_den()));
    for (const Rat& f : {fr, Rat(-fr)}) {
        Cyclotomic h1 = gauss_sqrt((a2 + f) / 2), h2 = gauss_sqrt((a2 - f) / 2);
        for (int s : {1, -1}) {
            Cyclotomic y = h1 + Cyclotomic(Rat(s)) * h2;
            if (y * y == x) {
                int sr = y.is_real() ? y.sign_real() : y.sign_imag();
                return sr >= 0 ? y : -y;
            }
        }
    }
    throw std::invalid_argument("sqrt_real_quadratic: no square root found");
}

namespace detail {

// arithmetic in F_q[x] for word-sized prime q
using ModPoly = std::vector<long>;

inline void mp_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, long q) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (long)(((__int128)a[i] * b[j] + r[i + j]) % q);
    mp_trim(r);
    return r;
}
inline ModPoly mp_mod(ModPoly a, const ModPoly& m, long q) {
    long inv_lead = inv_mod(m.back(), q);
    while (a.size() >= m.size()) {
        long f = (long)(((__int128)a.back() * inv_lead) % q);
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] = mod_floor(a[shift + i] - (long)(((__int128)f * m[i]) % q), q);
        mp_trim(a);
    }
    return a;
}
inline ModPoly mp_powmod(ModPoly base, unsigned long e, const ModPoly& m, long q) {
    ModPoly r{1};
    base = mp_mod(std::move(base), m, q);
    while (e) {
        if (e & 1) r = mp_mod(mp_mul(r, base, q), m, q);
        base = mp_mod(mp_mul(base, base, q), m, q);
        e >>= 1;
    }
    return r;
}
inline ModPoly mp_gcd(ModPoly a, ModPoly b, long q) {
    while (!b.empty()) {
        ModPoly r = mp_mod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long inv = inv_mod(a.back(), q);
        for (auto& c : a) c = (long)(((__int128)c * inv) % q);
    }
    return a;
}

// all roots of a completely-split squarefree monic g mod q
inline bool mp_roots(const ModPoly& g, long q, std::vector<long>& out) {
    if (g.size() <= 1) return true;
    if (g.size() == 2) {
        out.push_back(mod_floor(-(__int128)g[0] % q, q));
        return true;
    }
    for (long t = 0; t < 64; ++t) {
        ModPoly shifted{mod_floor(t, q), 1};  // x + t
        ModPoly h = mp_powmod(shifted, (unsigned long)((q - 1) / 2), g, q);
        if (h.empty())
            h = ModPoly{mod_floor(-1L, q)};
        else
            h[0] = mod_floor(h[0] - 1, q);
        mp_trim(h);
        ModPoly d = mp_gcd(g, h, q);
        if (d.size() > 1 && d.size() < g.size()) {
            // g = d * (g/d)
            ModPoly rest = g;
            long inv_lead = inv_mod(d.back(), q);
            ModPoly quo(rest.size() - d.size() + 1, 0);
            for (size_t i = quo.size(); i-- > 0;) {
                long f = (long)(((__int128)rest[i + d.size() - 1] * inv_lead) % q);
                quo[i] = f;
                for (size_t j = 0; j < d.size(); ++j)
                    rest[i + j] = mod_floor(rest[i + j] - (long)(((__int128)f * d[j]) % q), q);
            }
            return mp_roots(d, q, out) && mp_roots(quo, q, out);
        }
    }
    return false;
}

inline ModPoly mp_from_int(const std::vector<Int>& z, long q) {
    ModPoly r(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        Int v = z[i] % q;
        if (v < 0) v += q;
        r[i] = v.get_si();
    }
    mp_trim(r);
    return r;
}

inline long find_prime_1_mod(long m, long seed_shift) {
    long k = (1L << 41) / m + seed_shift;
    while (true) {
        long q = m * k + 1;
        if (q % 2 == 1 && is_prime_u64((unsigned long)q)) return q;
        ++k;
    }
}

inline long element_of_order(long m, long q, std::mt19937_64& rng) {
    auto pf = prime_factors(m);
    while (true) {
        long a = 2 + (long)(rng() % (unsigned long)(q - 3));
        long w = mod_pow(a, (unsigned long)((q - 1) / m), q);
        if (w == 1) continue;
        bool ok = true;
        for (long p : pf)
            if (mod_pow(w, (unsigned long)(m / p), q) == 1) ok = false;
        if (ok) return w;
    }
}

// generator decomposition of (Z/m)*: list of (generator, order) whose direct
// product is the whole group
inline std::vector<std::pair<long, long>> unit_group_generators(long m) {
    std::vector<std::pair<long, long>> gens;  // (residue mod component, component modulus)
    std::vector<std::tuple<long, long, long>> parts;
    long rest = m;
    for (long p : prime_factors(m)) {
        long pa = 1;
        while (rest % p == 0) {
            rest /= p;
            pa *= p;
        }
        if (p == 2) {
            if (pa >= 4) parts.emplace_back(pa - 1, 2L, pa);  // -1
            if (pa >= 8) {
                long ord = pa / 4;
                parts.emplace_back(5L, ord, pa);
            }
        } else {
            // primitive root mod p^a
            long phi = (pa / p) * (p - 1);
            auto pf = prime_factors(phi);
            long g = 2;
            for (;; ++g) {
                if (lgcd(g, pa) != 1) continue;
                bool ok = true;
                for (long f : pf)
                    if (mod_pow(g, (unsigned long)(phi / f), pa) == 1) ok = false;
                if (ok) break;
            }
            parts.emplace_back(g, phi, pa);
        }
    }
    std::vector<std::pair<long, long>> out;
    for (auto& [g, ord, pa] : parts) {
        // CRT: x = g mod pa, x = 1 mod m/pa
        long other = m / pa;
        long val;
        if (other == 1)
            val = mod_floor(g, m);
        else {
            long inv1 = inv_mod(mod_floor(other, pa), pa);
            long inv2 = inv_mod(mod_floor(pa, other), other);
            val = (long)(((__int128)mod_floor(g, pa) * other % m * inv1 +
                          (__int128)pa * inv2) %
                         m);
        }
        out.emplace_back(val, ord);
    }
    return out;
}

// characters (Z/m)* -> Z/d (and to Z2 x Z2 for d = 4, encoded as subgroup
// tags): returns maps element -> tag with exactly d distinct tags
inline std::vector<std::map<long, long>> index_d_colorings(long m, long d) {
    auto gens = unit_group_generators(m);
    size_t r = gens.size();
    std::vector<std::map<long, long>> out;
    std::set<std::map<long, long>> seen;

    auto build = [&](const std::vector<long>& img, long dd, bool v4) {
        // enumerate all elements as products of generator powers
        std::map<long, long> tag;
        std::vector<long> idx(r, 0);
        while (true) {
            long elt = 1, t = 0;
            for (size_t i = 0; i < r; ++i) {
                elt = (long)((__int128)elt * mod_pow(gens[i].first, (unsigned long)idx[i], m) % m);
                if (v4)
                    t ^= (idx[i] % 2) ? img[i] : 0;
                else
                    t = mod_floor(t + idx[i] * img[i], dd);
            }
            tag[elt] = t;
            size_t i = 0;
            for (; i < r; ++i) {
                if (++idx[i] < gens[i].second) break;
                idx[i] = 0;
            }
            if (i == r) break;
        }
        std::set<long> tags;
        for (auto& [e, t] : tag) tags.insert(t);
        if ((long)tags.size() == d && !seen.count(tag)) {
            seen.insert(tag);
            out.push_back(tag);
        }
    };

    // homs to Z/d
    std::vector<long> img(r, 0);
    while (true) {
        bool valid = true;
        for (size_t i = 0; i < r; ++i)
            if (mod_floor(img[i] * gens[i].second, d) != 0) valid = false;  // order must divide
        if (valid) build(img, d, false);
        size_t i = 0;
        for (; i < r; ++i) {
            if (++img[i] < d) break;
            img[i] = 0;
        }
        if (i == r) break;
    }
    if (d == 4) {
        // homs to Z2 x Z2, tags in {0,1,2,3}
        std::vector<long> img2(r, 0);
        while (true) {
            bool valid = true;
            for (size_t i = 0; i < r; ++i)
                if (img2[i] != 0 && gens[i].second % 2 != 0) valid = false;
            if (valid) build(img2, 4, true);
            size_t i = 0;
            for (; i < r; ++i) {
                if (++img2[i] < 4) break;
                img2[i] = 0;
            }
            if (i == r) break;
        }
    }
    return out;
}

// Try to express the roots of an irreducible monic integer polynomial g
// (degree 3 or 4) in Q(zeta_m). Roots are recovered from a completely-split
// reduction mod q = 1 (mod m) by matching Galois cosets to residue roots,
// solving the resulting Vandermonde system, lifting symmetrically, and
// verifying exactly.
inline std::vector<Cyclotomic> reconstruct_roots(const std::vector<Int>& g, long m) {
    long d = (long)g.size() - 1;
    long phi = totient(m);
    if (phi % d != 0) return {};
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (unsigned long)(m * 1000003L + d));
    for (int attempt = 0; attempt < 3; ++attempt) {
        long q = find_prime_1_mod(m, attempt * 977);
        ModPoly gq = mp_from_int(g, q);
        if ((long)gq.size() != d + 1) continue;
        // x^q = x mod g exactly when g splits completely and is squarefree mod q
        ModPoly x_q = mp_powmod(ModPoly{0, 1}, (unsigned long)q, gq, q);
        if (!(x_q.size() == 2 && x_q[0] == 0 && x_q[1] == 1)) continue;
        std::vector<long> roots;
        if (!mp_roots(gq, q, roots) || (long)roots.size() != d) continue;
        std::sort(roots.begin(), roots.end());
        if (std::unique(roots.begin(), roots.end()) != roots.end()) continue;

        long w = element_of_order(m, q, rng);
        // Vandermonde rows indexed by k in (Z/m)*
        std::vector<long> units;
        for (long k = 1; k < m; ++k)
            if (lgcd(k, m) == 1) units.push_back(k);

        auto colorings = index_d_colorings(m, d);
        std::vector<long> perm(d - 1);
        for (auto& tag : colorings) {
            // normalize tags so tag(1) = 0 and remaining tags enumerate 1..d-1
            long t0 = tag[1];
            std::map<long, long> rank;
            rank[t0] = 0;
            for (auto& [e, t] : tag)
                if (!rank.count(t)) rank[t] = (long)rank.size();
            // assign roots[0] to coset 0, permute the rest
            std::vector<long> order(d - 1);
            for (long i = 0; i < d - 1; ++i) order[i] = i + 1;
            do {
                // rhs: f(k) = root assigned to the coset of k
                std::vector<std::vector<long>> A(phi, std::vector<long>(phi + 1));
                for (long row = 0; row < phi; ++row) {
                    long k = units[row];
                    for (long e = 0; e < phi; ++e)
                        A[row][e] = mod_pow(w, (unsigned long)mod_floor(k * e, m), q);
                    long rk = rank[tag[k]];
                    A[row][phi] = rk == 0 ? roots[0] : roots[order[rk - 1]];
                }
                // gaussian elimination mod q
                bool singular = false;
                for (long col = 0, rrow = 0; col < phi && !singular; ++col, ++rrow) {
                    long pr = -1;
                    for (long i = rrow; i < phi; ++i)
                        if (A[i][col] != 0) {
                            pr = i;
                            break;
                        }
                    if (pr < 0) {
                        singular = true;
                        break;
                    }
                    std::swap(A[rrow], A[pr]);
                    long inv = inv_mod(A[rrow][col], q);
                    for (long jj = col; jj <= phi; ++jj)
                        A[rrow][jj] = (long)(((__int128)A[rrow][jj] * inv) % q);
                    for (long i = 0; i < phi; ++i) {
                        if (i == rrow || A[i][col] == 0) continue;
                        long f = A[i][col];
                        for (long jj = col; jj <= phi; ++jj)
                            A[i][jj] =
                                mod_floor(A[i][jj] - (long)(((__int128)f * A[rrow][jj]) % q), q);
                    }
                }
                if (singular) continue;
                std::vector<std::pair<long, Rat>> terms;
                bool plausible = true;
                for (long e = 0; e < phi; ++e) {
                    long c = A[e][phi];
                    if (c > q / 2) c -= q;
                    if (std::abs(c) > (1L << 32)) plausible = false;  // lift far too large
                    if (c != 0) terms.emplace_back(e, Rat(c));
                }
                if (!plausible) continue;
                Cyclotomic y = Cyclotomic::from_terms(m, terms);
                // exact verification
                Cyclotomic acc;
                for (size_t i = g.size(); i-- > 0;) acc = acc * y + Cyclotomic(Rat(g[i]));
                if (!acc.is_zero()) continue;
                // full root set = Galois orbit of y
                std::vector<Cyclotomic> out{y};
                for (long k = 2; k < m; ++k) {
                    if (lgcd(k, m) != 1) continue;
                    Cyclotomic z = y.galois_apply(k);
                    if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
                }
                if ((long)out.size() == d) return out;
            } while (std::next_permutation(order.begin(), order.end()));
        }
    }
    return {};
}

}  // namespace detail

// Monic integer factors of a monic integer polynomial of degree <= 4.
inline std::vector<std::vector<Int>> factor_monic_quartic_or_less(std::vector<Int> g) {
    std::vector<std::vector<Int>> factors;
    // rational (integer) roots
    bool again = true;
    while (again && g.size() > 1) {
        again = false;
        Int a0 = g[0];
        if (a0 == 0) {
            factors.push_back({0, 1});
            g.erase(g.begin());
            again = true;
            continue;
        }
        std::vector<Int> cands;
        for (Int t = 1; t * t <= abs(a0); ++t)
            if (a0 % t == 0) {
                cands.push_back(t);
                if (t * t != abs(a0)) cands.push_back(abs(a0) / t);
            }
        for (Int t : cands) {
            for (int s : {1, -1}) {
                Int r = s * t;
                Int acc = 0;
                for (size_t i = g.size(); i-- > 0;) acc = acc * r + g[i];
                if (acc == 0) {
                    factors.push_back({-r, 1});
                    // synthetic division by (x - r)
                    std::vector<Int> quo(g.size() - 1);
                    Int carry = 0;
                    for (size_t i = g.size(); i-- > 1;) {
                        quo[i - 1] = g[i] + carry;
                        carry = quo[i - 1] * r;
                    }
                    g = std::move(quo);
                    again = true;
                    break;
                }
            }
            if (again) break;
        }
    }
    long d = (long)g.size() - 1;
    if (d <= 0) return factors;
    if (d <= 3) {
        factors.push_back(g);  // deg 2 handled by quadratic formula; deg 3 irreducible (no root)
        return factors;
    }
    // quartic with no rational root: try (x^2 + px + r)(x^2 + sx + t)
    Int A = g[3], B = g[2], C = g[1], E = g[0];
    std::vector<Int> rdivs;
    for (Int t = 1; t * t <= abs(E); ++t)
        if (E % t == 0) {
            rdivs.push_back(t);
            rdivs.push_back(-t);
            if (t * t != abs(E)) {
                rdivs.push_back(abs(E) / t);
                rdivs.push_back(-abs(E) / t);
            }
        }
    for (Int r : rdivs) {
        if (E % r != 0) continue;
        Int t = E / r;
        // p + s = A, ps = B - r - t, pt + rs = C
        Int disc = A * A - 4 * (B - r - t);
        if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
        Int sq = sqrt(disc);
        for (int sgn2 : {1, -1}) {
            Int twice_p = A + sgn2 * sq;
            if (twice_p % 2 != 0) continue;
            Int p = twice_p / 2, s = A - p;
            if (p * t + r * s == C) {
                factors.push_back({r, p, 1});
                factors.push_back({t, s, 1});
                return factors;
            }
        }
    }
    factors.push_back(g);  // irreducible quartic
    return factors;
}

// All roots of p that are expressible as cyclotomic numbers with conductor at
// most conductor_cap. Rational and quadratic roots are exact and unconditional;
// cubic and quartic roots are searched over admissible conductors.
inline std::vector<Cyclotomic> cyclotomic_roots(const QPoly& p, long conductor_cap = 200) {
    if (p.is_zero()) throw std::invalid_argument("cyclotomic_roots: zero polynomial");
    std::vector<Int> z = p.primitive_int_coeffs();
    // substitute y = lead * x: monic(y) = lead^{d-1} p(y/lead), coeff_i = z_i lead^{d-1-i}
    Int lead = z.back();
    long d = (long)z.size() - 1;
    std::vector<Int> monic(d + 1);
    monic[d] = 1;
    Int acc = 1;
    for (long i = d - 1; i >= 0; --i) {
        monic[i] = z[i] * acc;
        acc *= lead;
    }
    std::vector<Cyclotomic> out;
    Cyclotomic inv_lead(Rat(1) / Rat(lead));
    for (auto& f : factor_monic_quartic_or_less(monic)) {
        long fd = (long)f.size() - 1;
        if (fd == 1) {
            out.push_back(Cyclotomic(Rat(-f[0])) * inv_lead);
        } else if (fd == 2) {
            // y = (-b +/- sqrt(b^2 - 4c)) / 2 with monic y^2 + b y + c
            Rat b(f[1]), c0(f[0]);
            Cyclotomic s = gauss_sqrt(b * b - 4 * c0);
            out.push_back((Cyclotomic(-b) + s) * Cyclotomic(rat(1, 2)) * inv_lead);
            out.push_back((Cyclotomic(-b) - s) * Cyclotomic(rat(1, 2)) * inv_lead);
        } else {
            for (long m = 3; m <= conductor_cap; ++m) {
                if (m % 4 == 2) continue;
                auto roots = detail::reconstruct_roots(f, m);
                if (!roots.empty()) {
                    for (auto& y : roots) out.push_back(y * inv_lead);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace premod
