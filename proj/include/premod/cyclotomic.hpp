#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include "interval.hpp"
#include "numbers.hpp"
#include "polynomial.hpp"

namespace premod {

// Coefficients of the N-th cyclotomic polynomial, ascending, monic.
inline std::vector<Int> cyclotomic_poly(long n) {
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1 = prod_{d | n} Phi_d
    std::vector<Int> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        std::vector<Int> phi_d = cyclotomic_poly(d);
        std::vector<Int> quo(num.size() - phi_d.size() + 1);
        for (size_t i = quo.size(); i-- > 0;) {
            Int f = num[i + phi_d.size() - 1];
            quo[i] = f;
            if (f != 0)
                for (size_t j = 0; j < phi_d.size(); ++j) num[i + j] -= f * phi_d[j];
        }
        num = std::move(quo);
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[n] = num;
    return num;
}

namespace detail {

// One prime-power factor q = p^a of the conductor. Basis exponents for the
// factor run over [0, phi(q)); zeta_q^e with e >= phi(q) rewrites through
// Phi_q as -(zeta^{e-phi} + zeta^{e-phi+p^{a-1}} + ... ), which lands back in
// the basis range in a single step for any e < q.
struct CycComponent {
    long p, a, q, phi, pa1;  // pa1 = p^(a-1)
    long stride;             // mixed-radix stride in the linear basis index
    long u;                  // (n/q)^{-1} mod q
};

// Tensor-of-prime-power-fields basis data for Q(zeta_n).
struct CycStructure {
    long n = 1;
    long phi = 1;
    std::vector<CycComponent> comps;

    std::vector<long> decode(long idx) const {
        std::vector<long> e(comps.size());
        for (size_t i = 0; i < comps.size(); ++i) {
            e[i] = idx % comps[i].phi;
            idx /= comps[i].phi;
        }
        return e;
    }
    long encode(const std::vector<long>& e) const {
        long idx = 0;
        for (size_t i = 0; i < comps.size(); ++i) idx += e[i] * comps[i].stride;
        return idx;
    }
    // zeta_n exponent in [0, n) of the basis element at idx
    long exponent_of(long idx) const {
        auto e = decode(idx);
        long j = 0;
        for (size_t i = 0; i < comps.size(); ++i)
            j = (long)(((__int128)j + (__int128)e[i] * (n / comps[i].q)) % n);
        return j;
    }
};

inline std::shared_ptr<const CycStructure> cyc_structure(long n) {
    static std::map<long, std::shared_ptr<const CycStructure>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto s = std::make_shared<CycStructure>();
    s->n = n;
    long stride = 1;
    for (long p : prime_factors(n)) {
        CycComponent c;
        c.p = p;
        c.a = 0;
        c.q = 1;
        long m = n;
        while (m % p == 0) {
            m /= p;
            ++c.a;
            c.q *= p;
        }
        c.pa1 = c.q / p;
        c.phi = c.pa1 * (p - 1);
        c.stride = stride;
        c.u = inv_mod(mod_floor(n / c.q, c.q), c.q);
        stride *= c.phi;
        s->comps.push_back(c);
    }
    s->phi = stride;
    std::lock_guard<std::mutex> lk(mu);
    auto [it, ok] = cache.emplace(n, std::move(s));
    (void)ok;
    return it->second;
}

}  // namespace detail

// Exact element of Q(zeta_N), stored as sparse coordinates over the tensor
// basis { prod_i zeta_{q_i}^{e_i} : 0 <= e_i < phi(q_i) } for the prime-power
// factorization N = prod q_i. Values are immutable after construction and are
// kept at the minimal conductor, which is never 2 mod 4.
class Cyclotomic {
public:
    Cyclotomic() : n_(1) {}
    Cyclotomic(const Rat& r) : n_(1) {
        if (r != 0) c_[0] = r;
    }
    Cyclotomic(long v) : Cyclotomic(Rat(v)) {}
    Cyclotomic(const Int& v) : Cyclotomic(Rat(v)) {}

    // zeta_n^k
    static Cyclotomic zeta(long n, long k = 1) {
        Cyclotomic x;
        x.n_ = n;
        auto s = detail::cyc_structure(n);
        add_power_term(*s, x.c_, mod_floor(k, n), Rat(1));
        x.canonicalize();
        return x;
    }

    // element sum_e coeffs[e] * zeta_n^e
    static Cyclotomic from_coeffs(long n, const std::vector<Rat>& coeffs) {
        Cyclotomic x;
        x.n_ = n;
        auto s = detail::cyc_structure(n);
        for (size_t e = 0; e < coeffs.size(); ++e)
            if (coeffs[e] != 0) add_power_term(*s, x.c_, (long)e % n, coeffs[e]);
        x.canonicalize();
        return x;
    }
    static Cyclotomic from_terms(long n, const std::vector<std::pair<long, Rat>>& terms) {
        Cyclotomic x;
        x.n_ = n;
        auto s = detail::cyc_structure(n);
        for (const auto& [e, r] : terms)
            if (r != 0) add_power_term(*s, x.c_, mod_floor(e, n), r);
        x.canonicalize();
        return x;
    }

    long conductor() const { return n_; }

    // terms (e, c) with the element equal to sum c * zeta_conductor^e,
    // exponents strictly increasing
    std::vector<std::pair<long, Rat>> terms() const {
        auto s = detail::cyc_structure(n_);
        std::vector<std::pair<long, Rat>> out;
        out.reserve(c_.size());
        for (const auto& [idx, r] : c_) out.emplace_back(s->exponent_of(idx), r);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return n_ == 1; }
    std::optional<Rat> rational_value() const {
        if (n_ != 1) return std::nullopt;
        return c_.empty() ? Rat(0) : c_.begin()->second;
    }
    bool is_rational_integer() const {
        return n_ == 1 && (c_.empty() || c_.begin()->second.get_den() == 1);
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        long n = llcm(a.n_, b.n_);
        Cyclotomic r;
        r.n_ = n;
        auto s = detail::cyc_structure(n);
        a.lift_into(*s, r.c_, Rat(1));
        b.lift_into(*s, r.c_, Rat(1));
        r.prune();
        r.canonicalize();
        return r;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        long n = llcm(a.n_, b.n_);
        Cyclotomic r;
        r.n_ = n;
        auto s = detail::cyc_structure(n);
        a.lift_into(*s, r.c_, Rat(1));
        b.lift_into(*s, r.c_, Rat(-1));
        r.prune();
        r.canonicalize();
        return r;
    }
    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& [idx, v] : r.c_) v = -v;
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_zero() || b.is_zero()) return Cyclotomic();
        long n = llcm(a.n_, b.n_);
        auto s = detail::cyc_structure(n);
        Cyclotomic la, lb;
        a.lift_into(*s, la.c_, Rat(1));
        b.lift_into(*s, lb.c_, Rat(1));
        Cyclotomic r;
        r.n_ = n;
        std::vector<long> ea, eb, sum(s->comps.size());
        for (const auto& [ia, ra] : la.c_) {
            ea = s->decode(ia);
            for (const auto& [ib, rb] : lb.c_) {
                eb = s->decode(ib);
                for (size_t i = 0; i < sum.size(); ++i) sum[i] = (ea[i] + eb[i]) % s->comps[i].q;
                add_reduced(*s, r.c_, sum, ra * rb);
            }
        }
        r.prune();
        r.canonicalize();
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Rat& v) {
        if (v == 0) return Cyclotomic();
        Cyclotomic r = a;
        for (auto& [idx, x] : r.c_) x *= v;
        return r;
    }
    friend Cyclotomic operator*(const Rat& v, const Cyclotomic& a) { return a * v; }

    Cyclotomic inverse() const {
        if (is_zero()) throw std::invalid_argument("cyclotomic inverse of zero");
        if (n_ == 1) return Cyclotomic(Rat(1) / c_.begin()->second);
        // express in the power basis, then xgcd with Phi_n over Q
        auto s = detail::cyc_structure(n_);
        std::vector<Rat> dense(n_);
        for (const auto& [idx, r] : c_) dense[s->exponent_of(idx)] += r;
        QPoly a(std::move(dense)), m = qpoly_from_int(cyclotomic_poly(n_));
        a = a.divmod(m).second;
        QPoly r0 = m, r1 = a;
        QPoly s0, s1 = QPoly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r2] = r0.divmod(r1);
            QPoly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        QPoly u = s0 * (Rat(1) / r0[0]);  // r0 is the constant gcd
        return from_coeffs(n_, u.coeffs());
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        return a * b.inverse();
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
    // total order for map keys; not a numeric order
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        auto ia = a.c_.begin(), ib = b.c_.begin();
        for (; ia != a.c_.end() && ib != b.c_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.c_.end() && ib != b.c_.end();
    }

    Cyclotomic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic r(Rat(1)), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Galois automorphism zeta_n -> zeta_n^k, requires gcd(k, n) = 1.
    Cyclotomic galois_apply(long k) const {
        long km = mod_floor(k, n_);
        if (lgcd(km, n_) != 1) throw std::invalid_argument("galois exponent not coprime");
        if (n_ == 1 || km == 1) return *this;
        auto s = detail::cyc_structure(n_);
        Cyclotomic r;
        r.n_ = n_;
        std::vector<long> e;
        for (const auto& [idx, v] : c_) {
            e = s->decode(idx);
            for (size_t i = 0; i < e.size(); ++i)
                e[i] = (long)(((__int128)e[i] * km) % s->comps[i].q);
            add_reduced(*s, r.c_, e, v);
        }
        r.prune();
        r.canonicalize();
        return r;
    }

    Cyclotomic conj() const { return n_ == 1 ? *this : galois_apply(n_ - 1); }
    bool is_real() const { return conj() == *this; }

    ComplexInterval embed_complex(long digits = 0) const {
        mpfr_prec_t prec = digits_to_prec(digits > 0 ? digits : default_digits());
        auto s = detail::cyc_structure(n_);
        ComplexInterval acc{RealInterval(Rat(0), prec), RealInterval(Rat(0), prec)};
        for (const auto& [idx, r] : c_) {
            long j = s->exponent_of(idx);
            acc.re = acc.re + RealInterval::cos_angle(j, n_, prec).scaled(r);
            acc.im = acc.im + RealInterval::sin_angle(j, n_, prec).scaled(r);
        }
        return acc;
    }

    // Sign under the principal embedding zeta_n -> e^{2 pi i / n}. The zero
    // test is exact on coordinates; only nonzero values need refinement.
    int sign_real() const {
        if (!is_real()) throw std::invalid_argument("sign of a non-real cyclotomic");
        if (is_zero()) return 0;
        for (long digits = default_digits(); digits <= kMaxSignDigits; digits *= 2) {
            RealInterval re = embed_complex(digits).re;
            if (re.strictly_positive()) return 1;
            if (re.strictly_negative()) return -1;
        }
        throw UndecidedSign("sign_real stalled at " + std::to_string(kMaxSignDigits) + " digits");
    }

    int sign_imag() const {
        if ((*this - conj()).is_zero()) return 0;
        for (long digits = default_digits(); digits <= kMaxSignDigits; digits *= 2) {
            RealInterval im = embed_complex(digits).im;
            if (im.strictly_positive()) return 1;
            if (im.strictly_negative()) return -1;
        }
        throw UndecidedSign("sign_imag stalled at " + std::to_string(kMaxSignDigits) + " digits");
    }

    std::string str() const {
        if (n_ == 1) return c_.empty() ? std::string("0") : c_.begin()->second.get_str();
        std::ostringstream os;
        os << "cyc(" << n_;
        for (const auto& [e, r] : terms()) os << "; " << r.get_str() << "*z^" << e;
        os << ")";
        return os.str();
    }

private:
    using Coords = std::map<long, Rat>;

    // accumulate coeff * prod zeta_{q_i}^{e[i]} with e[i] in [0, q_i),
    // rewriting any out-of-basis factor through Phi_{q_i}
    static void add_reduced(const detail::CycStructure& s, Coords& acc, const std::vector<long>& e,
                            const Rat& coeff) {
        // cartesian product over components that need rewriting
        struct Opt {
            long base, step, count;
        };
        std::vector<Opt> opts(e.size());
        long total = 1;
        int sign = 1;
        for (size_t i = 0; i < e.size(); ++i) {
            const auto& c = s.comps[i];
            if (e[i] < c.phi) {
                opts[i] = {e[i], 0, 1};
            } else {
                opts[i] = {e[i] - c.phi, c.pa1, c.p - 1};
                total *= c.p - 1;
                sign = -sign;
            }
        }
        Rat v = sign > 0 ? coeff : -coeff;
        for (long t = 0; t < total; ++t) {
            long rem = t, idx = 0;
            for (size_t i = 0; i < opts.size(); ++i) {
                long pick = opts[i].count > 1 ? rem % opts[i].count : 0;
                if (opts[i].count > 1) rem /= opts[i].count;
                idx += (opts[i].base + pick * opts[i].step) * s.comps[i].stride;
            }
            acc[idx] += v;
        }
    }

    // accumulate coeff * zeta_n^j
    static void add_power_term(const detail::CycStructure& s, Coords& acc, long j,
                               const Rat& coeff) {
        std::vector<long> e(s.comps.size());
        for (size_t i = 0; i < e.size(); ++i)
            e[i] = (long)(((__int128)j * s.comps[i].u) % s.comps[i].q);
        add_reduced(s, acc, e, coeff);
    }

    // accumulate scale * this, re-expressed at the (super)conductor of s
    void lift_into(const detail::CycStructure& s, Coords& acc, const Rat& scale) const {
        auto sm = detail::cyc_structure(n_);
        // component exponent map: factor q' of n_ embeds via zeta_{q'} = zeta_q^{q/q'}
        std::vector<size_t> where(sm->comps.size());
        std::vector<long> mult(sm->comps.size());
        for (size_t i = 0; i < sm->comps.size(); ++i) {
            for (size_t k = 0; k < s.comps.size(); ++k)
                if (s.comps[k].p == sm->comps[i].p) {
                    where[i] = k;
                    mult[i] = s.comps[k].q / sm->comps[i].q;
                }
        }
        std::vector<long> e(s.comps.size());
        for (const auto& [idx, r] : c_) {
            auto em = sm->decode(idx);
            std::fill(e.begin(), e.end(), 0L);
            for (size_t i = 0; i < em.size(); ++i) e[where[i]] = em[i] * mult[i];
            add_reduced(s, acc, e, r * scale);
        }
    }

    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = it->second == 0 ? c_.erase(it) : std::next(it);
    }

    // Descend to the minimal conductor. Subfield membership is a coordinate
    // condition in the tensor basis: dropping a factor q needs e_q = 0 on all
    // terms, and shrinking p^a to p^(a-1) needs p | e_q on all terms.
    void canonicalize() {
        prune();
        if (c_.empty()) {
            n_ = 1;
            return;
        }
        bool changed = true;
        while (changed && n_ > 1) {
            changed = false;
            auto s = detail::cyc_structure(n_);
            for (size_t i = 0; i < s->comps.size() && !changed; ++i) {
                const auto& comp = s->comps[i];
                bool all_zero = true, all_div = comp.a >= 2;
                for (const auto& [idx, r] : c_) {
                    long e = (idx / comp.stride) % comp.phi;
                    if (e != 0) all_zero = false;
                    if (e % comp.p != 0) all_div = false;
                    if (!all_zero && !all_div) break;
                }
                long m;
                if (all_zero)
                    m = n_ / comp.q;
                else if (all_div)
                    m = n_ / comp.p;
                else
                    continue;
                auto sm = detail::cyc_structure(m);
                Coords next;
                for (const auto& [idx, r] : c_) {
                    auto e = s->decode(idx);
                    std::vector<long> em(sm->comps.size());
                    size_t k = 0;
                    for (size_t j = 0; j < e.size(); ++j) {
                        if (j == i && all_zero) continue;
                        em[k++] = (j == i) ? e[j] / comp.p : e[j];
                    }
                    next[sm->encode(em)] = r;
                }
                n_ = m;
                c_ = std::move(next);
                changed = true;
            }
        }
    }

    long n_;
    Coords c_;  // linear basis index -> coefficient, zeros omitted
};

inline Cyclotomic operator+(const Cyclotomic& a, long b) { return a + Cyclotomic(b); }
inline Cyclotomic operator-(const Cyclotomic& a, long b) { return a - Cyclotomic(b); }

}  // namespace premod
