#pragma once

#include <map>
#include <optional>
#include <vector>

#include "numbers.hpp"

namespace premod {

// Dense univariate polynomial over Q, coefficient i is the x^i coefficient.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
    static QPoly constant(const Rat& r) { return QPoly({r}); }
    static QPoly monomial(size_t deg, const Rat& r = 1) {
        std::vector<Rat> c(deg + 1);
        c[deg] = r;
        return QPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return (long)c_.size() - 1; }  // -1 for zero
    const Rat& operator[](size_t i) const {
        static const Rat zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }

    QPoly operator+(const QPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
        return QPoly(std::move(r));
    }
    QPoly operator-(const QPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
        return QPoly(std::move(r));
    }
    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rat> r(c_.size() + o.c_.size() - 1);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return QPoly(std::move(r));
    }
    QPoly operator*(const Rat& s) const {
        std::vector<Rat> r = c_;
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }
    QPoly operator-() const { return *this * Rat(-1); }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euclidean division; divisor must be nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("QPoly divmod by zero");
        std::vector<Rat> rem = c_;
        std::vector<Rat> quo;
        long dd = d.degree();
        if ((long)rem.size() - 1 >= dd) quo.resize(rem.size() - dd);
        while ((long)rem.size() - 1 >= dd) {
            Rat f = rem.back() / d.leading();
            size_t shift = rem.size() - 1 - dd;
            quo[shift] = f;
            for (long i = 0; i <= dd; ++i) rem[shift + i] -= f * d[i];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {QPoly(std::move(quo)), QPoly(std::move(rem))};
    }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat((long)i);
        return QPoly(std::move(r));
    }

    QPoly monic() const {
        if (is_zero()) return {};
        return *this * (Rat(1) / leading());
    }

    static QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            QPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    // Clear denominators and content; primitive integer coefficients.
    std::vector<Int> primitive_int_coeffs() const {
        Int den = 1;
        for (const auto& q : c_) den = int_lcm(den, q.get_den());
        std::vector<Int> z(c_.size());
        Int content = 0;
        for (size_t i = 0; i < c_.size(); ++i) {
            z[i] = c_[i].get_num() * (den / c_[i].get_den());
            content = int_gcd(content, z[i]);
        }
        if (content > 1)
            for (auto& v : z) v /= content;
        return z;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline QPoly qpoly_from_int(const std::vector<Int>& z) {
    std::vector<Rat> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
    return QPoly(std::move(c));
}

// Sturm sequence for a squarefree part of p.
class SturmSequence {
public:
    explicit SturmSequence(const QPoly& p) {
        QPoly sf = p.divmod(QPoly::gcd(p, p.derivative())).first;  // squarefree part
        seq_.push_back(sf);
        seq_.push_back(sf.derivative());
        while (!seq_.back().is_zero()) {
            QPoly r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
            seq_.push_back(-r);
        }
        seq_.pop_back();
    }

    // Number of distinct real roots in (a, b].
    long count_roots(const Rat& a, const Rat& b) const {
        return variations(a) - variations(b);
    }

    long variations(const Rat& x) const {
        long v = 0;
        int prev = 0;
        for (const auto& p : seq_) {
            int s = sgn(p.eval(x));
            if (s != 0) {
                if (prev != 0 && s != prev) ++v;
                prev = s;
            }
        }
        return v;
    }

    const QPoly& squarefree() const { return seq_.front(); }

private:
    std::vector<QPoly> seq_;
};

// Cauchy-style bound: all real roots lie in [-B, B].
inline Rat root_bound(const QPoly& p) {
    Rat b = 0;
    for (long i = 0; i < p.degree(); ++i) {
        Rat q = abs(p[i] / p.leading());
        if (q > b) b = q;
    }
    return b + 1;
}

// Isolate the largest real root of p; returns (lo, hi] with exactly one root,
// refined until hi - lo <= width.
inline std::pair<Rat, Rat> isolate_largest_real_root(const QPoly& p, const Rat& width) {
    SturmSequence st(p);
    Rat bound = root_bound(p);
    Rat lo = -bound, hi = bound;
    if (st.count_roots(lo, hi) == 0) throw std::runtime_error("no real roots");
    // push lo up until exactly one root remains in (lo, hi]
    while (st.count_roots(lo, hi) > 1) {
        Rat mid = (lo + hi) / 2;
        if (st.count_roots(mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (st.count_roots(mid, hi) == 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

// All isolating intervals for distinct real roots, each refined to width.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p, const Rat& width) {
    SturmSequence st(p);
    Rat bound = root_bound(p);
    std::vector<std::pair<Rat, Rat>> out;
    std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        long n = st.count_roots(lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            while (hi - lo > width) {
                Rat mid = (lo + hi) / 2;
                if (st.count_roots(mid, hi) == 1)
                    lo = mid;
                else
                    hi = mid;
            }
            out.emplace_back(lo, hi);
        } else {
            Rat mid = (lo + hi) / 2;
            stack.push_back({lo, mid});
            stack.push_back({mid, hi});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace premod
