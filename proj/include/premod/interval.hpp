#pragma once

#include <mpfr.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "numbers.hpp"

namespace premod {

// Thrown when an interval sign test fails to resolve at the precision cap.
struct UndecidedSign : std::runtime_error {
    UndecidedSign() : std::runtime_error("sign test undecided at precision cap") {}
    explicit UndecidedSign(const std::string& what) : std::runtime_error(what) {}
};

inline long default_digits() {
    if (const char* env = std::getenv("PMK_DIGITS")) {
        long d = std::atol(env);
        if (d >= 8) return d;
    }
    return 64;
}

constexpr long kMaxSignDigits = 4096;

inline mpfr_prec_t digits_to_prec(long digits) {
    return (mpfr_prec_t)(digits * 3.33) + 32;
}

// Closed interval [lo, hi] with mpfr endpoints and outward rounding.
class RealInterval {
public:
    RealInterval() : RealInterval(64) {}
    explicit RealInterval(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    RealInterval(const Rat& q, mpfr_prec_t prec) : RealInterval(prec) {
        mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
    }
    RealInterval(const RealInterval& o) : RealInterval(mpfr_get_prec(o.lo_)) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RealInterval& operator=(const RealInterval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
            mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~RealInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

    static RealInterval cos_angle(long num, long den, mpfr_prec_t prec) {
        return trig(num, den, prec, /*sine=*/false);
    }
    static RealInterval sin_angle(long num, long den, mpfr_prec_t prec) {
        return trig(num, den, prec, /*sine=*/true);
    }

    RealInterval operator+(const RealInterval& o) const {
        RealInterval r(prec());
        mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
        return r;
    }
    RealInterval operator-(const RealInterval& o) const {
        RealInterval r(prec());
        mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
        return r;
    }
    RealInterval operator*(const RealInterval& o) const {
        RealInterval r(prec());
        mpfr_t c, best_lo, best_hi;
        mpfr_init2(c, prec());
        mpfr_init2(best_lo, prec());
        mpfr_init2(best_hi, prec());
        bool first = true;
        const mpfr_srcptr xs[2] = {lo_, hi_};
        const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_mul(c, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(c, best_lo) < 0) mpfr_set(best_lo, c, MPFR_RNDD);
                mpfr_mul(c, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(c, best_hi) > 0) mpfr_set(best_hi, c, MPFR_RNDU);
                first = false;
            }
        mpfr_set(r.lo_, best_lo, MPFR_RNDD);
        mpfr_set(r.hi_, best_hi, MPFR_RNDU);
        mpfr_clear(c);
        mpfr_clear(best_lo);
        mpfr_clear(best_hi);
        return r;
    }

    RealInterval scaled(const Rat& q) const {
        RealInterval r(prec());
        if (sgn(q) >= 0) {
            mpfr_mul_q(r.lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(r.hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_mul_q(r.lo_, hi_, q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(r.hi_, lo_, q.get_mpq_t(), MPFR_RNDU);
        }
        return r;
    }

    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool is_exact_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }

    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }

    // width <= 10^-digits
    bool narrower_than(long digits) const {
        mpfr_t w, tol;
        mpfr_init2(w, prec());
        mpfr_init2(tol, prec());
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        mpfr_set_ui(tol, 10, MPFR_RNDN);
        mpfr_pow_si(tol, tol, -digits, MPFR_RNDD);
        bool ok = mpfr_cmp(w, tol) <= 0;
        mpfr_clear(w);
        mpfr_clear(tol);
        return ok;
    }

    double mid() const {
        double a = mpfr_get_d(lo_, MPFR_RNDN);
        double b = mpfr_get_d(hi_, MPFR_RNDN);
        return (a + b) / 2;
    }

    std::string str() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "[%.20Rg, %.20Rg]", lo_, hi_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    static RealInterval trig(long num, long den, mpfr_prec_t prec, bool sine) {
        // angle = 2*pi*num/den, evaluated with one extra-precision pass so the
        // directed rounding of pi dominates the error.
        RealInterval r(prec);
        mpfr_t pi_lo, pi_hi, a_lo, a_hi, v1, v2;
        mpfr_prec_t p2 = prec + 16;
        mpfr_init2(pi_lo, p2);
        mpfr_init2(pi_hi, p2);
        mpfr_init2(a_lo, p2);
        mpfr_init2(a_hi, p2);
        mpfr_init2(v1, p2);
        mpfr_init2(v2, p2);
        mpfr_const_pi(pi_lo, MPFR_RNDD);
        mpfr_const_pi(pi_hi, MPFR_RNDU);
        Rat f(2 * num, den);
        f.canonicalize();
        if (sgn(f) >= 0) {
            mpfr_mul_q(a_lo, pi_lo, f.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(a_hi, pi_hi, f.get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_mul_q(a_lo, pi_hi, f.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(a_hi, pi_lo, f.get_mpq_t(), MPFR_RNDU);
        }
        // |d trig| <= 1, so bracket via endpoint values +/- angle width.
        if (sine) {
            mpfr_sin(v1, a_lo, MPFR_RNDD);
            mpfr_sin(v2, a_hi, MPFR_RNDD);
        } else {
            mpfr_cos(v1, a_lo, MPFR_RNDD);
            mpfr_cos(v2, a_hi, MPFR_RNDD);
        }
        mpfr_t w;
        mpfr_init2(w, p2);
        mpfr_sub(w, a_hi, a_lo, MPFR_RNDU);
        if (mpfr_cmp(v1, v2) > 0) mpfr_swap(v1, v2);
        mpfr_sub(v1, v1, w, MPFR_RNDD);
        mpfr_add(v2, v2, w, MPFR_RNDU);
        mpfr_set(r.lo_, v1, MPFR_RNDD);
        mpfr_set(r.hi_, v2, MPFR_RNDU);
        mpfr_clear(pi_lo);
        mpfr_clear(pi_hi);
        mpfr_clear(a_lo);
        mpfr_clear(a_hi);
        mpfr_clear(v1);
        mpfr_clear(v2);
        mpfr_clear(w);
        return r;
    }

    mpfr_t lo_, hi_;
};

struct ComplexInterval {
    RealInterval re, im;

    ComplexInterval() = default;
    ComplexInterval(RealInterval r, RealInterval i) : re(std::move(r)), im(std::move(i)) {}

    ComplexInterval operator+(const ComplexInterval& o) const { return {re + o.re, im + o.im}; }
    ComplexInterval operator-(const ComplexInterval& o) const { return {re - o.re, im - o.im}; }
    ComplexInterval operator*(const ComplexInterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    std::string str() const { return re.str() + " + " + im.str() + " i"; }
};

}  // namespace premod
