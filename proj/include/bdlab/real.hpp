#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

#include "bdlab/context.hpp"

namespace bdlab {

/// Arbitrary-precision real backed by MPFR. Every value carries its own
/// precision; all roundings are to nearest. Binary operations produce a
/// result at the wider of the two operand precisions, so values derived from
/// a context's inputs stay at that context's working precision.
class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_nan(v_); }
    explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_nan(v_); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long v, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static Real of(long v, const NumericContext& ctx) { return of(v, ctx.bits()); }
    static Real of_double(double v, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    /// Parses a decimal string (scientific notation allowed). Throws FormatError.
    static Real parse(std::string_view dec, mpfr_prec_t bits);
    static Real parse(std::string_view dec, const NumericContext& ctx) { return parse(dec, ctx.bits()); }
    static Real from_mpz(const mpz_class& z, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    /// num / den as a Real at the given precision.
    static Real from_mpq(const mpq_class& q, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real nan(mpfr_prec_t bits) { return Real(bits); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    Real rounded_to(mpfr_prec_t bits) const {
        Real r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real rounded_to_digits(long decimal_digits) const { return rounded_to(digits_to_bits(decimal_digits)); }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    /// Exponent e with |x| in [2^{e-1}, 2^e); only valid for nonzero finite x.
    long exp2() const { return static_cast<long>(mpfr_get_exp(v_)); }

    /// Decimal string with the given significant digits, scientific form
    /// "d.dddd...e+xx". digits == 0 picks enough digits for exact re-reading
    /// at this precision (lossless round-trip).
    std::string str(size_t digits = 0) const;

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long s) { mpfr_mul_si(v_, v_, s, MPFR_RNDN); return *this; }
    Real& operator/=(long s) { mpfr_div_si(v_, v_, s, MPFR_RNDN); return *this; }
    Real& operator+=(long s) { mpfr_add_si(v_, v_, s, MPFR_RNDN); return *this; }
    Real& operator-=(long s) { mpfr_sub_si(v_, v_, s, MPFR_RNDN); return *this; }

    /// Adds an exact integer in place (no intermediate rounding of z).
    void add_mpz(const mpz_class& z) { mpfr_add_z(v_, v_, z.get_mpz_t(), MPFR_RNDN); }
    void sub_mpz(const mpz_class& z) { mpfr_sub_z(v_, v_, z.get_mpz_t(), MPFR_RNDN); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

inline mpfr_prec_t max_prec(const Real& a, const Real& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
}

#define BDLAB_REAL_BINOP(op, fn)                                   \
    inline Real operator op(const Real& a, const Real& b) {       \
        Real r(max_prec(a, b));                                    \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                  \
        return r;                                                  \
    }
BDLAB_REAL_BINOP(+, mpfr_add)
BDLAB_REAL_BINOP(-, mpfr_sub)
BDLAB_REAL_BINOP(*, mpfr_mul)
BDLAB_REAL_BINOP(/, mpfr_div)
#undef BDLAB_REAL_BINOP

inline Real operator*(const Real& a, long s) { Real r = a; r *= s; return r; }
inline Real operator*(long s, const Real& a) { return a * s; }
inline Real operator/(const Real& a, long s) { Real r = a; r /= s; return r; }
inline Real operator/(long s, const Real& a) {
    Real r(a.prec());
    mpfr_si_div(r.raw(), s, a.raw(), MPFR_RNDN);
    return r;
}
inline Real operator+(const Real& a, long s) { Real r = a; r += s; return r; }
inline Real operator+(long s, const Real& a) { return a + s; }
inline Real operator-(const Real& a, long s) { Real r = a; r -= s; return r; }
inline Real operator-(long s, const Real& a) {
    Real r(a.prec());
    mpfr_si_sub(r.raw(), s, a.raw(), MPFR_RNDN);
    return r;
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) < 0; }
inline bool operator>(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) > 0; }
inline bool operator<=(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) <= 0; }
inline bool operator>=(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) >= 0; }
inline bool operator==(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) == 0; }
inline bool operator!=(const Real& a, long s) { return mpfr_cmp_si(a.raw(), s) != 0; }

#define BDLAB_REAL_FN1(name, fn)              \
    inline Real name(const Real& a) {         \
        Real r(a.prec());                     \
        fn(r.raw(), a.raw(), MPFR_RNDN);      \
        return r;                             \
    }
BDLAB_REAL_FN1(abs, mpfr_abs)
BDLAB_REAL_FN1(sqrt, mpfr_sqrt)
BDLAB_REAL_FN1(exp, mpfr_exp)
BDLAB_REAL_FN1(log, mpfr_log)
BDLAB_REAL_FN1(log10, mpfr_log10)
BDLAB_REAL_FN1(log1p, mpfr_log1p)
BDLAB_REAL_FN1(sin, mpfr_sin)
BDLAB_REAL_FN1(cos, mpfr_cos)
BDLAB_REAL_FN1(sinh, mpfr_sinh)
BDLAB_REAL_FN1(cosh, mpfr_cosh)
#undef BDLAB_REAL_FN1

inline Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_floor(r.raw(), a.raw());
    return r;
}
inline Real ceil(const Real& a) {
    Real r(a.prec());
    mpfr_ceil(r.raw(), a.raw());
    return r;
}
inline Real round_nearest(const Real& a) {
    Real r(a.prec());
    mpfr_round(r.raw(), a.raw());
    return r;
}

inline void sin_cos(Real& s, Real& c, const Real& a) {
    mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
}
inline Real atan2(const Real& y, const Real& x) {
    Real r(max_prec(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, const Real& b) {
    Real r(max_prec(a, b));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
/// n^e at the given precision (n, e machine integers).
inline Real ui_pow_ui(unsigned long n, unsigned long e, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_ui_pow_ui(r.raw(), n, e, MPFR_RNDN);
    return r;
}
inline Real mul_2si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
/// Real natural-log gamma for x > 0 (MPFR, correctly rounded).
inline Real ln_gamma_real(const Real& x) {
    if (!(x > 0)) throw DomainError("ln_gamma_real requires x > 0");
    Real r(x.prec());
    mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace bdlab
