#pragma once

#include <cmath>
#include <vector>

#include "bdlab/complex.hpp"
#include "bdlab/context.hpp"

namespace bdlab {

enum class AccelMode { fixed_n, adaptive };

/// Request for one alternating-series acceleration. The series is presented
/// as sum_{n>=0} (-1)^n a_n with a_n the unsigned term magnitudes; the term
/// provider must be deterministic (same index -> same value).
struct AccelRequest {
    long target_digits = 0;
    AccelMode mode = AccelMode::adaptive;
    /// |Im s| of the underlying exponent for eta-type series; inflates the
    /// initial term count additively (empirical factor 1).
    double height = 0.0;
    /// Explicit override of the initial term count (0 = derive from target).
    long initial_terms = 0;
    /// Adaptive mode aborts once the term count would exceed
    /// term_ceiling_factor x initial count.
    long term_ceiling_factor = 64;
};

template <class T>
struct SumaltResult {
    T value;
    long terms_used = 0;
    Real estimated_error;
    /// True when convergence was accepted by the doubling-agreement rule
    /// (complex/adaptive use), which has no proven error bound.
    bool heuristic = false;
};

namespace detail {

inline void accel_accum(Real& s, const Real& c, const Real& a) {
    mpfr_fma(s.raw(), c.raw(), a.raw(), s.raw(), MPFR_RNDN);
}
inline void accel_accum(Complex& s, const Real& c, const Complex& a) {
    accel_accum(s.re, c, a.re);
    accel_accum(s.im, c, a.im);
}
inline void accel_div(Real& s, const Real& d) { s /= d; }
inline void accel_div(Complex& s, const Real& d) {
    s.re /= d;
    s.im /= d;
}
template <class T>
T accel_zero(mpfr_prec_t bits);
template <>
inline Real accel_zero<Real>(mpfr_prec_t bits) { return Real::of(0, bits); }
template <>
inline Complex accel_zero<Complex>(mpfr_prec_t bits) { return Complex(bits); }

/// One Chebyshev-weight pass with n terms (Algorithm 1 of Cohen, Rodriguez
/// Villegas and Zagier): d = (3+sqrt(8))^n averaged with its inverse, then
/// the b,c recurrence accumulating sum c_k a_k / d.
template <class T, class Cache>
T sumalt_pass(Cache& term, long n, mpfr_prec_t bits) {
    Real d(bits);
    {
        Real base(bits);
        mpfr_sqrt_ui(base.raw(), 8, MPFR_RNDN);
        mpfr_add_ui(base.raw(), base.raw(), 3, MPFR_RNDN);
        mpfr_pow_ui(d.raw(), base.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        Real inv = 1 / d;
        d += inv;
        d /= 2;
    }
    Real b = Real::of(-1, bits);
    Real c = -d;
    T s = accel_zero<T>(bits);
    for (long k = 0; k < n; ++k) {
        c = b - c;
        accel_accum(s, c, term(k));
        // b *= (k+n)(k-n) / ((k+1/2)(k+1))
        mpfr_mul_si(b.raw(), b.raw(), k + n, MPFR_RNDN);
        mpfr_mul_si(b.raw(), b.raw(), k - n, MPFR_RNDN);
        mpfr_mul_2ui(b.raw(), b.raw(), 1, MPFR_RNDN);
        mpfr_div_ui(b.raw(), b.raw(), static_cast<unsigned long>(2 * k + 1), MPFR_RNDN);
        mpfr_div_ui(b.raw(), b.raw(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
    }
    accel_div(s, d);
    return s;
}

inline long sumalt_base_terms(long target_digits) {
    // ceil(D ln10 / ln(3+sqrt 8)); 1.3062... terms per digit.
    return static_cast<long>(std::ceil(static_cast<double>(target_digits) * 1.3062112568));
}

inline Real pow10_neg_r(long d, mpfr_prec_t bits) {
    Real t(bits);
    mpfr_ui_pow_ui(t.raw(), 10, static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_si_div(t.raw(), 1, t.raw(), MPFR_RNDN);
    return t;
}

}  // namespace detail

inline std::string to_sum_string(const Real& v) { return v.str(); }
inline std::string to_sum_string(const Complex& v) { return to_string(v); }

/// Cohen-Villegas-Zagier acceleration of sum_{n>=0} (-1)^n a_n.
///
/// fixed_n mode uses N = ceil(target ln10/ln(3+sqrt 8)) + guard terms and
/// reports the proven 3 (3+sqrt 8)^{-N} |a_0| bound (valid for totally
/// monotone a_n). adaptive mode doubles N until two successive accelerated
/// sums agree to target_digits (relative to max(|S|, |a_0|), so series
/// summing to ~0 are accepted on absolute grounds); this is the required
/// mode for complex-exponent series where the classical bound is not proven.
template <class T, class F>
SumaltResult<T> sumalt(F&& term_at, const AccelRequest& req, const NumericContext& ctx) {
    const mpfr_prec_t bits = ctx.bits();
    if (req.target_digits > ctx.working_digits())
        throw PrecisionError("sumalt: target_digits exceeds context working precision",
                             req.target_digits);

    std::vector<T> cache;
    auto term = [&](long n) -> const T& {
        while (static_cast<long>(cache.size()) <= n)
            cache.push_back(term_at(static_cast<long>(cache.size())));
        return cache[n];
    };

    long n0 = req.initial_terms > 0
                  ? req.initial_terms
                  : detail::sumalt_base_terms(req.target_digits) + 3 +
                        static_cast<long>(std::ceil(req.height));
    if (n0 < 4) n0 = 4;

    if (req.mode == AccelMode::fixed_n) {
        T s = detail::sumalt_pass<T>(term, n0, bits);
        Real bound(64);
        // 3 (3+sqrt8)^{-n} |a_0|
        mpfr_set_d(bound.raw(), 3.0 + std::sqrt(8.0), MPFR_RNDN);
        mpfr_pow_si(bound.raw(), bound.raw(), -n0, MPFR_RNDN);
        mpfr_mul_ui(bound.raw(), bound.raw(), 3, MPFR_RNDN);
        bound *= abs(term(0));
        return {std::move(s), n0, bound, false};
    }

    const long ceiling = req.term_ceiling_factor * n0;
    T prev = detail::sumalt_pass<T>(term, n0, bits);
    long n = n0;
    Real tol = detail::pow10_neg_r(req.target_digits, bits);
    while (true) {
        long n2 = 2 * n;
        if (n2 > ceiling) {
            throw ConvergenceError(
                "sumalt: adaptive mode exceeded term ceiling (" + std::to_string(ceiling) +
                    ") before successive sums agreed",
                to_sum_string(prev), n);
        }
        T cur = detail::sumalt_pass<T>(term, n2, bits);
        Real diff = abs(cur - prev);
        Real scale = abs(cur);
        Real a0 = abs(term(0));
        if (scale < a0) scale = a0;
        if (diff <= scale * tol)
            return {std::move(cur), n2, diff, true};
        prev = std::move(cur);
        n = n2;
    }
}

}  // namespace bdlab
