#pragma once

#include "bdlab/real.hpp"

namespace bdlab {

/// Arbitrary-precision complex value: a pair of Reals. Both components carry
/// at least the working precision of the values they were built from.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {
        mpfr_set_zero(re.raw(), 1);
        mpfr_set_zero(im.raw(), 1);
    }
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Real& r) : re(r), im(Real::of(0, r.prec())) {}

    static Complex of(long r, long i, mpfr_prec_t bits) {
        return Complex(Real::of(r, bits), Real::of(i, bits));
    }

    mpfr_prec_t prec() const { return max_prec(re, im); }
    Complex rounded_to(mpfr_prec_t bits) const { return Complex(re.rounded_to(bits), im.rounded_to(bits)); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    Complex conj() const { return Complex(re, -im); }
    Complex operator-() const { return Complex(-re, -im); }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Real& s, const Complex& a) { return a * s; }
inline Complex operator+(const Complex& a, const Real& s) { return {a.re + s, a.im}; }
inline Complex operator-(const Complex& a, const Real& s) { return {a.re - s, a.im}; }
inline Complex operator-(const Real& s, const Complex& a) { return {s - a.re, -a.im}; }
inline Complex operator+(const Complex& a, long s) { return {a.re + s, a.im}; }
inline Complex operator-(const Complex& a, long s) { return {a.re - s, a.im}; }
inline Complex operator-(long s, const Complex& a) { return {s - a.re, -a.im}; }

/// |a|^2 without the square root.
inline Real norm_sqr(const Complex& a) { return a.re * a.re + a.im * a.im; }

/// |a| via hypot (no spurious overflow).
inline Real abs(const Complex& a) {
    Real r(a.prec());
    mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
    return r;
}

/// Principal argument in (-pi, pi].
inline Real arg(const Complex& a) { return atan2(a.im, a.re); }

inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = norm_sqr(b);
    if (d.is_zero()) throw DomainError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Complex operator/(const Real& s, const Complex& b) { return Complex(s) / b; }

inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

/// exp(a) = e^{Re a} (cos Im a + i sin Im a).
Complex exp(const Complex& a);

/// Principal natural logarithm: ln|a| + i arg(a), arg in (-pi, pi].
Complex log(const Complex& a);

/// Decimal rendering "re + im*i" with the given significant digits.
std::string to_string(const Complex& a, size_t digits = 0);

}  // namespace bdlab
