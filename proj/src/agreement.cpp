#include "bdlab/agreement.hpp"

namespace bdlab {

namespace {

// 10^{-d} at the given precision.
Real pow10_neg(long d, mpfr_prec_t bits) {
    Real t(bits);
    mpfr_ui_pow_ui(t.raw(), 10, static_cast<unsigned long>(d), MPFR_RNDN);
    mpfr_si_div(t.raw(), 1, t.raw(), MPFR_RNDN);
    return t;
}

}  // namespace

Agreement digits_of_agreement(const Real& a, const Real& b) {
    if (b.is_zero()) throw DomainError("digits_of_agreement: b must be nonzero");
    mpfr_prec_t p = max_prec(a, b) + 64;
    Real r(p);
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    mpfr_sub_si(r.raw(), r.raw(), 1, MPFR_RNDN);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    if (r.is_zero()) return {true, 0};

    Real l10 = log10(r.rounded_to(128));
    long d = -l10.to_double() >= 0 ? static_cast<long>(-l10.to_double()) : -1;
    // Nudge d until the bracket 10^{-(d+1)} < r <= 10^{-d} holds.
    for (int i = 0; i < 4 && d >= 0; ++i) {
        if (r > pow10_neg(d, p)) { --d; continue; }
        if (d >= 0 && r <= pow10_neg(d + 1, p)) { ++d; continue; }
        break;
    }
    if (d < 0) d = 0;  // |ratio - 1| >= 1: no leading digits agree
    return {false, d};
}

}  // namespace bdlab
