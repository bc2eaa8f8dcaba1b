#pragma once

#include <gmpxx.h>

#include <string_view>
#include <vector>

#include "bdlab/complex.hpp"
#include "bdlab/context.hpp"

namespace bdlab {

/// Exact Bernoulli number B_n as a rational. B_0 = 1, B_1 = -1/2 (recurrence
/// convention), B_odd = 0 for odd n > 1. Backed by a tangent-number table
/// (exact integer arithmetic) with process-wide caching.
const mpq_class& bernoulli(unsigned long n);

/// Exact binomial coefficient C(k, j). Throws DomainError when j > k.
mpz_class binomial(unsigned long k, unsigned long j);

/// Incremental binomial row scan: C(k,0), C(k,1), ... via
/// C(k,j+1) = C(k,j) (k-j)/(j+1), all exact. Used by long sequential sums
/// and checkpointing (the state is a single exact integer).
class BinomialScan {
public:
    explicit BinomialScan(unsigned long k) : k_(k), j_(0), c_(1) {}
    /// Resumes a scan from an externally stored state.
    BinomialScan(unsigned long k, unsigned long j, mpz_class c) : k_(k), j_(j), c_(std::move(c)) {}

    unsigned long j() const { return j_; }
    const mpz_class& value() const { return c_; }
    void advance() {
        mpz_mul_ui(c_.get_mpz_t(), c_.get_mpz_t(), k_ - j_);
        mpz_divexact_ui(c_.get_mpz_t(), c_.get_mpz_t(), j_ + 1);
        ++j_;
    }

private:
    unsigned long k_;
    unsigned long j_;
    mpz_class c_;
};

/// Fundamental constants at a given precision, cached per precision and
/// bit-identical across calls.
Real const_pi(mpfr_prec_t bits);
Real const_ln2(mpfr_prec_t bits);
Real const_euler(mpfr_prec_t bits);
Real const_ln_2pi(mpfr_prec_t bits);

/// Named-constant lookup per the public contract: {pi, ln2, euler_gamma}.
Real constant(std::string_view name, const NumericContext& ctx);

/// ln sin(pi z) with the real part exact for large |Im z| (the sine is
/// evaluated through its dominant exponential in log space, so arguments
/// with |Im z| in the thousands neither overflow nor lose digits).
/// The imaginary part is reduced into (-pi, pi].
Complex ln_sin_pi(const Complex& z, const NumericContext& ctx);

/// Principal-branch complex log-gamma.
///
/// Strategy: real positive arguments go straight to MPFR; otherwise the
/// argument is shifted right until Re exceeds 1.2 x (working digits), the
/// Stirling series with Bernoulli coefficients is applied, and the shift is
/// removed as one product log. Arguments with Re < 0 are reflected through
/// ln pi - ln sin(pi z) - ln_gamma(1 - z); on that domain the result is
/// correct modulo 2 pi i (exact after exponentiation), principal elsewhere.
/// Throws DomainError at the poles (non-positive integers).
Complex ln_gamma(const Complex& z, const NumericContext& ctx);

/// Internal: Bernoulli-based Stirling coefficients B_{2n}/((2n)(2n-1)) as
/// Reals at the given precision, cached. Index i holds the n = i+1 entry.
const std::vector<Real>& stirling_coefficients(mpfr_prec_t bits, size_t count);

}  // namespace bdlab
