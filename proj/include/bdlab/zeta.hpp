#pragma once

#include <iosfwd>
#include <vector>

#include "bdlab/complex.hpp"
#include "bdlab/context.hpp"
#include "bdlab/sumalt.hpp"

namespace bdlab {

/// zeta(s) for complex s with Re(s) > 0, s != 1, via the eta series
/// (1 - 2^{1-s})^{-1} sum (-1)^{n-1} n^{-s} accelerated with sumalt in
/// adaptive mode. Refuses (RepresentationError) within 10^{-(P-2)} of the
/// prefactor zeros s = 1 + 2 pi i k / ln 2.
Complex zeta_complex(const Complex& s, const NumericContext& ctx);

/// zeta(m) at an integer m >= 2. Even m use the exact Bernoulli closed form;
/// odd m use Euler-Maclaurin; once the Dirichlet tail is short enough the
/// direct series takes over (provably <= 3 terms for m > P ln10/ln2).
/// Values are cached per (m, precision).
Real zeta_integer(long m, const NumericContext& ctx);

/// zeta'(s) by term-by-term differentiation of the eta series: the
/// log-prefactor part and the sum (-1)^n ln(n) n^{-s} part, each accelerated
/// with sumalt in adaptive mode at the context's oversampled precision, then
/// rounded to precision_digits.
Complex zeta_prime(const Complex& s, const NumericContext& ctx);

/// Both zeta(s) and zeta'(s) in one pass (shared power table), at full
/// working precision with no oversampling or final truncation. This is the
/// evaluation Newton refinement iterates on.
struct ZetaPair {
    Complex zeta;
    Complex zeta_prime;
};
ZetaPair zeta_and_prime(const Complex& s, const NumericContext& ctx);

/// zeta'(-2n) at the trivial zeros in closed form:
/// (-1)^n zeta(2n+1) (2n)! / (2^{2n+1} pi^{2n}).
Real zeta_prime_trivial(long n, const NumericContext& ctx);

/// Coefficients A_0..A_K of the globally convergent zeta representation:
/// A_k = sum_{j=0}^k (-1)^j C(k,j) (2j+1) zeta(2j+2). The same binomial
/// cancellation as the generic c_k sum applies, so the context must carry
/// ceil(K log10 2) extra digits (PrecisionError with a hint otherwise).
std::vector<Real> maslanka_coefficients(long K, const NumericContext& ctx);

/// Partial sum through k = K of the representation
/// zeta(s) = 1/(s-1) sum_k Gamma(k+1-s/2)/Gamma(1-s/2) A_k / k!,
/// with the gamma ratio accumulated as an incremental product.
Complex zeta_via_maslanka(const Complex& s, long K, const NumericContext& ctx);

/// Writes/reads the integer-zeta cache entries at one precision as
/// line-oriented text ('#' header lines carry precision and generator).
void export_zeta_integer_cache(std::ostream& out, const NumericContext& ctx);
long import_zeta_integer_cache(std::istream& in);

namespace detail {
/// Uncached integer zeta at an explicit relative-digit budget; the workhorse
/// behind zeta_integer and the per-term budgeting of the generic c_k sum.
Real zeta_integer_budget(long m, long rel_digits);
}  // namespace detail

}  // namespace bdlab
