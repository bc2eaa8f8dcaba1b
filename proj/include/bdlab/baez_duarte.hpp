#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bdlab/complex.hpp"
#include "bdlab/context.hpp"
#include "bdlab/zeros.hpp"

namespace bdlab {

/// Working precision needed to extract target_digits of c_k from the generic
/// binomial sum: ceil(k log10 2) digits are destroyed by cancellation, plus a
/// reserved guard (default 50).
long required_precision_for_generic(long k, long target_digits, long guard = 50);

struct PartialSumTrace {
    struct Row {
        long n;  // partial sum through j = n inclusive
        Real partial_sum;
    };
    std::vector<Row> rows;
};

/// Resumable mid-sum state of the generic evaluation. binomial is C(k, next_j)
/// exactly; partial_sum is the accumulator, bit-exact at working_digits.
struct GenericState {
    long k = 0;
    long next_j = 0;
    Real partial_sum;
    mpz_class binomial = 1;
    long working_digits = 0;
};

struct CkGenericOptions {
    long trace_stride = 0;  // 0 = no trace rows
    /// Resume from a previous state (refused unless k and precision match).
    const GenericState* resume = nullptr;
    /// Called every checkpoint_stride terms with the current state.
    std::function<void(const GenericState&)> checkpoint_sink;
    long checkpoint_stride = 1000;
    /// Stop before processing j == stop_at_j and return the state (tests and
    /// interrupt simulation).
    long stop_at_j = -1;
    /// Progress callback (stderr reporting lives in the CLI).
    std::function<void(long j, const Real& partial)> progress;
    long progress_stride = 0;
};

struct CkGenericResult {
    Real value;  // accumulator at full working precision
    PartialSumTrace trace;
    bool complete = true;
    GenericState state;      // populated when stopped early or at completion
    long delivered_digits = 0;  // P - ceil(k log10 2) - guard, the accuracy contract
};

/// c_k = sum_{j=0}^{k} (-1)^j C(k,j) / zeta(2j+2), summed in increasing j
/// with the incremental binomial update. Each term is computed to an
/// absolute budget sized so the final value carries
/// P - ceil(k log10 2) - guard correct digits (the precision-loss law); the
/// accumulator runs at full working precision. Refuses (PrecisionError with
/// a required-precision hint) when the context cannot deliver a single digit.
CkGenericResult ck_generic(long k, const NumericContext& ctx, const CkGenericOptions& opt = {});

/// Trend over trivial zeros:
/// -(2pi)^{-2} sum_{m>=2} [Gamma(k+1)Gamma(m)/(Gamma(k+m+1)Gamma(2m-1))]
///                        (-1)^m (2pi)^{2m}/zeta(2m-1),
/// the alternating tail accelerated with sumalt, gamma ratios in log space.
Real ck_trend(long k, const NumericContext& ctx);

enum class PochhammerMethod { product, gamma_ratio };

/// P_k(s) = prod_{r=1..k} (1 - s/r), or equivalently
/// (-1)^k Gamma(s) / (Gamma(k+1) Gamma(s-k)). The product form returns exact
/// zero at integer s in [1,k]; the gamma-ratio form refuses there (and at the
/// poles of Gamma(s)) and directs the caller to the product.
Complex pochhammer_pk(long k, const Complex& s, const NumericContext& ctx,
                      PochhammerMethod method);

/// Oscillation over the first L upper-half-plane zeros, exact form:
/// (-1)^{k+1} Re sum_l Gamma(k+1) Gamma(rho_l/2 - k - 1) / (Gamma(rho_l/2) zeta'(rho_l)),
/// each summand assembled entirely in log space (the gamma factor alone
/// underflows ~10^{-30000} scales otherwise). Requires verified zeros with
/// derivatives at >= the context's precision.
Real ck_oscillation_exact(long k, const ZeroTable& table, long L, const NumericContext& ctx);

/// Asymptotic oscillation k^{-3/4} Re sum_l k^{i gamma_l/2}
/// Gamma(3/4 - i gamma_l/2) / zeta'(rho_l); the Fig.1/Fig.2 workhorse.
Real ck_oscillation_asymptotic(long k, const ZeroTable& table, long L,
                               const NumericContext& ctx);

struct SineApprox {
    Real amplitude_A;  // > 0
    Real phase_phi;    // in [0, 2pi)
};

/// One-zero amplitude/phase form: A = |Gamma(3/4 - i gamma_1/2) / zeta'(rho_1)|
/// and phi such that A k^{-3/4} sin(phi - (gamma_1/2) ln k) equals the l=1
/// term of the asymptotic oscillation identically.
SineApprox sine_approx_params(const ZetaZero& zero1, const NumericContext& ctx);

/// (A/k^{3/4}) sin(phi - (gamma_1/2) ln k).
Real sine_approx_value(long k, const SineApprox& sine, const Real& gamma1,
                       const NumericContext& ctx);

/// Envelope +-A k^{-3/4}.
std::pair<Real, Real> envelope(long k, const SineApprox& sine, const NumericContext& ctx);

struct YCurvePoint {
    long n;
    Real y;            // -1 / ln |S_n - c_generic|; positive in the converging regime
    bool saturated;    // S_n == c_generic at working precision
    double log10_delta;  // log10 |S_n - c_generic| (diagnostic)
};

/// y_n = -1 / ln |S_n - c_generic| where S_n is the trend plus the first n
/// oscillation summands (exact form). Row n = 0 is trend-only. The leading
/// minus makes the converging regime positive, matching y ~ 4/(pi gamma);
/// this sign convention is documented in every emitted header.
std::vector<YCurvePoint> y_curve(long k, const Real& c_generic, const ZeroTable& table,
                                 long n_max, const NumericContext& ctx);

struct ZerosNeeded {
    Real gamma_needed;
    long L = 0;
    bool l_known = false;
};

/// gamma_needed = target_digits x 4 ln(10)/pi (the e^{-pi gamma/4} = 10^{-D}
/// cutoff); L is the largest index with gamma_L <= gamma_needed, i.e. the
/// last zero whose term still matters at that accuracy. Table too short:
/// l_known = false.
ZerosNeeded zeros_needed(long target_digits, const ZeroTable* table);

/// log10 of the k index at which an off-critical-line zero (deviation delta,
/// ordinate gamma_off) would overcome the leading oscillation term:
/// log10 K = log10 C' + (2 gamma_off / delta) log10 e. Returned in log space
/// because K overflows any fixed-width exponent.
double violation_index_estimate(double delta, double gamma_off, double c_ratio);

}  // namespace bdlab
