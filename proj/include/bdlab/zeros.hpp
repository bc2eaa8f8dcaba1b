#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bdlab/complex.hpp"
#include "bdlab/context.hpp"

namespace bdlab {

/// One nontrivial zero rho_l = 1/2 + i gamma_l, ordered by increasing
/// ordinate. residual is |zeta(1/2 + i gamma)| measured after refinement;
/// a verified zero satisfies residual < 10^{-(precision_digits - 4)}.
struct ZetaZero {
    long index = 0;
    Real gamma;
    long precision_digits = 0;
    std::optional<Real> residual;
    std::optional<Complex> zeta_prime;
    /// Measured Re(s) - 1/2 at refinement; kept as a diagnostic, loud when
    /// it ever exceeds tolerance (that would be the discovery of the century
    /// and must not be clamped away).
    std::optional<Real> re_deviation;

    bool verified() const;
};

struct ZeroTable {
    std::vector<ZetaZero> zeros;
    std::string source;

    long count() const { return static_cast<long>(zeros.size()); }
    /// 1-based access matching the index field.
    const ZetaZero& at(long index) const;
    ZetaZero& at(long index);
    std::string fingerprint() const;
};

enum class ZeroTableFormat { plain_ordinates, indexed_ordinates };

/// Parses a stream of decimal ordinates, one per line ('#' lines are
/// comments; indexed format expects "index whitespace ordinate" with indices
/// 1..count, no gaps). precision_digits is set to the count of supplied
/// fractional digits; residuals are left unset (unverified). Non-monotone or
/// unparseable lines are rejected with their line number.
ZeroTable ingest_zero_table(std::istream& in, ZeroTableFormat format,
                            std::string source_name = "stream");

struct RefineDiagnostics {
    std::vector<Real> step_sizes;
    long iterations = 0;
};

/// Complex Newton iteration s <- s - zeta(s)/zeta'(s) from 1/2 + i approx,
/// run on a doubling precision ladder until the step is below
/// 10^{-target_digits}. The returned zero carries a verified residual and
/// the measured Re(s) - 1/2. Throws WrongZeroError if the iteration leaves
/// the seed's basin (0.4), ConvergenceError on the iteration cap, and
/// OffCriticalLineError if Re(s) deviates from 1/2 beyond
/// 10^{-(target_digits-4)} (never silently discarded).
ZetaZero refine_zero(const Real& gamma_approx, long target_digits, const NumericContext& ctx,
                     RefineDiagnostics* diag = nullptr);

/// residual = |zeta(1/2 + i gamma)| at working precision >= claimed + 10,
/// stored on the zero and returned.
Real verify_zero(ZetaZero& zero, const NumericContext& ctx);

/// Refines every seed in the table to target_digits (in parallel), verifies
/// residuals, and re-checks strict ordering and pairwise gaps. Indices are
/// preserved.
void refine_table(ZeroTable& table, long target_digits, const NumericContext& ctx,
                  int threads = 0);

/// Computes zeta'(rho_l) for every zero at the context's oversampled
/// precision and stores it at the zero's precision. Refuses unverified
/// zeros; evaluation errors carry the zero index. Idempotent.
void attach_zeta_prime(ZeroTable& table, const NumericContext& ctx, int threads = 0);

struct DerivativeExtremes {
    long min_index = 0;
    Real min_value;
    long max_index = 0;
    Real max_value;
};

/// Extremes of |zeta'(rho_l)| over l_min <= l <= l_max (inclusive, 1-based).
DerivativeExtremes scan_derivative_extremes(const ZeroTable& table, long l_min, long l_max);

/// Text persistence: '#key: value' headers {version, count,
/// precision_digits, source, generator}, then one
/// "index TAB gamma TAB residual TAB zeta_prime_re TAB zeta_prime_im" row per
/// zero, every number a full-precision decimal string (bit-exact round-trip;
/// unset fields as '-').
void persist_table(const ZeroTable& table, std::ostream& out);
ZeroTable load_table(std::istream& in);

/// Copy of the table with every stored derivative rounded to the given
/// decimal precision; used to reproduce the degraded-derivative plateau.
ZeroTable degrade_derivatives(const ZeroTable& table, long digits);

}  // namespace bdlab
