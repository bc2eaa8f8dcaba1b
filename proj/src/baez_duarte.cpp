#include "bdlab/baez_duarte.hpp"

#include <cmath>

#include "bdlab/special.hpp"
#include "bdlab/sumalt.hpp"
#include "bdlab/zeta.hpp"

namespace bdlab {

namespace {

constexpr double kLog10Of2 = 0.30102999566398120;
constexpr long kReservedGuard = 50;

Real pow10_neg(long d, mpfr_prec_t bits) {
    Real t(bits);
    mpfr_ui_pow_ui(t.raw(), 10, static_cast<unsigned long>(d < 0 ? 0 : d), MPFR_RNDN);
    mpfr_si_div(t.raw(), 1, t.raw(), MPFR_RNDN);
    return t;
}

long cancellation_digits(long k) {
    if (k <= 0) return 0;
    return static_cast<long>(std::ceil(static_cast<double>(k) * kLog10Of2));
}

}  // namespace

long required_precision_for_generic(long k, long target_digits, long guard) {
    if (k < 0 || target_digits < 1) throw DomainError("required_precision_for_generic: bad args");
    return cancellation_digits(k) + target_digits + guard;
}

CkGenericResult ck_generic(long k, const NumericContext& ctx, const CkGenericOptions& opt) {
    if (k < 0) throw DomainError("ck_generic: k must be >= 0");
    const long P = ctx.working_digits();
    const long loss = cancellation_digits(k);
    const long usable = P - loss - kReservedGuard;
    if (usable < 1)
        throw PrecisionError("ck_generic: " + std::to_string(P) +
                                 " working digits cannot survive the ~" + std::to_string(loss) +
                                 "-digit binomial cancellation at k = " + std::to_string(k) +
                                 "; need at least " + std::to_string(required_precision_for_generic(k, 10)),
                             required_precision_for_generic(k, 10));
    // Per-term absolute budget: a few digits below the deliverable accuracy.
    const long eps_digits = usable + 6;
    const mpfr_prec_t bits = digits_to_bits(P);

    CkGenericResult res;
    long j0 = 0;
    BinomialScan scan(static_cast<unsigned long>(k));
    Real acc(bits);
    mpfr_set_zero(acc.raw(), 1);
    if (opt.resume) {
        if (opt.resume->k != k)
            throw FingerprintMismatchError("ck_generic resume: k mismatch");
        if (opt.resume->working_digits != P)
            throw FingerprintMismatchError("ck_generic resume: precision mismatch");
        j0 = opt.resume->next_j;
        acc = opt.resume->partial_sum.rounded_to(bits);
        scan = BinomialScan(static_cast<unsigned long>(k),
                            static_cast<unsigned long>(j0), opt.resume->binomial);
    }

    auto snapshot = [&](long next_j) {
        GenericState st;
        st.k = k;
        st.next_j = next_j;
        st.partial_sum = acc;
        st.binomial = scan.value();
        st.working_digits = P;
        return st;
    };

    for (long j = j0; j <= k; ++j) {
        if (opt.stop_at_j == j) {
            res.complete = false;
            res.state = snapshot(j);
            res.value = acc;
            res.delivered_digits = usable;
            return res;
        }
        const mpz_class& c = scan.value();
        long digits_c = static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 10));
        long d_j = eps_digits + digits_c + 2;
        Real z = detail::zeta_integer_budget(2 * j + 2, d_j);
        bool positive = (j % 2 == 0);
        if (z == 1) {
            // zeta rounded to exactly 1 at this budget: the term is the exact
            // binomial coefficient.
            if (positive)
                acc.add_mpz(c);
            else
                acc.sub_mpz(c);
        } else {
            Real term = Real::from_mpz(c, digits_to_bits(d_j)) / z;
            if (positive)
                acc += term;
            else
                acc -= term;
        }
        if (opt.trace_stride > 0 && ((j > 0 && j % opt.trace_stride == 0) || j == k))
            res.trace.rows.push_back({j, acc});
        if (opt.progress && opt.progress_stride > 0 && j % opt.progress_stride == 0)
            opt.progress(j, acc);
        if (j < k) scan.advance();
        if (opt.checkpoint_sink && opt.checkpoint_stride > 0 && (j + 1) % opt.checkpoint_stride == 0 &&
            j < k)
            opt.checkpoint_sink(snapshot(j + 1));
    }
    res.value = acc;
    res.complete = true;
    res.state = snapshot(k + 1);
    res.delivered_digits = usable;
    return res;
}

Real ck_trend(long k, const NumericContext& ctx) {
    if (k < 1) throw DomainError("ck_trend: k must be >= 1");
    const mpfr_prec_t bits = ctx.bits();
    Real ln_2pi = const_ln_2pi(bits);
    Real ln_gamma_k1 = ln_gamma_real(Real::of(k + 1, bits));

    auto term = [&](long n) {
        long m = n + 2;
        Real lg = ln_gamma_k1;
        lg += ln_gamma_real(Real::of(m, bits));
        lg -= ln_gamma_real(Real::of(k + m + 1, bits));
        lg -= ln_gamma_real(Real::of(2 * m - 1, bits));
        lg += ln_2pi * (2 * m);
        lg -= log(zeta_integer(2 * m - 1, ctx));
        return exp(lg);
    };

    AccelRequest req;
    req.target_digits = std::min(ctx.precision_digits + 5, ctx.working_digits() - 2);
    req.mode = AccelMode::adaptive;
    auto sum = sumalt<Real>(term, req, ctx);

    Real two_pi_sq = const_pi(bits) * 2;
    two_pi_sq *= two_pi_sq;
    return -(sum.value / two_pi_sq);
}

Complex pochhammer_pk(long k, const Complex& s, const NumericContext& ctx,
                      PochhammerMethod method) {
    if (k < 0) throw DomainError("pochhammer_pk: k must be >= 0");
    const mpfr_prec_t bits = ctx.bits() + 32;
    Complex sc = s.rounded_to(bits);

    if (method == PochhammerMethod::product) {
        Complex acc(Real::of(1, bits), Real::of(0, bits));
        for (long r = 1; r <= k; ++r) {
            Complex f(Real::of(1, bits) - sc.re / r, -(sc.im / r));
            acc = acc * f;
            if (acc.is_zero()) return acc.rounded_to(ctx.bits());  // integer s in [1,k]
        }
        return acc.rounded_to(ctx.bits());
    }

    // gamma-ratio: degenerate when Gamma(s) has a pole or Gamma(s-k) hits a
    // zero of P_k, i.e. s an integer <= k.
    if (sc.im.is_zero()) {
        Real r(sc.re.prec());
        mpfr_round(r.raw(), sc.re.raw());
        if (r == sc.re && sc.re <= k)
            throw DomainError("pochhammer_pk(gamma_ratio): integer s <= k; use the product form");
    }
    NumericContext wctx = ctx;
    wctx.guard_digits += 10;
    Complex lg = ln_gamma(sc, wctx);
    lg = lg - ln_gamma(sc - Real::of(k, bits), wctx);
    Real lk1 = ln_gamma_real(Real::of(k + 1, bits));
    lg.re -= lk1;
    Complex v = exp(lg);
    if (k % 2 != 0) v = -v;
    return v.rounded_to(ctx.bits());
}

namespace {

void require_zero_quality(const ZeroTable& table, long L, const NumericContext& ctx,
                          bool need_derivative) {
    if (L < 0 || L > table.count())
        throw DomainError("oscillation: L exceeds the zero table (" +
                          std::to_string(table.count()) + " zeros)");
    for (long l = 1; l <= L; ++l) {
        const ZetaZero& z = table.at(l);
        if (!z.verified())
            throw DomainError("oscillation: zero " + std::to_string(l) +
                              " has no verified residual");
        if (need_derivative && !z.zeta_prime)
            throw DomainError("oscillation: zero " + std::to_string(l) + " has no derivative");
        if (z.precision_digits < ctx.precision_digits)
            throw PrecisionError("oscillation: zero " + std::to_string(l) + " carries only " +
                                     std::to_string(z.precision_digits) +
                                     " digits, below the requested " +
                                     std::to_string(ctx.precision_digits) +
                                     " (recompute the table at higher precision)",
                                 ctx.precision_digits);
    }
}

// Exact-form summand ln: Gamma(k+1) Gamma(rho/2 - k - 1) / (Gamma(rho/2) zeta'(rho)).
Complex osc_exact_summand(long k, const ZetaZero& z, const Real& ln_gamma_k1,
                          const NumericContext& wctx) {
    const mpfr_prec_t bits = wctx.bits();
    Real half_gamma = z.gamma.rounded_to(bits) / 2;
    Complex rho2(Real::of(1, bits) / 4, half_gamma);
    Complex arg_far(rho2.re - (k + 1), half_gamma);
    Complex lg(ln_gamma_k1.rounded_to(bits), Real::of(0, bits));
    lg = lg + ln_gamma(arg_far, wctx);
    lg = lg - ln_gamma(rho2, wctx);
    lg = lg - log(z.zeta_prime->rounded_to(bits));
    return exp(lg);
}

}  // namespace

Real ck_oscillation_exact(long k, const ZeroTable& table, long L, const NumericContext& ctx) {
    if (k < 1) throw DomainError("ck_oscillation_exact: k must be >= 1");
    require_zero_quality(table, L, ctx, true);
    NumericContext wctx = ctx;
    wctx.guard_digits += 10;
    const mpfr_prec_t bits = wctx.bits();
    Real ln_gamma_k1 = ln_gamma_real(Real::of(k + 1, bits));
    Real acc(bits);
    mpfr_set_zero(acc.raw(), 1);
    for (long l = 1; l <= L; ++l) {
        Complex w = osc_exact_summand(k, table.at(l), ln_gamma_k1, wctx);
        acc += w.re;
    }
    if (k % 2 == 0) acc = -acc;  // (-1)^{k+1}
    return acc.rounded_to(ctx.bits());
}

Real ck_oscillation_asymptotic(long k, const ZeroTable& table, long L,
                               const NumericContext& ctx) {
    if (k < 1) throw DomainError("ck_oscillation_asymptotic: k must be >= 1");
    require_zero_quality(table, L, ctx, true);
    NumericContext wctx = ctx;
    wctx.guard_digits += 10;
    const mpfr_prec_t bits = wctx.bits();
    Real ln_k(bits);
    mpfr_log_ui(ln_k.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    Real acc(bits);
    mpfr_set_zero(acc.raw(), 1);
    Real three_quarters = Real::of(3, bits) / 4;
    for (long l = 1; l <= L; ++l) {
        const ZetaZero& z = table.at(l);
        Real half_gamma = z.gamma.rounded_to(bits) / 2;
        Complex lg(-(three_quarters * ln_k), half_gamma * ln_k);  // (rho/2 - 1) ln k
        lg = lg + ln_gamma(Complex(three_quarters, -half_gamma), wctx);
        lg = lg - log(z.zeta_prime->rounded_to(bits));
        acc += exp(lg).re;
    }
    return acc.rounded_to(ctx.bits());
}

SineApprox sine_approx_params(const ZetaZero& zero1, const NumericContext& ctx) {
    if (!zero1.zeta_prime)
        throw DomainError("sine_approx_params: derivative missing on gamma_1");
    NumericContext wctx = ctx;
    wctx.guard_digits += 10;
    const mpfr_prec_t bits = wctx.bits();
    Real half_gamma = zero1.gamma.rounded_to(bits) / 2;
    Complex lg = ln_gamma(Complex(Real::of(3, bits) / 4, -half_gamma), wctx);
    lg = lg - log(zero1.zeta_prime->rounded_to(bits));
    Complex w = exp(lg);
    Real pi = const_pi(bits);
    Real phi = pi / 2 - arg(w);
    Real two_pi = pi * 2;
    while (phi.sgn() < 0) phi += two_pi;
    while (phi >= two_pi) phi -= two_pi;
    return {abs(w).rounded_to(ctx.bits()), phi.rounded_to(ctx.bits())};
}

Real sine_approx_value(long k, const SineApprox& sine, const Real& gamma1,
                       const NumericContext& ctx) {
    const mpfr_prec_t bits = ctx.bits();
    Real ln_k(bits);
    mpfr_log_ui(ln_k.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    Real amp = sine.amplitude_A.rounded_to(bits) * exp(ln_k * -3 / 4);
    Real phase = sine.phase_phi.rounded_to(bits) - gamma1.rounded_to(bits) / 2 * ln_k;
    return amp * sin(phase);
}

std::pair<Real, Real> envelope(long k, const SineApprox& sine, const NumericContext& ctx) {
    if (k < 1) throw DomainError("envelope: k must be >= 1");
    const mpfr_prec_t bits = ctx.bits();
    Real ln_k(bits);
    mpfr_log_ui(ln_k.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    Real up = sine.amplitude_A.rounded_to(bits) * exp(ln_k * -3 / 4);
    return {up, -up};
}

std::vector<YCurvePoint> y_curve(long k, const Real& c_generic, const ZeroTable& table,
                                 long n_max, const NumericContext& ctx) {
    require_zero_quality(table, n_max, ctx, true);
    NumericContext wctx = ctx;
    wctx.guard_digits += 10;
    const mpfr_prec_t bits = wctx.bits();
    Real ln_gamma_k1 = ln_gamma_real(Real::of(k + 1, bits));
    Real s = ck_trend(k, wctx).rounded_to(bits);
    Real cg = c_generic.rounded_to(bits);
    bool flip = (k % 2 == 0);

    std::vector<YCurvePoint> rows;
    rows.reserve(static_cast<size_t>(n_max) + 1);
    auto emit = [&](long n) {
        Real delta = abs(s - cg);
        YCurvePoint p;
        p.n = n;
        if (delta.is_zero()) {
            p.saturated = true;
            p.y = Real::nan(64);
            p.log10_delta = -static_cast<double>(ctx.working_digits());
        } else {
            p.saturated = false;
            Real l = log(delta);
            p.y = (-1 / l).rounded_to(64);
            p.log10_delta = log10(delta.rounded_to(128)).to_double();
        }
        rows.push_back(std::move(p));
    };
    emit(0);
    for (long n = 1; n <= n_max; ++n) {
        Complex w = osc_exact_summand(k, table.at(n), ln_gamma_k1, wctx);
        if (flip)
            s -= w.re;
        else
            s += w.re;
        emit(n);
    }
    return rows;
}

ZerosNeeded zeros_needed(long target_digits, const ZeroTable* table) {
    if (target_digits < 0) throw DomainError("zeros_needed: target_digits must be >= 0");
    const mpfr_prec_t bits = digits_to_bits(50);
    Real ln10(bits);
    mpfr_log_ui(ln10.raw(), 10, MPFR_RNDN);
    ZerosNeeded out;
    out.gamma_needed = Real::of(4 * target_digits, bits) * ln10 / const_pi(bits);
    out.L = 0;
    out.l_known = target_digits == 0;
    if (!table || table->count() == 0) return out;
    if (target_digits == 0) {
        out.l_known = true;
        return out;
    }
    // Largest index whose ordinate is still at or below the cutoff: the last
    // zero whose e^{-pi gamma/4} factor is above the target accuracy.
    long lo = 0;
    for (long l = 1; l <= table->count(); ++l) {
        if (table->at(l).gamma <= out.gamma_needed)
            lo = l;
        else {
            out.L = lo;
            out.l_known = true;
            return out;
        }
    }
    // Every tabled zero is below the cutoff: table too short to name L.
    out.L = table->count();
    out.l_known = false;
    return out;
}

double violation_index_estimate(double delta, double gamma_off, double c_ratio) {
    if (!(delta > 0.0) || !(delta < 0.5))
        throw DomainError("violation_index_estimate: delta must lie in (0, 1/2)");
    if (!(gamma_off > 0.0) || !(c_ratio > 0.0))
        throw DomainError("violation_index_estimate: gamma_off and C' must be positive");
    constexpr double log10_e = 0.43429448190325176;
    return std::log10(c_ratio) + 2.0 * gamma_off / delta * log10_e;
}

}  // namespace bdlab
