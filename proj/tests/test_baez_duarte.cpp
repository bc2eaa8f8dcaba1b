#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

#include "bdlab/agreement.hpp"
#include "bdlab/baez_duarte.hpp"
#include "bdlab/special.hpp"
#include "bdlab/zeta.hpp"

using namespace bdlab;

namespace {

std::string data_path(const char* name) {
    const char* dir = std::getenv("BDLAB_DATA_DIR");
    std::string base = dir ? dir : "data";
    return base + "/" + name;
}

ZeroTable seeds(long count) {
    std::ifstream in(data_path("zeros_seed_3000.txt"));
    REQUIRE(in.good());
    ZeroTable t = ingest_zero_table(in, ZeroTableFormat::plain_ordinates, "seed-table");
    REQUIRE(t.count() >= count);
    t.zeros.resize(static_cast<size_t>(count));
    return t;
}

// Refined-with-derivatives table, cached across test cases.
const ZeroTable& prepared_zeros(long count, long digits) {
    static std::map<std::pair<long, long>, ZeroTable> cache;
    auto key = std::make_pair(count, digits);
    auto it = cache.find(key);
    if (it == cache.end()) {
        ZeroTable t = seeds(count);
        NumericContext ctx = make_context(digits, 20, 2, 1);
        refine_table(t, digits, ctx, 2);
        attach_zeta_prime(t, ctx, 2);
        it = cache.emplace(key, std::move(t)).first;
    }
    return it->second;
}

Real rel_err(const Real& a, const Real& b) { return abs(a / b - Real::of(1, max_prec(a, b))); }

}  // namespace

TEST_CASE("required_precision_for_generic") {
    CHECK(required_precision_for_generic(100000, 69900) == 30103 + 69900 + 50);
    CHECK(required_precision_for_generic(0, 50) == 100);
    CHECK(required_precision_for_generic(1000, 100) == 302 + 100 + 50);
    CHECK_THROWS_AS(required_precision_for_generic(-1, 10), DomainError);
}

TEST_CASE("ck_generic: k = 0 and k = 1 closed forms") {
    NumericContext ctx = make_context(80, 20, 2, 1);
    mpfr_prec_t bits = ctx.bits();
    Real pi2 = const_pi(bits) * const_pi(bits);

    auto r0 = ck_generic(0, ctx);
    CHECK(rel_err(r0.value, 6 / pi2) < Real::parse("1e-30", bits));
    CHECK(r0.value.str(12) == "6.07927101854e-1");

    auto r1 = ck_generic(1, ctx);
    Real expected = 6 / pi2 - 90 / (pi2 * pi2);
    CHECK(rel_err(r1.value, expected) < Real::parse("1e-28", bits));
    CHECK(expected.str(6) == "-3.16011e-1");
}

TEST_CASE("ck_generic refuses insufficient precision with a hint") {
    NumericContext ctx = make_context(100, 20, 1, 1);
    try {
        ck_generic(2000, ctx);
        FAIL("expected PrecisionError");
    } catch (const PrecisionError& e) {
        CHECK(e.required_digits >= 602 + 10 + 50);
    }
}

TEST_CASE("ck_generic trace rows and stride behavior") {
    NumericContext ctx = make_context(required_precision_for_generic(100, 30), 20, 2, 1);
    CkGenericOptions opt;
    opt.trace_stride = 10;
    auto r = ck_generic(100, ctx, opt);
    REQUIRE(r.trace.rows.size() == 10);  // n = 10,20,...,100
    CHECK(r.trace.rows.front().n == 10);
    CHECK(r.trace.rows.back().n == 100);
    // final row is the finished sum
    CHECK(r.trace.rows.back().partial_sum == r.value);

    // stride > k: single final row
    CkGenericOptions big;
    big.trace_stride = 1000;
    auto r2 = ck_generic(100, ctx, big);
    REQUIRE(r2.trace.rows.size() == 1);
    CHECK(r2.trace.rows[0].n == 100);

    // partial-sum peak sits near k/2 with magnitude ~ 10^{k log10 2}
    CkGenericOptions fine;
    fine.trace_stride = 5;
    auto r3 = ck_generic(100, ctx, fine);
    long peak_n = 0;
    double peak = -1e300;
    for (auto& row : r3.trace.rows) {
        double lg = log10(abs(row.partial_sum).rounded_to(128)).to_double();
        if (lg > peak) {
            peak = lg;
            peak_n = row.n;
        }
    }
    CHECK(std::abs(peak_n - 50) <= 5);
    CHECK(peak >= 100 * 0.30103 - 4);
    CHECK(peak <= 100 * 0.30103 + 1);
}

TEST_CASE("ck_generic checkpoint/resume is bit-identical") {
    long k = 200;
    NumericContext ctx = make_context(required_precision_for_generic(k, 40), 20, 2, 1);
    auto full = ck_generic(k, ctx);

    CkGenericOptions stop;
    stop.stop_at_j = 97;
    auto part = ck_generic(k, ctx, stop);
    CHECK_FALSE(part.complete);
    CHECK(part.state.next_j == 97);

    CkGenericOptions resume;
    resume.resume = &part.state;
    auto rest = ck_generic(k, ctx, resume);
    CHECK(rest.complete);
    CHECK(rest.value == full.value);
    CHECK(rest.value.str() == full.value.str());

    // mismatched k or precision is refused
    GenericState bad = part.state;
    bad.k = 201;
    CkGenericOptions r1;
    r1.resume = &bad;
    CHECK_THROWS_AS(ck_generic(201 - 1, ctx, r1), FingerprintMismatchError);
    GenericState bad2 = part.state;
    bad2.working_digits -= 1;
    CkGenericOptions r2;
    r2.resume = &bad2;
    CHECK_THROWS_AS(ck_generic(k, ctx, r2), FingerprintMismatchError);
}

TEST_CASE("precision-loss law at reduced scale") {
    long k = 200;  // loss = ceil(200 log10 2) = 61
    NumericContext lo = make_context(required_precision_for_generic(k, 40), 0, 1, 1);
    NumericContext hi = make_context(required_precision_for_generic(k, 140), 0, 1, 1);
    auto a = ck_generic(k, lo);
    auto b = ck_generic(k, hi);
    Agreement ag = digits_of_agreement(a.value, b.value);
    REQUIRE_FALSE(ag.all);
    CHECK(ag.digits >= 35);
    CHECK(ag.digits <= 45);
}

TEST_CASE("ck_trend: direct-summation oracle at k = 1") {
    NumericContext ctx = make_context(50, 20, 1, 1);
    mpfr_prec_t bits = ctx.bits();
    Real mine = ck_trend(1, ctx);

    // brute-force 50-term partial sum of the defining series
    Real acc(bits);
    mpfr_set_zero(acc.raw(), 1);
    Real ln_2pi = const_ln_2pi(bits);
    for (long m = 2; m <= 51; ++m) {
        Real lg = ln_gamma_real(Real::of(2, bits)) + ln_gamma_real(Real::of(m, bits)) -
                  ln_gamma_real(Real::of(m + 2, bits)) -
                  ln_gamma_real(Real::of(2 * m - 1, bits)) + ln_2pi * (2 * m) -
                  log(zeta_integer(2 * m - 1, ctx));
        Real x = exp(lg);
        if (m % 2 == 0)
            acc += x;
        else
            acc -= x;
    }
    Real two_pi_sq = pow_si(const_pi(bits) * 2, 2);
    Real oracle = -(acc / two_pi_sq);
    CHECK(abs(mine - oracle) < Real::parse("1e-45", bits));
    CHECK_THROWS_AS(ck_trend(0, ctx), DomainError);
}

TEST_CASE("ck_trend approaches -(2pi)^2/(2 zeta(3)) / k^2") {
    NumericContext ctx = make_context(30, 20, 1, 1);
    mpfr_prec_t bits = ctx.bits();
    Real c = -(pow_si(const_pi(bits) * 2, 2) / (zeta_integer(3, ctx) * 2));
    // the constant itself
    CHECK(c.str(12) == "-1.64211933314e+1");
    for (long k : {100L, 1000L}) {
        Real t = ck_trend(k, ctx);
        Real scaled = t * k * k;
        // k^2 c_trend = c (1 - 3/k + O(1/k^2))
        Real dev = abs(scaled / c - Real::of(1, bits));
        CHECK(dev.to_double() == doctest::Approx(3.0 / k).epsilon(0.4));
    }
    // doubling requested digits never changes earlier digits
    NumericContext lo = make_context(20, 10, 1, 1), hi = make_context(40, 10, 1, 1);
    Real a = ck_trend(50, lo), b = ck_trend(50, hi);
    Agreement ag = digits_of_agreement(a, b);
    CHECK((ag.all || ag.digits >= 19));
}

TEST_CASE("pochhammer: trivial values and the two mutual-oracle routes") {
    NumericContext ctx = make_context(60, 20, 1, 1);
    mpfr_prec_t bits = ctx.bits();

    for (long k : {0L, 3L, 17L}) {
        Complex p0 = pochhammer_pk(k, Complex(Real::of(0, bits), Real::of(0, bits)), ctx,
                                   PochhammerMethod::product);
        CHECK(p0.re == Real::of(1, bits));
        CHECK(p0.im.is_zero());
    }
    Complex p32 = pochhammer_pk(3, Complex(Real::of(2, bits), Real::of(0, bits)), ctx,
                                PochhammerMethod::product);
    CHECK(p32.is_zero());
    CHECK_THROWS_AS(pochhammer_pk(3, Complex(Real::of(2, bits), Real::of(0, bits)), ctx,
                                  PochhammerMethod::gamma_ratio),
                    DomainError);

    // product vs gamma-ratio at k = 500, s = rho_1/2
    Real g1 = Real::parse("14.1347251417346937904572519836", bits);
    Complex s(Real::parse("0.25", bits), g1 / 2);
    Complex a = pochhammer_pk(500, s, ctx, PochhammerMethod::product);
    Complex b = pochhammer_pk(500, s, ctx, PochhammerMethod::gamma_ratio);
    CHECK(abs(a - b) < Real::parse("1e-55", bits) * abs(a));
}

TEST_CASE("pochhammer limit P_k(s) k^s -> 1/Gamma(1-s)") {
    NumericContext ctx = make_context(40, 20, 1, 1);
    mpfr_prec_t bits = ctx.bits();
    Complex s(Real::parse("0.25", bits), Real::parse("3.5", bits));
    Complex target = Real::of(1, bits) / exp(ln_gamma(Real::of(1, bits) - s, ctx));
    double prev = 1e9;
    for (long k : {1000L, 10000L, 100000L}) {
        Complex pk = pochhammer_pk(k, s, ctx, PochhammerMethod::gamma_ratio);
        Real lnk(bits);
        mpfr_log_ui(lnk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
        Complex ks = exp(Complex(s.re * lnk, s.im * lnk));
        Real dev = (abs(pk * ks - target) / abs(target)).rounded_to(128);
        double d = dev.to_double();
        CHECK(d < 40.0 / k);  // O(1/k) relative with a generous constant
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("oscillation summand: gamma-ratio equals product route for k <= 20") {
    // Gamma(k+1) Gamma(rho/2-k-1)/Gamma(rho/2) = 1/((k+1) P_{k+1}(rho/2)) exactly.
    const ZeroTable& t = prepared_zeros(3, 50);
    NumericContext ctx = make_context(40, 20, 1, 1);
    mpfr_prec_t bits = ctx.bits();
    for (long k : {1L, 7L, 20L}) {
        for (long l = 1; l <= 3; ++l) {
            Real hg = t.at(l).gamma.rounded_to(bits) / 2;
            Complex rho2(Real::parse("0.25", bits), hg);
            Complex lg(ln_gamma_real(Real::of(k + 1, bits)), Real::of(0, bits));
            lg = lg + ln_gamma(Complex(rho2.re - (k + 1), rho2.im), ctx);
            lg = lg - ln_gamma(rho2, ctx);
            Complex via_gamma = exp(lg);
            Complex p = pochhammer_pk(k + 1, rho2, ctx, PochhammerMethod::product);
            Complex via_product = Real::of(1, bits) / (p * Real::of(k + 1, bits));
            if (k % 2 == 0) via_product = -via_product;  // (-1)^{k+1}
            CHECK(abs(via_gamma - via_product) < Real::parse("1e-35", bits) * abs(via_gamma));
        }
    }
}

TEST_CASE("decomposition: c_generic = trend + oscillation within the cutoff law") {
    // At k = 1000 the first-omitted-zero law |delta| <= 3 e^{-pi gamma_{L+1}/4} 10^2
    // holds for every tested L; at k = 100 the Pochhammer correction
    // e^{gamma^2/(8k)} matters beyond L ~ 10 and the bound must carry it.
    const ZeroTable& t = prepared_zeros(51, 80);
    NumericContext gctx = make_context(required_precision_for_generic(1000, 60), 20, 2, 1);
    Real cg = ck_generic(1000, gctx).value;
    NumericContext octx = make_context(60, 20, 2, 1);
    Real trend = ck_trend(1000, octx);
    mpfr_prec_t bits = octx.bits();

    long prev_digits = 0;
    for (long L : {10L, 25L, 50L}) {
        Real osc = ck_oscillation_exact(1000, t, L, octx);
        Real delta = abs(cg.rounded_to(bits) - trend - osc);
        Real g_next = t.at(L + 1).gamma.rounded_to(bits);
        Real bound = exp(-(const_pi(bits) * g_next / 4)) * 300;  // 3 x 10^2 slack
        CHECK(delta <= bound);
        Agreement ag = digits_of_agreement(cg, trend + osc);
        CHECK(ag.digits >= prev_digits);  // argmax-level stability
        prev_digits = ag.digits;
    }

    // k = 100, L = 10: inside the law's domain of validity
    NumericContext gctx100 = make_context(required_precision_for_generic(100, 40), 20, 2, 1);
    Real cg100 = ck_generic(100, gctx100).value;
    NumericContext octx100 = make_context(40, 20, 2, 1);
    Real tr100 = ck_trend(100, octx100);
    Real osc100 = ck_oscillation_exact(100, t, 10, octx100);
    mpfr_prec_t b100 = octx100.bits();
    Real delta100 = abs(cg100.rounded_to(b100) - tr100 - osc100);
    Real g11 = t.at(11).gamma.rounded_to(b100);
    CHECK(delta100 <= exp(-(const_pi(b100) * g11 / 4)) * 300);

    // k = 100, L = 25: the e^{gamma^2/(8k)} correction is ~5 decades here
    Real osc25 = ck_oscillation_exact(100, t, 25, octx100);
    Real delta25 = abs(cg100.rounded_to(b100) - tr100 - osc25);
    Real g26 = t.at(26).gamma.rounded_to(b100);
    Real corrected =
        exp(-(const_pi(b100) * g26 / 4) + g26 * g26 / (8 * 100)) * 300;
    CHECK(delta25 <= corrected);
    CHECK(delta25 > exp(-(const_pi(b100) * g26 / 4)));  // plain law is too tight here
}

TEST_CASE("oscillation requires verified zeros and enough derivative precision") {
    const ZeroTable& t = prepared_zeros(5, 50);
    NumericContext ctx = make_context(40, 20, 2, 1);
    CHECK_THROWS_AS(ck_oscillation_exact(100, t, 6, ctx), DomainError);  // L > table
    NumericContext too_much = make_context(80, 20, 2, 1);
    CHECK_THROWS_AS(ck_oscillation_exact(100, t, 5, too_much), PrecisionError);
}

TEST_CASE("asymptotic vs exact oscillation at k = 1e5") {
    const ZeroTable& t = prepared_zeros(30, 50);
    NumericContext ctx = make_context(30, 20, 2, 1);
    Real ex = ck_oscillation_exact(100000, t, 30, ctx);
    Real as = ck_oscillation_asymptotic(100000, t, 30, ctx);
    // replacement error is O(|rho/2|^2 / k) ~ 1e-3 relative at gamma ~ 100
    Real dev = abs(as / ex - Real::of(1, ctx.bits()));
    CHECK(dev < Real::parse("2e-2", ctx.bits()));
    CHECK(dev > Real::parse("1e-7", ctx.bits()));
}

TEST_CASE("sine approximation: parameters and the l=1 identity") {
    const ZeroTable& t = prepared_zeros(1, 60);
    NumericContext ctx = make_context(50, 20, 2, 1);
    SineApprox sine = sine_approx_params(t.at(1), ctx);
    CHECK(sine.amplitude_A > Real::parse("7.7e-5", 64));
    CHECK(sine.amplitude_A < Real::parse("7.8e-5", 64));
    CHECK(sine.phase_phi.sgn() >= 0);
    CHECK(sine.phase_phi < const_pi(ctx.bits()) * 2);

    // identical to the one-zero asymptotic sum, all k
    for (long k : {1000L, 10000L, 100000L}) {
        Real via_sine = sine_approx_value(k, sine, t.at(1).gamma, ctx);
        Real via_sum = ck_oscillation_asymptotic(k, t, 1, ctx);
        CHECK(abs(via_sine - via_sum) < Real::parse("1e-40", ctx.bits()) * abs(via_sum));
    }

    ZetaZero no_deriv = t.at(1);
    no_deriv.zeta_prime.reset();
    CHECK_THROWS_AS(sine_approx_params(no_deriv, ctx), DomainError);
}

TEST_CASE("envelope shrinks and dominates the trend at k = 1e5") {
    const ZeroTable& t = prepared_zeros(1, 60);
    NumericContext ctx = make_context(40, 20, 2, 1);
    SineApprox sine = sine_approx_params(t.at(1), ctx);
    auto [up5, lo5] = envelope(100000, sine, ctx);
    CHECK(lo5 == -up5);
    auto [up6, lo6] = envelope(1000000, sine, ctx);
    CHECK(up6 < up5);
    Real trend = abs(ck_trend(100000, ctx));
    CHECK(trend < up5);
}

TEST_CASE("y_curve: trend-only row, positivity, saturation") {
    const ZeroTable& t = prepared_zeros(12, 60);
    NumericContext gctx = make_context(required_precision_for_generic(500, 45), 20, 2, 1);
    Real cg = ck_generic(500, gctx).value;
    NumericContext ctx = make_context(45, 20, 2, 1);
    auto rows = y_curve(500, cg, t, 12, ctx);
    REQUIRE(rows.size() == 13);
    CHECK(rows[0].n == 0);
    for (auto& r : rows) {
        REQUIRE_FALSE(r.saturated);
        CHECK(r.y > Real::of(0, 64));  // |delta| < 1 throughout
    }
    // y decreases as zeros are added (errors shrink)
    CHECK(rows[12].y < rows[0].y);

    // saturation: compare the explicit sum against itself
    Real self = ck_trend(500, ctx).rounded_to(ctx.bits() + 40);
    {
        NumericContext wctx = ctx;
        wctx.guard_digits += 10;
        // c_generic := trend => row 0 saturates at working precision
        auto sat = y_curve(500, ck_trend(500, wctx), t, 0, ctx);
        REQUIRE(sat.size() == 1);
        CHECK(sat[0].saturated);
    }
    (void)self;
}

TEST_CASE("zeros_needed: cutoff calculator") {
    ZeroTable t = seeds(3000);
    ZerosNeeded z1000 = zeros_needed(1000, &t);
    CHECK(z1000.l_known);
    CHECK(z1000.L == 2402);
    CHECK(abs(z1000.gamma_needed - Real::parse("2931.74", 64)) < Real::parse("0.5", 64));

    ZerosNeeded z109 = zeros_needed(109, &t);
    CHECK(z109.l_known);
    // gamma_needed = 319.56; the last zero at or below it is gamma_150
    CHECK(z109.L == 150);
    CHECK(t.at(149).gamma < z109.gamma_needed);

    ZerosNeeded z0 = zeros_needed(0, &t);
    CHECK(z0.L == 0);
    CHECK(z0.l_known);

    // table too short to name L
    ZerosNeeded far = zeros_needed(2000, &t);
    CHECK_FALSE(far.l_known);

    ZerosNeeded no_table = zeros_needed(50, nullptr);
    CHECK_FALSE(no_table.l_known);
    CHECK(no_table.gamma_needed > Real::of(146, 64));
}

TEST_CASE("violation_index_estimate") {
    double v = violation_index_estimate(0.1, 1e4, 1.0);
    CHECK(v == doctest::Approx(8.6859e4).epsilon(1e-3));
    // monotone divergence as delta -> 0
    CHECK(violation_index_estimate(0.01, 1e4, 1.0) > v);
    // doubling gamma_off doubles log10 K - log10 C'
    double c = 2.5;
    double a = violation_index_estimate(0.2, 500.0, c) - std::log10(c);
    double b = violation_index_estimate(0.2, 1000.0, c) - std::log10(c);
    CHECK(b == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK_THROWS_AS(violation_index_estimate(0.6, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(violation_index_estimate(0.1, -1.0, 1.0), DomainError);
}
