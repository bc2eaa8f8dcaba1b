#include "bdlab/zeta.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "bdlab/special.hpp"
#include "bdlab/version.hpp"

namespace bdlab {

namespace {

// ln(n) tables, one per precision, thread-local (refinement runs zeros in
// parallel and the tables are hot).
const Real& cached_ln_ui(unsigned long n, mpfr_prec_t bits) {
    thread_local std::map<mpfr_prec_t, std::vector<Real>> tables;
    auto& t = tables[bits];
    while (t.size() < n) {
        unsigned long m = t.size() + 1;
        Real r(bits);
        mpfr_log_ui(r.raw(), m, MPFR_RNDN);
        t.push_back(std::move(r));
    }
    return t[n - 1];
}

// Lazily extended table of (n+1)^{-s} shared by the eta series and its
// term-by-term derivative.
struct EtaTerms {
    Complex s;
    mpfr_prec_t bits;
    Real neg_sigma;
    Real neg_t;
    std::vector<Complex> pow_;

    EtaTerms(const Complex& s_in, mpfr_prec_t b)
        : s(s_in.rounded_to(b)), bits(b), neg_sigma(-s.re), neg_t(-s.im) {}

    const Complex& inv_pow(long n) {
        while (static_cast<long>(pow_.size()) <= n) {
            unsigned long m = pow_.size() + 1;
            if (m == 1) {
                pow_.push_back(Complex(Real::of(1, bits), Real::of(0, bits)));
            } else {
                const Real& lm = cached_ln_ui(m, bits);
                Real a = neg_sigma * lm;
                Real b = neg_t * lm;
                Real ea = exp(a);
                Real sn(bits), cs(bits);
                sin_cos(sn, cs, b);
                pow_.push_back(Complex(ea * cs, ea * sn));
            }
        }
        return pow_[n];
    }
};

// 2^{1-s} and the eta prefactor denominator 1 - 2^{1-s}.
Complex eta_prefactor_q(const Complex& s, mpfr_prec_t bits) {
    Complex one_minus_s = Real::of(1, bits) - s.rounded_to(bits);
    Real l2 = const_ln2(bits);
    return exp(Complex(one_minus_s.re * l2, one_minus_s.im * l2));
}

void check_eta_domain(const Complex& s, const Complex& q, long precision_digits) {
    if (!(s.re > 0))
        throw DomainError("zeta eta series requires Re(s) > 0");
    Real d = abs(Real::of(1, q.prec()) - q);
    long guard_exp = static_cast<long>(
        -static_cast<double>(precision_digits - 2) * 3.3219280948873623);
    if (!d.is_zero() && d.exp2() > guard_exp) return;
    // Inside the refusal band: distinguish the genuine pole from the
    // representation singularities at s = 1 + 2 pi i k / ln 2.
    if (s.im.is_zero())
        throw DomainError("zeta: pole at s = 1");
    throw RepresentationError(
        "zeta eta representation is singular near s = 1 + 2 pi i k/ln 2; "
        "use the integer path or a different height");
}

long eta_target_digits(const NumericContext& ctx) {
    long t = ctx.precision_digits + 5;
    if (t > ctx.working_digits() - 2) t = ctx.working_digits() - 2;
    return t;
}

}  // namespace

Complex zeta_complex(const Complex& s, const NumericContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    Complex q = eta_prefactor_q(s, bits);
    check_eta_domain(s.rounded_to(bits), q, ctx.precision_digits);

    EtaTerms et(s, bits);
    AccelRequest req;
    req.target_digits = eta_target_digits(ctx);
    req.mode = AccelMode::adaptive;
    req.height = std::fabs(s.im.to_double());
    auto sum = sumalt<Complex>([&](long n) { return et.inv_pow(n); }, req, ctx);
    Complex denom = Real::of(1, bits) - q;
    return sum.value / denom;
}

ZetaPair zeta_and_prime(const Complex& s, const NumericContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    Complex q = eta_prefactor_q(s, bits);
    check_eta_domain(s.rounded_to(bits), q, ctx.precision_digits);

    EtaTerms et(s, bits);
    AccelRequest req;
    req.target_digits = eta_target_digits(ctx);
    req.mode = AccelMode::adaptive;
    req.height = std::fabs(s.im.to_double());
    auto s_eta = sumalt<Complex>([&](long n) { return et.inv_pow(n); }, req, ctx);
    auto s_log = sumalt<Complex>(
        [&](long n) { return et.inv_pow(n) * cached_ln_ui(n + 1, bits); }, req, ctx);

    Complex denom = Real::of(1, bits) - q;
    Complex pref = Real::of(1, bits) / denom;
    Complex z = s_eta.value * pref;
    // zeta'(s) = -ln2 q (1-q)^{-2} S_eta - (1-q)^{-1} S_log
    Complex zp = -(const_ln2(bits) * (q * pref * pref * s_eta.value)) - pref * s_log.value;
    return {std::move(z), std::move(zp)};
}

Complex zeta_prime(const Complex& s, const NumericContext& ctx) {
    NumericContext over = ctx.oversampled();
    ZetaPair p = zeta_and_prime(s, over);
    // Stored-value discipline: computed oversampled, quoted at precision_digits.
    return p.zeta_prime.rounded_to(digits_to_bits(ctx.precision_digits));
}

namespace {

// Direct Dirichlet series sum_{n>=1} n^{-m}; only called when the term count
// is modest. Error below half an ulp of the result at `bits`.
Real zeta_direct(long m, mpfr_prec_t bits) {
    mpfr_prec_t work = bits + 16;
    Real acc = Real::of(1, work);
    for (unsigned long n = 2;; ++n) {
        Real p = ui_pow_ui(n, static_cast<unsigned long>(m), work);
        Real t = 1 / p;
        if (t.is_zero()) break;
        acc += t;
        // Remaining tail < t * (n/m + 1); stop once even that is below ulp.
        if (t.exp2() + 16 < -(static_cast<long>(bits) + 8)) break;
        if (n > 500000)
            throw Error("zeta_direct: term count exploded; path selection bug");
    }
    return acc.rounded_to(bits);
}

// 1 + 2^{-m} + 3^{-m}, for m beyond the point where 4^{-m} is sub-ulp.
Real zeta_tail3(long m, mpfr_prec_t bits) {
    mpfr_prec_t work = bits + 16;
    Real acc = Real::of(1, work);
    Real two = Real::of(1, work);
    acc += mul_2si(two, -m);
    Real p3 = ui_pow_ui(3, static_cast<unsigned long>(m), 64);
    if (!p3.is_zero() && -p3.exp2() > -(static_cast<long>(work) + 8)) {
        Real p3w = ui_pow_ui(3, static_cast<unsigned long>(m), work);
        acc += 1 / p3w;
    }
    return acc.rounded_to(bits);
}

// Exact Bernoulli closed form for even m: zeta(m) = |B_m| (2 pi)^m / (2 m!).
Real zeta_even_bernoulli(long m, mpfr_prec_t bits) {
    mpfr_prec_t work = bits + 32;
    Real two_pi = const_pi(work) * 2;
    Real p(work);
    mpfr_pow_ui(p.raw(), two_pi.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
    Real b = Real::from_mpq(bernoulli(static_cast<unsigned long>(m)), work);
    mpfr_abs(b.raw(), b.raw(), MPFR_RNDN);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    Real f = Real::from_mpz(fact, work);
    Real r = p * b / (f * 2);
    return r.rounded_to(bits);
}

// Euler-Maclaurin: zeta(m) = sum_{n<N} n^{-m} + N^{1-m}/(m-1) + N^{-m}/2
//                           + sum_j B_{2j}/(2j)! (m)_{2j-1} N^{-m-2j+1}.
// N is doubled until the correction terms bottom out below the target.
Real zeta_euler_maclaurin(long m, mpfr_prec_t bits) {
    mpfr_prec_t work = bits + 32;
    long wd = static_cast<long>(static_cast<double>(bits) / 3.3219280948873623) + 1;
    long n0 = std::max<long>(16, static_cast<long>(0.4 * wd) + m / 6 + 8);
    for (int attempt = 0; attempt < 5; ++attempt, n0 *= 2) {
        unsigned long N = static_cast<unsigned long>(n0);
        Real acc(work);
        mpfr_set_zero(acc.raw(), 1);
        for (unsigned long n = 1; n < N; ++n) {
            Real p = ui_pow_ui(n, static_cast<unsigned long>(m), work);
            acc += 1 / p;
        }
        Real Npm = ui_pow_ui(N, static_cast<unsigned long>(m), work);  // N^m
        Real Ninv = 1 / Real::of(static_cast<long>(N), work);
        acc += Real::of(static_cast<long>(N), work) / (Npm * (m - 1));  // N^{1-m}/(m-1)
        acc += 1 / (Npm * 2);                                           // N^{-m}/2
        Real npow = (1 / Npm) * Ninv;  // N^{-m-1}
        Real pochh = Real::of(m, work);
        Real fact = Real::of(2, work);
        bool converged = false;
        Real prev_mag(64);
        mpfr_set_inf(prev_mag.raw(), 1);
        for (long j = 1; j < 4 * wd + 16; ++j) {
            Real coef = Real::from_mpq(bernoulli(static_cast<unsigned long>(2 * j)), work);
            Real term = coef / fact * pochh * npow;
            Real mag = abs(term);
            if (!mag.is_zero() && mag > prev_mag) break;  // diverging: N too small
            acc += term;
            if (mag.is_zero() || mag.exp2() < -(static_cast<long>(bits) + 16)) {
                converged = true;
                break;
            }
            prev_mag = mag;
            // advance to j+1
            pochh *= (m + 2 * j - 1);
            pochh *= (m + 2 * j);
            fact *= (2 * j + 1);
            fact *= (2 * j + 2);
            npow *= Ninv;
            npow *= Ninv;
        }
        if (converged) return acc.rounded_to(bits);
    }
    throw Error("euler-maclaurin for zeta(" + std::to_string(m) + ") failed to converge");
}

}  // namespace

namespace detail {

Real zeta_integer_budget(long m, long rel_digits) {
    if (m < 2) throw DomainError("zeta_integer requires m >= 2");
    if (rel_digits < 1) rel_digits = 1;
    mpfr_prec_t bits = digits_to_bits(rel_digits);
    const double log10_2 = 0.30102999566398120;
    if (static_cast<double>(m) * log10_2 > static_cast<double>(rel_digits) + 2)
        return zeta_tail3(m, bits);
    double t_log10 = static_cast<double>(rel_digits) / static_cast<double>(m);
    if (t_log10 <= 3.62)  // direct series needs at most ~4200 terms
        return zeta_direct(m, bits);
    if (m % 2 == 0 && m <= 2400) return zeta_even_bernoulli(m, bits);
    return zeta_euler_maclaurin(m, bits);
}

}  // namespace detail

namespace {

std::mutex zcache_mu;
std::map<std::pair<long, mpfr_prec_t>, Real> zcache;

}  // namespace

Real zeta_integer(long m, const NumericContext& ctx) {
    if (m < 2) throw DomainError("zeta_integer requires m >= 2");
    mpfr_prec_t bits = ctx.bits();
    {
        std::lock_guard<std::mutex> lock(zcache_mu);
        auto it = zcache.find({m, bits});
        if (it != zcache.end()) return it->second;
    }
    Real v = detail::zeta_integer_budget(m, ctx.working_digits()).rounded_to(bits);
    std::lock_guard<std::mutex> lock(zcache_mu);
    return zcache.emplace(std::make_pair(m, bits), std::move(v)).first->second;
}

Real zeta_prime_trivial(long n, const NumericContext& ctx) {
    if (n < 1) throw DomainError("zeta_prime_trivial requires n >= 1");
    mpfr_prec_t work = ctx.bits() + 32;
    NumericContext wide = ctx;
    wide.guard_digits += 10;
    Real z = zeta_integer(2 * n + 1, wide);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * n));
    Real num = z.rounded_to(work) * Real::from_mpz(fact, work);
    Real pi_pow(work);
    mpfr_pow_ui(pi_pow.raw(), const_pi(work).raw(), static_cast<unsigned long>(2 * n), MPFR_RNDN);
    Real r = num / pi_pow;
    r = mul_2si(r, -(2 * n + 1));
    if (n % 2 == 1) r = -r;
    return r.rounded_to(ctx.bits());
}

std::vector<Real> maslanka_coefficients(long K, const NumericContext& ctx) {
    if (K < 0) throw DomainError("maslanka_coefficients requires K >= 0");
    const double log10_2 = 0.30102999566398120;
    long needed = static_cast<long>(std::ceil(static_cast<double>(K) * log10_2)) + 10;
    if (ctx.working_digits() < needed)
        throw PrecisionError(
            "maslanka_coefficients: binomial cancellation at K = " + std::to_string(K) +
                " needs at least " + std::to_string(needed) + " working digits",
            needed);
    mpfr_prec_t bits = ctx.bits();
    std::vector<Real> a;
    a.reserve(static_cast<size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) {
        BinomialScan scan(static_cast<unsigned long>(k));
        Real acc(bits);
        mpfr_set_zero(acc.raw(), 1);
        for (long j = 0; j <= k; ++j) {
            Real term = Real::from_mpz(scan.value(), bits) * (2 * j + 1) *
                        zeta_integer(2 * j + 2, ctx);
            if (j % 2 == 0)
                acc += term;
            else
                acc -= term;
            if (j < k) scan.advance();
        }
        a.push_back(std::move(acc));
    }
    return a;
}

Complex zeta_via_maslanka(const Complex& s, long K, const NumericContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    Complex sc = s.rounded_to(bits);
    if (sc.im.is_zero() && sc.re == 1) throw DomainError("zeta: pole at s = 1");
    std::vector<Real> a = maslanka_coefficients(K, ctx);
    Complex half_s(sc.re / 2, sc.im / 2);
    Complex ratio(Real::of(1, bits), Real::of(0, bits));  // Gamma(k+1-s/2)/(Gamma(1-s/2) k!)
    Complex acc(bits);
    for (long k = 0; k <= K; ++k) {
        acc = acc + ratio * a[static_cast<size_t>(k)];
        // advance: multiply by (k+1-s/2)/(k+1)
        Complex f = (Real::of(k + 1, bits) - half_s) / Real::of(k + 1, bits);
        ratio = ratio * f;
    }
    return acc / (sc - Real::of(1, bits));
}

void export_zeta_integer_cache(std::ostream& out, const NumericContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    out << "# bdlab zeta integer cache\n";
    out << "# version: 1\n";
    out << "# precision_digits: " << ctx.working_digits() << "\n";
    out << "# generator: " << kGenerator << "\n";
    std::lock_guard<std::mutex> lock(zcache_mu);
    for (const auto& [key, val] : zcache) {
        if (key.second != bits) continue;
        out << key.first << "\t" << val.str() << "\n";
    }
}

long import_zeta_integer_cache(std::istream& in) {
    std::string line;
    long line_no = 0;
    long digits = -1;
    long imported = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("precision_digits:");
            if (pos != std::string::npos)
                digits = std::stol(line.substr(pos + 17));
            continue;
        }
        if (digits < 0)
            throw FormatError("zeta cache import: missing precision_digits header", line_no);
        std::istringstream ls(line);
        long m = 0;
        std::string val;
        if (!(ls >> m >> val))
            throw FormatError("zeta cache import: bad line", line_no);
        mpfr_prec_t bits = digits_to_bits(digits);
        Real v = Real::parse(val, bits);
        std::lock_guard<std::mutex> lock(zcache_mu);
        zcache.insert_or_assign({m, bits}, std::move(v));
        ++imported;
    }
    return imported;
}

}  // namespace bdlab
