#include "bdlab/special.hpp"

#include <map>
#include <mutex>
#include <string>

namespace bdlab {

namespace {

// Tangent numbers T_1..T_n (T_1 = 1, T_2 = 2, T_3 = 16, ...) by the in-place
// integer triangle of Brent and Harvey. Grows monotonically under a lock.
class TangentTable {
public:
    const mpz_class& at(size_t m) {
        std::lock_guard<std::mutex> lock(mu_);
        if (m > t_.size()) grow(m);
        return t_[m - 1];
    }

private:
    void grow(size_t n) {
        n = std::max(n, t_.size() * 2);
        std::vector<mpz_class> t(n);
        t[0] = 1;
        for (size_t k = 2; k <= n; ++k) t[k - 1] = t[k - 2] * (long)(k - 1);
        for (size_t k = 2; k <= n; ++k)
            for (size_t j = k; j <= n; ++j)
                t[j - 1] = t[j - 2] * (long)(j - k) + t[j - 1] * (long)(j - k + 2);
        t_ = std::move(t);
    }
    std::mutex mu_;
    std::vector<mpz_class> t_;
};

TangentTable& tangent_table() {
    static TangentTable t;
    return t;
}

std::mutex bern_mu;
std::map<unsigned long, mpq_class> bern_cache;

}  // namespace

const mpq_class& bernoulli(unsigned long n) {
    std::lock_guard<std::mutex> lock(bern_mu);
    auto it = bern_cache.find(n);
    if (it != bern_cache.end()) return it->second;
    mpq_class b;
    if (n == 0) {
        b = 1;
    } else if (n == 1) {
        b = mpq_class(-1, 2);
    } else if (n % 2 == 1) {
        b = 0;
    } else {
        unsigned long m = n / 2;
        mpz_class tm = tangent_table().at(m);
        mpz_class num = tm * (long)n;
        if (m % 2 == 0) num = -num;  // sign (-1)^{m-1}
        mpz_class p4;
        mpz_ui_pow_ui(p4.get_mpz_t(), 4, m);
        mpz_class den = p4 * (p4 - 1);
        b = mpq_class(num, den);
        b.canonicalize();
    }
    return bern_cache.emplace(n, std::move(b)).first->second;
}

mpz_class binomial(unsigned long k, unsigned long j) {
    if (j > k) throw DomainError("binomial: j > k");
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), k, j);
    return r;
}

namespace {

enum class Const { pi, ln2, euler, ln_2pi };

Real compute_const(Const which, mpfr_prec_t bits) {
    Real r(bits);
    switch (which) {
        case Const::pi: mpfr_const_pi(r.raw(), MPFR_RNDN); break;
        case Const::ln2: mpfr_const_log2(r.raw(), MPFR_RNDN); break;
        case Const::euler: mpfr_const_euler(r.raw(), MPFR_RNDN); break;
        case Const::ln_2pi: {
            Real t(bits + 8);
            mpfr_const_pi(t.raw(), MPFR_RNDN);
            mpfr_mul_ui(t.raw(), t.raw(), 2, MPFR_RNDN);
            mpfr_log(t.raw(), t.raw(), MPFR_RNDN);
            mpfr_set(r.raw(), t.raw(), MPFR_RNDN);
            break;
        }
    }
    return r;
}

std::mutex const_mu;
std::map<std::pair<int, mpfr_prec_t>, Real> const_cache;

Real cached_const(Const which, mpfr_prec_t bits) {
    std::lock_guard<std::mutex> lock(const_mu);
    auto key = std::make_pair(static_cast<int>(which), bits);
    auto it = const_cache.find(key);
    if (it == const_cache.end())
        it = const_cache.emplace(key, compute_const(which, bits)).first;
    return it->second;
}

}  // namespace

Real const_pi(mpfr_prec_t bits) { return cached_const(Const::pi, bits); }
Real const_ln2(mpfr_prec_t bits) { return cached_const(Const::ln2, bits); }
Real const_euler(mpfr_prec_t bits) { return cached_const(Const::euler, bits); }
Real const_ln_2pi(mpfr_prec_t bits) { return cached_const(Const::ln_2pi, bits); }

Real constant(std::string_view name, const NumericContext& ctx) {
    if (name == "pi") return const_pi(ctx.bits());
    if (name == "ln2") return const_ln2(ctx.bits());
    if (name == "euler_gamma") return const_euler(ctx.bits());
    throw DomainError("unknown constant: " + std::string(name));
}

namespace {

std::mutex stirl_mu;
std::map<mpfr_prec_t, std::vector<Real>> stirl_cache;

}  // namespace

const std::vector<Real>& stirling_coefficients(mpfr_prec_t bits, size_t count) {
    std::lock_guard<std::mutex> lock(stirl_mu);
    auto& v = stirl_cache[bits];
    while (v.size() < count) {
        size_t n = v.size() + 1;
        Real c = Real::from_mpq(bernoulli(2 * n), bits);
        c /= static_cast<long>(2 * n * (2 * n - 1));
        v.push_back(std::move(c));
    }
    return v;
}

namespace {

// Splits x into nearest integer n and remainder f with |f| <= 1/2, both at
// full precision; the subtraction is exact.
void split_nearest(const Real& x, Real& n, Real& f) {
    n = Real(x.prec());
    mpfr_round(n.raw(), x.raw());
    f = x - n;
}

bool is_nonpositive_integer(const Complex& z) {
    if (!z.im.is_zero()) return false;
    if (z.re > 0) return false;
    Real r(z.re.prec());
    mpfr_round(r.raw(), z.re.raw());
    return r == z.re;
}

// Stirling asymptotic series at w, valid once Re(w) >= 1.2 x working digits.
Complex stirling_ln_gamma(const Complex& w, mpfr_prec_t bits, long work_digits) {
    Complex lw = log(w);
    Complex sum = (w - Real::parse("0.5", bits)) * lw - w;
    sum.re += const_ln_2pi(bits) / 2;

    Complex w2inv = Real::of(1, bits) / (w * w);
    Complex p = Real::of(1, bits) / w;
    // Enough coefficients so the series bottoms out below the target; the
    // threshold on Re(w) keeps this near 0.4 terms per digit.
    size_t max_terms = static_cast<size_t>(work_digits) / 2 + 16;
    const std::vector<Real>& coef = stirling_coefficients(bits, max_terms);
    long stop_exp2 = sum.re.exp2() - static_cast<long>(bits) - 8;
    Real prev_mag = abs(Complex(w));
    (void)prev_mag;
    for (size_t n = 0; n < max_terms; ++n) {
        Complex term = coef[n] * p;
        sum = sum + term;
        Real m = abs(term);
        if (m.is_zero() || m.exp2() < stop_exp2) return sum;
        p = p * w2inv;
    }
    throw Error("stirling series did not reach target; threshold violated");
}

}  // namespace

Complex ln_sin_pi(const Complex& z, const NumericContext& ctx) {
    mpfr_prec_t bits = ctx.bits() + 32;
    if (z.im.sgn() < 0) {
        Complex r = ln_sin_pi(z.conj(), ctx);
        return r.conj();
    }
    Real pi = const_pi(bits);
    Real n(bits), f(bits);
    split_nearest(z.re.rounded_to(bits), n, f);
    bool odd = mpfr_integer_p(n.raw()) && (mpfr_get_si(n.raw(), MPFR_RNDN) % 2 != 0);
    // n may exceed long range only for |Re z| > 2^62; domain never reaches that.
    Real y = z.im.rounded_to(bits);

    if (y <= 1) {
        // Direct evaluation after exact argument reduction: sin(pi(f+n+iy)) =
        // (-1)^n (sin(pi f) cosh(pi y) + i cos(pi f) sinh(pi y)).
        Real pf = pi * f;
        Real py = pi * y;
        Real s(bits), c(bits);
        sin_cos(s, c, pf);
        Real ch = cosh(py), sh = sinh(py);
        Complex w(s * ch, c * sh);
        if (odd) w = -w;
        if (w.is_zero()) throw DomainError("ln_sin_pi: argument is an integer (pole)");
        return log(w).rounded_to(ctx.bits());
    }

    // Dominant-exponential form: sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}).
    // Real part: pi y - ln 2 + Re log(1 - e^{2 pi i z});
    // phase: pi/2 - pi Re(z) reduced exactly via f and the parity of n.
    Real re_part = pi * y - const_ln2(bits);
    Real phase = pi * (Real::parse("0.5", bits) - f - Real::of(odd ? 1 : 0, bits));

    // e^{2 pi i z} = e^{-2 pi y} e^{2 pi i f} (integer part of Re drops out).
    Real e2(bits);
    {
        Real t = pi * y;
        t *= -2;
        e2 = exp(t);
    }
    long tiny_exp = -(static_cast<long>(bits) + 16);
    if (!e2.is_zero() && e2.exp2() > tiny_exp) {
        Real a(bits), b(bits);
        Real two_pf = pi * f * 2;
        sin_cos(b, a, two_pf);
        Complex u(Real::of(1, bits) - e2 * a, -(e2 * b));
        Complex lu = log(u);
        re_part += lu.re;
        phase += lu.im;
    } else if (!e2.is_zero()) {
        // log1p(-w) ~ -w; adding the linear term keeps the error below an ulp.
        Real a(bits), b(bits);
        Real two_pf = pi * f * 2;
        sin_cos(b, a, two_pf);
        re_part -= e2 * a;
        phase -= e2 * b;
    }
    // Wrap the phase into (-pi, pi]; the reduction above leaves at most one
    // excess turn.
    Real two_pi = pi * 2;
    while (phase > pi) phase -= two_pi;
    while (phase <= -pi) phase += two_pi;
    return Complex(re_part, phase).rounded_to(ctx.bits());
}

Complex ln_gamma(const Complex& z, const NumericContext& ctx) {
    if (is_nonpositive_integer(z))
        throw DomainError("ln_gamma: pole at non-positive integer");
    mpfr_prec_t bits = ctx.bits() + 32;
    long wd = ctx.working_digits();

    if (z.im.is_zero() && z.re > 0) {
        Real x = z.re.rounded_to(bits);
        Real r(bits);
        mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
        return Complex(r.rounded_to(ctx.bits()), Real::of(0, ctx.bits()));
    }

    if (z.re.sgn() < 0) {
        // Reflection; 1 - z lands in the right half-plane.
        NumericContext wide = ctx;
        wide.guard_digits += 10;
        Complex one_minus = Real::of(1, bits) - z.rounded_to(bits);
        Complex r = Complex(Real::of(0, bits), Real::of(0, bits));
        r.re = log(const_pi(bits));
        Complex ls = ln_sin_pi(z, wide);
        Complex lg = ln_gamma(one_minus, wide);
        return (r - ls - lg).rounded_to(ctx.bits());
    }

    Complex w = z.rounded_to(bits);
    long threshold = (wd * 12 + 9) / 10;  // 1.2 x working digits
    Complex shift_log(bits);
    bool shifted = false;
    if (w.re < threshold) {
        long m = threshold - static_cast<long>(floor(w.re).to_double()) + 1;
        Complex prod = w;
        Complex t = w;
        for (long i = 1; i < m; ++i) {
            t.re += 1;
            prod = prod * t;
        }
        shift_log = log(prod);
        shifted = true;
        w.re += m;
    }
    Complex lg = stirling_ln_gamma(w, bits, wd);
    if (shifted) lg = lg - shift_log;
    return lg.rounded_to(ctx.bits());
}

}  // namespace bdlab
