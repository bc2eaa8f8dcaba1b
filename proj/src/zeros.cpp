#include "bdlab/zeros.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "bdlab/fingerprint.hpp"
#include "bdlab/parallel.hpp"
#include "bdlab/version.hpp"
#include "bdlab/zeta.hpp"

namespace bdlab {

namespace {

Real pow10_neg(long d, mpfr_prec_t bits) {
    Real t(bits);
    mpfr_ui_pow_ui(t.raw(), 10, static_cast<unsigned long>(d < 0 ? 0 : d), MPFR_RNDN);
    mpfr_si_div(t.raw(), 1, t.raw(), MPFR_RNDN);
    return t;
}

constexpr double kBasinGuard = 0.4;

// Storage precision for an ordinate quoted at `pd` digits: room for the
// integer part plus guard bits, so the stored rounding never dominates the
// residual law |zeta| < 10^{-(pd-4)} (ordinates reach the thousands).
mpfr_prec_t gamma_storage_bits(long pd) { return digits_to_bits(pd + 6) + 16; }

}  // namespace

bool ZetaZero::verified() const {
    if (!residual) return false;
    return *residual < pow10_neg(precision_digits - 4, 64);
}

const ZetaZero& ZeroTable::at(long index) const {
    if (index < 1 || index > count()) throw DomainError("zero index out of range");
    return zeros[static_cast<size_t>(index - 1)];
}

ZetaZero& ZeroTable::at(long index) {
    if (index < 1 || index > count()) throw DomainError("zero index out of range");
    return zeros[static_cast<size_t>(index - 1)];
}

std::string ZeroTable::fingerprint() const {
    std::ostringstream os;
    os << source << "|" << count() << "|";
    for (const auto& z : zeros) {
        os << z.index << ":" << z.precision_digits << ":" << z.gamma.str() << ":";
        if (z.residual) os << z.residual->str();
        os << ":";
        if (z.zeta_prime) os << z.zeta_prime->re.str() << "," << z.zeta_prime->im.str();
        os << ";";
    }
    return fnv1a64_hex(os.str());
}

namespace {

long count_fraction_digits(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return 0;
    long n = 0;
    for (size_t i = dot + 1; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
        ++n;
    return n;
}

}  // namespace

ZeroTable ingest_zero_table(std::istream& in, ZeroTableFormat format, std::string source_name) {
    ZeroTable table;
    table.source = std::move(source_name);
    std::string line;
    long line_no = 0;
    long min_frac = -1;
    std::vector<std::pair<std::string, long>> raw;  // ordinate text, line
    long expected_index = 1;
    while (std::getline(in, line)) {
        ++line_no;
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        if (line[a] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        if (format == ZeroTableFormat::indexed_ordinates) {
            long idx = 0;
            if (!(ls >> idx))
                throw FormatError("zero table: bad index field", line_no);
            if (idx != expected_index)
                throw FormatError("zero table: indices must be 1..count without gaps; got " +
                                      std::to_string(idx),
                                  line_no);
        }
        if (!(ls >> tok))
            throw FormatError("zero table: missing ordinate", line_no);
        std::string rest;
        if (ls >> rest)
            throw FormatError("zero table: trailing token '" + rest + "'", line_no);
        // basic shape check before handing to the parser
        if (tok.find_first_not_of("0123456789.+-eE") != std::string::npos)
            throw FormatError("zero table: unparseable ordinate '" + tok + "'", line_no);
        raw.emplace_back(tok, line_no);
        ++expected_index;
        long f = count_fraction_digits(tok);
        if (min_frac < 0 || f < min_frac) min_frac = f;
    }
    if (raw.empty()) return table;

    long digits = min_frac < 1 ? 1 : min_frac;
    mpfr_prec_t bits = digits_to_bits(digits + 12);
    Real prev(bits);
    long idx = 1;
    for (auto& [tok, ln] : raw) {
        Real g(bits);
        try {
            g = Real::parse(tok, bits);
        } catch (const FormatError&) {
            throw FormatError("zero table: unparseable ordinate '" + tok + "'", ln);
        }
        if (!(g > 0))
            throw FormatError("zero table: ordinates must be positive", ln);
        if (idx > 1 && !(g > prev))
            throw FormatError("zero table: ordinates out of order", ln);
        ZetaZero z;
        z.index = idx++;
        z.gamma = g;
        z.precision_digits = digits;
        table.zeros.push_back(std::move(z));
        prev = g;
    }
    return table;
}

namespace {

// One Newton step at the given working context; returns |step|.
Real newton_step(Complex& s, const NumericContext& ctx) {
    ZetaPair zp = zeta_and_prime(s, ctx);
    if (abs(zp.zeta_prime).is_zero())
        throw ConvergenceError("newton: vanishing zeta' during refinement", to_string(s), 0);
    Complex step = zp.zeta / zp.zeta_prime;
    mpfr_prec_t b = ctx.bits();
    s = Complex(s.re.rounded_to(b) - step.re, s.im.rounded_to(b) - step.im);
    return abs(step);
}

}  // namespace

ZetaZero refine_zero(const Real& gamma_approx, long target_digits, const NumericContext& ctx,
                     RefineDiagnostics* diag) {
    if (target_digits < 10) throw DomainError("refine_zero: target_digits must be >= 10");
    long guard = std::max<long>(ctx.guard_digits, 10);

    // Doubling precision ladder, one Newton step per rung, then full-precision
    // steps until the correction is below the target.
    std::vector<long> ladder;
    for (long d = 24; d < target_digits + 10; d *= 2) ladder.push_back(d);
    ladder.push_back(target_digits + 10);

    Complex s(Real::parse("0.5", digits_to_bits(ladder[0] + guard)),
              gamma_approx.rounded_to(digits_to_bits(ladder[0] + guard)));
    long iterations = 0;
    auto check_basin = [&](const Complex& cur) {
        Real drift = abs(cur.im - gamma_approx);
        if (drift.to_double() > kBasinGuard)
            throw WrongZeroError("refine_zero: iteration left the seed basin (seed " +
                                 gamma_approx.str(20) + ", now " + cur.im.str(20) + ")");
    };

    for (long d : ladder) {
        NumericContext lc = make_context(d, guard, 1, 1);
        s = s.rounded_to(lc.bits());
        Real step = newton_step(s, lc);
        ++iterations;
        if (diag) diag->step_sizes.push_back(step.rounded_to(64));
        check_basin(s);
    }
    {
        NumericContext fc = make_context(target_digits + 10, guard, 1, 1);
        Real tol = pow10_neg(target_digits + 2, 64);
        long cap = 40;
        while (true) {
            Real step = newton_step(s, fc);
            ++iterations;
            if (diag) diag->step_sizes.push_back(step.rounded_to(64));
            check_basin(s);
            if (step < tol) break;
            if (iterations > cap)
                throw ConvergenceError("refine_zero: iteration cap hit before reaching 10^-" +
                                           std::to_string(target_digits),
                                       to_string(s), iterations);
        }
    }
    if (diag) diag->iterations = iterations;

    ZetaZero z;
    z.index = 0;
    z.precision_digits = target_digits;
    z.gamma = s.im.rounded_to(gamma_storage_bits(target_digits));
    Real dev = s.re - Real::parse("0.5", s.re.prec());
    z.re_deviation = abs(dev).rounded_to(64);
    if (!(abs(dev) < pow10_neg(target_digits - 4, 64)))
        throw OffCriticalLineError(
            "refine_zero: converged point deviates from the critical line "
            "beyond tolerance -- off-critical-line candidate, do not discard",
            s.im.str(30), dev.str(20));

    NumericContext vctx = make_context(target_digits + 10, guard, 1, 1);
    verify_zero(z, vctx);
    return z;
}

Real verify_zero(ZetaZero& zero, const NumericContext& ctx) {
    long digits = std::max(ctx.precision_digits, zero.precision_digits + 10);
    NumericContext vctx = make_context(digits, std::max<long>(ctx.guard_digits, 10), 1, 1);
    mpfr_prec_t sbits = std::max(vctx.bits(), zero.gamma.prec());
    Complex s(Real::parse("0.5", sbits), zero.gamma.rounded_to(sbits));
    Real r = abs(zeta_complex(s, vctx));
    zero.residual = r.rounded_to(64);
    return *zero.residual;
}

void refine_table(ZeroTable& table, long target_digits, const NumericContext& ctx, int threads) {
    parallel_for(0, table.count(), threads, [&](long i) {
        ZetaZero& seed = table.zeros[static_cast<size_t>(i)];
        try {
            ZetaZero refined = refine_zero(seed.gamma, target_digits, ctx);
            refined.index = seed.index;
            seed = std::move(refined);
        } catch (const Error& e) {
            throw Error("zero index " + std::to_string(seed.index) + ": " + e.what());
        }
    });
    // Post-refinement sanity: still strictly increasing, no two seeds merged.
    Real min_gap = Real::parse("1e-3", 64);
    for (long i = 1; i < table.count(); ++i) {
        Real gap = table.zeros[static_cast<size_t>(i)].gamma -
                   table.zeros[static_cast<size_t>(i - 1)].gamma;
        if (!(gap > min_gap))
            throw Error("refine_table: ordinates collapsed or out of order near index " +
                        std::to_string(i + 1));
    }
}

void attach_zeta_prime(ZeroTable& table, const NumericContext& ctx, int threads) {
    parallel_for(0, table.count(), threads, [&](long i) {
        ZetaZero& z = table.zeros[static_cast<size_t>(i)];
        if (!z.verified())
            throw DomainError("attach_zeta_prime: zero index " + std::to_string(z.index) +
                              " has no verified residual");
        try {
            NumericContext dctx = ctx;
            dctx.precision_digits = z.precision_digits;
            mpfr_prec_t sbits = std::max(digits_to_bits(z.precision_digits + 10), z.gamma.prec());
            Complex s(Real::parse("0.5", sbits), z.gamma.rounded_to(sbits));
            z.zeta_prime = zeta_prime(s, dctx);
        } catch (const Error& e) {
            throw Error("zero index " + std::to_string(z.index) + ": " + e.what());
        }
    });
}

DerivativeExtremes scan_derivative_extremes(const ZeroTable& table, long l_min, long l_max) {
    if (l_min < 1 || l_max > table.count() || l_min > l_max)
        throw DomainError("scan_derivative_extremes: empty or invalid range");
    DerivativeExtremes ext;
    for (long l = l_min; l <= l_max; ++l) {
        const ZetaZero& z = table.at(l);
        if (!z.zeta_prime)
            throw DomainError("scan_derivative_extremes: zeta' missing at index " +
                              std::to_string(l));
        Real mag = abs(*z.zeta_prime);
        if (ext.min_index == 0 || mag < ext.min_value) {
            ext.min_index = l;
            ext.min_value = mag;
        }
        if (ext.max_index == 0 || mag > ext.max_value) {
            ext.max_index = l;
            ext.max_value = mag;
        }
    }
    return ext;
}

void persist_table(const ZeroTable& table, std::ostream& out) {
    long pd = table.count() > 0 ? table.zeros[0].precision_digits : 0;
    for (const auto& z : table.zeros)
        if (z.precision_digits != pd)
            throw Error("persist_table: mixed precision_digits in one table");
    out << "#version: 1\n";
    out << "#count: " << table.count() << "\n";
    out << "#precision_digits: " << pd << "\n";
    out << "#source: " << table.source << "\n";
    out << "#generator: " << kGenerator << "\n";
    for (const auto& z : table.zeros) {
        out << z.index << "\t" << z.gamma.str();
        out << "\t" << (z.residual ? z.residual->str() : "-");
        if (z.zeta_prime)
            out << "\t" << z.zeta_prime->re.str() << "\t" << z.zeta_prime->im.str();
        else
            out << "\t-\t-";
        out << "\n";
    }
}

ZeroTable load_table(std::istream& in) {
    ZeroTable table;
    std::string line;
    long line_no = 0;
    long version = -1, count = -1, pd = -1;
    bool header_done = false;
    Real prev(64);
    long rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_done)
                throw FormatError("zero table: header line after body", line_no);
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw FormatError("zero table: malformed header", line_no);
            std::string key = line.substr(1, colon - 1);
            std::string val = line.substr(colon + 1);
            while (!val.empty() && val.front() == ' ') val.erase(val.begin());
            if (key == "version") version = std::stol(val);
            else if (key == "count") count = std::stol(val);
            else if (key == "precision_digits") pd = std::stol(val);
            else if (key == "source") table.source = val;
            continue;
        }
        if (!header_done) {
            if (version != 1)
                throw VersionError("zero table: unsupported version " + std::to_string(version));
            if (count < 0 || pd < 0)
                throw FormatError("zero table: incomplete header", line_no);
            header_done = true;
        }
        std::istringstream ls(line);
        std::string g, r, zr, zi;
        long idx = 0;
        if (!(ls >> idx >> g >> r >> zr >> zi))
            throw FormatError("zero table: short row", line_no);
        ZetaZero z;
        z.index = idx;
        z.precision_digits = pd;
        z.gamma = Real::parse(g, gamma_storage_bits(pd));
        if (idx != rows + 1)
            throw FormatError("zero table: index gap at row", line_no);
        if (rows > 0 && !(z.gamma > prev))
            throw FormatError("zero table: corrupted ordinate ordering", line_no);
        prev = z.gamma;
        if (r != "-") z.residual = Real::parse(r, 64);
        if (zr != "-" && zi != "-")
            z.zeta_prime = Complex(Real::parse(zr, digits_to_bits(pd)),
                                   Real::parse(zi, digits_to_bits(pd)));
        table.zeros.push_back(std::move(z));
        ++rows;
    }
    if (count >= 0 && rows != count)
        throw FormatError("zero table: row count disagrees with header", line_no);
    return table;
}

ZeroTable degrade_derivatives(const ZeroTable& table, long digits) {
    ZeroTable t = table;
    mpfr_prec_t bits = digits_to_bits(digits);
    for (auto& z : t.zeros)
        if (z.zeta_prime) z.zeta_prime = z.zeta_prime->rounded_to(bits);
    return t;
}

}  // namespace bdlab
