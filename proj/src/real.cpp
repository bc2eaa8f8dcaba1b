#include "bdlab/real.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace bdlab {

Real Real::parse(std::string_view dec, mpfr_prec_t bits) {
    Real r(bits);
    std::string buf(dec);
    if (buf.empty())
        throw FormatError("empty numeric string", 0);
    if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
        throw FormatError("unparseable numeric string: '" + buf + "'", 0);
    return r;
}

std::string Real::str(size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    bool neg = !m.empty() && m[0] == '-';
    std::string mag = neg ? m.substr(1) : m;
    // mpfr mantissa is 0.dddd * 10^e; rewrite as d.ddd e(e-1)
    std::string out = neg ? "-" : "";
    out += mag.substr(0, 1);
    if (mag.size() > 1) {
        out += ".";
        out += mag.substr(1);
    }
    long pe = static_cast<long>(e) - 1;
    out += "e";
    if (pe >= 0) out += "+";
    out += std::to_string(pe);
    return out;
}

}  // namespace bdlab
