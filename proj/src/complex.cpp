#include "bdlab/complex.hpp"

namespace bdlab {

Complex exp(const Complex& a) {
    mpfr_prec_t p = a.prec();
    Real ea = exp(a.re);
    Real s(p), c(p);
    sin_cos(s, c, a.im);
    return {ea * c, ea * s};
}

Complex log(const Complex& a) {
    if (a.is_zero()) throw DomainError("log of zero");
    return {log(abs(a)), arg(a)};
}

std::string to_string(const Complex& a, size_t digits) {
    std::string s = a.re.str(digits);
    std::string i = a.im.str(digits);
    if (!i.empty() && i[0] == '-') return s + " - " + i.substr(1) + "*i";
    return s + " + " + i + "*i";
}

}  // namespace bdlab
