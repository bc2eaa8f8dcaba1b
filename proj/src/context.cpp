#include "bdlab/context.hpp"

#include <sstream>

namespace bdlab {

mpfr_prec_t digits_to_bits(long decimal_digits) {
    if (decimal_digits < 1) decimal_digits = 1;
    // ceil(d * log2(10)) computed in integers; 3321928095 > 10^9 * log2(10).
    const unsigned long long num = 3321928095ULL;
    unsigned long long bits = (static_cast<unsigned long long>(decimal_digits) * num + 999999999ULL) / 1000000000ULL;
    return static_cast<mpfr_prec_t>(bits);
}

long NumericContext::oversampled_digits() const {
    long scaled = (precision_digits * oversample_num + oversample_den - 1) / oversample_den;
    return scaled + guard_digits;
}

NumericContext NumericContext::oversampled() const {
    NumericContext c;
    c.precision_digits = (precision_digits * oversample_num + oversample_den - 1) / oversample_den;
    c.guard_digits = guard_digits;
    c.oversample_num = 1;
    c.oversample_den = 1;
    return c;
}

std::string NumericContext::describe() const {
    std::ostringstream os;
    os << "digits=" << precision_digits << ";guard=" << guard_digits
       << ";oversample=" << oversample_num << "/" << oversample_den
       << ";rounding=nearest";
    return os.str();
}

NumericContext make_context(long precision_digits, long guard_digits,
                            long oversample_num, long oversample_den) {
    if (precision_digits < 10)
        throw DomainError("precision below 10 digits is meaningless; got " +
                          std::to_string(precision_digits));
    if (guard_digits < 0)
        throw DomainError("guard_digits must be non-negative");
    if (oversample_den <= 0 || oversample_num <= 0 || oversample_num < oversample_den)
        throw DomainError("oversample_factor must be a rational >= 1");
    NumericContext c;
    c.precision_digits = precision_digits;
    c.guard_digits = guard_digits;
    c.oversample_num = oversample_num;
    c.oversample_den = oversample_den;
    return c;
}

}  // namespace bdlab
