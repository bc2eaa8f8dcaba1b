#pragma once

#include <mpfr.h>

#include <string>

#include "bdlab/errors.hpp"

namespace bdlab {

/// Precision accounting is done in decimal digits throughout; the binary
/// backend over-allocates by ceil(d * log2(10)) bits.
mpfr_prec_t digits_to_bits(long decimal_digits);

/// Working-precision policy shared by every evaluation.
///
/// precision_digits is what results are quoted at, guard_digits are extra
/// digits carried internally, and oversample_factor (a rational >= 1) is the
/// working-precision multiplier applied to ill-conditioned evaluations such
/// as derivatives at zeros.
struct NumericContext {
    long precision_digits = 0;
    long guard_digits = 20;
    long oversample_num = 2;
    long oversample_den = 1;

    long working_digits() const { return precision_digits + guard_digits; }
    mpfr_prec_t bits() const { return digits_to_bits(working_digits()); }
    mpfr_prec_t result_bits() const { return digits_to_bits(precision_digits); }

    long oversampled_digits() const;

    /// Context for an oversampled evaluation: precision scaled by the factor,
    /// same guard, factor reset to 1.
    NumericContext oversampled() const;

    /// Canonical key used in provenance fingerprints.
    std::string describe() const;

    bool operator==(const NumericContext&) const = default;
};

/// Validates and builds a context. Rejects precision below 10 digits,
/// negative guard digits, and oversample factors below 1.
NumericContext make_context(long precision_digits, long guard_digits = 20,
                            long oversample_num = 2, long oversample_den = 1);

}  // namespace bdlab
