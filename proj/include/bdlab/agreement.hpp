#pragma once

#include "bdlab/real.hpp"

namespace bdlab {

/// Result of the digit-agreement metric: either the two values coincide at
/// working precision ("all") or they share `digits` leading decimal digits
/// in the ratio sense.
struct Agreement {
    bool all = false;
    long digits = 0;
};

/// floor(-log10 |a/b - 1|), the comparison metric used throughout: d such
/// that 10^{-(d+1)} < |a/b - 1| <= 10^{-d}, clamped at 0, or "all" when
/// a == b exactly. Throws DomainError when b == 0.
Agreement digits_of_agreement(const Real& a, const Real& b);

}  // namespace bdlab
