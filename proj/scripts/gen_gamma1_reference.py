#!/usr/bin/env python3
"""Regenerate the high-precision reference value of the first zero ordinate.

Computed with mpmath (independent of this library) at 1010 digits; serves as
the cross-implementation reference the refinement pipeline is checked against.
"""
from mpmath import mp, zetazero

mp.dps = 1010
g = zetazero(1).imag
with open("data/zeta_zero1_1000digits.txt", "w") as f:
    f.write("# gamma_1, ordinate of the first nontrivial zeta zero, 1000+ digits\n")
    f.write("# source: computed with mpmath (zetazero) at dps=1010\n")
    f.write(mp.nstr(g, 1005, strip_zeros=False) + "\n")
print("done")
