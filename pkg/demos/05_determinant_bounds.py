"""Determinant-root inequalities and their coefficient generalizations.

The classical superadditivity (det A)^(1/n) + (det B)^(1/n) <=
(det(A+B))^(1/n) extends to images under convex or concave functions with
coefficients f(M)/M and f(m)/m, and admits a reverse bound with the factor
2^(1-1/n) whenever the operands' spectra are separated by a gap.
"""

import numpy as np

from opmeans import check_determinant_suite, det_root, function_by_name
from opmeans.randgen import derive_stream_seed, random_gap_pair

A = np.diag([1.0, 4.0])
B = np.diag([2.0, 3.0])
print("A = diag(1,4), B = diag(2,3):")
print(f"  detroot(A) + detroot(B) = {det_root(A) + det_root(B):.6f}")
print(f"  detroot(A+B)            = {det_root(A + B):.6f}")

out = check_determinant_suite(function_by_name("power:2"), A, B, alpha=0.5)
print("\nsquare-image bounds (no spectral gap, so two links are inapplicable):")
for link in out.links:
    note = "" if link.applicable else "  [needs a spectral gap]"
    print(f"  {link.description:<28} margin {link.margin:+.4f}{note}")

# a gap pair activates the convex-combination and reverse bounds
A, B = random_gap_pair(3, "below_a", derive_stream_seed(99, 0))
out = check_determinant_suite(function_by_name("power:2"), A, B, alpha=0.25)
print("\nrandom gap pair (B entirely below A), alpha = 1/4:")
for link in out.links:
    if link.applicable:
        print(f"  {link.description:<28} margin {link.margin:+.4f}  "
              f"{'ok' if link.passed else 'VIOLATED'}")
