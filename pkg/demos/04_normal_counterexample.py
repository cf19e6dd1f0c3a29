"""Where the norm chain breaks: normal matrices.

The upper norm bounds of the coefficient chain do not survive off the
positive definite class.  The fixed 2x2 fixture A = diag(2, -1),
B = diag(-2, 1) with f(x) = x^2 makes both upper bounds collapse to zero
while the left sides stay large, and a seeded search finds fresh violating
instances at will.  The lower chains, by contrast, do survive on normal
matrices.
"""

from opmeans import check_normal_chain, check_normal_counterexample, function_by_name
from opmeans.harness import SuiteSpec, search_counterexample

out = check_normal_counterexample()
p = out.params
print("fixture A = diag(2,-1), B = diag(-2,1), f(x) = x^2:")
print(f"  ||f(|A|)+f(|B|)||      = {p['norm_images_sum']:.1f}")
print(f"  ||f(|A|+|B|)||         = {p['norm_image_of_abs_sum']:.1f}")
print(f"  (f(M)/M) ||A+B||       = {p['coef_bound']:.1f}   (M = {p['M']:.0f})")
print(f"  f'(M) ||A+B||          = {p['deriv_bound']:.1f}")
print("  8 <= 0 and 16 <= 0 both fail: the upper bounds are not theorems here")

print("\nsearching random Hermitian-indefinite pairs for another violation...")
spec = SuiteSpec("search", dims=(2,), master_seed=20240001)
report = search_counterexample("norm_chain_normal", None, 10_000, spec)
rec = report.records[0]
print(f"  found at trial {rec.params['trial']}: "
      f"{[l.description for l in rec.links if not l.passed]}")

print("\nthe lower chains survive (500-trial spot check lives in the test suite):")
import numpy as np
A = np.diag([2.0, -1.0]).astype(complex)
B = np.diag([-2.0, 1.0]).astype(complex)
out = check_normal_chain(function_by_name("power:2"), A, B, norms=("operator",))
for link in out.links:
    print(f"  {link.description:<22} margin {link.margin:+.3f}  "
          f"{'ok' if link.passed else 'VIOLATED'}")
