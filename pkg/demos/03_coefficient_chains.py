"""The coefficient chains with quantified Loewner margins.

For a convex f on [0, inf) with f(0) = 0 and spectra inside [m, M],

  f'(0) S <= (f(m)/m) S <= f(A) sigma f(B) <= (f(M)/M) S <= f'(M) S

with S = A sigma B, the same chain around f(A sigma B), and every
comparison reversed for concave f.  Each link is certified by the smallest
eigenvalue of (right side - left side).
"""

import numpy as np

from opmeans import check_eig_prod_norm, check_main_chain, function_by_name, mean_by_name
from opmeans.randgen import GeneratorConfig, derive_stream_seed, random_pd

cfg = GeneratorConfig(4, 0.5, 4.0)
A = random_pd(cfg, derive_stream_seed(11, 0))
B = random_pd(cfg, derive_stream_seed(11, 1))

for fn_name in ("power:2", "expm1", "sqrt", "log1p"):
    f = function_by_name(fn_name)
    out = check_main_chain(f, mean_by_name("geometric:1/2"), A, B)
    tag = "convex" if out.params["convex"] else "concave (reversed)"
    print(f"\n{fn_name} ({tag}), m={out.params['m']:.3f}, M={out.params['M']:.3f}:")
    for link in out.links:
        status = "ok" if link.passed else "VIOLATED"
        note = "" if link.applicable else "  [vacuous: infinite coefficient]"
        print(f"  {link.description:<25} margin {link.margin:+.6e}  {status}{note}")

# the same chain survives at the level of eigenvalues, products and norms
out = check_eig_prod_norm(function_by_name("power:2"), mean_by_name("arithmetic:1/2"), A, B)
worst = min(link.margin for link in out.links if link.applicable)
print(f"\neigenvalue/product/norm chains: {len(out.links)} links, worst margin {worst:+.3e}")
print("all links hold:", out.passed)
