"""Kubo-Ando matrix means: the catalog, the mean ordering, and the entropy.

Every mean is evaluated through its representing function h via
A sigma B = A^(1/2) h(A^(-1/2) B A^(-1/2)) A^(1/2); for commuting operands
this reduces to the familiar scalar means entrywise.
"""

import numpy as np

from opmeans import (
    loewner_leq,
    mean,
    mean_by_name,
    mean_catalog,
    relative_operator_entropy,
)
from opmeans.randgen import GeneratorConfig, derive_stream_seed, random_pd

A = np.diag([1.0, 4.0])
B = np.diag([2.0, 3.0])
print("commuting operands A = diag(1,4), B = diag(2,3):")
for name in ("harmonic:1/2", "geometric:1/2", "arithmetic:1/2"):
    out = mean(mean_by_name(name), A, B).entries
    print(f"  {name:<15} -> diag {np.round(np.diagonal(out).real, 6)}")

print("\ncatalog:", [m.name for m in mean_catalog()])

# harmonic <= geometric <= arithmetic in the Loewner order, at every weight
cfg = GeneratorConfig(4, 0.5, 4.0)
X = random_pd(cfg, derive_stream_seed(7, 0))
Y = random_pd(cfg, derive_stream_seed(7, 1))
print("\nmean ordering on a random positive definite pair (dim 4):")
for t in ("1/4", "1/2", "3/4"):
    hm = mean(mean_by_name(f"harmonic:{t}"), X, Y)
    gm = mean(mean_by_name(f"geometric:{t}"), X, Y)
    am = mean(mean_by_name(f"arithmetic:{t}"), X, Y)
    r1 = loewner_leq(hm, gm)
    r2 = loewner_leq(gm, am)
    print(f"  t={t}: harmonic <= geometric margin {r1.margin:.3e}, "
          f"geometric <= arithmetic margin {r2.margin:.3e}")

# the relative operator entropy is the perspective of the logarithm
S = relative_operator_entropy(X, Y).entries
print("\nrelative operator entropy S(X|Y) eigenvalues:",
      np.round(np.linalg.eigvalsh(S), 4), "(may be indefinite)")
print("S(X|X) norm:", np.linalg.norm(relative_operator_entropy(X, X).entries, 2))
