"""Hermitian functional calculus, absolute values, and unitarily invariant norms.

Walks through the core kernels: eigendecomposition with a deterministic
basis convention, applying scalar functions spectrally, the polar absolute
value, and the norm catalog.
"""

import numpy as np

from opmeans import (
    apply_fn,
    eigh,
    function_by_name,
    matrix_abs,
    norm,
    norm_catalog,
    singular_values,
)

A = np.array([[2.0, 1.0], [1.0, 3.0]])
print("A =\n", A)

spectrum = eigh(A)
print("\neigenvalues (decreasing):", np.round(spectrum.eigenvalues, 6))
print("reconstruction error:", np.linalg.norm(spectrum.reconstruct() - A, 2))

for name in ("power:2", "sqrt", "log1p", "expm1"):
    f = function_by_name(name)
    image = apply_fn(f, A).entries
    print(f"\n{name}(A) =\n", np.round(image.real, 6))

# the absolute value of an indefinite matrix flips negative eigenvalues
ind = np.diag([2.0, -1.0])
print("\n|diag(2, -1)| =\n", matrix_abs(ind).entries.real)

# every catalog norm is a function of the singular values
M = np.array([[0.0, 3.0], [-4.0, 0.0]])
print("\nsingular values of M:", singular_values(M))
for kind in norm_catalog(2):
    print(f"  {kind.label():<12} {norm(M, kind):.6f}")
