"""Equisingularity decisions for separators and monomial cusps.

Two separator germs are equisingular exactly when their exponents agree
after normalizing into (1, oo) by inversion; the combinatorial witness is
prefix-wise equality of the blow-up proximity matrices.  Everything here
is float-free: even eigenvalues over different sqrt(d) fields are compared
by an exact sign evaluation of their difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blowup import proximity_matrix, resolve
from .exactnum import ExactEigenvalue, two_radical_sign


@dataclass(frozen=True)
class SeparatorSpec:
    """A separator |y| = c |x|^lam.  The scale c never affects decisions
    (a linear coordinate change removes it); it is kept for numeric use."""

    eigenvalue: ExactEigenvalue
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.eigenvalue.sign() <= 0:
            raise ValueError("eigenvalue must be positive")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class CuspSpec:
    """The monomial cusp curve (z^m, z^n) with coprime positive m, n."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError("cusp exponents must be positive")
        if math.gcd(self.m, self.n) != 1:
            raise ValueError("cusp exponents must be coprime")


def normalize_eigenvalue(lam: ExactEigenvalue) -> ExactEigenvalue:
    """Return lam if lam > 1, else 1/lam: the representative in (1, oo)."""
    if lam.sign() <= 0:
        raise ValueError("eigenvalue must be positive")
    return lam if lam > 1 else lam.reciprocal()


def compare_eigenvalues(l1: ExactEigenvalue, l2: ExactEigenvalue) -> int:
    """Exact sign of l1 - l2, valid across different sqrt(d) fields."""
    return two_radical_sign(
        l1.p * l2.r - l2.p * l1.r,
        l1.q * l2.r,
        l1.d,
        -l2.q * l1.r,
        l2.d,
    )


def equisingular_separators(s1: SeparatorSpec, s2: SeparatorSpec) -> bool:
    """Equisingularity decision: normalized eigenvalues equal, exactly."""
    a = normalize_eigenvalue(s1.eigenvalue)
    b = normalize_eigenvalue(s2.eigenvalue)
    return compare_eigenvalues(a, b) == 0


def equisingular_prefix(s1: SeparatorSpec, s2: SeparatorSpec, depth: int) -> bool:
    """Compare the proximity matrices of the first ``depth`` cluster points.

    Inversion symmetry of the germ makes this agree with the full decision
    in the limit: lam and 1/lam produce identical clusters.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    m1 = proximity_matrix(resolve(s1.eigenvalue, depth))
    m2 = proximity_matrix(resolve(s2.eigenvalue, depth))
    return bool(np.array_equal(m1, m2))


def equisingular_cusps(c1: CuspSpec, c2: CuspSpec) -> bool:
    """Monomial cusps are equisingular iff {m,n} match as unordered pairs."""
    return {c1.m, c1.n} == {c2.m, c2.n}
