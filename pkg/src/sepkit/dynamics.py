"""Numeric geometry: radial bidisc coordinates, explicit separator
homeomorphisms, convergent cusp transport and leaf-density statistics.

This is the double-precision side of the package.  Exact eigenvalues are
converted to floats only for evaluation; every decision (equisingularity,
matrix classification) stays with the exact modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equising import CuspSpec, equisingular_cusps
from .exactnum import ExactEigenvalue, cf_expand
from .torusmaps import UnimodularMatrix, _require_unit, slope_transport

SLOPE_TOL = 1e-9
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class BidiscRadialCoords:
    """Unique writing (x, y) = (t^alpha * eta, t^beta * xi) with
    max(|eta|, |xi|) = 1: the radial coordinate plus a bidisc-boundary
    point, for the exponent pair (alpha, beta)."""

    t: float
    eta: complex
    xi: complex
    exponents: tuple[float, float]


def radial_decompose(
    x: complex, y: complex, alpha: float, beta: float
) -> BidiscRadialCoords:
    """Decompose a nonzero point of the closed unit bidisc radially.

    t = max(|x|^(1/alpha), |y|^(1/beta)) is the unique scale putting the
    rescaled point on the bidisc boundary.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("exponents must be positive")
    ax, ay = abs(x), abs(y)
    if ax > 1 + BOUNDARY_TOL or ay > 1 + BOUNDARY_TOL:
        raise ValueError("point lies outside the closed unit bidisc")
    if ax == 0.0 and ay == 0.0:
        raise ValueError("the origin has no radial decomposition")
    t = max(ax ** (1.0 / alpha), ay ** (1.0 / beta))
    return BidiscRadialCoords(t, x / t**alpha, y / t**beta, (alpha, beta))


def cusp_to_separator_map(
    x: complex,
    y: complex,
    m: int,
    n: int,
    lam: float,
    direction: str = "forward",
) -> tuple[complex, complex]:
    """Radial-exponent change (t^m eta, t^n xi) <-> (t eta, t^lam xi).

    The forward map is a homeomorphism of the closed bidisc fixing its
    boundary pointwise; it carries the cusp locus |y| = |x|^(n/m) onto the
    separator |y| = |x|^lam.  ``direction="inverse"`` applies the inverse.
    """
    if math.gcd(m, n) != 1:
        raise ValueError("m and n must be coprime")
    if lam <= 0:
        raise ValueError("lam must be positive")
    if x == 0 and y == 0:
        return (0.0, 0.0)
    if direction == "forward":
        rc = radial_decompose(x, y, float(m), float(n))
        return (rc.t * rc.eta, rc.t**lam * rc.xi)
    if direction == "inverse":
        rc = radial_decompose(x, y, 1.0, lam)
        return (rc.t**m * rc.eta, rc.t**n * rc.xi)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class SeparatorMapSpec:
    """Data of the boundary-torus monomial map extended radially over the
    separator: matrix, boundary phases and the two slopes."""

    matrix: UnimodularMatrix
    mu0: complex
    nu0: complex
    lam: float
    lam_tilde: float

    def __post_init__(self) -> None:
        _require_unit(self.mu0, "mu0")
        _require_unit(self.nu0, "nu0")
        if abs(self.lam_tilde - slope_transport(self.matrix, self.lam)) > SLOPE_TOL:
            raise ValueError("lam_tilde is not the transported slope")
        if self.lam <= 0 or self.lam_tilde <= 0:
            raise ValueError("slopes must be positive")


def separator_boundary_map(
    spec: SeparatorMapSpec, t: float, eta: complex, xi: complex
) -> tuple[complex, complex]:
    """Image of (t eta, t^lam xi):  (t mu0 eta^a xi^b,  t^lam~ nu0 eta^c xi^d).

    Carries the separator |y| = |x|^lam onto |y| = |x|^lam~ and restricts
    to the monomial torus map at t = 1.
    """
    _require_unit(eta, "eta")
    _require_unit(xi, "xi")
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    if t == 0.0:
        return (0.0, 0.0)
    mat = spec.matrix
    return (
        t * spec.mu0 * eta**mat.a * xi**mat.b,
        t**spec.lam_tilde * spec.nu0 * eta**mat.c * xi**mat.d,
    )


@dataclass(frozen=True)
class ApproxCurveResult:
    source: CuspSpec
    image: CuspSpec
    phases: tuple[complex, complex]
    equisingular: bool


def approx_curve(
    lam: ExactEigenvalue, conv_index: int, spec: SeparatorMapSpec
) -> ApproxCurveResult:
    """Transport the convergent monomial curve (z^m, z^n) through the map.

    The conv_index-th continued-fraction convergent n/m of lam picks the
    source cusp; its image is the cusp (|am+bn|, |cm+dn|) with the spec's
    phases.  Raises if the convergent fails the same-sign condition, i.e.
    is not yet close enough to lam for the given matrix.
    """
    if conv_index < 1:
        raise ValueError("conv_index must be >= 1")
    conv = cf_expand(lam, conv_index).convergents()[conv_index - 1]
    m, n = conv.denominator, conv.numerator
    mat = spec.matrix
    mm = mat.a * m + mat.b * n
    nn = mat.c * m + mat.d * n
    if mm == 0 or nn == 0 or (mm > 0) != (nn > 0):
        raise ValueError(
            f"sign condition fails for convergent {n}/{m}: "
            f"am+bn = {mm}, cm+dn = {nn}"
        )
    source = CuspSpec(m, n)
    image = CuspSpec(abs(mm), abs(nn))
    return ApproxCurveResult(
        source=source,
        image=image,
        phases=(spec.mu0, spec.nu0),
        equisingular=equisingular_cusps(source, image),
    )


def leaf_gap_statistics(lam: float, count: int) -> tuple[int, list[float]]:
    """Gap spectrum of the circle orbit {frac(j*lam)}, j = 0..count-1.

    Returns the number of distinct gap lengths (within 1e-9) and all gaps
    sorted ascending; for irrational lam the distinct count never exceeds
    three and the gaps always sum to one.
    """
    if count < 2:
        raise ValueError("need at least two orbit points")
    orbit = np.sort((lam * np.arange(count)) % 1.0)
    gaps = np.empty(count)
    gaps[:-1] = np.diff(orbit)
    gaps[-1] = 1.0 - orbit[-1] + orbit[0]
    gaps = np.sort(gaps)
    distinct = 1 + int(np.count_nonzero(np.diff(gaps) > 1e-9))
    return distinct, gaps.tolist()
