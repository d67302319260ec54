"""SL(2,Z) actions on foliated tori and rigidity of their lifts.

A torus map with homology matrix A lifts to a plane map H obeying the deck
relation H(u+m, v+n) = H(u,v) + A(m,n).  When H also carries the linear
foliation of slope lam to the one of slope lam~ = (c+d*lam)/(a+b*lam), the
lift is rigid:  H = H(0,0) + A + kappa*(1, lam~) with kappa doubly periodic.
This module verifies that normal form numerically on sampled lifts, and
enumerates/classifies the integer matrices compatible with a given exact
eigenvalue, down to the forced {+id, -id} answer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .equising import CuspSpec, equisingular_cusps
from .exactnum import ExactEigenvalue, cf_expand, moebius_apply, radical_sign

RECONSTRUCTION_TOL = 1e-9
ROUNDING_TOL = 1e-6
SLOPE_TOL = 1e-9
UNIT_MODULUS_TOL = 1e-12
DEFAULT_GRID = 64


class DecompositionError(ValueError):
    """A sampled lift fails the rigidity hypotheses beyond tolerance."""

    def __init__(self, kind: str, cell: tuple[int, int], value: float):
        self.kind = kind
        self.cell = cell
        self.value = value
        super().__init__(
            f"{kind} residual {value:.3e} at grid cell {cell} exceeds tolerance"
        )


@dataclass(frozen=True, order=True)
class UnimodularMatrix:
    """Integer 2x2 matrix (a, b; c, d) with determinant +1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be +1")

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_wire(cls, text: str) -> "UnimodularMatrix":
        rows = json.loads(text)
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def to_wire(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __str__(self) -> str:
        return self.to_wire()

    def __neg__(self) -> "UnimodularMatrix":
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, u, v):
        """Linear action on angle coordinates: (u,v) -> (au+bv, cu+dv)."""
        return self.a * u + self.b * v, self.c * u + self.d * v


def slope_transport(matrix: UnimodularMatrix, lam: float) -> float:
    """Slope of the image foliation: (c + d*lam)/(a + b*lam)."""
    den = matrix.a + matrix.b * lam
    if den == 0.0:
        raise ValueError("pole: a + b*lam vanishes")
    return (matrix.c + matrix.d * lam) / den


def _require_unit(z: complex, name: str) -> None:
    if abs(abs(z) - 1.0) > UNIT_MODULUS_TOL:
        raise ValueError(f"{name} must have unit modulus, got |{name}| = {abs(z)!r}")


def torus_monomial_map(
    matrix: UnimodularMatrix,
    mu0: complex,
    nu0: complex,
    eta: complex,
    xi: complex,
) -> tuple[complex, complex]:
    """Monomial torus homeomorphism (eta, xi) -> (mu0 eta^a xi^b, nu0 eta^c xi^d)."""
    for z, name in ((mu0, "mu0"), (nu0, "nu0"), (eta, "eta"), (xi, "xi")):
        _require_unit(z, name)
    return (
        mu0 * eta**matrix.a * xi**matrix.b,
        nu0 * eta**matrix.c * xi**matrix.d,
    )


@dataclass(frozen=True, eq=False)
class LiftSample:
    """A plane lift sampled on the grid (i/n, j/n), 0 <= i, j < 2n.

    The sample covers one full period shift in both directions on top of
    the fundamental square [0,1)^2, which is what makes the deck relation
    and the periodicity of the remainder observable rather than assumed.
    ``values[i, j]`` is the pair H(i/n, j/n).
    """

    n: int
    values: np.ndarray
    matrix: UnimodularMatrix
    lam: float
    lam_tilde: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("grid resolution must be >= 2")
        if self.values.shape != (2 * self.n, 2 * self.n, 2):
            raise ValueError(
                f"values must have shape (2n, 2n, 2) = {(2*self.n, 2*self.n, 2)}"
            )

    @classmethod
    def from_function(
        cls, fn, n: int, matrix: UnimodularMatrix, lam: float, lam_tilde: float
    ) -> "LiftSample":
        vals = np.empty((2 * n, 2 * n, 2), dtype=float)
        for i in range(2 * n):
            for j in range(2 * n):
                h1, h2 = fn(i / n, j / n)
                vals[i, j, 0] = h1
                vals[i, j, 1] = h2
        return cls(n, vals, matrix, lam, lam_tilde)

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        coords = np.arange(2 * self.n) / self.n
        return np.meshgrid(coords, coords, indexing="ij")


@dataclass(frozen=True, eq=False)
class LiftDecomposition:
    """Rigidity normal form H = base + A(u,v) + kappa(u,v)*(1, lam~).

    ``kappa`` is the scalar coefficient grid on the fundamental n x n
    square; the remainder is parallel to (1, lam~) so nothing else is
    stored.  ``residuals`` reports the worst deviations measured while
    decomposing (absent for synthetic interpolants).
    """

    base: tuple[float, float]
    matrix: UnimodularMatrix
    kappa: np.ndarray
    lam: float
    lam_tilde: float
    residuals: dict[str, float] | None = None

    def residual_report(self) -> str:
        if self.residuals is None:
            return json.dumps(None)
        return json.dumps({k: self.residuals[k] for k in sorted(self.residuals)})


def _max_cell(arr: np.ndarray) -> tuple[tuple[int, int], float]:
    flat = int(np.argmax(arr))
    cell = np.unravel_index(flat, arr.shape)
    return (int(cell[0]), int(cell[1])), float(arr[cell])


def decompose_lift(
    sample: LiftSample, tol: float = RECONSTRUCTION_TOL
) -> LiftDecomposition:
    """Split a sampled lift into base point, integer part and remainder.

    Checks, each within ``tol``: the deck relation against the declared
    matrix, parallelism of the remainder to (1, lam~), and double
    periodicity of the scalar remainder.  Any violation raises
    DecompositionError naming the worst grid cell.
    """
    a, b, c, d = sample.matrix.a, sample.matrix.b, sample.matrix.c, sample.matrix.d
    if abs(sample.lam_tilde - slope_transport(sample.matrix, sample.lam)) > SLOPE_TOL:
        raise ValueError("declared slopes are inconsistent with the matrix")
    n = sample.n
    vals = sample.values
    uu, vv = sample.grid()

    du = vals[n:, :, :] - vals[:n, :, :]  # H(u+1, v) - H(u, v), expect (a, c)
    dv = vals[:, n:, :] - vals[:, :n, :]  # H(u, v+1) - H(u, v), expect (b, d)
    deck_u = np.maximum(np.abs(du[:, :, 0] - a), np.abs(du[:, :, 1] - c))
    deck_v = np.maximum(np.abs(dv[:, :, 0] - b), np.abs(dv[:, :, 1] - d))
    cell_u, worst_u = _max_cell(deck_u)
    cell_v, worst_v = _max_cell(deck_v)
    deck_cell, deck_res = (cell_u, worst_u) if worst_u >= worst_v else (cell_v, worst_v)
    if deck_res > tol:
        raise DecompositionError("deck-relation", deck_cell, deck_res)

    base = (float(vals[0, 0, 0]), float(vals[0, 0, 1]))
    kappa_full = vals[:, :, 0] - base[0] - (a * uu + b * vv)
    parallel = np.abs(
        vals[:, :, 1] - base[1] - (c * uu + d * vv) - kappa_full * sample.lam_tilde
    )
    par_cell, par_res = _max_cell(parallel)
    if par_res > tol:
        raise DecompositionError("parallel", par_cell, par_res)

    per_u = np.abs(kappa_full[n:, :] - kappa_full[:n, :])
    per_v = np.abs(kappa_full[:, n:] - kappa_full[:, :n])
    cell_pu, worst_pu = _max_cell(per_u)
    cell_pv, worst_pv = _max_cell(per_v)
    per_cell, per_res = (
        (cell_pu, worst_pu) if worst_pu >= worst_pv else (cell_pv, worst_pv)
    )
    if per_res > tol:
        raise DecompositionError("periodicity", per_cell, per_res)

    return LiftDecomposition(
        base=base,
        matrix=sample.matrix,
        kappa=kappa_full[:n, :n].copy(),
        lam=sample.lam,
        lam_tilde=sample.lam_tilde,
        residuals={
            "max_deck_residual": deck_res,
            "max_parallel_residual": par_res,
            "max_periodicity_residual": per_res,
        },
    )


def extract_deck_matrix(
    sample: LiftSample | np.ndarray,
    n: int | None = None,
    rounding_tol: float = ROUNDING_TOL,
) -> UnimodularMatrix:
    """Estimate the deck matrix from unit shifts of the sampled lift.

    Columns are the averages of H(u+1,v) - H(u,v) and H(u,v+1) - H(u,v),
    rounded to integers; the estimate must round within ``rounding_tol``
    and have determinant +1.
    """
    if isinstance(sample, LiftSample):
        vals, n = sample.values, sample.n
    else:
        vals = sample
        if n is None:
            raise ValueError("grid resolution n is required with a raw array")
    du = vals[n:, :, :] - vals[:n, :, :]
    dv = vals[:, n:, :] - vals[:, :n, :]
    est = np.array(
        [
            [du[:, :, 0].mean(), dv[:, :, 0].mean()],
            [du[:, :, 1].mean(), dv[:, :, 1].mean()],
        ]
    )
    rounded = np.rint(est).astype(int)
    err = float(np.max(np.abs(est - rounded)))
    if err > rounding_tol:
        raise ValueError(f"deck matrix estimate {est.tolist()} is not integral")
    a, b = int(rounded[0, 0]), int(rounded[0, 1])
    c, d = int(rounded[1, 0]), int(rounded[1, 1])
    if a * d - b * c != 1:
        raise ValueError(f"deck matrix estimate [[{a},{b}],[{c},{d}]] is not unimodular")
    return UnimodularMatrix(a, b, c, d)


def synthesize_lift(decomp: LiftDecomposition) -> LiftSample:
    """Rebuild the sampled lift a decomposition describes (periodic kappa)."""
    n = decomp.kappa.shape[0]
    a, b, c, d = decomp.matrix.a, decomp.matrix.b, decomp.matrix.c, decomp.matrix.d
    kappa_full = np.tile(decomp.kappa, (2, 2))
    coords = np.arange(2 * n) / n
    uu, vv = np.meshgrid(coords, coords, indexing="ij")
    vals = np.empty((2 * n, 2 * n, 2), dtype=float)
    vals[:, :, 0] = decomp.base[0] + a * uu + b * vv + kappa_full
    vals[:, :, 1] = decomp.base[1] + c * uu + d * vv + kappa_full * decomp.lam_tilde
    return LiftSample(n, vals, decomp.matrix, decomp.lam, decomp.lam_tilde)


def interpolate_lifts(
    d0: LiftDecomposition, d1: LiftDecomposition, s: float
) -> LiftDecomposition:
    """Affine homotopy (1-s)*H_0 + s*H_1 at decomposition level.

    The straight-line blend of two lifts with the same matrix and slopes
    stays in the rigidity class; endpoints reproduce the inputs exactly.
    """
    if d0.matrix != d1.matrix:
        raise ValueError("lift homotopy requires equal deck matrices")
    if d0.lam != d1.lam or d0.lam_tilde != d1.lam_tilde:
        raise ValueError("lift homotopy requires equal slopes")
    if d0.kappa.shape != d1.kappa.shape:
        raise ValueError("kappa grids must have equal shape")
    if s == 0.0:
        return d0
    if s == 1.0:
        return d1
    return LiftDecomposition(
        base=(
            (1.0 - s) * d0.base[0] + s * d1.base[0],
            (1.0 - s) * d0.base[1] + s * d1.base[1],
        ),
        matrix=d0.matrix,
        kappa=(1.0 - s) * d0.kappa + s * d1.kappa,
        lam=d0.lam,
        lam_tilde=d0.lam_tilde,
    )


def _sign_condition(matrix: UnimodularMatrix, lam: ExactEigenvalue) -> bool:
    """a + b*lam and c + d*lam strictly both positive or both negative."""
    s1 = radical_sign(
        matrix.a * lam.r + matrix.b * lam.p, matrix.b * lam.q, lam.d
    )
    s2 = radical_sign(
        matrix.c * lam.r + matrix.d * lam.p, matrix.d * lam.q, lam.d
    )
    return s1 != 0 and s1 == s2


def unimodular_box(bound: int):
    """All determinant +1 integer matrices with entries in [-bound, bound]."""
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                num = 1 + b * c
                if a == 0:
                    if num != 0:
                        continue
                    out.extend(
                        UnimodularMatrix(0, b, c, d)
                        for d in range(-bound, bound + 1)
                    )
                    continue
                if num % a != 0:
                    continue
                d = num // a
                if -bound <= d <= bound:
                    out.append(UnimodularMatrix(a, b, c, d))
    return sorted(out)


def admissible_matrices(
    lam: ExactEigenvalue, lam_tilde: ExactEigenvalue, bound: int
) -> list[UnimodularMatrix]:
    """Unimodular matrices with entries within ``bound`` carrying lam to
    lam_tilde exactly and satisfying the two-sided sign condition."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for mat in unimodular_box(bound):
        if not _sign_condition(mat, lam):
            continue
        if moebius_apply(mat, lam) == lam_tilde:
            out.append(mat)
    return out


def classify_equisingular_matrices(
    lam: ExactEigenvalue, bound: int, conv_depth: int
) -> list[UnimodularMatrix]:
    """Matrices surviving the cusp-transport equisingularity filter.

    Every sign-admissible matrix within ``bound`` is tested against the
    first ``conv_depth`` continued-fraction convergents n/m of lam: the
    cusp (m, n) must stay equisingular to (|am+bn|, |cm+dn|).  Two or more
    convergents force the answer {+id, -id}; a single one leaves the
    quadratic relation underdetermined and extra matrices survive.
    """
    if conv_depth < 1:
        raise ValueError("conv_depth must be >= 1")
    convs = cf_expand(lam, conv_depth).convergents()
    pairs = [(f.denominator, f.numerator) for f in convs]  # (m, n), n/m ~ lam
    survivors = []
    for mat in unimodular_box(bound):
        if not _sign_condition(mat, lam):
            continue
        ok = True
        for m, n in pairs:
            mm = mat.a * m + mat.b * n
            nn = mat.c * m + mat.d * n
            if mm == 0 or nn == 0 or (mm > 0) != (nn > 0):
                ok = False
                break
            if not equisingular_cusps(CuspSpec(m, n), CuspSpec(abs(mm), abs(nn))):
                ok = False
                break
        if ok:
            survivors.append(mat)
    return survivors
