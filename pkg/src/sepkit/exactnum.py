"""Exact arithmetic over rationals and real quadratic irrationals.

Values of the form (p + q*sqrt(d))/r with arbitrary-precision integers p, q, r
and a squarefree non-square d >= 2 are closed under the operations needed by
the combinatorial layers: exact floor, sign, comparison, field arithmetic,
Moebius transforms and continued-fraction expansion with period detection.
No floating point is involved anywhere in this module.

Rationals are plain ``fractions.Fraction`` (exposed as ``BigRational``); the
stdlib type already maintains the positive-denominator, lowest-terms form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

BigRational = Fraction

_WIRE_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)$"
)


class MixedFieldError(ValueError):
    """Arithmetic or comparison between values over different sqrt(d) fields."""


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _is_squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    f = 3
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 2
    return True


def radical_sign(p: int, q: int, d: int) -> int:
    """Exact sign of p + q*sqrt(d), by squaring with sign tracking."""
    if q == 0:
        return _sign(p)
    if p == 0:
        return _sign(q)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    if p > 0:  # q < 0: positive iff p exceeds |q|*sqrt(d)
        return _sign(p * p - q * q * d)
    return _sign(q * q * d - p * p)


def two_radical_sign(a: int, b: int, d1: int, c: int, d2: int) -> int:
    """Exact sign of a + b*sqrt(d1) + c*sqrt(d2) for squarefree d1, d2."""
    if d1 == d2:
        return radical_sign(a, b + c, d1)
    left = radical_sign(a, b, d1)
    right = _sign(c)
    if right == 0:
        return left
    if left == 0:
        return right
    if left == right:
        return left
    # opposite signs: compare squares, which drops back to one radical
    pp = a * a + b * b * d1 - c * c * d2
    qq = 2 * a * b
    return left * radical_sign(pp, qq, d1)


@dataclass(frozen=True)
class ExactEigenvalue:
    """A real quadratic irrational (p + q*sqrt(d))/r in canonical form.

    Canonical means r > 0 and gcd(p, q, r) = 1; the constructor normalizes
    any representation with r != 0.  q must be nonzero (the value is
    irrational by construction) and d must be squarefree and not a square.
    Instances are immutable and safe to share across threads.
    """

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self) -> None:
        p, q, d, r = self.p, self.q, self.d, self.r
        if q == 0:
            raise ValueError("q = 0 would make the value rational")
        if r == 0:
            raise ValueError("zero denominator")
        if d < 2 or math.isqrt(d) ** 2 == d or not _is_squarefree(d):
            raise ValueError(f"d = {d} must be squarefree, non-square, >= 2")
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    # -- construction ------------------------------------------------------

    @classmethod
    def sqrt(cls, d: int) -> "ExactEigenvalue":
        return cls(0, 1, d, 1)

    @classmethod
    def from_wire(cls, text: str) -> "ExactEigenvalue":
        """Parse the canonical text form "(p+q*sqrt(d))/r"."""
        m = _WIRE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a valid eigenvalue literal: {text!r}")
        p, sign_q, q, d, r = m.groups()
        qv = int(q) if sign_q == "+" else -int(q)
        return cls(int(p), qv, int(d), int(r))

    def to_wire(self) -> str:
        sign_q = "+" if self.q >= 0 else "-"
        return f"({self.p}{sign_q}{abs(self.q)}*sqrt({self.d}))/{self.r}"

    def __str__(self) -> str:
        return self.to_wire()

    # -- exact queries -----------------------------------------------------

    def sign(self) -> int:
        return radical_sign(self.p, self.q, self.d)

    def floor(self) -> int:
        """Exact floor via integer-square-root bracketing of q*sqrt(d)."""
        s = math.isqrt(self.q * self.q * self.d)
        if self.q > 0:
            num = self.p + s  # lower bound on the numerator
        else:
            num = self.p - s - 1
        n = num // self.r
        # the estimate is off by at most one unit; fix up with exact signs
        while radical_sign(self.p - (n + 1) * self.r, self.q, self.d) >= 0:
            n += 1
        while radical_sign(self.p - n * self.r, self.q, self.d) < 0:
            n -= 1
        return n

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    # -- arithmetic (closed over the fixed sqrt(d) field) ------------------

    def _require_same_field(self, other: "ExactEigenvalue") -> None:
        if self.d != other.d:
            raise MixedFieldError(
                f"sqrt({self.d}) and sqrt({other.d}) values do not mix; "
                "see equising.compare_eigenvalues for cross-field comparison"
            )

    def __neg__(self) -> "ExactEigenvalue":
        return ExactEigenvalue(-self.p, -self.q, self.d, self.r)

    def add_int(self, k: int) -> "ExactEigenvalue":
        return ExactEigenvalue(self.p + k * self.r, self.q, self.d, self.r)

    def sub_int(self, k: int) -> "ExactEigenvalue":
        return self.add_int(-k)

    def reciprocal(self) -> "ExactEigenvalue":
        """Exact 1/x.  Total on this type: an irrational is never zero."""
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:  # unreachable for valid d, kept as a hard guard
            raise ZeroDivisionError("reciprocal of zero")
        return ExactEigenvalue(self.r * self.p, -self.r * self.q, self.d, norm)

    def _coerce(self, other) -> Fraction | None:
        if isinstance(other, int):
            return Fraction(other)
        if isinstance(other, Fraction):
            return other
        return None

    def __add__(self, other):
        f = self._coerce(other)
        if f is not None:
            return ExactEigenvalue(
                self.p * f.denominator + f.numerator * self.r,
                self.q * f.denominator,
                self.d,
                self.r * f.denominator,
            )
        if isinstance(other, ExactEigenvalue):
            self._require_same_field(other)
            q = self.q * other.r + other.q * self.r
            if q == 0:
                raise ValueError("sum is rational; use Fraction arithmetic")
            return ExactEigenvalue(
                self.p * other.r + other.p * self.r, q, self.d, self.r * other.r
            )
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExactEigenvalue):
            return self + (-other)
        f = self._coerce(other)
        if f is None:
            return NotImplemented
        return self + (-f)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        f = self._coerce(other)
        if f is not None:
            if f == 0:
                raise ValueError("product is rational zero")
            return ExactEigenvalue(
                self.p * f.numerator,
                self.q * f.numerator,
                self.d,
                self.r * f.denominator,
            )
        if isinstance(other, ExactEigenvalue):
            self._require_same_field(other)
            p = self.p * other.p + self.q * other.q * self.d
            q = self.p * other.q + other.p * self.q
            if q == 0:
                raise ValueError("product is rational; use Fraction arithmetic")
            return ExactEigenvalue(p, q, self.d, self.r * other.r)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactEigenvalue):
            return self * other.reciprocal()
        f = self._coerce(other)
        if f is None:
            return NotImplemented
        return self * (1 / f)

    def __rtruediv__(self, other):
        f = self._coerce(other)
        if f is None:
            return NotImplemented
        return self.reciprocal() * f

    # -- exact comparisons (same field, or against rationals) --------------

    def _cmp(self, other) -> int:
        f = self._coerce(other)
        if f is not None:
            return radical_sign(
                self.p * f.denominator - f.numerator * self.r,
                self.q * f.denominator,
                self.d,
            )
        if isinstance(other, ExactEigenvalue):
            self._require_same_field(other)
            return radical_sign(
                self.p * other.r - other.p * self.r,
                self.q * other.r - other.q * self.r,
                self.d,
            )
        raise TypeError(f"cannot compare ExactEigenvalue with {type(other)!r}")

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactEigenvalue):
            # canonical forms are unique, even across fields
            return (self.p, self.q, self.d, self.r) == (
                other.p,
                other.q,
                other.d,
                other.r,
            )
        if isinstance(other, (int, Fraction)):
            return False  # irrational
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0


@dataclass(frozen=True)
class CFExpansion:
    """A continued-fraction prefix [a0; a1, a2, ...] with optional period.

    ``period_start``/``period`` are populated once the exact Gauss iteration
    revisits a complete-quotient state, which happens for every quadratic
    irrational at small depth.  Partial quotients after the first are >= 1.
    """

    entries: tuple[int, ...]
    period_start: int | None = None
    period: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("empty expansion")
        if any(a < 1 for a in self.entries[1:]):
            raise ValueError("partial quotients after the first must be >= 1")
        if (self.period is None) != (self.period_start is None):
            raise ValueError("period and period_start come together")
        if self.period is not None:
            k0, block = self.period_start, self.period
            for i in range(k0, len(self.entries)):
                if self.entries[i] != block[(i - k0) % len(block)]:
                    raise ValueError("period does not replay the entries")

    def convergents(self) -> list[Fraction]:
        out = []
        pm1, pm2 = 1, 0
        qm1, qm2 = 0, 1
        for a in self.entries:
            pm1, pm2 = a * pm1 + pm2, pm1
            qm1, qm2 = a * qm1 + qm2, qm1
            out.append(Fraction(pm1, qm1))
        return out

    def __str__(self) -> str:
        head = str(self.entries[0])
        tail = ",".join(str(a) for a in self.entries[1:])
        text = f"[{head};{tail}]" if tail else f"[{head}]"
        if self.period is not None:
            text += " (period " + ",".join(str(a) for a in self.period) + ")"
        return text


def cf_expand(x: ExactEigenvalue, depth: int) -> CFExpansion:
    """First ``depth`` partial quotients of x > 0 by exact Gauss iteration.

    The canonical (p, q, r) triple of each complete quotient is tracked;
    the first repetition pins down the eventual period.  Irrationality
    guarantees the iteration never terminates, so any depth is reachable.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if x.sign() <= 0:
        raise ValueError("continued fraction expansion requires x > 0")
    entries: list[int] = []
    seen: dict[tuple[int, int, int], int] = {}
    period_start: int | None = None
    period: tuple[int, ...] | None = None
    cur = x
    for k in range(depth):
        key = (cur.p, cur.q, cur.r)
        if period is None:
            if key in seen:
                period_start = seen[key]
                period = tuple(entries[period_start:k])
            else:
                seen[key] = k
        a = cur.floor()
        entries.append(a)
        cur = cur.sub_int(a).reciprocal()
    return CFExpansion(tuple(entries), period_start, period)


def moebius_apply(matrix, lam: ExactEigenvalue) -> ExactEigenvalue:
    """Exact (c + d*lam)/(a + b*lam) for an integer matrix (a,b;c,d), det +1.

    ``matrix`` may be any object with integer attributes a, b, c, d.  The
    result lives over the same sqrt(d) field and is again irrational, so
    the operation is closed on ExactEigenvalue.
    """
    a, b, c, d = matrix.a, matrix.b, matrix.c, matrix.d
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant +1")
    dd, r = lam.d, lam.r
    num_p, num_q = c * r + d * lam.p, d * lam.q
    den_p, den_q = a * r + b * lam.p, b * lam.q
    if den_p == 0 and den_q == 0:  # a + b*lam = 0: impossible for det +1
        raise ValueError("pole: a + b*lam vanishes")
    norm = den_p * den_p - den_q * den_q * dd
    out_p = num_p * den_p - num_q * den_q * dd
    out_q = num_q * den_p - num_p * den_q
    return ExactEigenvalue(out_p, out_q, dd, norm)


def node_transform(lam: ExactEigenvalue) -> ExactEigenvalue:
    """Map lam to lam/(lam - 1), the involution swapping exponent conventions.

    For lam > 1 the continued fraction of the image is exactly the sequence
    of blow-up run lengths of the separator with exponent lam.
    """
    return lam / lam.sub_int(1)
