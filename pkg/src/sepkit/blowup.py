"""Blow-up state machine for nodal separator germs.

One step blows up the current infinitely-near point of the separator
|y| = |x|^mu and rewrites the germ in the chart containing the next point:

* mu > 1 (chart y = x t):   |t| = |x|^(mu-1); the {y=0}-side divisor is
  retained through the new point and the fresh exceptional divisor takes
  the {x=0} role.
* mu < 1 (chart x = s y):   |s| = |y|^(1/mu-1); the {x=0}-side divisor is
  retained and moves to the {y=0} role.

Iterating from the node germ emits the sequence of infinitely-near points,
the divisor each one sits on besides the newest exceptional one, and the
proximity sets of the cluster.  Run lengths of the retained divisors
reproduce, exactly, the continued fraction of lam/(lam-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .exactnum import ExactEigenvalue


@dataclass(frozen=True)
class DivisorId:
    """Index j >= 1 names E_j, the exceptional divisor of the j-th blow-up.

    Index 0 is the initial separatrix germ {y=0}; index -1 is the other
    separatrix germ {x=0}, needed when the starting exponent is below one.
    Neither axis germ is an exceptional divisor.
    """

    index: int

    @property
    def is_exceptional(self) -> bool:
        return self.index >= 1

    @property
    def name(self) -> str:
        if self.index == 0:
            return "{y=0}"
        if self.index == -1:
            return "{x=0}"
        return f"E{self.index}"

    def __str__(self) -> str:
        return self.name


AXIS_Y = DivisorId(0)
AXIS_X = DivisorId(-1)


@dataclass(frozen=True)
class ResolutionState:
    """Local model |y_loc| = |x_loc|^mu with named axis divisors.

    ``dx`` is the divisor {x_loc = 0}, ``dy`` the divisor {y_loc = 0};
    ``step`` counts completed blow-ups.
    """

    mu: ExactEigenvalue
    dx: DivisorId
    dy: DivisorId
    step: int = 0

    def __post_init__(self) -> None:
        if self.mu.sign() <= 0:
            raise ValueError("exponent must be positive")
        if self.dx == self.dy:
            raise ValueError("axis divisors must differ")


@dataclass(frozen=True)
class PointRecord:
    j: int
    new_divisor: DivisorId
    retained_divisor: DivisorId
    exponent_after: ExactEigenvalue


@dataclass(frozen=True)
class ResolutionRecord:
    """Log of a resolve() run: points, proximity sets and dual-graph data.

    ``proximity[j-1]`` is the set of point indices i < j with p_j proximate
    to p_i, where index 0 stands for the origin p_0.  ``weights`` holds the
    running self-intersection of each exceptional divisor and ``edges`` the
    pairs of exceptional divisors that still meet.
    """

    eigenvalue: ExactEigenvalue
    points: tuple[PointRecord, ...]
    proximity: tuple[tuple[int, ...], ...]
    weights: dict[int, int] = field(compare=False)
    edges: frozenset[tuple[int, int]] = field(compare=False)

    @property
    def depth(self) -> int:
        return len(self.points)

    def retained_sequence(self) -> tuple[DivisorId, ...]:
        return tuple(pt.retained_divisor for pt in self.points)

    def to_json_dict(self) -> dict:
        return {
            "eigenvalue": self.eigenvalue.to_wire(),
            "depth": self.depth,
            "points": [
                {
                    "j": pt.j,
                    "divisor": pt.new_divisor.name,
                    "retained": pt.retained_divisor.name,
                    "exponent_after": pt.exponent_after.to_wire(),
                }
                for pt in self.points
            ],
            "proximity": [list(row) for row in self.proximity],
            "weights": {f"E{i}": w for i, w in sorted(self.weights.items())},
            "edges": sorted([f"E{i}", f"E{j}"] for i, j in self.edges),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_dot(self) -> str:
        """Dual graph: nodes are exceptional divisors with self-intersections."""
        lines = ["graph dual {"]
        for i, w in sorted(self.weights.items()):
            lines.append(f'  E{i} [label="E{i} ({w})"];')
        for i, j in sorted(self.edges):
            lines.append(f"  E{i} -- E{j};")
        lines.append("}")
        return "\n".join(lines)


def blowup_step(state: ResolutionState) -> tuple[ResolutionState, DivisorId]:
    """One blow-up of the current point; returns the new state and the old
    divisor retained through the new point."""
    fresh = DivisorId(state.step + 1)
    if state.mu > 1:
        new = ResolutionState(state.mu.sub_int(1), fresh, state.dy, state.step + 1)
        return new, state.dy
    new = ResolutionState(
        state.mu.reciprocal().sub_int(1), fresh, state.dx, state.step + 1
    )
    return new, state.dx


def resolve(lam: ExactEigenvalue, depth: int) -> ResolutionRecord:
    """Blow up the node germ |y| = |x|^lam ``depth`` times.

    Each infinitesimal neighborhood contains a single point of the
    separator, so the infinitely-near points p_1, p_2, ... form a chain;
    p_j sits on the fresh divisor E_j and on the retained one.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if lam.sign() <= 0:
        raise ValueError("eigenvalue must be positive")
    state = ResolutionState(lam, AXIS_X, AXIS_Y, 0)
    points: list[PointRecord] = []
    proximity: list[tuple[int, ...]] = []
    weights: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    for j in range(1, depth + 1):
        prev = state
        state, retained = blowup_step(state)
        points.append(PointRecord(j, DivisorId(j), retained, state.mu))
        # p_j lies on E_j = exc(p_{j-1}) and, when the retained divisor is
        # exceptional E_i = exc(p_{i-1}), also on that strict transform.
        prox = {j - 1}
        if retained.is_exceptional:
            prox.add(retained.index - 1)
        proximity.append(tuple(sorted(prox)))
        # dual-graph bookkeeping: the blown-up point separates the two
        # divisors through it and the fresh -1 curve meets both.
        weights[j] = -1
        for old in (prev.dx, prev.dy):
            if old.is_exceptional:
                weights[old.index] -= 1
                edges.add((min(old.index, j), max(old.index, j)))
        if prev.dx.is_exceptional and prev.dy.is_exceptional:
            pair = (min(prev.dx.index, prev.dy.index), max(prev.dx.index, prev.dy.index))
            edges.discard(pair)
    return ResolutionRecord(
        eigenvalue=lam,
        points=tuple(points),
        proximity=tuple(proximity),
        weights=weights,
        edges=frozenset(edges),
    )


def run_length_encoding(rec: ResolutionRecord) -> tuple[int, ...]:
    """Certified run lengths (n_1, n_2, ...) of the retained-divisor log.

    n_1 is one more than the initial run of E_1 among entries j >= 2; the
    later n_k are the lengths of the successive constant runs.  Only runs
    closed by a differing entry within the recorded depth are reported, so
    the output is exact wherever it is defined; it equals the continued
    fraction of lam/(lam-1), entrywise, for lam > 1.  (Narrative
    conventions that index each run by the divisor created one step later
    list the same lengths on shifted labels.)
    """
    rs = rec.retained_sequence()
    if len(rs) < 2:
        raise ValueError("depth too small to certify any complete run")
    i = 1
    n1 = 1
    while i < len(rs) and rs[i].index == 1:
        i += 1
        n1 += 1
    if i == len(rs):
        raise ValueError("depth too small to certify any complete run")
    out = [n1]
    j = i
    while j < len(rs):
        j2 = j
        while j2 < len(rs) and rs[j2] == rs[j]:
            j2 += 1
        if j2 == len(rs):
            break  # final run not closed: uncertified
        out.append(j2 - j)
        j = j2
    return tuple(out)


def proximity_matrix(rec: ResolutionRecord) -> np.ndarray:
    """0/1 proximity matrix of the cluster p_0, ..., p_{depth-1}.

    Row j has a one in column j-1 (every point is proximate to its
    predecessor) and, when the divisor retained at step j is exceptional
    E_i, a second one in column i-1 for its creating point.  Rows with two
    ones are the satellite points, rows with a single one the free ones.
    """
    depth = rec.depth
    mat = np.zeros((depth, depth), dtype=int)
    for j in range(1, depth):
        mat[j, j - 1] = 1
        retained = rec.points[j - 1].retained_divisor
        if retained.is_exceptional:
            mat[j, retained.index - 1] = 1
    return mat
