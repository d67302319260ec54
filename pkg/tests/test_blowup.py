import json
import random

import numpy as np
import pytest

from sepkit import (
    DivisorId,
    ResolutionState,
    blowup_step,
    cf_expand,
    node_transform,
    proximity_matrix,
    resolve,
    run_length_encoding,
)
from sepkit.blowup import AXIS_X, AXIS_Y

from conftest import PHI, SQRT2, SQRT3, ee


def names(rec):
    return [d.name for d in rec.retained_sequence()]


# -- single step -------------------------------------------------------------


def test_step_exponent_above_one():
    state = ResolutionState(SQRT2, AXIS_X, AXIS_Y, 0)
    new, retained = blowup_step(state)
    assert retained == AXIS_Y
    assert new.mu == SQRT2.sub_int(1)
    assert new.dx == DivisorId(1) and new.dy == AXIS_Y


def test_step_exponent_below_one():
    state = ResolutionState(SQRT2.sub_int(1), DivisorId(1), AXIS_Y, 1)
    new, retained = blowup_step(state)
    assert retained == DivisorId(1)
    assert new.mu == SQRT2
    assert new.dx == DivisorId(2) and new.dy == DivisorId(1)


def test_step_exponent_orbit_period_two():
    state = ResolutionState(SQRT2, AXIS_X, AXIS_Y, 0)
    state, _ = blowup_step(state)
    state, _ = blowup_step(state)
    assert state.mu == SQRT2  # fresh divisors, same exponent


# -- resolve -----------------------------------------------------------------


def test_resolve_sqrt2_retained_sequence():
    rec = resolve(SQRT2, 7)
    assert names(rec) == ["{y=0}", "E1", "E1", "E3", "E3", "E5", "E5"]


def test_resolve_phi_alternates():
    rec = resolve(PHI, 5)
    assert names(rec) == ["{y=0}", "E1", "E2", "E3", "E4"]


def test_resolve_depth_one():
    rec = resolve(ee(7, 3, 11, 5), 1)
    assert rec.depth == 1
    assert rec.points[0].new_divisor == DivisorId(1)


def test_resolve_small_exponent_retains_x_axis():
    rec = resolve(SQRT2.reciprocal(), 3)
    assert rec.points[0].retained_divisor == AXIS_X


# -- run-length encoding -------------------------------------------------


def test_rle_examples():
    assert run_length_encoding(resolve(SQRT2, 8)) == (3, 2, 2)
    assert run_length_encoding(resolve(PHI, 8)) == (2, 1, 1, 1, 1, 1)
    assert run_length_encoding(resolve(SQRT3, 6))[0] == 2


def test_rle_matches_node_cf():
    assert run_length_encoding(resolve(SQRT3, 6)) == (2, 2, 1)
    cf = cf_expand(node_transform(SQRT3), 6)
    assert cf.entries[:3] == (2, 2, 1)


def test_rle_depth_too_small():
    with pytest.raises(ValueError):
        run_length_encoding(resolve(SQRT2, 1))
    with pytest.raises(ValueError):
        run_length_encoding(resolve(SQRT2, 3))  # E1 run still open


def test_rle_is_cf_prefix_on_random_eigenvalues():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        d = rng.choice([2, 3, 5, 7, 13])
        lam = ee(rng.randint(-15, 15), rng.choice([1, 2, 3]), d, rng.randint(1, 9))
        if not (lam > 1 and lam < 12):
            continue
        cf = cf_expand(node_transform(lam), 64)
        if cf.entries[0] > 30:
            continue
        rle = run_length_encoding(resolve(lam, 64))
        assert len(rle) >= 1
        assert rle == cf.entries[: len(rle)]
        checked += 1


def test_exponent_orbit_eventually_periodic():
    for lam in (SQRT2, PHI, SQRT3, ee(3, 1, 13, 2)):
        rec = resolve(lam, 64)
        seen = {}
        hit = False
        for pt in rec.points:
            key = pt.exponent_after
            if key in seen:
                hit = True
                break
            seen[key] = pt.j
        assert hit


# -- proximity ---------------------------------------------------------------


def test_proximity_depth_one_is_zero_matrix():
    mat = proximity_matrix(resolve(SQRT2, 1))
    assert mat.shape == (1, 1)
    assert mat[0, 0] == 0


def test_proximity_sqrt2_depth4():
    mat = proximity_matrix(resolve(SQRT2, 4))
    expected = np.array(
        [
            [0, 0, 0, 0],
            [1, 0, 0, 0],  # p1 free, proximate to the origin
            [1, 1, 0, 0],  # p2 on E2 and E1: satellite
            [1, 0, 1, 0],  # p3 on E3 and E1: satellite
        ]
    )
    assert np.array_equal(mat, expected)


def test_proximity_rows_have_one_or_two_ones():
    for lam in (SQRT2, PHI, ee(2, 1, 2, 1)):
        mat = proximity_matrix(resolve(lam, 32))
        sums = mat.sum(axis=1)
        assert sums[0] == 0
        assert set(sums[1:]) <= {1, 2}
        # predecessor proximity always present
        for j in range(1, mat.shape[0]):
            assert mat[j, j - 1] == 1


def test_free_points_are_exactly_axis_retentions():
    lam = ee(2, 1, 2, 1)  # 2 + sqrt(2): three free points, then satellites
    rec = resolve(lam, 16)
    mat = proximity_matrix(resolve(lam, 17))
    for j, pt in enumerate(rec.points, start=1):
        if j >= mat.shape[0]:
            break
        free = mat[j].sum() == 1
        assert free == (not pt.retained_divisor.is_exceptional)


def test_equal_cf_prefixes_give_equal_matrix_prefixes():
    # sqrt(2) and sqrt(3) share the first proximity rows, then diverge
    m2 = proximity_matrix(resolve(SQRT2, 8))
    m3 = proximity_matrix(resolve(SQRT3, 8))
    assert np.array_equal(m2[:3, :3], m3[:3, :3])
    assert not np.array_equal(m2, m3)


def test_proximity_matrix_prefix_nesting():
    big = proximity_matrix(resolve(SQRT2, 20))
    small = proximity_matrix(resolve(SQRT2, 9))
    assert np.array_equal(big[:9, :9], small)


# -- serialization -----------------------------------------------------------


def test_json_round_trip():
    rec = resolve(SQRT2, 5)
    payload = json.loads(rec.to_json())
    assert payload["eigenvalue"] == "(0+1*sqrt(2))/1"
    assert payload["depth"] == 5
    assert payload["points"][0]["retained"] == "{y=0}"
    assert payload["proximity"][1] == [0, 1]
    assert payload["weights"]["E1"] <= -1


def test_dot_depth_one():
    dot = resolve(PHI, 1).to_dot()
    assert 'E1 [label="E1 (-1)"]' in dot
    assert "--" not in dot


def test_dot_edges_present():
    dot = resolve(SQRT2, 4).to_dot()
    assert dot.startswith("graph dual {")
    assert "E3 -- E4;" in dot
