from sepkit import ExactEigenvalue


def ee(p, q, d, r):
    return ExactEigenvalue(p, q, d, r)


SQRT2 = ee(0, 1, 2, 1)
SQRT3 = ee(0, 1, 3, 1)
PHI = ee(1, 1, 5, 2)
