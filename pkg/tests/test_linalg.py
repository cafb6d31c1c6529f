import random
from fractions import Fraction

import pytest

from flipbraid.linalg import (DimensionError, Matrix, SingularMatrixError,
                              char_poly, mat_inverse, mat_mul,
                              poly_eval_matrix)

A = Matrix([[Fraction(1, 2), Fraction(-1, 2)],
            [Fraction(1, 2), Fraction(3, 2)]])
B = Matrix([[Fraction(3, 2), Fraction(1, 2)],
            [Fraction(-1, 2), Fraction(1, 2)]])


def random_matrix(rng, rows, cols):
    return Matrix([[Fraction(rng.randint(-30, 30), rng.randint(1, 9))
                    for _ in range(cols)] for _ in range(rows)])


def test_identity_product():
    m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert mat_mul(Matrix.identity(3), m) == m
    assert mat_mul(m, Matrix.identity(3)) == m


def test_two_by_two_product_is_identity():
    # the mutually inverse 2x2 flip blocks
    assert mat_mul(A, B).is_identity()
    assert (A * B).is_identity()


def test_product_dimension_mismatch():
    with pytest.raises(DimensionError) as err:
        mat_mul(Matrix.identity(3), Matrix.identity(4))
    assert "3x3" in str(err.value) and "4x4" in str(err.value)


def test_inverse_identity():
    for k in (1, 2, 5):
        assert mat_inverse(Matrix.identity(k)) == Matrix.identity(k)


def test_inverse_flip_block():
    assert mat_inverse(B) == A


def test_inverse_singular():
    with pytest.raises(SingularMatrixError, match="singular"):
        mat_inverse(Matrix([[1, 2], [2, 4]]))


def test_inverse_non_square():
    with pytest.raises(DimensionError):
        mat_inverse(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_charpoly_flip_block():
    assert char_poly(B) == [1, -2, 1]


def test_charpoly_identity_11():
    from math import comb
    coeffs = char_poly(Matrix.identity(11))
    assert coeffs == [Fraction((-1) ** k * comb(11, k)) for k in range(12)]
    assert -coeffs[1] == Matrix.identity(11).trace() == 11


def test_cayley_hamilton_random():
    rng = random.Random(12)
    for _ in range(10):
        m = random_matrix(rng, 4, 4)
        assert poly_eval_matrix(char_poly(m), m) == Matrix.zero(4, 4)


def test_associativity_random():
    rng = random.Random(99)
    for _ in range(6):
        k = rng.randint(2, 12)
        a = random_matrix(rng, k, k)
        b = random_matrix(rng, k, k)
        c = random_matrix(rng, k, k)
        assert (a * b) * c == a * (b * c)


def test_double_inverse_random():
    rng = random.Random(5)
    done = 0
    while done < 8:
        m = random_matrix(rng, 5, 5)
        try:
            inv = mat_inverse(m)
        except SingularMatrixError:
            continue
        assert (m * inv).is_identity() and (inv * m).is_identity()
        assert mat_inverse(inv) == m
        done += 1


def test_exactness_addition_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        a = Fraction(rng.randint(-10 ** 9, 10 ** 9), rng.randint(1, 10 ** 6))
        b = Fraction(rng.randint(-10 ** 9, 10 ** 9), rng.randint(1, 10 ** 6))
        assert (a + b) - b == a


def test_json_round_trip():
    data = B.to_json_dict()
    assert data == {"rows": 2, "cols": 2,
                    "entries": [["3/2", "1/2"], ["-1/2", "1/2"]]}
    assert Matrix.from_json_dict(data) == B


def test_json_integer_rendering():
    assert Matrix([[1]]).to_json_dict()["entries"] == [["1"]]
