"""Shared helpers: random valid configurations and a winding-number oracle."""

from fractions import Fraction

from flipbraid import Configuration, LabeledPoint, validate_general_position

BOUNDARY = (
    (Fraction(-50), Fraction(-30)),
    (Fraction(50), Fraction(-30)),
    (Fraction(0), Fraction(60)),
)


def random_configuration(rng, n) -> Configuration:
    """Rejection-sample n interior points in general position."""
    boundary_pts = [
        LabeledPoint.make(i + 1, x, y, i + 1)
        for i, (x, y) in enumerate(BOUNDARY)
    ]
    while True:
        interior = []
        for k in range(n):
            x = Fraction(rng.randint(-20 * 8, 20 * 8), 8)
            y = Fraction(rng.randint(-20 * 8, 20 * 8), 8)
            interior.append(LabeledPoint.make(k + 4, x, y, k + 4))
        try:
            config = Configuration(tuple(boundary_pts + interior), (1, 2, 3))
        except ValueError:
            continue
        if not validate_general_position(config):
            return config


def winding_number(loop, center) -> int:
    """Signed crossings of the +x ray from center with the closed loop.

    Assumes no vertex of the loop lies exactly at the center's height,
    which holds for the loops under test.
    """
    cx, cy = center
    total = 0
    for (px, py), (qx, qy) in zip(loop, loop[1:]):
        if py == qy:
            continue
        if not (min(py, qy) < cy < max(py, qy)):
            continue
        t = (cy - py) / (qy - py)
        x_cross = px + t * (qx - px)
        if x_cross > cx:
            total += 1 if qy > py else -1
    return total
