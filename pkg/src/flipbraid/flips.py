"""Transition matrices of Delaunay flips.

A flip exchanging diagonal {i,k} for {j,l} inside quadrilateral ijkl maps
the old triangle basis to the new one: shared triangles map to themselves,
and the two exchanged columns carry ratios of label differences.  Columns
are indexed by the old basis, rows by the new; matrices of later flips
multiply on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .delaunay import FlipEvent, Triangulation, apply_flip, triangle
from .linalg import Matrix, format_rational


@dataclass(frozen=True)
class FlipRoles:
    """Role assignment (i, j, k, l): removed diagonal {i,k}, inserted {j,l}.

    All four role assignments compatible with the unordered pairs produce
    the identical matrix, so the canonical choice i < k, j < l is safe.
    """

    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        if len({self.i, self.j, self.k, self.l}) != 4:
            raise ValueError("roles must be four distinct indices")

    @staticmethod
    def from_pairs(removed, inserted) -> "FlipRoles":
        i, k = sorted(removed)
        j, l = sorted(inserted)
        return FlipRoles(i, j, k, l)

    @staticmethod
    def from_event(event: FlipEvent) -> "FlipRoles":
        return FlipRoles.from_pairs(event.removed, event.inserted)

    @property
    def removed(self) -> tuple:
        return tuple(sorted((self.i, self.k)))

    @property
    def inserted(self) -> tuple:
        return tuple(sorted((self.j, self.l)))

    @property
    def quad(self) -> tuple:
        return tuple(sorted((self.i, self.j, self.k, self.l)))

    def old_triangles(self) -> tuple:
        return (triangle(self.i, self.j, self.k),
                triangle(self.i, self.k, self.l))

    def new_triangles(self) -> tuple:
        return (triangle(self.i, self.j, self.l),
                triangle(self.j, self.k, self.l))


def reverse_roles(roles: FlipRoles) -> FlipRoles:
    """Swap removed and inserted pairs; builds the inverse matrix."""
    return FlipRoles.from_pairs(roles.inserted, roles.removed)


def gamma_generator_name(roles: FlipRoles) -> str:
    """Canonical quadrilateral-generator name 'd(a b c d)'.

    The eight tuples obtained by the dihedral symmetries of the
    quadrilateral name the same generator; the lexicographically least one
    is the canonical representative.
    """
    i, j, k, l = roles.i, roles.j, roles.k, roles.l
    variants = [(i, j, k, l), (k, j, i, l), (i, l, k, j), (k, l, i, j),
                (j, k, l, i), (j, i, l, k), (l, k, j, i), (l, i, j, k)]
    a, b, c, d = min(variants)
    return f"d({a} {b} {c} {d})"


class BasisMismatchError(ValueError):
    """Bases do not differ by exactly the stated flip."""


@dataclass(frozen=True)
class FlipMatrix:
    """The transition matrix together with the bases it connects."""

    matrix: Matrix
    roles: FlipRoles
    from_basis: tuple
    to_basis: tuple


def build_flip_matrix(roles: FlipRoles, from_basis, to_basis,
                      zeta) -> FlipMatrix:
    """Matrix of the flip in the given ordered bases.

    ``from_basis`` must contain the two triangles carrying the removed
    diagonal, ``to_basis`` the two carrying the inserted one, and the
    remaining triangles must coincide.  ``zeta`` maps point index to label.
    """
    old = tuple(from_basis)
    new = tuple(to_basis)
    t_ijk, t_ikl = roles.old_triangles()
    t_ijl, t_jkl = roles.new_triangles()
    if len(old) != len(new):
        raise BasisMismatchError("bases differ in length")
    old_set, new_set = set(old), set(new)
    if not {t_ijk, t_ikl} <= old_set:
        raise BasisMismatchError(
            f"from-basis lacks flip triangles {t_ijk}, {t_ikl}")
    if not {t_ijl, t_jkl} <= new_set:
        raise BasisMismatchError(
            f"to-basis lacks flip triangles {t_ijl}, {t_jkl}")
    if old_set - {t_ijk, t_ikl} != new_set - {t_ijl, t_jkl}:
        raise BasisMismatchError("bases do not differ by exactly this flip")

    zi, zj, zk, zl = (zeta[roles.i], zeta[roles.j],
                      zeta[roles.k], zeta[roles.l])
    den = zi - zk
    if den == 0:
        raise ValueError(
            f"coincident labels for points {roles.i} and {roles.k}")

    col_of = {t: c for c, t in enumerate(old)}
    row_of = {t: r for r, t in enumerate(new)}
    size = len(old)
    zero = Fraction(0)
    grid = [[zero] * size for _ in range(size)]
    for t in old:
        if t not in (t_ijk, t_ikl):
            grid[row_of[t]][col_of[t]] = Fraction(1)
    grid[row_of[t_ijl]][col_of[t_ijk]] = (zi - zl) / den
    grid[row_of[t_jkl]][col_of[t_ijk]] = (zl - zk) / den
    grid[row_of[t_ijl]][col_of[t_ikl]] = (zi - zj) / den
    grid[row_of[t_jkl]][col_of[t_ikl]] = (zj - zk) / den
    m = Matrix(grid)
    if any(s != 1 for s in m.column_sums()):
        raise AssertionError("flip matrix column sums are not all 1")
    return FlipMatrix(m, roles, old, new)


def sequence_product(events, start_triangles, zeta):
    """Multiply the flip matrices of ``events`` (in time order).

    Threads the ordered basis through every flip: the result maps
    coordinates in the starting basis to coordinates in the final one.
    Returns (matrix, final_triangles).
    """
    if isinstance(start_triangles, Triangulation):
        tris = start_triangles.triangles
    else:
        tris = frozenset(start_triangles)
    basis = sorted(tris)
    acc = Matrix.identity(len(basis))
    for event in events:
        roles = FlipRoles.from_event(event)
        next_tris = apply_flip(tris, event)
        next_basis = sorted(next_tris)
        fm = build_flip_matrix(roles, basis, next_basis, zeta)
        acc = fm.matrix * acc
        tris, basis = next_tris, next_basis
    return acc, tris


# --- pentagon cycle ----------------------------------------------------------

# Five cocircular points admit a cycle of five flips that returns the
# starting triangulation; the matrix product around the cycle is the
# identity for any choice of distinct labels.
PENTAGON_FLIPS = (
    ((1, 4), (3, 5)),
    ((1, 3), (2, 5)),
    ((3, 5), (2, 4)),
    ((2, 5), (1, 4)),
    ((2, 4), (1, 3)),
)
PENTAGON_START = frozenset({(1, 2, 3), (1, 3, 4), (1, 4, 5)})


def pentagon_cycle(labels) -> list:
    """The five flip matrices of the cycle, in time order.

    ``labels`` assigns the five points 1..5 their rational labels.
    """
    if len(labels) != 5 or len(set(labels)) != 5:
        raise ValueError("need five distinct labels")
    zeta = {i + 1: v for i, v in enumerate(labels)}
    tris = PENTAGON_START
    out = []
    for removed, inserted in PENTAGON_FLIPS:
        event = FlipEvent(removed, inserted)
        next_tris = apply_flip(tris, event)
        fm = build_flip_matrix(FlipRoles.from_event(event), sorted(tris),
                               sorted(next_tris), zeta)
        out.append(fm)
        tris = next_tris
    if tris != PENTAGON_START:
        raise AssertionError("pentagon cycle did not close up")
    return out


def pentagon_cycle_product(labels) -> Matrix:
    """Product of the five cycle matrices, later flips on the left."""
    acc = Matrix.identity(3)
    for fm in pentagon_cycle(labels):
        acc = fm.matrix * acc
    return acc


# --- flip sequence JSON ------------------------------------------------------

def flip_sequence_to_json(events) -> list:
    out = []
    for e in events:
        roles = FlipRoles.from_event(e)
        d = {
            "removed": list(e.removed),
            "inserted": list(e.inserted),
            "quad": list(e.quad),
            "gamma": gamma_generator_name(roles),
        }
        if e.t_lo is not None and e.t_hi is not None:
            d["t_lo"] = format_rational(e.t_lo)
            d["t_hi"] = format_rational(e.t_hi)
        out.append(d)
    return out


def flip_sequence_from_json(data) -> list:
    events = []
    for d in data:
        t_lo = Fraction(d["t_lo"]) if "t_lo" in d else None
        t_hi = Fraction(d["t_hi"]) if "t_hi" in d else None
        events.append(FlipEvent(tuple(sorted(d["removed"])),
                                tuple(sorted(d["inserted"])), t_lo, t_hi))
    return events
