"""Pure braid words, canonical point motions, and the matrix invariant.

A word in the generators b(i,j) is realized by moving point i+3 around the
home position of point j+3 on a rectangular loop, one letter at a time.
Each letter is a closed loop, so its flip sequence starts and ends at the
home triangulation and the whole word's matrix is the product of the
per-letter matrices, later letters on the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .delaunay import build_delaunay, ordered_basis
from .flips import flip_sequence_to_json, sequence_product
from .geometry import (Configuration, LabeledPoint, orient2d,
                       validate_general_position)
from .kinetics import (DEFAULT_FLOOR, DEFAULT_STEP, TrajectorySet,
                       extract_flip_sequence)
from .linalg import (Matrix, as_rational, char_poly, format_rational,
                     mat_inverse)


class WordSyntaxError(ValueError):
    """A braid word failed to parse; the message carries the position."""


@dataclass(frozen=True)
class BraidLetter:
    i: int
    j: int
    power: int  # +1 or -1

    def __str__(self):
        suffix = "^-1" if self.power < 0 else ""
        return f"b({self.i},{self.j}){suffix}"

    def inverse(self) -> "BraidLetter":
        return BraidLetter(self.i, self.j, -self.power)


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple

    def __str__(self):
        return " ".join(str(letter) for letter in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)


_TOKEN = re.compile(r"^b\((\d+),(\d+)\)(\^-1)?$")


def parse_word(text: str, n: int) -> BraidWord:
    """Parse whitespace-separated tokens b(i,j) or b(i,j)^-1."""
    if n < 1:
        raise WordSyntaxError(f"strand count must be positive, got {n}")
    letters = []
    for pos, token in enumerate(text.split(), start=1):
        m = _TOKEN.match(token)
        if not m:
            raise WordSyntaxError(f"token {pos}: malformed {token!r}")
        i, j = int(m.group(1)), int(m.group(2))
        if i >= j:
            raise WordSyntaxError(
                f"token {pos}: i < j required in {token!r}")
        if j > n:
            raise WordSyntaxError(
                f"token {pos}: strand {j} exceeds n={n} in {token!r}")
        if i < 1:
            raise WordSyntaxError(f"token {pos}: strands start at 1")
        letters.append(BraidLetter(i, j, -1 if m.group(3) else 1))
    return BraidWord(n, tuple(letters))


def word_from_pairs(n: int, pairs) -> BraidWord:
    """Build a word from ((i, j) | (i, j, power)) tuples."""
    letters = []
    for p in pairs:
        i, j = p[0], p[1]
        power = p[2] if len(p) > 2 else 1
        letters.append(BraidLetter(i, j, power))
    return BraidWord(n, tuple(letters))


@dataclass(frozen=True)
class LoopGeometry:
    """Shape of a generator loop: rise height, dip depth, lateral offset."""

    height: Fraction = Fraction(1)
    depth: Fraction = Fraction(1, 2)
    offset: Fraction = Fraction(1, 4)

    @staticmethod
    def make(height, depth, offset) -> "LoopGeometry":
        return LoopGeometry(as_rational(height), as_rational(depth),
                            as_rational(offset))


DEFAULT_LOOP = LoopGeometry()


@dataclass(frozen=True)
class CanonicalSetup:
    """Deterministic start position: boundary triangle, parabolic homes,
    labels equal to point indices."""

    n: int
    config: Configuration

    @property
    def homes(self) -> dict:
        return {p.index: p.xy for p in self.config.points}

    def home(self, index: int):
        return self.config.position(index)


def canonical_setup(n: int) -> CanonicalSetup:
    """Canonical configuration for n strands (points 4 .. n+3 mobile).

    Interior homes sit on an upward parabola, which keeps any four of them
    off a common circle (concyclicity would force their abscissas to sum to
    zero, impossible for positive abscissas); 4-subsets touching boundary
    vertices are covered by the exhaustive validator, with deterministic
    nudges as a fallback.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    boundary = [
        LabeledPoint.make(1, Fraction(-(n + 4)), Fraction(-2), 1),
        LabeledPoint.make(2, Fraction(2 * n + 5), Fraction(-2), 2),
        LabeledPoint.make(3, Fraction(n + 1, 2), Fraction(3 * n + 9), 3),
    ]
    for attempt in range(32):
        interior = [
            LabeledPoint.make(
                k + 3, Fraction(k),
                Fraction(k * k, 100 * n * n) + Fraction(attempt * k, 10007),
                k + 3)
            for k in range(1, n + 1)
        ]
        config = Configuration(tuple(boundary + interior), (1, 2, 3))
        if not validate_general_position(config):
            return CanonicalSetup(n, config)
    raise RuntimeError(
        f"canonical setup for n={n} failed to reach general position")


class LoopClearanceError(ValueError):
    """A generator loop would pass exactly through another point."""


def _on_segment(p, a, b) -> bool:
    if orient2d(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _inside_triangle(p, a, b, c) -> bool:
    if orient2d(a, b, c) < 0:
        a, b = b, a
    return (orient2d(a, b, p) > 0 and orient2d(b, c, p) > 0
            and orient2d(c, a, p) > 0)


def generator_trajectories(setup: CanonicalSetup, letter: BraidLetter,
                           geometry: LoopGeometry = DEFAULT_LOOP
                           ) -> TrajectorySet:
    """Closed loop of point i+3 once around the home of point j+3.

    The loop rises to the geometry height, passes to the far side of the
    target, dips below all homes, returns underneath, and climbs back:
    winding number +-1 around the target home and 0 around every other.
    A reversed traversal realizes the inverse letter.
    """
    n = setup.n
    if not 1 <= letter.i < letter.j <= n:
        raise ValueError(f"letter {letter} invalid for n={n}")
    mover = letter.i + 3
    target = letter.j + 3
    xi, yi = setup.home(mover)
    xj, _ = setup.home(target)
    h, hp, d = geometry.height, geometry.depth, geometry.offset
    waypoints = [
        (xi, yi),
        (xi, h),
        (xj + d, h),
        (xj + d, -hp),
        (xj - d, -hp),
        (xj - d, h),
        (xi, h),
        (xi, yi),
    ]
    if letter.power < 0:
        waypoints = waypoints[::-1]
    homes = setup.homes
    for a, b in zip(waypoints, waypoints[1:]):
        for idx, home in homes.items():
            if idx != mover and _on_segment(home, a, b):
                raise LoopClearanceError(
                    f"loop of point {mover} passes through point {idx}")
    corners = [setup.home(b) for b in setup.config.boundary]
    for w in waypoints:
        if not _inside_triangle(w, *corners):
            raise LoopClearanceError(
                f"loop of point {mover} leaves the boundary triangle at {w}")
    steps = len(waypoints) - 1
    path = [(Fraction(k, steps), waypoints[k]) for k in range(steps + 1)]
    return TrajectorySet.from_motion(setup.config, {mover: path})


@dataclass
class InvariantResult:
    """Matrix of a word together with the basis and per-letter flip logs."""

    word: BraidWord
    matrix: Matrix
    basis: tuple
    flip_log: tuple  # one tuple of FlipEvents per letter

    @property
    def trace(self) -> Fraction:
        return self.matrix.trace()

    def charpoly(self) -> list:
        return char_poly(self.matrix)

    def to_json_dict(self, with_trace: bool = True,
                     with_charpoly: bool = False) -> dict:
        out = {
            "n": self.word.n,
            "word": str(self.word),
            "matrix": self.matrix.to_json_dict(),
            "basis": [list(t) for t in self.basis],
            "flips": [flip_sequence_to_json(evts) for evts in self.flip_log],
        }
        if with_trace:
            out["trace"] = format_rational(self.trace)
        if with_charpoly:
            out["charpoly"] = [format_rational(c) for c in self.charpoly()]
        return out


_LETTER_CACHE: dict = {}


def _letter_result(setup: CanonicalSetup, letter: BraidLetter,
                   geometry: LoopGeometry, step, floor, cacheable: bool):
    key = (setup.n, letter.i, letter.j, letter.power, geometry, step, floor)
    if cacheable and key in _LETTER_CACHE:
        return _LETTER_CACHE[key]
    ts = generator_trajectories(setup, letter, geometry)
    events = extract_flip_sequence(ts, step=step, floor=floor)
    home_tris = build_delaunay(setup.config).triangles
    matrix, final = sequence_product(events, home_tris,
                                     setup.config.zeta_map())
    if final != home_tris:
        raise AssertionError("letter loop did not return to the home"
                             " triangulation")
    result = (matrix, tuple(events))
    if cacheable:
        _LETTER_CACHE[key] = result
    return result


def _letter_result_fast_inverse(setup, letter, geometry, step, floor,
                                cacheable):
    """Inverse letter via matrix inversion of the forward loop."""
    forward, events = _letter_result(setup, letter.inverse(), geometry,
                                     step, floor, cacheable)
    reversed_events = tuple(
        e.reversed().with_bracket(1 - e.t_hi, 1 - e.t_lo)
        for e in reversed(events))
    return mat_inverse(forward), reversed_events


def invariant(word: BraidWord, setup: Optional[CanonicalSetup] = None,
              geometry: LoopGeometry = DEFAULT_LOOP, step=DEFAULT_STEP,
              floor=DEFAULT_FLOOR, inverse_fast: bool = False
              ) -> InvariantResult:
    """The word's (2n+1) x (2n+1) matrix under the flip construction.

    Letters act left to right in time; each letter's matrix multiplies the
    accumulated product on the left.  With ``inverse_fast`` the inverse
    letters reuse the forward loop's matrix inverse instead of simulating
    the reversed loop (the two must agree).
    """
    step, floor = as_rational(step), as_rational(floor)
    cacheable = setup is None
    if setup is None:
        setup = canonical_setup(word.n)
    elif setup.n != word.n:
        raise ValueError("setup strand count does not match word")
    home = build_delaunay(setup.config)
    basis = tuple(ordered_basis(home))
    acc = Matrix.identity(len(basis))
    log = []
    for letter in word.letters:
        if inverse_fast and letter.power < 0:
            mat, events = _letter_result_fast_inverse(
                setup, letter, geometry, step, floor, cacheable)
        else:
            mat, events = _letter_result(setup, letter, geometry, step,
                                         floor, cacheable)
        acc = mat * acc
        log.append(events)
    if any(s != 1 for s in acc.column_sums()):
        raise AssertionError("invariant matrix lost the column-sum-1"
                             " property")
    return InvariantResult(word, acc, basis, tuple(log))


# --- relation verification ---------------------------------------------------

@dataclass(frozen=True)
class RelationInstance:
    name: str
    ok: bool
    lhs: Optional[Matrix] = None
    rhs: Optional[Matrix] = None


@dataclass
class RelationReport:
    family: str
    n: int
    instances: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(inst.ok for inst in self.instances)

    def failures(self) -> list:
        return [inst for inst in self.instances if not inst.ok]


FAMILIES = ("inverse", "far_comm", "pentagon", "pb_all")


def _word_matrix(n, pairs, **kw) -> Matrix:
    return invariant(word_from_pairs(n, pairs), **kw).matrix


def _check(report, name, lhs: Matrix, rhs: Matrix):
    ok = lhs == rhs
    report.instances.append(RelationInstance(
        name, ok, None if ok else lhs, None if ok else rhs))


def _commuting_pair_instances(n):
    """Index tuples of the two commuting-generator patterns."""
    out = []
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            for i in range(l + 1, n + 1):
                for j in range(i + 1, n + 1):
                    out.append(("disjoint", (i, j), (k, l)))
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            for l in range(k + 1, n + 1):
                for j in range(l + 1, n + 1):
                    out.append(("nested", (i, j), (k, l)))
    return out


def verify_relations(n: int, family: str, seed: int = 0, trials: int = 100,
                     **kw) -> RelationReport:
    """Check a relation family as exact matrix equalities.

    Families: 'inverse' (each generator against its reversed loop),
    'far_comm' (commuting generator pairs), 'pentagon' (randomized
    five-flip cycles), 'pb_all' (the whole presentation: commuting pairs,
    the three cyclic triple products, and the mixed four-generator
    relation).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    report = RelationReport(family, n)

    if family == "inverse":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                mat = _word_matrix(n, [(i, j, 1), (i, j, -1)], **kw)
                report.instances.append(RelationInstance(
                    f"inverse b({i},{j})", mat.is_identity(),
                    None if mat.is_identity() else mat))
        return report

    if family == "pentagon":
        import random

        from .flips import pentagon_cycle_product
        rng = random.Random(seed)
        for trial in range(trials):
            while True:
                vals = [Fraction(rng.randint(-600, 600),
                                 rng.randint(1, 40)) for _ in range(5)]
                if len(set(vals)) == 5:
                    break
            product = pentagon_cycle_product(vals)
            report.instances.append(RelationInstance(
                f"pentagon trial {trial}", product.is_identity(),
                None if product.is_identity() else product))
        return report

    if family in ("far_comm", "pb_all"):
        for kind, (i, j), (k, l) in _commuting_pair_instances(n):
            lhs = _word_matrix(n, [(i, j), (k, l)], **kw)
            rhs = _word_matrix(n, [(k, l), (i, j)], **kw)
            _check(report, f"commute[{kind}] b({i},{j}) b({k},{l})", lhs, rhs)

    if family == "pb_all":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(j + 1, n + 1):
                    m1 = _word_matrix(n, [(i, j), (i, k), (j, k)], **kw)
                    m2 = _word_matrix(n, [(j, k), (i, j), (i, k)], **kw)
                    m3 = _word_matrix(n, [(i, k), (j, k), (i, j)], **kw)
                    _check(report, f"triple({i},{j},{k}) first=second",
                           m1, m2)
                    _check(report, f"triple({i},{j},{k}) second=third",
                           m2, m3)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(j + 1, n + 1):
                    for l in range(k + 1, n + 1):
                        lhs = _word_matrix(
                            n, [(j, l), (k, l), (i, k), (j, k)], **kw)
                        rhs = _word_matrix(
                            n, [(k, l), (i, k), (j, k), (j, l)], **kw)
                        _check(report, f"mixed({i},{j},{k},{l})", lhs, rhs)
    return report
