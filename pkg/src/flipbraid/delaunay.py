"""Delaunay triangulations inside the fixed boundary triangle.

Triangles are ascending index triples, the canonical basis order is
lexicographic, and a diff of two triangulations decomposes into diagonal
exchanges (flips) or reports that it cannot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .geometry import Configuration, incircle

Triangle = tuple  # (int, int, int), strictly ascending


def triangle(*indices) -> Triangle:
    if len(indices) != 3 or len(set(indices)) != 3:
        raise ValueError(f"triangle needs 3 distinct indices: {indices}")
    return tuple(sorted(indices))


class DegenerateConfigurationError(ValueError):
    """A cocircular 4-subset with empty open circumdisk was hit."""

    def __init__(self, subset):
        self.subset = tuple(sorted(subset))
        super().__init__(
            f"degenerate configuration: cocircular subset {self.subset}")


@dataclass(frozen=True, eq=False)
class Triangulation:
    """A triangle set over a configuration.

    Equality and hashing use the triangle set only; the geometry is
    re-derivable from the configuration.
    """

    triangles: frozenset
    config: Configuration

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self.triangles == other.triangles)

    def __hash__(self):
        return hash(self.triangles)

    def __len__(self):
        return len(self.triangles)

    def to_json_dict(self) -> dict:
        return {"triangles": [list(t) for t in sorted(self.triangles)]}


def ordered_basis(t: Triangulation) -> list:
    """Triangles in lexicographic order; the module basis."""
    return sorted(t.triangles)


def _edges(tri: Triangle):
    a, b, c = tri
    return ((a, b), (a, c), (b, c))


def build_delaunay(config: Configuration, verify: bool = True,
                   insertion_order=None) -> Triangulation:
    """Incremental Bowyer-Watson starting from the boundary triangle.

    The three fixed vertices serve as the enclosing triangle, so no
    synthetic super-triangle is needed.  With ``verify`` the result is
    checked exhaustively: any point strictly inside a circumdisk is an
    internal error, any point exactly on one is a degeneracy of the input
    (reported with the offending 4-subset).  ``insertion_order`` overrides
    the interior insertion sequence; in general position the result does
    not depend on it.
    """
    tris = {triangle(*config.boundary)}
    positions = {p.index: p.xy for p in config.points}
    order = config.interior if insertion_order is None else tuple(insertion_order)
    if sorted(order) != sorted(config.interior):
        raise ValueError("insertion_order must be a permutation of interior")
    for idx in order:
        p = positions[idx]
        cavity = [t for t in tris
                  if incircle(positions[t[0]], positions[t[1]],
                              positions[t[2]], p) > 0]
        if not cavity:
            raise DegenerateConfigurationError(
                _locate_degeneracy(config, tris) or (idx,))
        edge_count = {}
        for t in cavity:
            for e in _edges(t):
                edge_count[e] = edge_count.get(e, 0) + 1
        tris.difference_update(cavity)
        for e, count in edge_count.items():
            if count == 1:
                tris.add(triangle(e[0], e[1], idx))
    result = Triangulation(frozenset(tris), config)
    if verify:
        verify_delaunay(result)
    return result


def _locate_degeneracy(config, tris) -> Optional[tuple]:
    positions = {p.index: p.xy for p in config.points}
    for t in sorted(tris):
        for p in config.points:
            if p.index in t:
                continue
            if incircle(positions[t[0]], positions[t[1]],
                        positions[t[2]], p.xy) == 0:
                return tuple(sorted(t + (p.index,)))
    return None


def verify_delaunay(t: Triangulation) -> None:
    """Exhaustive empty-circumdisk check; raises on any violation."""
    config = t.config
    positions = {p.index: p.xy for p in config.points}
    n = config.n
    if len(t.triangles) != 2 * n + 1:
        raise AssertionError(
            f"expected {2 * n + 1} triangles, got {len(t.triangles)}")
    for tri in sorted(t.triangles):
        a, b, c = (positions[i] for i in tri)
        for p in config.points:
            if p.index in tri:
                continue
            s = incircle(a, b, c, p.xy)
            if s > 0:
                raise AssertionError(
                    f"triangle {tri} circumdisk contains point {p.index}")
            if s == 0:
                raise DegenerateConfigurationError(tri + (p.index,))


@dataclass(frozen=True)
class FlipEvent:
    """One diagonal exchange: edge {i,k} replaced by {j,l} in quad ijkl."""

    removed: tuple   # sorted pair (i, k)
    inserted: tuple  # sorted pair (j, l)
    t_lo: Optional[Fraction] = None
    t_hi: Optional[Fraction] = None

    @property
    def quad(self) -> tuple:
        return tuple(sorted(self.removed + self.inserted))

    def removed_triangles(self) -> tuple:
        i, k = self.removed
        j, l = self.inserted
        return (triangle(i, j, k), triangle(i, k, l))

    def inserted_triangles(self) -> tuple:
        i, k = self.removed
        j, l = self.inserted
        return (triangle(i, j, l), triangle(j, k, l))

    def reversed(self) -> "FlipEvent":
        return FlipEvent(self.inserted, self.removed, self.t_lo, self.t_hi)

    def with_bracket(self, t_lo, t_hi) -> "FlipEvent":
        return FlipEvent(self.removed, self.inserted, t_lo, t_hi)


def diff_flips(before, after) -> Optional[list]:
    """Decompose the difference of two triangle sets into FlipEvents.

    Returns [] when the sets agree, a list of events when the symmetric
    difference is a disjoint union of quadrilateral diagonal exchanges, and
    None otherwise (caller must refine).
    """
    b = before.triangles if isinstance(before, Triangulation) else frozenset(before)
    a = after.triangles if isinstance(after, Triangulation) else frozenset(after)
    removed = sorted(b - a)
    added = a - b
    if not removed and not added:
        return []
    if len(removed) != len(added) or len(removed) % 2:
        return None
    events = []
    remaining = set(added)
    pool = list(removed)
    while pool:
        t0 = pool.pop(0)
        match = None
        for t1 in pool:
            shared = tuple(sorted(set(t0) & set(t1)))
            if len(shared) != 2:
                continue
            other = tuple(sorted((set(t0) | set(t1)) - set(shared)))
            if len(other) != 2:
                continue
            new_pair = {triangle(other[0], other[1], shared[0]),
                        triangle(other[0], other[1], shared[1])}
            if not new_pair <= remaining:
                continue
            if match is not None:
                return None  # ambiguous pairing
            match = (t1, shared, other, new_pair)
        if match is None:
            return None
        t1, shared, other, new_pair = match
        pool.remove(t1)
        remaining -= new_pair
        events.append(FlipEvent(removed=shared, inserted=other))
    if remaining:
        return None
    events.sort(key=lambda e: e.quad)
    return events


def apply_flip(triangles: frozenset, event: FlipEvent) -> frozenset:
    """Replace the event's two removed triangles with its two inserted ones."""
    old = set(event.removed_triangles())
    new = set(event.inserted_triangles())
    if not old <= triangles:
        raise ValueError(f"flip {event} does not apply: {old} not present")
    if new & triangles:
        raise ValueError(f"flip {event} does not apply: {new} already present")
    return frozenset((triangles - old) | new)


# --- SVG snapshot -----------------------------------------------------------

def render_svg(t: Triangulation, width: int = 480) -> str:
    """Plain SVG snapshot: triangles as polygons, points labeled by index."""
    config = t.config
    xs = [p.x for p in config.points]
    ys = [p.y for p in config.points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1))
    margin = span / 20
    scale = Fraction(width) / (span + 2 * margin)

    def sx(x):
        return float((x - x0 + margin) * scale)

    def sy(y):
        # flip y so the picture is not upside down
        return float((y1 - y + margin) * scale)

    height = float((y1 - y0 + 2 * margin) * scale)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height:.1f}" viewBox="0 0 {width} {height:.1f}">',
    ]
    positions = {p.index: p.xy for p in config.points}
    for tri in sorted(t.triangles):
        pts = " ".join(f"{sx(positions[i][0]):.2f},{sy(positions[i][1]):.2f}"
                       for i in tri)
        out.append(f'<polygon points="{pts}" fill="none" stroke="black" '
                   'stroke-width="1"/>')
    for p in config.points:
        cx, cy = sx(p.x), sy(p.y)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="red"/>')
        out.append(f'<text x="{cx + 5:.2f}" y="{cy - 5:.2f}" '
                   f'font-size="12">{p.index}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
