"""Bundled reference matrices and the suites that recompute their products.

The data files under ``flipbraid/data`` hold hand-entered matrices: the
five-step pentagon cycle in symbolic label form, the two-flip commutation
example on six points, and the two 11x11 braid-loop factorizations together
with their printed products.  A manifest pins each file's SHA-256.  The
FLIPBRAID_FIXTURES environment variable points the loader at an alternate
directory with the same layout.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .flips import FlipRoles, build_flip_matrix, pentagon_cycle
from .linalg import Matrix

MANIFEST_NAME = "MANIFEST.json"
ENV_DIR = "FLIPBRAID_FIXTURES"


class FixtureError(RuntimeError):
    """A fixture file is missing, corrupt, or fails its checksum."""


def _read_bytes(name: str) -> bytes:
    override = os.environ.get(ENV_DIR)
    if override:
        path = Path(override) / name
        if not path.is_file():
            raise FixtureError(f"fixture {name} not found in {override}")
        return path.read_bytes()
    ref = resources.files("flipbraid").joinpath("data").joinpath(name)
    if not ref.is_file():
        raise FixtureError(f"bundled fixture {name} missing")
    return ref.read_bytes()


def load_fixture(name: str, checksum: bool = True) -> dict:
    raw = _read_bytes(name)
    if checksum:
        manifest = json.loads(_read_bytes(MANIFEST_NAME))
        want = manifest["files"].get(name)
        if want is None:
            raise FixtureError(f"{name} is not listed in the manifest")
        got = hashlib.sha256(raw).hexdigest()
        if got != want:
            raise FixtureError(
                f"checksum mismatch for {name}: {got} != {want}")
    return json.loads(raw)


def verify_checksums() -> list:
    """Names of all fixture files, each verified against the manifest."""
    manifest = json.loads(_read_bytes(MANIFEST_NAME))
    names = sorted(manifest["files"])
    for name in names:
        load_fixture(name)
    return names


_RATIO = re.compile(
    r"^(-)?\(([A-Za-z0-9]+)-([A-Za-z0-9]+)\)/\(([A-Za-z0-9]+)-([A-Za-z0-9]+)\)$")


def evaluate_entry(text: str, labels: dict) -> Fraction:
    """Evaluate '(a-b)/(c-d)' (optionally negated) or a plain rational."""
    m = _RATIO.match(text)
    if m:
        sign = -1 if m.group(1) else 1
        a, b, c, d = (labels[m.group(g)] for g in range(2, 6))
        return sign * (a - b) / (c - d)
    return Fraction(text)


def evaluate_matrix(data: dict, labels: Optional[dict] = None) -> Matrix:
    labels = labels or {}
    return Matrix([[evaluate_entry(e, labels) for e in row]
                   for row in data["entries"]])


def _first_difference(a: Matrix, b: Matrix) -> str:
    if (a.rows, a.cols) != (b.rows, b.cols):
        return f"shape {a.rows}x{a.cols} != {b.rows}x{b.cols}"
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != b[i, j]:
                return (f"first difference at row {i + 1}, col {j + 1}: "
                        f"{a[i, j]} != {b[i, j]}")
    return ""


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    detail: str = ""


def run_pentagon_suite() -> SuiteResult:
    """Rebuild the five cycle matrices and compare entrywise, then check
    that their product is the identity, at labels (1, 2, 3, 4, 5)."""
    data = load_fixture("pentagon_cycle.json")
    letters = data["labels"]
    point_of = {name: idx + 1 for idx, name in enumerate(letters)}
    labels = {name: Fraction(point_of[name]) for name in letters}
    zeta = {point_of[name]: labels[name] for name in letters}

    def tri(names):
        return tuple(sorted(point_of[x] for x in names))

    basis = [tri(t) for t in data["initial_basis"]]
    built = pentagon_cycle([zeta[i] for i in range(1, 6)])
    acc = Matrix.identity(3)
    for step_no, step in enumerate(data["steps"]):
        removed = tuple(sorted(point_of[x] for x in step["removed"]))
        inserted = tuple(sorted(point_of[x] for x in step["inserted"]))
        after = [tri(t) for t in step["basis_after"]]
        expected = evaluate_matrix(step["matrix"], labels)
        fm = build_flip_matrix(FlipRoles.from_pairs(removed, inserted),
                               basis, after, zeta)
        if fm.matrix != expected:
            return SuiteResult(
                "pentagon", False,
                f"step {step_no + 1}: "
                + _first_difference(fm.matrix, expected))
        if built[step_no].matrix != expected:
            return SuiteResult(
                "pentagon", False,
                f"step {step_no + 1} differs from the canonical cycle")
        acc = fm.matrix * acc
        basis = after
    if not acc.is_identity():
        return SuiteResult("pentagon", False, "cycle product is not I")
    return SuiteResult("pentagon", True)


def run_two_flip_suite() -> SuiteResult:
    """Both orders of the two-flip pair must give the recorded product."""
    data = load_fixture("two_flip_commutation.json")
    labels = {name: Fraction(name[1:]) for name in data["labels"]}
    expected = evaluate_matrix(data["product"], labels)
    for order_no, order in enumerate(data["orders"]):
        acc = None
        for factor in order["factors"]:
            m = evaluate_matrix(factor["matrix"], labels)
            acc = m if acc is None else acc * m
        if acc != expected:
            return SuiteResult(
                "two-flip", False,
                f"order {order_no + 1}: " + _first_difference(acc, expected))
    return SuiteResult("two-flip", True)


def _loop_product(name: str):
    data = load_fixture(name)
    expected = evaluate_matrix(data["product"])
    acc = None
    for pos, factor in enumerate(data["factors"]):
        m = evaluate_matrix(factor["matrix"])
        if any(s != 1 for s in m.column_sums()):
            raise FixtureError(
                f"{name} factor {pos + 1}: column sums are not all 1")
        acc = m if acc is None else acc * m
    return acc, expected, len(data["factors"])


def run_loop_suite() -> list:
    """Recompute both braid-loop products and their commutation."""
    results = []
    products = {}
    for name, label in (("braid_loop_4_8.json", "loop 4-8"),
                        ("braid_loop_5_7.json", "loop 5-7")):
        acc, expected, count = _loop_product(name)
        ok = acc == expected
        detail = "" if ok else _first_difference(acc, expected)
        if ok:
            detail = f"{count} factors"
        results.append(SuiteResult(label, ok, detail))
        products[label] = expected
    commute = evaluate_matrix(load_fixture("loop_commutation.json")["product"])
    ab = products["loop 4-8"] * products["loop 5-7"]
    ba = products["loop 5-7"] * products["loop 4-8"]
    ok = ab == commute and ba == commute
    detail = "" if ok else (_first_difference(ab, commute)
                            or _first_difference(ba, commute))
    results.append(SuiteResult("loop commutation", ok, detail))
    return results


def run_all_suites() -> list:
    verify_checksums()
    results = [run_pentagon_suite(), run_two_flip_suite()]
    results.extend(run_loop_suite())
    return results
