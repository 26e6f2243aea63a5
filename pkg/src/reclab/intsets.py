"""Finite integer sets, windows, gap statistics and the set generators.

Convention: an :class:`IntSet` holds nonzero integers only (0 is silently
dropped by every constructor).  Operations whose natural inputs live in all
of the integers -- difference sets, syndetic samples, subshift indicators --
accept plain iterables instead, where 0 is legitimate.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import EmptyInput, NoElementsInWindow, NonIntegerPolynomial, TooFewElements


@dataclass(frozen=True)
class Window:
    """Inclusive integer window [lo, hi].  lo > hi denotes the empty window."""

    lo: int
    hi: int

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return max(0, self.hi - self.lo + 1)


@dataclass(frozen=True)
class IntSet:
    """Strictly increasing tuple of nonzero integers."""

    elements: tuple[int, ...] = ()

    def __post_init__(self):
        elems = tuple(sorted({int(e) for e in self.elements if int(e) != 0}))
        object.__setattr__(self, "elements", elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __bool__(self):
        return bool(self.elements)

    def __contains__(self, n: int) -> bool:
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    def restrict(self, window: Window) -> "IntSet":
        return IntSet(tuple(e for e in self.elements if e in window))

    def positives(self) -> tuple[int, ...]:
        return tuple(e for e in self.elements if e > 0)

    def abs_distances(self) -> tuple[int, ...]:
        """Positive distance multiset view: |m|, deduplicated, sorted."""
        return tuple(sorted({abs(e) for e in self.elements}))

    def max_abs(self) -> int:
        return max(abs(e) for e in self.elements)


ZSetLike = Union[IntSet, Iterable[int]]


def as_int_list(s: ZSetLike) -> list[int]:
    """Sorted deduplicated list of ints; zero is preserved for raw inputs."""
    if isinstance(s, IntSet):
        return list(s.elements)
    return sorted({int(e) for e in s})


# ---------------------------------------------------------------------------
# combinatorial statistics
# ---------------------------------------------------------------------------


def difference_set(s: ZSetLike, window: Window | None = None) -> IntSet:
    """All pairwise differences a - b (a != b), zero excluded from the output.

    The input may contain 0; pass a window to restrict the listing first.
    """
    elems = as_int_list(s)
    if window is not None:
        elems = [e for e in elems if e in window]
    if not elems:
        raise EmptyInput("difference set of an empty listing")
    diffs = {a - b for a in elems for b in elems if a != b}
    return IntSet(tuple(diffs))


@dataclass(frozen=True)
class GapProfile:
    max_gap: int
    gaps: tuple[int, ...]


def syndetic_gap(s: ZSetLike, window: Window, side: str = "two") -> GapProfile:
    """Consecutive-difference profile of s inside the window.

    side="two" uses the window as given; side="one" first intersects it with
    the positive half-line.  A single surviving element yields gaps=() and
    max_gap=0 (degenerate but explicit).
    """
    if side not in ("two", "one"):
        raise ValueError("side must be 'two' or 'one'")
    lo = max(window.lo, 1) if side == "one" else window.lo
    elems = [e for e in as_int_list(s) if lo <= e <= window.hi]
    if not elems:
        raise NoElementsInWindow(f"no elements in [{lo}, {window.hi}]")
    gaps = tuple(b - a for a, b in zip(elems, elems[1:]))
    return GapProfile(max_gap=max(gaps, default=0), gaps=gaps)


def is_thick_window(s: ZSetLike, run_length: int, window: Window) -> bool:
    """Does s contain run_length consecutive integers inside the window?"""
    if run_length < 1:
        raise ValueError("run_length must be >= 1")
    elems = [e for e in as_int_list(s) if e in window]
    run = 0
    prev = None
    for e in elems:
        run = run + 1 if prev is not None and e == prev + 1 else 1
        if run >= run_length:
            return True
        prev = e
    return False


def lacunarity_ratios(s: ZSetLike) -> tuple[Fraction, bool]:
    """Minimum consecutive ratio of the positive part, as an exact rational.

    Returns (min_ratio, min_ratio > 1).
    """
    pos = [e for e in as_int_list(s) if e > 0]
    if len(pos) < 2:
        raise TooFewElements("need at least two positive elements")
    ratio = min(Fraction(b, a) for a, b in zip(pos, pos[1:]))
    return ratio, ratio > 1


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def gen_k_times_nr(k: int, r: int) -> IntSet:
    """{k, 2k, ..., rk}."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return IntSet(tuple(k * i for i in range(1, r + 1)))


def gen_l_r(r: int, k_max: int) -> IntSet:
    """Layered geometric family: n*(r+2)**k for 1 <= n <= r, 0 <= k <= k_max."""
    if r < 1 or k_max < 0:
        raise ValueError("need r >= 1 and k_max >= 0")
    out = []
    base = 1
    for _ in range(k_max + 1):
        out.extend(n * base for n in range(1, r + 1))
        base *= r + 2
    return IntSet(tuple(out))


def l_r_layer(r: int, k: int) -> IntSet:
    """Single layer (r+2)**k * {1..r} of the family above."""
    base = (r + 2) ** k
    return IntSet(tuple(n * base for n in range(1, r + 1)))


def gen_polynomial(coeffs: Sequence[Union[int, Fraction]], n_max: int) -> IntSet:
    """{p(n) : 1 <= n <= n_max} minus {0}, p given by ascending coefficients.

    Values are computed in exact rational arithmetic and must all be
    integers (integer-valued polynomials like n(n+1)/2 are fine).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cs = [Fraction(c) for c in coeffs]
    if not cs:
        raise EmptyInput("no coefficients")
    values = []
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * n + c
        if acc.denominator != 1:
            raise NonIntegerPolynomial(f"p({n}) = {acc} is not an integer")
        values.append(int(acc))
    return IntSet(tuple(values))


def poly_eval_int(coeffs: Sequence[Union[int, Fraction]], n: int) -> int:
    """Exact evaluation of the same polynomials at a single point."""
    acc = Fraction(0)
    for c in reversed([Fraction(c) for c in coeffs]):
        acc = acc * n + c
    if acc.denominator != 1:
        raise NonIntegerPolynomial(f"p({n}) = {acc} is not an integer")
    return int(acc)


# ---------------------------------------------------------------------------
# set files: JSON array or newline-separated integers, auto-detected
# ---------------------------------------------------------------------------


def parse_set_text(text: str) -> list[int]:
    stripped = text.strip()
    if not stripped:
        raise EmptyInput("empty set file")
    if stripped.startswith("["):
        data = json.loads(stripped)
        if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
            raise ValueError("JSON set file must be an array of integers")
        return [int(v) for v in data]
    out = []
    for line in stripped.splitlines():
        line = line.strip()
        if line:
            out.append(int(line))
    return out


def format_set_json(values: Iterable[int]) -> str:
    return json.dumps(sorted(set(values))) + "\n"


def format_set_lines(values: Iterable[int]) -> str:
    return "".join(f"{v}\n" for v in sorted(set(values)))


def load_set_file(path: str) -> list[int]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_text(fh.read())
