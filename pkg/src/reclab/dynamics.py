"""Finite-horizon dynamics: torus rotations and indicator subshifts.

Rotations use the exact arithmetic kinds throughout, so return-time sets and
displacement minima on the circle are computed exactly.  Subshift points are
shifts of a single base word declared on a finite window; every operation
checks the window covers its horizon with room to spare (ratio 4).

All verdicts here are horizon-limited observations, never limit claims; the
experiment reports say so explicitly in their ``note`` field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import NoElementsInWindow, NoSuchM, WindowInadequate
from .exactreal import (
    Real,
    TorusPoint,
    as_real,
    real_add,
    real_cmp,
    real_frac,
    real_le,
    real_min,
    real_mul,
    real_mul_int,
    real_sqrt,
    real_sub,
    real_to_float,
    torus_norm1,
)
from .intsets import IntSet, Window, ZSetLike, as_int_list

HORIZON_NOTE = (
    "horizon-limited observation: quantities are minima over the stated "
    "finite horizon, not limit claims"
)

RotPoint = tuple[Real, ...]
TimeSet = tuple[int, ...]


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Rotation x -> x + alpha on the k-torus (k = len(alphas))."""

    alphas: tuple[TorusPoint, ...]
    minimal_declared: bool = True

    def __post_init__(self):
        if not self.alphas:
            raise ValueError("rotation needs at least one frequency")

    @property
    def dim(self) -> int:
        return len(self.alphas)

    def point(self, coords) -> RotPoint:
        coords = tuple(real_frac(as_real(c)) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("point dimension mismatch")
        return coords

    def zero(self) -> RotPoint:
        return tuple(Fraction(0) for _ in self.alphas)

    def step(self, x: RotPoint, n: int) -> RotPoint:
        return tuple(
            real_frac(real_add(xi, real_mul_int(a.value, n)))
            for xi, a in zip(x, self.alphas)
        )

    def dist_sq(self, x: RotPoint, y: RotPoint) -> Real:
        total: Real = Fraction(0)
        for xi, yi in zip(x, y):
            d = torus_norm1(real_sub(xi, yi))
            total = real_add(total, real_mul(d, d))
        return total

    def dist(self, x: RotPoint, y: RotPoint) -> Real:
        if self.dim == 1:
            return torus_norm1(real_sub(x[0], y[0]))
        return real_sqrt(self.dist_sq(x, y))

    def dist_lt(self, x: RotPoint, y: RotPoint, t: Fraction) -> bool:
        if self.dim == 1:
            return real_cmp(torus_norm1(real_sub(x[0], y[0])), t) < 0
        return real_cmp(self.dist_sq(x, y), Fraction(t) * Fraction(t)) < 0

    def displacement_norm(self, n: int) -> Real:
        """Exact displacement of the n-th iterate: dist(x, T^n x), any x."""
        if self.dim == 1:
            return self.alphas[0].multiple_norm(n)
        return real_sqrt(
            sum_real(real_squared(torus_norm1(a.multiple(n))) for a in self.alphas)
        )


def sum_real(values) -> Real:
    total: Real = Fraction(0)
    for v in values:
        total = real_add(total, v)
    return total


def real_squared(x: Real) -> Real:
    return real_mul(x, x)


@dataclass(frozen=True)
class BallSpec:
    """Open metric ball.  For rotations the center is a torus point vector."""

    center: tuple
    radius: Fraction

    def __post_init__(self):
        if Fraction(self.radius) <= 0:
            raise ValueError("radius must be positive")

    def enlarged(self, margin: Fraction) -> "BallSpec":
        return BallSpec(self.center, Fraction(self.radius) + Fraction(margin))


@dataclass(frozen=True)
class CylinderSpec:
    """Subshift cylinder: coordinates pinned to symbols."""

    fixed: tuple[tuple[int, int], ...]


def one_cylinder() -> CylinderSpec:
    """The cylinder 'coordinate 0 shows symbol 1'."""
    return CylinderSpec(fixed=((0, 1),))


@dataclass(frozen=True)
class SubshiftSystem:
    """Shifts of the indicator word of a finite integer listing."""

    members: frozenset
    window: Window
    minimal_declared: bool = False

    def symbol(self, i: int) -> int:
        if i not in self.window:
            raise WindowInadequate(
                f"coordinate {i} outside declared window [{self.window.lo}, {self.window.hi}]"
            )
        return 1 if i in self.members else 0

    def require_horizon(self, horizon: int):
        # window must cover 4x the horizon on both sides of 0
        if self.window.lo > -4 * horizon or self.window.hi < 4 * horizon:
            raise WindowInadequate(
                f"declared window [{self.window.lo}, {self.window.hi}] is smaller "
                f"than 4x horizon {horizon}"
            )

    def first_difference(self, off1: int, off2: int, scan: int) -> Optional[int]:
        """min |i| <= scan with differing symbols, or None if they agree."""
        for i in range(scan + 1):
            if self.symbol(i + off1) != self.symbol(i + off2):
                return i
            if i and self.symbol(-i + off1) != self.symbol(-i + off2):
                return i
        return None

    def dist(self, off1: int, off2: int, scan: int) -> Fraction:
        j = self.first_difference(off1, off2, scan)
        return Fraction(0) if j is None else Fraction(1, 2**j)


def subshift_from_indicator(s: ZSetLike, window: Window) -> SubshiftSystem:
    """Two-sided indicator word of s on the declared window.

    The listing may contain 0: indicator words live on the integers, not on
    the nonzero convention.
    """
    members = frozenset(as_int_list(s))
    return SubshiftSystem(members=members, window=window)


System = Union[RotationSystem, SubshiftSystem]


# ---------------------------------------------------------------------------
# membership and return times
# ---------------------------------------------------------------------------


def _cylinder_scan_depth(radius: Fraction) -> int:
    """Largest K with: agreeing on |i| <= K-1 iff distance < radius."""
    k = 0
    while Fraction(1, 2**k) >= radius:
        k += 1
        if k > 10_000:
            raise ValueError("radius too small for a subshift ball")
    return k  # distance < radius  <=>  first difference index >= k


def in_target(sys_: System, point, target) -> bool:
    if isinstance(sys_, RotationSystem):
        if not isinstance(target, BallSpec):
            raise TypeError("rotation targets are balls")
        center = sys_.point(target.center)
        return sys_.dist_lt(point, center, Fraction(target.radius))
    if isinstance(target, CylinderSpec):
        return all(sys_.symbol(pos + point) == sym for pos, sym in target.fixed)
    if isinstance(target, BallSpec):
        k = _cylinder_scan_depth(Fraction(target.radius))
        if k == 0:
            return True  # radius > 1: the whole space
        center = int(target.center) if not isinstance(target.center, tuple) else int(target.center[0])
        return sys_.first_difference(point, center, k - 1) is None
    raise TypeError("subshift targets are cylinders or balls")


def return_times_point(sys_: System, x, target, horizon: int) -> TimeSet:
    """{n in [-H, H] : T^n x in target}; 0 belongs when x itself does."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    hits = []
    if isinstance(sys_, RotationSystem):
        x = sys_.point(x)
        for n in range(-horizon, horizon + 1):
            if in_target(sys_, sys_.step(x, n), target):
                hits.append(n)
        return tuple(hits)
    sys_.require_horizon(max(1, horizon // 4 + 1))
    base = int(x)
    for n in range(-horizon, horizon + 1):
        if in_target(sys_, base + n, target):
            hits.append(n)
    return tuple(hits)


def return_times_set(sys_: RotationSystem, target: BallSpec, horizon: int) -> TimeSet:
    """{n in [-H, H] : T^n U meets U} for an open ball U; exact for rotations.

    Two radius-rho balls on the torus overlap exactly when the displacement
    norm is below 2*rho, independently of the center.
    """
    if not isinstance(sys_, RotationSystem):
        raise TypeError("set-level return times are exact for rotations only")
    two_rho = 2 * Fraction(target.radius)
    hits = []
    for n in range(-horizon, horizon + 1):
        norm = sys_.displacement_norm(n)
        if real_cmp(norm, two_rho) < 0:
            hits.append(n)
    return tuple(hits)


# ---------------------------------------------------------------------------
# the return-set identity check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NuuReport:
    set_returns: TimeSet
    point_returns: TimeSet
    forward_exceptions: tuple[int, ...]   # differences missing from N(U,U)
    reverse_exceptions: tuple[int, ...]   # N(U,U) entries with no difference repr
    margin: Fraction
    horizon: int
    window_ratio: int
    minimal_declared: bool

    @property
    def clean(self) -> bool:
        return not self.forward_exceptions and not self.reverse_exceptions


def verify_nuu(
    sys_: RotationSystem,
    target: BallSpec,
    x,
    horizon: int,
    margin: Fraction = Fraction(1, 100),
) -> NuuReport:
    """Check both inclusions between N(U,U) and N(x,U) - N(x,U).

    Forward: every difference of point return times lies in the set return
    times (exact, same horizon).  Reverse: every set return time in [-H, H]
    is a difference of point return times of the margin-enlarged ball, with
    the point returns drawn from the 4H window.
    """
    margin = Fraction(margin)
    x = sys_.point(x)
    point_returns = return_times_point(sys_, x, target, horizon)
    set_returns = return_times_set(sys_, target, horizon)
    set_lookup = set(set_returns)

    forward = sorted(
        {a - b for a in point_returns for b in point_returns if abs(a - b) <= horizon}
        - set_lookup
    )

    big_h = 4 * horizon
    enlarged = target.enlarged(margin)
    big_returns = set(return_times_point(sys_, x, enlarged, big_h))
    reverse = []
    for n in set_returns:
        # need m with both m and n+m hitting the enlarged ball inside [-4H, 4H]
        if not any((m + n) in big_returns for m in big_returns if abs(m + n) <= big_h):
            reverse.append(n)

    return NuuReport(
        set_returns=set_returns,
        point_returns=point_returns,
        forward_exceptions=tuple(forward),
        reverse_exceptions=tuple(reverse),
        margin=margin,
        horizon=horizon,
        window_ratio=4,
        minimal_declared=sys_.minimal_declared,
    )


@dataclass(frozen=True)
class DiffSupersetReport:
    observed: TimeSet                     # indicator-word return times, [-H, H]
    inclusion_failures: tuple[int, ...]   # observed times missing from S - S
    bohr_spec: Optional[object]           # BohrSpec on success
    bohr_inside: bool                     # spec's set (windowed) inside S - S

    @property
    def clean(self) -> bool:
        return not self.inclusion_failures


def check_difference_superset(
    s: ZSetLike, horizon: int, alpha_hints: Sequence[TorusPoint] = ()
) -> DiffSupersetReport:
    """Indicator-word return times versus the difference set, plus a search
    for a frequency spec whose windowed set sits inside S - S."""
    from .bohr import BohrSpec

    listing = as_int_list(s)
    if not listing:
        raise NoElementsInWindow("empty listing")
    window = Window(min(listing) - 1, max(listing) + 1)
    members = set(listing)

    # observed return times of the cylinder {word shows 1 at coordinate 0}
    observed = []
    anchors = [m for m in listing if abs(m) <= 2 * horizon]
    anchor_set = set(anchors)
    for n in range(-horizon, horizon + 1):
        if any((m + n) in members for m in anchors):
            observed.append(n)
    observed = tuple(sorted(set(observed)))

    diffs = {a - b for a in listing for b in listing}
    failures = tuple(n for n in observed if n not in diffs)

    # frequency-spec probe: rational grid candidates plus caller hints
    candidates: list[TorusPoint] = list(alpha_hints)
    for q in range(2, 13):
        for p in range(1, q):
            if Fraction(p, q).denominator == q:
                candidates.append(TorusPoint(Fraction(p, q)))
    spec = None
    inside = False
    in_window_non_diffs = [n for n in range(-horizon, horizon + 1) if n and n not in diffs]
    for alpha in candidates:
        worst: Optional[Real] = None
        for n in in_window_non_diffs:
            norm = alpha.multiple_norm(n)
            if worst is None or real_cmp(norm, worst) < 0:
                worst = norm
        if in_window_non_diffs and (worst is None or real_cmp(worst, Fraction(0)) <= 0):
            continue
        if not in_window_non_diffs:
            worst = Fraction(1, 2)
        eps = _real_to_fraction_floor(worst)
        if eps <= 0:
            continue
        eps = min(eps, Fraction(1, 2))
        spec = BohrSpec(alphas=(alpha,), eps=eps)
        inside = True
        break

    return DiffSupersetReport(
        observed=observed,
        inclusion_failures=failures,
        bohr_spec=spec,
        bohr_inside=inside,
    )


def _real_to_fraction_floor(x: Real) -> Fraction:
    """A positive rational lower bound of x (0 when x may be 0)."""
    from .exactreal import real_bounds

    lo, _ = real_bounds(x, 128)
    return lo if lo > 0 else Fraction(0)


# ---------------------------------------------------------------------------
# recurrence functionals
# ---------------------------------------------------------------------------


def phi_l(sys_: System, x, targets: ZSetLike, horizon: int) -> Real:
    """Minimum of dist(T^n x, x) over target times n within the horizon."""
    times = [n for n in as_int_list(targets) if abs(n) <= horizon and n != 0]
    if not times:
        raise NoElementsInWindow("no target times inside the horizon")
    if isinstance(sys_, RotationSystem):
        x = sys_.point(x)
        return real_min(sys_.dist(sys_.step(x, n), x) for n in times)
    sys_.require_horizon(max(abs(n) for n in times))
    base = int(x)
    scan = min(sys_.window.hi // 2, 4 * horizon)
    return real_min(sys_.dist(base + n, base, scan) for n in times)


@dataclass(frozen=True)
class MovingQuery:
    n_terms: tuple[int, ...]
    r_terms: tuple[int, ...]
    horizon: int
    eps: Fraction

    def __post_init__(self):
        if len(self.n_terms) != len(self.r_terms) or len(self.n_terms) != self.horizon:
            raise ValueError("term lists must have length = horizon")

    @classmethod
    def from_callables(
        cls,
        n_of_k: Callable[[int], int],
        r_of_k: Optional[Callable[[int], int]],
        horizon: int,
        eps: Fraction,
    ) -> "MovingQuery":
        r_of_k = r_of_k or (lambda k: k)
        return cls(
            n_terms=tuple(int(n_of_k(k)) for k in range(1, horizon + 1)),
            r_terms=tuple(int(r_of_k(k)) for k in range(1, horizon + 1)),
            horizon=horizon,
            eps=Fraction(eps),
        )


def psi_moving(sys_: System, x, query: MovingQuery) -> Real:
    """min over k of dist(T^(n_k + r_k) x, T^(n_k) x) within the horizon."""
    if isinstance(sys_, RotationSystem):
        x = sys_.point(x)
        return real_min(
            sys_.dist(sys_.step(x, n + r), sys_.step(x, n))
            for n, r in zip(query.n_terms, query.r_terms)
        )
    reach = max(abs(n) + abs(r) for n, r in zip(query.n_terms, query.r_terms))
    sys_.require_horizon(reach)
    base = int(x)
    scan = sys_.window.hi // 2
    return real_min(
        sys_.dist(base + n + r, base + n, scan)
        for n, r in zip(query.n_terms, query.r_terms)
    )


@dataclass(frozen=True)
class RecurrentWitness:
    point: tuple
    time: int
    value: Real


def find_l_recurrent(
    sys_: System, targets: ZSetLike, eps: Fraction, sample_budget: int = 5_000
) -> Optional[RecurrentWitness]:
    """A point and a target time bringing it eps-close to itself, if the
    sampled search finds one within its budget."""
    eps = Fraction(eps)
    times = [n for n in as_int_list(targets) if n != 0]
    if not times:
        raise NoElementsInWindow("no target times")
    if isinstance(sys_, RotationSystem):
        # displacement is point-independent: scan target times only
        budgeted = times[:sample_budget]
        for n in budgeted:
            norm = sys_.displacement_norm(n)
            if real_cmp(norm, eps) < 0:
                return RecurrentWitness(point=sys_.zero(), time=n, value=norm)
        return None
    scan_budget = sample_budget
    scan = max(8, sys_.window.hi // 4)
    for off in _alternating(sys_.window.hi // 2):
        for n in times:
            if scan_budget <= 0:
                return None
            scan_budget -= 1
            try:
                d = sys_.dist(off + n, off, scan)
            except WindowInadequate:
                continue
            if d < eps:
                return RecurrentWitness(point=(off,), time=n, value=d)
    return None


def _alternating(limit: int):
    yield 0
    for i in range(1, limit + 1):
        yield i
        yield -i


@dataclass(frozen=True)
class EtaDenseResult:
    constant: int
    max_gap: Real


def eta_dense_constant(sys_: RotationSystem, eta: Fraction, hard_cap: int = 1_000_000) -> EtaDenseResult:
    """Least M with {x, Tx, ..., T^M x} eta-dense for every x (circle case).

    Eta-density of the orbit segment is max circular gap <= 2*eta; rotations
    make the segment's gap structure independent of x.
    """
    from .bohr import three_distance

    if sys_.dim != 1:
        raise NotImplementedError("density constants are computed on the circle")
    eta = Fraction(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    alpha = sys_.alphas[0]
    bound = 2 * eta
    if alpha.is_rational:
        q = alpha.value.denominator
        if Fraction(1, q) > bound:
            raise NoSuchM(
                f"orbit closes after {q} points with gap 1/{q} > 2*eta; "
                "no density constant exists"
            )
        cap = q
    else:
        cap = hard_cap
    for m in range(1, cap + 1):
        gaps = three_distance(alpha, m)
        worst = gaps.gaps[-1]
        if real_le(worst, bound):
            return EtaDenseResult(constant=m, max_gap=worst)
    raise NoSuchM(f"no density constant up to {cap}")


@dataclass(frozen=True)
class RigidityRecord:
    time: int
    value: Real


def uniform_rigidity_scan(
    sys_: System, horizon: int, sample_offsets: Sequence[int] = ()
) -> tuple[RigidityRecord, ...]:
    """Record minima of the sup displacement sup_x dist(x, T^m x), m = 1..H.

    Exact for rotations (the sup is the displacement norm).  Subshifts use
    sampled shifts of the base word, which can only underestimate the sup;
    records are still monotone by construction.
    """
    records: list[RigidityRecord] = []
    best: Optional[Real] = None
    if isinstance(sys_, RotationSystem):
        for m in range(1, horizon + 1):
            v = sys_.displacement_norm(m)
            if best is None or real_cmp(v, best) < 0:
                records.append(RigidityRecord(m, v))
                best = v
        return tuple(records)
    offsets = list(sample_offsets) or list(range(-8, 9))
    scan = max(4, sys_.window.hi // 4)
    for m in range(1, horizon + 1):
        worst: Optional[Real] = None
        for off in offsets:
            try:
                d = sys_.dist(off, off + m, scan)
            except WindowInadequate:
                continue
            if worst is None or d > worst:
                worst = d
        if worst is None:
            continue
        if best is None or real_cmp(worst, best) < 0:
            records.append(RigidityRecord(m, worst))
            best = worst
    return tuple(records)


@dataclass(frozen=True)
class MovingExperimentReport:
    fraction_below: Fraction
    psi_values: tuple[float, ...]
    psi_min: float
    psi_max: float
    sample_count: int
    horizon: int
    eps: Fraction
    note: str


def moving_recurrence_experiment(
    sys_: System, query: MovingQuery, samples: int = 10
) -> MovingExperimentReport:
    """Evaluate the moving-recurrence functional on a deterministic sample
    grid and report the fraction below the query tolerance."""
    if samples < 1:
        raise ValueError("need at least one sample point")
    psi = []
    below = 0
    if isinstance(sys_, RotationSystem):
        points = [
            tuple(Fraction(i, samples) for _ in range(sys_.dim)) for i in range(samples)
        ]
    else:
        points = [(off,) for off in list(_alternating(samples))[:samples]]
    for pt in points:
        value = psi_moving(sys_, pt if isinstance(sys_, RotationSystem) else pt[0], query)
        psi.append(real_to_float(value))
        if real_cmp(value, query.eps) < 0:
            below += 1
    return MovingExperimentReport(
        fraction_below=Fraction(below, samples),
        psi_values=tuple(psi),
        psi_min=min(psi),
        psi_max=max(psi),
        sample_count=samples,
        horizon=query.horizon,
        eps=query.eps,
        note=HORIZON_NOTE,
    )


def word_complexity(sys_: SubshiftSystem, length: int) -> int:
    """Distinct length-`length` factors of the base word (window-limited)."""
    lo, hi = sys_.window.lo, sys_.window.hi - length + 1
    seen = set()
    for start in range(lo, hi + 1):
        seen.add(tuple(sys_.symbol(start + i) for i in range(length)))
    return len(seen)
