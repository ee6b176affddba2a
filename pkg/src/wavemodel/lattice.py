"""Lattice-valued functions of a radius, order limits, nuclei and atoms.

A function t -> open set is realized on a finite strictly increasing grid
of positive rationals.  Decreasing nets are either explicit finite chains
or parametric families sampled on the geometric schedule eps_0 * 2^-k
with stabilization detection.  On finite backends interior and closure
are identity maps, which collapses several of the continuum-side bounds
to set equalities; the functions below still compute both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .metric import (
    INFINITY,
    FiniteMetricSpace,
    MetricError,
    PointSet,
    closed_ball,
    condition2_report,
    check_condition1,
    neighborhood,
    open_ball,
    wave_distance_matrix,
)


class GridError(MetricError):
    """Time grid is malformed or too coarse for the requested construction."""


class NetError(MetricError):
    """A net is not decreasing or a parametric family fails to stabilize."""


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing positive rationals t_1 < ... < t_m, m >= 2."""

    values: tuple

    def __post_init__(self):
        if len(self.values) < 2:
            raise GridError("grid needs at least 2 values")
        if self.values[0] <= 0:
            raise GridError("grid values must be positive")
        for a, b in zip(self.values, self.values[1:]):
            if b <= a:
                raise GridError("grid values must be strictly increasing")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def make_grid(lo, hi, count: int = 64, law: str = "geometric") -> TimeGrid:
    """Build a grid between lo and hi.

    Geometric spacing goes through floats and converts back to exact binary
    rationals, so grid values essentially never coincide with the decimal
    rationals of the test spaces (which keeps grid brackets unambiguous).
    """
    if count < 2:
        raise GridError("count must be >= 2")
    if not 0 < lo < hi:
        raise GridError("need 0 < lo < hi")
    if law == "linear":
        lo, hi = Fraction(lo), Fraction(hi)
        step = (hi - lo) / (count - 1)
        vals = tuple(lo + k * step for k in range(count))
    elif law == "geometric":
        ratio = (float(hi) / float(lo)) ** (1.0 / (count - 1))
        vals = [Fraction(float(lo) * ratio ** k) for k in range(1, count - 1)]
        vals = tuple([Fraction(lo)] + vals + [Fraction(hi)])
    else:
        raise GridError(f"unknown spacing law {law!r}")
    return TimeGrid(vals)


def default_grid(space: FiniteMetricSpace, count: int = 64) -> TimeGrid:
    """Geometric grid from min-positive-distance/4 to twice the diameter."""
    if space.n == 1:
        return make_grid(Fraction(1, 4), Fraction(2), count)
    lo = Fraction(space.min_positive_distance()) / 4
    hi = 2 * Fraction(space.diameter())
    return make_grid(lo, hi, count)


@dataclass(frozen=True)
class LatticeFunction:
    """Monotone nondecreasing map from grid values to open sets."""

    grid: TimeGrid
    sets: tuple

    def __post_init__(self):
        if len(self.sets) != len(self.grid):
            raise GridError("one set per grid value required")
        for a, b in zip(self.sets, self.sets[1:]):
            if not a <= b:
                raise NetError("lattice function is not monotone in t")

    def __call__(self, i: int) -> PointSet:
        return self.sets[i]

    def leq(self, other: "LatticeFunction") -> bool:
        if self.grid != other.grid:
            raise GridError("grids differ")
        return all(a <= b for a, b in zip(self.sets, other.sets))

    def to_json(self) -> dict:
        return {
            "grid": [str(t) for t in self.grid],
            "sets": [sorted(s) for s in self.sets],
        }


@dataclass(frozen=True)
class DecreasingNet:
    """A decreasing chain of open sets, or a parametric family G_eps.

    Families must shrink as eps decreases; they are sampled at
    eps_0 * 2^-k until two successive samples coincide.
    """

    chain: tuple | None = None
    family: Callable | None = None
    eps0: Fraction = Fraction(1)

    @classmethod
    def from_chain(cls, sets: Sequence[PointSet]) -> "DecreasingNet":
        sets = tuple(frozenset(s) for s in sets)
        if not sets:
            raise NetError("empty chain")
        for a, b in zip(sets, sets[1:]):
            if not b <= a:
                raise NetError("chain is not decreasing")
        return cls(chain=sets)

    @classmethod
    def from_family(cls, family: Callable, eps0=Fraction(1)) -> "DecreasingNet":
        eps0 = Fraction(eps0)
        if eps0 <= 0:
            raise NetError("eps0 must be positive")
        return cls(family=family, eps0=eps0)


_MAX_HALVINGS = 64


def _sample_family(net: DecreasingNet) -> tuple:
    """Sample G_eps on the geometric schedule until it stabilizes."""
    sets = []
    eps = net.eps0
    prev = None
    for _ in range(_MAX_HALVINGS):
        cur = frozenset(net.family(eps))
        if prev is not None and not cur <= prev:
            raise NetError(f"family is not decreasing at eps={eps}")
        sets.append(cur)
        if prev is not None and cur == prev:
            return tuple(sets)
        prev = cur
        eps /= 2
    raise NetError(f"family did not stabilize within {_MAX_HALVINGS} halvings")


def net_members(net: DecreasingNet) -> tuple:
    return net.chain if net.chain is not None else _sample_family(net)


def isotony_apply(space: FiniteMetricSpace, g: PointSet, grid: TimeGrid) -> LatticeFunction:
    """The image of an open set under the metric isotony: t -> G^t."""
    g = frozenset(g)
    return LatticeFunction(grid, tuple(neighborhood(space, g, t) if g else frozenset()
                                       for t in grid))


def isotony_monotone_check(space: FiniteMetricSpace, g: PointSet, h: PointSet,
                           grid: TimeGrid) -> bool:
    """G <= H must imply IG <= IH pointwise; vacuously true otherwise."""
    g, h = frozenset(g), frozenset(h)
    if not g <= h:
        return True
    return isotony_apply(space, g, grid).leq(isotony_apply(space, h, grid))


def net_limit(space: FiniteMetricSpace, net: DecreasingNet, grid: TimeGrid) -> LatticeFunction:
    """Order limit of the decreasing net of isotony images.

    Per grid point: interior of the intersection of G_alpha^t over the
    (sampled) net.  Interior is the identity on finite backends; the
    intersection of a stabilized decreasing chain is its last member's
    neighborhood, but it is computed as an actual intersection.
    """
    members = net_members(net)
    sets = []
    for t in grid:
        cur = None
        for g in members:
            nb = neighborhood(space, g, t) if g else frozenset()
            cur = nb if cur is None else cur & nb
        sets.append(cur)
    return LatticeFunction(grid, tuple(sets))


def nucleus(g: LatticeFunction) -> PointSet:
    """Intersection of g over the grid (with closures: identical here).

    Monotonicity makes it the smallest-t value; the full intersection is
    still taken so the identity is exercised, not assumed.
    """
    out = g.sets[0]
    for s in g.sets[1:]:
        out = out & s
    return out


@dataclass(frozen=True)
class SandwichRecord:
    t: Fraction
    lower_ok: bool
    upper_ok: bool


def sandwich_check(space: FiniteMetricSpace, g: LatticeFunction) -> tuple:
    """Two-sided nucleus bound at every grid point.

    Lower: (nucleus)^t inside g(t).  Upper: g(t) inside the interior of the
    closure of (nucleus)^t, which on a finite backend is (nucleus)^t itself,
    so with a nonempty nucleus the check collapses to set equality.
    Failures are reported, never raised.
    """
    core = nucleus(g)
    records = []
    for t, s in zip(g.grid, g.sets):
        core_t = neighborhood(space, core, t) if core else frozenset()
        records.append(SandwichRecord(t, core_t <= s, s <= core_t))
    return tuple(records)


def b_star_lower(space: FiniteMetricSpace, x: int, grid: TimeGrid) -> LatticeFunction:
    """t -> open ball B_t(x)."""
    return LatticeFunction(grid, tuple(open_ball(space, x, t) for t in grid))


def b_star_upper(space: FiniteMetricSpace, x: int, grid: TimeGrid) -> LatticeFunction:
    """t -> interior of the closed ball B_t[x] (the ball itself here)."""
    return LatticeFunction(grid, tuple(closed_ball(space, x, t) for t in grid))


# ---------------------------------------------------------------------------
# Equivalence classes and atoms


def class_equivalent(f: LatticeFunction, g: LatticeFunction) -> bool:
    return nucleus(f) == nucleus(g)


def class_leq(f: LatticeFunction, g: LatticeFunction) -> bool:
    return nucleus(f) <= nucleus(g)


@dataclass(frozen=True)
class AtomClass:
    """Equivalence class keyed by its nucleus, with one representative."""

    nucleus: PointSet
    representative: LatticeFunction


def is_atom(c: AtomClass) -> bool:
    """Atoms are exactly the classes with a singleton nucleus; the empty
    nucleus is the least class, not an atom."""
    return len(c.nucleus) == 1


# ---------------------------------------------------------------------------
# Wave distance on the grid and the wave model


def wave_distance_classes(a: LatticeFunction, b: LatticeFunction):
    """Bracket (lower, upper) for tau between two class representatives.

    tau/2 lies between the last grid t with empty intersection and the
    first with nonempty intersection; the bracket is (0, 2 t_1) degenerated
    to lower 0 when they already meet at t_1, and (2 t_m, INFINITY) when
    they never meet on the grid.  The flip index is found by bisection --
    intersection is monotone in t for monotone functions.
    """
    if a.grid != b.grid:
        raise GridError("grids differ")
    m = len(a.grid)
    if not (a.sets[-1] & b.sets[-1]):
        return 2 * a.grid.values[-1], INFINITY
    lo, hi = 0, m - 1  # invariant: sets intersect at hi
    while lo < hi:
        mid = (lo + hi) // 2
        if a.sets[mid] & b.sets[mid]:
            hi = mid
        else:
            lo = mid + 1
    first = lo
    lower = 0 if first == 0 else 2 * a.grid.values[first - 1]
    return lower, 2 * a.grid.values[first]


def check_grid_admissible(space: FiniteMetricSpace, grid: TimeGrid) -> None:
    """Refuse grids whose range cannot resolve nuclei and brackets."""
    if space.n == 1:
        return
    need_lo = Fraction(space.min_positive_distance()) / 2
    need_hi = space.diameter()
    if not grid.values[0] < need_lo:
        raise GridError(
            f"grid too coarse: smallest value {grid.values[0]} must be below "
            f"half the minimum positive distance ({need_lo})")
    if not grid.values[-1] > need_hi:
        raise GridError(
            f"grid too coarse: largest value {grid.values[-1]} must exceed "
            f"the diameter ({need_hi})")


@dataclass(frozen=True)
class WaveModelResult:
    atoms: tuple
    tau: list
    max_abs_tau_minus_d: object
    homothety_c: object
    condition1: dict
    condition2: dict
    brackets: list | None = None
    warnings: tuple = ()


def wave_model(space: FiniteMetricSpace, grid: TimeGrid,
               include_brackets: bool = False,
               include_defects: bool = True) -> WaveModelResult:
    """Construct the atom set and the wave-distance matrix, plus a report.

    One atom per point, represented by the open-ball function; the grid is
    refused if it cannot isolate singleton nuclei.  tau comes from the
    closed form 2 min_z max(d(x,z), d(y,z)); brackets, when requested, from
    grid-level intersection of the representatives.
    """
    check_grid_admissible(space, grid)
    n = space.n
    warnings = []
    atoms = []
    reps = []
    for x in space.points():
        rep = b_star_lower(space, x, grid)
        core = nucleus(rep)
        if core != frozenset({x}):
            warnings.append(f"nucleus of point {x} is {sorted(core)}, not a singleton")
        atoms.append(AtomClass(core, rep))
        reps.append(rep)
    tau = wave_distance_matrix(space)
    max_dev = max((abs(tau[i][j] - space.dist[i][j])
                   for i in range(n) for j in range(i + 1, n)), default=0)
    num = sum(tau[i][j] * space.dist[i][j] for i in range(n) for j in range(i + 1, n))
    den = sum(space.dist[i][j] ** 2 for i in range(n) for j in range(i + 1, n))
    c = num / den if den else None
    brackets = None
    if include_brackets:
        brackets = [[None] * n for _ in range(n)]
        for i in range(n):
            brackets[i][i] = (0, 0)
            for j in range(i + 1, n):
                br = wave_distance_classes(reps[i], reps[j])
                brackets[i][j] = brackets[j][i] = br
    cond2 = condition2_report(space) if include_defects else {}
    return WaveModelResult(
        atoms=tuple(atoms), tau=tau, max_abs_tau_minus_d=max_dev,
        homothety_c=c, condition1=check_condition1(space), condition2=cond2,
        brackets=brackets, warnings=tuple(warnings))
