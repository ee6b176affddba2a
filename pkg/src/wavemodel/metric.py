"""Finite metric-space backends, metric neighborhoods and ball arithmetic.

Every backend reduces to a labeled point set with a validated distance
matrix.  Exact backends (graph geodesics with rational weights, discrete
metric, uniform segment samples, rational matrices) store distances as
``Fraction`` and compare exactly; the Euclidean backend stores floats and
compares with a single global tolerance ``eta``.

Open sets are plain ``frozenset`` objects of point indices: a finite
metric space carries the discrete topology, so every subset is clopen and
interior/closure are identity maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

#: Sentinel for the distance to the empty set (inf over the empty family).
INFINITY = math.inf

PointSet = frozenset


class MetricError(ValueError):
    """Bad input to a metric-space constructor or operation."""


class AxiomViolation(MetricError):
    """A metric axiom fails.  ``witness`` holds the offending indices."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


def _lt(a, b, eta: float) -> bool:
    # strict "a < b"; values within eta of the threshold count as "in"
    return a < b if eta == 0 else a <= b + eta


def _le(a, b, eta: float) -> bool:
    return a <= b if eta == 0 else a <= b + eta


@dataclass(frozen=True)
class FiniteMetricSpace:
    """n labeled points with a symmetric, triangle-valid distance matrix.

    Immutable after construction; all operations below are pure functions,
    so concurrent use needs no synchronization.
    """

    dist: tuple
    labels: tuple
    eta: float = 0.0

    def __post_init__(self):
        n = len(self.dist)
        if n == 0:
            raise MetricError("a metric space needs at least one point")
        if len(self.labels) != n:
            raise MetricError("label count does not match matrix size")
        for i, row in enumerate(self.dist):
            if len(row) != n:
                raise AxiomViolation(f"row {i} has length {len(row)}, expected {n}", (i,))
        eta = self.eta
        for i in range(n):
            if abs(self.dist[i][i]) > eta:
                raise AxiomViolation(f"d({i},{i}) = {self.dist[i][i]} != 0", (i,))
            for j in range(i + 1, n):
                if abs(self.dist[i][j] - self.dist[j][i]) > eta:
                    raise AxiomViolation(
                        f"asymmetric: d({i},{j}) != d({j},{i})", (i, j))
                if self.dist[i][j] <= eta:
                    raise AxiomViolation(
                        f"d({i},{j}) = {self.dist[i][j]} <= 0 for distinct points", (i, j))
        for i in range(n):
            di = self.dist[i]
            for j in range(n):
                dij = di[j]
                dj = self.dist[j]
                for k in range(n):
                    # subtract first so exact backends never touch the float eta
                    if di[k] - dij - dj[k] > eta:
                        raise AxiomViolation(
                            f"triangle inequality fails on ({i},{j},{k}): "
                            f"d({i},{k}) > d({i},{j}) + d({j},{k})", (i, j, k))

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, i: int, j: int):
        return self.dist[i][j]

    @property
    def exact(self) -> bool:
        return self.eta == 0

    def points(self) -> range:
        return range(self.n)

    def universe(self) -> PointSet:
        return frozenset(range(self.n))

    def min_positive_distance(self):
        return min(self.dist[i][j]
                   for i in range(self.n) for j in range(i + 1, self.n))

    def diameter(self):
        if self.n == 1:
            return 0
        return max(self.dist[i][j]
                   for i in range(self.n) for j in range(i + 1, self.n))


# ---------------------------------------------------------------------------
# Backends


def build_from_points(coords: Sequence[Sequence[float]],
                      labels: Sequence[str] | None = None,
                      eta: float = 1e-9) -> FiniteMetricSpace:
    """Euclidean backend: float distances, tolerance ``eta``."""
    if not coords:
        raise MetricError("empty point cloud")
    dim = len(coords[0])
    for i, c in enumerate(coords):
        if len(c) != dim:
            raise MetricError(f"point {i} has dimension {len(c)}, expected {dim}")
    n = len(coords)
    dist = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dij = math.dist(coords[i], coords[j])
            if dij <= eta:
                raise MetricError(f"duplicate points {i} and {j}")
            dist[i][j] = dist[j][i] = dij
    if labels is None:
        labels = [str(i) for i in range(n)]
    return FiniteMetricSpace(tuple(map(tuple, dist)), tuple(labels), eta=eta)


def build_from_graph(edges: Iterable[tuple], n: int | None = None,
                     labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Geodesic backend: all-pairs shortest paths of a weighted graph.

    Rational/integer weights give an exact space; float weights fall back
    to the default tolerance.
    """
    g = nx.Graph()
    exact = True
    for i, j, w in edges:
        if w <= 0:
            raise MetricError(f"nonpositive weight on edge ({i},{j})")
        if isinstance(w, float):
            exact = False
        g.add_edge(i, j, weight=w)
    if n is not None:
        g.add_nodes_from(range(n))
    if g.number_of_nodes() == 0:
        raise MetricError("graph has no nodes")
    nodes = sorted(g.nodes())
    if nodes != list(range(len(nodes))):
        raise MetricError("graph nodes must be 0-based consecutive indices")
    if not nx.is_connected(g):
        raise MetricError("graph is disconnected: no finite metric")
    m = len(nodes)
    lengths = dict(nx.all_pairs_dijkstra_path_length(g, weight="weight"))
    dist = [[lengths[i][j] for j in range(m)] for i in range(m)]
    if labels is None:
        labels = [str(i) for i in range(m)]
    return FiniteMetricSpace(tuple(map(tuple, dist)), tuple(labels),
                             eta=0.0 if exact else 1e-9)


def build_discrete(n: int) -> FiniteMetricSpace:
    """d(x,y) = 1 for x != y, 0 otherwise."""
    if n < 1:
        raise MetricError("n must be >= 1")
    dist = tuple(tuple(Fraction(0) if i == j else Fraction(1) for j in range(n))
                 for i in range(n))
    return FiniteMetricSpace(dist, tuple(str(i) for i in range(n)))


def build_segment_sample(samples: int, length=Fraction(1)) -> FiniteMetricSpace:
    """Uniform exact sample of the segment [0, length]."""
    if samples < 2:
        raise MetricError("need at least 2 samples")
    length = Fraction(length)
    if length <= 0:
        raise MetricError("length must be positive")
    step = length / (samples - 1)
    dist = tuple(tuple(abs(i - j) * step for j in range(samples))
                 for i in range(samples))
    labels = tuple(str(i * step) for i in range(samples))
    return FiniteMetricSpace(dist, labels)


def build_from_matrix(rows: Sequence[Sequence], labels: Sequence[str] | None = None,
                      eta: float | None = None) -> FiniteMetricSpace:
    exact = all(not isinstance(v, float) for row in rows for v in row)
    if eta is None:
        eta = 0.0 if exact else 1e-9
    if labels is None:
        labels = [str(i) for i in range(len(rows))]
    return FiniteMetricSpace(tuple(map(tuple, rows)), tuple(labels), eta=eta)


# ---------------------------------------------------------------------------
# Neighborhoods and balls


def set_distance(space: FiniteMetricSpace, x: int, a: PointSet):
    """d(x, A) = inf over A; INFINITY for the empty set."""
    if not 0 <= x < space.n:
        raise MetricError(f"point index {x} out of range")
    if not a:
        return INFINITY
    row = space.dist[x]
    return min(row[p] for p in a)


def neighborhood(space: FiniteMetricSpace, a: PointSet, t) -> PointSet:
    """A^t = {x : d(x, A) < t}; the empty set maps to itself."""
    if t <= 0:
        raise MetricError(f"radius must be positive, got {t}")
    if not a:
        return frozenset()
    eta = space.eta
    dist = space.dist
    return frozenset(x for x in range(space.n)
                     if _lt(min(dist[x][p] for p in a), t, eta))


def open_ball(space: FiniteMetricSpace, x: int, r) -> PointSet:
    if r <= 0:
        raise MetricError(f"radius must be positive, got {r}")
    row = space.dist[x]
    eta = space.eta
    return frozenset(y for y in range(space.n) if _lt(row[y], r, eta))


def closed_ball(space: FiniteMetricSpace, x: int, r) -> PointSet:
    if r <= 0:
        raise MetricError(f"radius must be positive, got {r}")
    row = space.dist[x]
    eta = space.eta
    return frozenset(y for y in range(space.n) if _le(row[y], r, eta))


def semigroup_defect(space: FiniteMetricSpace, a: PointSet, r, s):
    """Return the pair ((A^r)^s, A^{r+s}) for the caller to compare.

    The triangle inequality forces (A^r)^s to be a subset of A^{r+s} on any
    metric space; equality is expected only when the two-radii separation
    property holds (geodesic-like spaces).  Strictness of the inclusion is
    therefore a witness of that property failing.
    """
    if r <= 0 or s <= 0:
        raise MetricError("radii must be positive")
    if not a:
        raise MetricError("A must be nonempty")
    return neighborhood(space, neighborhood(space, a, r), s), \
        neighborhood(space, a, r + s)


# ---------------------------------------------------------------------------
# Conditions on the space


def check_condition1(space: FiniteMetricSpace) -> dict:
    """Closed-ball compactness: automatic for finite spaces."""
    return {
        "holds": True,
        "note": "finite space: every closed ball is a finite set, hence compact",
        "n": space.n,
    }


def condition2_defect(space: FiniteMetricSpace, x: int, y: int):
    """Worst violation of the two-radii separation property for a pair.

    defect(x, y) = sup{r + s : B_r(x) and B_s(y) disjoint, r, s > 0} - d(x, y),
    taking the sup over the empty set as 0 and defect(x, x) = 0 (balls about
    one center always intersect).  The property holds for the pair iff the
    defect is <= 0.

    For a fixed r the largest admissible s is min{d(y,z) : d(x,z) < r}, and
    the sup over r is attained at values present in the distance matrix, so
    a single sweep over points sorted by d(x, .) suffices.
    """
    if not (0 <= x < space.n and 0 <= y < space.n):
        raise MetricError("point index out of range")
    if x == y:
        return 0
    dx = space.dist[x]
    dy = space.dist[y]
    order = sorted(space.points(), key=dx.__getitem__)
    sup_rs = 0
    running = None  # min of dy over points strictly inside B_r(x)
    i = 0
    n = space.n
    while i < n:
        v = dx[order[i]]
        if v > 0 and running is not None and running > 0:
            cand = v + running
            if cand > sup_rs:
                sup_rs = cand
        while i < n and dx[order[i]] == v:
            w = dy[order[i]]
            if running is None or w < running:
                running = w
            i += 1
        if running == 0:
            break  # y already inside every larger ball around x
    return sup_rs - dx[y]


def condition2_report(space: FiniteMetricSpace) -> dict:
    """Full defect matrix plus the max defect and a verdict."""
    n = space.n
    defects = [[condition2_defect(space, i, j) for j in range(n)] for i in range(n)]
    max_defect = max((defects[i][j] for i in range(n) for j in range(n)), default=0)
    return {"defects": defects, "max_defect": max_defect,
            "holds": max_defect <= 0}


# ---------------------------------------------------------------------------
# Wave distance between points (closed form)


def wave_distance_points(space: FiniteMetricSpace, x: int, y: int):
    """tau(x, y) = 2 inf{t : B_t(x) meets B_t(y)} = 2 min_z max(d(x,z), d(y,z)).

    Always symmetric, zero on the diagonal, and >= d(x, y); equals d(x, y)
    when the two-radii separation property holds, and 2 d(x, y) on the
    discrete metric.
    """
    if not (0 <= x < space.n and 0 <= y < space.n):
        raise MetricError("point index out of range")
    dx = space.dist[x]
    dy = space.dist[y]
    best = None
    for z in range(space.n):
        m = dx[z] if dx[z] > dy[z] else dy[z]
        if best is None or m < best:
            best = m
    return 2 * best


def wave_distance_matrix(space: FiniteMetricSpace) -> list:
    n = space.n
    tau = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = wave_distance_points(space, i, j)
            tau[i][j] = tau[j][i] = t
    return tau
