"""Chart atlas of the cotangent bundle of projective n-space, a weighted
torus action on it, and the stable-manifold components it cuts out.

Conventions, fixed once and used by every routine here:

* Chart i covers the locus where homogeneous coordinate i is nonzero.  Its
  base slots are the indices 0..n other than i, its coordinate for slot m
  is the ratio of homogeneous coordinates m over i, and its fiber slots
  mirror the base slots.  Inside chart i these coordinates are named
  "x<m>" and "y<m>"; chart 0's names x1..xn, y1..yn double as the global
  coordinates in which actions and components are expressed.
* The fiber of the cotangent bundle transforms by the transition matrix
  with rows indexed by target-chart slots and columns by source-chart
  slots: row m (m distinct from both chart indices) carries the gluing
  coordinate alone, and the row of the source chart's own slot carries
  the products that differentiation of the base change produces.
* The torus acts on chart 0 by x_i -> t^(-w_i) x_i, y_i -> t^(w_i) y_i.
  Pushed to chart j, every coordinate scales by a single power of t whose
  coefficient is the chart-j coordinate written as a chart-0 expression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import LaurentPoly, PolyMatrix, poly_mat_identity, poly_mat_mul, poly_mat_substitute


class NonIsolatedFixedPoint(ValueError):
    """Raised when the weight vector does not give isolated fixed points."""


class UnrecognizedForm(ValueError):
    """Raised when a stable manifold does not reduce to coordinate vanishing
    or its fiber transitions are not monomial-diagonal."""


def base_name(k: int) -> str:
    return f"x{k}"


def fiber_name(k: int) -> str:
    return f"y{k}"


@dataclass(frozen=True)
class ChartInfo:
    index: int
    n: int

    @property
    def slots(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n + 1) if k != self.index)

    @property
    def base_vars(self) -> tuple[str, ...]:
        return tuple(base_name(k) for k in self.slots)

    @property
    def fiber_vars(self) -> tuple[str, ...]:
        return tuple(fiber_name(k) for k in self.slots)


class CotangentAtlas:
    """Charts and transition matrices of the cotangent bundle of P^n."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        self.n = n
        self.charts = tuple(ChartInfo(i, n) for i in range(n + 1))
        self._transitions: dict[tuple[int, int], PolyMatrix] = {}

    def _chart_coord(self, chart: int, slot: int) -> LaurentPoly:
        if slot == chart:
            return LaurentPoly.const(1)
        return LaurentPoly.var(base_name(slot))

    def transition(self, i: int, j: int) -> PolyMatrix:
        """Fiber transition from chart i to chart j, entries in chart-i
        coordinates; rows run over chart-j slots, columns over chart-i
        slots, both ascending."""
        key = (i, j)
        if key in self._transitions:
            return self._transitions[key]
        if i == j:
            mat = poly_mat_identity(self.n)
        else:
            rows_idx = self.charts[j].slots
            cols_idx = self.charts[i].slots
            glue = self._chart_coord(i, j)
            zero = LaurentPoly.zero()
            rows = []
            for m in rows_idx:
                if m == i:
                    rows.append(
                        tuple(-glue * self._chart_coord(i, k) for k in cols_idx)
                    )
                else:
                    rows.append(tuple(glue if k == m else zero for k in cols_idx))
            mat = tuple(rows)
        self._transitions[key] = mat
        return mat

    def overlap_substitution(self, i: int, j: int) -> dict[str, LaurentPoly]:
        """Rewrite chart-j base coordinates as chart-i expressions."""
        glue_inv = LaurentPoly.var(base_name(j)) ** -1
        out: dict[str, LaurentPoly] = {}
        for m in self.charts[j].slots:
            out[base_name(m)] = self._chart_coord(i, m) * glue_inv
        return out

    def cocycle_holds(self, i: int, j: int, k: int) -> bool:
        lhs = self.transition(i, k)
        t_jk_in_i = poly_mat_substitute(self.transition(j, k), self.overlap_substitution(i, j))
        rhs = poly_mat_mul(t_jk_in_i, self.transition(i, j))
        return lhs == rhs

    def embedding_base(self, j: int) -> tuple[LaurentPoly, ...]:
        """Chart-j base coordinates, slots 0..n, written in chart-0
        coordinates (slot j is the constant 1)."""
        out = []
        for k in range(self.n + 1):
            if k == j:
                out.append(LaurentPoly.const(1))
            else:
                out.append(self._chart_coord(0, k) * self._chart_coord(0, j) ** -1)
        return tuple(out)

    def embedding_fiber(self, j: int) -> tuple[LaurentPoly, ...]:
        """Chart-j fiber coordinates, in chart-0 coordinates, ordered by
        chart-j slots."""
        t = self.transition(0, j)
        ys = [LaurentPoly.var(fiber_name(k)) for k in self.charts[0].slots]
        out = []
        for row in t:
            acc = LaurentPoly.zero()
            for entry, y in zip(row, ys):
                acc = acc + entry * y
            out.append(acc)
        return tuple(out)


def build_atlas(n: int) -> CotangentAtlas:
    return CotangentAtlas(n)


@dataclass(frozen=True)
class TorusAction:
    """Diagonal torus action with integer weights (w_1, ..., w_n)."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        seen = set(self.weights)
        if 0 in seen:
            raise NonIsolatedFixedPoint("zero weight collides with the base point weight")
        if len(seen) != len(self.weights):
            raise NonIsolatedFixedPoint(f"repeated weights in {self.weights}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def homogeneous_weights(self) -> tuple[int, ...]:
        return (0,) + self.weights


def standard_action(n: int) -> TorusAction:
    """Weights 1..n: the strictly increasing case every display uses."""
    return TorusAction(tuple(range(1, n + 1)))


@dataclass(frozen=True)
class ActionChartExpr:
    """The acted point of chart j, one (coefficient, t-power) pair per
    coordinate; coefficients are chart-0 expressions, and at t = 1 they
    reproduce the chart embedding."""

    chart: int
    base_slots: tuple[int, ...]
    base: tuple[tuple[LaurentPoly, int], ...]
    fiber_slots: tuple[int, ...]
    fiber: tuple[tuple[LaurentPoly, int], ...]


def act(atlas: CotangentAtlas, action: TorusAction, chart: int) -> ActionChartExpr:
    if action.n != atlas.n:
        raise ValueError("action and atlas dimensions differ")
    if not 0 <= chart <= atlas.n:
        raise ValueError(f"no chart {chart}")
    w = action.homogeneous_weights()
    base = tuple(
        (coeff, w[chart] - w[k])
        for k, coeff in enumerate(atlas.embedding_base(chart))
    )
    slots = atlas.charts[chart].slots
    fiber = tuple(
        (coeff, w[m] - w[chart])
        for m, coeff in zip(slots, atlas.embedding_fiber(chart))
    )
    return ActionChartExpr(chart, tuple(range(atlas.n + 1)), base, slots, fiber)


@dataclass(frozen=True)
class AffineFiber:
    dim: int


@dataclass(frozen=True)
class ZeroSection:
    dim: int


@dataclass(frozen=True)
class TwistedBundle:
    base_dim: int
    rank: int
    twists: tuple[int, ...]


Classification = AffineFiber | ZeroSection | TwistedBundle


@dataclass(frozen=True)
class SkeletonComponent:
    """One component of the skeleton: the closure of a stable manifold."""

    j: int
    n: int
    constraints: tuple[LaurentPoly, ...]
    forced: frozenset[str]
    free_base: tuple[str, ...]
    free_fiber: tuple[str, ...]
    classification: Classification

    def __post_init__(self) -> None:
        if len(self.free_base) + len(self.free_fiber) != self.n:
            raise AssertionError("component is not middle-dimensional")


def _strip_units(p: LaurentPoly, invertible: set[str]) -> LaurentPoly:
    for v in invertible:
        if v in p.variables:
            low = p.min_exponent(v)
            if low != 0:
                p = p * LaurentPoly.var(v) ** -low
    return p


def _reduce_constraints(
    constraints: list[LaurentPoly], invertible: set[str]
) -> frozenset[str]:
    """Iteratively turn the constraint system into forced-zero variables.

    Substitute known zeros, strip invertible-monomial factors, promote
    single-variable equations; anything that cannot be resolved this way
    raises UnrecognizedForm rather than guessing.
    """
    forced: set[str] = set()
    pending = [p for p in constraints]
    while True:
        progressed = False
        still_pending: list[LaurentPoly] = []
        for p in pending:
            if forced & set(p.variables):
                p = p.substitute({v: LaurentPoly.zero() for v in forced if v in p.variables})
            p = _strip_units(p, invertible)
            if p.is_zero:
                progressed = True
                continue
            if p.is_constant:
                raise UnrecognizedForm("constraint reduced to a nonzero constant")
            if p.is_monomial():
                ((exps, _),) = p.terms.items()
                live = [v for v, e in zip(p.variables, exps) if e != 0]
                if len(live) == 1:
                    forced.add(live[0])
                    progressed = True
                    continue
                raise UnrecognizedForm(
                    f"monomial constraint {p} forces a reducible locus"
                )
            still_pending.append(p)
        pending = still_pending
        if not pending:
            return frozenset(forced)
        if not progressed:
            raise UnrecognizedForm(
                f"constraint reduction stalled with {len(pending)} equations left"
            )


def classify_component(
    atlas: CotangentAtlas, j: int, forced: frozenset[str]
) -> Classification:
    """Read the component off its forced-zero pattern, then verify the
    surviving fiber block of each relevant transition is the gluing
    coordinate times the identity (degree one, so each summand twists
    by -1)."""
    n = atlas.n
    base_zero = {base_name(k) for k in range(j + 1, n + 1)}
    fiber_zero = {fiber_name(k) for k in range(1, j + 1)}
    if forced != base_zero | fiber_zero:
        raise UnrecognizedForm(
            f"forced set {sorted(forced)} does not match a recognized component shape"
        )
    if j == 0:
        return AffineFiber(n)
    if j == n:
        return ZeroSection(n)
    surviving = [k for k in range(j + 1, n + 1)]
    twists = []
    for m in range(1, j + 1):
        t = atlas.transition(0, m)
        rows_idx = atlas.charts[m].slots
        glue = LaurentPoly.var(base_name(m))
        for k in surviving:
            row = t[rows_idx.index(k)]
            for col_pos, col_slot in enumerate(atlas.charts[0].slots):
                entry = row[col_pos]
                if col_slot == k:
                    if entry != glue:
                        raise UnrecognizedForm(
                            f"fiber coordinate {k} does not glue by the degree-one monomial"
                        )
                elif not entry.is_zero:
                    raise UnrecognizedForm("surviving fiber block is not diagonal")
    deg = 1
    twists = tuple([-deg] * (n - j))
    return TwistedBundle(j, n - j, twists)


def stable_manifold(
    atlas: CotangentAtlas, action: TorusAction, j: int
) -> SkeletonComponent:
    """Points of chart j flowing into fixed point j as t goes to 0.

    A coordinate scaling by a positive t-power dies on its own; powers
    <= 0 force their coefficient to vanish.  The closure is recorded by
    keeping only those vanishing conditions (the chart's open condition
    is dropped)."""
    expr = act(atlas, action, j)
    constraints = []
    for k, (coeff, weight) in zip(expr.base_slots, expr.base):
        if k == j:
            continue
        if weight <= 0:
            constraints.append(coeff)
    for _, (coeff, weight) in zip(expr.fiber_slots, expr.fiber):
        if weight <= 0:
            constraints.append(coeff)
    invertible = {base_name(j)} if j > 0 else set()
    forced = _reduce_constraints(constraints, invertible)
    n = atlas.n
    free_base = tuple(
        base_name(k) for k in range(1, n + 1) if base_name(k) not in forced
    )
    free_fiber = tuple(
        fiber_name(k) for k in range(1, n + 1) if fiber_name(k) not in forced
    )
    classification = classify_component(atlas, j, forced)
    return SkeletonComponent(
        j, n, tuple(constraints), forced, free_base, free_fiber, classification
    )


def closed_form(n: int, j: int) -> Classification:
    """The expected shape of component j, stated without any chart work."""
    if j == 0:
        return AffineFiber(n)
    if j == n:
        return ZeroSection(n)
    return TwistedBundle(j, n - j, tuple([-1] * (n - j)))


def skeleton(n: int, weights: tuple[int, ...] | None = None) -> list[SkeletonComponent]:
    atlas = build_atlas(n)
    action = TorusAction(tuple(weights)) if weights is not None else standard_action(n)
    return [stable_manifold(atlas, action, j) for j in range(n + 1)]
