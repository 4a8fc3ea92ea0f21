"""Line and rank-2 bundles on the total spaces of negative twists over the
projective line, and on the collars obtained by removing the zero section.

Everything is phrased through explicit transition data on the two-chart
cover: U carries (z, u), V carries (xi, v), glued by xi = 1/z and
v = z^n u.  A transition matrix M sends U-side section data to the V side,
so the single entry z^(-d) describes the degree-d line bundle.  Section
counts, splitting types, residue classes mod n, frame-change certificates,
and the dimension formula for rank-2 moduli all reduce to exact linear
algebra over these Laurent representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (
    LaurentPoly,
    RatMatrix,
    iter_exponent_boxes,
    poly_mat_det,
    poly_mat_mul,
)

U_BASE = "z"
U_FIBER = "u"
V_BASE = "xi"
V_FIBER = "v"

_F0 = Fraction(0)


class BoundTooSmall(RuntimeError):
    """A degree window was too narrow for the answer to have stabilised."""


def _z_power(e: int) -> LaurentPoly:
    return LaurentPoly.monomial({U_BASE: e})


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"twist parameter must be a positive integer, got {n!r}")


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class SurfaceChartPair:
    """The two-chart cover with gluing (xi, v) = (1/z, z^n u).

    With ``collar=True`` the fiber coordinates u and v are invertible,
    which changes what counts as a unit on each side.
    """

    n: int
    collar: bool = False

    def __post_init__(self) -> None:
        _check_n(self.n)

    @property
    def u_variables(self) -> tuple[str, str]:
        return (U_BASE, U_FIBER)

    @property
    def v_variables(self) -> tuple[str, str]:
        return (V_BASE, V_FIBER)

    def to_u_side(self, p: LaurentPoly) -> LaurentPoly:
        """Rewrite a (xi, v) expression in (z, u) coordinates."""
        if not set(p.variables) <= {V_BASE, V_FIBER}:
            raise ValueError(f"expected variables within (xi, v): {p}")
        return p.substitute(
            {
                V_BASE: LaurentPoly.monomial({U_BASE: -1}),
                V_FIBER: LaurentPoly.monomial({U_BASE: self.n, U_FIBER: 1}),
            }
        )

    def to_v_side(self, p: LaurentPoly) -> LaurentPoly:
        """Rewrite a (z, u) expression in (xi, v) coordinates."""
        if not set(p.variables) <= {U_BASE, U_FIBER}:
            raise ValueError(f"expected variables within (z, u): {p}")
        return p.substitute(
            {
                U_BASE: LaurentPoly.monomial({V_BASE: -1}),
                U_FIBER: LaurentPoly.monomial({V_BASE: self.n, V_FIBER: 1}),
            }
        )

    def is_u_unit(self, p: LaurentPoly) -> bool:
        """Unit in the U chart ring: a constant, or const * u^k on the collar."""
        if not p.is_monomial() or p.is_zero:
            return False
        if p.max_exponent(U_BASE) != 0 or p.min_exponent(U_BASE) != 0:
            return False
        if self.collar:
            return True
        return p.max_exponent(U_FIBER) == 0 and p.min_exponent(U_FIBER) == 0

    def is_v_unit_on_overlap(self, p: LaurentPoly) -> bool:
        """Unit of the V chart ring, presented in overlap (z, u) coordinates.

        Powers of v become z^(n k) u^k, so the test is that the single term
        has z-exponent exactly n times its u-exponent (zero when not collar).
        """
        if not p.is_monomial() or p.is_zero:
            return False
        ze = p.max_exponent(U_BASE)
        ue = p.max_exponent(U_FIBER)
        if ze != self.n * ue:
            return False
        return self.collar or ue == 0


# ---------------------------------------------------------------------------
# line bundle classes on the collar


@dataclass(frozen=True)
class CollarLineBundle:
    """The restriction to the collar of the degree-j line bundle; the
    transition entry is z^(-j)."""

    n: int
    j: int

    def __post_init__(self) -> None:
        _check_n(self.n)

    @property
    def residue(self) -> int:
        return self.j % self.n

    def transition(self) -> LaurentPoly:
        return _z_power(-self.j)

    def tensor(self, other: "CollarLineBundle") -> "CollarLineBundle":
        if self.n != other.n:
            raise ValueError("tensor requires bundles over the same collar")
        return CollarLineBundle(self.n, self.j + other.j)

    def normal_form(self) -> "LineBundleNormalForm":
        return line_bundle_normal_form(self.n, self.j)


@dataclass(frozen=True)
class LineBundleNormalForm:
    """Reduction of the transition z^(-j) to z^(-residue) with an explicit
    unit cochain: v^steps on the V side, u^(-steps) on the U side."""

    n: int
    j: int
    residue: int
    steps: int
    v_side_unit: LaurentPoly
    u_side_unit: LaurentPoly
    reduced_transition: LaurentPoly

    def identity_holds(self) -> bool:
        chart = SurfaceChartPair(self.n, collar=True)
        lhs = chart.to_u_side(self.v_side_unit) * _z_power(-self.j) * self.u_side_unit
        return lhs == self.reduced_transition


def line_bundle_normal_form(n: int, j: int) -> LineBundleNormalForm:
    """Shift a transition exponent into {0, ..., n-1} by multiplying with
    fiber units; the returned cochain verifies as an exact identity."""
    _check_n(n)
    residue = j % n
    steps = (j - residue) // n
    form = LineBundleNormalForm(
        n=n,
        j=j,
        residue=residue,
        steps=steps,
        v_side_unit=LaurentPoly.monomial({V_FIBER: steps}),
        u_side_unit=LaurentPoly.monomial({U_FIBER: -steps}),
        reduced_transition=_z_power(-residue),
    )
    if not form.identity_holds():
        raise AssertionError("unit cochain failed to verify")
    return form


@dataclass(frozen=True)
class PicardGroup:
    """Isomorphism classes of collar line bundles with the tensor operation.

    Classes are labelled by residues 0..n-1; the table entry at (i, j) is
    the class of the tensor product, and every entry carries the unit
    cochain certificate that performed the reduction.  Distinctness of the
    classes is recorded separately through the residue invariant."""

    n: int
    classes: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    certificates: tuple[tuple[LineBundleNormalForm, ...], ...]

    def tensor_class(self, a: int, b: int) -> int:
        return self.table[a % self.n][b % self.n]

    def residue_invariant(self, j: int) -> int:
        """The invariant separating the classes: the exponent mod n."""
        return j % self.n

    def order_of(self, a: int) -> int:
        acc = a % self.n
        order = 1
        while acc != 0:
            acc = self.tensor_class(acc, a)
            order += 1
        return order


def picard_group(n: int) -> PicardGroup:
    _check_n(n)
    table = []
    certs = []
    for a in range(n):
        row = []
        row_certs = []
        for b in range(n):
            form = line_bundle_normal_form(n, a + b)
            row.append(form.residue)
            row_certs.append(form)
        table.append(tuple(row))
        certs.append(tuple(row_certs))
    return PicardGroup(
        n=n,
        classes=tuple(range(n)),
        table=tuple(table),
        certificates=tuple(certs),
    )


# ---------------------------------------------------------------------------
# collar topology


@dataclass(frozen=True)
class CollarTopology:
    """Orders of the fundamental group and the low homology/cohomology of
    the collar; all three are cyclic of the same order."""

    n: int
    pi1_order: int
    h1_order: int
    h2_order: int
    derivation: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not (self.pi1_order == self.h1_order == self.h2_order == self.n):
            raise ValueError("collar invariants must all be cyclic of order n")


def collar_topology(n: int) -> CollarTopology:
    _check_n(n)
    return CollarTopology(
        n=n,
        pi1_order=n,
        h1_order=n,
        h2_order=n,
        derivation=(
            "circle bundle over the sphere: fibers glued through a degree-n "
            "twist, so the fundamental group is cyclic of order n",
            "first homology is the abelianisation of the fundamental group",
            "Poincare duality carries first homology to second cohomology",
            "the exponential sheaf sequence maps line-bundle classes onto "
            "second cohomology, matching the residue invariant",
        ),
    )


# ---------------------------------------------------------------------------
# rank <= 2 transition matrices


@dataclass(frozen=True)
class BundleTransition:
    """A square transition matrix over the chart overlap, entries Laurent in
    z and polynomial or Laurent in u; the determinant must be a single
    invertible term there."""

    n: int
    entries: tuple[tuple[LaurentPoly, ...], ...]
    declared_splitting: Optional[int] = None
    chern: Optional[int] = None

    def __post_init__(self) -> None:
        _check_n(self.n)
        rank = len(self.entries)
        if rank not in (1, 2):
            raise ValueError("only rank 1 and rank 2 transitions are supported")
        for row in self.entries:
            if len(row) != rank:
                raise ValueError("transition matrix must be square")
            for p in row:
                if not set(p.variables) <= {U_BASE, U_FIBER}:
                    raise ValueError(f"entry uses variables outside (z, u): {p}")
        if not self.det().is_unit_monomial():
            raise ValueError("transition determinant must be a unit monomial")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def det(self) -> LaurentPoly:
        return poly_mat_det([list(row) for row in self.entries])

    def z_spread(self) -> int:
        """Largest absolute z-exponent appearing in any entry."""
        spread = 0
        for row in self.entries:
            for p in row:
                spread = max(spread, abs(p.min_exponent(U_BASE)), abs(p.max_exponent(U_BASE)))
        return spread

    def restrict_to_zero_section(self) -> "BundleTransition":
        """Set the fiber coordinate to zero; fails if a negative fiber power
        makes the entry blow up there."""
        rows = tuple(
            tuple(p.substitute({U_FIBER: 0}) for p in row) for row in self.entries
        )
        return BundleTransition(self.n, rows, self.declared_splitting, self.chern)

    @classmethod
    def from_rows(
        cls,
        n: int,
        rows: Sequence[Sequence[LaurentPoly]],
        declared_splitting: Optional[int] = None,
        chern: Optional[int] = None,
    ) -> "BundleTransition":
        return cls(n, tuple(tuple(row) for row in rows), declared_splitting, chern)

    @classmethod
    def line_class(cls, n: int, j: int) -> "BundleTransition":
        """The degree-j line bundle: single entry z^(-j)."""
        return cls(n, ((_z_power(-j),),), declared_splitting=None, chern=j)

    @classmethod
    def diagonal(cls, n: int, e1: int, e2: int) -> "BundleTransition":
        return cls(n, ((_z_power(e1), LaurentPoly.zero()), (LaurentPoly.zero(), _z_power(e2))))

    @classmethod
    def canonical(cls, n: int, j: int, off: LaurentPoly | None = None) -> "BundleTransition":
        """Upper triangular [[z^j, p], [0, z^-j]] with j >= 0: the normal
        shape for a rank-2 transition with vanishing first Chern class."""
        if j < 0:
            raise ValueError("canonical shape requires a nonnegative exponent")
        p = LaurentPoly.zero() if off is None else off
        rows = ((_z_power(j), p), (LaurentPoly.zero(), _z_power(-j)))
        return cls(n, rows, declared_splitting=j, chern=0)


# ---------------------------------------------------------------------------
# section counting

# Keys are (row, z_exponent, u_exponent); each column maps the keys it
# touches to exact coefficients.
_Column = dict[tuple[int, int, int], Fraction]


def _kernel_vectors(columns: Sequence[_Column]) -> list[tuple[Fraction, ...]]:
    keys = sorted({k for col in columns for k in col})
    if not columns:
        return []
    if not keys:
        return [
            tuple(Fraction(1 if i == c else 0) for i in range(len(columns)))
            for c in range(len(columns))
        ]
    index = {k: i for i, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(columns) for _ in keys]
    for c, col in enumerate(columns):
        for k, coeff in col.items():
            rows[index[k]][c] = coeff
    return RatMatrix.from_rows(rows).kernel()


def _add_poly(col: _Column, row: int, p: LaurentPoly, sign: int) -> None:
    zi = p.variables.index(U_BASE) if U_BASE in p.variables else None
    ui = p.variables.index(U_FIBER) if U_FIBER in p.variables else None
    for exps, coeff in p.terms.items():
        ze = exps[zi] if zi is not None else 0
        ue = exps[ui] if ui is not None else 0
        key = (row, ze, ue)
        col[key] = col.get(key, Fraction(0)) + sign * coeff
        if not col[key]:
            del col[key]


def _section_count(trans: BundleTransition, twist: int, u_cutoff: int, window: int) -> int:
    """Dimension of pairs (s_U, s_V) with s_V = z^(-twist) * M * s_U, both
    sides polynomial vectors with z- and fiber-degrees inside the window.

    The V side never couples: the coefficient of xi^k v^m in component r is
    read off from the single overlap monomial z^(n m - k) u^m, so it absorbs
    that bucket whenever k lands inside the window and the solution count is
    the U-side unknowns minus the rank of the leftover bucket constraints.
    """
    rank = trans.rank
    n = trans.n
    z_neg_twist = _z_power(-twist)
    width = (window + 1) * (u_cutoff + 1)
    rows: dict[tuple[int, int, int], dict[int, Fraction]] = {}
    for c in range(rank):
        for k, b in iter_exponent_boxes((0, window), (0, u_cutoff)):
            col_id = (k * (u_cutoff + 1) + b) * rank + c
            basis = LaurentPoly.monomial({U_BASE: k, U_FIBER: b})
            for r in range(rank):
                contrib = z_neg_twist * trans.entries[r][c] * basis
                zi = contrib.variables.index(U_BASE) if U_BASE in contrib.variables else None
                ui = contrib.variables.index(U_FIBER) if U_FIBER in contrib.variables else None
                for exps, coeff in contrib.terms.items():
                    e = exps[zi] if zi is not None else 0
                    m = exps[ui] if ui is not None else 0
                    if 0 <= n * m - e <= window:
                        continue
                    row = rows.setdefault((r, e, m), {})
                    value = row.get(col_id, _F0) + coeff
                    if value:
                        row[col_id] = value
                    else:
                        row.pop(col_id, None)
    return rank * width - _sparse_rank(rows)


def _sparse_rank(rows: dict[tuple[int, int, int], dict[int, Fraction]]) -> int:
    """Rank by elimination on sparse rows, always pivoting on the smallest
    unknown so banded systems stay banded."""
    pivots: dict[int, dict[int, Fraction]] = {}
    count = 0
    for key in sorted(rows):
        row = {cid: v for cid, v in rows[key].items() if v}
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                count += 1
                break
            factor = row[lead] / pivot[lead]
            for cid, value in pivot.items():
                updated = row.get(cid, _F0) - factor * value
                if updated:
                    row[cid] = updated
                else:
                    row.pop(cid, None)
    return count


def h0_twist(
    trans: BundleTransition,
    twist: int,
    u_cutoff: int = 0,
    window: int | None = None,
) -> int:
    """Count section pairs of the twisted bundle by brute-force linear
    algebra over a bounded degree window.

    The window is doubled once as a self-check; a changed answer raises
    BoundTooSmall instead of returning either value.
    """
    for row in trans.entries:
        for p in row:
            if p.min_exponent(U_FIBER) < 0:
                raise ValueError("section counting needs nonnegative fiber powers")
    if u_cutoff < 0:
        raise ValueError("fiber cutoff must be nonnegative")
    if window is None:
        window = trans.z_spread() + abs(twist) + trans.n * u_cutoff + 1
    if window < 0:
        raise ValueError("window must be nonnegative")
    first = _section_count(trans, twist, u_cutoff, window)
    second = _section_count(trans, twist, u_cutoff, 2 * window + 1)
    if first != second:
        raise BoundTooSmall(
            f"section count moved from {first} to {second} when the degree "
            f"window grew past {window}"
        )
    return first


def splitting_type(trans: BundleTransition, window: int | None = None) -> tuple[int, int]:
    """Splitting (j, -j) of a rank-2 transition with trivial determinant
    over the zero section, read off from the section-count profile."""
    if trans.rank != 2:
        raise ValueError("splitting type is computed for rank-2 transitions")
    restricted = trans.restrict_to_zero_section()
    det = restricted.det()
    if not det.is_unit_monomial() or det.max_exponent(U_BASE) != 0:
        raise ValueError("splitting profile needs determinant 1 over the zero section")
    cap = restricted.z_spread() + 1
    cache: dict[int, int] = {}

    def count(m: int) -> int:
        if m not in cache:
            cache[m] = h0_twist(restricted, m, window=window)
        return cache[m]

    if count(-cap) > 0:
        raise BoundTooSmall(f"sections persist beyond the degree cap {cap}")
    if count(0) == 0:
        raise ValueError("no sections at twist zero: determinant bookkeeping is off")
    j = max(m for m in range(cap + 1) if count(-m) > 0)
    for m in range(-j, j + 1):
        expected = max(0, m + j + 1) + max(0, m - j + 1)
        if count(m) != expected:
            raise ValueError(
                f"section counts do not match any split pair at twist {m}"
            )
    return (j, -j)


# ---------------------------------------------------------------------------
# the splitting-raising transformation


@dataclass(frozen=True)
class PhiStage:
    label: str
    summands: tuple[int, int]
    chern: int


@dataclass(frozen=True)
class PhiTransform:
    """Bookkeeping for the two elementary transformations followed by a
    twist that raise a rank-2 splitting type by n while fixing the collar
    residue class."""

    n: int
    j: int
    stages: tuple[PhiStage, ...]
    splitting_before: int
    splitting_after: int
    collar_class: int


def phi_transform(n: int, j: int) -> PhiTransform:
    _check_n(n)
    if j < 0:
        raise ValueError("splitting type must be nonnegative")
    stages = (
        PhiStage("start", (j, -j), 0),
        PhiStage("first-transform", (-n, j + n), j),
        PhiStage("second-transform", (-j, j + 2 * n), 2 * n),
        PhiStage("twist-back", (-j - n, j + n), 0),
    )
    result = PhiTransform(
        n=n,
        j=j,
        stages=stages,
        splitting_before=j,
        splitting_after=j + n,
        collar_class=j % n,
    )
    # the end state must carry the same residue and no net twist
    assert result.splitting_after % n == result.collar_class
    assert stages[-1].chern == 0
    return result


# ---------------------------------------------------------------------------
# frame-change certificates on the collar


@dataclass(frozen=True)
class CollarIsoCertificate:
    """An exact pair of frame changes exhibiting two transitions as the same
    bundle over the collar: m2 * u_frame = v_frame * m1, with both frames
    invertible over their chart rings."""

    n: int
    v_frame: tuple[tuple[LaurentPoly, ...], ...]
    v_frame_chart: tuple[tuple[LaurentPoly, ...], ...]
    u_frame: tuple[tuple[LaurentPoly, ...], ...]
    det_v_frame: LaurentPoly
    det_u_frame: LaurentPoly

    def verify(self, m1: BundleTransition, m2: BundleTransition) -> bool:
        chart = SurfaceChartPair(self.n, collar=True)
        lhs = poly_mat_mul([list(r) for r in m2.entries], [list(r) for r in self.u_frame])
        rhs = poly_mat_mul([list(r) for r in self.v_frame], [list(r) for r in m1.entries])
        if lhs != rhs:
            return False
        if not chart.is_v_unit_on_overlap(poly_mat_det([list(r) for r in self.v_frame])):
            return False
        return chart.is_u_unit(poly_mat_det([list(r) for r in self.u_frame]))


def _v_chart_rows(
    n: int, rows: Sequence[Sequence[LaurentPoly]]
) -> tuple[tuple[LaurentPoly, ...], ...]:
    chart = SurfaceChartPair(n, collar=True)
    return tuple(tuple(chart.to_v_side(p) for p in row) for row in rows)


def _certificate_from_frames(
    n: int,
    v_rows: Sequence[Sequence[LaurentPoly]],
    u_rows: Sequence[Sequence[LaurentPoly]],
    m1: BundleTransition,
    m2: BundleTransition,
) -> Optional[CollarIsoCertificate]:
    chart = SurfaceChartPair(n, collar=True)
    det_v = poly_mat_det([list(r) for r in v_rows])
    det_u = poly_mat_det([list(r) for r in u_rows])
    if not chart.is_v_unit_on_overlap(det_v) or not chart.is_u_unit(det_u):
        return None
    cert = CollarIsoCertificate(
        n=n,
        v_frame=tuple(tuple(row) for row in v_rows),
        v_frame_chart=_v_chart_rows(n, v_rows),
        u_frame=tuple(tuple(row) for row in u_rows),
        det_v_frame=det_v,
        det_u_frame=det_u,
    )
    if not cert.verify(m1, m2):
        return None
    return cert


def _identity_certificate(n: int, rank: int, m1: BundleTransition, m2: BundleTransition):
    one = LaurentPoly.const(1)
    zero = LaurentPoly.zero()
    rows = tuple(
        tuple(one if i == k else zero for k in range(rank)) for i in range(rank)
    )
    return _certificate_from_frames(n, rows, rows, m1, m2)


def _monomial_line_certificate(
    m1: BundleTransition, m2: BundleTransition, bound: int
) -> Optional[CollarIsoCertificate]:
    """Closed-form search for two single-term rank-1 transitions: the only
    candidate frames are pure fiber powers, fixed by exponent bookkeeping."""
    n = m1.n
    p1 = m1.entries[0][0]
    p2 = m2.entries[0][0]
    dz = p1.max_exponent(U_BASE) - p2.max_exponent(U_BASE)
    du = p1.max_exponent(U_FIBER) - p2.max_exponent(U_FIBER)
    # v^beta * p1 = z^(n beta) u^beta * p1 must equal a u-unit times p2
    if dz % n != 0:
        return None
    beta = -dz // n
    u_exp = beta + du
    if abs(beta) > bound or abs(u_exp) > bound:
        return None
    v_rows = ((LaurentPoly.monomial({U_BASE: n * beta, U_FIBER: beta}),),)
    ((_, c1),) = p1.sorted_terms()
    ((_, c2),) = p2.sorted_terms()
    u_rows = ((LaurentPoly.monomial({U_FIBER: u_exp}, c1 / c2),),)
    return _certificate_from_frames(n, v_rows, u_rows, m1, m2)


def _search_certificate(
    m1: BundleTransition, m2: BundleTransition, bound: int, pair_cap: int = 24
) -> Optional[CollarIsoCertificate]:
    """Kernel search over bounded frame entries for m2 * B = A * m1."""
    n = m1.n
    rank = m1.rank
    monomials = list(iter_exponent_boxes((0, bound), (-bound, bound)))
    columns: list[_Column] = []
    shape: list[tuple[str, int, int, LaurentPoly]] = []
    for i in range(rank):
        for k in range(rank):
            for alpha, beta in monomials:
                # A[i][k] term xi^alpha v^beta, on the overlap z^(n beta - alpha) u^beta
                basis = LaurentPoly.monomial({U_BASE: n * beta - alpha, U_FIBER: beta})
                col: _Column = {}
                for jj in range(rank):
                    _add_poly(col, i * rank + jj, basis * m1.entries[k][jj], -1)
                columns.append(col)
                shape.append(("v", i, k, basis))
    for k in range(rank):
        for jj in range(rank):
            for alpha, beta in monomials:
                basis = LaurentPoly.monomial({U_BASE: alpha, U_FIBER: beta})
                col = {}
                for i in range(rank):
                    _add_poly(col, i * rank + jj, m2.entries[i][k] * basis, 1)
                columns.append(col)
                shape.append(("u", k, jj, basis))

    vectors = _kernel_vectors(columns)
    if not vectors:
        return None

    def assemble(vec: Sequence[Fraction]) -> Optional[CollarIsoCertificate]:
        v_rows = [[LaurentPoly.zero() for _ in range(rank)] for _ in range(rank)]
        u_rows = [[LaurentPoly.zero() for _ in range(rank)] for _ in range(rank)]
        for coeff, (side, a, b, basis) in zip(vec, shape):
            if not coeff:
                continue
            if side == "v":
                v_rows[a][b] = v_rows[a][b] + basis * coeff
            else:
                u_rows[a][b] = u_rows[a][b] + basis * coeff
        return _certificate_from_frames(n, v_rows, u_rows, m1, m2)

    for vec in vectors:
        cert = assemble(vec)
        if cert is not None:
            return cert
    # single kernel vectors rarely have invertible frames for rank 2; try
    # small sums before giving up
    head = vectors[:pair_cap]
    for a in range(len(head)):
        for b in range(a + 1, len(head)):
            combined = tuple(x + y for x, y in zip(head[a], head[b]))
            cert = assemble(combined)
            if cert is not None:
                return cert
    total = tuple(sum(col) for col in zip(*vectors))
    return assemble(total)


def collar_iso_certificate(
    m1: BundleTransition,
    m2: BundleTransition,
    bound: int | None = None,
    exhaustive: bool = False,
) -> Optional[CollarIsoCertificate]:
    """Search for frame changes identifying two transitions over the collar.

    Returns None when nothing is found within the bound: that outcome is
    inconclusive, never a disproof.  Disproofs come from the residue
    invariant carried by the line-bundle classes.  Single-term rank-1
    inputs are resolved by exponent bookkeeping unless ``exhaustive`` asks
    for the full kernel search.
    """
    if m1.n != m2.n:
        raise ValueError("certificate search needs a common collar")
    if m1.rank != m2.rank:
        raise ValueError("certificate search needs equal ranks")
    n = m1.n
    rank = m1.rank
    if bound is None:
        bound = max(n, m1.z_spread() + m2.z_spread()) + 1
    if not exhaustive:
        if m1.entries == m2.entries:
            cert = _identity_certificate(n, rank, m1, m2)
            if cert is not None:
                return cert
        if rank == 1 and m1.entries[0][0].is_monomial() and m2.entries[0][0].is_monomial():
            return _monomial_line_certificate(m1, m2, bound)
    return _search_certificate(m1, m2, bound)


@dataclass(frozen=True)
class LineBundleComparison:
    """Verdict for two collar line-bundle classes: the residue invariant
    decides, and a matching pair ships with an explicit certificate."""

    n: int
    j1: int
    j2: int
    residue1: int
    residue2: int
    isomorphic: bool
    certificate: Optional[CollarIsoCertificate]


def compare_line_bundles(
    n: int, j1: int, j2: int, bound: int | None = None
) -> LineBundleComparison:
    _check_n(n)
    r1, r2 = j1 % n, j2 % n
    if r1 != r2:
        return LineBundleComparison(n, j1, j2, r1, r2, False, None)
    if bound is None:
        bound = abs(j1 - j2) // n + 1
    cert = collar_iso_certificate(
        BundleTransition.line_class(n, j1),
        BundleTransition.line_class(n, j2),
        bound=bound,
    )
    if cert is None:
        raise BoundTooSmall(
            f"classes {j1} and {j2} share residue {r1} mod {n} but no "
            f"certificate fit within bound {bound}"
        )
    return LineBundleComparison(n, j1, j2, r1, r2, True, cert)


# ---------------------------------------------------------------------------
# moduli dimension


@dataclass(frozen=True)
class ModuliDimension:
    """Expected dimension 2j - n - 2 for rank-2 moduli at splitting type j;
    a negative value is reported as empty, not as an error."""

    n: int
    j: int
    dimension: Optional[int]
    note: str

    @property
    def is_empty(self) -> bool:
        return self.dimension is None


def moduli_dimension(n: int, j: int) -> ModuliDimension:
    _check_n(n)
    if j < 0:
        raise ValueError("splitting type must be nonnegative")
    value = 2 * j - n - 2
    if value < 0:
        return ModuliDimension(
            n=n,
            j=j,
            dimension=None,
            note=(
                f"2*{j} - {n} - 2 = {value} is negative: no irreducible "
                "rank-2 bundles at this splitting type, reported as empty"
            ),
        )
    return ModuliDimension(n=n, j=j, dimension=value, note="")
