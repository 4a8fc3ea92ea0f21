"""Extension groups on the twisted surfaces by two-chart cochain algebra,
inclusion of extension classes into wider windows, and the one-parameter
families that trade splitting type against deformation.

A class for the pair (n, j) is a Laurent polynomial in (z, u) living on the
chart overlap, taken modulo everything that extends to the U chart and
everything that extends to the V chart after the transition twist by
z^(-2j).  Placing such a representative in the off-diagonal corner of
[[z^(j+s), tau * p], [0, z^(-j-s)]] produces a family that is split at
tau = 0 and drops to splitting type j at tau = 1 when p is generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .bundles import BundleTransition, splitting_type
from .exact import LaurentPoly, RatMatrix, Scalar, as_fraction

U_BASE = "z"
U_FIBER = "u"

TAU = "tau"


class WindowUnstable(RuntimeError):
    """Doubling the degree window changed the computed basis."""


class ClassNotGeneric(ValueError):
    """The class fails to represent a bundle of the declared splitting type."""


def _check_pair(n: int, j: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"twist parameter must be a positive integer, got {n!r}")
    if not isinstance(j, int) or j < 0:
        raise ValueError(f"splitting index must be a nonnegative integer, got {j!r}")


def _auto_cutoff(n: int, j: int) -> int:
    # fiber levels b can carry basis monomials while n*b <= 2j - 2; the
    # default of 3 is widened when that reaches higher
    if j == 0:
        return 3
    return max(3, (2 * j - 2) // n)


@lru_cache(maxsize=None)
def _basis_window(n: int, j: int, cutoff: int) -> tuple[LaurentPoly, ...]:
    """Non-pivot monomials of the coboundary span inside the window, sorted
    by fiber exponent then base exponent.

    The transition twist is homogeneous in the fiber variable, so the span
    never mixes fiber levels and each level reduces on its own block.
    """
    z_lo = -2 * j - n * cutoff
    z_hi = 2 * j + n * cutoff
    width = z_hi - z_lo + 1
    out: list[LaurentPoly] = []
    for b in range(cutoff + 1):
        generators = set(range(0, z_hi + 1))
        generators.update(range(z_lo, min(-2 * j + n * b, z_hi) + 1))
        rows = []
        for a in sorted(generators):
            row = [Fraction(0)] * width
            row[a - z_lo] = Fraction(1)
            rows.append(row)
        if rows:
            _, pivots = RatMatrix._echelon(RatMatrix.from_rows(rows)._int_rows())
            covered = set(pivots)
        else:
            covered = set()
        out.extend(
            LaurentPoly.monomial({U_BASE: a, U_FIBER: b})
            for a in range(z_lo, z_hi + 1)
            if a - z_lo not in covered
        )
    return tuple(out)


def ext1_basis(n: int, j: int, cutoff: int | None = None) -> tuple[LaurentPoly, ...]:
    """Monomial basis of the extension group for the pair (n, j).

    The window is doubled once as a self-check; a changed basis raises
    WindowUnstable instead of returning either answer.
    """
    _check_pair(n, j)
    if cutoff is None:
        cutoff = _auto_cutoff(n, j)
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    base = _basis_window(n, j, cutoff)
    doubled = _basis_window(n, j, 2 * cutoff if cutoff else 1)
    if base != doubled:
        raise WindowUnstable(
            f"basis for (n={n}, j={j}) changed when the cutoff grew past {cutoff}"
        )
    return base


@dataclass(frozen=True)
class ExtClass:
    """A reduced overlap representative with its coordinates relative to the
    computed monomial basis; no term lies in the coboundary span."""

    n: int
    j: int
    cutoff: int
    representative: LaurentPoly
    coordinates: tuple[Fraction, ...]
    basis: tuple[LaurentPoly, ...]

    @property
    def is_zero(self) -> bool:
        return self.representative.is_zero


def ext_class(n: int, j: int, p: LaurentPoly, cutoff: int | None = None) -> ExtClass:
    """Reduce p modulo the coboundary span and record its coordinates."""
    _check_pair(n, j)
    if not set(p.variables) <= {U_BASE, U_FIBER}:
        raise ValueError(f"representative uses variables outside (z, u): {p}")
    if p.min_exponent(U_FIBER) < 0:
        raise ValueError("representative needs nonnegative fiber powers")
    basis = ext1_basis(n, j, cutoff)
    used_cutoff = cutoff if cutoff is not None else _auto_cutoff(n, j)
    positions: dict[tuple[int, int], int] = {}
    for i, mono in enumerate(basis):
        positions[(mono.max_exponent(U_BASE), mono.max_exponent(U_FIBER))] = i

    coords = [Fraction(0)] * len(basis)
    kept = LaurentPoly.zero()
    zi = p.variables.index(U_BASE) if U_BASE in p.variables else None
    ui = p.variables.index(U_FIBER) if U_FIBER in p.variables else None
    for exps, coeff in p.terms.items():
        a = exps[zi] if zi is not None else 0
        b = exps[ui] if ui is not None else 0
        spot = positions.get((a, b))
        if spot is not None:
            coords[spot] += coeff
            kept = kept + LaurentPoly.monomial({U_BASE: a, U_FIBER: b}, coeff)
            continue
        if a >= 0 or a <= n * b - 2 * j:
            continue  # coboundary on the U side or the V side
        raise WindowUnstable(
            f"term z^{a} u^{b} escapes the cutoff {used_cutoff} window for "
            f"(n={n}, j={j})"
        )
    return ExtClass(
        n=n,
        j=j,
        cutoff=used_cutoff,
        representative=kept,
        coordinates=tuple(coords),
        basis=basis,
    )


def include_class(cls: ExtClass, s: int, cutoff: int | None = None) -> ExtClass:
    """Reinterpret the same representative inside the wider (n, j+s) window.

    Widening only loosens the coboundary cuts, so every reduced term
    survives and a nonzero class stays nonzero.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("inclusion step must be a positive integer")
    wider = ext_class(cls.n, cls.j + s, cls.representative, cutoff)
    if not cls.is_zero and wider.is_zero:
        raise AssertionError("inclusion must not kill a nonzero class")
    return wider


# ---------------------------------------------------------------------------
# one-parameter families


@dataclass(frozen=True)
class DeformationFamily:
    """The family [[z^(j+s), tau * p], [0, z^(-j-s)]] over the parameter tau.

    The parameter is named tau to keep clear of the torus-flow parameter
    used by the group actions elsewhere in this package.
    """

    n: int
    j: int
    s: int
    tau_symbol: str
    entry: LaurentPoly
    source: Optional[ExtClass]
    included: Optional[ExtClass]

    @property
    def top_exponent(self) -> int:
        return self.j + self.s

    def symbolic_matrix(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        tau = LaurentPoly.var(self.tau_symbol)
        top = LaurentPoly.monomial({U_BASE: self.top_exponent})
        bottom = LaurentPoly.monomial({U_BASE: -self.top_exponent})
        return ((top, tau * self.entry), (LaurentPoly.zero(), bottom))

    def matrix_at(self, tau: Scalar) -> BundleTransition:
        value = as_fraction(tau)
        return BundleTransition.canonical(self.n, self.top_exponent, off=self.entry * value)

    def splitting_at(self, tau: Scalar) -> tuple[int, int]:
        return splitting_type(self.matrix_at(tau))


def deformation_family(source: ExtClass, s: int) -> DeformationFamily:
    """Build the family for a class, checking both endpoints.

    At tau = 0 the matrix is split of type j+s.  At tau = 1 a nonzero class
    must reproduce splitting type j; any other value raises ClassNotGeneric
    (reported, not repaired).  The zero class gives the split family.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("deformation step must be a positive integer")
    if source.is_zero:
        included = ext_class(source.n, source.j + s, LaurentPoly.zero())
    else:
        included = include_class(source, s)
    family = DeformationFamily(
        n=source.n,
        j=source.j,
        s=s,
        tau_symbol=TAU,
        entry=included.representative,
        source=source,
        included=included,
    )
    top = family.top_exponent
    if family.splitting_at(0) != (top, -top):
        raise AssertionError("the tau = 0 member must be split")
    observed = family.splitting_at(1)
    expected = (top, -top) if source.is_zero else (source.j, -source.j)
    if observed != expected:
        raise ClassNotGeneric(
            f"class for (n={source.n}, j={source.j}) deforms to splitting "
            f"{observed[0]} at tau = 1, not {expected[0]}"
        )
    return family


def index_step_family(n: int, j: int, s: int = 1) -> DeformationFamily:
    """The family stepping splitting type j+s down to j along tau.

    For j >= 1 the generic representative z^(-j) drives the family; the
    extension group at j = 0 is empty, so that step is built directly with
    a constant off-diagonal entry, which the endpoint checks validate.
    """
    _check_pair(n, j)
    if j >= 1:
        source = ext_class(n, j, LaurentPoly.monomial({U_BASE: -j}))
        return deformation_family(source, s)
    if not isinstance(s, int) or s < 1:
        raise ValueError("deformation step must be a positive integer")
    family = DeformationFamily(
        n=n,
        j=0,
        s=s,
        tau_symbol=TAU,
        entry=LaurentPoly.const(1),
        source=None,
        included=None,
    )
    if family.splitting_at(0) != (s, -s):
        raise AssertionError("the tau = 0 member must be split")
    if family.splitting_at(1) != (0, 0):
        raise AssertionError("the constant entry must trivialise at tau = 1")
    return family


def family_splitting_profile(
    family: DeformationFamily, taus: Sequence[Scalar]
) -> tuple[int, ...]:
    """Splitting types along the sampled parameter values."""
    return tuple(family.splitting_at(t)[0] for t in taus)
