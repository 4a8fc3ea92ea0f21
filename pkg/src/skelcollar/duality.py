"""Index pairing between skeleton components and split collar bundles, and
the commuting-square checks that tie the step maps between projectivized
components to the splitting-type families on the collar.

For a collar parameter n the skeleton side is the cotangent bundle of
projective (n-1)-space with its n components, and the collar side is the
set of n residue classes of line-bundle pairs (j mod n, -j mod n).  Each
square couples one step map on the skeleton side with one one-parameter
family on the collar side and checks that both reach the same row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .birmaps import IndexOutOfRange, Verdict, bir_step, verify_birational
from .deform import family_splitting_profile, index_step_family
from .skeleton import (
    AffineFiber,
    SkeletonComponent,
    TwistedBundle,
    ZeroSection,
    skeleton,
)


class NotAPair(ValueError):
    """Raised when collar residues are not mutually inverse mod n."""


def _check_collar(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"collar parameter must be a positive integer, got {n!r}")


def dual_of_lagrangian(n: int, j: int) -> tuple[int, int]:
    """Collar residue pair assigned to skeleton component j."""
    _check_collar(n)
    if not 0 <= j <= n - 1:
        raise IndexOutOfRange(f"no skeleton component {j} for collar parameter {n}")
    return (j % n, (-j) % n)


def dual_of_bundle_pair(n: int, residues: Sequence[int]) -> int:
    """Skeleton index recovered from a collar residue pair."""
    _check_collar(n)
    r1, r2 = residues
    if not (0 <= r1 < n and 0 <= r2 < n):
        raise ValueError(f"residues must lie in 0..{n - 1}, got {tuple(residues)}")
    if (r1 + r2) % n != 0:
        raise NotAPair(f"residues {tuple(residues)} are not negatives mod {n}")
    return r1


def describe_classification(c: object) -> str:
    if isinstance(c, AffineFiber):
        return f"affine fiber of dimension {c.dim}"
    if isinstance(c, ZeroSection):
        return f"zero section of dimension {c.dim}"
    if isinstance(c, TwistedBundle):
        twists = ", ".join(str(t) for t in c.twists)
        return (
            f"rank-{c.rank} bundle over a dimension-{c.base_dim} base, "
            f"fiber twists ({twists})"
        )
    return str(c)


@dataclass(frozen=True)
class DualityEntry:
    """One row of the correspondence: a skeleton component and the residue
    pair of its split collar partner."""

    n: int
    j: int
    component: SkeletonComponent
    collar_pair: tuple[int, int]


@dataclass(frozen=True)
class SquareReport:
    """Certificates for one square: the step map between components j and
    j+1, the residue pairs of both rows, and the family whose endpoints
    step the collar splitting by the same amount."""

    n: int
    j: int
    step: int
    bir_verdict: Verdict
    lower_pair: tuple[int, int]
    upper_pair: tuple[int, int]
    def_endpoints: tuple[int, int]
    def_pair: tuple[int, int]
    verdict: bool
    failure: Optional[str]

    def __post_init__(self) -> None:
        if self.verdict != (self.failure is None):
            raise AssertionError("verdict must match the failure record")


def square_check(
    n: int, j: int, samples: int = 40, seed: int = 1, step: int = 1
) -> SquareReport:
    """Verify one square: the sampled round trip of the step map, the
    family endpoints, and that both paths out of row j name row j+1.

    ``step`` is the index step used on the collar side; any value other
    than 1 makes the family land on the wrong row, so the verdict records
    a genuine failure rather than being defined as true.
    """
    _check_collar(n)
    if not 0 <= j <= n - 2:
        raise IndexOutOfRange(f"no square at index {j} for collar parameter {n}")
    bir_verdict = verify_birational(bir_step(n, j), samples=samples, seed=seed)
    lower_pair = dual_of_lagrangian(n, j)
    upper_pair = dual_of_lagrangian(n, j + 1)
    family = index_step_family(n, j, step)
    def_endpoints = tuple(family_splitting_profile(family, (0, 1)))
    def_pair = ((j + step) % n, (-(j + step)) % n)

    failure: Optional[str] = None
    if not bir_verdict.passed:
        failure = (
            f"step map round trip failed on {len(bir_verdict.failures)} of "
            f"{bir_verdict.checked} samples"
        )
    elif def_endpoints != (j + step, j):
        failure = (
            f"family endpoints {def_endpoints} do not step the splitting "
            f"from {j + step} to {j}"
        )
    elif def_pair != upper_pair:
        failure = (
            f"family source names residue pair {def_pair} but the step map "
            f"lands on {upper_pair}"
        )
    return SquareReport(
        n=n,
        j=j,
        step=step,
        bir_verdict=bir_verdict,
        lower_pair=lower_pair,
        upper_pair=upper_pair,
        def_endpoints=def_endpoints,
        def_pair=def_pair,
        verdict=failure is None,
        failure=failure,
    )


@dataclass(frozen=True)
class DualityReport:
    """The full correspondence table for one collar parameter together with
    every square certificate."""

    n: int
    entries: tuple[DualityEntry, ...]
    squares: tuple[SquareReport, ...]

    @property
    def all_ok(self) -> bool:
        return all(s.verdict for s in self.squares)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {
                    "j": e.j,
                    "skeleton": describe_classification(e.component.classification),
                    "collar_pair": list(e.collar_pair),
                }
                for e in self.entries
            ],
            "squares": [
                {
                    "j": s.j,
                    "step": s.step,
                    "bir_checked": s.bir_verdict.checked,
                    "bir_skipped": s.bir_verdict.skipped,
                    "bir_passed": s.bir_verdict.passed,
                    "lower_pair": list(s.lower_pair),
                    "upper_pair": list(s.upper_pair),
                    "def_endpoints": list(s.def_endpoints),
                    "def_pair": list(s.def_pair),
                    "verdict": s.verdict,
                    "failure": s.failure,
                }
                for s in self.squares
            ],
            "all_ok": self.all_ok,
        }

    def to_text(self) -> str:
        lines = [f"collar parameter n = {self.n}"]
        lines.append("index | skeleton component | collar pair")
        for e in self.entries:
            desc = describe_classification(e.component.classification)
            lines.append(f"{e.j:5d} | {desc} | {e.collar_pair}")
        for s in self.squares:
            status = "ok" if s.verdict else f"FAIL: {s.failure}"
            lines.append(
                f"square {s.j} -> {s.j + 1}: round trip checked={s.bir_verdict.checked} "
                f"skipped={s.bir_verdict.skipped}, family endpoints {s.def_endpoints}, "
                f"pairs {s.lower_pair} -> {s.upper_pair}: {status}"
            )
        lines.append(f"all squares verified: {'yes' if self.all_ok else 'no'}")
        return "\n".join(lines)


def duality_report(n: int, samples: int = 40, seed: int = 1) -> DualityReport:
    """Assemble the table of all rows and all squares for one parameter."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"the report needs a collar parameter of at least 2, got {n!r}")
    components = skeleton(n - 1)
    if len(components) != n:
        raise AssertionError("skeleton side must have exactly n components")
    entries = tuple(
        DualityEntry(
            n=n,
            j=j,
            component=components[j],
            collar_pair=dual_of_lagrangian(n, j),
        )
        for j in range(n)
    )
    if sorted(e.collar_pair[0] for e in entries) != list(range(n)):
        raise AssertionError("collar side must cover every residue class once")
    squares = tuple(
        square_check(n, j, samples=samples, seed=seed) for j in range(n - 1)
    )
    return DualityReport(n=n, entries=entries, squares=squares)
