"""Command-line front end: argument parsing, dispatch to the library
modules, and text, JSON, and SVG report emission.

Every text report opens with a header repeating the effective parameters
(including seed and cutoff) so a result can be reproduced from the report
alone; JSON reports carry the same data in a "config" object.  Exit codes:
0 on success, 2 for usage and input errors, 3 when a verification step
fails or cannot stabilise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .birmaps import (
    DegenerateSampler,
    IndeterminacyHit,
    bir_step,
    product_to_projective,
    verify_birational,
)
from .bundles import (
    BoundTooSmall,
    BundleTransition,
    compare_line_bundles,
    moduli_dimension,
    picard_group,
    splitting_type,
)
from .deform import (
    ClassNotGeneric,
    WindowUnstable,
    ext1_basis,
    family_splitting_profile,
    index_step_family,
)
from .duality import describe_classification, duality_report
from .exact import LaurentPoly
from .potential import (
    SymplecticStructure,
    action_vector_field,
    hamiltonian_residual,
    solve_potential,
    symbolic_test_field,
)
from .skeleton import AffineFiber, TwistedBundle, ZeroSection, skeleton
from .toric import QuotientSingularity, minimal_resolution, quotient_cone

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

SEED_ENV = "SKELCOLLAR_SEED"


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one invocation."""

    subcommand: str
    n: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    j: Optional[int] = None
    j2: Optional[int] = None
    s: Optional[int] = None
    weights: Optional[tuple[int, ...]] = None
    kappa: Optional[Fraction] = None
    samples: int = 40
    seed: int = 1
    cutoff: Optional[int] = None
    bound: Optional[int] = None
    taus: Optional[tuple[Fraction, ...]] = None
    matrix_path: Optional[str] = None
    dual: bool = False
    collar_action: Optional[str] = None
    format: str = "text"
    output: Optional[str] = None


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers: {text!r}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _parse_taus(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"parameter list must be comma-separated rationals: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skelcollar",
        description="exact computations for skeleta, collars, and the pairing between them",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        p.add_argument("--format", choices=list(formats), default="text")
        p.add_argument("--output", default=None, help="write the report to this path")

    p = sub.add_parser("skeleton", help="components of the cotangent-space skeleton")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", type=_parse_weights, default=None)
    add_common(p, ("text", "json"))

    p = sub.add_parser("potential", help="flow potential for the weighted action")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", type=_parse_weights, default=None)
    p.add_argument("--kappa", type=_parse_fraction, default=None)
    add_common(p, ("text", "json"))

    p = sub.add_parser("resolve", help="minimal resolution of a plane quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    add_common(p, ("text", "json", "svg"))

    p = sub.add_parser("fan", help="quotient cone and its dual")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--dual", action="store_true", help="draw the dual cone in SVG output")
    add_common(p, ("text", "json", "svg"))

    p = sub.add_parser("birmap", help="product-to-projective collapse round trip")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    add_common(p, ("text", "json"))

    p = sub.add_parser("birstep", help="step map between consecutive skeleton components")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    add_common(p, ("text", "json"))

    p = sub.add_parser("collar", help="line bundles on the punctured surface")
    collar_sub = p.add_subparsers(dest="collar_action", required=True)
    pic = collar_sub.add_parser("pic", help="residue classes and tensor table")
    pic.add_argument("--n", type=int, required=True)
    add_common(pic, ("text", "json"))
    iso = collar_sub.add_parser("iso", help="isomorphism certificate for two twists")
    iso.add_argument("--n", type=int, required=True)
    iso.add_argument("--j1", type=int, required=True)
    iso.add_argument("--j2", type=int, required=True)
    iso.add_argument("--bound", type=int, default=None)
    add_common(iso, ("text", "json"))

    p = sub.add_parser("splitting", help="splitting type of a rank-2 transition matrix")
    p.add_argument("--matrix", dest="matrix_path", required=True, help="JSON file {n, matrix}")
    add_common(p, ("text", "json"))

    p = sub.add_parser("moduli-dim", help="dimension of the splitting-type moduli")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    add_common(p, ("text", "json"))

    p = sub.add_parser("ext1", help="basis of the extension group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=None)
    add_common(p, ("text", "json"))

    p = sub.add_parser("deform", help="splitting profile of an index-step family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--taus", type=_parse_taus, default=None)
    add_common(p, ("text", "json"))

    p = sub.add_parser("duality", help="correspondence table with square certificates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--seed", type=int, default=1)
    add_common(p, ("text", "json"))

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        "subcommand": args.subcommand,
        "format": getattr(args, "format", "text"),
        "output": getattr(args, "output", None),
    }
    for name in ("n", "a", "b", "s", "weights", "kappa", "cutoff", "bound",
                 "taus", "matrix_path", "dual", "collar_action"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    if hasattr(args, "j"):
        fields["j"] = args.j
    if hasattr(args, "j1"):
        fields["j"] = args.j1
    if hasattr(args, "j2"):
        fields["j2"] = args.j2
    if hasattr(args, "samples"):
        fields["samples"] = args.samples
    if hasattr(args, "seed"):
        fields["seed"] = args.seed
    return RunConfig(**fields)


def validate_config(config: RunConfig) -> None:
    if config.n is not None and config.n < 1:
        raise ValueError(f"--n must be at least 1, got {config.n}")
    if config.a is not None and config.a < 0:
        raise ValueError(f"--a must be nonnegative, got {config.a}")
    if config.b is not None and config.b < 0:
        raise ValueError(f"--b must be nonnegative, got {config.b}")
    if config.samples < 1:
        raise ValueError(f"--samples must be positive, got {config.samples}")
    if config.s is not None and config.s < 1:
        raise ValueError(f"--s must be positive, got {config.s}")
    if config.cutoff is not None and config.cutoff < 0:
        raise ValueError(f"--cutoff must be nonnegative, got {config.cutoff}")
    if config.weights is not None and config.n is not None and len(config.weights) != config.n:
        raise ValueError(
            f"--weights needs exactly {config.n} entries, got {len(config.weights)}"
        )


# ---------------------------------------------------------------------------
# rendering helpers

_HEADER_KEYS = ("n", "a", "b", "j", "j2", "s", "weights", "kappa", "bound", "taus")


def _config_summary(config: RunConfig) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for key in _HEADER_KEYS:
        value = getattr(config, key)
        if value is None:
            continue
        if key == "weights":
            pairs.append((key, ",".join(str(w) for w in value)))
        elif key == "taus":
            pairs.append((key, ",".join(str(t) for t in value)))
        else:
            pairs.append((key, str(value)))
    pairs.append(("seed", str(config.seed)))
    pairs.append(("cutoff", "auto" if config.cutoff is None else str(config.cutoff)))
    return pairs


def _header(config: RunConfig) -> str:
    name = config.subcommand
    if config.collar_action:
        name += f" {config.collar_action}"
    params = " ".join(f"{k}={v}" for k, v in _config_summary(config))
    return f"# skelcollar {name} | {params}"


def _config_json(config: RunConfig) -> dict:
    out: dict = {"subcommand": config.subcommand}
    if config.collar_action:
        out["collar_action"] = config.collar_action
    for k, v in _config_summary(config):
        out[k] = v
    return out


def _classification_json(c: object) -> dict:
    if isinstance(c, AffineFiber):
        return {"kind": "affine_fiber", "dim": c.dim}
    if isinstance(c, ZeroSection):
        return {"kind": "zero_section", "dim": c.dim}
    if isinstance(c, TwistedBundle):
        return {
            "kind": "twisted_bundle",
            "base_dim": c.base_dim,
            "rank": c.rank,
            "twists": list(c.twists),
        }
    return {"kind": str(c)}


def _var_key(name: str) -> tuple[str, int]:
    return (name[0], int(name[1:]))


def _zero_set(forced: frozenset[str]) -> str:
    names = sorted(forced, key=_var_key)
    return "{" + " = ".join(names + ["0"]) + "}" if names else "{}"


# ---------------------------------------------------------------------------
# SVG emission

_SVG_UNIT = 40


def _svg_rays(
    solid: Sequence[tuple[int, int]],
    dashed: Sequence[tuple[int, int]],
    title: str,
) -> str:
    points = list(solid) + list(dashed) + [(1, 1)]
    extent = max(max(abs(x), abs(y)) for x, y in points) + 1
    half = _SVG_UNIT * extent
    size = 2 * half

    def cx(x: int) -> int:
        return half + _SVG_UNIT * x

    def cy(y: int) -> int:
        return half - _SVG_UNIT * y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" '
        f'width="{size}" height="{size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<text x="8" y="18" font-family="monospace" font-size="14">{title}</text>',
    ]
    for gx in range(-extent + 1, extent):
        for gy in range(-extent + 1, extent):
            parts.append(
                f'<circle cx="{cx(gx)}" cy="{cy(gy)}" r="2" fill="#c0c0c0"/>'
            )
    for x, y in solid:
        parts.append(
            f'<line x1="{cx(0)}" y1="{cy(0)}" x2="{cx(x)}" y2="{cy(y)}" '
            f'stroke="#202020" stroke-width="3"/>'
        )
    for x, y in dashed:
        parts.append(
            f'<line x1="{cx(0)}" y1="{cy(0)}" x2="{cx(x)}" y2="{cy(y)}" '
            f'stroke="#606060" stroke-width="2" stroke-dasharray="6,4"/>'
        )
    for x, y in list(solid) + list(dashed):
        parts.append(f'<circle cx="{cx(x)}" cy="{cy(y)}" r="5" fill="#202020"/>')
        parts.append(
            f'<text x="{cx(x) + 8}" y="{cy(y) - 8}" font-family="monospace" '
            f'font-size="13">({x}, {y})</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# handlers: each returns (exit code, json payload, text body, optional svg)

Handler = Callable[[RunConfig], tuple[int, dict, str, Optional[str]]]


def _run_skeleton(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    components = skeleton(config.n, config.weights)
    lines = []
    payload = []
    for comp in components:
        desc = describe_classification(comp.classification)
        lines.append(f"L_{comp.j}: {desc} | {_zero_set(comp.forced)}")
        payload.append(
            {
                "j": comp.j,
                "classification": _classification_json(comp.classification),
                "description": desc,
                "forced": sorted(comp.forced, key=_var_key),
                "free_base": list(comp.free_base),
                "free_fiber": list(comp.free_fiber),
            }
        )
    return EXIT_OK, {"components": payload}, "\n".join(lines), None


def _run_potential(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    weights = config.weights if config.weights is not None else tuple(range(1, config.n + 1))
    field = action_vector_field(weights)
    omega = SymplecticStructure(config.n)
    pot = solve_potential(field, omega, config.kappa if config.kappa is not None else 2)
    residual = hamiltonian_residual(pot, field, omega, symbolic_test_field(config.n))
    ok = residual.is_zero
    code = EXIT_OK if ok else EXIT_VERIFY
    lines = [
        f"h = {pot.h}",
        f"kappa = {pot.kappa}",
        f"residual against the symbolic test field: {'0' if ok else residual}",
    ]
    payload = {
        "h": pot.h.to_json_dict(),
        "h_display": str(pot.h),
        "kappa": str(pot.kappa),
        "constant_symbol": pot.constant_symbol,
        "residual_zero": ok,
    }
    return code, payload, "\n".join(lines), None


def _run_resolve(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    chain = minimal_resolution(QuotientSingularity(config.n, config.a))
    cone = chain.cone
    matrix = chain.intersection_matrix
    lines = [
        f"cone rays: {cone.rays[0]} {cone.rays[1]}",
        f"subdividing rays: {' '.join(str(r) for r in chain.rays) if chain.rays else '(none)'}",
        f"self-intersections: {list(chain.self_intersections)}",
    ]
    payload = {
        "cone": [list(cone.rays[0]), list(cone.rays[1])],
        "rays": [list(r) for r in chain.rays],
        "self_intersections": list(chain.self_intersections),
        "intersection_matrix": [list(row) for row in matrix],
    }
    svg = _svg_rays(
        cone.rays,
        chain.rays,
        f"resolved quotient cone n={config.n} a={config.a}",
    )
    return EXIT_OK, payload, "\n".join(lines), svg


def _run_fan(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    cone = quotient_cone(QuotientSingularity(config.n, config.a))
    dual = cone.dual()
    lines = [
        f"cone rays: {cone.rays[0]} {cone.rays[1]}",
        f"dual cone rays: {dual.rays[0]} {dual.rays[1]}",
    ]
    payload = {
        "cone": [list(cone.rays[0]), list(cone.rays[1])],
        "dual": [list(dual.rays[0]), list(dual.rays[1])],
    }
    shown = dual if config.dual else cone
    which = "dual cone" if config.dual else "cone"
    svg = _svg_rays(shown.rays, (), f"{which} n={config.n} a={config.a}")
    return EXIT_OK, payload, "\n".join(lines), svg


def _verdict_result(verdict, source: str) -> tuple[int, dict, str, Optional[str]]:
    code = EXIT_OK if verdict.passed else EXIT_VERIFY
    status = "passed" if verdict.passed else "FAILED"
    lines = [
        f"{source}: round trip {status}",
        f"samples checked: {verdict.checked}, skipped: {verdict.skipped}",
    ]
    if verdict.failures:
        lines.append(f"failures: {len(verdict.failures)}")
    payload = {
        "passed": verdict.passed,
        "checked": verdict.checked,
        "skipped": verdict.skipped,
        "failures": len(verdict.failures),
    }
    return code, payload, "\n".join(lines), None


def _run_birmap(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    pair = product_to_projective(config.a, config.b)
    verdict = verify_birational(pair, samples=config.samples, seed=config.seed)
    return _verdict_result(verdict, f"collapse of the ({config.a}, {config.b}) product")


def _run_birstep(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    pair = bir_step(config.n, config.j)
    verdict = verify_birational(pair, samples=config.samples, seed=config.seed)
    return _verdict_result(
        verdict, f"step map {config.j} -> {config.j + 1} in dimension {config.n}"
    )


def _run_collar(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    if config.collar_action == "pic":
        group = picard_group(config.n)
        lines = [f"residue classes mod {config.n}: {list(group.classes)}"]
        lines.append("tensor table:")
        for i, row in enumerate(group.table):
            lines.append(f"  {i}: {list(row)}")
        payload = {
            "classes": list(group.classes),
            "table": [list(row) for row in group.table],
        }
        return EXIT_OK, payload, "\n".join(lines), None

    comparison = compare_line_bundles(config.n, config.j, config.j2, bound=config.bound)
    lines = [
        f"residues: {comparison.residue1} and {comparison.residue2} (mod {config.n})",
        f"isomorphic on the punctured surface: {'yes' if comparison.isomorphic else 'no'}",
    ]
    payload = {
        "j1": config.j,
        "j2": config.j2,
        "residue1": comparison.residue1,
        "residue2": comparison.residue2,
        "isomorphic": comparison.isomorphic,
        "certificate": None,
    }
    cert = comparison.certificate
    if cert is not None:
        v_entry = cert.v_frame[0][0]
        u_entry = cert.u_frame[0][0]
        lines.append(f"certificate frames: v side {v_entry}, u side {u_entry}")
        payload["certificate"] = {
            "v_frame": [[str(e) for e in row] for row in cert.v_frame],
            "u_frame": [[str(e) for e in row] for row in cert.u_frame],
        }
    return EXIT_OK, payload, "\n".join(lines), None


def _run_splitting(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    with open(config.matrix_path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict) or "n" not in data or "matrix" not in data:
        raise ValueError('matrix file must be a JSON object {"n": ..., "matrix": [[...]]}')
    rows = [
        [LaurentPoly.from_json_dict(entry) for entry in row] for row in data["matrix"]
    ]
    trans = BundleTransition.from_rows(int(data["n"]), rows)
    pair = splitting_type(trans)
    lines = [f"splitting type: {pair}"]
    payload = {"n": trans.n, "splitting": list(pair)}
    return EXIT_OK, payload, "\n".join(lines), None


def _run_moduli(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    result = moduli_dimension(config.n, config.j)
    if result.dimension is None:
        lines = [f"empty: {result.note}"]
    else:
        lines = [f"dimension: {result.dimension}"]
    payload = {"dimension": result.dimension, "note": result.note}
    return EXIT_OK, payload, "\n".join(lines), None


def _run_ext1(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    basis = ext1_basis(config.n, config.j, config.cutoff)
    lines = [f"dimension: {len(basis)}"]
    if basis:
        lines.append("basis monomials: " + ", ".join(str(m) for m in basis))
    payload = {
        "dimension": len(basis),
        "basis": [m.to_json_dict() for m in basis],
        "display": [str(m) for m in basis],
    }
    return EXIT_OK, payload, "\n".join(lines), None


def _run_deform(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    family = index_step_family(config.n, config.j, config.s if config.s is not None else 1)
    taus = config.taus if config.taus is not None else (Fraction(0), Fraction(1))
    profile = family_splitting_profile(family, taus)
    lines = [f"family entry: {family.entry}"]
    for tau, value in zip(taus, profile):
        lines.append(f"tau = {tau}: splitting {value}")
    payload = {
        "entry": str(family.entry),
        "profile": [
            {"tau": str(tau), "splitting": value} for tau, value in zip(taus, profile)
        ],
    }
    return EXIT_OK, payload, "\n".join(lines), None


def _run_duality(config: RunConfig) -> tuple[int, dict, str, Optional[str]]:
    report = duality_report(config.n, samples=config.samples, seed=config.seed)
    code = EXIT_OK if report.all_ok else EXIT_VERIFY
    return code, report.to_json_dict(), report.to_text(), None


_HANDLERS: dict[str, Handler] = {
    "skeleton": _run_skeleton,
    "potential": _run_potential,
    "resolve": _run_resolve,
    "fan": _run_fan,
    "birmap": _run_birmap,
    "birstep": _run_birstep,
    "collar": _run_collar,
    "splitting": _run_splitting,
    "moduli-dim": _run_moduli,
    "ext1": _run_ext1,
    "deform": _run_deform,
    "duality": _run_duality,
}


def dispatch(config: RunConfig) -> tuple[int, str]:
    """Run one configured command; returns (exit code, rendered report)."""
    validate_config(config)
    code, payload, text_body, svg = _HANDLERS[config.subcommand](config)
    if config.format == "json":
        document = {"config": _config_json(config)}
        document.update(payload)
        rendered = json.dumps(document, indent=2, sort_keys=True) + "\n"
    elif config.format == "svg":
        if svg is None:
            raise ValueError(f"no figure output for {config.subcommand}")
        rendered = svg
    else:
        rendered = _header(config) + "\n" + text_body + "\n"
    return code, rendered


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    config = config_from_args(args)
    env_seed = os.environ.get(SEED_ENV)
    try:
        if env_seed is not None:
            config = replace(config, seed=int(env_seed))
        code, rendered = dispatch(config)
    except (BoundTooSmall, WindowUnstable, ClassNotGeneric, DegenerateSampler, IndeterminacyHit) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.output is not None:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
