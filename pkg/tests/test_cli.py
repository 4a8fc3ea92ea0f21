"""End-to-end checks of the command-line front end.

The mathematical content is covered by the per-module suites; these tests
pin the wiring: argument handling, exit codes, report formats, and the
round trip between emitted JSON and the library's own readers.
"""

import json

import pytest

from skelcollar.bundles import BundleTransition, splitting_type
from skelcollar.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from skelcollar.deform import ext1_basis
from skelcollar.exact import LaurentPoly
from skelcollar.toric import QuotientSingularity, dual_cone, quotient_cone


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_skeleton_text_lists_all_components(capsys):
    code, out, _ = run(capsys, ["skeleton", "--n", "3"])
    assert code == EXIT_OK
    assert "L_0: affine fiber of dimension 3 | {x1 = x2 = x3 = 0}" in out
    assert (
        "L_1: rank-2 bundle over a dimension-1 base, fiber twists (-1, -1) "
        "| {x2 = x3 = y1 = 0}" in out
    )
    assert (
        "L_2: rank-1 bundle over a dimension-2 base, fiber twists (-1) "
        "| {x3 = y1 = y2 = 0}" in out
    )
    assert "L_3: zero section of dimension 3 | {y1 = y2 = y3 = 0}" in out


def test_header_reports_effective_parameters(capsys):
    code, out, _ = run(capsys, ["duality", "--n", "2", "--samples", "5", "--seed", "7"])
    assert code == EXIT_OK
    header = out.splitlines()[0]
    assert header.startswith("# skelcollar duality |")
    assert "n=2" in header
    assert "seed=7" in header
    assert "cutoff=auto" in header


def test_env_seed_overrides_flag(capsys, monkeypatch):
    monkeypatch.setenv("SKELCOLLAR_SEED", "31")
    code, out, _ = run(capsys, ["birmap", "--a", "1", "--b", "1", "--samples", "5", "--seed", "9"])
    assert code == EXIT_OK
    assert "seed=31" in out.splitlines()[0]
    assert "seed=9" not in out


def test_env_seed_must_be_an_integer(capsys, monkeypatch):
    monkeypatch.setenv("SKELCOLLAR_SEED", "pi")
    code, _, err = run(capsys, ["birmap", "--a", "1", "--b", "1"])
    assert code == EXIT_USAGE
    assert "error" in err


def test_repeated_runs_are_byte_identical(capsys):
    argv = ["duality", "--n", "3", "--samples", "8", "--format", "json"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


def test_json_reports_carry_config(capsys):
    code, out, _ = run(capsys, ["moduli-dim", "--n", "3", "--j", "4", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["config"]["subcommand"] == "moduli-dim"
    assert doc["config"]["n"] == "3"
    assert doc["config"]["j"] == "4"
    assert doc["config"]["seed"] == "1"
    assert doc["dimension"] == 3


def test_moduli_dim_empty_case_carries_note(capsys):
    code, out, _ = run(capsys, ["moduli-dim", "--n", "8", "--j", "2", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["dimension"] is None
    assert "empty" in doc["note"]


def test_ext1_json_round_trips_through_reader(capsys):
    code, out, _ = run(capsys, ["ext1", "--n", "2", "--j", "2", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    rebuilt = tuple(LaurentPoly.from_json_dict(entry) for entry in doc["basis"])
    assert rebuilt == ext1_basis(2, 2)
    assert doc["dimension"] == len(rebuilt)


def test_resolve_json_schema(capsys):
    code, out, _ = run(capsys, ["resolve", "--n", "5", "--a", "2", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["cone"] == [[1, 0], [-2, 5]]
    assert doc["rays"] == [[0, 1], [-1, 3]]
    assert doc["self_intersections"] == [-3, -2]
    assert doc["intersection_matrix"] == [[-3, 1], [1, -2]]


def test_fan_json_matches_dual_cone(capsys):
    code, out, _ = run(capsys, ["fan", "--n", "4", "--a", "1", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    cone = quotient_cone(QuotientSingularity(4, 1))
    dual = dual_cone(cone)
    assert doc["cone"] == [list(r) for r in cone.rays]
    assert doc["dual"] == [list(r) for r in dual.rays]


def test_potential_json_h_round_trips(capsys):
    code, out, _ = run(capsys, ["potential", "--n", "3", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    h = LaurentPoly.from_json_dict(doc["h"])
    assert str(h) == doc["h_display"]
    assert doc["residual_zero"] is True
    assert doc["kappa"] == "2"


def test_potential_text_shows_closed_form(capsys):
    code, out, _ = run(capsys, ["potential", "--n", "2", "--weights", "5,7", "--kappa", "3/2"])
    assert code == EXIT_OK
    assert "h = c - 15/2*x1*y1 - 21/2*x2*y2" in out
    assert "residual against the symbolic test field: 0" in out


def test_collar_pic_table(capsys):
    code, out, _ = run(capsys, ["collar", "pic", "--n", "3"])
    assert code == EXIT_OK
    assert "residue classes mod 3: [0, 1, 2]" in out
    assert "1: [1, 2, 0]" in out


def test_collar_iso_certificate_and_refusal(capsys):
    code, out, _ = run(capsys, ["collar", "iso", "--n", "3", "--j1", "5", "--j2", "2"])
    assert code == EXIT_OK
    assert "isomorphic on the punctured surface: yes" in out
    assert "certificate frames" in out

    code, out, _ = run(capsys, ["collar", "iso", "--n", "3", "--j1", "5", "--j2", "1"])
    assert code == EXIT_OK
    assert "isomorphic on the punctured surface: no" in out
    assert "certificate frames" not in out


def test_splitting_reads_matrix_file(capsys, tmp_path):
    upper = LaurentPoly.var("z") ** 3
    off = LaurentPoly.monomial({"z": -1})
    lower = LaurentPoly.monomial({"z": -3})
    zero = LaurentPoly.zero()
    path = tmp_path / "matrix.json"
    path.write_text(
        json.dumps(
            {
                "n": 2,
                "matrix": [
                    [upper.to_json_dict(), off.to_json_dict()],
                    [zero.to_json_dict(), lower.to_json_dict()],
                ],
            }
        )
    )
    code, out, _ = run(capsys, ["splitting", "--matrix", str(path), "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    expected = splitting_type(
        BundleTransition.from_rows(2, [[upper, off], [zero, lower]])
    )
    assert tuple(doc["splitting"]) == expected


def test_splitting_rejects_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rows": []}))
    code, _, err = run(capsys, ["splitting", "--matrix", str(path)])
    assert code == EXIT_USAGE
    assert "matrix file" in err

    code, _, err = run(capsys, ["splitting", "--matrix", str(tmp_path / "missing.json")])
    assert code == EXIT_USAGE


def test_deform_profile_lines(capsys):
    code, out, _ = run(capsys, ["deform", "--n", "2", "--j", "1", "--taus", "0,1,1/3"])
    assert code == EXIT_OK
    assert "family entry: z^-1" in out
    assert "tau = 0: splitting 2" in out
    assert "tau = 1: splitting 1" in out
    assert "tau = 1/3: splitting 1" in out


def test_birstep_round_trip(capsys):
    code, out, _ = run(capsys, ["birstep", "--n", "3", "--j", "0", "--samples", "15"])
    assert code == EXIT_OK
    assert "round trip passed" in out
    assert "samples checked: 15" in out


def test_duality_failure_exit_code(capsys):
    code, _, err = run(capsys, ["ext1", "--n", "1", "--j", "3", "--cutoff", "3"])
    assert code == EXIT_VERIFY
    assert "verification failed" in err


def test_usage_errors_exit_2(capsys):
    for argv in (
        ["skeleton"],
        ["skeleton", "--n", "0"],
        ["no-such-command"],
        ["potential", "--n", "3", "--weights", "1,2"],
        ["skeleton", "--n", "2", "--format", "svg"],
        ["deform", "--n", "2", "--j", "1", "--taus", "0,oops"],
        ["birmap", "--a", "1", "--b", "1", "--samples", "0"],
    ):
        code, _, _ = run(capsys, argv)
        assert code == EXIT_USAGE, argv


def test_help_exits_cleanly(capsys):
    code, out, _ = run(capsys, ["--help"])
    assert code == EXIT_OK
    assert "skelcollar" in out


def test_svg_output_is_deterministic_and_integral(capsys):
    argv = ["resolve", "--n", "5", "--a", "2", "--format", "svg"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert out1.startswith("<svg")
    assert "." not in out1.split("</text>")[0].split(">")[-1]
    assert 'stroke-dasharray' in out1


def test_fan_svg_has_no_dashed_rays(capsys):
    code, out, _ = run(capsys, ["fan", "--n", "3", "--a", "2", "--format", "svg"])
    assert code == EXIT_OK
    assert out.startswith("<svg")
    assert "stroke-dasharray" not in out


def test_output_flag_writes_file_and_silences_stdout(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        ["collar", "pic", "--n", "4", "--format", "json", "--output", str(path)],
    )
    assert code == EXIT_OK
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["classes"] == [0, 1, 2, 3]


def test_duality_text_table(capsys):
    code, out, _ = run(capsys, ["duality", "--n", "4", "--samples", "10"])
    assert code == EXIT_OK
    assert "collar parameter n = 4" in out
    assert "all squares verified: yes" in out
    assert out.count("-> ") >= 3
