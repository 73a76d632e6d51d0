import io
import json
import os
from pathlib import Path

import pytest

from drinfeld_ml.cli import main
from drinfeld_ml.config import get_int, parse_config
from drinfeld_ml.errors import ParseError
from drinfeld_ml.experiment import EXPERIMENTS, PRESETS, load_descriptor, load_descriptor_text, load_experiment

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# --- config files ------------------------------------------------------------

def test_config_values_and_lists():
    cfg = parse_config('''
# comment
[module]
p = 3
phi_t = T + t*T^3   # trailing comment
gamma = [(1, g),
         (t, "0")]
X = ["y - g*x"]
''')
    assert cfg["p"].raw == "3"
    assert cfg["phi_t"].raw == "T + t*T^3"
    assert cfg["gamma"].raw == [("1", "g"), ("t", "0")]
    assert cfg["X"].raw == ["y - g*x"]
    assert (cfg["phi_t"].line, cfg["phi_t"].col) == (5, 9)


@pytest.mark.parametrize("text,line", [
    ("p = 3\np = 5\n", 2),
    ("p = 3\njust words\n", 2),
    ("x = [1, (2\n", 1),
    ("bad key = 1\n", 1),
])
def test_config_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line


def test_get_int_reports_position():
    text = "p = three\n"
    with pytest.raises(ParseError) as info:
        get_int(parse_config(text), "p", text=text)
    assert (info.value.line, info.value.column) == (1, 5)


def test_expression_errors_are_anchored_in_the_file():
    text = "p = 3\nm = 2\nphi_t = T + * t\n"
    with pytest.raises(ParseError) as info:
        load_descriptor_text(text)
    assert info.value.line == 3
    assert info.value.column == 13


def test_shipped_files_match_presets():
    for name, text in PRESETS.items():
        assert (DATA / "modules" / f"{name}.toml").read_text() == text
        assert load_descriptor(str(DATA / "modules" / f"{name}.toml")).module.phi_t == load_descriptor(name).module.phi_t
    for name in EXPERIMENTS:
        ex = load_experiment(str(DATA / "experiments" / f"{name}.toml"))
        assert ex.B == load_experiment(name).B


# --- command line ------------------------------------------------------------

def test_commute_prints_exponent():
    code, out = run("commute", "--psi", "g*T^0", "--module", "remark_sharp.toml", "--nmax", "8")
    assert code == 0
    assert "\nn = 2\n" in out


def test_torsion_of_trivial_module():
    code, out = run("torsion", "--a", "t", "--module", "trivial_tau.toml", "--N", "4")
    assert code == 0
    assert "\nsize = 1\n" in out


def test_bundle_example_lambda():
    code, out = run("bundle", "example_lambda")
    assert code == 0
    assert "status = PASS" in out
    assert "commutation_exponent_nmax6 = NONE (expected NONE) PASS" in out


def test_output_is_deterministic():
    args = ("sharp", "--module", "carlitz_f2", "--N", "4")
    assert run(*args) == run(*args)


def test_json_lines():
    code, out = run("torsion", "--module", "carlitz_f2", "--a", "t+1", "--format", "json-lines")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    size = next(r["value"] for r in rows if r["section"] == "TORSION" and r["key"] == "size")
    # phi_{t+1} = 1 + T + T^2: x^4 + x^2 + x splits over F_8
    assert size == 2 ** 2


def test_parse_error_exit_code_and_position():
    code, out = run("ore", "--p", "3", "--m", "2", "--f", "T + * t")
    assert code == 2
    assert "line 1, column 5" in out


def test_precondition_is_named():
    code, out = run("torsion", "--module", "carlitz_f2", "--a", "0")
    assert code == 2
    assert "ZeroAnnihilator" in out
    code, out = run("sharp", "--module", "remark_sharp")
    assert code == 2 and "ModeMismatch" in out
    code, out = run("reduce", "--module", "remark_sharp", "--place", "0")
    assert code == 2 and "BadReduction" in out


def test_missing_file():
    code, out = run("torsion", "--module", "no_such_module.toml")
    assert code == 2


def test_failed_decomposition_exits_one(tmp_path):
    exp = tmp_path / "bad.toml"
    exp.write_text(EXPERIMENTS["remark_sharp"].replace("; 2\"]", "; 1\"]").replace("place_orbits = (2, 24)\n", ""))
    code, out = run("intersect", "--experiment", str(exp), "--B", "4")
    assert code == 1
    assert "witness_a = (t)" in out


def test_intersect_with_plots(tmp_path):
    code, out = run("intersect", "--experiment", "remark_sharp", "--B", "4", "--plot-dir", str(tmp_path), "--jobs", "2")
    assert code == 0
    for section in ("ENUMERATION", "INTERSECTION", "INVARIANCE", "DECOMPOSITION", "REDUCTION", "FIGURES"):
        assert f"[{section}]" in out
    assert "n = 2" in out
    pngs = sorted(os.listdir(tmp_path))
    assert pngs == ["intersection_growth.png", "reduction_scan.png"]
    assert all((tmp_path / f).stat().st_size > 1000 for f in pngs)


def test_other_subcommands(tmp_path):
    code, out = run("eval", "--p", "3", "--m", "2", "--expr", "(t^2+g)/(t+1)", "--decompose", "--at", "1")
    assert code == 0 and "lambda_2" in out and "specialized" in out
    code, out = run("lambda", "--p", "3", "--m", "2", "--psi", "L0 L0")
    assert code == 0 and "clearance_exponent = 2" in out
    code, out = run("sharp", "--module", "example_lambda", "--place", "2", "--f", "t*T + T^3",
                    "--g", "(t*T + T^3)^2", "--plot-dir", str(tmp_path))
    assert code == 0 and "result = EQUAL" in out
    code, out = run("ore", "--p", "2", "--mode", "finite", "--f", "T + T^2", "--N", "2")
    assert code == 0 and "size = 2x2" in out
    code, out = run("bundle", "--list")
    assert code == 0 and "remark_important = available" in out
    code, out = run("commute", "--module", "remark_sharp", "--psi", "g", "--plot-dir", str(tmp_path))
    assert code == 0 and (tmp_path / "commutators.png").exists()


def test_unknown_bundle():
    code, out = run("bundle", "nope")
    assert code == 2
