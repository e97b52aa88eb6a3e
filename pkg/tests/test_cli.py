import json
import re

import pytest

from leibcoh.catalog import catalog
from leibcoh.cli import algebra_to_dict, parse_algebra, run_command
from leibcoh.exceptions import (
    CoefficientError,
    FormatError,
    MalformedJSONError,
    MissingFileError,
    UnknownLabelError,
)

SL2 = {
    "name": "sl2",
    "kind": "lie",
    "basis": ["e", "f", "h"],
    "brackets": {"e,f": {"h": "1"}, "h,e": {"e": "2"}, "h,f": {"f": "-2"}},
}

HEISENBERG = {
    "name": "heisenberg3",
    "kind": "lie",
    "basis": ["x", "y", "z"],
    "brackets": {"x,y": {"z": "1"}},
}


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def _run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_parse_algebra(tmp_path):
    g = parse_algebra(_write(tmp_path, "sl2.json", SL2))
    assert g.basis == ("e", "f", "h")
    assert g.bracket(g.index("e"), g.index("f")) == {g.index("h"): 1}
    assert parse_algebra(SL2) == g


def test_parse_errors(tmp_path):
    with pytest.raises(MissingFileError):
        parse_algebra(str(tmp_path / "absent.json"))
    with pytest.raises(MalformedJSONError):
        parse_algebra(_write(tmp_path, "bad.json", "{not json"))
    with pytest.raises(UnknownLabelError):
        parse_algebra(dict(SL2, brackets={"e,q": {"h": "1"}}))
    with pytest.raises(CoefficientError):
        parse_algebra(dict(SL2, brackets={"e,f": {"h": "0.5"}}))
    with pytest.raises(CoefficientError):
        parse_algebra(dict(SL2, brackets={"e,f": {"h": 0.5}}))
    with pytest.raises(FormatError):
        parse_algebra(dict(SL2, brackets={"e,f": {"h": "1"}, "f,e": {"h": "-1"}}))
    with pytest.raises(FormatError):
        parse_algebra(dict(SL2, kind="associative"))
    with pytest.raises(FormatError):
        parse_algebra(dict(SL2, brackets={"e,f,h": {"h": "1"}}))


def test_invalid_algebra_still_parses():
    broken = dict(HEISENBERG, brackets={"x,y": {"z": "1"}, "y,z": {"x": "1"}})
    assert parse_algebra(broken).dim == 3


@pytest.mark.parametrize("name, params", [("witt", {"window": 3}), ("hvir", {"window": 1}), ("sl3", {})])
def test_algebra_file_round_trip(name, params):
    g = catalog(name, **params)
    assert parse_algebra(json.loads(json.dumps(algebra_to_dict(g)))) == g


def test_validate(tmp_path, capsys):
    code, report, _ = _run(capsys, "validate", _write(tmp_path, "sl2.json", SL2))
    assert code == 0
    assert report["valid"]
    assert report["violations"] == []
    broken = dict(HEISENBERG, brackets={"x,y": {"z": "1"}, "y,z": {"x": "1"}, "z,x": {"x": "1"}})
    code, report, _ = _run(capsys, "validate", _write(tmp_path, "broken.json", broken))
    assert code == 0
    assert not report["valid"]
    assert report["violations"][0]["identity"] == "leibniz"


def test_cohomology(tmp_path, capsys):
    path = _write(tmp_path, "h3.json", HEISENBERG)
    code, report, out = _run(capsys, "cohomology", "--theory", "leibniz", "--degree", "2", path)
    assert code == 0
    assert report["dimension"] == 5
    assert len(report["representatives"]) == 5
    for representative in report["representatives"]:
        for labels, value in representative:
            assert len(labels) == 2
            assert isinstance(value, str)
    assert not re.search(r"\d\.\d", out)
    code, report, _ = _run(capsys, "cohomology", "--theory", "lie", "--degree", "2", path)
    assert report["dimension"] == 2


def test_cohomology_dual_coefficients(tmp_path, capsys):
    path = _write(tmp_path, "sl2.json", SL2)
    code, report, _ = _run(
        capsys, "cohomology", "--theory", "lie", "--degree", "1", "--coefficients", "dual", path
    )
    assert code == 0
    assert report["dimension"] == 0
    assert report["coefficients"] == "dual"


def test_output_is_byte_stable(tmp_path, capsys):
    path = _write(tmp_path, "h3.json", HEISENBERG)
    _, _, first = _run(capsys, "report", path)
    _, _, second = _run(capsys, "report", path)
    assert first == second


def test_exactseq(tmp_path, capsys):
    code, report, _ = _run(capsys, "exactseq", _write(tmp_path, "h3.json", HEISENBERG))
    assert code == 0
    assert (report["H2"], report["HL2"], report["B"], report["H3"]) == (2, 5, 3, 1)
    assert report["identity"] == "5 = 2 + 3"
    assert report["f_injective"] and report["im_f_eq_ker_g"] and report["im_g_eq_ker_h"]


def test_bforms(tmp_path, capsys):
    path = _write(tmp_path, "sl2.json", SL2)
    code, report, _ = _run(capsys, "bforms", "--triple", "e,f,h", path)
    assert code == 0
    assert report["dimension"] == 1
    assert report["hl2_equals_h2"]["certified"]
    assert report["hl2_equals_h2"]["obstruction"] == "2"


def test_derivations_and_theta(tmp_path, capsys):
    path = _write(tmp_path, "h3.json", HEISENBERG)
    code, report, _ = _run(capsys, "derivations", path)
    assert (report["der"], report["inn"], report["H1"]) == (6, 2, 4)
    code, report, _ = _run(capsys, "derivations", "--skew", path)
    assert report["identity_holds"]
    assert report["der_minus_sder"] == 3
    code, report, _ = _run(capsys, "theta", path)
    assert code == 0
    assert report["isomorphism"]
    assert len(report["matrix"]) == 5


def test_extend(tmp_path, capsys):
    algebra = _write(
        tmp_path,
        "ab2.json",
        {"name": "ab2", "kind": "lie", "basis": ["x", "y"], "brackets": {}},
    )
    cocycle = _write(tmp_path, "alpha.json", {"entries": [[["x", "y"], "1"], [["y", "x"], "-1"]]})
    emitted = tmp_path / "ext.json"
    code, report, _ = _run(capsys, "extend", algebra, "--cocycle", cocycle, "--emit", str(emitted))
    assert code == 0
    assert report["extension_kind"] == "lie"
    assert report["validation"]["valid"]
    ext = parse_algebra(str(emitted))
    assert ext.basis == ("x", "y", "c")
    code, report, _ = _run(capsys, "exactseq", str(emitted))
    assert (report["H2"], report["HL2"]) == (2, 5)


def test_extend_leibniz(tmp_path, capsys):
    algebra = _write(tmp_path, "ab1.json", {"name": "ab1", "kind": "lie", "basis": ["x"]})
    cocycle = _write(tmp_path, "alpha.json", [[["x", "x"], "1"]])
    code, report, _ = _run(capsys, "extend", algebra, "--cocycle", cocycle)
    assert code == 0
    assert report["extension_kind"] == "leibniz"
    assert report["validation"]["valid"]


def test_quadratic(tmp_path, capsys):
    path = _write(tmp_path, "sl2.json", SL2)
    form = _write(tmp_path, "killing.json", {"entries": [[["e", "f"], "4"], [["h", "h"], "8"]]})
    derivation = _write(tmp_path, "ad_h.json", {"entries": [[["e", "e"], "2"], [["f", "f"], "-2"]]})
    code, report, _ = _run(capsys, "quadratic", path, "--form", form, "--derivation", derivation)
    assert code == 0
    assert [["e", "f"], "-8"] in report["cochain"]
    assert report["is_cocycle"]
    assert report["alternating"]
    assert report["coboundary"]
    assert report["symmetrization"] == []


def test_quadratic_rejects_non_derivation(tmp_path, capsys):
    path = _write(tmp_path, "sl2.json", SL2)
    form = _write(tmp_path, "killing.json", {"entries": [[["e", "f"], "4"], [["h", "h"], "8"]]})
    derivation = _write(tmp_path, "id.json", [[["e", "e"], "1"], [["f", "f"], "1"], [["h", "h"], "1"]])
    code, report, _ = _run(capsys, "quadratic", path, "--form", form, "--derivation", derivation)
    assert code == 1
    assert report["error"]["code"] == "not_a_derivation"


def test_catalog_emit_and_extend(tmp_path, capsys):
    algebra = tmp_path / "witt.json"
    cocycle = tmp_path / "vir.json"
    code, report, _ = _run(
        capsys,
        "catalog",
        "witt",
        "--window",
        "3",
        "--emit",
        str(algebra),
        "--cocycle",
        "virasoro",
        "--emit-cocycle",
        str(cocycle),
    )
    assert code == 0
    assert report["window_relative"]
    assert report["validation"]["valid"]
    assert report["cocycle"]["is_cocycle"]
    assert report["cocycle"]["alternating"]
    code, report, _ = _run(capsys, "extend", str(algebra), "--cocycle", str(cocycle), "--label", "C")
    assert code == 0
    assert report["validation"]["valid"]
    assert report["window_relative"]


def test_catalog_notices(capsys):
    code, report, _ = _run(capsys, "catalog", "diffops", "--window", "1", "--order", "1")
    assert code == 0
    assert any("operator bracket" in notice for notice in report["notices"])


def test_report(tmp_path, capsys):
    path = _write(
        tmp_path,
        "ab3.json",
        {"name": "ab3", "kind": "lie", "basis": ["a", "b", "c"], "brackets": {}},
    )
    code, report, _ = _run(capsys, "report", path)
    assert code == 0
    assert report["dimensions"]["leibniz"]["2"] == 9
    assert report["dimensions"]["chevalley_eilenberg"]["2"] == 3
    assert report["B"] == 6
    assert report["exact_sequence"]["identity"] == "9 = 3 + 6"


@pytest.mark.parametrize(
    "argv, code, error",
    [
        (["validate", "MISSING"], 2, "missing_file"),
        (["catalog", "kac_moody"], 2, "catalog"),
        (["catalog", "witt"], 2, "catalog"),
        (["--max-cochains", "10", "cohomology", "--theory", "leibniz", "--degree", "2", "SL2"], 1, "size_cap"),
        (["--max-degree", "1", "cohomology", "--theory", "leibniz", "--degree", "2", "SL2"], 1, "size_cap"),
        (["bforms", "--triple", "f,e,h", "SL2"], 1, "not_an_sl2_triple"),
        (["cohomology", "--theory", "lie", "--degree", "1", "--coefficients", "dual", "LEIB"], 1, "unsupported_kind"),
        (["exactseq", "WITT"], 1, "windowed_input"),
    ],
)
def test_errors(tmp_path, capsys, argv, code, error):
    files = {
        "MISSING": str(tmp_path / "missing.json"),
        "SL2": _write(tmp_path, "sl2.json", SL2),
        "LEIB": _write(
            tmp_path,
            "l2.json",
            {"name": "l2", "kind": "leibniz", "basis": ["x", "y"], "brackets": {"y,y": {"x": "1"}}},
        ),
        "WITT": _write(tmp_path, "witt.json", algebra_to_dict(catalog("witt", window=2))),
    }
    argv = [files.get(a, a) for a in argv]
    returned, report, _ = _run(capsys, *argv)
    assert returned == code
    assert report["error"]["code"] == error


def test_bad_coefficient_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "bad.json", dict(SL2, brackets={"e,f": {"h": "1.5"}}))
    code, report, _ = _run(capsys, "validate", path)
    assert code == 2
    assert report["error"]["code"] == "unparsable_coefficient"
