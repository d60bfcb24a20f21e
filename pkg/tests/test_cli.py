import json
import math

import numpy as np
import pytest

from bergtoep.cli import (
    SymbolParseError,
    main,
    matrix_to_csv,
    matrix_to_json,
    parse_index,
    parse_set_expr,
    parse_symbol,
    symbol_to_json,
)
from bergtoep.specialfn import SpaceParams
from bergtoep.symbols import MonomialCombo, SeparatelyRadialSymbol
from bergtoep.toeplitz import assemble

CROSS = '{"type":"monomial_combo","n":2,"terms":[{"a":[1,0],"b":[0,1],"re":1,"im":0}]}'
RADIAL_T2 = '{"type":"separately_radial","n":2,"s":[0,0],"h":{"kind":"even_poly","coeffs":[0,1]}}'
MOD_Z1 = '{"type":"separately_radial","n":2,"s":[1,0],"h":{"kind":"constant","value":1}}'


def test_parse_symbol_monomial_combo():
    f = parse_symbol(CROSS)
    assert isinstance(f, MonomialCombo)
    assert f.terms == (((1, 0), (0, 1), 1.0 + 0.0j),)


def test_parse_symbol_separately_radial():
    g = parse_symbol(MOD_Z1)
    assert isinstance(g, SeparatelyRadialSymbol)
    assert g.s == (1.0, 0.0)
    assert g.h.kind == "constant"


def test_parse_symbol_dimension_mismatch_is_annotated():
    bad = '{"type":"monomial_combo","n":2,"terms":[{"a":[1],"b":[0,1],"re":1,"im":0}]}'
    with pytest.raises(SymbolParseError) as err:
        parse_symbol(bad)
    assert "$.terms[0]" in str(err.value)


def test_parse_symbol_negative_exponent_rejected():
    bad = '{"type":"separately_radial","n":1,"s":[-1],"h":{"kind":"constant","value":1}}'
    with pytest.raises(SymbolParseError) as err:
        parse_symbol(bad)
    assert "$.s[0]" in str(err.value)


def test_parse_symbol_bad_json_reports_position():
    with pytest.raises(SymbolParseError) as err:
        parse_symbol("{not json")
    assert "line 1" in str(err.value)


def test_parse_symbol_roundtrips_through_json_form():
    for text in (CROSS, RADIAL_T2, MOD_Z1):
        sym = parse_symbol(text)
        again = parse_symbol(json.dumps(symbol_to_json(sym)))
        assert again == sym


def test_parse_set_expr_nested():
    expr = parse_set_expr(
        '{"tag":"union","left":{"tag":"full","n":2},'
        '"right":{"tag":"translate","inner":{"tag":"finite","n":2,"members":[[1,1]]},'
        '"offset":[1,-1]}}'
    )
    from bergtoep.psets import Union

    assert isinstance(expr, Union)
    with pytest.raises(SymbolParseError) as err:
        parse_set_expr('{"tag":"nope"}')
    assert "$.tag" in str(err.value)


def test_parse_index():
    assert parse_index("1,0") == (1, 0)
    assert parse_index("-2,3") == (-2, 3)
    with pytest.raises(SymbolParseError):
        parse_index("a,b")


def test_cli_dcoeff_value(capsys):
    assert main(["dcoeff", "--n", "1", "--alpha", "0", "--m", "1", "--k", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["d"] == pytest.approx(2 / math.sqrt(3), rel=1e-12)


def test_cli_output_is_byte_identical(capsys):
    args = ["omega", "--n", "2", "--alpha", "0", "--g", MOD_Z1, "--m", "0,0",
            "--samples", "2000", "--seed", "7"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["omega"]["re"] == pytest.approx(1 / 3, rel=1e-12)


def test_cli_omega_requires_seed_with_samples(capsys):
    rc = main(["omega", "--n", "2", "--g", MOD_Z1, "--m", "0,0", "--samples", "5000"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "seed" in json.loads(err)["error"]


def test_cli_matrix_csv_json_roundtrip(tmp_path, capsys):
    jpath = tmp_path / "m.json"
    cpath = tmp_path / "m.csv"
    base = ["matrix", "--n", "2", "--alpha", "0", "--degree", "3", "--symbol", CROSS]
    assert main(base + ["--format", "json", "--out", str(jpath)]) == 0
    assert main(base + ["--format", "csv", "--out", str(cpath)]) == 0
    blob = json.loads(jpath.read_text())
    size = len(blob["order"])
    dense = np.zeros((size, size), dtype=complex)
    lines = cpath.read_text().strip().splitlines()
    assert lines[0] == "row,col,re,im"
    for line in lines[1:]:
        r, c, re, im = line.split(",")
        dense[int(r), int(c)] = complex(float(re), float(im))
    json_dense = np.array(
        [[complex(re, im) for re, im in row] for row in blob["data"]]
    )
    assert np.array_equal(dense, json_dense)  # lossless round trip
    # and the entries really are the operator's
    S = assemble(SpaceParams(2, 0.0), parse_symbol(CROSS), 3)
    assert np.array_equal(json_dense, S.matrix)


def test_cli_commutator_reports_max_entry(capsys):
    rc = main(
        ["commutator", "--n", "2", "--alpha", "0", "--degree", "6",
         "--f", CROSS, "--g", RADIAL_T2]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["max_valid_entry"] <= 1e-12


def test_cli_theorem2_witness(capsys):
    g = '{"type":"separately_radial","n":2,"s":[1,0],"h":{"kind":"even_poly","coeffs":[1,-1]}}'
    rc = main(["theorem2", "--n", "2", "--alpha", "0", "--degree", "8",
               "--f", CROSS, "--g", g])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["agree"] is True
    assert out["predicate"] is False
    assert out["witness"]["l"] == [1, -1]
    assert out["witness"]["m"] == [0, 1]
    assert abs(complex(out["witness"]["entry"]["re"], out["witness"]["entry"]["im"])) == pytest.approx(0.25, rel=1e-11)


def test_cli_analytic_test_and_extract(capsys):
    poly = '{"type":"monomial_combo","n":2,"terms":[{"a":[2,0],"b":[0,0],"re":1,"im":0},{"a":[0,1],"b":[0,0],"re":3,"im":0}]}'
    assert main(["analytic-test", "--n", "2", "--alpha", "0", "--degree", "6",
                 "--f", poly, "--tol", "1e-10"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "pass"
    assert main(["extract-symbol", "--n", "2", "--alpha", "0", "--degree", "6",
                 "--f", poly]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["verdict"] == "pass"
    coeffs = {tuple(t["a"]): t["re"] for t in rec["symbol"]["terms"]}
    assert coeffs[(2, 0)] == pytest.approx(1.0, rel=1e-10)
    assert coeffs[(0, 1)] == pytest.approx(3.0, rel=1e-10)
    assert rec["roundtrip_max_dev"] <= 1e-10


def test_cli_prop4_report(capsys):
    assert main(["prop4", "--n", "2", "--alpha", "0", "--degree", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["commute_residuals"]["axis_1"] <= 1e-12
    assert out["noncommute_witness"]["magnitude"] == pytest.approx(
        math.sqrt(1.5), abs=1e-12
    )


def test_cli_prop2_and_pset_and_zeroset(capsys):
    assert main(["prop2-classify", "--g", MOD_Z1, "--l", "1,-1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["expect_equal"] is False

    expr = '{"tag":"full","n":2}'
    assert main(["pset", "--expr", expr, "--probe-axis", "0",
                 "--probe-rest", "1", "--probe-cutoff", "30"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "no"
    assert out["divergence_probe"]["partial_sum"] > 3.0

    f = '{"type":"monomial_combo","n":2,"terms":[{"a":[1,0],"b":[0,0],"re":1,"im":0}]}'
    # a leading minus needs the --l=value spelling so argparse keeps it
    assert main(["zeroset", "--n", "2", "--alpha", "0", "--degree", "2",
                 "--f", f, "--l=-1,0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["members"] == []
    assert out["full_prefix"] is False


def test_cli_usage_errors_exit_2(capsys):
    assert main(["matrix", "--n", "2", "--alpha", "0", "--degree", "3",
                 "--symbol", '{"type":"bogus"}']) == 2
    err = json.loads(capsys.readouterr().err)
    assert "type" in err["error"]
    assert main(["dcoeff", "--n", "1", "--alpha", "-2", "--m", "1", "--k", "1"]) == 2


def test_cli_matrix_output_deterministic_file(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    base = ["matrix", "--n", "1", "--alpha", "0.5", "--degree", "4", "--symbol",
            '{"type":"monomial_combo","n":1,"terms":[{"a":[1],"b":[0],"re":0.25,"im":-1}]}']
    assert main(base + ["--out", str(out1)]) == 0
    assert main(base + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_matrix_csv_omits_zeros():
    S = assemble(SpaceParams(1, 0.0), parse_symbol(
        '{"type":"monomial_combo","n":1,"terms":[{"a":[1],"b":[0],"re":1,"im":0}]}'
    ), 3)
    text = matrix_to_csv(S)
    assert len(text.strip().splitlines()) == 1 + 3  # header + subdiagonal entries
    blob = matrix_to_json(S)
    assert blob["degree"] == 3 and len(blob["data"]) == 4
