import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cochainlab.cli import (
    ParseError,
    RunConfig,
    UnknownVariable,
    apply_map,
    ce_to_string,
    instance_names,
    main,
    parse_expr,
    run_verify,
)
from cochainlab.forms import PolyForm
from cochainlab.liealg import CEElement, abelian, heisenberg3
from cochainlab.polyalg import MultiPoly, to_string

from conftest import COEFFS


def test_parse_polynomial():
    p = parse_expr("g1_1*g2_2 - g1_2*g2_1")
    expected = (
        MultiPoly.var("g1_1") * MultiPoly.var("g2_2")
        - MultiPoly.var("g1_2") * MultiPoly.var("g2_1")
    )
    assert p == expected


def test_parse_rational():
    assert parse_expr("1/2") == MultiPoly.const(Fraction(1, 2))


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_expr("g1_1 ^")
    assert err.value.col == 7
    with pytest.raises(ParseError) as err:
        parse_expr("g1_1 +\n* 2")
    assert err.value.line == 2


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_expr("foo + 1")


def test_parse_powers_and_parens():
    p = parse_expr("(g1_1 + 1)^2 - g1_1^2 - 2*g1_1 - 1")
    assert p.is_zero()


def test_parse_ce_element():
    alg = heisenberg3()
    a = parse_expr(r"e1/\e2 - 1/2*e2/\e3", algebra=alg)
    assert isinstance(a, CEElement)
    assert a.component((0, 1)) == (Fraction(1),)
    assert a.component((1, 2)) == (Fraction(-1, 2),)
    # antisymmetry of the wedge
    b = parse_expr(r"e2/\e1", algebra=alg)
    assert b.component((0, 1)) == (Fraction(-1),)
    assert parse_expr(r"e1/\e1", algebra=alg).is_zero()


def test_parse_form():
    f = parse_expr(r"y_1*dy_2/\dy_1")
    assert isinstance(f, PolyForm)
    assert f.coefficient((0, 1)) == -MultiPoly.var("y_1")


def test_ce_serializer_roundtrip():
    alg = heisenberg3()
    rng = random.Random(51)
    from itertools import combinations

    for degree in range(1, 4):
        comps = {
            idx: [rng.choice(COEFFS)] for idx in combinations(range(3), degree)
        }
        a = CEElement(alg, None, degree, comps)
        if a.is_zero():
            continue
        assert parse_expr(ce_to_string(a), algebra=alg) == a


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["g1_1", "g1_2", "g2_1", "y_1", "t1"]), max_size=4),
       st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_poly_serializer_roundtrip(names, coeff):
    p = MultiPoly.const(coeff)
    for v in names:
        p = p * MultiPoly.var(v)
    p = p + MultiPoly.var("g1_1")
    assert parse_expr(to_string(p)) == p


def test_apply_ve_example():
    cfg = RunConfig("abelian-2")
    assert apply_map(cfg, "ve", "1/2*(g1_1*g2_2 - g1_2*g2_1)") == r"e1/\e2"


def test_apply_integrate_example():
    cfg = RunConfig("abelian-2")
    out = apply_map(cfg, "integrate", r"e1/\e2")
    assert parse_expr(out) == (
        MultiPoly.var("g1_1") * MultiPoly.var("g2_2")
        - MultiPoly.var("g1_2") * MultiPoly.var("g2_1")
    ) * Fraction(1, 2)


def test_ve_integrate_roundtrip():
    cfg = RunConfig("heisenberg3")
    for text in (r"e1/\e2", r"e3", r"e1/\e3 - 2*e2/\e3", r"e1/\e2/\e3"):
        out = apply_map(cfg, "integrate", text)
        assert apply_map(cfg, "ve", out) == ce_to_string(
            parse_expr(text, algebra=heisenberg3())
        )


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("not-an-instance")
    with pytest.raises(ValueError):
        RunConfig("matrix", trials=0)


def test_instance_registry():
    names = instance_names()
    assert "matrix" in names and "cech-circle3" in names
    assert "heisenberg3" in names and "pair-r2" in names


def test_verify_exit_codes_and_report(tmp_path):
    report_path = tmp_path / "report.json"
    code = main([
        "verify", "--instance", "matrix", "--trials", "3",
        "--report", str(report_path),
    ])
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["schema_version"] == 1
    assert report["summary"]["unexpected_failures"] == 0
    assert report["checks"]


def test_verify_cech_expected_failures(tmp_path):
    report_path = tmp_path / "report.json"
    code = main([
        "verify", "--instance", "cech-circle3", "--trials", "3",
        "--report", str(report_path),
    ])
    assert code == 0
    report = json.loads(report_path.read_text())
    expected = [c for c in report["checks"] if c["status"] == "expected-fail"]
    assert expected
    assert all("counterexample" in c for c in expected)
    assert {c["check"] for c in expected} == {"side_hk", "side_pk"}


def test_reports_deterministic():
    cfg = RunConfig("matrix", trials=3, seed=11)
    assert run_verify(cfg) == run_verify(cfg)


def test_usage_errors():
    assert main(["verify", "--instance", "nope"]) == 2
    assert main(["ve", "/nonexistent/input", "--instance", "abelian-2"]) == 2


def test_map_via_files(tmp_path):
    src = tmp_path / "in.txt"
    dst = tmp_path / "out.txt"
    src.write_text("g1_1*g2_2 - g1_2*g2_1")
    code = main([
        "ve", str(src), "--instance", "abelian-2", "--report", str(dst),
    ])
    assert code == 0
    assert dst.read_text().strip() == r"2*e1/\e2"


def test_list_instances(capsys):
    assert main(["list-instances"]) == 0
    out = capsys.readouterr().out
    assert "heisenberg3" in out and "cech-circle3" in out
