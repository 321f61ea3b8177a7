import random
from collections import Counter
from fractions import Fraction

import pytest

from cochainlab.cech_derham import (
    CechError,
    CechForm,
    ConstCochain,
    GlobalForm,
    NotCocycle,
    PwPoly,
    cech_d,
    cech_delta,
    cech_i_inc,
    cech_instance,
    cech_p_proj,
    circle_integrate,
    collate,
    const_delta,
    default_cover,
    global_d,
    good_cover_k,
    pou_h,
    winding_cocycle,
)
from cochainlab.perturb import verify_instance, zigzag_xy, zigzag_yx
from cochainlab.polyalg import MultiPoly

FULL = ((Fraction(0), Fraction(1)),)


def test_partition_of_unity_sums_to_one():
    cover = default_cover()
    total = PwPoly.zero(FULL)
    for chi in cover.pou:
        total = total + chi
    assert total == PwPoly.on(FULL, MultiPoly.const(1))


def test_pou_supported_in_arcs():
    cover = default_cover()
    for i, chi in enumerate(cover.pou):
        arcs = cover.intervals(i)
        for lo, hi, poly in chi.segments:
            if poly.is_zero():
                continue
            assert any(a <= lo and hi <= b for a, b in arcs)


def test_pou_continuous():
    cover = default_cover()
    for chi in cover.pou:
        assert chi.is_continuous()


def test_winding_collates_to_integral_one():
    c = winding_cocycle()
    g = collate(c)
    assert g.q == 1
    assert circle_integrate(g) == Fraction(1)


def test_collate_rejects_non_cocycles():
    cover = default_cover()
    # a 0-cochain with mismatched constants has nonzero delta
    c = ConstCochain(cover, 0, {(0,): Fraction(1), (1,): Fraction(0), (2,): Fraction(0)})
    assert not const_delta(c).is_zero()
    with pytest.raises(NotCocycle):
        collate(c)


def test_collated_coboundary_integrates_to_zero():
    cover = default_cover()
    c0 = ConstCochain(cover, 0, {(0,): Fraction(2), (1,): Fraction(-1), (2,): Fraction(3)})
    c = const_delta(c0)
    g = collate(c)
    assert circle_integrate(g) == Fraction(0)


def test_instance_identities_and_expected_side_failures():
    inst = cech_instance()
    reports = verify_instance(inst, seed=3, trials=4)
    by_check = Counter((r["check"], r["status"]) for r in reports)
    fails = [r for r in reports if r["status"] == "fail"]
    assert {r["check"] for r in fails} <= {"side_hk", "side_pk"}
    # the side conditions must genuinely fail, each with a stored witness
    assert any(r["check"] == "side_hk" for r in fails)
    assert any(r["check"] == "side_pk" for r in fails)
    assert all("counterexample" in r for r in fails)
    # and every structural identity must pass everywhere
    for check in ("d_squared", "delta_squared", "anticommute",
                  "h_delta_contraction", "perturbed_contraction",
                  "k_d_contraction", "p_i_identity"):
        assert by_check[(check, "pass")] > 0
        assert by_check[(check, "fail")] == 0


def test_back_and_forth_not_identity():
    # without the side conditions the X -> Y -> X composite differs from the
    # identity; the difference is exact (zero circle integral)
    inst = cech_instance()
    g = GlobalForm(1, PwPoly.on(FULL, MultiPoly.const(1)))
    c = zigzag_yx(inst, 1, g)
    back = zigzag_xy(inst, 1, c)
    diff = back - g
    assert not diff.fn.is_zero()
    assert circle_integrate(GlobalForm(1, diff.fn)) == Fraction(0)


def test_primitive_in_homotopy():
    # k d f = f - f(basepoint) for a smooth function on one arc
    cover = default_cover()
    x = MultiPoly.var("x")
    f = CechForm(cover, 0, 0, {(1,): PwPoly.on(cover.intervals(1), x * x)})
    kd = good_cover_k(cech_d(f))
    base = cover.intersection_basepoint((1,))
    expected_poly = x * x - MultiPoly.const(base * base)
    assert kd.comps[(1,)] == PwPoly.on(cover.intervals(1), expected_poly)


def test_restriction_glue_roundtrip():
    cover = default_cover()
    poly = MultiPoly.var("x") * 2 + 1
    g = GlobalForm(0, PwPoly.on(FULL, poly))
    back = cech_p_proj(cech_i_inc(cover, g))
    assert back.fn == g.fn


def test_delta_squared_on_random():
    inst = cech_instance()
    rng = random.Random(9)
    for p in range(2):
        w = inst.sample(rng, p, 0)
        assert cech_delta(cech_delta(w)).is_zero()


def test_pwpoly_arithmetic():
    dom = ((Fraction(0), Fraction(1, 2)),)
    x = MultiPoly.var("x")
    a = PwPoly.on(dom, x)
    b = PwPoly.on(dom, x * x)
    assert (a + b) - b == a
    assert a.diff() == PwPoly.on(dom, MultiPoly.const(1))
    assert a.eval(Fraction(1, 4)) == Fraction(1, 4)


def test_bad_arc_rejected():
    from cochainlab.cech_derham import arc_intervals

    with pytest.raises(CechError):
        arc_intervals(Fraction(1, 2), Fraction(1, 4))
