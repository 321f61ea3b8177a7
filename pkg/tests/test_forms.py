import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cochainlab.forms import (
    Chart,
    PolyForm,
    PolyVF,
    contract,
    cube_integrate,
    eval_at_zero,
    exterior_d,
    homotopy_T,
    lie_derivative,
    pullback,
    wedge,
)
from cochainlab.polyalg import MultiPoly

from conftest import random_poly

CHART = Chart(("y_1", "y_2", "y_3"))


def _random_form(rng, degree, chart=CHART):
    from itertools import combinations

    comps = {}
    for idx in combinations(range(len(chart.coords)), degree):
        comps[idx] = random_poly(rng, chart.coords)
    return PolyForm(chart, degree, comps)


def test_wedge_graded_commutative():
    rng = random.Random(0)
    for pa in range(3):
        for pb in range(3):
            a, b = _random_form(rng, pa), _random_form(rng, pb)
            sign = (-1) ** (pa * pb)
            assert wedge(a, b) == wedge(b, a) * sign


def test_wedge_associative():
    rng = random.Random(1)
    a, b, c = (_random_form(rng, d) for d in (1, 1, 1))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_d_squared_zero():
    rng = random.Random(2)
    for degree in range(3):
        a = _random_form(rng, degree)
        assert exterior_d(exterior_d(a)).is_zero()


def test_d_leibniz():
    rng = random.Random(3)
    for pa in range(2):
        for pb in range(2):
            a, b = _random_form(rng, pa), _random_form(rng, pb)
            lhs = exterior_d(wedge(a, b))
            rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * ((-1) ** pa)
            assert lhs == rhs


def test_cartan_formula():
    rng = random.Random(4)
    x = PolyVF(CHART, tuple(random_poly(rng, CHART.coords) for _ in CHART.coords))
    for degree in range(1, 3):
        a = _random_form(rng, degree)
        lhs = lie_derivative(a, x)
        rhs = contract(exterior_d(a), x) + exterior_d(contract(a, x))
        assert lhs == rhs


def test_pullback_functorial_and_commutes_with_d():
    rng = random.Random(5)
    target = Chart(("t1", "t2"))
    phi = {
        "y_1": MultiPoly.var("t1") * MultiPoly.var("t2"),
        "y_2": MultiPoly.var("t1") + 1,
        "y_3": MultiPoly.var("t2") ** 2,
    }
    for degree in range(2):
        a = _random_form(rng, degree)
        assert pullback(exterior_d(a), phi, target) == exterior_d(
            pullback(a, phi, target)
        )
    a, b = _random_form(rng, 1), _random_form(rng, 1)
    assert pullback(wedge(a, b), phi, target) == wedge(
        pullback(a, phi, target), pullback(b, phi, target)
    )


def test_homotopy_identity():
    # d T + T d = 1 - (evaluation at the origin) on forms
    rng = random.Random(6)
    a0 = _random_form(rng, 0)
    assert homotopy_T(exterior_d(a0)) == a0 - eval_at_zero(a0)
    for degree in range(1, 3):
        a = _random_form(rng, degree)
        lhs = exterior_d(homotopy_T(a)) + homotopy_T(exterior_d(a))
        assert lhs == a - eval_at_zero(a)


def test_homotopy_vanishes_at_origin():
    rng = random.Random(7)
    for degree in range(1, 4):
        t = homotopy_T(_random_form(rng, degree))
        for idx, coef in t.terms.items():
            at0 = coef.subst({v: 0 for v in CHART.coords})
            assert at0.is_zero()


def test_cube_integrate_plain_orientation():
    chart = Chart(("t1", "t2"))
    top = PolyForm(chart, 2, {(0, 1): MultiPoly.const(1)})
    assert cube_integrate(top) == MultiPoly.const(1)
    poly = MultiPoly.var("t1") * MultiPoly.var("t2")
    assert cube_integrate(PolyForm(chart, 2, {(0, 1): poly})) == MultiPoly.const(
        Fraction(1, 4)
    )


def test_antisymmetric_storage():
    chart = Chart(("y_1", "y_2"))
    one = MultiPoly.const(1)
    a = PolyForm(chart, 2, {(1, 0): one})
    b = PolyForm(chart, 2, {(0, 1): -one})
    assert a == b
    assert PolyForm(chart, 2, {(0, 0): one}).is_zero()
