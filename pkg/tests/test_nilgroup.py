import random
from fractions import Fraction

import pytest

from cochainlab.forms import PolyVF, contract, exterior_d, wedge
from cochainlab.liealg import validate_lie_algebra
from cochainlab.nilgroup import (
    ClassTooHigh,
    GroupCochain,
    bch_multiplication,
    build_group,
    fiber_vars,
    group_delta,
    left_invariant_vf,
    maurer_cartan_coframe,
    registered_groups,
    trivial_poly_rep,
)
from cochainlab.polyalg import MultiPoly
from cochainlab.vanest import standard_poly_rep

from conftest import COEFFS, random_group_cochain


@pytest.mark.parametrize("name", registered_groups())
def test_group_axioms_as_polynomial_identities(name):
    group = build_group(name)
    n = group.dim
    x = [MultiPoly.var(f"g1_{j}") for j in range(1, n + 1)]
    zero = [MultiPoly.zero()] * n
    assert group.multiply(x, zero) == x
    assert group.multiply(zero, x) == x
    assert all(c.is_zero() for c in group.multiply(x, group.invert(x)))
    y = [MultiPoly.var(f"g2_{j}") for j in range(1, n + 1)]
    z = [MultiPoly.var(f"g3_{j}") for j in range(1, n + 1)]
    assert group.multiply(group.multiply(x, y), z) == group.multiply(
        x, group.multiply(y, z)
    )


def test_heisenberg_closed_form(heisenberg_group):
    # (x1,x2,x3)(y1,y2,y3) = (x1+y1, x2+y2, x3+y3+ (x1 y2 - x2 y1)/2)
    g = heisenberg_group
    x = [MultiPoly.var(f"g1_{j}") for j in (1, 2, 3)]
    y = [MultiPoly.var(f"g2_{j}") for j in (1, 2, 3)]
    prod = g.multiply(x, y)
    assert prod[0] == x[0] + y[0]
    assert prod[1] == x[1] + y[1]
    assert prod[2] == x[2] + y[2] + (x[0] * y[1] - x[1] * y[0]) * Fraction(1, 2)


def test_class_five_rejected():
    brackets = {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}, (0, 4): {5: 1}}
    alg = validate_lie_algebra("filiform6", 6, brackets)
    assert alg.nilpotency_class == 5
    with pytest.raises(ClassTooHigh):
        bch_multiplication(alg)


@pytest.mark.parametrize("name", ["abelian-2", "heisenberg3", "filiform4"])
def test_representation_is_homomorphism_at_points(name):
    group = build_group(name)
    rep = standard_poly_rep(group)
    rng = random.Random(21)
    n = group.dim
    for _ in range(10):
        a = [rng.choice(COEFFS) for _ in range(n)]
        b = [rng.choice(COEFFS) for _ in range(n)]
        ab = [c.eval_at(dict(zip(fiber_vars(n), a))) for c in group.multiply(
            [MultiPoly.const(c) for c in a], [MultiPoly.const(c) for c in b]
        )]
        left = rep.matrix_at(ab)
        ra, rb = rep.matrix_at(a), rep.matrix_at(b)
        prod = [
            [sum(ra[i][k] * rb[k][j] for k in range(rep.dim)) for j in range(rep.dim)]
            for i in range(rep.dim)
        ]
        assert left == prod


@pytest.mark.parametrize("name", registered_groups())
def test_group_delta_squares_to_zero(name):
    group = build_group(name)
    rng = random.Random(22)
    for p in range(3):
        f = random_group_cochain(rng, group, p)
        assert group_delta(group_delta(f)).is_zero()


def test_group_delta_squares_to_zero_nontrivial_rep(heisenberg_group):
    rep = standard_poly_rep(heisenberg_group)
    rng = random.Random(23)
    for p in range(3):
        f = random_group_cochain(rng, heisenberg_group, p, rep=rep)
        assert group_delta(group_delta(f)).is_zero()


def test_delta_on_functions():
    # (delta f)(g1, g2) = f(g2) - f(g1 g2) + f(g1)
    group = build_group("heisenberg3")
    poly = MultiPoly.var("g1_3")
    f = GroupCochain.scalar(group, 1, poly)
    df = group_delta(f)
    g1 = [MultiPoly.var(f"g1_{j}") for j in (1, 2, 3)]
    g2 = [MultiPoly.var(f"g2_{j}") for j in (1, 2, 3)]
    prod = group.multiply(g1, g2)
    expected = MultiPoly.var("g2_3") - prod[2] + MultiPoly.var("g1_3")
    assert df.values[0] == expected


@pytest.mark.parametrize("name", ["heisenberg3", "filiform4"])
def test_coframe_dual_to_frame(name):
    group = build_group(name)
    thetas = maurer_cartan_coframe(group)
    for i in range(group.dim):
        xi = left_invariant_vf(group, i)
        for k, theta in enumerate(thetas):
            pairing = contract(theta, xi).coefficient(())
            assert pairing == MultiPoly.const(1 if i == k else 0)


@pytest.mark.parametrize("name", ["abelian-3", "heisenberg3", "filiform4"])
def test_maurer_cartan_equation(name):
    # d theta^k = -1/2 c^k_{ij} theta^i ^ theta^j
    group = build_group(name)
    alg = group.algebra
    thetas = maurer_cartan_coframe(group)
    for k in range(group.dim):
        rhs = exterior_d(thetas[k])
        acc = rhs - rhs  # zero of matching degree
        for i in range(group.dim):
            for j in range(group.dim):
                c = alg.bracket_basis(i, j)[k]
                if c != 0:
                    acc = acc + wedge(thetas[i], thetas[j]) * (Fraction(-1, 2) * c)
        assert rhs == acc


@pytest.mark.parametrize("name", ["heisenberg3", "filiform4"])
def test_frame_bracket_matches_structure_constants(name):
    # [X_i, X_j] = c_{ij}^k X_k as vector fields
    group = build_group(name)
    alg = group.algebra
    n = group.dim
    fields = [left_invariant_vf(group, i) for i in range(n)]

    def vf_bracket(x, y):
        comps = []
        for m in range(n):
            acc = MultiPoly.zero()
            for l, v in enumerate(fiber_vars(n)):
                acc = acc + x.components[l] * y.components[m].diff(v)
                acc = acc - y.components[l] * x.components[m].diff(v)
            comps.append(acc)
        return comps

    for i in range(n):
        for j in range(n):
            lie = vf_bracket(fields[i], fields[j])
            expected = [MultiPoly.zero()] * n
            for k, c in enumerate(alg.bracket_basis(i, j)):
                if c != 0:
                    expected = [
                        e + comp * c
                        for e, comp in zip(expected, fields[k].components)
                    ]
            assert lie == expected


def test_rep_inverse_is_negation(heisenberg_group):
    rep = standard_poly_rep(heisenberg_group)
    n = heisenberg_group.dim
    y = [MultiPoly.var(v) for v in fiber_vars(n)]
    inv = heisenberg_group.invert(y)
    sub = {v: inv[j] for j, v in enumerate(fiber_vars(n))}
    rho_inv = [[e.subst(sub) for e in row] for row in rep.rho]
    prod = [
        [
            sum((rep.rho[i][k] * rho_inv[k][j] for k in range(rep.dim)), MultiPoly.zero())
            for j in range(rep.dim)
        ]
        for i in range(rep.dim)
    ]
    for i in range(rep.dim):
        for j in range(rep.dim):
            assert prod[i][j] == MultiPoly.const(1 if i == j else 0)
