import random
from fractions import Fraction

import pytest

from cochainlab.liealg import CEElement, ce_diff
from cochainlab.nilgroup import GroupCochain, build_group, group_delta, slot_vars
from cochainlab.polyalg import MultiPoly
from cochainlab.vanest import (
    BigradedElement,
    bg_d,
    bg_delta,
    bg_h,
    bg_k,
    bg_p_proj,
    build_double_complex,
    frame_convert,
    gamma_map,
    lie_bigraded,
    nabla,
    nabla_bigraded,
    r_closed,
    r_zigzag,
    standard_poly_rep,
    ve_closed,
    ve_zigzag,
)
from cochainlab.perturb import verify_instance

from conftest import COEFFS, random_group_cochain, random_poly


def test_nabla_interior_slot():
    # abelian line, f(g1, g2) = g1 g2:
    # nabla^{(1)} moves (g1, g2) to (g1 + t, g2 - t), derivative g2 - g1
    group = build_group("abelian-1")
    f = GroupCochain.scalar(group, 2, MultiPoly.var("g1_1") * MultiPoly.var("g2_1"))
    d1 = nabla(1, 0, f)
    assert d1.values[0] == MultiPoly.var("g2_1") - MultiPoly.var("g1_1")
    # nabla^{(2)} moves g2 to g2 + t, derivative g1
    d2 = nabla(2, 0, f)
    assert d2.values[0] == MultiPoly.var("g1_1")


def test_ve_identity_cochain():
    # VE(g -> g) is the dual basis covector
    group = build_group("abelian-1")
    f = GroupCochain.scalar(group, 1, MultiPoly.var("g1_1"))
    alpha = ve_closed(f)
    assert alpha.component((0,)) == (Fraction(1),)


def test_ve_determinant_cochain():
    group = build_group("abelian-2")
    poly = (
        MultiPoly.var("g1_1") * MultiPoly.var("g2_2")
        - MultiPoly.var("g1_2") * MultiPoly.var("g2_1")
    ) * Fraction(1, 2)
    alpha = ve_closed(GroupCochain.scalar(group, 2, poly))
    assert alpha.component((0, 1)) == (Fraction(1),)
    assert len(alpha.comps) == 1


def test_gamma_map_endpoints():
    group = build_group("heisenberg3")
    gamma = gamma_map(group, 2)
    ones = {f"t{i}": 1 for i in (1, 2)}
    at_one = [c.subst(ones) for c in gamma.components]
    g1 = [MultiPoly.var(f"g1_{j}") for j in (1, 2, 3)]
    g2 = [MultiPoly.var(f"g2_{j}") for j in (1, 2, 3)]
    assert at_one == group.multiply(g1, g2)
    at_zero = [c.subst({"t1": 0}) for c in gamma.components]
    assert all(c.is_zero() for c in at_zero)


def test_r_of_dual_basis():
    # R(e^1 ^ e^2) on the abelian plane is half the determinant
    group = build_group("abelian-2")
    alpha = CEElement.basis(group.algebra, (0, 1))
    f = r_closed(group, alpha)
    expected = (
        MultiPoly.var("g1_1") * MultiPoly.var("g2_2")
        - MultiPoly.var("g1_2") * MultiPoly.var("g2_1")
    ) * Fraction(1, 2)
    assert f.values[0] == expected


@pytest.mark.parametrize("name", ["abelian-2", "heisenberg3"])
def test_ve_r_identity_small(name):
    group = build_group(name)
    from itertools import combinations

    for p in range(3):
        for idx in combinations(range(group.dim), p):
            alpha = CEElement.basis(group.algebra, idx)
            assert ve_closed(r_closed(group, alpha)) == alpha


def test_closed_equals_zigzag_small(heisenberg_group):
    rng = random.Random(31)
    inst = build_double_complex(heisenberg_group, max_p=2)
    for _ in range(6):
        p = 1 + rng.randrange(2)
        f = random_group_cochain(rng, heisenberg_group, p)
        assert ve_closed(f) == ve_zigzag(f, inst)


def test_r_closed_equals_zigzag_nontrivial_rep():
    group = build_group("abelian-1")
    rep = standard_poly_rep(group)
    inst = build_double_complex(group, rep, max_p=2)
    for p in range(1, 3):
        from itertools import combinations

        for idx in combinations(range(group.dim), p):
            for slot in range(rep.dim):
                alpha = CEElement.basis(
                    group.algebra, idx, rep=rep.infinitesimal(), slot=slot
                )
                assert r_closed(group, alpha, rep) == r_zigzag(group, alpha, rep, inst)


def test_cochain_map_properties(heisenberg_group):
    rng = random.Random(32)
    group = heisenberg_group
    for _ in range(5):
        p = 1 + rng.randrange(2)
        f = random_group_cochain(rng, group, p)
        assert ve_closed(group_delta(f)) == ce_diff(ve_closed(f))
    from itertools import combinations

    for q in range(1, 3):
        for idx in combinations(range(group.dim), q):
            alpha = CEElement.basis(group.algebra, idx)
            assert r_closed(group, ce_diff(alpha)) == group_delta(r_closed(group, alpha))


def test_frame_convert_roundtrip(heisenberg_group):
    rng = random.Random(33)
    rep = standard_poly_rep(heisenberg_group)
    inst = build_double_complex(heisenberg_group, rep, max_p=2)
    for p in range(3):
        for q in range(3):
            psi = inst.sample(rng, p, q)
            back = frame_convert(frame_convert(psi, "to_form"), "to_components")
            assert (back - psi).is_zero()


def test_double_complex_identities_trivial_rep(heisenberg_group):
    inst = build_double_complex(heisenberg_group, max_p=2, max_q=2)
    reports = verify_instance(inst, seed=2, trials=2)
    assert [r for r in reports if r["status"] == "fail"] == []


def test_double_complex_identities_nontrivial_rep(heisenberg_group):
    rep = standard_poly_rep(heisenberg_group)
    inst = build_double_complex(heisenberg_group, rep, max_p=2, max_q=2)
    reports = verify_instance(inst, seed=2, trials=1)
    assert [r for r in reports if r["status"] == "fail"] == []


def _random_bigraded(rng, group, rep, p, q, max_deg=2):
    from itertools import combinations

    from cochainlab.nilgroup import fiber_vars

    variables = list(fiber_vars(group.dim))
    for s in range(1, p + 1):
        variables.extend(slot_vars(s, group.dim))
    comps = {
        idx: tuple(random_poly(rng, variables, max_deg) for _ in range(rep.dim))
        for idx in combinations(range(group.dim), q)
    }
    return BigradedElement(group, rep, p, q, comps)


def test_h_intertwines_interior_nabla(heisenberg_group):
    rng = random.Random(34)
    group = heisenberg_group
    rep = standard_poly_rep(group)
    for _ in range(4):
        p, q = 2, rng.randrange(3)
        psi = _random_bigraded(rng, group, rep, p, q)
        xi = [rng.choice(COEFFS) for _ in range(group.dim)]
        assert bg_h(nabla_bigraded(1, xi, psi)) == nabla_bigraded(1, xi, bg_h(psi))


def test_lie_derivative_exchange(heisenberg_group):
    # L_xi h = h (nabla^{(p)} + L_xi)
    rng = random.Random(35)
    group = heisenberg_group
    rep = standard_poly_rep(group)
    for _ in range(4):
        p, q = 1 + rng.randrange(2), rng.randrange(3)
        psi = _random_bigraded(rng, group, rep, p, q)
        xi = [rng.choice(COEFFS) for _ in range(group.dim)]
        lhs = lie_bigraded(xi, bg_h(psi))
        rhs = bg_h(nabla_bigraded(p, xi, psi) + lie_bigraded(xi, psi))
        assert lhs == rhs


def test_normalized_h_side_conditions(heisenberg_group):
    # on cochains vanishing at unit insertions: h h = 0 and p-hat h = 0
    rng = random.Random(36)
    group = heisenberg_group
    rep = standard_poly_rep(group)
    n = group.dim
    for _ in range(4):
        q = rng.randrange(2)
        psi2 = _random_bigraded(rng, group, rep, 2, q)
        norm = MultiPoly.var(f"g1_{1 + rng.randrange(n)}") * MultiPoly.var(
            f"g2_{1 + rng.randrange(n)}"
        )
        psi2 = psi2.map_comps(lambda c: c * norm)
        assert bg_h(bg_h(psi2)).is_zero()

        psi1 = _random_bigraded(rng, group, rep, 1, q)
        psi1 = psi1.map_comps(
            lambda c: c * MultiPoly.var(f"g1_{1 + rng.randrange(n)}")
        )
        assert bg_p_proj(bg_h(psi1)).is_zero()
