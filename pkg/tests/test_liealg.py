import random
from fractions import Fraction

import pytest

from cochainlab.liealg import (
    CEElement,
    JacobiViolation,
    LieAlgebra,
    Representation,
    abelian,
    ce_contract,
    ce_diff,
    ce_lie_derivative,
    filiform4,
    heisenberg3,
    trivial_rep,
    validate_lie_algebra,
)

from conftest import COEFFS

ALGEBRAS = [abelian(2), abelian(3), heisenberg3(), filiform4()]


def _random_ce(rng, alg, degree, rep=None):
    from itertools import combinations

    rep = rep if rep is not None else trivial_rep(alg)
    comps = {
        idx: [rng.choice(COEFFS) for _ in range(rep.dim)]
        for idx in combinations(range(alg.dim), degree)
    }
    return CEElement(alg, rep, degree, comps)


def test_registry_structure_constants():
    h = heisenberg3()
    assert h.bracket_basis(0, 1)[2] == Fraction(1)
    assert h.bracket_basis(1, 0)[2] == Fraction(-1)
    f = filiform4()
    assert f.bracket_basis(0, 1)[2] == Fraction(1)
    assert f.bracket_basis(0, 2)[3] == Fraction(1)
    assert all(c == 0 for c in abelian(3).bracket_basis(0, 1))


def test_jacobi_violation_rejected():
    # [e1,e2]=e3, [e1,e3]=e1 fails the Jacobi identity
    bad = {(0, 1): {2: Fraction(1)}, (0, 2): {0: Fraction(1)}}
    with pytest.raises(JacobiViolation):
        validate_lie_algebra("bad", 3, bad)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_ce_diff_squares_to_zero(alg):
    rng = random.Random(11)
    for degree in range(alg.dim):
        a = _random_ce(rng, alg, degree)
        assert ce_diff(ce_diff(a)).is_zero()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.name)
def test_cartan_formula_ce(alg):
    rng = random.Random(12)
    xi = [rng.choice(COEFFS) for _ in range(alg.dim)]
    for degree in range(1, alg.dim):
        a = _random_ce(rng, alg, degree)
        lhs = ce_lie_derivative(a, xi)
        rhs = ce_contract(ce_diff(a), xi) + ce_diff(ce_contract(a, xi))
        assert (lhs - rhs).is_zero()


def test_contract_basis():
    alg = heisenberg3()
    a = CEElement.basis(alg, (0, 2))
    xi = [Fraction(0), Fraction(0), Fraction(1)]
    contracted = ce_contract(a, xi)
    # iota_{e3} (e^1 ^ e^3) = -e^1
    assert contracted.component((0,)) == (Fraction(-1),)


def test_ce_diff_dual_to_bracket():
    # d e^k (e_i, e_j) = -c^k_{ij}
    alg = heisenberg3()
    d3 = ce_diff(CEElement.basis(alg, (2,)))
    assert d3.component((0, 1)) == (Fraction(-1),)
    assert ce_diff(CEElement.basis(alg, (0,))).is_zero()


def test_nontrivial_rep_ce_diff_squares():
    alg = abelian(1)
    # 2-dim rep of the abelian line: x acts by [[0, x], [0, 0]]
    mats = ((( Fraction(0), Fraction(1)), (Fraction(0), Fraction(0))),)
    rep = Representation(alg, 2, mats)
    rng = random.Random(13)
    for degree in range(2):
        a = _random_ce(rng, alg, degree, rep)
        assert ce_diff(ce_diff(a)).is_zero()
