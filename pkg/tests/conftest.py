import random
from fractions import Fraction

import pytest

from cochainlab.nilgroup import GroupCochain, build_group, slot_vars
from cochainlab.polyalg import MultiPoly

COEFFS = tuple(
    Fraction(c) for c in (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2)
)


def random_poly(rng: random.Random, variables, max_deg=2, terms=3) -> MultiPoly:
    """Small random polynomial with coefficients from a fixed rational pool."""
    acc = MultiPoly.zero()
    for _ in range(terms):
        term = MultiPoly.const(rng.choice(COEFFS))
        for _ in range(rng.randrange(max_deg + 1)):
            term = term * MultiPoly.var(rng.choice(list(variables)))
        acc = acc + term
    return acc


def random_group_cochain(rng, group, p, max_deg=2, rep=None) -> GroupCochain:
    variables = [v for s in range(1, p + 1) for v in slot_vars(s, group.dim)]
    if rep is None:
        if not variables:
            return GroupCochain.scalar(group, 0, MultiPoly.const(rng.choice(COEFFS)))
        return GroupCochain.scalar(group, p, random_poly(rng, variables, max_deg))
    values = tuple(
        random_poly(rng, variables, max_deg)
        if variables
        else MultiPoly.const(rng.choice(COEFFS))
        for _ in range(rep.dim)
    )
    return GroupCochain(group, rep, p, values)


@pytest.fixture(scope="session")
def heisenberg_group():
    return build_group("heisenberg3")


@pytest.fixture(scope="session")
def abelian2_group():
    return build_group("abelian-2")


@pytest.fixture(scope="session")
def filiform_group():
    return build_group("filiform4")
