"""The pair groupoid of coordinate space with the flat connection.

Cochains of the Alexander-Spanier complex are polynomials in p + 1 points
m0, ..., mp of R^n (variables m<i>_<j>).  Differentiation lands in
polynomial-coefficient forms on R^n (variables x_<j>): on decomposables
f_0 (x) ... (x) f_p it is f_0 df_1 ^ ... ^ df_p; in general it is the
antisymmetrized mixed-derivative formula at the diagonal, which extends it
linearly.  Integration pulls a p-form back along the iterated straight-line
geodesic map and integrates exactly over the unit cube.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Sequence, Tuple

from .forms import Chart, PolyForm, exterior_d, wedge
from .polyalg import MultiPoly, to_string

Index = Tuple[int, ...]


def point_vars(slot: int, n: int) -> Tuple[str, ...]:
    return tuple(f"m{slot}_{j}" for j in range(1, n + 1))


def base_chart(n: int) -> Chart:
    return Chart(tuple(f"x_{j}" for j in range(1, n + 1)))


class ASCochain:
    """Alexander-Spanier p-cochain: a polynomial in the p + 1 points
    m0, ..., mp of R^n."""

    __slots__ = ("n", "degree", "value")

    def __init__(self, n: int, degree: int, value: MultiPoly):
        allowed = set()
        for s in range(degree + 1):
            allowed.update(point_vars(s, n))
        extra = set(value.support()) - allowed
        if extra:
            raise ValueError(f"cochain uses variables outside its points: {extra}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ASCochain is immutable")

    @staticmethod
    def decomposable(n: int, factors: Sequence[MultiPoly]) -> "ASCochain":
        """f_0 (x) ... (x) f_p from polynomials in x_1..x_n: factor s is
        re-read at the point m_s."""
        acc = MultiPoly.const(1)
        for s, f in enumerate(factors):
            sub = {f"x_{j}": MultiPoly.var(f"m{s}_{j}") for j in range(1, n + 1)}
            acc = acc * f.subst(sub)
        return ASCochain(n, len(factors) - 1, acc)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __add__(self, other: "ASCochain") -> "ASCochain":
        return ASCochain(self.n, self.degree, self.value + other.value)

    def __neg__(self) -> "ASCochain":
        return ASCochain(self.n, self.degree, -self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "ASCochain":
        return ASCochain(self.n, self.degree, self.value * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ASCochain):
            return NotImplemented
        return self.degree == other.degree and self.value == other.value

    def __hash__(self):
        raise TypeError("ASCochain is unhashable")

    def __repr__(self):
        return f"ASCochain(n={self.n}, p={self.degree}, {to_string(self.value)})"


def as_delta(f: ASCochain) -> ASCochain:
    """Alexander-Spanier differential: alternating sum of point omissions,
    (delta f)(m_0..m_{p+1}) = sum_i (-1)^i f(.., m_i omitted, ..)."""
    n, p = f.n, f.degree
    acc = MultiPoly.zero()
    for i in range(p + 2):
        # omit point i: old point s >= i reads the new point s + 1
        sub = {}
        for s in range(i, p + 1):
            for j in range(1, n + 1):
                sub[f"m{s}_{j}"] = MultiPoly.var(f"m{s+1}_{j}")
        acc = acc + f.value.subst(sub) * ((-1) ** i)
    return ASCochain(n, p + 1, acc)


def pair_ve(f: ASCochain) -> PolyForm:
    """Differentiation: sum over coordinate tuples (j_1..j_p) of
    (d/dm1_{j_1}) ... (d/dmp_{j_p}) f at the diagonal, wedged into
    dx_{j_1} ^ ... ^ dx_{j_p}.  On decomposables this is
    f_0 df_1 ^ ... ^ df_p."""
    n, p = f.n, f.degree
    chart = base_chart(n)
    diag = {
        f"m{s}_{j}": MultiPoly.var(f"x_{j}")
        for s in range(p + 1)
        for j in range(1, n + 1)
    }
    acc = PolyForm.zero(chart, p)
    for js in product(range(1, n + 1), repeat=p):
        idx = tuple(j - 1 for j in js)
        if len(set(idx)) != p:
            continue
        g = f.value
        for s, j in enumerate(js, start=1):
            g = g.diff(f"m{s}_{j}")
            if g.is_zero():
                break
        if g.is_zero():
            continue
        coef = g.subst(diag)
        if coef.is_zero():
            continue
        acc = acc + PolyForm(chart, p, {idx: coef})
    return acc


def geodesic_map(n: int, p: int) -> Tuple[MultiPoly, ...]:
    """Iterated straight-line geodesic rho^{(p)}_{t_1..t_p}(m_0..m_p),
    defined by rho_t(a, b) = (1-t) a + t b and the recursion
    rho^{(p)} = rho_{t_1}(m_0, rho^{(p-1)}(m_1..m_p))."""
    cur = [MultiPoly.var(f"m{p}_{j}") for j in range(1, n + 1)]
    for s in range(p - 1, -1, -1):
        t = MultiPoly.var(f"t{s+1}")
        one_minus = MultiPoly.const(1) - t
        ms = [MultiPoly.var(f"m{s}_{j}") for j in range(1, n + 1)]
        cur = [one_minus * a + t * b for a, b in zip(ms, cur)]
    return tuple(cur)


def pair_r(n: int, alpha: PolyForm) -> ASCochain:
    """Integration: R(alpha)(m_0..m_p) = integral over the unit cube of the
    pullback of alpha along the iterated geodesic map."""
    p = alpha.degree
    if len(alpha.chart.coords) != n:
        raise ValueError("form chart dimension mismatch")
    if p == 0:
        diag = {f"x_{j}": MultiPoly.var(f"m0_{j}") for j in range(1, n + 1)}
        return ASCochain(n, 0, alpha.coefficient(()).subst(diag))
    geo = geodesic_map(n, p)
    cube = Chart(
        tuple(f"t{s}" for s in range(1, p + 1)),
        tuple(f"m{s}_{j}" for s in range(p + 1) for j in range(1, n + 1)),
    )
    phi = {f"x_{j}": geo[j - 1] for j in range(1, n + 1)}
    from .forms import pullback

    pulled = pullback(alpha, phi, cube)
    integrand = pulled.coefficient(tuple(range(p)))
    for s in range(1, p + 1):
        integrand = integrand.defint01(f"t{s}")
    return ASCochain(n, p, integrand)
