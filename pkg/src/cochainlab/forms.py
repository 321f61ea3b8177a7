"""Differential forms with polynomial coefficients on a coordinate chart.

A ``Chart`` splits variables into coordinates (which carry differentials)
and parameters (treated as constants; they contribute no differentials
under pullback).  Forms are stored antisymmetrically: each term is keyed by
a strictly increasing tuple of coordinate indices.

Includes the de Rham differential, wedge, pullback, contraction with
polynomial vector fields, the linear-scaling homotopy operator, and exact
integration of top-degree forms over the unit cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .polyalg import MultiPoly, canonical_vars

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Chart:
    coords: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        if set(self.coords) & set(self.params):
            raise ValueError("coords and params must be disjoint")

    def coord_index(self, name: str) -> int:
        return self.coords.index(name)


def _sort_index(idx: Sequence[int]):
    """Sort an index tuple, returning (sorted tuple, sign); sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


class PolyForm:
    """Differential form with MultiPoly coefficients on a Chart."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: Mapping[Index, MultiPoly]):
        clean: Dict[Index, MultiPoly] = {}
        for idx, coef in terms.items():
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have degree {degree}")
            sidx, sign = _sort_index(idx)
            if sign == 0 or coef.is_zero():
                continue
            c = coef if sign == 1 else -coef
            if sidx in clean:
                c = clean[sidx] + c
            if c.is_zero():
                clean.pop(sidx, None)
            else:
                clean[sidx] = c
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyForm is immutable")

    @staticmethod
    def zero(chart: Chart, degree: int = 0) -> "PolyForm":
        return PolyForm(chart, degree, {})

    @staticmethod
    def function(chart: Chart, f: MultiPoly) -> "PolyForm":
        return PolyForm(chart, 0, {(): f})

    @staticmethod
    def d_coord(chart: Chart, name: str) -> "PolyForm":
        return PolyForm(chart, 1, {(chart.coord_index(name),): MultiPoly.const(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx: Sequence[int]) -> MultiPoly:
        sidx, sign = _sort_index(idx)
        coef = self.terms.get(sidx)
        if coef is None or sign == 0:
            return MultiPoly.zero()
        return coef if sign == 1 else -coef

    def __add__(self, other: "PolyForm") -> "PolyForm":
        if self.chart != other.chart or self.degree != other.degree:
            raise ValueError("cannot add forms of different chart/degree")
        out = dict(self.terms)
        for idx, coef in other.terms.items():
            out[idx] = out.get(idx, MultiPoly.zero()) + coef
        return PolyForm(self.chart, self.degree, out)

    def __neg__(self) -> "PolyForm":
        return PolyForm(self.chart, self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def __mul__(self, scalar) -> "PolyForm":
        return PolyForm(
            self.chart, self.degree, {i: c * scalar for i, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("PolyForm is unhashable")

    def __repr__(self):
        return f"PolyForm(deg={self.degree}, terms={self.terms})"

    def map_coefficients(self, fn) -> "PolyForm":
        return PolyForm(self.chart, self.degree, {i: fn(c) for i, c in self.terms.items()})


@dataclass(frozen=True)
class PolyVF:
    """Polynomial vector field: one MultiPoly component per chart coordinate."""

    chart: Chart
    components: Tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.components) != len(self.chart.coords):
            raise ValueError("component count must match chart dimension")


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    if a.chart != b.chart:
        raise ValueError("wedge requires a common chart")
    out: Dict[Index, MultiPoly] = {}
    deg = a.degree + b.degree
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            idx, sign = _sort_index(ia + ib)
            if sign == 0:
                continue
            c = ca * cb * sign
            out[idx] = out.get(idx, MultiPoly.zero()) + c
    return PolyForm(a.chart, deg, out)


def exterior_d(a: PolyForm) -> PolyForm:
    out: Dict[Index, MultiPoly] = {}
    for idx, coef in a.terms.items():
        for j, name in enumerate(a.chart.coords):
            dc = coef.diff(name)
            if dc.is_zero():
                continue
            sidx, sign = _sort_index((j,) + idx)
            if sign == 0:
                continue
            c = dc * sign
            out[sidx] = out.get(sidx, MultiPoly.zero()) + c
    return PolyForm(a.chart, a.degree + 1, out)


def contract(a: PolyForm, x: PolyVF) -> PolyForm:
    if a.chart != x.chart:
        raise ValueError("contraction requires a common chart")
    if a.degree == 0:
        return PolyForm.zero(a.chart, 0)
    out: Dict[Index, MultiPoly] = {}
    for idx, coef in a.terms.items():
        for pos, j in enumerate(idx):
            comp = x.components[j]
            if comp.is_zero():
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            c = coef * comp * ((-1) ** pos)
            out[rest] = out.get(rest, MultiPoly.zero()) + c
    return PolyForm(a.chart, a.degree - 1, out)


def pullback(a: PolyForm, phi: Mapping[str, MultiPoly], target: Chart) -> PolyForm:
    """Pull back ``a`` under the map sending each coordinate of a's chart to
    the given polynomial on ``target``.  Parameters of a's chart pass through
    unchanged (they must be params of the target or absent from support)."""
    subst = {name: phi[name] for name in a.chart.coords}
    # differential of each coordinate image, expanded in the target chart
    dphi: Dict[int, PolyForm] = {}
    for j, name in enumerate(a.chart.coords):
        img = phi[name]
        comp: Dict[Index, MultiPoly] = {}
        for tj, tname in enumerate(target.coords):
            dc = img.diff(tname)
            if not dc.is_zero():
                comp[(tj,)] = dc
        dphi[j] = PolyForm(target, 1, comp)
    out = PolyForm.zero(target, a.degree)
    for idx, coef in a.terms.items():
        term = PolyForm.function(target, coef.subst(subst))
        for j in idx:
            term = wedge(term, dphi[j])
        out = out + term
    return out


def lie_derivative(a: PolyForm, x: PolyVF) -> PolyForm:
    """Cartan formula: L_X = i_X d + d i_X."""
    return contract(exterior_d(a), x) + exterior_d(contract(a, x))


def _fresh_t(a: PolyForm) -> str:
    used = set()
    for coef in a.terms.values():
        used.update(coef.vars)
    used.update(a.chart.coords)
    used.update(a.chart.params)
    i = 0
    while f"t{i}" in used:
        i += 1
    return f"t{i}"


def homotopy_T(a: PolyForm) -> PolyForm:
    """Homotopy operator of the linear scaling retraction y -> t*y.

    Pulls back under the scaling, keeps the dt-component, and integrates t
    over [0, 1].  Degree drops by one; satisfies d(Ta) + T(da) = a - a(0),
    T(Ta) = 0, and (Ta)|_0 = 0.
    """
    if a.degree == 0:
        return PolyForm.zero(a.chart, 0)
    t = _fresh_t(a)
    tpoly = MultiPoly.var(t)
    scale = {name: tpoly * MultiPoly.var(name) for name in a.chart.coords}
    q = a.degree
    out: Dict[Index, MultiPoly] = {}
    for idx, coef in a.terms.items():
        scaled = coef.subst(scale)
        for pos, j in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1 :]
            # dt-component of the pullback of dy_{i_pos}: y_{i_pos} dt, with
            # the remaining q-1 differentials each contributing a factor t.
            integrand = scaled * MultiPoly.var(a.chart.coords[j]) * tpoly ** (q - 1)
            c = integrand.defint01(t) * ((-1) ** pos)
            if c.is_zero():
                continue
            out[rest] = out.get(rest, MultiPoly.zero()) + c
    return PolyForm(a.chart, q - 1, out)


def eval_at_zero(a: PolyForm) -> PolyForm:
    """Pull back under the constant map to the chart origin (degree 0 part
    survives as a constant-in-coords function)."""
    if a.degree != 0:
        return PolyForm.zero(a.chart, a.degree)
    zeros = {name: Fraction(0) for name in a.chart.coords}
    return PolyForm(
        a.chart, 0, {(): a.terms.get((), MultiPoly.zero()).subst(zeros)}
    )


def cube_integrate(a: PolyForm) -> MultiPoly:
    """Integrate a top-degree form over the unit cube in its coordinates.

    The coefficient of dt_1 ^ ... ^ dt_p (indices in increasing order) is
    integrated iteratively over [0, 1] in each coordinate.
    """
    p = len(a.chart.coords)
    if a.degree != p:
        raise ValueError(f"expected pure top degree {p}, got {a.degree}")
    if p == 0:
        return a.terms.get((), MultiPoly.zero())
    coef = a.terms.get(tuple(range(p)), MultiPoly.zero())
    for name in a.chart.coords:
        coef = coef.defint01(name)
    return coef
