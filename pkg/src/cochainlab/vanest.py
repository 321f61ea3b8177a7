"""The bigraded complex D^{p,q}(G, V) of a polynomial nilpotent group and
its structural operators.

An element of bidegree (p, q) is a V-valued function of p group slots
(variables g1_*..gp_*) and one base point (variables y_*), expanded over
the dual basis of Lambda^q g* (the "component picture").  The equivalent
"form picture" regards it as a V-valued fiberwise differential form
beta = rho(y) * sum_I psi_I theta^I built from the left-invariant coframe;
``frame_convert`` mediates and the round trip is the identity.

Operators:
  delta  horizontal simplicial differential (pure substitution; the
         representation twist lives in the augmentation j-hat)
  d      (-1)^p times the Chevalley-Eilenberg differential for the action
         (left-invariant derivative on the base point) + (infinitesimal
         V-representation)
  h      horizontal homotopy: (h psi)(g_1..g_{p-1}; y) =
         (-1)^p psi(g_1..g_{p-1}, y; 0)
  p-hat  evaluation at the unit: D^{0,q} -> Lambda^q g* (x) V
  i-hat  inclusion of constants
  k      (-1)^p times the linear-scaling homotopy T, in the form picture
  q-hat  restriction to the unit base point: D^{p,0} -> group p-cochains
  j-hat  (j f)(g_1..g_p; y) = rho(y)^{-1} f(g_1..g_p)

The differentiation map is available both as a zig-zag through the
complex and as the closed permutation formula over iterated covariant
derivatives; the integration map both as a zig-zag and as the exact cube
integral of the pulled-back left-invariant form.  Their agreement is a
theorem, tested rather than assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .forms import Chart, PolyForm, PolyVF, contract, exterior_d, homotopy_T, pullback, wedge
from .liealg import CEElement, Representation, ce_diff, ce_diff_comps, trivial_rep
from .nilgroup import (
    GroupCochain,
    PolyGroup,
    PolyRep,
    fiber_vars,
    group_chart,
    group_delta,
    left_invariant_vf,
    maurer_cartan_coframe,
    slot_vars,
    trivial_poly_rep,
)
from .perturb import SAMPLE_COEFFS, DoubleComplexInstance, zigzag_xy, zigzag_yx
from .polyalg import MultiPoly, Rat, to_string

Index = Tuple[int, ...]


class VanEstError(ValueError):
    pass


def _zero_vec(dim: int) -> Tuple[MultiPoly, ...]:
    return tuple(MultiPoly.zero() for _ in range(dim))


class BigradedElement:
    """Element of D^{p,q}(G, V) in the component picture."""

    __slots__ = ("group", "rep", "p", "q", "comps")

    def __init__(
        self,
        group: PolyGroup,
        rep: Optional[PolyRep],
        p: int,
        q: int,
        comps: Mapping[Index, Sequence[MultiPoly]],
    ):
        rep = rep if rep is not None else trivial_poly_rep(group)
        allowed = set(fiber_vars(group.dim))
        for s in range(1, p + 1):
            allowed.update(slot_vars(s, group.dim))
        clean: Dict[Index, Tuple[MultiPoly, ...]] = {}
        for idx, vec in comps.items():
            idx = tuple(idx)
            if len(idx) != q or list(idx) != sorted(set(idx)):
                raise ValueError(f"index {idx} is not an increasing {q}-subset")
            v = tuple(vec)
            if len(v) != rep.dim:
                raise ValueError("component vector length must match rep dim")
            for c in v:
                extra = set(c.support()) - allowed
                if extra:
                    raise ValueError(f"component uses variables outside slots: {extra}")
            if any(not c.is_zero() for c in v):
                clean[idx] = v
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BigradedElement is immutable")

    @staticmethod
    def zero(group, rep, p, q) -> "BigradedElement":
        return BigradedElement(group, rep, p, q, {})

    def component(self, idx: Index) -> Tuple[MultiPoly, ...]:
        return self.comps.get(tuple(idx), _zero_vec(self.rep.dim))

    def is_zero(self) -> bool:
        return not self.comps

    def map_comps(self, fn) -> "BigradedElement":
        return BigradedElement(
            self.group, self.rep, self.p, self.q,
            {i: tuple(fn(c) for c in v) for i, v in self.comps.items()},
        )

    def __add__(self, other: "BigradedElement") -> "BigradedElement":
        out = dict(self.comps)
        for idx, vec in other.comps.items():
            cur = out.get(idx)
            out[idx] = vec if cur is None else tuple(a + b for a, b in zip(cur, vec))
        return BigradedElement(self.group, self.rep, self.p, self.q, out)

    def __neg__(self) -> "BigradedElement":
        return self.map_comps(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "BigradedElement":
        return self.map_comps(lambda c: c * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedElement):
            return NotImplemented
        return (
            (self.p, self.q) == (other.p, other.q) and (self - other).is_zero()
        )

    def __hash__(self):
        raise TypeError("BigradedElement is unhashable")

    def __repr__(self):
        body = {i: tuple(to_string(c) for c in v) for i, v in self.comps.items()}
        return f"BigradedElement(p={self.p}, q={self.q}, comps={body})"


# ---------------------------------------------------------------------------
# Structural operators, component picture


def bg_delta(psi: BigradedElement) -> BigradedElement:
    """Horizontal differential: alternating sum of face substitutions; the
    last face merges g_{p+1} into the base point."""
    group, p, n = psi.group, psi.p, psi.group.dim
    out: Dict[Index, list] = {}

    def accumulate(sub, sgn):
        for idx, vec in psi.comps.items():
            term = [c.subst(sub) * sgn for c in vec]
            cur = out.get(idx)
            out[idx] = term if cur is None else [a + b for a, b in zip(cur, term)]

    # face 0: drop g1, shift the rest down
    accumulate(
        {
            f"g{s}_{j}": MultiPoly.var(f"g{s+1}_{j}")
            for s in range(1, p + 1)
            for j in range(1, n + 1)
        },
        1,
    )
    # faces 1..p: merge slots i, i+1
    for i in range(1, p + 1):
        gi = [MultiPoly.var(f"g{i}_{j}") for j in range(1, n + 1)]
        gi1 = [MultiPoly.var(f"g{i+1}_{j}") for j in range(1, n + 1)]
        prod = group.multiply(gi, gi1)
        sub = {f"g{i}_{j}": prod[j - 1] for j in range(1, n + 1)}
        for s in range(i + 1, p + 1):
            for j in range(1, n + 1):
                sub[f"g{s}_{j}"] = MultiPoly.var(f"g{s+1}_{j}")
        accumulate(sub, (-1) ** i)
    # face p+1: merge g_{p+1} into the base point
    gp1 = [MultiPoly.var(f"g{p+1}_{j}") for j in range(1, n + 1)]
    yv = [MultiPoly.var(v) for v in fiber_vars(n)]
    merged = group.multiply(gp1, yv)
    accumulate(
        {f"y_{j}": merged[j - 1] for j in range(1, n + 1)},
        (-1) ** (p + 1),
    )
    return BigradedElement(group, psi.rep, p + 1, psi.q, out)


def bg_h(psi: BigradedElement) -> BigradedElement:
    """(h psi)(g_1..g_{p-1}; y) = (-1)^p psi(g_1..g_{p-1}, y; 0)."""
    group, p, n = psi.group, psi.p, psi.group.dim
    if p == 0:
        return BigradedElement.zero(group, psi.rep, -1, psi.q)
    sub: Dict[str, object] = {f"g{p}_{j}": MultiPoly.var(f"y_{j}") for j in range(1, n + 1)}
    sub.update({f"y_{j}": Fraction(0) for j in range(1, n + 1)})
    sgn = (-1) ** p
    out = {
        idx: tuple(c.subst(sub) * sgn for c in vec) for idx, vec in psi.comps.items()
    }
    return BigradedElement(group, psi.rep, p - 1, psi.q, out)


def _frame_fields(group: PolyGroup) -> List[Tuple[MultiPoly, ...]]:
    return [left_invariant_vf(group, j).components for j in range(group.dim)]


def bg_d(psi: BigradedElement) -> BigradedElement:
    """Vertical differential: (-1)^p times the Chevalley-Eilenberg
    differential for the combined action (left-invariant derivative on the
    base point plus the infinitesimal V-representation)."""
    group = psi.group
    frames = _frame_fields(group)
    inf = psi.rep.infinitesimal()
    yv = fiber_vars(group.dim)

    def action(j: int, vec):
        frame = frames[j]
        out = []
        for r, c in enumerate(vec):
            acc = MultiPoly.zero()
            for k in range(group.dim):
                dc = c.diff(yv[k])
                if not dc.is_zero():
                    acc = acc + frame[k] * dc
            for cidx in range(len(vec)):
                m = inf.matrices[j][r][cidx]
                if m != 0:
                    acc = acc + vec[cidx] * m
            out.append(acc)
        return out

    raw = ce_diff_comps(group.algebra, psi.q, psi.comps, action)
    sgn = (-1) ** psi.p
    out = {idx: tuple(c * sgn for c in vec) for idx, vec in raw.items()}
    return BigradedElement(group, psi.rep, psi.p, psi.q + 1, out)


# ---------------------------------------------------------------------------
# Form picture and the vertical homotopy


@dataclass(frozen=True)
class FormPicture:
    """The same bigraded element as a V-vector of fiberwise q-forms on the
    y-chart (group slots as parameters)."""

    group: PolyGroup
    rep: PolyRep
    p: int
    q: int
    forms: Tuple[PolyForm, ...]


def frame_convert(obj, direction: str):
    """Convert between the component picture and the form picture.

    direction='to_form': BigradedElement -> FormPicture via
    beta = rho(y) sum_I psi_I theta^I.
    direction='to_components': FormPicture -> BigradedElement via
    psi_I = rho(y)^{-1} beta(e_{i_1}^L, ..., e_{i_q}^L).
    """
    if direction == "to_form":
        psi: BigradedElement = obj
        group, rep = psi.group, psi.rep
        theta = maurer_cartan_coframe(group, slots=psi.p)
        chart = group_chart(group, slots=psi.p)
        rho = rep.rho
        forms = []
        for r in range(rep.dim):
            acc = PolyForm.zero(chart, psi.q)
            for idx, vec in psi.comps.items():
                coef = MultiPoly.zero()
                for c in range(rep.dim):
                    if not vec[c].is_zero():
                        coef = coef + rho[r][c] * vec[c]
                if coef.is_zero():
                    continue
                term = PolyForm.function(chart, coef)
                for i in idx:
                    term = wedge(term, theta[i])
                acc = acc + term
            forms.append(acc)
        return FormPicture(group, rep, psi.p, psi.q, tuple(forms))
    if direction == "to_components":
        fp: FormPicture = obj
        group, rep = fp.group, fp.rep
        chart = group_chart(group, slots=fp.p)
        frames = [
            PolyVF(chart, left_invariant_vf(group, j).components)
            for j in range(group.dim)
        ]
        rho_inv = rep.inverse_matrix()
        comps: Dict[Index, Tuple[MultiPoly, ...]] = {}
        for idx in combinations(range(group.dim), fp.q):
            paired = []
            for r in range(rep.dim):
                form = fp.forms[r]
                for i in idx:
                    form = contract(form, frames[i])
                paired.append(form.coefficient(()))
            vec = []
            for c in range(rep.dim):
                acc = MultiPoly.zero()
                for r in range(rep.dim):
                    if not paired[r].is_zero():
                        acc = acc + rho_inv[c][r] * paired[r]
                vec.append(acc)
            comps[idx] = tuple(vec)
        return BigradedElement(group, rep, fp.p, fp.q, comps)
    raise ValueError(f"unknown direction {direction!r}")


def bg_k(psi: BigradedElement) -> BigradedElement:
    """Vertical homotopy: (-1)^p times the linear-scaling homotopy T
    applied in the form picture.  Vanishes on q = 0."""
    if psi.q == 0:
        return BigradedElement.zero(psi.group, psi.rep, psi.p, -1)
    fp = frame_convert(psi, "to_form")
    sgn = (-1) ** psi.p
    tforms = tuple(homotopy_T(f) * sgn for f in fp.forms)
    return frame_convert(
        FormPicture(psi.group, psi.rep, psi.p, psi.q - 1, tforms), "to_components"
    )


# ---------------------------------------------------------------------------
# Augmentations


def bg_p_proj(psi: BigradedElement) -> CEElement:
    """Evaluation at the unit: D^{0,q} -> Lambda^q g* (x) V."""
    if psi.p != 0:
        raise VanEstError("p-hat is defined on the first column only")
    zero = {v: Fraction(0) for v in fiber_vars(psi.group.dim)}
    comps = {
        idx: tuple(Fraction(c.subst(zero).constant_value()) for c in vec)
        for idx, vec in psi.comps.items()
    }
    return CEElement(psi.group.algebra, psi.rep.infinitesimal(), psi.q, comps)


def bg_i_inc(group: PolyGroup, rep: PolyRep, alpha: CEElement) -> BigradedElement:
    """Inclusion of constants: Lambda^q g* (x) V -> D^{0,q}."""
    comps = {
        idx: tuple(MultiPoly.const(x) for x in vec)
        for idx, vec in alpha.comps.items()
    }
    return BigradedElement(group, rep, 0, alpha.degree, comps)


def bg_j_inc(f: GroupCochain) -> BigradedElement:
    """(j f)(g_1..g_p; y) = rho(y)^{-1} f(g_1..g_p)."""
    rep = f.rep
    rho_inv = rep.inverse_matrix()
    vec = []
    for r in range(rep.dim):
        acc = MultiPoly.zero()
        for c in range(rep.dim):
            if not f.values[c].is_zero():
                acc = acc + rho_inv[r][c] * f.values[c]
        vec.append(acc)
    return BigradedElement(f.group, rep, f.degree, 0, {(): tuple(vec)})


def bg_q_proj(psi: BigradedElement) -> GroupCochain:
    """Restriction to the unit base point: D^{p,0} -> group p-cochains."""
    if psi.q != 0:
        raise VanEstError("q-hat is defined on the bottom row only")
    zero = {v: Fraction(0) for v in fiber_vars(psi.group.dim)}
    vec = tuple(c.subst(zero) for c in psi.component(()))
    return GroupCochain(psi.group, psi.rep, psi.p, vec)


# ---------------------------------------------------------------------------
# Covariant derivatives and Lie derivative


def _as_coeffs(group: PolyGroup, xi: Union[int, Sequence[Rat]]) -> List[Fraction]:
    if isinstance(xi, int):
        out = [Fraction(0)] * group.dim
        out[xi] = Fraction(1)
        return out
    return [Fraction(c) for c in xi]


_T = "t1"


def _curve(group: PolyGroup, coeffs: Sequence[Fraction]) -> List[MultiPoly]:
    t = MultiPoly.var(_T)
    return [t * c for c in coeffs]


def _ddt_at_zero(poly: MultiPoly) -> MultiPoly:
    return poly.diff(_T).subst({_T: Fraction(0)})


def _interior_sub(group: PolyGroup, i: int, a: List[MultiPoly]) -> Dict[str, MultiPoly]:
    """Substitution for the i-th action, i < p: (g_i a, a^{-1} g_{i+1})."""
    n = group.dim
    gi = [MultiPoly.var(f"g{i}_{j}") for j in range(1, n + 1)]
    gi1 = [MultiPoly.var(f"g{i+1}_{j}") for j in range(1, n + 1)]
    a_inv = [-c for c in a]
    left = group.multiply(gi, a)
    right = group.multiply(a_inv, gi1)
    sub = {f"g{i}_{j}": left[j - 1] for j in range(1, n + 1)}
    sub.update({f"g{i+1}_{j}": right[j - 1] for j in range(1, n + 1)})
    return sub


def nabla(i: int, xi: Union[int, Sequence[Rat]], f: GroupCochain) -> GroupCochain:
    """Covariant derivative along the i-th slot action, at the unit of the
    acting copy: for i < p the action is (g_i a, a^{-1} g_{i+1}); for i = p
    it is g_p a combined with the V-representation of a."""
    group, p = f.group, f.degree
    if not 1 <= i <= p:
        raise VanEstError(f"slot {i} out of range 1..{p}")
    coeffs = _as_coeffs(group, xi)
    a = _curve(group, coeffs)
    n = group.dim
    if i < p:
        sub = _interior_sub(group, i, a)
        vals = tuple(_ddt_at_zero(v.subst(sub)) for v in f.values)
    else:
        gp = [MultiPoly.var(f"g{p}_{j}") for j in range(1, n + 1)]
        moved = group.multiply(gp, a)
        sub = {f"g{p}_{j}": moved[j - 1] for j in range(1, n + 1)}
        rho_a = [
            [e.subst({f"y_{j}": a[j - 1] for j in range(1, n + 1)}) for e in row]
            for row in f.rep.rho
        ]
        shifted = [v.subst(sub) for v in f.values]
        vals = []
        for r in range(f.rep.dim):
            acc = MultiPoly.zero()
            for c in range(f.rep.dim):
                if not shifted[c].is_zero():
                    acc = acc + rho_a[r][c] * shifted[c]
            vals.append(_ddt_at_zero(acc))
        vals = tuple(vals)
    return GroupCochain(group, f.rep, p, vals)


def nabla_bigraded(
    i: int, xi: Union[int, Sequence[Rat]], psi: BigradedElement
) -> BigradedElement:
    """The same covariant derivatives on D^{p,q}; the p-th action moves the
    base point, (g_p a; a^{-1} y), instead of twisting by the
    representation."""
    group, p = psi.group, psi.p
    if not 1 <= i <= p:
        raise VanEstError(f"slot {i} out of range 1..{p}")
    a = _curve(group, _as_coeffs(group, xi))
    n = group.dim
    if i < p:
        sub = _interior_sub(group, i, a)
    else:
        gp = [MultiPoly.var(f"g{p}_{j}") for j in range(1, n + 1)]
        yv = [MultiPoly.var(v) for v in fiber_vars(n)]
        moved = group.multiply(gp, a)
        a_inv = [-c for c in a]
        ymoved = group.multiply(a_inv, yv)
        sub = {f"g{p}_{j}": moved[j - 1] for j in range(1, n + 1)}
        sub.update({f"y_{j}": ymoved[j - 1] for j in range(1, n + 1)})
    return psi.map_comps(lambda c: _ddt_at_zero(c.subst(sub)))


def lie_bigraded(
    xi: Union[int, Sequence[Rat]], psi: BigradedElement
) -> BigradedElement:
    """Module Lie derivative: left-invariant derivative on the base point
    plus the infinitesimal V-representation."""
    group = psi.group
    coeffs = _as_coeffs(group, xi)
    a = _curve(group, coeffs)
    n = group.dim
    yv = [MultiPoly.var(v) for v in fiber_vars(n)]
    moved = group.multiply(yv, a)
    sub = {f"y_{j}": moved[j - 1] for j in range(1, n + 1)}
    inf = psi.rep.infinitesimal()
    mat = [
        [
            sum((inf.matrices[j][r][c] * coeffs[j] for j in range(n)), Fraction(0))
            for c in range(psi.rep.dim)
        ]
        for r in range(psi.rep.dim)
    ]
    out: Dict[Index, Tuple[MultiPoly, ...]] = {}
    for idx, vec in psi.comps.items():
        deriv = [_ddt_at_zero(c.subst(sub)) for c in vec]
        for r in range(psi.rep.dim):
            for c in range(psi.rep.dim):
                if mat[r][c] != 0 and not vec[c].is_zero():
                    deriv[r] = deriv[r] + vec[c] * mat[r][c]
        out[idx] = tuple(deriv)
    return BigradedElement(group, psi.rep, psi.p, psi.q, out)


# ---------------------------------------------------------------------------
# Closed-form differentiation (permutation formula)


def ve_closed(f: GroupCochain) -> CEElement:
    """Differentiation map by the closed permutation formula:
    (VE f)(xi_1..xi_p) = sum_s sign(s) nabla^{(1)}_{xi_s(1)} ...
    nabla^{(p)}_{xi_s(p)} f, evaluated at the units."""
    group, p = f.group, f.degree
    alg = group.algebra
    rep_inf = f.rep.infinitesimal()
    if p == 0:
        zero = {}
        val = tuple(Fraction(v.constant_value()) for v in f.values)
        return CEElement(alg, rep_inf, 0, {(): val})
    all_zero = {
        f"g{s}_{j}": Fraction(0)
        for s in range(1, p + 1)
        for j in range(1, group.dim + 1)
    }
    comps: Dict[Index, Tuple[Fraction, ...]] = {}
    for idx in combinations(range(group.dim), p):
        total = [Fraction(0)] * f.rep.dim
        for perm in permutations(range(p)):
            sign = _perm_sign(perm)
            cur = f
            for slot in range(p, 0, -1):
                cur = nabla(slot, idx[perm[slot - 1]], cur)
            vals = [Fraction(v.subst(all_zero).constant_value()) for v in cur.values]
            total = [t + sign * v for t, v in zip(total, vals)]
        comps[idx] = tuple(total)
    return CEElement(alg, rep_inf, p, comps)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Closed-form integration (cube integral of the pulled-back invariant form)


@dataclass(frozen=True)
class GammaMap:
    """The scaled iterated-product map gamma^{(p)}: polynomials in
    t1..tp, g1_*..gp_* whose value at t = (1..1) is the product g_1...g_p
    and which collapses to the unit at t1 = 0."""

    group: PolyGroup
    p: int
    components: Tuple[MultiPoly, ...]


def gamma_map(group: PolyGroup, p: int) -> GammaMap:
    """gamma_{t_1..t_p}(g_1..g_p) = t_1 (g_1 * (t_2 (g_2 * ... (t_p g_p))))
    with * the group law and scalars acting by coordinate scaling."""
    if p < 1:
        raise VanEstError("gamma_map requires p >= 1")
    n = group.dim
    cur = [
        MultiPoly.var(f"t{p}") * MultiPoly.var(f"g{p}_{j}") for j in range(1, n + 1)
    ]
    for s in range(p - 1, 0, -1):
        gs = [MultiPoly.var(f"g{s}_{j}") for j in range(1, n + 1)]
        prod = group.multiply(gs, cur)
        t = MultiPoly.var(f"t{s}")
        cur = [t * c for c in prod]
    return GammaMap(group, p, tuple(cur))


def r_closed(
    group: PolyGroup, alpha: CEElement, rep: Optional[PolyRep] = None
) -> GroupCochain:
    """Integration map: pull the (representation-twisted) left-invariant
    form of alpha back along gamma^{(p)}, integrate exactly over the unit
    cube, and translate the value back to the unit by rho(g_1...g_p)^{-1}.
    """
    rep = rep if rep is not None else trivial_poly_rep(group)
    p = alpha.degree
    if p == 0:
        return GroupCochain(
            group, rep, 0, tuple(MultiPoly.const(x) for x in alpha.component(()))
        )
    n = group.dim
    gm = gamma_map(group, p)
    cube = Chart(
        tuple(f"t{s}" for s in range(1, p + 1)),
        tuple(f"g{s}_{j}" for s in range(1, p + 1) for j in range(1, n + 1)),
    )
    ychart = Chart(fiber_vars(n))
    theta = maurer_cartan_coframe(group)
    phi = {f"y_{j}": gm.components[j - 1] for j in range(1, n + 1)}
    vals = []
    for r in range(rep.dim):
        acc = PolyForm.zero(ychart, p)
        for idx, vec in alpha.comps.items():
            coef = MultiPoly.zero()
            for c in range(rep.dim):
                if vec[c] != 0:
                    coef = coef + rep.rho[r][c] * vec[c]
            if coef.is_zero():
                continue
            term = PolyForm.function(ychart, coef)
            for i in idx:
                term = wedge(term, theta[i])
            acc = acc + term
        pulled = pullback(acc, phi, cube)
        integrand = pulled.coefficient(tuple(range(p)))
        for s in range(1, p + 1):
            integrand = integrand.defint01(f"t{s}")
        vals.append(integrand)
    # translate the V-value back to the unit
    prod = [MultiPoly.var(f"g1_{j}") for j in range(1, n + 1)]
    for s in range(2, p + 1):
        prod = group.multiply(prod, [MultiPoly.var(f"g{s}_{j}") for j in range(1, n + 1)])
    inv_prod = group.invert(prod)
    rho_back = [
        [e.subst({f"y_{j}": inv_prod[j - 1] for j in range(1, n + 1)}) for e in row]
        for row in rep.rho
    ]
    out = []
    for r in range(rep.dim):
        acc = MultiPoly.zero()
        for c in range(rep.dim):
            if not vals[c].is_zero():
                acc = acc + rho_back[r][c] * vals[c]
        out.append(acc)
    return GroupCochain(group, rep, p, tuple(out))


# ---------------------------------------------------------------------------
# Instance assembly and the zig-zag versions


def _random_poly(rng: random.Random, vars_: Sequence[str], max_deg: int) -> MultiPoly:
    acc = MultiPoly.zero()
    for _ in range(rng.randint(1, 4)):
        coef = rng.choice(SAMPLE_COEFFS)
        term = MultiPoly.const(coef)
        for _ in range(rng.randint(0, max_deg)):
            term = term * MultiPoly.var(rng.choice(vars_))
        acc = acc + term
    return acc


def build_double_complex(
    group: PolyGroup,
    rep: Optional[PolyRep] = None,
    max_p: int = 3,
    max_q: Optional[int] = None,
    sample_deg: int = 2,
) -> DoubleComplexInstance:
    """Assemble the van Est double complex of a polynomial group as a
    DoubleComplexInstance for the generic perturbation engine."""
    rep = rep if rep is not None else trivial_poly_rep(group)
    n = group.dim
    if max_q is None:
        max_q = n
    rep_inf = rep.infinitesimal()
    alg = group.algebra

    def d(p, q, x):
        return bg_d(x)

    def delta(p, q, x):
        return bg_delta(x)

    def h(p, q, x):
        return bg_h(x)

    def k(p, q, x):
        return bg_k(x)

    def p_proj(q, x):
        return bg_p_proj(x)

    def i_inc(q, a):
        return bg_i_inc(group, rep, a)

    def q_proj(p, x):
        return bg_q_proj(x)

    def j_inc(p, f):
        return bg_j_inc(f)

    def d_x(q, a):
        return ce_diff(a)

    def delta_y(p, f):
        return group_delta(f)

    def sample(rng, p, q):
        vars_ = list(fiber_vars(n))
        for s in range(1, p + 1):
            vars_.extend(slot_vars(s, n))
        comps = {}
        for idx in combinations(range(n), q):
            if rng.random() < 0.4 and q > 0:
                continue
            comps[idx] = tuple(
                _random_poly(rng, vars_, sample_deg) for _ in range(rep.dim)
            )
        return BigradedElement(group, rep, p, q, comps)

    def sample_x(rng, q):
        comps = {}
        for idx in combinations(range(n), q):
            comps[idx] = tuple(rng.choice(SAMPLE_COEFFS) for _ in range(rep.dim))
        return CEElement(alg, rep_inf, q, comps)

    def sample_y(rng, p):
        vars_ = [v for s in range(1, p + 1) for v in slot_vars(s, n)]
        if not vars_:
            return GroupCochain(
                group, rep, 0,
                tuple(MultiPoly.const(rng.choice(SAMPLE_COEFFS)) for _ in range(rep.dim)),
            )
        return GroupCochain(
            group, rep, p,
            tuple(_random_poly(rng, vars_, sample_deg) for _ in range(rep.dim)),
        )

    rep_tag = "trivial" if rep.dim == 1 and all(
        e.is_constant() for row in rep.rho for e in row
    ) else f"rep{rep.dim}"
    return DoubleComplexInstance(
        name=f"group:{group.name}:{rep_tag}",
        d=d, delta=delta, h=h,
        p_proj=p_proj, i_inc=i_inc, d_x=d_x,
        k=k, q_proj=q_proj, j_inc=j_inc, delta_y=delta_y,
        sample=sample, sample_x=sample_x, sample_y=sample_y,
        max_p=max_p, max_q=max_q,
        side_conditions="holds",
        serialize=lambda p, q, x: repr(x),
    )


def ve_zigzag(
    f: GroupCochain, inst: Optional[DoubleComplexInstance] = None
) -> CEElement:
    """Differentiation as the explicit zig-zag through the double complex."""
    if inst is None:
        inst = build_double_complex(f.group, f.rep)
    return zigzag_xy(inst, f.degree, f)


def r_zigzag(
    group: PolyGroup,
    alpha: CEElement,
    rep: Optional[PolyRep] = None,
    inst: Optional[DoubleComplexInstance] = None,
) -> GroupCochain:
    """Integration as the explicit zig-zag through the double complex."""
    rep = rep if rep is not None else trivial_poly_rep(group)
    if inst is None:
        inst = build_double_complex(group, rep)
    return zigzag_yx(inst, alpha.degree, alpha)


# ---------------------------------------------------------------------------
# Standard unipotent representations for the registry


def _exp_nilpotent(mat: List[List[MultiPoly]]) -> Tuple[Tuple[MultiPoly, ...], ...]:
    """Exact exponential of a nilpotent polynomial matrix (finite sum)."""
    d = len(mat)
    out = [
        [MultiPoly.const(1) if i == j else MultiPoly.zero() for j in range(d)]
        for i in range(d)
    ]
    power = [row[:] for row in out]
    fact = 1
    for step in range(1, d):
        power = [
            [
                sum((power[i][k] * mat[k][j] for k in range(d)), MultiPoly.zero())
                for j in range(d)
            ]
            for i in range(d)
        ]
        if all(e.is_zero() for row in power for e in row):
            break
        fact *= step
        inv = Fraction(1, fact)
        out = [
            [out[i][j] + power[i][j] * inv for j in range(d)] for i in range(d)
        ]
    return tuple(tuple(row) for row in out)


def _exp_rep(group: PolyGroup, generators: List[List[List[int]]]) -> PolyRep:
    """Representation exp(sum_i y_i X_i) from nilpotent generator matrices
    realizing the structure constants; exact because the group law is the
    truncated series in exponential coordinates."""
    d = len(generators[0])
    mat = [[MultiPoly.zero() for _ in range(d)] for _ in range(d)]
    for i, gen in enumerate(generators):
        y = MultiPoly.var(f"y_{i + 1}")
        for r in range(d):
            for c in range(d):
                if gen[r][c]:
                    mat[r][c] = mat[r][c] + y * gen[r][c]
    return PolyRep(group, d, _exp_nilpotent(mat))


def standard_poly_rep(group: PolyGroup) -> PolyRep:
    """A faithful unipotent polynomial representation for the registered
    groups that have one wired in."""
    n = group.dim
    if group.name == "abelian-1":
        y = MultiPoly.var("y_1")
        return PolyRep(
            group, 2,
            ((MultiPoly.const(1), y), (MultiPoly.zero(), MultiPoly.const(1))),
        )
    if group.name.startswith("abelian-"):
        # translations: exp places y_1..y_n in the top row
        gens = []
        for i in range(n):
            g = [[0] * (n + 1) for _ in range(n + 1)]
            g[0][i + 1] = 1
            gens.append(g)
        return _exp_rep(group, gens)
    if group.name == "filiform4":
        # 5x5 strictly upper triangular: X1 = E12 + E23, X2 = E35,
        # X3 = [X1, X2] = E25, X4 = [X1, X3] = E15; all other brackets zero
        def emat(entries):
            g = [[0] * 5 for _ in range(5)]
            for r, c in entries:
                g[r][c] = 1
            return g

        gens = [
            emat([(0, 1), (1, 2)]),
            emat([(2, 4)]),
            emat([(1, 4)]),
            emat([(0, 4)]),
        ]
        return _exp_rep(group, gens)
    if group.name == "heisenberg3":
        y1, y2, y3 = (MultiPoly.var(f"y_{i}") for i in (1, 2, 3))
        half = Fraction(1, 2)
        return PolyRep(
            group, 3,
            (
                (MultiPoly.const(1), y1, y3 + y1 * y2 * half),
                (MultiPoly.zero(), MultiPoly.const(1), y2),
                (MultiPoly.zero(), MultiPoly.zero(), MultiPoly.const(1)),
            ),
        )
    raise VanEstError(f"no standard representation wired for {group.name}")
