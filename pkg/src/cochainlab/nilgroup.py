"""Polynomial models of simply connected nilpotent Lie groups.

The group law in exponential coordinates comes from the Baker-Campbell-
Hausdorff series, truncated at the nilpotency class (exact for class <= 4,
the supported range).  Everything downstream is a polynomial identity and
is verified as such at construction time: unit laws, associativity,
inverses.

Also provides the left-invariant frame, the dual coframe (with polynomial
entries, by unipotence of the Jacobian), polynomial group cochains with
the simplicial differential, and unipotent polynomial representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .forms import Chart, PolyForm, PolyVF
from .liealg import LieAlgebra, Representation
from .polyalg import MultiPoly, Rat

MAX_BCH_CLASS = 4


class GroupError(ValueError):
    pass


class NotNilpotent(GroupError):
    pass


class ClassTooHigh(GroupError):
    pass


class AssociativityFailure(GroupError):
    pass


class NonUnipotentJacobian(GroupError):
    pass


def slot_vars(slot: int, n: int) -> Tuple[str, ...]:
    return tuple(f"g{slot}_{j}" for j in range(1, n + 1))


def fiber_vars(n: int) -> Tuple[str, ...]:
    return tuple(f"y_{j}" for j in range(1, n + 1))


def _vec(names: Sequence[str]) -> List[MultiPoly]:
    return [MultiPoly.var(v) for v in names]


def _vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _vec_scale(a, c):
    return [x * c for x in a]


def _bch(alg: LieAlgebra, x: List[MultiPoly], y: List[MultiPoly]) -> List[MultiPoly]:
    """BCH(x, y) through bracket degree 4; exact when the class is <= 4."""
    br = alg.bracket
    z = _vec_add(x, y)
    if alg.nilpotency_class >= 2:
        xy = br(x, y)
        z = _vec_add(z, _vec_scale(xy, Fraction(1, 2)))
        if alg.nilpotency_class >= 3:
            xxy = br(x, xy)
            yyx = br(y, br(y, x))
            z = _vec_add(z, _vec_scale(xxy, Fraction(1, 12)))
            z = _vec_add(z, _vec_scale(yyx, Fraction(1, 12)))
            if alg.nilpotency_class >= 4:
                yxxy = br(y, xxy)
                z = _vec_add(z, _vec_scale(yxxy, Fraction(-1, 24)))
    return z


@dataclass(frozen=True)
class PolyGroup:
    """Nilpotent group law on coordinate space, in exponential coordinates.

    ``mult`` lives in the slot variables g1_*, g2_*; ``inv`` in g1_*.
    The unit is the origin.
    """

    algebra: LieAlgebra
    mult: Tuple[MultiPoly, ...]
    inv: Tuple[MultiPoly, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def name(self) -> str:
        return self.algebra.name

    def multiply(self, a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> List[MultiPoly]:
        """Group product of two coordinate vectors of polynomials."""
        sub = {}
        for j, (av, bv) in enumerate(zip(a, b), start=1):
            sub[f"g1_{j}"] = av
            sub[f"g2_{j}"] = bv
        return [m.subst(sub) for m in self.mult]

    def invert(self, a: Sequence[MultiPoly]) -> List[MultiPoly]:
        sub = {f"g1_{j}": av for j, av in enumerate(a, start=1)}
        return [m.subst(sub) for m in self.inv]


def bch_multiplication(alg: LieAlgebra) -> PolyGroup:
    """Build the PolyGroup of a nilpotent algebra via truncated BCH and
    verify the group axioms as polynomial identities."""
    if alg.nilpotency_class == 0:
        raise NotNilpotent(f"{alg.name} is not nilpotent")
    if alg.nilpotency_class > MAX_BCH_CLASS:
        raise ClassTooHigh(
            f"nilpotency class {alg.nilpotency_class} exceeds supported {MAX_BCH_CLASS}"
        )
    n = alg.dim
    x = _vec(slot_vars(1, n))
    y = _vec(slot_vars(2, n))
    mult = tuple(_bch(alg, x, y))
    inv = tuple(-xi for xi in x)  # exp coords: inverse is negation
    group = PolyGroup(alg, mult, inv)

    zero = [MultiPoly.zero() for _ in range(n)]
    if group.multiply(x, zero) != list(x) or group.multiply(zero, x) != list(x):
        raise AssociativityFailure("unit laws fail for BCH multiplication")
    if any(not c.is_zero() for c in group.multiply(x, group.invert(x))):
        raise AssociativityFailure("m(x, inv(x)) != 0")
    z = _vec(slot_vars(3, n))
    left = group.multiply(group.multiply(x, y), z)
    right = group.multiply(x, group.multiply(y, z))
    if left != right:
        raise AssociativityFailure(
            "BCH multiplication is not associative (bad structure constants?)"
        )
    return group


# ---------------------------------------------------------------------------
# Left-invariant frame and coframe


def _right_jacobian(group: PolyGroup) -> List[List[MultiPoly]]:
    """B(y)[j][i] = d m_j / d (second argument)_i at (y, 0): the matrix of
    the left-invariant frame in exponential coordinates."""
    n = group.dim
    yv = fiber_vars(n)
    rows = []
    for j in range(n):
        m_j = group.mult[j]
        row = []
        for i in range(n):
            d = m_j.diff(f"g2_{i+1}")
            sub = {f"g1_{k}": MultiPoly.var(yv[k - 1]) for k in range(1, n + 1)}
            sub.update({f"g2_{k}": Fraction(0) for k in range(1, n + 1)})
            row.append(d.subst(sub))
        rows.append(row)
    return rows


def group_chart(group: PolyGroup, slots: int = 0) -> Chart:
    """Chart with fiber coordinates y_* and the slot variables as params."""
    params: Tuple[str, ...] = ()
    for s in range(1, slots + 1):
        params = params + slot_vars(s, group.dim)
    return Chart(fiber_vars(group.dim), params)


def left_invariant_vf(
    group: PolyGroup, xi: Union[int, Sequence[Rat]], slots: int = 0
) -> PolyVF:
    """Left-invariant vector field of xi (basis index or coefficient
    vector), in the fiber coordinates."""
    n = group.dim
    if isinstance(xi, int):
        coeffs = [Fraction(0)] * n
        coeffs[xi] = Fraction(1)
    else:
        coeffs = [Fraction(c) for c in xi]
    jac = _right_jacobian(group)
    comps = []
    for j in range(n):
        acc = MultiPoly.zero()
        for i in range(n):
            if coeffs[i] != 0:
                acc = acc + jac[j][i] * coeffs[i]
        comps.append(acc)
    return PolyVF(group_chart(group, slots), tuple(comps))


def _poly_mat_inverse(mat: List[List[MultiPoly]]) -> List[List[MultiPoly]]:
    """Inverse of I + N with N nilpotent (entries vanishing at 0): Neumann
    series.  Raises NonUnipotentJacobian if the series does not terminate."""
    n = len(mat)
    ident = [
        [MultiPoly.const(1) if i == j else MultiPoly.zero() for j in range(n)]
        for i in range(n)
    ]
    nil = [[mat[i][j] - ident[i][j] for j in range(n)] for i in range(n)]
    for row in nil:
        for entry in row:
            if not all(sum(e) > 0 for e in entry.terms):
                raise NonUnipotentJacobian("frame Jacobian is not unipotent")
    result = [row[:] for row in ident]
    power = [row[:] for row in ident]
    for step in range(1, n + 1):
        power = [
            [
                sum((power[i][k] * nil[k][j] for k in range(n)), MultiPoly.zero())
                for j in range(n)
            ]
            for i in range(n)
        ]
        if all(e.is_zero() for row in power for e in row):
            break
        sgn = (-1) ** step
        result = [
            [result[i][j] + power[i][j] * sgn for j in range(n)] for i in range(n)
        ]
    else:
        if not all(e.is_zero() for row in power for e in row):
            raise NonUnipotentJacobian("Neumann series for coframe did not terminate")
    return result


def maurer_cartan_coframe(group: PolyGroup, slots: int = 0) -> List[PolyForm]:
    """Left-invariant coframe theta^1..theta^n dual to the frame:
    theta^i = sum_j (B^{-1})_{ij} dy_j."""
    n = group.dim
    inv = _poly_mat_inverse(_right_jacobian(group))
    chart = group_chart(group, slots)
    out = []
    for i in range(n):
        terms = {(j,): inv[i][j] for j in range(n) if not inv[i][j].is_zero()}
        out.append(PolyForm(chart, 1, terms))
    return out


# ---------------------------------------------------------------------------
# Polynomial representations


@dataclass(frozen=True)
class PolyRep:
    """Unipotent polynomial representation: rho a d x d matrix of MultiPolys
    in the fiber variables y_*.  Validated: rho(0) = I, rho a homomorphism
    for the group law, det-1 unipotence via a polynomial inverse."""

    group: PolyGroup
    dim: int
    rho: Tuple[Tuple[MultiPoly, ...], ...]

    def __post_init__(self):
        n = self.group.dim
        d = self.dim
        zero = {f"y_{j}": Fraction(0) for j in range(1, n + 1)}
        for i in range(d):
            for j in range(d):
                v = self.rho[i][j].subst(zero)
                expected = Fraction(1 if i == j else 0)
                if not v == expected:
                    raise GroupError("rho(0) is not the identity")
        # homomorphism: rho(m(a, b)) = rho(a) rho(b)
        a_sub = {f"y_{j}": MultiPoly.var(f"g1_{j}") for j in range(1, n + 1)}
        b_sub = {f"y_{j}": MultiPoly.var(f"g2_{j}") for j in range(1, n + 1)}
        m_sub = {
            f"y_{j}": self.group.mult[j - 1] for j in range(1, n + 1)
        }
        for i in range(d):
            for j in range(d):
                lhs = self.rho[i][j].subst(m_sub)
                rhs = MultiPoly.zero()
                for k in range(d):
                    rhs = rhs + self.rho[i][k].subst(a_sub) * self.rho[k][j].subst(b_sub)
                if lhs != rhs:
                    raise GroupError("rho is not a homomorphism for the group law")

    def matrix_at(self, point: Sequence[MultiPoly]) -> List[List[MultiPoly]]:
        sub = {f"y_{j}": p for j, p in enumerate(point, start=1)}
        return [[e.subst(sub) for e in row] for row in self.rho]

    def inverse_matrix(self) -> List[List[MultiPoly]]:
        """rho(y)^{-1} = rho(inv(y)), polynomial by unipotence."""
        n = self.group.dim
        inv_pt = [
            p.subst({f"g1_{j}": MultiPoly.var(f"y_{j}") for j in range(1, n + 1)})
            for p in self.group.inv
        ]
        return self.matrix_at(inv_pt)

    def infinitesimal(self) -> Representation:
        """d/dt rho(t e_i) at t = 0, as a rational matrix representation."""
        n = self.group.dim
        d = self.dim
        mats = []
        for i in range(n):
            mat = []
            for r in range(d):
                row = []
                for c in range(d):
                    entry = self.rho[r][c]
                    deriv = entry.diff(f"y_{i+1}")
                    zero = {f"y_{j}": Fraction(0) for j in range(1, n + 1)}
                    row.append(Fraction(deriv.subst(zero).constant_value()))
                mat.append(tuple(row))
            mats.append(tuple(mat))
        return Representation(self.group.algebra, d, tuple(mats))


def trivial_poly_rep(group: PolyGroup) -> PolyRep:
    return PolyRep(group, 1, ((MultiPoly.const(1),),))


# ---------------------------------------------------------------------------
# Group cochains


class GroupCochain:
    """Polynomial p-cochain: a vector of MultiPolys in the slot variables
    g1_*, ..., gp_* (vector length = coefficient dimension)."""

    __slots__ = ("group", "rep", "degree", "values")

    def __init__(
        self,
        group: PolyGroup,
        rep: Optional[PolyRep],
        degree: int,
        values: Sequence[MultiPoly],
    ):
        rep = rep if rep is not None else trivial_poly_rep(group)
        vals = tuple(values)
        if len(vals) != rep.dim:
            raise ValueError("value vector length must equal rep dimension")
        allowed = set()
        for s in range(1, degree + 1):
            allowed.update(slot_vars(s, group.dim))
        for v in vals:
            extra = set(v.support()) - allowed
            if extra:
                raise ValueError(f"cochain uses variables outside its slots: {extra}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("GroupCochain is immutable")

    @staticmethod
    def scalar(group, degree, poly: MultiPoly, rep=None) -> "GroupCochain":
        rep = rep if rep is not None else trivial_poly_rep(group)
        if rep.dim != 1:
            raise ValueError("scalar constructor requires a 1-dim coefficient space")
        return GroupCochain(group, rep, degree, (poly,))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __add__(self, other: "GroupCochain") -> "GroupCochain":
        return GroupCochain(
            self.group,
            self.rep,
            self.degree,
            tuple(a + b for a, b in zip(self.values, other.values)),
        )

    def __neg__(self):
        return GroupCochain(
            self.group, self.rep, self.degree, tuple(-v for v in self.values)
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupCochain):
            return NotImplemented
        return self.degree == other.degree and list(self.values) == list(other.values)

    def __hash__(self):
        raise TypeError("GroupCochain is unhashable")

    def __repr__(self):
        return f"GroupCochain(p={self.degree}, values={self.values})"


def _slot_shift_sub(group: PolyGroup, degree: int, mapping: Mapping[int, int]) -> dict:
    """Substitution renaming slot s to slot mapping[s]."""
    sub = {}
    for s, target in mapping.items():
        for j in range(1, group.dim + 1):
            sub[f"g{s}_{j}"] = MultiPoly.var(f"g{target}_{j}")
    return sub


def group_delta(f: GroupCochain) -> GroupCochain:
    """Simplicial differential on polynomial group cochains; the last face
    twists by the inverse representation matrix."""
    group, rep, p = f.group, f.rep, f.degree
    n = group.dim
    out = [MultiPoly.zero() for _ in range(rep.dim)]

    # face 0: drop g1
    sub0 = _slot_shift_sub(group, p, {s: s + 1 for s in range(1, p + 1)})
    out = [o + v.subst(sub0) for o, v in zip(out, f.values)]

    # faces 1..p: merge slots i, i+1
    for i in range(1, p + 1):
        gi = [MultiPoly.var(f"g{i}_{j}") for j in range(1, n + 1)]
        gi1 = [MultiPoly.var(f"g{i+1}_{j}") for j in range(1, n + 1)]
        prod = group.multiply(gi, gi1)
        sub = {}
        for j in range(1, n + 1):
            sub[f"g{i}_{j}"] = prod[j - 1]
        for s in range(i + 1, p + 1):
            for j in range(1, n + 1):
                sub[f"g{s}_{j}"] = MultiPoly.var(f"g{s+1}_{j}")
        sgn = (-1) ** i
        out = [o + v.subst(sub) * sgn for o, v in zip(out, f.values)]

    # face p+1: drop g_{p+1}, acting by rho(g_{p+1})^{-1} on the value
    rho_inv = rep.inverse_matrix()
    last = [
        [
            e.subst({f"y_{j}": MultiPoly.var(f"g{p+1}_{j}") for j in range(1, n + 1)})
            for e in row
        ]
        for row in rho_inv
    ]
    sgn = (-1) ** (p + 1)
    for r in range(rep.dim):
        acc = MultiPoly.zero()
        for c in range(rep.dim):
            if not last[r][c].is_zero():
                acc = acc + last[r][c] * f.values[c]
        out[r] = out[r] + acc * sgn

    return GroupCochain(group, rep, p + 1, out)


# ---------------------------------------------------------------------------
# Registry

_ALGEBRA_BUILDERS = {}


def registered_groups() -> List[str]:
    return ["abelian-1", "abelian-2", "abelian-3", "heisenberg3", "filiform4"]


def build_group(name: str) -> PolyGroup:
    from . import liealg

    if name.startswith("abelian-"):
        n = int(name.split("-")[1])
        return bch_multiplication(liealg.abelian(n))
    if name == "heisenberg3":
        return bch_multiplication(liealg.heisenberg3())
    if name == "filiform4":
        return bch_multiplication(liealg.filiform4())
    raise GroupError(f"unknown group {name!r}")
