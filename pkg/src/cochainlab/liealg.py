"""Lie algebras from structure constants and the Chevalley-Eilenberg complex.

Structure constants are validated exactly (antisymmetry, Jacobi, declared
nilpotency class via the lower central series).  Cochain groups C^q(g, V)
are stored antisymmetrically as maps from increasing q-subsets of basis
indices to length-d rational vectors.

The differential follows the standard convention making
d theta^k = -1/2 c^k_ij theta^i ^ theta^j; the Maurer-Cartan consistency
test in the group module pins this against the group data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

Rat = Fraction
Vec = Tuple[Rat, ...]
Index = Tuple[int, ...]


class LieAlgebraError(ValueError):
    pass


class AntisymmetryViolation(LieAlgebraError):
    pass


class JacobiViolation(LieAlgebraError):
    pass


class NilpotencyClassWrong(LieAlgebraError):
    pass


def _rref(rows: List[List[Rat]]) -> List[List[Rat]]:
    """Reduced row echelon form over the rationals; drops zero rows."""
    rows = [list(r) for r in rows]
    pivot_cols = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r] if any(x != 0 for x in row)]


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra given by structure constants [e_i, e_j] = sum_k c[i][j][k] e_k.

    Indices are 0-based internally.  ``name`` is a registry label.
    Construct through :func:`validate_lie_algebra`.
    """

    name: str
    dim: int
    constants: Tuple[Tuple[Vec, ...], ...]
    nilpotency_class: int

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.constants[i][j]

    def bracket(self, u: Sequence, v: Sequence):
        """Bracket of coefficient vectors; works for Fractions and for any
        ring elements supporting + and * with Fractions (e.g. MultiPoly)."""
        n = self.dim
        out = [u[0] * 0 for _ in range(n)]
        for i in range(n):
            if _is_zero(u[i]):
                continue
            for j in range(n):
                if _is_zero(v[j]):
                    continue
                for k, c in enumerate(self.constants[i][j]):
                    if c != 0:
                        out[k] = out[k] + u[i] * v[j] * c
        return out


def _is_zero(x) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 0
    return x.is_zero()


def validate_lie_algebra(
    name: str,
    dim: int,
    brackets: Mapping[Tuple[int, int], Mapping[int, Union[int, Rat]]],
    nilpotency_class: Optional[int] = None,
) -> LieAlgebra:
    """Build and validate a LieAlgebra from sparse bracket data.

    ``brackets[(i, j)] = {k: c}`` declares [e_i, e_j] = sum c e_k (0-based).
    Antisymmetric completion is applied; conflicting declarations for (i, j)
    and (j, i) raise AntisymmetryViolation.  The Jacobi identity is checked
    exhaustively, and the declared nilpotency class (computed if omitted)
    is verified against the lower central series.
    """
    c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for (i, j), entry in brackets.items():
        for k, val in entry.items():
            c[i][j][k] = Fraction(val)
        seen.add((i, j))
    for (i, j) in list(seen):
        if (j, i) in seen:
            for k in range(dim):
                if c[i][j][k] != -c[j][i][k]:
                    raise AntisymmetryViolation(
                        f"c[{i}][{j}][{k}]={c[i][j][k]} but c[{j}][{i}][{k}]={c[j][i][k]}"
                    )
        else:
            for k in range(dim):
                c[j][i][k] = -c[i][j][k]
    for i in range(dim):
        for k in range(dim):
            if c[i][i][k] != 0:
                raise AntisymmetryViolation(f"[e_{i}, e_{i}] must vanish")

    constants = tuple(tuple(tuple(c[i][j]) for j in range(dim)) for i in range(dim))
    alg = object.__new__(LieAlgebra)
    object.__setattr__(alg, "name", name)
    object.__setattr__(alg, "dim", dim)
    object.__setattr__(alg, "constants", constants)

    # Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
    def basis(i):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                total = [Fraction(0)] * dim
                for (a, b, cc) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = alg.bracket(basis(b), basis(cc))
                    outer = alg.bracket(basis(a), inner)
                    total = [x + y for x, y in zip(total, outer)]
                if any(x != 0 for x in total):
                    raise JacobiViolation(f"Jacobi fails on ({i}, {j}, {k})")

    computed = _nilpotency_class(alg)
    if nilpotency_class is not None and computed != nilpotency_class:
        raise NilpotencyClassWrong(
            f"declared class {nilpotency_class}, lower central series gives {computed}"
        )
    object.__setattr__(alg, "nilpotency_class", computed)
    return alg


def _nilpotency_class(alg: LieAlgebra) -> int:
    """Length of the lower central series; 0 means not nilpotent (series
    stabilizes without reaching zero)."""
    n = alg.dim

    def basis(i):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        return v

    current = [basis(i) for i in range(n)]
    step = 1
    while current:
        nxt = []
        for i in range(n):
            for v in current:
                w = alg.bracket(basis(i), v)
                if any(x != 0 for x in w):
                    nxt.append(w)
        nxt = _rref(nxt)
        if len(nxt) >= len(_rref(current)) and nxt:
            return 0  # series stabilized at nonzero: not nilpotent
        current = nxt
        if not current:
            return step
        step += 1
    return step


# ---------------------------------------------------------------------------
# Representations


@dataclass(frozen=True)
class Representation:
    """Finite-dimensional representation by rational matrices rho(e_i)."""

    algebra: LieAlgebra
    dim: int
    matrices: Tuple[Tuple[Vec, ...], ...]  # matrices[i][row][col]

    def __post_init__(self):
        n = self.algebra.dim
        for i in range(n):
            for j in range(n):
                comm = _mat_sub(
                    _mat_mul(self.matrices[i], self.matrices[j]),
                    _mat_mul(self.matrices[j], self.matrices[i]),
                )
                expected = _mat_zero(self.dim)
                for k, c in enumerate(self.algebra.bracket_basis(i, j)):
                    if c != 0:
                        expected = _mat_add(expected, _mat_scale(self.matrices[k], c))
                if comm != expected:
                    raise LieAlgebraError(
                        f"rho([e_{i}, e_{j}]) != [rho(e_{i}), rho(e_{j})]"
                    )

    def act(self, i: int, vec: Sequence):
        """Apply rho(e_i) to a coefficient vector (entries in any ring
        module over the rationals)."""
        out = []
        for row in self.matrices[i]:
            acc = vec[0] * 0
            for c, v in zip(row, vec):
                if c != 0:
                    acc = acc + v * c
            out.append(acc)
        return out


def trivial_rep(alg: LieAlgebra) -> Representation:
    zero = ((Fraction(0),),)
    return Representation(alg, 1, tuple(zero for _ in range(alg.dim)))


def _mat_mul(a, b):
    n, m, l = len(a), len(b[0]), len(b)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(l)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def _mat_scale(a, c):
    return tuple(tuple(x * c for x in r) for r in a)


def _mat_zero(d):
    return tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg cochains


class CEElement:
    """Element of C^q(g, V): map from increasing q-subsets to V-vectors."""

    __slots__ = ("algebra", "rep", "degree", "comps")

    def __init__(
        self,
        algebra: LieAlgebra,
        rep: Optional[Representation],
        degree: int,
        comps: Mapping[Index, Sequence[Rat]],
    ):
        rep = rep if rep is not None else trivial_rep(algebra)
        clean: Dict[Index, Vec] = {}
        for idx, vec in comps.items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"index {idx} is not an increasing {degree}-subset")
            v = tuple(Fraction(x) for x in vec)
            if len(v) != rep.dim:
                raise ValueError("vector length must match representation dim")
            if any(x != 0 for x in v):
                clean[idx] = v
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CEElement is immutable")

    @staticmethod
    def zero(algebra, rep, degree) -> "CEElement":
        return CEElement(algebra, rep, degree, {})

    @staticmethod
    def basis(algebra, idx: Sequence[int], rep=None, slot: int = 0) -> "CEElement":
        """Dual-basis element e^{i1} ^ ... ^ e^{iq} (times the slot-th
        V-basis vector)."""
        rep = rep if rep is not None else trivial_rep(algebra)
        vec = [Fraction(0)] * rep.dim
        vec[slot] = Fraction(1)
        return CEElement(algebra, rep, len(idx), {tuple(idx): vec})

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, idx: Index) -> Vec:
        return self.comps.get(tuple(idx), tuple(Fraction(0) for _ in range(self.rep.dim)))

    def __add__(self, other: "CEElement") -> "CEElement":
        out = dict(self.comps)
        for idx, vec in other.comps.items():
            cur = out.get(idx)
            out[idx] = vec if cur is None else tuple(a + b for a, b in zip(cur, vec))
        return CEElement(self.algebra, self.rep, self.degree, out)

    def __neg__(self) -> "CEElement":
        return CEElement(
            self.algebra,
            self.rep,
            self.degree,
            {i: tuple(-x for x in v) for i, v in self.comps.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "CEElement":
        c = Fraction(scalar)
        return CEElement(
            self.algebra,
            self.rep,
            self.degree,
            {i: tuple(x * c for x in v) for i, v in self.comps.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CEElement):
            return NotImplemented
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        raise TypeError("CEElement is unhashable")

    def __repr__(self):
        return f"CEElement(deg={self.degree}, comps={self.comps})"


def insert_index(idx: Index, k: int) -> Tuple[Optional[Index], int]:
    """Insert k into an increasing tuple; returns (new tuple, sign) or
    (None, 0) if k already occurs."""
    if k in idx:
        return None, 0
    pos = sum(1 for i in idx if i < k)
    return idx[:pos] + (k,) + idx[pos:], (-1) ** pos


def ce_diff_comps(alg: LieAlgebra, degree: int, comps: Mapping, action) -> Dict[Index, list]:
    """Chevalley-Eilenberg differential on raw component maps.

    Coefficient-agnostic: works for any vectors supporting + and * by a
    Fraction (rational vectors, MultiPoly vectors).  ``action(i, vec)``
    applies the generator e_i to a coefficient vector.
    """
    out: Dict[Index, list] = {}
    for J in combinations(range(alg.dim), degree + 1):
        total = None
        # sum_a (-1)^a e_{j_a} . alpha(J \ j_a)
        for a, ja in enumerate(J):
            rest = J[:a] + J[a + 1 :]
            vec = comps.get(rest)
            if vec is None:
                continue
            acted = action(ja, vec)
            sgn = (-1) ** a
            term = [x * sgn for x in acted] if sgn == -1 else list(acted)
            total = term if total is None else [x + y for x, y in zip(total, term)]
        # sum_{a<b} (-1)^{a+b} alpha([e_{j_a}, e_{j_b}] ^ rest)
        for a in range(len(J)):
            for b in range(a + 1, len(J)):
                rest = tuple(J[x] for x in range(len(J)) if x not in (a, b))
                for k, c in enumerate(alg.bracket_basis(J[a], J[b])):
                    if c == 0:
                        continue
                    ins, sgn_ins = insert_index(rest, k)
                    if ins is None:
                        continue
                    vec = comps.get(ins)
                    if vec is None:
                        continue
                    sgn = ((-1) ** (a + b)) * sgn_ins
                    term = [x * (c * sgn) for x in vec]
                    total = term if total is None else [
                        x + y for x, y in zip(total, term)
                    ]
        if total is not None:
            out[J] = total
    return out


def ce_diff(alpha: CEElement, action=None) -> CEElement:
    """Chevalley-Eilenberg differential.

    ``action(i, vec) -> vec`` applies the generator e_i to a coefficient
    vector; defaults to the matrix action of alpha's representation.
    """
    if action is None:
        action = alpha.rep.act
    out = ce_diff_comps(alpha.algebra, alpha.degree, alpha.comps, action)
    return CEElement(alpha.algebra, alpha.rep, alpha.degree + 1, out)


def ce_contract(alpha: CEElement, xi: Sequence[Rat]) -> CEElement:
    """Contraction with the algebra vector xi = sum xi_i e_i."""
    if alpha.degree == 0:
        return CEElement.zero(alpha.algebra, alpha.rep, 0)
    out: Dict[Index, list] = {}
    for idx, vec in alpha.comps.items():
        for pos, i in enumerate(idx):
            c = Fraction(xi[i])
            if c == 0:
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            sgn = (-1) ** pos
            term = [x * (c * sgn) for x in vec]
            cur = out.get(rest)
            out[rest] = term if cur is None else [a + b for a, b in zip(cur, term)]
    return CEElement(alpha.algebra, alpha.rep, alpha.degree - 1, out)


def ce_lie_derivative(alpha: CEElement, xi: Sequence[Rat], action=None) -> CEElement:
    """L_xi = d i_xi + i_xi d."""
    return ce_diff(ce_contract(alpha, xi), action) + ce_contract(
        ce_diff(alpha, action), xi
    )


# ---------------------------------------------------------------------------
# Registry of standard algebras


def abelian(n: int) -> LieAlgebra:
    return validate_lie_algebra(f"abelian-{n}", n, {}, nilpotency_class=1)


def heisenberg3() -> LieAlgebra:
    # [e1, e2] = e3
    return validate_lie_algebra(
        "heisenberg3", 3, {(0, 1): {2: 1}}, nilpotency_class=2
    )


def filiform4() -> LieAlgebra:
    # [e1, e2] = e3, [e1, e3] = e4
    return validate_lie_algebra(
        "filiform4", 4, {(0, 1): {2: 1}, (0, 2): {3: 1}}, nilpotency_class=3
    )
