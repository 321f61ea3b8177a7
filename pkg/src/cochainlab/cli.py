"""Command-line interface.

Subcommands:
  verify          run the verification suite for a registered instance
  ve              apply the differentiation map to a group-cochain expression
  integrate       apply the integration map to a Lie-algebra cochain expression
  list-instances  print the registered instance names

Expressions follow the grammar
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/\\') factor)*
  factor := rational | var | 'e'<i> | 'd'<var> | factor '^' int | '(' expr ')'
with variables g<i>_<j>, m<i>_<j>, y_<j>, t<i>, x, x_<j>.  Exit codes:
0 success, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .forms import Chart, PolyForm
from .liealg import CEElement, LieAlgebra
from .polyalg import MultiPoly, canonical_vars, format_rat, to_string, var_key

REPORT_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Expression parser


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UnknownVariable(ParseError):
    pass


_VAR_NAME = re.compile(r"(?:[gm]\d+_\d+|y_\d+|t\d+|x(?:_\d+)?)\Z")

_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>\d+(?:/(?=\d)\d+)?)
    | (?P<wedge>/\\)
    | (?P<name>[A-Za-z][A-Za-z0-9_]*)
    | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line, col))
        nl = value.count("\n")
        if nl:
            line += nl
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


# A parsed value is a dict mapping tuples of atoms to MultiPoly coefficients.
# Atoms are ("e", i) for dual-basis covectors or ("d", var) for coordinate
# differentials; the empty tuple holds the scalar part.
Value = Dict[Tuple, MultiPoly]


def _scalar(p: MultiPoly) -> Value:
    return {(): p}


def _vadd(a: Value, b: Value) -> Value:
    out = dict(a)
    for key, poly in b.items():
        cur = out.get(key)
        out[key] = poly if cur is None else cur + poly
    return {k: v for k, v in out.items() if not v.is_zero()}


def _vneg(a: Value) -> Value:
    return {k: -v for k, v in a.items()}


def _vmul(a: Value, b: Value, line: int, col: int) -> Value:
    out: Value = {}
    for ka, pa in a.items():
        for kb, pb in b.items():
            key = ka + kb
            if len({atom for atom in key}) != len(key):
                continue  # repeated covector wedges to zero
            coef = pa * pb
            cur = out.get(key)
            out[key] = coef if cur is None else cur + coef
    return {k: v for k, v in out.items() if not v.is_zero()}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None, cls=ParseError):
        tok = tok if tok is not None else self.peek()
        raise cls(message, tok[2], tok[3])

    def parse(self) -> Value:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self) -> Value:
        tok = self.peek()
        negate = False
        if tok[0] == "op" and tok[1] in "+-":
            self.next()
            negate = tok[1] == "-"
        value = self.term()
        if negate:
            value = _vneg(value)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.next()
                rhs = self.term()
                value = _vadd(value, _vneg(rhs) if tok[1] == "-" else rhs)
            else:
                return value

    def term(self) -> Value:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*" or tok[0] == "wedge":
                self.next()
                value = _vmul(value, self.factor(), tok[2], tok[3])
            else:
                return value

    def factor(self) -> Value:
        value = self.atom()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "^":
                self.next()
                etok = self.next()
                if etok[0] != "number" or "/" in etok[1]:
                    self.error("exponent must be a nonnegative integer", etok)
                if set(value) != {()}:
                    self.error("only scalars can be raised to a power", tok)
                value = _scalar(value[()] ** int(etok[1]))
            else:
                return value

    def atom(self) -> Value:
        tok = self.next()
        kind, text = tok[0], tok[1]
        if kind == "number":
            return _scalar(MultiPoly.const(Fraction(text)))
        if kind == "op" and text == "(":
            value = self.expr()
            close = self.next()
            if not (close[0] == "op" and close[1] == ")"):
                self.error("expected ')'", close)
            return value
        if kind == "name":
            m = re.fullmatch(r"e(\d+)", text)
            if m:
                return {(("e", int(m.group(1)) - 1),): MultiPoly.const(1)}
            if text.startswith("d") and _VAR_NAME.match(text[1:]):
                return {(("d", text[1:]),): MultiPoly.const(1)}
            if _VAR_NAME.match(text):
                return _scalar(MultiPoly.var(text))
            self.error(f"unknown variable {text!r}", tok, UnknownVariable)
        self.error(f"unexpected {text!r}" if text else "unexpected end of input", tok)


def _sort_atoms(key: Tuple, order) -> Tuple[Optional[Tuple], int]:
    """Sort atoms into canonical order with the permutation sign; None for a
    repeated atom."""
    ranked = sorted(range(len(key)), key=lambda i: order(key[i]))
    sorted_key = tuple(key[i] for i in ranked)
    if any(a == b for a, b in zip(sorted_key, sorted_key[1:])):
        return None, 0
    sign = 1
    perm = list(ranked)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sorted_key, sign


def parse_expr(text: str, algebra: Optional[LieAlgebra] = None):
    """Parse an expression to a MultiPoly, PolyForm, or CEElement.

    CE dual-basis atoms e<i> require ``algebra``; coordinate differentials
    d<var> produce a PolyForm on the chart spanned by the variables that
    appear."""
    value = _Parser(text).parse()
    kinds = {atom[0] for key in value for atom in key}
    if not value:
        return MultiPoly.zero()
    if len(kinds) > 1:
        raise ParseError("cannot mix e-atoms and d-atoms", 1, 1)
    if not kinds:
        return value[()]
    degrees = {len(key) for key in value}
    if len(degrees) > 1:
        raise ParseError("expression is not homogeneous", 1, 1)
    degree = degrees.pop()
    if kinds == {"e"}:
        if algebra is None:
            raise ParseError("dual-basis atoms need a Lie algebra context", 1, 1)
        comps: Dict[Tuple[int, ...], List[Fraction]] = {}
        for key, poly in value.items():
            if poly.support():
                raise ParseError("CE coefficients must be rational constants", 1, 1)
            idx = tuple(atom[1] for atom in key)
            if any(i < 0 or i >= algebra.dim for i in idx):
                raise UnknownVariable("covector index out of range", 1, 1)
            sidx, sign = _sort_atoms(
                tuple(("e", i) for i in idx), lambda a: a[1]
            )
            if sidx is None:
                continue
            coef = Fraction(poly.constant_value()) * sign
            tgt = tuple(a[1] for a in sidx)
            comps[tgt] = [comps.get(tgt, [Fraction(0)])[0] + coef]
        return CEElement(algebra, None, degree, comps)
    # d-atoms: build a form on the chart of all appearing variables
    coords = canonical_vars(
        {atom[1] for key in value for atom in key}
        | {v for poly in value.values() for v in poly.support()}
    )
    chart = Chart(coords)
    pos = {name: i for i, name in enumerate(coords)}
    fcomps: Dict[Tuple[int, ...], MultiPoly] = {}
    for key, poly in value.items():
        sidx, sign = _sort_atoms(key, lambda a: var_key(a[1]))
        if sidx is None:
            continue
        idx = tuple(pos[a[1]] for a in sidx)
        cur = fcomps.get(idx)
        term = poly * sign
        fcomps[idx] = term if cur is None else cur + term
    return PolyForm(chart, degree, fcomps)


# ---------------------------------------------------------------------------
# Serializers (inverse to the parser on canonical forms)


def ce_to_string(alpha: CEElement) -> str:
    """Serialize a CE element with rational coefficients as a sum of wedge
    monomials, e.g. ``e1/\\e2``."""
    if alpha.rep.dim != 1:
        raise ValueError("only scalar-coefficient CE elements serialize to text")
    if alpha.is_zero():
        return "0"
    chunks = []
    for idx in sorted(alpha.comps):
        coef = alpha.comps[idx][0]
        body = "/\\".join(f"e{i + 1}" for i in idx)
        if not body:
            body = format_rat(abs(coef))
        elif abs(coef) != 1:
            body = f"{format_rat(abs(coef))}*{body}"
        if not chunks:
            chunks.append(body if coef > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(chunks)


def form_to_string(form: PolyForm) -> str:
    if form.degree == 0:
        return to_string(form.coefficient(()))
    chunks = []
    any_term = False
    for idx in combinations(range(len(form.chart.coords)), form.degree):
        coef = form.coefficient(idx)
        if coef.is_zero():
            continue
        any_term = True
        body = "/\\".join(f"d{form.chart.coords[i]}" for i in idx)
        chunks.append(f"({to_string(coef)})*{body}")
    if not any_term:
        return "0"
    return " + ".join(chunks)


# ---------------------------------------------------------------------------
# Instances


@dataclass
class RunConfig:
    instance: str
    max_p: int = 3
    max_deg: int = 2
    trials: int = 25
    seed: int = 0
    report: Optional[str] = None
    coeff_rep: str = "trivial"

    def __post_init__(self):
        if self.max_p < 0 or self.max_deg < 0 or self.trials <= 0:
            raise ValueError("bounds must be positive")
        if self.instance not in instance_names():
            raise ValueError(f"unknown instance {self.instance!r}")


def instance_names() -> List[str]:
    from .nilgroup import registered_groups

    return (
        ["matrix"]
        + registered_groups()
        + ["pair-r1", "pair-r2", "pair-r3", "cech-circle3"]
    )


# Checks that are REQUIRED to fail (with a stored witness): the good-cover
# homotopy of the circle instance violates the side conditions.
EXPECTED_FAIL = {"cech-circle3": ("side_hk", "side_pk")}


def _group_rep(group, coeff_rep: str):
    from .nilgroup import trivial_poly_rep
    from .vanest import standard_poly_rep

    if coeff_rep == "trivial":
        return trivial_poly_rep(group)
    if coeff_rep == "standard":
        return standard_poly_rep(group)
    raise ValueError(f"unknown coefficient representation {coeff_rep!r}")


def _pair_suite(n: int, config: RunConfig) -> List[dict]:
    """Verification suite for the pair-groupoid maps on coordinate n-space."""
    from .pairgpd import ASCochain, as_delta, pair_r, pair_ve

    rng = random.Random(config.seed)
    name = f"pair:r{n}"
    reports: List[dict] = []

    def entry(check, p, ok, witness=None):
        rec = {
            "instance": name,
            "check": check,
            "bidegree": [p, 0],
            "status": "pass" if ok else "fail",
            "seed": config.seed,
        }
        if not ok and witness is not None:
            rec["counterexample"] = witness
        reports.append(rec)

    base = [f"x_{j}" for j in range(1, n + 1)]
    for p in range(min(config.max_p, n) + 1):
        for _ in range(config.trials):
            # random monomial p-form
            idx = tuple(sorted(rng.sample(range(n), p)))
            poly = MultiPoly.const(rng.choice((-2, -1, 1, 2)))
            for _e in range(rng.randrange(config.max_deg + 1)):
                poly = poly * MultiPoly.var(rng.choice(base))
            chart = Chart(tuple(base))
            alpha = PolyForm(chart, p, {idx: poly})
            back = pair_ve(pair_r(n, alpha))
            entry("pair_ve_pair_r_identity", p, (back - alpha).is_zero(),
                  form_to_string(alpha))

            # delta^2 = 0 on random decomposable cochains
            factors = []
            for _s in range(p + 1):
                f = MultiPoly.const(rng.choice((-1, 1, 2)))
                for _e in range(rng.randrange(config.max_deg + 1)):
                    f = f * MultiPoly.var(rng.choice(base))
                factors.append(f)
            c = ASCochain.decomposable(n, factors)
            entry("delta_squared", p, as_delta(as_delta(c)).is_zero(), repr(c))

            # differentiation of a decomposable is f0 df1 ^ ... ^ dfp
            from .forms import exterior_d, wedge

            expected = PolyForm(chart, 0, {(): factors[0]})
            for f in factors[1:]:
                expected = wedge(expected, exterior_d(PolyForm(chart, 0, {(): f})))
            entry("ve_decomposable", p, (pair_ve(c) - expected).is_zero(), repr(c))
    return reports


def run_verify(config: RunConfig) -> Tuple[int, dict]:
    """Run the verification suite for the configured instance; returns
    (exit code, JSON-ready report)."""
    from .perturb import matrix_instance, verify_instance

    name = config.instance
    if name == "matrix":
        inst = matrix_instance(config.seed, max_p=min(config.max_p, 3))
        checks = verify_instance(inst, seed=config.seed, trials=config.trials)
    elif name.startswith("pair-r"):
        checks = _pair_suite(int(name[len("pair-r"):]), config)
    elif name == "cech-circle3":
        from .cech_derham import cech_instance

        inst = cech_instance()
        checks = verify_instance(inst, seed=config.seed, trials=config.trials)
    else:
        from .nilgroup import build_group
        from .vanest import build_double_complex

        group = build_group(name)
        inst = build_double_complex(
            group,
            _group_rep(group, config.coeff_rep),
            max_p=config.max_p,
            sample_deg=config.max_deg,
        )
        checks = verify_instance(inst, seed=config.seed, trials=config.trials)

    expected_fail = EXPECTED_FAIL.get(name, ())
    unexpected = 0
    witnessed = {check: 0 for check in expected_fail}
    for rec in checks:
        if rec["check"] in expected_fail:
            if rec["status"] == "fail":
                if "counterexample" in rec:
                    rec["status"] = "expected-fail"
                    witnessed[rec["check"]] += 1
                else:
                    unexpected += 1
        elif rec["status"] == "fail":
            unexpected += 1
    missing_witness = [c for c, k in witnessed.items() if k == 0]
    code = 1 if unexpected or missing_witness else 0

    report = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": "verify",
        "config": {
            "instance": config.instance,
            "max_p": config.max_p,
            "max_deg": config.max_deg,
            "trials": config.trials,
            "seed": config.seed,
            "coeff_rep": config.coeff_rep,
        },
        "checks": checks,
        "summary": {
            "total": len(checks),
            "passed": sum(1 for r in checks if r["status"] == "pass"),
            "expected_failures": sum(
                1 for r in checks if r["status"] == "expected-fail"
            ),
            "unexpected_failures": unexpected,
            "expected_fail_checks_without_witness": missing_witness,
        },
        "exit_code": code,
    }
    return code, report


# ---------------------------------------------------------------------------
# VE / R application


def _cochain_degree(poly: MultiPoly) -> int:
    degree = 0
    for v in poly.support():
        m = re.fullmatch(r"g(\d+)_(\d+)", v)
        if m is None:
            raise ValueError(f"group cochains only use g<i>_<j> variables, got {v!r}")
        degree = max(degree, int(m.group(1)))
    return degree


def apply_map(config: RunConfig, map_name: str, text: str) -> str:
    """Apply the differentiation (``ve``) or integration (``integrate``)
    map to a parsed expression; returns the serialized exact result."""
    from .nilgroup import GroupCochain, build_group
    from .vanest import r_closed, ve_closed

    if config.coeff_rep != "trivial":
        raise ValueError("expression maps support trivial coefficients only")
    group = build_group(config.instance)
    if map_name == "ve":
        poly = parse_expr(text)
        if not isinstance(poly, MultiPoly):
            raise ValueError("differentiation input must be a polynomial cochain")
        f = GroupCochain.scalar(group, _cochain_degree(poly), poly)
        return ce_to_string(ve_closed(f))
    if map_name == "integrate":
        alpha = parse_expr(text, algebra=group.algebra)
        if isinstance(alpha, MultiPoly):
            alpha = CEElement(group.algebra, None, 0, {(): (alpha.constant_value(),)})
        if not isinstance(alpha, CEElement):
            raise ValueError("integration input must be a Lie-algebra cochain")
        result = r_closed(group, alpha)
        return to_string(result.values[0])
    raise ValueError(f"unknown map {map_name!r}")


# ---------------------------------------------------------------------------
# Entry point


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cochainlab",
        description="Exact verification of homotopy and van Est identities.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_instance=True):
        p.add_argument("--instance", required=need_instance)
        p.add_argument("--max-p", type=int, default=3)
        p.add_argument("--max-deg", type=int, default=2)
        p.add_argument("--trials", type=int, default=25)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--report", help="write the JSON report / result here")
        p.add_argument("--coeff-rep", default="trivial")

    common(sub.add_parser("verify", help="run an instance verification suite"))
    pv = sub.add_parser("ve", help="apply the differentiation map")
    pv.add_argument("input", help="expression file, or - for stdin")
    common(pv)
    pi = sub.add_parser("integrate", help="apply the integration map")
    pi.add_argument("input", help="expression file, or - for stdin")
    common(pi)
    sub.add_parser("list-instances", help="print registered instance names")
    return ap


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def main(argv: Optional[List[str]] = None) -> int:
    ap = _build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    if args.command == "list-instances":
        for name in instance_names():
            print(name)
        return 0

    try:
        config = RunConfig(
            instance=args.instance,
            max_p=args.max_p,
            max_deg=args.max_deg,
            trials=args.trials,
            seed=args.seed,
            report=args.report,
            coeff_rep=args.coeff_rep,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "verify":
        code, report = run_verify(config)
        payload = json.dumps(report, indent=2, default=str)
        if config.report:
            with open(config.report, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
        else:
            print(payload)
        return code

    try:
        text = _read_input(args.input)
        result = apply_map(config, args.command, text)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.report:
        with open(config.report, "w", encoding="utf-8") as fh:
            fh.write(result + "\n")
    else:
        print(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
