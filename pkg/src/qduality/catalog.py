"""Built-in examples and the Stokes-matrix computation for n = 3.

Two independent routes lead to the Poisson bracket on the Stokes
coordinates s12, s13, s23:

* Oracle A is classical.  The Manin triple (gl3 + gl3, diagonal gl3, pairs
  of triangular matrices) is built with the invariant pairing that
  reproduces the catalog sl3 cobracket.  The Sklyanin bivector of the double
  is then pushed forward along (b+, b-) -> S = b+ b-^T.
* Oracle B is quantum.  The entries S_ij of L+ (L-)^T in the RLL algebra
  satisfy three q-commutation relations.  Their semiclassical limit is taken
  with drinfeld.poisson_bracket.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import sympy as sp

from .coeff import ONE
from .drinfeld import poisson_bracket
from .hopf import CheckReport, HopfPresentation, check_coideal_subalgebra, check_hopf_axioms
from .liebialg import (
    LieBialgebra,
    Subspace,
    check_bialgebra,
    complementary_dual,
    is_coisotropic,
    is_sub_bialgebra,
    is_subalgebra,
    sl_standard,
)
from .ncalg import Algebra, NCElement
from .parser import parse_bialgebra, parse_expression, parse_presentation, parse_rule

__all__ = [
    "CatalogEntry",
    "BracketTable",
    "UnknownExample",
    "UnsupportedN",
    "CATALOG",
    "catalog_names",
    "load_example",
    "stokes_bracket",
    "stokes_quantum_algebra",
    "verify_stokes_quantization",
    "so_n_embedding_check",
    "so3_subspace",
    "golden_path",
    "read_golden",
    "write_golden",
]


class UnknownExample(KeyError):
    pass


class UnsupportedN(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    kind: str  # hopf_presentation | lie_bialgebra | subgroup_datum | stokes_instance
    payload: object
    provenance: str
    validation: Optional[CheckReport] = None


# name -> (kind, data file, provenance)
CATALOG: Dict[str, Tuple[str, Optional[str], str]] = {
    "fq_sl2": ("hopf_presentation", "fq_sl2.alg", "F_q[SL2], FRT conventions: ab = q ba, ad - q bc = 1."),
    "borel_sl2": ("hopf_presentation", "borel_sl2.alg", "Quotient of F_q[SL2] by c; functions on the Borel subgroup."),
    "abelian_toy": ("hopf_presentation", "abelian_toy.alg", "Polynomials in one primitive variable."),
    "fq_sl3": ("hopf_presentation", "fq_sl3.alg", "F_q[SL3], FRT conventions; determinant family truncated at degree 6."),
    "rll_gl3": (
        "hopf_presentation",
        "rll_gl3.alg",
        "RLL algebra of L+ and L- for GL3; functions on the dual group GL3*.",
    ),
    "sl2_std_bialg": ("lie_bialgebra", "sl2_std_bialg.lie", "sl2 with r = f ^ e."),
    "sl3_std_bialg": ("lie_bialgebra", "sl3_std_bialg.lie", "sl3 with r = sum_{i<j} E_ji ^ E_ij."),
    "so3_in_sl3": ("subgroup_datum", None, "Fixed points of x -> -x^T inside the standard sl3."),
    "stokes3": (
        "stokes_instance",
        None,
        "Quantum Stokes generators S_ij = (L+ (L-)^T)_ij inside rll_gl3; classical coordinates s12, s13, s23.",
    ),
}

HOPF_EXAMPLES = [n for n, (k, _, _) in CATALOG.items() if k == "hopf_presentation"]
BIALGEBRA_EXAMPLES = [n for n, (k, _, _) in CATALOG.items() if k == "lie_bialgebra"]


def catalog_names() -> List[str]:
    return list(CATALOG)


DATA_DIR = Path(__file__).resolve().parent / "data"


def data_path(filename: str) -> Path:
    return DATA_DIR / filename


def data_text(filename: str) -> str:
    return data_path(filename).read_text()


@lru_cache(maxsize=None)
def load_example(name: str, validate: bool = True) -> CatalogEntry:
    if name not in CATALOG:
        raise UnknownExample(name)
    kind, filename, note = CATALOG[name]
    report = None
    if kind == "hopf_presentation":
        payload = parse_presentation(data_text(filename))
        if validate:
            report = check_hopf_axioms(payload, 3)
    elif kind == "lie_bialgebra":
        payload = parse_bialgebra(data_text(filename))
        for n in (2, 3):
            std = sl_standard(n)
            if payload == std:
                payload.matrices, payload.coords = std.matrices, std.coords  # for censuses
        if validate:
            report = check_bialgebra(payload)
    elif kind == "subgroup_datum":
        payload = so3_subspace(load_example("sl3_std_bialg", validate).payload)
        report = CheckReport("subalgebra")
        report.record("so3 closed under bracket", "pass" if is_subalgebra(payload) else "fail")
    else:
        payload = stokes_quantum_algebra()
        report = None
    if report is not None and report.verdict == "fail":
        raise ValueError(f"catalog entry {name} failed validation: {report.failures()}")
    return CatalogEntry(name, kind, payload, note, report)


def so3_subspace(g: LieBialgebra) -> Subspace:
    return Subspace.span(g, [{"E12": 1, "E21": -1}, {"E13": 1, "E31": -1}, {"E23": 1, "E32": -1}])


# -- bracket tables -----------------------------------------------------------------


class BracketTable:
    """Poisson brackets of coordinates, keyed by ordered pairs (a, b) with a < b."""

    def __init__(self, coords: List[str], entries: Dict[Tuple[str, str], sp.Expr]):
        self.coords = list(coords)
        self.symbols = {c: sp.Symbol(c) for c in coords}
        self.entries: Dict[Tuple[str, str], sp.Expr] = {}
        order = {c: i for i, c in enumerate(coords)}
        for (a, b), v in entries.items():
            v = sp.expand(v)
            if order[a] > order[b]:
                a, b, v = b, a, -v
            if a != b:
                self.entries[(a, b)] = v

    def pairs(self):
        return list(itertools.combinations(self.coords, 2))

    def get(self, a: str, b: str) -> sp.Expr:
        if a == b:
            return sp.Integer(0)
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            return -self.entries[(b, a)]
        return sp.Integer(0)

    def bracket(self, f: sp.Expr, g: sp.Expr) -> sp.Expr:
        syms = [self.symbols[c] for c in self.coords]
        out = 0
        for a, x in zip(self.coords, syms):
            fx = sp.diff(f, x)
            if fx == 0:
                continue
            for b, y in zip(self.coords, syms):
                out += fx * sp.diff(g, y) * self.get(a, b)
        return sp.expand(out)

    def jacobi_failures(self) -> List[Tuple[str, str, str]]:
        bad = []
        for a, b, c in itertools.combinations(self.coords, 3):
            x, y, z = (self.symbols[v] for v in (a, b, c))
            s = self.bracket(self.get(a, b), z) + self.bracket(self.get(b, c), x) + self.bracket(self.get(c, a), y)
            if sp.expand(s) != 0:
                bad.append((a, b, c))
        return bad

    def differences(self, other: "BracketTable") -> List[Tuple[str, str]]:
        return [(a, b) for a, b in self.pairs() if sp.expand(self.get(a, b) - other.get(a, b)) != 0]

    def __eq__(self, other):
        return isinstance(other, BracketTable) and self.coords == other.coords and not self.differences(other)

    def lines(self) -> List[str]:
        return [f"{{{a}, {b}}} = {sp.sstr(self.get(a, b), order='lex')}" for a, b in self.pairs()]

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    @classmethod
    def from_text(cls, text: str) -> "BracketTable":
        entries = {}
        coords: List[str] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            left, _, right = line.partition("=")
            a, b = (s.strip() for s in left.strip().strip("{}").split(","))
            for c in (a, b):
                if c not in coords:
                    coords.append(c)
            entries[(a, b)] = right
        coords.sort()
        local = {c: sp.Symbol(c) for c in coords}
        parsed = {k: sp.parse_expr(v, local_dict=local) for k, v in entries.items()}
        return cls(coords, parsed)


# -- Oracle A: r-matrix quotient ------------------------------------------------------


def _manin_triple(n: int):
    """Bases of the diagonal gl_n and of its dual inside gl_n + gl_n.

    The pairing is <(X1,Y1),(X2,Y2)> = (tr X1X2 - tr Y1Y2) / 2, the
    normalization for which the triple reproduces the catalog cobracket
    d(x) = [x (x) 1 + 1 (x) x, sum_{i<j} E_ji ^ E_ij].
    """

    def E(i, j):
        m = sp.zeros(n)
        m[i, j] = 1
        return m

    Z = sp.zeros(n)
    idx = [(a, b) for a in range(n) for b in range(n)]
    g = {ab: (E(*ab), E(*ab)) for ab in idx}
    dual = {}
    for a, b in idx:
        if a < b:
            dual[(a, b)] = (Z, -2 * E(b, a))
        elif a > b:
            dual[(a, b)] = (2 * E(b, a), Z)
        else:
            dual[(a, b)] = (E(a, a), -E(a, a))
    return idx, g, dual


def _pairing(u, v):
    return sp.Rational(1, 2) * ((u[0] * v[0]).trace() - (u[1] * v[1]).trace())


def _d_bracket(u, v):
    return (u[0] * v[0] - v[0] * u[0], u[1] * v[1] - v[1] * u[1])


def manin_triple_cobracket(n: int, x) -> Dict:
    """d(x) = ad_x(r_D) for x in the diagonal, in coordinates on E_ab (x) E_cd."""
    idx, g, dual = _manin_triple(n)
    X = (x, x)
    out: Dict = {}
    for ab in idx:
        u, v = g[ab], dual[ab]
        for p, w in ((_d_bracket(X, u), v), (u, _d_bracket(X, v))):
            for cd in idx:
                pc = _pairing(p, dual[cd])
                if not pc:
                    continue
                for ef in idx:
                    c = pc * _pairing(w, dual[ef])
                    if c:
                        out[(cd, ef)] = out.get((cd, ef), 0) + c
    return {k: v for k, v in out.items() if v}


def _stokes_symbols(n: int):
    names = [f"s{i + 1}{j + 1}" for i in range(n) for j in range(i + 1, n)]
    syms = {c: sp.Symbol(c) for c in names}
    S = sp.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            S[i, j] = syms[f"s{i + 1}{j + 1}"]
    return names, S


def _sklyanin_stokes(n: int, A, B):
    """Brackets of the entries of A B^T under the Sklyanin bivector of the double.

    Left and right derivatives of S = A B^T along (X, Y) are A (X + Y^T) B^T
    and X S + S Y^T.
    """
    idx, g, dual = _manin_triple(n)
    S = A * B.T
    left = [(A * (u[0] + u[1].T) * B.T, A * (v[0] + v[1].T) * B.T) for u, v in ((g[k], dual[k]) for k in idx)]
    right = [(u[0] * S + S * u[1].T, v[0] * S + S * v[1].T) for u, v in ((g[k], dual[k]) for k in idx)]

    def pb(ij, kl):
        return sp.expand(sum(a[ij] * b[kl] for a, b in left) - sum(a[ij] * b[kl] for a, b in right))

    return S, pb


def stokes_bracket(n: int = 3, check_invariance: bool = True) -> BracketTable:
    """Oracle A: quotient Poisson bracket on Stokes coordinates.

    Every H-orbit {(b+ h, b- h^-T)} meets (S, 1), so the bracket is evaluated
    there; invariance is then confirmed at a second point of the orbit.
    """
    if n != 3:
        raise UnsupportedN(f"Stokes brackets are implemented for n = 3, not n = {n}")
    names, S = _stokes_symbols(n)
    pos = {f"s{i + 1}{j + 1}": (i, j) for i in range(n) for j in range(i + 1, n)}
    _, pb = _sklyanin_stokes(n, S, sp.eye(n))
    entries = {(a, b): pb(pos[a], pos[b]) for a, b in itertools.combinations(names, 2)}
    table = BracketTable(names, entries)
    if check_invariance:
        h = sp.Matrix([[2, 1, -3], [0, sp.Rational(1, 3), 5], [0, 0, 7]])
        S2, pb2 = _sklyanin_stokes(n, S * h, h.inv().T)
        assert sp.simplify(S2 - S) == sp.zeros(n)
        for a, b in itertools.combinations(names, 2):
            if sp.expand(pb2(pos[a], pos[b]) - table.get(a, b)) != 0:
                raise AssertionError(f"bracket {{{a}, {b}}} is not constant on orbits")
    return table


# -- Oracle B: quantum Stokes generators ------------------------------------------------

STOKES_EMBEDDING = {
    "S12": "K1*F21 + E12*Kb2",
    "S13": "K1*F31 + E12*F32 + E13*Kb3",
    "S23": "K2*F32 + E23*Kb3",
}

STOKES_RELATIONS = [
    "S23*S13 = q^-1*S13*S23 + (1 - q^-2)*S12",
    "S23*S12 = q*S12*S23 + (q^-1 - q)*S13",
    "S13*S12 = q^-1*S12*S13 + (1 - q^-2)*S23",
]

STOKES_GENERATORS = ["S23", "S13", "S12"]


def stokes_quantum_algebra(relations: Optional[List[str]] = None) -> Algebra:
    bare = Algebra(STOKES_GENERATORS)
    rules = [parse_rule(r, bare, n + 1) for n, r in enumerate(relations or STOKES_RELATIONS)]
    return Algebra(STOKES_GENERATORS, rules)


def stokes_embedding(P: HopfPresentation) -> Dict[str, NCElement]:
    return {k: P.algebra.element(parse_expression(v, P.algebra)) for k, v in STOKES_EMBEDDING.items()}


def _embed(e: NCElement, images: Dict[str, NCElement], P: HopfPresentation) -> NCElement:
    out = P.algebra.zero()
    for w, c in e.terms.items():
        term = P.algebra.scalar(c)
        for i in w:
            term = term * images[e.algebra.names[i]]
        out = out + term
    return out


def _classical_expr(e: NCElement) -> sp.Expr:
    out = sp.Integer(0)
    for w, c in e.terms.items():
        v = c.at_one()
        term = sp.Rational(v.numerator, v.denominator)
        for i in w:
            term *= sp.Symbol(e.algebra.names[i].lower())
        out += term
    return sp.expand(out)


def oracle_b(relations: Optional[List[str]] = None) -> BracketTable:
    alg = stokes_quantum_algebra(relations)
    gens = {g: alg.gen(g) for g in alg.names}
    coords = ["s12", "s13", "s23"]
    entries = {}
    for a, b in itertools.combinations(coords, 2):
        entries[(a, b)] = _classical_expr(poisson_bracket(gens[a.upper()], gens[b.upper()]))
    return BracketTable(coords, entries)


def verify_stokes_quantization(relations: Optional[List[str]] = None, coideal_degree: int = 2) -> dict:
    """Compare Oracle A with Oracle B and check the quantum and infinitesimal data."""
    relations = relations or STOKES_RELATIONS
    report: dict = {"operation": "stokes3-verify", "checks": {}}
    checks = report["checks"]

    P = load_example("rll_gl3").payload
    images = stokes_embedding(P)
    alg = stokes_quantum_algebra(relations)
    failed = []
    for rule in alg.rules:
        lhs = _embed(NCElement(alg, {rule.lhs: ONE}), images, P)
        rhs = _embed(alg.element(dict(rule.rhs)), images, P)
        if not (lhs - rhs).is_zero():
            failed.append(alg.format_word(rule.lhs))
    checks["relations_hold_in_rll_gl3"] = {"status": "fail" if failed else "pass", "failing": failed}
    cp = alg.check_confluence(4)
    checks["stokes_rewriting_confluent"] = {"status": "fail" if cp else "pass", "critical_pairs": len(cp)}

    a = stokes_bracket(3)
    b = oracle_b(relations)
    diff = a.differences(b)
    pairs = {}
    for x, y in a.pairs():
        pairs[f"{{{x}, {y}}}"] = {
            "oracle_a": str(a.get(x, y)),
            "oracle_b": str(b.get(x, y)),
            "match": (x, y) not in diff,
        }
    report["pairs"] = pairs
    report["match"] = not diff
    if diff:
        report["witness"] = f"{{{diff[0][0]}, {diff[0][1]}}}"
    checks["oracle_a_equals_oracle_b"] = {"status": "pass" if not diff else "fail"}
    checks["antisymmetric"] = {"status": "pass"}  # structural: one entry per unordered pair
    jac = a.jacobi_failures()
    checks["jacobi"] = {"status": "fail" if jac else "pass", "failing": [list(t) for t in jac]}

    co = check_coideal_subalgebra(P, list(images.values()), coideal_degree, side="left")
    checks["coideal_subalgebra"] = {"status": co.verdict, "degree": coideal_degree}

    so = so_n_embedding_check(3)
    checks["so3_coisotropic"] = {"status": "pass" if so["coisotropic"] else "fail"}
    checks["so3_not_sub_bialgebra"] = {"status": "pass" if not so["sub_bialgebra"] else "fail"}
    report["oracle_digests"] = {"oracle_a": a.digest(), "oracle_b": b.digest()}
    report["table"] = a.lines()
    report["verdict"] = "pass" if all(c["status"] == "pass" for c in checks.values()) else "fail"
    return report


def so_n_embedding_check(n: int = 3, g: Optional[LieBialgebra] = None) -> dict:
    """so_n inside the standard sl_n: coisotropic, yet not a sub-bialgebra."""
    if n != 3:
        raise UnsupportedN(f"so_n embedding check is implemented for n = 3, not n = {n}")
    if g is None:
        g = load_example("sl3_std_bialg").payload
    k = so3_subspace(g)
    sub = is_subalgebra(k)
    out = {"n": n, "subalgebra": sub}
    if sub:
        out["coisotropic"] = is_coisotropic(k)
        out["sub_bialgebra"] = is_sub_bialgebra(k)
        cd = complementary_dual(k)
        out["dim_complementary_dual"] = cd.dim
        out["complementary_dual"] = str(cd)
    return out


# -- golden files -------------------------------------------------------------------


def golden_path(name: str, directory: Optional[Path] = None) -> Path:
    return (directory or data_path("golden")) / name


def read_golden(name: str = "stokes3_bracket.txt", directory: Optional[Path] = None) -> BracketTable:
    return BracketTable.from_text(golden_path(name, directory).read_text())


def write_golden(directory: Optional[Path] = None) -> Dict[str, str]:
    """Recompute both oracles and rewrite the golden files; returns their digests."""
    a = stokes_bracket(3)
    b = oracle_b()
    if a != b:
        raise AssertionError(f"oracles disagree on {a.differences(b)}; golden file not written")
    path = golden_path("stokes3_bracket.txt", directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"# oracle_a sha256 {a.digest()}\n# oracle_b sha256 {b.digest()}\n"
    path.write_text(header + a.to_text())
    so = so_n_embedding_check(3)
    so_path = golden_path("so3_embedding.txt", directory)
    so_path.write_text("".join(f"{k} {so[k]}\n" for k in ("subalgebra", "coisotropic", "sub_bialgebra", "dim_complementary_dual")))
    return {"oracle_a": a.digest(), "oracle_b": b.digest()}
