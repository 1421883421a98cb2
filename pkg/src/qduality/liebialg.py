"""Finite-dimensional Lie bialgebras over Q.

Structure constants are exact Fractions.  ``bracket[i][j]`` is the
coordinate vector of ``[x_i, x_j]``; ``cobracket[i]`` maps pairs
``(j, k)`` with ``j < k`` to the coefficient of ``x_j ^ x_k`` in
``gamma(x_i)``.  Subspaces are kept in reduced row echelon form, so two
subspaces are equal exactly when their matrices are.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .hopf import CheckReport
from .linalg import rational_rref

__all__ = [
    "LieBialgebra",
    "Subspace",
    "NotASubalgebra",
    "check_bialgebra",
    "dual_bialgebra",
    "orthogonal",
    "generated_subalgebra",
    "is_subalgebra",
    "is_coisotropic",
    "is_sub_bialgebra",
    "complementary_dual",
    "galois_composite",
    "sl_standard",
    "census",
]

Vec = List[Fraction]
Wedge = Dict[Tuple[int, int], Fraction]
F0 = Fraction(0)


class NotASubalgebra(ValueError):
    pass


def _zero(n: int) -> Vec:
    return [F0] * n


def _axpy(a: Fraction, x: Vec, y: Vec) -> Vec:
    return [a * u + v for u, v in zip(x, y)]


def _wedge_add(acc: Wedge, i: int, j: int, c: Fraction) -> None:
    if i == j or not c:
        return
    if i > j:
        i, j, c = j, i, -c
    v = acc.get((i, j), F0) + c
    if v:
        acc[(i, j)] = v
    else:
        acc.pop((i, j), None)


def _format_sum(items) -> str:
    out = ""
    for c, body in items:
        if not c:
            continue
        mag = abs(c)
        term = body if mag == 1 else f"{mag}*{body}"
        if not out:
            out = term if c > 0 else "-" + term
        else:
            out += (" + " if c > 0 else " - ") + term
    return out or "0"


class LieBialgebra:
    def __init__(
        self,
        labels: Sequence[str],
        bracket: Dict[Tuple[int, int], Dict[int, Fraction]],
        cobracket: Dict[int, Dict[Tuple[int, int], Fraction]],
        name: str = "",
    ):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.index = {s: i for i, s in enumerate(self.labels)}
        self.name = name
        n = self.n
        self.c: List[List[Vec]] = [[_zero(n) for _ in range(n)] for _ in range(n)]
        for (i, j), vec in bracket.items():
            for k, v in vec.items():
                self.c[i][j][k] += Fraction(v)
        self.gamma: List[Wedge] = [dict() for _ in range(n)]
        for i, w in cobracket.items():
            for (j, k), v in w.items():
                _wedge_add(self.gamma[i], j, k, Fraction(v))
        self._dual: Optional["LieBialgebra"] = None
        self.matrices = None  # optional matrix realization, used by censuses

    @property
    def dim(self) -> int:
        return self.n

    # -- linear maps ---------------------------------------------------------

    def vec(self, label_or_terms) -> Vec:
        v = _zero(self.n)
        if isinstance(label_or_terms, str):
            v[self.index[label_or_terms]] = Fraction(1)
            return v
        for lab, c in label_or_terms.items():
            v[self.index[lab]] += Fraction(c)
        return v

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = _zero(self.n)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out = _axpy(a * b, self.c[i][j], out)
        return out

    def cobracket(self, x: Vec) -> Wedge:
        out: Wedge = {}
        for i, a in enumerate(x):
            if a:
                for (j, k), v in self.gamma[i].items():
                    _wedge_add(out, j, k, a * v)
        return out

    def act_on_wedge(self, x: Vec, w: Wedge) -> Wedge:
        """x . (a ^ b) = [x, a] ^ b + a ^ [x, b]."""
        out: Wedge = {}
        for (a, b), v in w.items():
            xa = self.bracket(x, self._unit(a))
            xb = self.bracket(x, self._unit(b))
            for k, u in enumerate(xa):
                _wedge_add(out, k, b, v * u)
            for k, u in enumerate(xb):
                _wedge_add(out, a, k, v * u)
        return out

    def _unit(self, i: int) -> Vec:
        v = _zero(self.n)
        v[i] = Fraction(1)
        return v

    def format_vec(self, v: Vec) -> str:
        return _format_sum((c, lab) for lab, c in zip(self.labels, v))

    def format_wedge(self, w: Wedge) -> str:
        return _format_sum((c, f"{self.labels[i]}^{self.labels[j]}") for (i, j), c in sorted(w.items()))

    @property
    def dual(self) -> "LieBialgebra":
        if self._dual is None:
            self._dual = dual_bialgebra(self)
            self._dual._dual = self
        return self._dual

    def structure_key(self):
        return (
            self.labels,
            tuple(tuple(tuple(v) for v in row) for row in self.c),
            tuple(tuple(sorted(w.items())) for w in self.gamma),
        )

    def __eq__(self, other):
        return isinstance(other, LieBialgebra) and self.structure_key()[1:] == other.structure_key()[1:]

    def __hash__(self):
        return hash(self.structure_key()[1:])

    def __repr__(self):
        return f"LieBialgebra({self.name or list(self.labels)})"


# -- validation and duality ----------------------------------------------------


def check_bialgebra(g: LieBialgebra) -> CheckReport:
    rep = CheckReport("lie-check")
    n = g.n
    units = [g._unit(i) for i in range(n)]

    bad = [(i, j) for i in range(n) for j in range(i, n) if _axpy(Fraction(1), g.c[i][j], g.c[j][i]) != _zero(n)]
    rep.record("antisymmetry", "fail" if bad else "pass", _fmt_triples(g, bad), failing=len(bad))

    def jacobi(L, i, j, k):
        x, y, z = units[i], units[j], units[k]
        s = L.bracket(L.bracket(x, y), z)
        s = _axpy(Fraction(1), L.bracket(L.bracket(y, z), x), s)
        s = _axpy(Fraction(1), L.bracket(L.bracket(z, x), y), s)
        return any(s)

    triples = list(itertools.combinations(range(n), 3))
    bad = [t for t in triples if jacobi(g, *t)]
    rep.record("jacobi", "fail" if bad else "pass", _fmt_triples(g, bad), failing=len(bad))

    d = dual_bialgebra(g)
    bad = [t for t in triples if jacobi(d, *t)]
    rep.record("co_jacobi", "fail" if bad else "pass", _fmt_triples(g, bad), failing=len(bad))

    bad = []
    for i, j in itertools.combinations(range(n), 2):
        lhs = g.cobracket(g.c[i][j])
        rhs = dict(g.act_on_wedge(units[i], g.gamma[j]))
        for key, v in g.act_on_wedge(units[j], g.gamma[i]).items():
            _wedge_add(rhs, key[0], key[1], -v)
        if lhs != rhs:
            bad.append((i, j))
    rep.record("cocycle", "fail" if bad else "pass", _fmt_triples(g, bad), failing=len(bad))
    return rep


def _fmt_triples(g, bad):
    if not bad:
        return None
    return ", ".join("(" + ",".join(g.labels[i] for i in t) + ")" for t in bad[:5])


def dual_bialgebra(g: LieBialgebra) -> LieBialgebra:
    """Bracket = transpose of the cobracket, cobracket = transpose of the bracket."""
    n = g.n
    bracket: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for k in range(n):
        for (i, j), v in g.gamma[k].items():
            bracket.setdefault((i, j), {})[k] = v
            bracket.setdefault((j, i), {})[k] = -v
    cobracket: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for i, j in itertools.combinations(range(n), 2):
        for k, v in enumerate(g.c[i][j]):
            if v:
                cobracket.setdefault(k, {})[(i, j)] = v
    labels = [_dual_label(s) for s in g.labels]
    return LieBialgebra(labels, bracket, cobracket, name=(g.name + "*") if g.name else "")


def _dual_label(s: str) -> str:
    return s[:-1] if s.endswith("*") else s + "*"


# -- subspaces -------------------------------------------------------------------


class Subspace:
    """Span of vectors in an ambient Lie bialgebra, in canonical RREF."""

    def __init__(self, ambient: LieBialgebra, vectors: Iterable[Sequence] = ()):
        self.ambient = ambient
        rows = [list(map(Fraction, v)) for v in vectors]
        rows = [r for r in rows if any(r)]
        if rows:
            self.rows, self.pivots = rational_rref(rows)
        else:
            self.rows, self.pivots = [], []
        self.rows = [tuple(r) for r in self.rows]

    @classmethod
    def span(cls, ambient: LieBialgebra, items) -> "Subspace":
        vecs = [ambient.vec(x) if isinstance(x, (str, dict)) else x for x in items]
        return cls(ambient, vecs)

    @classmethod
    def whole(cls, ambient: LieBialgebra) -> "Subspace":
        return cls(ambient, [ambient._unit(i) for i in range(ambient.n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> List[Vec]:
        return [list(r) for r in self.rows]

    def contains(self, v: Sequence) -> bool:
        v = list(map(Fraction, v))
        for r, p in zip(self.rows, self.pivots):
            if v[p]:
                v = _axpy(-v[p], list(r), v)
        return not any(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, self.basis() + other.basis())

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient is other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(self.rows))

    def __str__(self):
        return "span(" + ", ".join(self.ambient.format_vec(list(r)) for r in self.rows) + ")"

    def __repr__(self):
        return f"Subspace({self})"


def orthogonal(k: Subspace) -> Subspace:
    """Annihilator of k in the dual, for the pairing <x_i, x^j> = delta_ij."""
    g = k.ambient
    n = g.n
    free = [c for c in range(n) if c not in k.pivots]
    vecs = []
    for f in free:
        v = _zero(n)
        v[f] = Fraction(1)
        for r, p in zip(k.rows, k.pivots):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace(g.dual, vecs)


def generated_subalgebra(S: Subspace) -> Subspace:
    g = S.ambient
    cur = S
    while True:
        basis = cur.basis()
        extra = [g.bracket(x, y) for x, y in itertools.combinations(basis, 2)]
        nxt = Subspace(g, basis + extra)
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt


def is_subalgebra(k: Subspace) -> bool:
    g = k.ambient
    return all(k.contains(g.bracket(x, y)) for x, y in itertools.combinations(k.basis(), 2))


def _wedge_span_rows(g: LieBialgebra, left: List[Vec], right: List[Vec]) -> Tuple[List[Tuple[int, int]], List[Vec]]:
    pairs = list(itertools.combinations(range(g.n), 2))
    pos = {p: i for i, p in enumerate(pairs)}
    rows = []
    for u in left:
        for v in right:
            w: Wedge = {}
            for i, a in enumerate(u):
                if a:
                    for j, b in enumerate(v):
                        if b:
                            _wedge_add(w, i, j, a * b)
            row = _zero(len(pairs))
            for key, c in w.items():
                row[pos[key]] = c
            rows.append(row)
    return pairs, rows


def _gamma_inside(k: Subspace, right: List[Vec]) -> bool:
    g = k.ambient
    pairs, rows = _wedge_span_rows(g, k.basis(), right)
    W = Subspace.__new__(Subspace)
    W.ambient = None
    rows = [r for r in rows if any(r)]
    W.rows, W.pivots = rational_rref(rows) if rows else ([], [])
    pos = {p: i for i, p in enumerate(pairs)}
    for x in k.basis():
        row = _zero(len(pairs))
        for key, c in g.cobracket(x).items():
            row[pos[key]] = c
        if not Subspace.contains(W, row):
            return False
    return True


def is_coisotropic(k: Subspace) -> bool:
    """gamma(k) inside k ^ g."""
    if not is_subalgebra(k):
        raise NotASubalgebra(f"{k} is not closed under the bracket")
    g = k.ambient
    return _gamma_inside(k, [g._unit(i) for i in range(g.n)])


def is_sub_bialgebra(k: Subspace) -> bool:
    """gamma(k) inside k ^ k."""
    if not is_subalgebra(k):
        raise NotASubalgebra(f"{k} is not closed under the bracket")
    return _gamma_inside(k, k.basis())


def complementary_dual(k: Subspace) -> Subspace:
    """Lie subalgebra of g* generated by the annihilator of k."""
    if not is_subalgebra(k):
        raise NotASubalgebra(f"{k} is not closed under the bracket")
    return generated_subalgebra(orthogonal(k))


def galois_composite(k: Subspace) -> Subspace:
    """complementary_dual twice, landing back in g."""
    return complementary_dual(complementary_dual(k))


# -- catalog constructions -------------------------------------------------------


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), F0) for j in range(n)] for i in range(n)]


def _matsub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _unit_matrix(n, i, j):
    m = [[F0] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def sl_standard(n: int) -> LieBialgebra:
    """sl_n with cobracket gamma(x) = [x (x) 1 + 1 (x) x, r], r = sum_{i<j} E_ji ^ E_ij.

    Basis: E_ij for i < j, then H_i = E_ii - E_(i+1)(i+1), then E_ji.  For
    n = 2 the labels are e, h, f.
    """
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    lower = [(j, i) for i, j in upper]
    mats, labels = [], []
    for i, j in upper:
        mats.append(_unit_matrix(n, i, j))
        labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        mats.append(_matsub(_unit_matrix(n, i, i), _unit_matrix(n, i + 1, i + 1)))
        labels.append(f"H{i + 1}")
    for i, j in lower:
        mats.append(_unit_matrix(n, i, j))
        labels.append(f"E{i + 1}{j + 1}")
    if n == 2:
        labels = ["e", "h", "f"]
    dim = len(mats)

    def coords(m) -> Vec:
        v = _zero(dim)
        for k, (i, j) in enumerate(upper):
            v[k] = m[i][j]
        for k, (i, j) in enumerate(lower):
            v[len(upper) + n - 1 + k] = m[i][j]
        acc = F0
        for i in range(n - 1):
            acc += m[i][i]
            v[len(upper) + i] = acc
        return v

    bracket = {}
    for a, b in itertools.product(range(dim), repeat=2):
        m = _matsub(_matmul(mats[a], mats[b]), _matmul(mats[b], mats[a]))
        vec = coords(m)
        bracket[(a, b)] = {k: x for k, x in enumerate(vec) if x}
    base = LieBialgebra(labels, bracket, {})
    # r = sum_{i<j} E_ji ^ E_ij
    r: Wedge = {}
    for k, (i, j) in enumerate(upper):
        _wedge_add(r, len(upper) + n - 1 + k, k, Fraction(1))
    cobracket = {a: base.act_on_wedge(base._unit(a), r) for a in range(dim)}
    out = LieBialgebra(labels, bracket, cobracket, name=f"sl{n}_std_bialg")
    out.matrices = mats
    out.coords = coords
    return out


def _conjugate_subspace(g: LieBialgebra, k: Subspace, U, Uinv) -> Subspace:
    vecs = []
    for row in k.basis():
        m = [[F0] * len(U) for _ in range(len(U))]
        for c, mat in zip(row, g.matrices):
            if c:
                m = [[x + c * y for x, y in zip(r, s)] for r, s in zip(m, mat)]
        vecs.append(g.coords(_matmul(_matmul(U, m), Uinv)))
    return Subspace(g, vecs)


def coordinate_subalgebras(g: LieBialgebra) -> List[Subspace]:
    out = []
    for r in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), r):
            k = Subspace(g, [g._unit(i) for i in subset])
            if is_subalgebra(k):
                out.append(k)
    return out


def random_subalgebras(g: LieBialgebra, count: int, seed: int) -> List[Subspace]:
    """Seeded non-coordinate subalgebras.

    With a matrix realization, coordinate subalgebras are conjugated by
    random rational unipotent matrices.  Otherwise random vectors are
    closed under the bracket.
    """
    rng = random.Random(seed)
    coords = [k for k in coordinate_subalgebras(g) if 0 < k.dim < g.n]
    out: List[Subspace] = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        if g.matrices is not None and coords:
            base = rng.choice(coords)
            m = len(g.matrices[0])
            U = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
            Uinv = [row[:] for row in U]
            for _ in range(rng.randint(1, 3)):
                i, j = rng.sample(range(m), 2)
                s = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                if not s:
                    continue
                E = [[Fraction(int(a == b)) for b in range(m)] for a in range(m)]
                E[i][j] = s
                Einv = [[Fraction(int(a == b)) for b in range(m)] for a in range(m)]
                Einv[i][j] = -s
                U = _matmul(E, U)
                Uinv = _matmul(Uinv, Einv)
            k = _conjugate_subspace(g, base, U, Uinv)
        else:
            dim = rng.randint(1, 2)
            vecs = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(g.n)] for _ in range(dim)]
            k = generated_subalgebra(Subspace(g, vecs))
        key = tuple(k.rows)
        if key in seen or all(sum(1 for x in r if x) == 1 for r in k.rows):
            continue
        seen.add(key)
        out.append(k)
    return out


def census(g: LieBialgebra, n_random: int = 100, seed: int = 20240501):
    """Coordinate subalgebras plus seeded random ones; returns (subalgebras, seed)."""
    return coordinate_subalgebras(g) + random_subalgebras(g, n_random, seed), seed
