"""Linear algebra over Q(q), optionally restricted to the local ring at q = 1.

Vectors are sparse dicts ``column -> field element``.  ``Echelon`` keeps a
spanning set in echelon form.  In ``local`` mode only coefficients without
a pole at q = 1 may be used, so ``contains`` decides membership in the
module spanned over the localization of Q[q,q^-1] at (q-1).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple

from sympy import QQ, Symbol

from .coeff import LaurentScalar

FIELD = QQ.frac_field(Symbol("q"))
_QGEN = FIELD.gens[0]

Vector = Dict[Hashable, object]


def to_field(c: LaurentScalar):
    out = FIELD.zero
    for e, v in c.items():
        out += FIELD(QQ(v.numerator, v.denominator)) * _QGEN ** e
    return out


def _poly_to_laurent(poly) -> LaurentScalar:
    terms = {}
    for (e,), c in poly.terms():
        terms[e] = Fraction(int(c.numerator), int(c.denominator))
    return LaurentScalar(terms)


def field_valuation(x):
    """(q-1)-adic valuation of a nonzero element of Q(q)."""
    if not x:
        return math.inf
    return _poly_to_laurent(x.numer).q1_valuation() - _poly_to_laurent(x.denom).q1_valuation()


def field_to_laurent(x) -> Optional[LaurentScalar]:
    """Return x as a Laurent polynomial if it is one."""
    from .coeff import exact_quotient

    num, den = _poly_to_laurent(x.numer), _poly_to_laurent(x.denom)
    return exact_quotient(num, den)


class Echelon:
    def __init__(self, columns_key=None, local: bool = False):
        self.local = local
        self.key = columns_key
        self.pivots: List[Tuple[Hashable, Vector]] = []

    def _leading(self, v: Vector):
        return min(v, key=self.key) if self.key else min(v)

    def reduce(self, v: Vector) -> Vector:
        """Reduce v by the pivots; in local mode only integral multiples are used."""
        v = {k: x for k, x in v.items() if x}
        for col, p in self.pivots:
            x = v.get(col)
            if not x:
                continue
            factor = x / p[col]
            if self.local and field_valuation(factor) < 0:
                continue
            for k, y in p.items():
                nv = v.get(k, FIELD.zero) - factor * y
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add_all(self, vectors) -> None:
        if not self.local:
            for v in vectors:
                self.add(v)
            return
        # local mode: Gaussian elimination choosing pivots of least valuation
        rows = [{k: x for k, x in v.items() if x} for v in vectors]
        rows = [r for r in rows if r]
        while rows:
            cols = set()
            for r in rows:
                cols.update(r)
            col = min(cols, key=self.key) if self.key else min(cols)
            holders = [r for r in rows if col in r]
            if not holders:
                continue
            piv = min(holders, key=lambda r: field_valuation(r[col]))
            rest = []
            for r in rows:
                if r is piv:
                    continue
                if col in r:
                    factor = r[col] / piv[col]
                    for k, y in piv.items():
                        nv = r.get(k, FIELD.zero) - factor * y
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
                if r:
                    rest.append(r)
            self.pivots.append((col, piv))
            rows = rest
        self._sort()

    def _sort(self):
        if self.key:
            self.pivots.sort(key=lambda cp: self.key(cp[0]))
        else:
            self.pivots.sort(key=lambda cp: cp[0])

    def add(self, v: Vector) -> bool:
        if self.local:
            self.add_all([p for _, p in self.pivots] + [v])
            return True
        r = self.reduce(v)
        if not r:
            return False
        col = self._leading(r)
        inv = 1 / r[col]
        r = {k: x * inv for k, x in r.items()}
        # keep reduced form: clear this column from existing pivots
        for i, (c, p) in enumerate(self.pivots):
            x = p.get(col)
            if x:
                for k, y in r.items():
                    nv = p.get(k, FIELD.zero) - x * y
                    if nv:
                        p[k] = nv
                    else:
                        p.pop(k, None)
        self.pivots.append((col, r))
        self._sort()
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.pivots)

    def pivot_columns(self):
        return [c for c, _ in self.pivots]


def rational_rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots: List[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rational_dependency(vectors: List[Dict[Hashable, Fraction]]) -> Optional[List[Fraction]]:
    """Coefficients of a nontrivial linear relation among the vectors, or None."""
    cols = sorted({k for v in vectors for k in v}, key=repr)
    n = len(vectors)
    rows = [[v.get(k, Fraction(0)) for k in cols] + [Fraction(int(i == j)) for j in range(n)] for i, v in enumerate(vectors)]
    if not rows:
        return None
    # forward elimination on the left block; zero rows carry the relation
    m = [list(r) for r in rows]
    r = 0
    for c in range(len(cols)):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    for i in range(r, n):
        lam = m[i][len(cols):]
        if any(lam):
            return lam
    return None
