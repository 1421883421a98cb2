"""Noncommutative polynomials over Q[q,q^-1] with rewriting normal forms.

Words are tuples of generator indices.  The monomial order is
degree-lexicographic where the generator listed *first* is the largest.
A rule ``(q-1)^k * lhs = rhs`` rewrites occurrences of ``lhs``; for
``k > 0`` only the part of a coefficient divisible by ``(q-1)^k`` can be
rewritten, the canonical remainder (a polynomial of degree < k) stays.
Ordinary relations have ``k = 0``.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, T, LaurentScalar

Word = Tuple[int, ...]
Terms = Dict[Word, LaurentScalar]

__all__ = [
    "Word",
    "Rule",
    "Algebra",
    "NCElement",
    "ValidationError",
    "CriticalPair",
]


class ValidationError(ValueError):
    pass


def word_key(word: Word) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: ascending key = ascending monomial order."""
    return (len(word), tuple(-i for i in word))


def word_greater(u: Word, v: Word) -> bool:
    return word_key(u) > word_key(v)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Tuple[Tuple[Word, LaurentScalar], ...]
    power: int = 0  # the rule reads (q-1)^power * lhs = rhs

    def rhs_terms(self) -> Terms:
        return dict(self.rhs)


@dataclass
class CriticalPair:
    word: Word
    rules: Tuple[int, int]
    left: "NCElement"
    right: "NCElement"

    def describe(self, algebra: "Algebra") -> str:
        return (
            f"overlap {algebra.format_word(self.word)} (rules {self.rules[0]}, {self.rules[1]}): "
            f"{self.left} != {self.right}"
        )


def _add_into(acc: Terms, word: Word, coeff: LaurentScalar) -> None:
    if not coeff:
        return
    new = acc.get(word, ZERO) + coeff
    if new:
        acc[word] = new
    else:
        acc.pop(word, None)


class Algebra:
    """A finitely presented algebra: ordered generators plus oriented rules."""

    def __init__(self, names: Sequence[str], rules: Iterable[Rule] = ()):
        names = tuple(names)
        if not names:
            raise ValidationError("generator list is empty")
        if len(set(names)) != len(names):
            raise ValidationError(f"generator names not distinct: {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.rules: Tuple[Rule, ...] = tuple(rules)
        for k, rule in enumerate(self.rules):
            if not rule.lhs:
                raise ValidationError(f"rule {k} has an empty left-hand side")
            for w, _ in rule.rhs:
                if not word_greater(rule.lhs, w):
                    raise ValidationError(
                        f"rule {k}: {self.format_word(rule.lhs)} does not exceed "
                        f"{self.format_word(w)} in the monomial order"
                    )
        self._by_first: Dict[int, List[int]] = {}
        for k, rule in enumerate(self.rules):
            self._by_first.setdefault(rule.lhs[0], []).append(k)
        self.has_divided_rules = any(r.power > 0 for r in self.rules)
        self._nf_cache: Dict[Word, Terms] = {}
        self._match_cache: Dict[Word, Optional[Tuple[int, int]]] = {}

    # -- construction helpers -------------------------------------------

    def gen(self, name: str) -> "NCElement":
        return NCElement(self, {(self.index[name],): ONE})

    def gens(self) -> List["NCElement"]:
        return [self.gen(n) for n in self.names]

    def one(self) -> "NCElement":
        return NCElement(self, {(): ONE})

    def zero(self) -> "NCElement":
        return NCElement(self, {})

    def scalar(self, c) -> "NCElement":
        c = LaurentScalar._coerce(c)
        return NCElement(self, {(): c} if c else {})

    def word(self, *names: str) -> Word:
        return tuple(self.index[n] for n in names)

    def element(self, terms: Mapping[Word, LaurentScalar]) -> "NCElement":
        return NCElement(self, self.reduce(terms))

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.names[i] for i in word)

    def with_rules(self, rules: Iterable[Rule]) -> "Algebra":
        return Algebra(self.names, rules)

    # -- matching ------------------------------------------------------------

    def occurrences(self, word: Word):
        """All (position, rule index) pairs where a rule lhs occurs."""
        out = []
        for i, g in enumerate(word):
            for k in self._by_first.get(g, ()):
                lhs = self.rules[k].lhs
                if word[i : i + len(lhs)] == lhs:
                    out.append((i, k))
        return out

    def _first_match(self, word: Word) -> Optional[Tuple[int, int]]:
        """Leftmost ordinary match; otherwise the divided match of least power."""
        try:
            return self._match_cache[word]
        except KeyError:
            pass
        best = None
        for i, k in self.occurrences(word):
            p = self.rules[k].power
            if p == 0:
                best = (i, k)
                break
            if best is None or p < self.rules[best[1]].power:
                best = (i, k)
        self._match_cache[word] = best
        return best

    def is_irreducible_word(self, word: Word) -> bool:
        return not self.occurrences(word)

    def _rewrite(self, word: Word, pos: int, k: int, coeff: LaurentScalar, acc: Terms) -> None:
        rule = self.rules[k]
        prefix, suffix = word[:pos], word[pos + len(rule.lhs) :]
        for w, c in rule.rhs:
            _add_into(acc, prefix + w + suffix, coeff * c)

    # -- normal forms --------------------------------------------------------

    def _nf_word(self, word: Word) -> Terms:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        # iterative: expand a stack of pending words until all are cached
        stack = [word]
        while stack:
            w = stack[-1]
            if w in self._nf_cache:
                stack.pop()
                continue
            match = self._first_match(w)
            if match is None:
                self._nf_cache[w] = {w: ONE}
                stack.pop()
                continue
            step: Terms = {}
            self._rewrite(w, match[0], match[1], ONE, step)
            missing = [u for u in step if u not in self._nf_cache]
            if missing:
                stack.extend(missing)
                continue
            acc: Terms = {}
            for u, c in step.items():
                for v, d in self._nf_cache[u].items():
                    _add_into(acc, v, c * d)
            self._nf_cache[w] = acc
            stack.pop()
        return self._nf_cache[word]

    def reduce(self, terms: Mapping[Word, LaurentScalar]) -> Terms:
        """Normal form of a linear combination of words."""
        if not self.has_divided_rules:
            acc: Terms = {}
            for w, c in terms.items():
                if not c:
                    continue
                for v, d in self._nf_word(w).items():
                    _add_into(acc, v, c * d)
            return acc
        return self._reduce_divided(terms)

    def _reduce_divided(self, terms: Mapping[Word, LaurentScalar]) -> Terms:
        pending: Terms = {w: c for w, c in terms.items() if c}
        heap = [(-len(w), w) for w in pending]
        heapq.heapify(heap)
        seen = set(pending)
        result: Terms = {}
        while heap:
            _, w = heapq.heappop(heap)
            seen.discard(w)
            c = pending.pop(w, None)
            if not c:
                continue
            match = self._first_match(w)
            if match is None:
                result[w] = c
                continue
            pos, k = match
            power = self.rules[k].power
            if power == 0:
                step: Terms = {}
                self._rewrite(w, pos, k, c, step)
            else:
                rem = c.mod_q1_power(power)
                if rem == c:
                    result[w] = c
                    continue
                step = {}
                self._rewrite(w, pos, k, (c - rem).divide_by_q1(power), step)
                if rem:
                    result[w] = rem
            for u, d in step.items():
                _add_into(pending, u, d)
                if u not in seen and u in pending:
                    seen.add(u)
                    heapq.heappush(heap, (-len(u), u))
        return result

    def reduce_random(self, terms: Mapping[Word, LaurentScalar], rng: random.Random) -> Terms:
        """Normal form by rewriting a randomly chosen redex at every step."""
        cur: Terms = {w: c for w, c in terms.items() if c}
        while True:
            redexes = []
            for w, c in cur.items():
                for pos, k in self.occurrences(w):
                    p = self.rules[k].power
                    if p == 0 or c.mod_q1_power(p) != c:
                        redexes.append((w, pos, k))
            if not redexes:
                return cur
            w, pos, k = rng.choice(redexes)
            c = cur.pop(w)
            p = self.rules[k].power
            if p == 0:
                self._rewrite(w, pos, k, c, cur)
            else:
                rem = c.mod_q1_power(p)
                if rem:
                    _add_into(cur, w, rem)
                self._rewrite(w, pos, k, (c - rem).divide_by_q1(p), cur)

    def normal_form(self, e) -> "NCElement":
        if isinstance(e, NCElement):
            return NCElement(self, self.reduce(e.terms))
        return NCElement(self, self.reduce(e))

    def multiply(self, a: "NCElement", b: "NCElement") -> "NCElement":
        return a * b

    def commutator(self, a: "NCElement", b: "NCElement") -> "NCElement":
        return a * b - b * a

    # -- diagnostics ---------------------------------------------------------

    def _overlaps(self, max_degree: int):
        rules = self.rules
        for i, ri in enumerate(rules):
            for j, rj in enumerate(rules):
                a, b = ri.lhs, rj.lhs
                # b inside a
                if i != j and len(b) <= len(a):
                    for pos in range(len(a) - len(b) + 1):
                        if a[pos : pos + len(b)] == b and len(a) <= max_degree:
                            yield a, (i, 0), (j, pos)
                # suffix of a equals prefix of b
                for ov in range(1, min(len(a), len(b))):
                    if a[-ov:] == b[:ov]:
                        w = a + b[ov:]
                        if len(w) <= max_degree:
                            yield w, (i, 0), (j, len(a) - ov)

    def check_confluence(self, max_degree: int) -> List[CriticalPair]:
        """Resolve every overlap of degree <= max_degree both ways."""
        failures = []
        done = set()
        for w, (i, pi), (j, pj) in self._overlaps(max_degree):
            key = (w, i, pi, j, pj)
            if key in done:
                continue
            done.add(key)
            ki, kj = self.rules[i].power, self.rules[j].power
            top = max(ki, kj)
            left: Terms = {}
            self._rewrite(w, pi, i, T ** (top - ki), left)
            right: Terms = {}
            self._rewrite(w, pj, j, T ** (top - kj), right)
            lnf, rnf = self.reduce(left), self.reduce(right)
            if lnf != rnf:
                failures.append(CriticalPair(w, (i, j), NCElement(self, lnf), NCElement(self, rnf)))
        return failures

    def basis_words(self, max_degree: int) -> List[Word]:
        """Words of degree <= max_degree containing no rule lhs, ascending."""
        out: List[Word] = [()]
        layer: List[Word] = [()]
        n = len(self.names)
        for _ in range(max_degree):
            nxt = []
            for w in layer:
                for g in range(n):
                    u = w + (g,)
                    # only suffixes can create a new occurrence
                    if not any(u[len(u) - len(r.lhs) :] == r.lhs for r in self.rules if len(r.lhs) <= len(u)):
                        nxt.append(u)
            layer = nxt
            out.extend(nxt)
        return sorted(out, key=word_key)

    def field_terms(self, e: "NCElement"):
        """Expand over Q(q): eliminate words that survive only through divided rules.

        Returns ``{word: (numerator, power)}`` meaning numerator / (q-1)^power,
        in terms of words that contain no rule lhs at all.
        """
        pending: Dict[Word, Tuple[LaurentScalar, int]] = {}
        out: Dict[Word, Tuple[LaurentScalar, int]] = {}

        def add(target, w, num, power):
            if not num:
                return
            if w in target:
                n0, p0 = target[w]
                p = max(p0, power)
                n = n0 * T ** (p - p0) + num * T ** (p - power)
                if n:
                    target[w] = (n, p)
                else:
                    del target[w]
            else:
                target[w] = (num, power)

        for w, c in e.terms.items():
            add(pending, w, c, 0)
        while pending:
            w = max(pending, key=word_key)
            num, power = pending.pop(w)
            occ = self.occurrences(w)
            if not occ:
                add(out, w, num, power)
                continue
            pos, k = next(((p, kk) for p, kk in occ if self.rules[kk].power == 0), occ[0])
            rule = self.rules[k]
            step: Terms = {}
            self._rewrite(w, pos, k, num, step)
            for u, d in step.items():
                add(pending, u, d, power + rule.power)
        return out

    def __repr__(self):
        return f"Algebra({list(self.names)}, {len(self.rules)} rules)"


class NCElement:
    """Element of a presented algebra, always kept in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Mapping[Word, LaurentScalar]):
        self.algebra = algebra
        self.terms: Terms = dict(terms)

    def _lift(self, other) -> "NCElement":
        if isinstance(other, NCElement):
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        if self.algebra.has_divided_rules:
            acc = self.algebra.reduce(acc)
        return NCElement(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return NCElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "NCElement":
        c = LaurentScalar._coerce(c)
        acc = {w: c * d for w, d in self.terms.items() if c * d}
        if self.algebra.has_divided_rules:
            acc = self.algebra.reduce(acc)
        return NCElement(self.algebra, acc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self.scale(other)
        acc: Terms = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                _add_into(acc, u + v, c * d)
        return NCElement(self.algebra, self.algebra.reduce(acc))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCElement):
            return self.terms == other.terms
        if isinstance(other, (int, LaurentScalar)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, word: Word) -> LaurentScalar:
        return self.terms.get(word, ZERO)

    def min_valuation(self):
        from .coeff import INFINITY

        return min((c.q1_valuation() for c in self.terms.values()), default=INFINITY)

    def map_coefficients(self, f) -> "NCElement":
        return NCElement(self.algebra, {w: f(c) for w, c in self.terms.items() if f(c)})

    def __str__(self):
        return format_terms(self.algebra, self.terms)

    def __repr__(self):
        return f"NCElement({str(self)!r})"


def format_coefficient_term(c: LaurentScalar, body: str) -> str:
    """Render c*body with a sign prefix."""
    if body == "1":
        s = str(c)
        return s if s.startswith("-") else "+" + s
    if c == ONE:
        return "+" + body
    if c == -ONE:
        return "-" + body
    s = str(c)
    if len(c.terms) == 1:
        return (s if s.startswith("-") else "+" + s) + "*" + body
    return f"+({s})*{body}"


def format_terms(algebra: Algebra, terms: Mapping[Word, LaurentScalar]) -> str:
    if not terms:
        return "0"
    parts = [
        format_coefficient_term(c, algebra.format_word(w))
        for w, c in sorted(terms.items(), key=lambda kv: word_key(kv[0]), reverse=True)
    ]
    out = " ".join(p[0] + " " + p[1:] for p in parts)
    out = out[2:] if out.startswith("+ ") else "-" + out[2:]
    return out


def random_element(algebra: Algebra, rng: random.Random, max_degree: int, n_terms: int = 3, raw: bool = True) -> Terms:
    """Random combination of (not necessarily reduced) words, for property tests."""
    terms: Terms = {}
    n = len(algebra.names)
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        w = tuple(rng.randrange(n) for _ in range(deg))
        c = LaurentScalar({rng.randint(-2, 2): rng.randint(-3, 3), rng.randint(-2, 2): rng.randint(-3, 3)})
        _add_into(terms, w, c)
    return terms if raw else algebra.reduce(terms)


def all_words(n_gens: int, degree: int):
    return itertools.product(range(n_gens), repeat=degree)
