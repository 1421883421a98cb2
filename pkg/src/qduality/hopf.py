"""Hopf structure on presented algebras.

Coproduct, counit and antipode are given on generators and extended
(anti)multiplicatively.  Everything here is bounded: axioms and
subgroup conditions are verified on finite degree slices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, T, LaurentScalar
from .linalg import FIELD, Echelon, to_field
from .ncalg import Algebra, NCElement, Terms, Word, _add_into, format_coefficient_term, word_key

__all__ = [
    "TensorElement",
    "HopfPresentation",
    "CheckReport",
    "check_hopf_axioms",
    "check_ideal_coideal",
    "check_coideal_subalgebra",
]

TensorWord = Tuple[Word, ...]


class TensorElement:
    """Element of the n-fold tensor power of a presented algebra."""

    __slots__ = ("algebra", "arity", "terms")

    def __init__(self, algebra: Algebra, arity: int, terms: Mapping[TensorWord, LaurentScalar]):
        self.algebra = algebra
        self.arity = arity
        self.terms: Dict[TensorWord, LaurentScalar] = dict(terms)

    @classmethod
    def from_raw(cls, algebra: Algebra, arity: int, raw: Mapping[TensorWord, LaurentScalar]) -> "TensorElement":
        """Normalize factor by factor, left to right."""
        acc: Dict[TensorWord, LaurentScalar] = {}
        if not algebra.has_divided_rules:
            for words, c in raw.items():
                if not c:
                    continue
                expansions = [algebra._nf_word(w).items() for w in words]
                for combo in itertools.product(*expansions):
                    coeff = c
                    for _, d in combo:
                        coeff = coeff * d
                    _add_into(acc, tuple(w for w, _ in combo), coeff)
            return cls(algebra, arity, acc)
        for words, c in raw.items():
            states = [((), c)]
            for w in words:
                nxt = []
                for prefix, coeff in states:
                    for v, d in algebra.reduce({w: coeff}).items():
                        nxt.append((prefix + (v,), d))
                states = nxt
            for tw, d in states:
                _add_into(acc, tw, d)
        return cls(algebra, arity, acc)

    @classmethod
    def pure(cls, *factors: NCElement) -> "TensorElement":
        algebra = factors[0].algebra
        raw: Dict[TensorWord, LaurentScalar] = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            coeff = ONE
            for _, d in combo:
                coeff = coeff * d
            _add_into(raw, tuple(w for w, _ in combo), coeff)
        return cls.from_raw(algebra, len(factors), raw)

    def _renorm(self, terms) -> "TensorElement":
        if self.algebra.has_divided_rules:
            return TensorElement.from_raw(self.algebra, self.arity, terms)
        return TensorElement(self.algebra, self.arity, terms)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return self._renorm(acc)

    def __neg__(self):
        return TensorElement(self.algebra, self.arity, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = LaurentScalar._coerce(c)
        return self._renorm({w: c * d for w, d in self.terms.items() if c * d})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        raw: Dict[TensorWord, LaurentScalar] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                _add_into(raw, tuple(a + b for a, b in zip(u, v)), c * d)
        return TensorElement.from_raw(self.algebra, self.arity, raw)

    __rmul__ = scale

    def swap(self) -> "TensorElement":
        return self._renorm({w[::-1]: c for w, c in self.terms.items()})

    def field_terms(self) -> Dict[TensorWord, object]:
        """Canonical expansion over Q(q) in words free of every rule lhs."""
        if not self.algebra.has_divided_rules:
            return {w: to_field(c) for w, c in self.terms.items()}
        cache: Dict[Word, Dict] = {}

        def expand(w):
            if w not in cache:
                e = self.algebra.field_terms(NCElement(self.algebra, {w: ONE}))
                cache[w] = {u: to_field(n) / to_field(T) ** p for u, (n, p) in e.items()}
            return cache[w]

        acc: Dict[TensorWord, object] = {}
        for words, c in self.terms.items():
            cf = to_field(c)
            for combo in itertools.product(*(expand(w).items() for w in words)):
                x = cf
                for _, d in combo:
                    x = x * d
                key = tuple(u for u, _ in combo)
                y = acc.get(key, FIELD.zero) + x
                if y:
                    acc[key] = y
                else:
                    acc.pop(key, None)
        return acc

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        if not self.algebra.has_divided_rules:
            return False
        return not self.field_terms()

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def min_valuation(self):
        from .coeff import INFINITY

        return min((c.q1_valuation() for c in self.terms.values()), default=INFINITY)

    def map_coefficients(self, f) -> "TensorElement":
        return TensorElement(self.algebra, self.arity, {w: f(c) for w, c in self.terms.items() if f(c)})

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.algebra.format_word
        items = sorted(self.terms.items(), key=lambda kv: tuple(word_key(w) for w in kv[0]), reverse=True)
        parts = [format_coefficient_term(c, " (x) ".join(fmt(w) for w in ws)) for ws, c in items]
        out = " ".join(p[0] + " " + p[1:] for p in parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"TensorElement({str(self)!r})"


class HopfPresentation:
    """Generators, oriented relations, and Hopf structure maps on generators."""

    def __init__(
        self,
        algebra: Algebra,
        counit: Mapping[str, LaurentScalar],
        coproduct: Mapping[str, TensorElement],
        antipode: Mapping[str, NCElement],
        name: str = "",
        side: Optional[str] = None,
        classical_dimension_hint: Optional[int] = None,
    ):
        self.algebra = algebra
        missing = [g for g in algebra.names if g not in counit or g not in coproduct or g not in antipode]
        if missing:
            from .ncalg import ValidationError

            raise ValidationError(f"Hopf data missing for generators {missing}")
        self.counit_map = {algebra.index[g]: LaurentScalar._coerce(c) for g, c in counit.items()}
        self.coproduct_map = {algebra.index[g]: t for g, t in coproduct.items()}
        self.antipode_map = {algebra.index[g]: s for g, s in antipode.items()}
        self.name = name
        self.side = side
        self.classical_dimension_hint = classical_dimension_hint
        self._counit_cache: Dict[Word, LaurentScalar] = {(): ONE}
        self._cop_cache: Dict[Word, TensorElement] = {}
        self._anti_cache: Dict[Word, NCElement] = {}

    @property
    def names(self):
        return self.algebra.names

    def gen(self, name: str) -> NCElement:
        return self.algebra.gen(name)

    # -- structure maps ------------------------------------------------------

    def counit_word(self, w: Word) -> LaurentScalar:
        c = self._counit_cache.get(w)
        if c is None:
            c = self.counit_word(w[:-1]) * self.counit_map[w[-1]]
            self._counit_cache[w] = c
        return c

    def counit(self, e: NCElement) -> LaurentScalar:
        total = ZERO
        for w, c in e.terms.items():
            total = total + c * self.counit_word(w)
        return total

    def coproduct_word(self, w: Word) -> TensorElement:
        t = self._cop_cache.get(w)
        if t is None:
            if not w:
                t = TensorElement(self.algebra, 2, {((), ()): ONE})
            elif len(w) == 1:
                t = self.coproduct_map[w[0]]
            else:
                t = self.coproduct_word(w[:-1]) * self.coproduct_map[w[-1]]
            self._cop_cache[w] = t
        return t

    def coproduct(self, e: NCElement) -> TensorElement:
        raw: Dict = {}
        for w, c in e.terms.items():
            for tw, d in self.coproduct_word(w).terms.items():
                _add_into(raw, tw, c * d)
        if self.algebra.has_divided_rules:
            return TensorElement.from_raw(self.algebra, 2, raw)
        return TensorElement(self.algebra, 2, raw)

    def antipode_word(self, w: Word) -> NCElement:
        s = self._anti_cache.get(w)
        if s is None:
            if not w:
                s = self.algebra.one()
            elif len(w) == 1:
                s = self.antipode_map[w[0]]
            else:
                s = self.antipode_map[w[-1]] * self.antipode_word(w[:-1])
            self._anti_cache[w] = s
        return s

    def antipode(self, e: NCElement) -> NCElement:
        acc: Terms = {}
        for w, c in e.terms.items():
            for v, d in self.antipode_word(w).terms.items():
                _add_into(acc, v, c * d)
        return self.algebra.element(acc) if self.algebra.has_divided_rules else NCElement(self.algebra, acc)

    def apply_to_factor(self, t: TensorElement, i: int) -> TensorElement:
        """(id^i (x) Delta (x) id^(n-i-1)) t."""
        raw: Dict = {}
        for words, c in t.terms.items():
            for (u, v), d in self.coproduct_word(words[i]).terms.items():
                _add_into(raw, words[:i] + (u, v) + words[i + 1 :], c * d)
        return TensorElement.from_raw(self.algebra, t.arity + 1, raw)

    def iterated_coproduct(self, e: NCElement, n: int) -> TensorElement:
        if n < 1:
            raise ValueError("n must be >= 1")
        t = TensorElement(self.algebra, 1, {(w,): c for w, c in e.terms.items()})
        for _ in range(n - 1):
            t = self.apply_to_factor(t, 0)
        return t

    def delta_n(self, e: NCElement, n: int) -> TensorElement:
        """(id - unit*counit)^(x n) applied to the n-fold coproduct."""
        t = self.iterated_coproduct(e, n)
        raw: Dict = {}
        for words, c in t.terms.items():
            # expand prod_i (w_i - eps(w_i) 1)
            options = []
            for w in words:
                eps = self.counit_word(w)
                opts = [(w, ONE)]
                if eps and w:
                    opts.append(((), -eps))
                elif not w:
                    opts = []  # pi(1) = 0
                options.append(opts)
            for combo in itertools.product(*options):
                coeff = c
                for _, d in combo:
                    coeff = coeff * d
                _add_into(raw, tuple(w for w, _ in combo), coeff)
        return TensorElement.from_raw(self.algebra, n, raw)

    def multiply_tensor(self, t: TensorElement) -> NCElement:
        acc: Terms = {}
        for words, c in t.terms.items():
            _add_into(acc, tuple(itertools.chain.from_iterable(words)), c)
        return self.algebra.element(acc)

    def counit_tensor(self, t: TensorElement, i: int) -> TensorElement:
        raw: Dict = {}
        for words, c in t.terms.items():
            eps = self.counit_word(words[i])
            if eps:
                _add_into(raw, words[:i] + words[i + 1 :], c * eps)
        return TensorElement.from_raw(self.algebra, t.arity - 1, raw)

    def antipode_on_factor(self, t: TensorElement, i: int) -> TensorElement:
        raw: Dict = {}
        for words, c in t.terms.items():
            for v, d in self.antipode_word(words[i]).terms.items():
                _add_into(raw, words[:i] + (v,) + words[i + 1 :], c * d)
        return TensorElement.from_raw(self.algebra, t.arity, raw)

    # -- raw images of relations (free-algebra evaluation) -------------------

    def raw_coproduct(self, terms: Mapping[Word, LaurentScalar]) -> TensorElement:
        out = TensorElement(self.algebra, 2, {})
        for w, c in terms.items():
            t = TensorElement(self.algebra, 2, {((), ()): ONE})
            for g in w:
                t = t * self.coproduct_map[g]
            out = out + t.scale(c)
        return out

    def raw_antipode(self, terms: Mapping[Word, LaurentScalar]) -> NCElement:
        out = self.algebra.zero()
        for w, c in terms.items():
            s = self.algebra.one()
            for g in w:
                s = self.antipode_map[g] * s
            out = out + s.scale(c)
        return out

    def raw_counit(self, terms: Mapping[Word, LaurentScalar]) -> LaurentScalar:
        total = ZERO
        for w, c in terms.items():
            v = ONE
            for g in w:
                v = v * self.counit_map[g]
            total = total + c * v
        return total

    def relation_elements(self) -> List[Tuple[int, Dict[Word, LaurentScalar]]]:
        """Each rule as a free-algebra element (q-1)^k lhs - rhs."""
        out = []
        for k, rule in enumerate(self.algebra.rules):
            terms: Dict[Word, LaurentScalar] = {rule.lhs: T ** rule.power}
            for w, c in rule.rhs:
                _add_into(terms, w, -c)
            out.append((k, terms))
        return out

    def __repr__(self):
        return f"HopfPresentation({self.name or list(self.names)})"


@dataclass
class CheckReport:
    operation: str
    checks: Dict[str, dict] = field(default_factory=dict)

    def record(self, name: str, status: str, witness: Optional[str] = None, **extra) -> None:
        entry = {"status": status}
        if witness is not None:
            entry["witness"] = witness
        entry.update(extra)
        self.checks[name] = entry

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks.values())

    @property
    def verdict(self) -> str:
        statuses = {c["status"] for c in self.checks.values()}
        if "fail" in statuses:
            return "fail"
        if "inconclusive" in statuses:
            return "inconclusive"
        return "pass"

    def failures(self):
        return {k: v for k, v in self.checks.items() if v["status"] != "pass"}


def _sample_elements(P: HopfPresentation, max_degree: int) -> List[NCElement]:
    # generators suffice: both sides of each law are algebra maps
    return P.algebra.gens()


def check_hopf_axioms(P: HopfPresentation, max_degree: int = 3, confluence: bool = True) -> CheckReport:
    rep = CheckReport("check-hopf")
    alg = P.algebra
    if confluence:
        pairs = alg.check_confluence(2 * max_degree)
        rep.record(
            "confluence",
            "pass" if not pairs else "fail",
            pairs[0].describe(alg) if pairs else None,
            degree=2 * max_degree,
        )
    sample = _sample_elements(P, max_degree)

    def first_failure(items, test):
        for x in items:
            bad = test(x)
            if bad:
                return bad
        return None

    def coassoc(x):
        d = P.coproduct(x)
        lhs, rhs = P.apply_to_factor(d, 0), P.apply_to_factor(d, 1)
        if lhs != rhs:
            return f"{x}: (D(x)id)D != (id(x)D)D"
        return None

    bad = first_failure(sample, coassoc)
    rep.record("coassociativity", "fail" if bad else "pass", bad, checked=len(sample))

    def counit_law(x):
        d = P.coproduct(x)
        as_tensor = TensorElement(alg, 1, {(w,): c for w, c in x.terms.items()})
        left, right = P.counit_tensor(d, 0), P.counit_tensor(d, 1)
        if left != as_tensor:
            return f"{x}: (eps(x)id)D(x) = {left}"
        if right != as_tensor:
            return f"{x}: (id(x)eps)D(x) = {right}"
        return None

    bad = first_failure(sample, counit_law)
    rep.record("counit_law", "fail" if bad else "pass", bad, checked=len(sample))

    all_rels = P.relation_elements()
    rels = [(k, terms) for k, terms in all_rels if max(len(w) for w in terms) <= max_degree]
    skipped = len(all_rels) - len(rels)
    bad = None
    for k, terms in rels:
        img = P.raw_coproduct(terms)
        if not img.is_zero():
            bad = f"rule {k}: Delta(relation) = {img}"
            break
    rep.record("coproduct_respects_relations", "fail" if bad else "pass", bad, checked=len(rels), above_degree=skipped)

    bad = None
    for k, terms in rels:
        v = P.raw_counit(terms)
        if v:
            bad = f"rule {k}: eps(relation) = {v}"
            break
    rep.record("counit_respects_relations", "fail" if bad else "pass", bad, checked=len(rels), above_degree=skipped)

    bad = None
    for k, terms in rels:
        s = P.raw_antipode(terms)
        if not _is_zero_element(s):
            bad = f"rule {k}: S(relation) = {s}"
            break
    rep.record("antipode_respects_relations", "fail" if bad else "pass", bad, checked=len(rels), above_degree=skipped)

    bad = None
    for g in alg.names:
        x = P.gen(g)
        d = P.coproduct(x)
        val = P.multiply_tensor(P.antipode_on_factor(d, 0))
        expect = alg.scalar(P.counit(x))
        if not _is_zero_element(val - expect):
            bad = f"m(S(x)id)D({g}) = {val}, expected {expect}"
            break
        val = P.multiply_tensor(P.antipode_on_factor(d, 1))
        if not _is_zero_element(val - expect):
            bad = f"m(id(x)S)D({g}) = {val}, expected {expect}"
            break
    rep.record("antipode_law", "fail" if bad else "pass", bad, checked=len(alg.names))
    return rep


def _is_zero_element(e: NCElement) -> bool:
    if not e.terms:
        return True
    if not e.algebra.has_divided_rules:
        return False
    return not e.algebra.field_terms(e)


def element_vector(e: NCElement) -> Dict[Word, object]:
    """Coordinates over Q(q) in lhs-free words."""
    if not e.algebra.has_divided_rules:
        return {w: to_field(c) for w, c in e.terms.items()}
    return {w: to_field(n) / to_field(T) ** p for w, (n, p) in e.algebra.field_terms(e).items()}


def _desc_key(w: Word):
    # largest word first
    return (-len(w), w)


def _ideal_slice(P: HopfPresentation, gens: Sequence[NCElement], max_degree: int) -> Echelon:
    ech = Echelon(columns_key=_desc_key)
    words = P.algebra.basis_words(max_degree)
    vecs = []
    for g in gens:
        dg = g.degree()
        for u in words:
            if len(u) + dg > max_degree:
                continue
            left = NCElement(P.algebra, {u: ONE}) * g
            for v in words:
                if len(u) + dg + len(v) > max_degree:
                    continue
                vecs.append(element_vector(left * NCElement(P.algebra, {v: ONE})))
    for v in vecs:
        ech.add(v)
    return ech


def check_ideal_coideal(P: HopfPresentation, ideal_gens: Sequence[NCElement], max_degree: int = 3) -> CheckReport:
    """Type I datum: ideal generators g with eps(g) = 0 and D(g) in I(x)H + H(x)I."""
    rep = CheckReport("ideal-coideal")
    if not ideal_gens:
        rep.record("vacuous", "pass")
        return rep
    ech = _ideal_slice(P, ideal_gens, max_degree)
    for n, g in enumerate(ideal_gens):
        label = f"gen[{n}] {g}"
        eps = P.counit(g)
        if eps:
            rep.record(label, "fail", f"eps = {eps}")
            continue
        d = P.coproduct(g)
        residues: Dict[Word, Dict] = {}

        def residue(w):
            if w not in residues:
                residues[w] = ech.reduce(element_vector(NCElement(P.algebra, {w: ONE})))
            return residues[w]

        image: Dict[Tuple, object] = {}
        too_big = False
        for (w1, w2), c in d.terms.items():
            if len(w1) > max_degree or len(w2) > max_degree:
                too_big = True
            r1, r2 = residue(w1), residue(w2)
            cf = to_field(c)
            for a, x in r1.items():
                for b, y in r2.items():
                    val = image.get((a, b), FIELD.zero) + cf * x * y
                    if val:
                        image[(a, b)] = val
                    else:
                        image.pop((a, b), None)
        if not image:
            rep.record(label, "pass")
        elif too_big:
            rep.record(label, "inconclusive", f"coproduct leaves the degree-{max_degree} slice")
        else:
            (a, b), x = next(iter(sorted(image.items(), key=lambda kv: str(kv[0]))))
            fmt = P.algebra.format_word
            rep.record(label, "fail", f"D(g) has residue {x} * {fmt(a)} (x) {fmt(b)} modulo I(x)H + H(x)I")
    return rep


def subalgebra_slice(P: HopfPresentation, gens: Sequence[NCElement], max_degree: int, local: bool = True) -> Echelon:
    """Span of products of at most max_degree generators (and 1)."""
    ech = Echelon(columns_key=_desc_key, local=local)
    layer = [P.algebra.one()]
    products = [P.algebra.one()]
    for _ in range(max_degree):
        layer = [x * g for x in layer for g in gens]
        products.extend(layer)
    ech.add_all([element_vector(p) for p in products])
    return ech


def check_coideal_subalgebra(
    P: HopfPresentation, gens: Sequence[NCElement], max_degree: int = 2, side: str = "left"
) -> CheckReport:
    """Type II datum: the unital subalgebra <gens> is a one-sided coideal.

    left: D(t) in H (x) <T>; right: D(t) in <T> (x) H.  Membership is decided
    over the local ring at q = 1 within products of at most max_degree
    generators.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rep = CheckReport(f"coideal-subalgebra-{side}")
    sub = subalgebra_slice(P, gens, max_degree)
    top = max((g.degree() for g in gens), default=0) * max_degree
    fmt = P.algebra.format_word
    for n, t in enumerate(gens):
        label = f"gen[{n}] {t}"
        ft = P.coproduct(t).field_terms()
        groups: Dict[Word, Dict[Word, object]] = {}
        for (w1, w2), x in ft.items():
            key, inner = (w1, w2) if side == "left" else (w2, w1)
            groups.setdefault(key, {})[inner] = x
        bad = None
        inconclusive = False
        for key in sorted(groups, key=word_key):
            y = groups[key]
            if not sub.contains(y):
                if max(len(w) for w in y) > top:
                    inconclusive = True
                    continue
                w, x = max(y.items(), key=lambda kv: word_key(kv[0]))
                pair = (fmt(key), fmt(w)) if side == "left" else (fmt(w), fmt(key))
                bad = f"{x} * {pair[0]} (x) {pair[1]}"
                break
        if bad:
            rep.record(label, "fail", bad)
        elif inconclusive:
            rep.record(label, "inconclusive", f"beyond degree {max_degree}")
        else:
            rep.record(label, "pass")
    return rep
