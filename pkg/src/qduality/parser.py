"""Reading and writing presentation files.

Presentation file (one algebra per file)::

    name fq_sl2
    side qfa                      # optional: qfa | quea
    generators a d b c            # first listed = largest
    relation a*b = q*b*a
    relation (q-1)*d*a = -a - d   # lhs: (q-1)^k * unit * word
    counit a -> 1
    coproduct a -> a (x) a + b (x) c
    antipode a -> d

Bialgebra file (one Lie bialgebra per file)::

    name sl2_std_bialg
    dim 3
    basis e h f
    bracket [h,e] = 2*e           # omitted brackets are zero
    cobracket d(e) = -1*e^h       # ^ is the wedge

Expressions use ``+ - * ^``, parentheses, rationals ``a/b`` and ``q^k``.
The token ``(x)`` is always the tensor separator, so a generator called
``x`` must not be written alone in parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .coeff import ONE, ZERO, T, LaurentScalar
from .hopf import HopfPresentation, TensorElement
from .ncalg import Algebra, NCElement, Rule, ValidationError, _add_into, format_terms

__all__ = [
    "PresentationSyntaxError",
    "parse_presentation",
    "format_presentation",
    "parse_expression",
    "parse_tensor_expression",
    "presentations_equal",
    "parse_rule",
    "parse_bialgebra",
    "format_bialgebra",
]


class PresentationSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int = 0, column: int = 0, token: str = ""):
        super().__init__(f"line {line}, column {column}: {message}" + (f" (at {token!r})" if token else ""))
        self.line = self.lineno = line
        self.column = self.offset = column
        self.token = token


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<tensor>\(x\))
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[-+*^()=,\[\]])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    col: int


def tokenize(text: str, line: int = 0, col0: int = 0) -> List[Token]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PresentationSyntaxError("unexpected character", line, col0 + pos + 1, text[pos])
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), col0 + pos + 1))
        pos = m.end()
    out.append(Token("end", "", col0 + pos + 1))
    return out


# Values: a "raw" element is {word: scalar}; a tensor is {(w1,...,wn): scalar}.


def _mul_raw(a, b):
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            _add_into(out, u + v, c * d)
    return out


class _ExprParser:
    def __init__(self, tokens: List[Token], names: Dict[str, int], line: int):
        self.toks = tokens
        self.i = 0
        self.names = names
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PresentationSyntaxError(msg, self.line, tok.col, tok.text)

    def expect(self, text):
        t = self.next()
        if t.text != text:
            self.error(f"expected {text!r}", t)
        return t

    # tensor level
    def tensor_sum(self):
        terms = {}
        sign = ONE
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -ONE if self.next().text == "-" else ONE
        self._add_tensor(terms, self.tensor_term(), sign)
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -ONE if self.next().text == "-" else ONE
            self._add_tensor(terms, self.tensor_term(), sign)
        return terms

    @staticmethod
    def _add_tensor(acc, t, sign):
        for k, c in t.items():
            _add_into(acc, k, sign * c)

    def tensor_term(self):
        factors = [self.product()]
        while self.peek().kind == "tensor":
            self.next()
            factors.append(self.product())
        out = {(): ONE}
        for f in factors:
            nxt = {}
            for k, c in out.items():
                for w, d in f.items():
                    _add_into(nxt, k + (w,), c * d)
            out = nxt
        return out

    # element level
    def sum(self):
        terms = {}
        sign = ONE
        if self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -ONE if self.next().text == "-" else ONE
        for w, c in self.product().items():
            _add_into(terms, w, sign * c)
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -ONE if self.next().text == "-" else ONE
            for w, c in self.product().items():
                _add_into(terms, w, sign * c)
        return terms

    def product(self):
        val = self.power()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.next()
            val = _mul_raw(val, self.power())
        return val

    def power(self):
        base, is_q = self.atom()
        if self.peek().text == "^":
            self.next()
            neg = False
            if self.peek().text == "-":
                self.next()
                neg = True
            t = self.next()
            if t.kind != "num" or "/" in t.text:
                self.error("expected an integer exponent", t)
            n = int(t.text)
            if neg:
                if not is_q:
                    self.error("negative exponent only allowed on q", t)
                return {(): LaurentScalar.monomial(-n)}
            out = {(): ONE}
            for _ in range(n):
                out = _mul_raw(out, base)
            return out
        return base

    def atom(self):
        t = self.next()
        if t.kind == "num":
            num, _, den = t.text.partition("/")
            return {(): LaurentScalar.monomial(0, Fraction(int(num), int(den) if den else 1))}, False
        if t.kind == "ident":
            if t.text == "q":
                return {(): LaurentScalar.monomial(1)}, True
            if t.text not in self.names:
                self.error("unknown generator", t)
            return {(self.names[t.text],): ONE}, False
        if t.text == "(":
            val = self.sum()
            self.expect(")")
            return val, False
        if t.text == "-":
            inner, _ = self.atom()
            return {w: -c for w, c in inner.items()}, False
        self.error("unexpected token", t)

    def done(self):
        if self.peek().kind != "end":
            self.error("unexpected trailing input")


def parse_expression(text: str, algebra: Algebra, line: int = 0) -> Dict:
    """Parse an element expression into raw (unreduced) terms."""
    p = _ExprParser(tokenize(text, line), algebra.index, line)
    val = p.sum()
    p.done()
    return val


def parse_tensor_expression(text: str, algebra: Algebra, line: int = 0) -> Dict:
    p = _ExprParser(tokenize(text, line), algebra.index, line)
    val = p.tensor_sum()
    p.done()
    return val


def _orient(lhs: Dict, rhs: Dict, line: int, text: str, names) -> Rule:
    if len(lhs) != 1:
        raise ValidationError(f"line {line}: left-hand side of {text!r} is not a single monomial")
    (word, c), = lhs.items()
    if not word:
        raise ValidationError(f"line {line}: left-hand side of {text!r} is a scalar")
    k = c.q1_valuation()
    unit = c.divide_by_q1(k)
    if not unit.is_unit():
        raise ValidationError(f"line {line}: coefficient {c} of {text!r} is not (q-1)^k times a unit")
    inv = unit.inverse()
    rhs_terms = tuple(sorted(((w, d * inv) for w, d in rhs.items() if d), key=lambda wd: wd[0]))
    return Rule(word, rhs_terms, k)


def parse_rule(text: str, algebra: Algebra, line: int = 0) -> Rule:
    """One ``lhs = rhs`` relation, oriented as in a presentation file."""
    if "=" not in text:
        raise PresentationSyntaxError("relation needs '='", line, 1, text)
    l, _, r = text.partition("=")
    return _orient(parse_expression(l, algebra, line), parse_expression(r, algebra, line), line, text.strip(), algebra.names)


def parse_presentation(source: str) -> HopfPresentation:
    name = ""
    side = None
    dim_hint = None
    names: Optional[List[str]] = None
    relations: List[Tuple[int, str, str, str]] = []
    maps: Dict[str, Dict[str, Tuple[int, str]]] = {"counit": {}, "coproduct": {}, "antipode": {}}
    seen_any = False
    for lineno, raw_line in enumerate(source.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        seen_any = True
        stripped = line.lstrip()
        offset = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        rest_col = offset + len(keyword) + 2
        if keyword == "name":
            name = rest.strip()
        elif keyword == "side":
            side = rest.strip()
            if side not in ("qfa", "quea"):
                raise PresentationSyntaxError("side must be qfa or quea", lineno, rest_col, side)
        elif keyword == "dimension":
            dim_hint = int(rest)
        elif keyword == "generators":
            names = rest.split()
            for n in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n) or n == "q":
                    raise PresentationSyntaxError("bad generator name", lineno, rest_col, n)
        elif keyword == "relation":
            if "=" not in rest:
                raise PresentationSyntaxError("relation needs '='", lineno, rest_col, rest)
            l, _, r = rest.partition("=")
            relations.append((lineno, l, r, rest))
        elif keyword in maps:
            if "->" not in rest:
                raise PresentationSyntaxError("expected '->'", lineno, rest_col, rest)
            g, _, body = rest.partition("->")
            maps[keyword][g.strip()] = (lineno, body)
        else:
            raise PresentationSyntaxError("unknown keyword", lineno, offset + 1, keyword)
    if not seen_any:
        raise PresentationSyntaxError("empty presentation", 1, 1)
    if names is None:
        raise PresentationSyntaxError("missing 'generators' line", 1, 1)
    try:
        bare = Algebra(names)
    except ValidationError as exc:
        raise PresentationSyntaxError(str(exc), 1, 1)
    rules = []
    for lineno, l, r, text in relations:
        lhs = parse_expression(l, bare, lineno)
        rhs = parse_expression(r, bare, lineno)
        rules.append(_orient(lhs, rhs, lineno, text.strip(), names))
    algebra = Algebra(names, rules)
    counit = {}
    for g, (lineno, body) in maps["counit"].items():
        if g not in algebra.index:
            raise PresentationSyntaxError("unknown generator", lineno, 1, g)
        val = parse_expression(body, algebra, lineno)
        if any(val_w for val_w in val):
            raise ValidationError(f"line {lineno}: counit of {g} must be a scalar")
        counit[g] = val.get((), ZERO)
    coproduct = {}
    for g, (lineno, body) in maps["coproduct"].items():
        if g not in algebra.index:
            raise PresentationSyntaxError("unknown generator", lineno, 1, g)
        raw = parse_tensor_expression(body, algebra, lineno)
        bad = [k for k in raw if len(k) != 2]
        if bad:
            raise ValidationError(f"line {lineno}: coproduct of {g} must have two tensor factors")
        coproduct[g] = TensorElement.from_raw(algebra, 2, raw)
    antipode = {}
    for g, (lineno, body) in maps["antipode"].items():
        if g not in algebra.index:
            raise PresentationSyntaxError("unknown generator", lineno, 1, g)
        antipode[g] = algebra.element(parse_expression(body, algebra, lineno))
    return HopfPresentation(algebra, counit, coproduct, antipode, name=name, side=side, classical_dimension_hint=dim_hint)


def format_rule(algebra: Algebra, rule: Rule) -> str:
    lhs = algebra.format_word(rule.lhs)
    if rule.power == 1:
        lhs = f"(q-1)*{lhs}"
    elif rule.power > 1:
        lhs = f"(q-1)^{rule.power}*{lhs}"
    return f"{lhs} = {format_terms(algebra, dict(rule.rhs))}"


def format_presentation(P: HopfPresentation) -> str:
    alg = P.algebra
    lines = []
    if P.name:
        lines.append(f"name {P.name}")
    if P.side:
        lines.append(f"side {P.side}")
    if P.classical_dimension_hint is not None:
        lines.append(f"dimension {P.classical_dimension_hint}")
    lines.append("generators " + " ".join(alg.names))
    for rule in alg.rules:
        lines.append("relation " + format_rule(alg, rule))
    for i, g in enumerate(alg.names):
        lines.append(f"counit {g} -> {P.counit_map[i]}")
    for i, g in enumerate(alg.names):
        lines.append(f"coproduct {g} -> {P.coproduct_map[i]}")
    for i, g in enumerate(alg.names):
        lines.append(f"antipode {g} -> {P.antipode_map[i]}")
    return "\n".join(lines) + "\n"


def presentations_equal(P1: HopfPresentation, P2: HopfPresentation) -> bool:
    a1, a2 = P1.algebra, P2.algebra
    if a1.names != a2.names:
        return False
    if sorted((r.lhs, r.power, r.rhs) for r in a1.rules) != sorted((r.lhs, r.power, r.rhs) for r in a2.rules):
        return False
    return (
        P1.counit_map == P2.counit_map
        and all(P1.coproduct_map[i].terms == P2.coproduct_map[i].terms for i in P1.coproduct_map)
        and all(P1.antipode_map[i].terms == P2.antipode_map[i].terms for i in P1.antipode_map)
    )


# -- Lie bialgebra files ---------------------------------------------------------


def _linear_terms(tokens: List[Token], index: Dict[str, int], line: int, wedge: bool):
    """Parse ``c1*x + c2*y - ...`` (or ``c*x^y`` when wedge) into {key: Fraction}."""
    out: Dict = {}
    i = 0

    def err(msg, tok):
        raise PresentationSyntaxError(msg, line, tok.col, tok.text)

    def label(tok):
        if tok.kind != "ident" or tok.text not in index:
            err("unknown basis element", tok)
        return index[tok.text]

    if tokens[0].kind == "num" and tokens[0].text == "0" and tokens[1].kind == "end":
        return out
    first = True
    while tokens[i].kind != "end":
        sign = 1
        if tokens[i].text in "+-" and tokens[i].kind == "op":
            sign = -1 if tokens[i].text == "-" else 1
            i += 1
        elif not first:
            err("expected '+' or '-'", tokens[i])
        first = False
        coeff = Fraction(1)
        if tokens[i].kind == "num":
            coeff = Fraction(tokens[i].text)
            i += 1
            if tokens[i].text != "*":
                err("expected '*'", tokens[i])
            i += 1
        key = label(tokens[i])
        i += 1
        if wedge:
            if tokens[i].text != "^":
                err("expected '^'", tokens[i])
            j = label(tokens[i + 1])
            i += 2
            a, b = key, j
            if a == b:
                continue
            if a > b:
                a, b, coeff = b, a, -coeff
            key = (a, b)
        out[key] = out.get(key, Fraction(0)) + sign * coeff
    return {k: v for k, v in out.items() if v}


def parse_bialgebra(source: str):
    from .liebialg import LieBialgebra

    name, dim, labels = "", None, None
    bracket: Dict = {}
    cobracket: Dict = {}
    pending = []
    for lineno, raw_line in enumerate(source.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "name":
            name = rest.strip()
        elif keyword == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise PresentationSyntaxError("dim needs an integer", lineno, 5, rest)
        elif keyword == "basis":
            labels = rest.split()
        elif keyword in ("bracket", "cobracket"):
            pending.append((lineno, keyword, rest))
        else:
            raise PresentationSyntaxError("unknown keyword", lineno, 1, keyword)
    if labels is None:
        raise PresentationSyntaxError("missing 'basis' line", 1, 1)
    if dim is not None and dim != len(labels):
        raise ValidationError(f"dim {dim} does not match {len(labels)} basis elements")
    index = {s: i for i, s in enumerate(labels)}
    for lineno, keyword, rest in pending:
        toks = tokenize(rest, lineno)
        if keyword == "bracket":
            # [x,y] = expr
            if [t.text for t in toks[:1]] != ["["] or len(toks) < 7 or toks[2].text != "," or toks[4].text != "]" or toks[5].text != "=":
                raise PresentationSyntaxError("expected '[x,y] = expr'", lineno, toks[0].col, toks[0].text)
            i, j = (index.get(toks[k].text) for k in (1, 3))
            if i is None or j is None:
                bad = toks[1] if i is None else toks[3]
                raise PresentationSyntaxError("unknown basis element", lineno, bad.col, bad.text)
            vec = _linear_terms(toks[6:], index, lineno, wedge=False)
            bracket[(i, j)] = vec
            bracket[(j, i)] = {k: -v for k, v in vec.items()}
        else:
            # d(x) = expr
            if len(toks) < 6 or toks[0].text != "d" or toks[1].text != "(" or toks[3].text != ")" or toks[4].text != "=":
                raise PresentationSyntaxError("expected 'd(x) = expr'", lineno, toks[0].col, toks[0].text)
            i = index.get(toks[2].text)
            if i is None:
                raise PresentationSyntaxError("unknown basis element", lineno, toks[2].col, toks[2].text)
            cobracket[i] = _linear_terms(toks[5:], index, lineno, wedge=True)
    return LieBialgebra(labels, bracket, cobracket, name=name)


def _fmt_linear(items) -> str:
    parts = []
    for c, body in items:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        parts.append(f"{sign} {body}" if c == 1 else f"{sign} {c}*{body}")
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def format_bialgebra(g) -> str:
    lines = []
    if g.name:
        lines.append(f"name {g.name}")
    lines.append(f"dim {g.n}")
    lines.append("basis " + " ".join(g.labels))
    for i in range(g.n):
        for j in range(i + 1, g.n):
            vec = g.c[i][j]
            if any(vec):
                items = [(c, g.labels[k]) for k, c in enumerate(vec) if c]
                lines.append(f"bracket [{g.labels[i]},{g.labels[j]}] = {_fmt_linear(items)}")
    for i in range(g.n):
        if g.gamma[i]:
            items = [(c, f"{g.labels[a]}^{g.labels[b]}") for (a, b), c in sorted(g.gamma[i].items())]
            lines.append(f"cobracket d({g.labels[i]}) = {_fmt_linear(items)}")
    return "\n".join(lines) + "\n"
