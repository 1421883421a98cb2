"""Small constructors shared by the test modules."""

from qduality.ncalg import Algebra
from qduality.parser import parse_expression, parse_rule


def algebra(names, *rules):
    bare = Algebra(names)
    return Algebra(names, [parse_rule(r, bare) for r in rules])


def el(alg, text):
    return alg.element(parse_expression(text, alg))
