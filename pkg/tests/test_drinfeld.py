import pytest

from qduality.catalog import load_example
from qduality.coeff import T
from qduality.drinfeld import (
    COCOMMUTATIVE,
    COMMUTATIVE,
    NEITHER,
    cocommutator,
    galois_map_quantum,
    poisson_bracket,
    prime_membership,
    semiclassical_specialize,
    specialize,
    vee_functor,
)
from qduality.hopf import TensorElement
from qduality.liebialg import Subspace, complementary_dual
from qduality.parser import parse_presentation, parse_tensor_expression
from util import el

NEITHER_TOY = """name neither
generators y x
relation y*x = x*y + 1
counit x -> 0
counit y -> 0
coproduct x -> x (x) 1 + 1 (x) x
coproduct y -> y (x) 1 + x (x) y
antipode x -> -x
antipode y -> -y
"""

# g = 1 + (q-1)x plays the role of a group-like twist
TWISTED_TOY = """name twisted
generators y x
relation y*x = x*y
counit x -> 0
counit y -> 0
coproduct x -> x (x) 1 + 1 (x) x
coproduct y -> y (x) 1 + 1 (x) y + (q-1)*x (x) y
antipode x -> -x
antipode y -> -y
"""

GROUP_LIKE = """name grouplike
generators g gi
relation g*gi = 1
relation gi*g = 1
counit g -> 1
counit gi -> 1
coproduct g -> g (x) g
coproduct gi -> gi (x) gi
antipode g -> gi
antipode gi -> g
"""


@pytest.fixture(scope="module")
def sl2():
    return load_example("fq_sl2").payload


def test_sl2_poisson_brackets(sl2):
    A = sl2.algebra
    a, b, c, d = (sl2.gen(x) for x in "abcd")
    spec = specialize(a)
    S = spec.algebra
    assert poisson_bracket(a, b, sl2) == specialize(el(A, "a*b"))
    assert poisson_bracket(b, c, sl2).is_zero()
    assert poisson_bracket(a, d, sl2) == specialize(el(A, "2*b*c"))
    assert poisson_bracket(a, a, sl2).is_zero()
    assert S.names == A.names


def test_classification(sl2):
    limit = semiclassical_specialize(sl2)
    assert limit.kind == COMMUTATIVE
    assert limit.table_strings()["a,d"] == "2*c*b"
    toy = vee_functor(load_example("abelian_toy").payload)
    limit = semiclassical_specialize(toy)
    assert limit.kind == COCOMMUTATIVE
    assert all(v.is_zero() for v in limit.table.values())
    assert semiclassical_specialize(parse_presentation(NEITHER_TOY)).kind == NEITHER


def test_cocommutator_examples():
    P = parse_presentation(TWISTED_TOY)
    A = P.algebra
    expected = parse_tensor_expression("x (x) y - y (x) x", A)
    assert cocommutator(P.gen("y"), P) == TensorElement.from_raw(A, 2, expected)
    assert cocommutator(P.gen("x"), P).is_zero()
    assert cocommutator(A.one(), P).is_zero()


def test_vee_of_abelian_toy():
    V = vee_functor(load_example("abelian_toy").payload)
    assert V.names == ("tv",)
    assert V.algebra.rules == ()
    t = V.gen("tv")
    assert V.coproduct(t) == TensorElement.from_raw(V.algebra, 2, parse_tensor_expression("tv (x) 1 + 1 (x) tv", V.algebra))
    assert V.validation.verdict == "pass"


def test_vee_of_group_like_toy():
    V = vee_functor(parse_presentation(GROUP_LIKE))
    assert V.validation.verdict == "pass"
    # the two generators collapse at q = 1: giv = -gv, one abelian direction
    assert specialize(V.gen("giv") + V.gen("gv")).is_zero()
    assert semiclassical_specialize(V).kind == COCOMMUTATIVE


def test_vee_of_borel():
    V = vee_functor(load_example("borel_sl2").payload)
    A = V.algebra
    assert el(A, "av*bv - q*bv*av") == el(A, "bv")
    assert V.validation.verdict == "pass"


def test_prime_membership_examples():
    V = vee_functor(load_example("abelian_toy").payload)
    t = V.gen("tv")
    m = prime_membership(t, V, 3)
    assert not m.holds and m.failing_n == 1
    assert m.verdict == "false_with_witness"
    m = prime_membership(t.scale(T), V, 3)
    assert m.holds and m.verdict == "true_up_to_3"
    assert prime_membership(V.algebra.one(), V, 5).holds


def test_galois_borel_matches_complementary_dual(sl2):
    P_vee, gens = galois_map_quantum(sl2, [sl2.gen("c")])
    assert str(gens[0]) == "cv"
    g = load_example("sl2_std_bialg").payload
    k = Subspace.span(g, [g.vec("h"), g.vec("e")])
    # identification av <-> h*, dv <-> -h*, bv <-> e*, cv <-> f*
    assert complementary_dual(k) == Subspace.span(g.dual, [g.dual.vec("f*")])


def test_galois_degenerate_cases(sl2):
    P_vee, gens = galois_map_quantum(sl2, [])
    # only the image of F_q[SL2] remains, which is scalar at q = 1
    assert all(specialize(x).degree() <= 0 for x in gens)
    kernel = [sl2.gen("a") - 1, sl2.gen("b"), sl2.gen("c"), sl2.gen("d") - 1]
    P_vee, gens = galois_map_quantum(sl2, kernel)
    assert [str(x) for x in gens[:4]] == ["av", "bv", "cv", "dv"]


def test_galois_rejects_non_kernel(sl2):
    with pytest.raises(ValueError):
        galois_map_quantum(sl2, [sl2.gen("a")])
