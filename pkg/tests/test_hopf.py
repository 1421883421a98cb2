import random

import pytest

from qduality.catalog import load_example
from qduality.hopf import TensorElement, check_coideal_subalgebra, check_hopf_axioms, check_ideal_coideal
from qduality.ncalg import random_element
from qduality.parser import parse_presentation, parse_tensor_expression
from util import el


@pytest.fixture(scope="module")
def sl2():
    return load_example("fq_sl2").payload


def tensor(P, text, arity=2):
    return TensorElement.from_raw(P.algebra, arity, parse_tensor_expression(text, P.algebra))


def test_coproduct_examples(sl2):
    A = sl2.algebra
    assert sl2.coproduct(el(A, "a")) == tensor(sl2, "a (x) a + b (x) c")
    assert sl2.coproduct(A.one()) == tensor(sl2, "1 (x) 1")
    expected = tensor(sl2, "a (x) a + b (x) c") * tensor(sl2, "a (x) b + b (x) d")
    assert sl2.coproduct(el(A, "a*b")) == expected


def test_iterated_coproduct(sl2):
    A = sl2.algebra
    a = el(A, "a")
    assert sl2.iterated_coproduct(a, 1).terms == {((0,),): 1}
    assert sl2.iterated_coproduct(A.one(), 3) == tensor(sl2, "1 (x) 1 (x) 1", 3)
    rows = "a (x) a (x) a + a (x) b (x) c + b (x) c (x) a + b (x) d (x) c"
    assert sl2.iterated_coproduct(a, 3) == tensor(sl2, rows, 3)


def test_counit_and_antipode(sl2):
    A = sl2.algebra
    assert sl2.counit(el(A, "a")) == 1
    assert sl2.counit(el(A, "b")) == 0
    assert sl2.counit(A.one()) == 1
    assert sl2.antipode(A.one()) == A.one()
    assert sl2.antipode(el(A, "a")) == el(A, "d")
    x, y = el(A, "a"), el(A, "b")
    assert sl2.antipode(x * y) == sl2.antipode(y) * sl2.antipode(x)


def test_delta_n(sl2):
    A = sl2.algebra
    assert sl2.delta_n(el(A, "a"), 1) == tensor(sl2, "a - 1", 1)
    for n in (1, 2, 3):
        assert sl2.delta_n(A.one(), n).is_zero()
    expected = tensor(sl2, "a (x) a - a (x) 1 - 1 (x) a + 1 (x) 1 + b (x) c")
    assert sl2.delta_n(el(A, "a"), 2) == expected


@pytest.mark.parametrize("name", ["fq_sl2", "fq_sl3", "borel_sl2", "abelian_toy", "rll_gl3"])
def test_catalog_axioms(name):
    assert check_hopf_axioms(load_example(name, validate=False).payload, 3).verdict == "pass"


def test_non_counital_toy_fails():
    P = parse_presentation(
        "name bad\ngenerators x\ncounit x -> 0\ncoproduct x -> x (x) 1\nantipode x -> -x\n"
    )
    report = check_hopf_axioms(P, 3)
    assert report.verdict == "fail"
    assert any("counit" in k for k in report.failures())


def test_ideal_coideal_examples(sl2):
    A = sl2.algebra
    assert check_ideal_coideal(sl2, [el(A, "c")]).verdict == "pass"
    assert check_ideal_coideal(sl2, [el(A, "a")]).verdict == "fail"
    assert check_ideal_coideal(sl2, []).verdict == "pass"


def test_coideal_subalgebra_examples(sl2):
    A = sl2.algebra
    report = check_coideal_subalgebra(sl2, [el(A, "c")], side="left")
    assert report.verdict == "fail"
    (witness,) = [c["witness"] for c in report.failures().values()]
    assert witness == "1 * c (x) a"
    assert check_coideal_subalgebra(sl2, [A.one()]).verdict == "pass"
    # the first matrix column spans a left coideal: c (x) a + d (x) c
    assert check_coideal_subalgebra(sl2, [el(A, "a"), el(A, "c")], side="left").verdict == "pass"


def test_group_like_delta_recursion():
    P = load_example("rll_gl3").payload
    K = P.gen("K1")
    assert P.coproduct(K) == tensor(P, "K1 (x) K1")
    assert P.delta_n(K, 2) == tensor(P, "K1 (x) K1 - K1 (x) 1 - 1 (x) K1 + 1 (x) 1")
    three = "K1 (x) K1 (x) K1 - K1 (x) K1 (x) 1 - K1 (x) 1 (x) K1 - 1 (x) K1 (x) K1"
    three += " + K1 (x) 1 (x) 1 + 1 (x) K1 (x) 1 + 1 (x) 1 (x) K1 - 1 (x) 1 (x) 1"
    assert P.delta_n(K, 3) == tensor(P, three, 3)


def test_counit_is_multiplicative(sl2):
    A = sl2.algebra
    rng = random.Random(11)
    for _ in range(30):
        x, y = (A.element(random_element(A, rng, 2)) for _ in range(2))
        assert sl2.counit(x * y) == sl2.counit(x) * sl2.counit(y)


@pytest.mark.parametrize("name", ["fq_sl2", "borel_sl2", "fq_sl3"])
def test_coassociativity_and_counit_on_random_elements(name):
    P = load_example(name).payload
    A = P.algebra
    rng = random.Random(5)
    for _ in range(10):
        x = A.element(random_element(A, rng, 2))
        d = P.coproduct(x)
        assert P.apply_to_factor(d, 0) == P.apply_to_factor(d, 1)
        as_one = TensorElement(A, 1, {(w,): c for w, c in x.terms.items()})
        assert P.counit_tensor(d, 0) == as_one
        assert P.counit_tensor(d, 1) == as_one
