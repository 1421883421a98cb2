import random
from fractions import Fraction

import pytest

from qduality.catalog import data_text, load_example
from qduality.liebialg import (
    LieBialgebra,
    NotASubalgebra,
    Subspace,
    check_bialgebra,
    complementary_dual,
    coordinate_subalgebras,
    dual_bialgebra,
    galois_composite,
    generated_subalgebra,
    is_coisotropic,
    is_sub_bialgebra,
    is_subalgebra,
    orthogonal,
    random_subalgebras,
    sl_standard,
)
from qduality.parser import parse_bialgebra


@pytest.fixture(scope="module")
def sl2():
    return load_example("sl2_std_bialg").payload


@pytest.fixture(scope="module")
def sl3():
    return load_example("sl3_std_bialg").payload


def span(g, *labels):
    return Subspace.span(g, [g.vec(x) for x in labels])


def random_subspace(g, rng):
    dim = rng.randint(0, g.n)
    return Subspace(g, [[Fraction(rng.randint(-2, 2)) for _ in range(g.n)] for _ in range(dim)])


def test_check_bialgebra(sl2, sl3):
    assert check_bialgebra(sl2).verdict == "pass"
    assert check_bialgebra(sl3).verdict == "pass"
    table = {(i, j): dict(enumerate(sl2.c[i][j])) for i in range(3) for j in range(3)}
    trivial = LieBialgebra(sl2.labels, table, {})
    assert check_bialgebra(trivial).verdict == "pass"


def test_perturbed_cobracket_fails():
    # d(e) = -e^h shifted by +1 becomes zero
    text = data_text("sl2_std_bialg.lie").replace("cobracket d(e) = -e^h\n", "")
    report = check_bialgebra(parse_bialgebra(text))
    assert report.verdict == "fail"
    failing = report.failures()
    assert "cocycle" in failing and failing["cocycle"].get("witness")


def test_dual_bialgebra(sl2):
    d = dual_bialgebra(sl2)
    assert d.labels == ("e*", "h*", "f*")
    assert d.format_vec(d.bracket(d.vec("h*"), d.vec("e*"))) == "e*"
    assert d.format_vec(d.bracket(d.vec("h*"), d.vec("f*"))) == "f*"
    assert not any(d.bracket(d.vec("e*"), d.vec("f*")))
    assert check_bialgebra(d).verdict == "pass"
    assert sl2.dual.dual is sl2
    abelian = dual_bialgebra(LieBialgebra(["x", "y"], {(0, 1): {1: 1}, (1, 0): {1: -1}}, {}))
    assert not any(abelian.bracket(abelian.vec("x*"), abelian.vec("y*")))


def test_orthogonal_examples(sl2):
    assert orthogonal(span(sl2, "e", "h")) == span(sl2.dual, "f*")
    assert orthogonal(Subspace(sl2)) == Subspace.whole(sl2.dual)


def test_generated_subalgebra_examples(sl2):
    assert generated_subalgebra(span(sl2, "e", "f")) == Subspace.whole(sl2)
    assert generated_subalgebra(span(sl2, "h")) == span(sl2, "h")
    assert generated_subalgebra(Subspace(sl2)) == Subspace(sl2)


def test_coisotropy_examples(sl2, sl3):
    k = span(sl2, "h", "e")
    assert is_subalgebra(k) and is_coisotropic(k)
    with pytest.raises(NotASubalgebra):
        is_coisotropic(span(sl2, "e", "f"))
    bad = [k for k in coordinate_subalgebras(sl3) if not is_coisotropic(k)]
    assert bad
    assert galois_composite(bad[0]) != bad[0]


def test_complementary_dual_examples(sl2):
    g = Subspace.whole(sl2)
    assert complementary_dual(g).dim == 0
    assert complementary_dual(Subspace(sl2)) == Subspace.whole(sl2.dual)
    assert complementary_dual(span(sl2, "h", "e")) == span(sl2.dual, "f*")


def test_galois_composite_fixed_points(sl2):
    assert galois_composite(Subspace(sl2)) == Subspace(sl2)
    assert galois_composite(Subspace.whole(sl2)) == Subspace.whole(sl2)
    k = span(sl2, "h", "e")
    assert galois_composite(k) == k


def test_sub_bialgebra(sl2):
    assert is_sub_bialgebra(span(sl2, "h", "e"))
    assert not is_sub_bialgebra(span(sl2, "e"))
    assert is_sub_bialgebra(span(sl2, "h"))


def test_orthogonal_is_an_involution(sl3):
    rng = random.Random(1)
    for _ in range(100):
        k = random_subspace(sl3, rng)
        assert orthogonal(orthogonal(k)) == k
        assert orthogonal(k).dim == sl3.n - k.dim


def test_closure_operator(sl3):
    rng = random.Random(2)
    for _ in range(30):
        s, t = random_subspace(sl3, rng), random_subspace(sl3, rng)
        c = generated_subalgebra(s)
        assert s <= c
        assert generated_subalgebra(c) == c
        assert is_subalgebra(c)
        assert c <= generated_subalgebra(s + t)


@pytest.mark.parametrize("n", [2, 3])
def test_coisotropic_iff_orthogonal_closed(n):
    g = sl_standard(n)
    for k in coordinate_subalgebras(g):
        assert is_coisotropic(k) == is_subalgebra(orthogonal(k))


def test_sl_standard_matches_files(sl2, sl3):
    assert sl_standard(2) == sl2
    assert sl_standard(3) == sl3


def test_random_census_without_matrices():
    g = parse_bialgebra(data_text("sl2_std_bialg.lie"))
    assert g.matrices is None
    subs = random_subalgebras(g, 100, seed=5)
    assert len(subs) == 100
    assert len({tuple(k.rows) for k in subs}) == 100
    assert all(is_subalgebra(k) for k in subs)
