import pytest
import sympy as sp

from qduality.catalog import (
    CATALOG,
    STOKES_RELATIONS,
    BracketTable,
    UnknownExample,
    UnsupportedN,
    data_text,
    load_example,
    manin_triple_cobracket,
    oracle_b,
    read_golden,
    so_n_embedding_check,
    stokes_bracket,
    verify_stokes_quantization,
    write_golden,
)
from qduality.coeff import Q
from qduality.liebialg import sl_standard
from qduality.parser import parse_bialgebra


@pytest.fixture(scope="module")
def table():
    return stokes_bracket(3)


def test_load_fq_sl2():
    entry = load_example("fq_sl2")
    P = entry.payload
    assert sorted(P.names) == ["a", "b", "c", "d"]
    assert len(P.algebra.rules) == 7
    assert entry.validation.verdict == "pass"
    a, b, c, d = (P.gen(x) for x in "abcd")
    assert a * d - (b * c).scale(Q) == P.algebra.one()


def test_load_bialgebra_and_unknown():
    entry = load_example("sl2_std_bialg")
    assert entry.kind == "lie_bialgebra"
    assert entry.validation.verdict == "pass"
    with pytest.raises(UnknownExample):
        load_example("nosuch")


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_every_entry_loads(name):
    entry = load_example(name)
    assert entry.provenance
    if entry.validation is not None:
        assert entry.validation.verdict == "pass"


def test_bialgebra_files_match_construction():
    assert load_example("sl2_std_bialg").payload == sl_standard(2)
    assert load_example("sl3_std_bialg").payload == sl_standard(3)


def test_manin_triple_reproduces_cobracket():
    g = sl_standard(3)
    idx = [(a, b) for a in range(3) for b in range(3)]
    for i, m in enumerate(g.matrices):
        X = sp.Matrix(3, 3, lambda a, b: sp.Rational(m[a][b]))
        expected = {}
        for (j, k), c in g.gamma[i].items():
            mj, mk = g.matrices[j], g.matrices[k]
            for a, b in idx:
                for e, f in idx:
                    v = c * (mj[a][b] * mk[e][f] - mk[a][b] * mj[e][f])
                    if v:
                        key = ((a, b), (e, f))
                        expected[key] = expected.get(key, 0) + v
        expected = {k: sp.Rational(v) for k, v in expected.items() if v}
        assert manin_triple_cobracket(3, X) == expected, g.labels[i]


def test_stokes_bracket_examples(table):
    s12 = sp.Symbol("s12")
    assert table.bracket(s12, s12) == 0
    assert table.jacobi_failures() == []
    for x, y in table.pairs():
        assert sp.expand(table.get(x, y) + table.get(y, x)) == 0
    with pytest.raises(UnsupportedN):
        stokes_bracket(5)


def test_golden_matches_both_oracles(table):
    golden = read_golden()
    assert golden == table
    assert golden == oracle_b()
    assert BracketTable.from_text(table.to_text()) == table


def test_regenerated_golden_is_identical(tmp_path, table):
    digests = write_golden(tmp_path)
    assert digests["oracle_a"] == digests["oracle_b"] == table.digest()
    written = (tmp_path / "stokes3_bracket.txt").read_text()
    shipped = data_text("golden/stokes3_bracket.txt")
    assert written == shipped


def test_verify_stokes_quantization():
    report = verify_stokes_quantization()
    assert report["verdict"] == "pass"
    assert report["match"]
    assert len(report["pairs"]) == 3
    assert all(p["match"] for p in report["pairs"].values())


def test_perturbed_stokes_relation():
    relations = list(STOKES_RELATIONS)
    relations[0] = "S23*S13 = q^-1*S13*S23 + (1 - q^-3)*S12"
    report = verify_stokes_quantization(relations)
    assert report["verdict"] == "fail"
    assert not report["match"]
    assert report["witness"] == "{s13, s23}"
    assert report["checks"]["relations_hold_in_rll_gl3"]["status"] == "fail"


def test_so3_embedding():
    out = so_n_embedding_check(3)
    assert out["subalgebra"] and out["coisotropic"]
    assert not out["sub_bialgebra"]
    assert out["dim_complementary_dual"] == 5
    golden = dict(line.split(" ", 1) for line in data_text("golden/so3_embedding.txt").split("\n") if line and not line.startswith("#"))
    assert golden["coisotropic"] == "True"
    assert golden["sub_bialgebra"] == "False"
    assert int(golden["dim_complementary_dual"]) == out["dim_complementary_dual"]


def test_so3_perturbed_cobracket():
    text = data_text("sl3_std_bialg.lie").replace("cobracket d(E12) = -E12^H1", "cobracket d(E12) = H1^H2 - E12^H1")
    out = so_n_embedding_check(3, parse_bialgebra(text))
    assert out["subalgebra"]
    assert not out["coisotropic"]


@pytest.mark.parametrize("n", [2, 4])
def test_so_n_unsupported(n):
    with pytest.raises(UnsupportedN):
        so_n_embedding_check(n)
