import pytest
from hypothesis import given, settings, strategies as st

from layergroups.bunch import Parity, bunch_parity
from layergroups.catalog import bz2, es2, os3, sugihara_bunch
from layergroups.errors import InfiniteChain, NotResiduated, ParseError, SizeGuard, DomainError
from layergroups.finite_chain import (
    FiniteChain,
    enumerate_homs_bruteforce,
    fc_enumerate_homs,
    fc_isomorphic,
    fc_materialize,
    fc_negate,
    fc_parity,
    fc_residuum,
    fc_validate,
    format_finite_chain,
    generate_sugihara,
    is_hom,
    parse_finite_chain,
    sugihara_table,
)

OS3 = FiniteChain(3, [[0, 0, 0], [0, 1, 2], [0, 2, 2]], 1, 1)
ES2 = FiniteChain(2, [[0, 0], [0, 1]], 1, 0)


def test_materialize_hand_tables():
    C = fc_materialize(os3())
    assert C == OS3
    assert [str(e) for e in C.elements] == ["u:*[]", "t:[]", "u:[]"]
    assert fc_materialize(es2()) == ES2
    with pytest.raises(InfiniteChain):
        fc_materialize(bz2())


def test_validate_and_parity():
    rep = fc_validate(OS3)
    assert rep.ok and rep["class"].witness == "Odd"
    rep = fc_validate(ES2)
    assert rep.ok and rep["class"].witness == "EvenIdem"
    broken = FiniteChain(3, OS3.product, 2, 2)
    rep = fc_validate(broken)
    assert not rep.ok and rep["unit"].status.value == "FAIL"


def test_non_residuated_table():
    C = FiniteChain(2, [[1, 1], [1, 1]], 1, 1)
    rep = fc_validate(C)
    assert rep["residuated"].status.value == "FAIL"
    with pytest.raises(NotResiduated):
        fc_residuum(C, 0, 0)


def test_residuum_and_negation():
    assert fc_residuum(OS3, 2, 0) == 0
    for z in range(3):
        assert fc_residuum(OS3, OS3.t, z) == z
    assert fc_residuum(ES2, 0, 0) == 1
    assert fc_negate(OS3, 1) == 1
    assert fc_negate(ES2, 1) == 0


def test_isomorphic():
    assert fc_isomorphic(OS3, OS3) == {0: 0, 1: 1, 2: 2}
    assert fc_isomorphic(OS3, ES2) is None
    # OS3 listed as (u, •u, t): element i sits at chain position rank[i]
    rank = [2, 0, 1]
    perm = [[None] * 3 for _ in range(3)]
    inv = {r: i for i, r in enumerate(rank)}
    for a in range(3):
        for b in range(3):
            perm[inv[a]][inv[b]] = inv[OS3.product[a][b]]
    C, bij = FiniteChain.from_ranked(perm, inv[1], inv[1], rank)
    assert fc_isomorphic(C, OS3) is not None
    assert bij == {0: 2, 1: 0, 2: 1}
    with pytest.raises(DomainError):
        FiniteChain.from_ranked(perm, 0, 0, [0, 0, 1])


def test_enumerate_examples():
    homs = fc_enumerate_homs(OS3, OS3)
    assert homs == enumerate_homs_bruteforce(OS3, OS3)
    assert homs == [(0, 1, 2), (1, 1, 1)]
    assert (1, 1) in fc_enumerate_homs(ES2, OS3)
    assert fc_enumerate_homs(OS3, ES2) == []
    with pytest.raises(SizeGuard):
        fc_enumerate_homs(generate_sugihara("odd", 9), OS3)


@pytest.mark.parametrize("a", [1, 2, 3, 4])
@pytest.mark.parametrize("b", [1, 2, 3, 4, 5])
def test_enumerate_matches_bruteforce(a, b):
    C1 = generate_sugihara("odd" if a % 2 else "even", a)
    C2 = generate_sugihara("odd" if b % 2 else "even", b)
    assert fc_enumerate_homs(C1, C2) == enumerate_homs_bruteforce(C1, C2)


def test_category_laws_small():
    chains = [generate_sugihara("odd" if n % 2 else "even", n) for n in range(1, 6)]
    for A in chains:
        assert tuple(range(A.n)) in fc_enumerate_homs(A, A)
        for B in chains:
            for C in chains:
                hc = set(fc_enumerate_homs(A, C))
                for f in fc_enumerate_homs(A, B):
                    for g in fc_enumerate_homs(B, C):
                        assert tuple(g[f[x]] for x in range(A.n)) in hc


@pytest.mark.parametrize("n", range(1, 10))
def test_generated_sugihara_matches_closed_form(n):
    kind = "odd" if n % 2 else "even"
    C = generate_sugihara(kind, n)
    assert C == sugihara_table(kind, n)
    rep = fc_validate(C)
    assert rep.ok
    assert fc_parity(C) is bunch_parity(sugihara_bunch(kind, n))


def test_generate_examples():
    assert generate_sugihara("odd", 3) == OS3
    assert generate_sugihara("even", 2) == ES2
    one = generate_sugihara("odd", 1)
    assert one.n == 1 and one.t == one.f == 0
    with pytest.raises(DomainError):
        generate_sugihara("even", 5)


def test_file_roundtrip_and_errors():
    text = format_finite_chain(OS3)
    assert text == "n 3\nt 1\nf 1\n0 0 0\n0 1 2\n0 2 2\n"
    assert parse_finite_chain(text) == OS3
    assert format_finite_chain(parse_finite_chain("# c\nn 3\nt 1\nf  1\n0 0 0\n0 1 2\n0 2 2")) == text
    with pytest.raises(ParseError) as e:
        parse_finite_chain("n 3\nt 1\nf 1\n0 0 0\n0 1\n0 2 2\n")
    assert e.value.line == 5
    with pytest.raises(ParseError):
        parse_finite_chain("n 2\nt 1\nf 1\n0 0\n")
    with pytest.raises(ParseError):
        parse_finite_chain("n 2\nt x\nf 1\n0 0\n0 1\n")


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                         min_size=n, max_size=n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_validate_agrees_with_hom_identity(data):
    n, table, t, f = data
    C = FiniteChain(n, table, t, f)
    rep = fc_validate(C)
    if rep.ok:
        assert is_hom(C, C, tuple(range(n)))
        assert fc_parity(C) is not Parity.INVALID
