import pytest
from hypothesis import given, settings, strategies as st

from layergroups.bunch import LayerClass
from layergroups.catalog import bz2, es2, ez, mix3, os3, z2j
from layergroups.chain import (
    ChainElement as E,
    MUTATIONS,
    chain_compare,
    chain_constants,
    chain_mul,
    chain_negate,
    chain_residuum,
    element_validate,
    format_chain_element,
    gamma,
    layer_mul,
    mutated,
    parse_chain_element,
    rho,
)
from layergroups.errors import DomainError, ParseError
from layergroups.ogroup import Ordering

LT, EQ, GT = Ordering.LT, Ordering.EQ, Ordering.GT


def test_element_validate():
    B = bz2()
    assert element_validate(B, E("u", (2,), True)).ok
    assert not element_validate(B, E("u", (3,), True)).ok
    assert not element_validate(B, E("t", (5,), True)).ok
    assert not element_validate(B, E("w", (5,))).ok
    assert not element_validate(B, E("t", (1, 2))).ok


def test_gamma_and_rho():
    B = bz2()
    assert gamma(B, E("u", (4,), True)) == (4,)
    assert gamma(B, E("u", (3,))) == (3,)
    assert gamma(os3(), E("t", ())) == ()
    assert rho(B, "u", E("t", (3,))) == E("u", (6,))
    assert rho(B, "t", E("u", (2,), True)) == E("u", (2,), True)
    assert rho(os3(), "u", E("t", ())) == E("u", ())
    with pytest.raises(DomainError):
        rho(B, "nope", E("t", (3,)))


def test_compare_examples():
    B = bz2()
    assert chain_compare(B, E("u", (2,), True), E("t", (1,))) is LT
    assert chain_compare(B, E("t", (1,)), E("u", (2,))) is LT
    assert chain_compare(B, E("u", (2,), True), E("t", (5,))) is LT
    assert chain_compare(B, E("t", (1,)), E("t", (1,))) is EQ


def test_layer_mul_examples():
    B = bz2()
    assert layer_mul(B, "u", E("u", (2,)), E("u", (4,))) == E("u", (6,))
    assert layer_mul(B, "u", E("u", (2,), True), E("u", (4,))) == E("u", (6,), True)
    assert layer_mul(B, "u", E("u", (3,)), E("u", (4,))) == E("u", (7,))
    with pytest.raises(DomainError):
        layer_mul(B, "u", E("t", (3,)), E("u", (4,)))


def test_mul_examples():
    assert chain_mul(os3(), E("t", ()), E("u", (), True)) == E("u", (), True)
    B = bz2()
    assert chain_mul(B, E("t", (3,)), E("u", (1,))) == E("u", (7,))
    assert chain_mul(B, E("t", (1,)), E("u", (2,), True)) == E("u", (4,), True)


def test_negate_examples():
    assert chain_negate(ez(), E("t", (5,))) == E("t", (-6,))
    B = bz2()
    assert chain_negate(B, E("u", (2,))) == E("u", (-2,), True)
    assert chain_negate(B, E("u", (2,), True)) == E("u", (-2,))
    assert chain_negate(B, E("u", (3,))) == E("u", (-3,))
    assert chain_negate(B, E("t", (3,))) == E("t", (-3,))


def test_residuum_examples():
    assert chain_residuum(ez(), E("t", (3,)), E("t", (8,))) == E("t", (5,))
    assert chain_residuum(os3(), E("u", ()), E("u", (), True)) == E("u", (), True)
    for B, x in ((bz2(), E("u", (7,))), (z2j(), E("t", (3, -2))), (mix3(), E("w", (1,)))):
        assert chain_residuum(B, x, x) == E(x.layer, (0,) * len(x.value))


def test_constants():
    assert chain_constants(os3()) == (E("t", ()), E("t", ()))
    assert chain_constants(ez()) == (E("t", (0,)), E("t", (-1,)))
    assert chain_constants(es2()) == (E("t", ()), E("t", (), True))


def test_literals():
    x = parse_chain_element("u:*[2]")
    assert x == E("u", (2,), True)
    assert format_chain_element(x) == "u:*[2]"
    assert parse_chain_element("t:[]") == E("t", ())
    with pytest.raises(ParseError):
        parse_chain_element("[2]")


def test_mutations_are_scoped():
    B = os3()
    assert chain_mul(B, E("u", ()), E("u", (), True)) == E("u", (), True)
    with mutated("drop-dotting"):
        assert chain_mul(B, E("u", ()), E("u", (), True)) == E("u", ())
    assert chain_mul(B, E("u", ()), E("u", (), True)) == E("u", (), True)
    with mutated("misroute-J-negation"):
        assert chain_negate(ez(), E("t", (5,))) == E("t", (-5,))
    with pytest.raises(ValueError):
        with mutated("nonsense"):
            pass
    assert len(MUTATIONS) == 3


def elements(B, bound=12):
    def build(u, v, d):
        G = B.groups[u]
        val = tuple(v[:G.dim])
        if B.classes[u] is LayerClass.I and d:
            gens = B._hgens[u].gens
            val = (0,) * G.dim
            for c, g in zip(v, gens):
                val = tuple(a + c * b for a, b in zip(val, g))
            return E(u, val, True)
        return E(u, val)
    coords = st.lists(st.integers(-bound, bound), min_size=2, max_size=2)
    return st.builds(build, st.sampled_from(B.labels), coords, st.booleans())


def _le(B, x, y):
    return chain_compare(B, x, y) is not GT


@pytest.mark.parametrize("make", [bz2, ez, z2j, os3, es2])
def test_axioms_property(make):
    B = make()
    t, f = chain_constants(B)

    @settings(max_examples=150, deadline=None)
    @given(elements(B), elements(B), elements(B))
    def check(x, y, z):
        assert chain_mul(B, x, y) == chain_mul(B, y, x)
        assert chain_mul(B, chain_mul(B, x, y), z) == chain_mul(B, x, chain_mul(B, y, z))
        assert chain_mul(B, t, x) == x
        assert chain_negate(B, chain_negate(B, x)) == x
        assert _le(B, chain_mul(B, x, y), z) == _le(B, y, chain_residuum(B, x, z))
        if _le(B, x, y):
            assert _le(B, chain_mul(B, x, z), chain_mul(B, y, z))
            if _le(B, y, z):
                assert _le(B, x, z)
        assert (chain_compare(B, x, y) is EQ) == (x == y)

    check()
