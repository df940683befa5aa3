import pytest

from layergroups.bunch import LayerClass, bunch_equal, bunch_validate
from layergroups.catalog import bz2, es2, ez, mix3, os3, sugihara_bunch, z2j
from layergroups.decompose import (
    dec_element_map,
    dec_layer_group,
    dec_layers,
    dec_partition,
    dec_skeleton,
    dec_transition,
    decompose_chain,
    reconstruct_bunch,
    verify_decomposition_sampled,
)
from layergroups.errors import DomainError
from layergroups.finite_chain import fc_isomorphic, fc_materialize, generate_sugihara
from layergroups.ogroup import TRIVIAL
from layergroups.oracle import SampleConfig

OS3 = generate_sugihara("odd", 3)
ES2 = generate_sugihara("even", 2)

O, I = LayerClass.O, LayerClass.I


def test_skeleton_and_partition():
    assert dec_skeleton(OS3) == [1, 2]
    assert dec_skeleton(ES2) == [1]
    assert dec_skeleton(generate_sugihara("odd", 1)) == [0]
    assert dec_partition(OS3) == {1: O, 2: I}
    assert dec_partition(ES2) == {1: I}
    assert set(dec_partition(generate_sugihara("even", 4)).values()) == {I}


def test_layers():
    assert dec_layers(OS3, 2) == ([0, 2], [2], [0], [2])
    assert dec_layers(OS3, 1) == ([1], [], [], [1])
    assert dec_layers(ES2, 1) == ([0, 1], [1], [0], [1])
    with pytest.raises(DomainError):
        dec_layers(OS3, 0)


def test_layer_group_and_transition():
    assert dec_layer_group(OS3, 2) is TRIVIAL
    assert dec_layer_group(ES2, 1) is TRIVIAL
    assert dec_transition(OS3, 1, 2).matrix == ()
    S4 = generate_sugihara("even", 4)
    assert dec_transition(S4, *dec_skeleton(S4)).matrix == ()
    with pytest.raises(DomainError):
        dec_transition(OS3, 2, 2)


def test_decompose_examples():
    assert bunch_equal(decompose_chain(OS3), os3())
    assert bunch_equal(decompose_chain(ES2), es2())
    B = decompose_chain(generate_sugihara("even", 6))
    assert len(B.labels) == 3 and set(B.classes.values()) == {I}
    assert bunch_validate(B).ok


@pytest.mark.parametrize("n", range(1, 10))
def test_roundtrips(n):
    kind = "odd" if n % 2 else "even"
    C = generate_sugihara(kind, n)
    assert fc_isomorphic(fc_materialize(decompose_chain(C)), C) is not None
    B = sugihara_bunch(kind, n)
    assert bunch_equal(decompose_chain(fc_materialize(B)), B)


def test_element_map_is_bijective():
    C = generate_sugihara("odd", 7)
    m = dec_element_map(C)
    assert sorted(m) == list(range(7))
    assert len(set(m.values())) == 7


@pytest.mark.parametrize("make", [bz2, ez, z2j, mix3, os3, es2])
def test_sampled_decomposition(make):
    B = make()
    assert bunch_equal(reconstruct_bunch(B), B)
    rep = verify_decomposition_sampled(B, SampleConfig(samples=1000, seed=5))
    assert rep.ok, rep.render()


def test_corrupted_claim_is_caught():
    rep = verify_decomposition_sampled(bz2(), SampleConfig(samples=200),
                                       claimed=bz2(multiplier=4, h_gens=((2,),)))
    assert not rep.ok
    assert rep["transition"].status.value == "FAIL"
    assert rep["reconstructed-equals-claimed"].status.value == "FAIL"
