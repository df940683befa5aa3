from fractions import Fraction

import pytest

from layergroups.catalog import NAMED, bz2, es2, ez, os3, z2j
from layergroups.chain import element_validate, mutated
from layergroups.errors import NoClassJ
from layergroups.finite_chain import generate_sugihara
from layergroups.oracle import (
    SampleConfig,
    check_axioms,
    check_cover_lemma,
    check_even_z_closed_forms,
    check_lemma_equivalences,
    check_roundtrip_finite,
    sample_element,
)


def test_config_guards():
    with pytest.raises(ValueError):
        SampleConfig(coordinate_bound=0)
    with pytest.raises(ValueError):
        SampleConfig(dotted_probability=Fraction(3, 2))


def test_sampling_examples():
    elems = {sample_element(os3(), SampleConfig(seed=s), i) for s in range(3) for i in range(40)}
    assert {str(e) for e in elems} == {"t:[]", "u:[]", "u:*[]"}
    cfg = SampleConfig(seed=1, coordinate_bound=5)
    for i in range(200):
        assert element_validate(bz2(), sample_element(bz2(), cfg, i)).ok
    never = SampleConfig(dotted_probability=0)
    assert not any(sample_element(bz2(), never, i).dotted for i in range(500))
    always = SampleConfig(dotted_probability=1)
    assert all(x.dotted for x in (sample_element(bz2(), always, i) for i in range(500))
               if x.layer == "u")


def test_sampling_is_deterministic():
    cfg = SampleConfig(seed=42)
    a = [sample_element(NAMED["MIX3"](), cfg, i) for i in range(100)]
    b = [sample_element(NAMED["MIX3"](), cfg, i) for i in range(100)]
    assert a == b
    c = [sample_element(NAMED["MIX3"](), SampleConfig(seed=43), i) for i in range(100)]
    assert a != c


@pytest.mark.parametrize("name", sorted(NAMED))
def test_axioms_pass(name):
    rep = check_axioms(NAMED[name](), SampleConfig(samples=1500, seed=2))
    assert rep.ok, rep.render()


def test_axioms_report_is_reproducible():
    cfg = SampleConfig(samples=300, seed=9)
    assert check_axioms(z2j(), cfg).render() == check_axioms(z2j(), cfg).render()


def test_misrouted_negation_breaks_parity():
    for B in (ez(), z2j()):
        with mutated("misroute-J-negation"):
            rep = check_axioms(B, SampleConfig(samples=200))
        assert [c.name for c in rep.failures] == ["parity"]


def test_cover_lemma():
    assert check_cover_lemma(ez(), SampleConfig(samples=300)).ok
    assert check_cover_lemma(z2j(), SampleConfig(samples=300)).ok
    with pytest.raises(NoClassJ):
        check_cover_lemma(os3())


def test_roundtrip_finite():
    for C in (generate_sugihara("odd", 3), generate_sugihara("even", 8), generate_sugihara("odd", 1)):
        assert check_roundtrip_finite(C).ok


def test_lemma_equivalences():
    assert check_lemma_equivalences(bz2(), SampleConfig(samples=2000)).ok
    assert check_lemma_equivalences(es2()).ok
    assert check_lemma_equivalences(z2j(), SampleConfig(samples=0)).ok


def test_even_z_closed_forms():
    assert check_even_z_closed_forms(ez()).ok
    with mutated("misroute-J-negation"):
        assert not check_even_z_closed_forms(ez()).ok
