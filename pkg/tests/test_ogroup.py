from fractions import Fraction as F
from math import gcd
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from layergroups.errors import DomainError, ParseError
from layergroups.ogroup import (
    RATIONAL,
    TRIVIAL,
    IntLex,
    OGroupHomDesc,
    Ordering,
    SubgroupSpec,
    format_element,
    format_subgroup,
    hom_apply,
    hom_compose,
    hom_kernel_witness,
    hom_validate,
    matvec,
    og_combine,
    og_compare,
    og_cover,
    og_inverse,
    og_unit,
    parse_element,
    parse_group,
    parse_matrix,
    parse_subgroup,
    preimage,
    sub_canonical,
    sub_contains,
)

Z2 = IntLex(2)


def test_compare_examples():
    assert og_compare(Z2, (1, -5), (1, 3)) is Ordering.LT
    assert og_compare(Z2, (2, 0), (1, 100)) is Ordering.GT
    assert og_compare(RATIONAL, (F(1, 3),), (F(2, 5),)) is Ordering.LT
    assert og_compare(TRIVIAL, (), ()) is Ordering.EQ


def test_combine_inverse_unit_examples():
    assert og_combine(Z2, (1, 2), (0, -3)) == (1, -1)
    assert og_combine(RATIONAL, (F(1, 2),), (F(1, 3),)) == (F(5, 6),)
    assert og_combine(TRIVIAL, (), ()) == ()
    assert og_inverse(Z2, (3, -1)) == (-3, 1)
    assert og_inverse(RATIONAL, (F(-2, 7),)) == (F(2, 7),)
    assert og_inverse(TRIVIAL, ()) == ()
    assert og_unit(IntLex(3)) == (0, 0, 0)
    assert og_unit(RATIONAL) == (0,)
    assert og_unit(TRIVIAL) == ()


def test_arity_mismatch():
    with pytest.raises(DomainError):
        og_compare(Z2, (1,), (1, 2))
    with pytest.raises(DomainError):
        og_combine(IntLex(1), (1, 2), (1,))
    with pytest.raises(DomainError):
        IntLex(0)


def test_cover_examples():
    assert og_cover(Z2, (3, 5), "down") == (3, 4)
    assert og_cover(RATIONAL, (F(1, 2),), "down") == (F(1, 2),)
    assert og_cover(IntLex(1), (0,), "up") == (1,)
    assert og_cover(TRIVIAL, (), "up") == ()


def test_membership_examples():
    H = SubgroupSpec.lattice(2, [(2, 0), (0, 1)])
    assert sub_contains(H, (4, -7))
    assert not sub_contains(H, (3, 0))
    assert sub_contains(SubgroupSpec.rational(F(3, 2)), (F(9, 2),))
    assert not sub_contains(SubgroupSpec.rational(F(3, 2)), (F(1, 2),))
    assert sub_contains(SubgroupSpec.rational(0), (0,))
    assert not sub_contains(SubgroupSpec.rational(0), (1,))


def test_canonical_examples():
    H = sub_canonical(SubgroupSpec(Z2, ((2, 2), (0, 3), (2, 5))))
    assert H.gens == ((2, 2), (0, 3))
    assert sub_canonical(SubgroupSpec(Z2, ())).gens == ()
    assert SubgroupSpec.rational(F(4, 6)).q == F(2, 3)


def _minor_gcd(cols, dim):
    """gcd of maximal minors and the rank, via sympy (independent of our HNF)."""
    if not cols:
        return 0, 0
    M = sympy.Matrix([[c[i] for c in cols] for i in range(dim)])
    r = M.rank()
    if r == 0:
        return 0, 0
    g = 0
    for rows in combinations(range(dim), r):
        for cs in combinations(range(len(cols)), r):
            g = gcd(g, int(M.extract(list(rows), list(cs)).det()))
    return r, abs(g)


small = st.integers(-3, 3)
lattices = st.lists(st.tuples(small, small), min_size=0, max_size=3)


@settings(max_examples=60, deadline=None)
@given(lattices)
def test_hnf_same_lattice_as_sympy(cols):
    H = sub_canonical(SubgroupSpec(Z2, tuple(cols)))
    assert _minor_gcd(list(H.gens), 2) == _minor_gcd(cols, 2)
    for g in cols:
        assert sub_contains(H, g)
    assert sub_canonical(H) == H


@settings(max_examples=60, deadline=None)
@given(lattices, st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
def test_membership_against_minor_oracle(cols, x):
    H = SubgroupSpec(Z2, tuple(cols))
    r, d = _minor_gcd(cols, 2)
    r2, d2 = _minor_gcd(cols + [x], 2)
    assert sub_contains(H, x) == (r2 == r and d2 == d)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=2))
def test_membership_against_span_enumeration(cols):
    H = SubgroupSpec(Z2, tuple(cols))
    span = set()
    for coeffs in product(range(-4, 5), repeat=len(cols)):
        span.add(tuple(sum(c * g[i] for c, g in zip(coeffs, cols)) for i in range(2)))
    for x in product(range(-3, 4), repeat=2):
        if x in span:
            assert sub_contains(H, x)


def test_hom_validate_examples():
    good = OGroupHomDesc(Z2, Z2, ((1, 0), (2, 1)))
    assert hom_validate(good).ok
    assert hom_apply(good, (3, -1)) == (3, 5)
    bad = OGroupHomDesc(Z2, Z2, ((0, 1), (0, 0)))
    rep = hom_validate(bad)
    assert not rep.ok
    assert rep["monotone"].witness == "[1,-2] -> [-2,0]"
    assert not hom_validate(OGroupHomDesc(RATIONAL, IntLex(1), ((1,),))).ok
    assert hom_validate(OGroupHomDesc(RATIONAL, IntLex(1), ((0,),))).ok
    assert not hom_validate(OGroupHomDesc(RATIONAL, RATIONAL, ((-1,),))).ok
    assert hom_validate(OGroupHomDesc(Z2, RATIONAL, ((F(1, 2), 0),))).ok
    assert not hom_validate(OGroupHomDesc(Z2, RATIONAL, ((1, 1),))).ok


def test_hom_apply_and_compose():
    Z = IntLex(1)
    assert hom_apply(OGroupHomDesc.scalar(Z, 2), (5,)) == (10,)
    assert hom_apply(OGroupHomDesc.zero(Z, TRIVIAL), (7,)) == ()
    six = hom_compose(OGroupHomDesc.scalar(Z, 3), OGroupHomDesc.scalar(Z, 2))
    assert six.matrix == ((6,),)
    h = OGroupHomDesc(Z2, Z2, ((1, 0), (2, 1)))
    assert hom_compose(OGroupHomDesc.identity(Z2), h) == h
    assert hom_compose(h, OGroupHomDesc.identity(Z2)) == h
    assert hom_compose(OGroupHomDesc.zero(Z2, Z2), h).matrix == ((0, 0), (0, 0))
    with pytest.raises(DomainError):
        hom_compose(h, OGroupHomDesc.scalar(Z, 2))
    with pytest.raises(DomainError):
        OGroupHomDesc(Z2, Z2, ((1,),))


def _lex_positive(rng, dim, bound=50):
    while True:
        x = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if x > (0,) * dim:
            return x


@pytest.mark.parametrize("matrix", [
    ((1, 0), (2, 1)), ((0, 1), (0, 0)), ((1, 0), (0, 0)), ((0, 0), (1, 0)),
    ((0, 0), (1, 1)), ((2, 0), (-5, 3)), ((1, 1), (0, 1)), ((0, 0), (0, 0)),
])
def test_hom_validate_agrees_with_sampling(matrix):
    import random
    h = OGroupHomDesc(Z2, Z2, matrix)
    rng = random.Random(7)
    neg = None
    for _ in range(10_000):
        x = _lex_positive(rng, 2)
        if matvec(matrix, x) < (0, 0):
            neg = x
            break
    assert hom_validate(h).ok == (neg is None)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=2, max_size=2))
def test_hom_validate_sound_and_witnessed(rows):
    import random
    h = OGroupHomDesc(IntLex(3), Z2, tuple(map(tuple, rows)))
    rep = hom_validate(h)
    if rep.ok:
        rng = random.Random(1)
        for _ in range(500):
            x = _lex_positive(rng, 3, 5)
            assert matvec(h.matrix, x) >= (0, 0)
    else:
        src, img = rep["monotone"].witness.split(" -> ")
        x, y = parse_element(src), parse_element(img)
        assert x > (0, 0, 0) and y < (0, 0) and matvec(h.matrix, x) == y


def test_kernel_and_preimage():
    Z = IntLex(1)
    assert hom_kernel_witness(OGroupHomDesc(Z2, Z, ((2, -3),))) == (3, 2)
    assert hom_kernel_witness(OGroupHomDesc.scalar(Z, 3)) is None
    assert hom_kernel_witness(OGroupHomDesc.zero(Z, TRIVIAL)) == (1,)
    two = SubgroupSpec.lattice(1, [(2,)])
    assert preimage(OGroupHomDesc.scalar(Z, 2), two).gens == ((1,),)
    assert preimage(OGroupHomDesc.scalar(Z, 3), two).gens == ((2,),)
    assert preimage(OGroupHomDesc.scalar(RATIONAL, 2), SubgroupSpec.rational(1)).q == F(1, 2)
    assert preimage(OGroupHomDesc.zero(RATIONAL, RATIONAL), SubgroupSpec.rational(1)) is None


@settings(max_examples=100, deadline=None)
@given(st.tuples(small, small), st.tuples(small, small), st.tuples(small, small))
def test_group_laws(x, y, z):
    assert og_combine(Z2, og_combine(Z2, x, y), z) == og_combine(Z2, x, og_combine(Z2, y, z))
    assert og_combine(Z2, x, y) == og_combine(Z2, y, x)
    assert og_combine(Z2, x, og_inverse(Z2, x)) == og_unit(Z2)
    assert og_inverse(Z2, og_inverse(Z2, x)) == x
    if og_compare(Z2, x, y) is not Ordering.GT:
        assert og_compare(Z2, og_combine(Z2, x, z), og_combine(Z2, y, z)) is not Ordering.GT


@settings(max_examples=100, deadline=None)
@given(st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
       st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_cover_has_nothing_between(x, z):
    lo, hi = og_cover(Z2, x, "down"), og_cover(Z2, x, "up")
    assert lo < x < hi
    assert not (lo < z < x) and not (x < z < hi)


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_rational_monotone(a, b):
    x, y = (a,), (b,)
    c = (F(1, 3),)
    if og_compare(RATIONAL, x, y) is not Ordering.GT:
        assert og_compare(RATIONAL, og_combine(RATIONAL, x, c), og_combine(RATIONAL, y, c)) \
            is not Ordering.GT


def test_text_syntax():
    assert parse_group("zlex:3") == IntLex(3)
    assert parse_group("rational") == RATIONAL
    assert parse_element("[1/2]") == (F(1, 2),)
    assert format_element((F(4, 2), -3)) == "[2,-3]"
    assert parse_matrix("[[],[]]") == ((), ())
    H = parse_subgroup("gens:[[2,2],[0,3],[2,5]]", Z2)
    assert format_subgroup(H) == "gens:[[2,2],[0,3]]"
    assert format_subgroup(parse_subgroup("q:4/6", RATIONAL)) == "q:2/3"
    for bad in ("[1,", "[1/0]", "zlex:0"):
        with pytest.raises(ParseError):
            parse_group(bad) if bad.startswith("z") else parse_element(bad)
