"""Seeded sampling and the verification suites.

Every suite draws elements through :func:`sample_element`, which is a pure
function of (bunch, config, stream position), so reports are reproducible
bit for bit. Suites stop recording after the first witness per check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from .bunch import LayerClass, Parity, bunch_equal, bunch_parity, bunch_validate
from .chain import (
    ChainElement,
    _compare,
    _layer_cmp,
    _layer_mul,
    _mul,
    _neg,
    _res,
    _rho,
    chain_constants,
    element_validate,
    layer_le_alt,
    layer_lt_primary,
    layer_mul_primary,
    negate_simplified,
    unit_of,
)
from .decompose import decompose_chain
from .errors import NoClassJ
from .finite_chain import fc_isomorphic, fc_materialize, fc_validate
from .ogroup import Kind, Ordering, og_combine, og_cover, og_unit
from .report import ValidationReport


@dataclass(frozen=True)
class SampleConfig:
    coordinate_bound: int = 50
    samples: int = 10_000
    seed: int = 0
    dotted_probability: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.coordinate_bound < 1:
            raise ValueError("coordinate_bound must be positive")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        p = Fraction(self.dotted_probability)
        if not 0 <= p <= 1:
            raise ValueError("dotted_probability must lie in [0, 1]")
        object.__setattr__(self, "dotted_probability", p)


def _rng(cfg, position):
    return random.Random((cfg.seed & 0xFFFFFFFFFFFFFFFF) * 0x9E3779B97F4A7C15 + position)


def _sample_value(G, bound, rng):
    if G.kind is Kind.TRIVIAL:
        return ()
    if G.kind is Kind.RATIONAL:
        p = rng.randint(-bound, bound)
        q = rng.randint(1, bound)
        v = Fraction(p, q)
        return (v.numerator if v.denominator == 1 else v,)
    return tuple(rng.randint(-bound, bound) for _ in range(G.rank))


def sample_element(B, cfg, position):
    rng = _rng(cfg, position)
    u = B.labels[rng.randrange(len(B.labels))]
    G = B.groups[u]
    p = cfg.dotted_probability
    if (B.classes[u] is LayerClass.I and p
            and rng.random() * p.denominator < p.numerator):
        gens = B._hgens[u].gens
        bound = cfg.coordinate_bound
        val = og_unit(G)
        for g in gens:
            c = rng.randint(-bound, bound)
            val = tuple(a + c * b for a, b in zip(val, g))
        if G.kind is Kind.RATIONAL:
            v = Fraction(val[0])
            val = (v.numerator if v.denominator == 1 else v,)
        return ChainElement(u, val, True)
    return ChainElement(u, _sample_value(G, cfg.coordinate_bound, rng), False)


def _le(B, x, y):
    return _compare(B, x, y) is not Ordering.GT


def _all_elements(B):
    """Every element of a finite (all-trivial) bunch's chain."""
    out = []
    for u in B.labels:
        out.append(ChainElement(u, ()))
        if B.classes[u] is LayerClass.I:
            out.append(ChainElement(u, (), True))
    return out


class _Recorder:
    def __init__(self, names):
        self.w = {n: None for n in names}

    def fail(self, name, witness):
        if self.w[name] is None:
            self.w[name] = witness

    def report(self, rep=None):
        rep = rep or ValidationReport()
        for k, v in self.w.items():
            rep.add(k, v is None, v)
        return rep


AXIOMS = ("closure", "commutative", "associative", "unit", "involution", "adjunction",
          "residuum-bound", "order-antisymmetry", "order-totality", "order-transitivity",
          "monotone", "parity")


def check_axioms(B, cfg=None):
    """Sampled FL_e-chain axioms for the chain of ``B``."""
    cfg = cfg or SampleConfig()
    rec = _Recorder(AXIOMS)
    t, f = chain_constants(B)
    parity = bunch_parity(B)
    if parity is Parity.ODD and f != t:
        rec.fail("parity", f"odd but f = {f}")
    if parity is not Parity.ODD:
        if _compare(B, f, t) is not Ordering.LT:
            rec.fail("parity", f"even but f = {f} is not below t")
        idem = _mul(B, f, f) == f
        if idem != (parity is Parity.EVEN_IDEM):
            rec.fail("parity", f"f*f = {_mul(B, f, f)} for {parity.value}")
    for i in range(cfg.samples):
        x = sample_element(B, cfg, 3 * i)
        y = sample_element(B, cfg, 3 * i + 1)
        z = sample_element(B, cfg, 3 * i + 2)
        xy = _mul(B, x, y)
        if not element_validate(B, xy).ok:
            rec.fail("closure", f"{x}*{y} = {xy}")
        if xy != _mul(B, y, x):
            rec.fail("commutative", f"{x}, {y}")
        if _mul(B, xy, z) != _mul(B, x, _mul(B, y, z)):
            rec.fail("associative", f"{x}, {y}, {z}")
        if _mul(B, t, x) != x:
            rec.fail("unit", f"t*{x} = {_mul(B, t, x)}")
        if _neg(B, _neg(B, x)) != x:
            rec.fail("involution", f"{x}'' = {_neg(B, _neg(B, x))}")
        r = _res(B, x, z)
        if _le(B, xy, z) != _le(B, y, r):
            rec.fail("adjunction", f"x={x} y={y} z={z} x->z={r}")
        if not _le(B, _mul(B, x, r), z):
            rec.fail("residuum-bound", f"{x}*({x}->{z}) = {_mul(B, x, r)} > {z}")
        c1, c2 = _compare(B, x, y), _compare(B, y, x)
        if c1 != Ordering(-c2):
            rec.fail("order-antisymmetry", f"{x} vs {y}: {c1.name}/{c2.name}")
        if (c1 is Ordering.EQ) != (x == y):
            rec.fail("order-totality", f"{x} vs {y}: {c1.name}")
        if _le(B, x, y) and _le(B, y, z) and not _le(B, x, z):
            rec.fail("order-transitivity", f"{x} <= {y} <= {z}")
        if _le(B, x, y) and not _le(B, _mul(B, x, z), _mul(B, y, z)):
            rec.fail("monotone", f"{x} <= {y} but {x}*{z} > {y}*{z}")
        # the even quasi-identity x < t <=> x <= f, tested on the sample
        if parity is not Parity.ODD and (_compare(B, x, t) is Ordering.LT) != _le(B, x, f):
            rec.fail("parity", f"{x}: x < t and x <= f disagree")
    return rec.report()


def check_cover_lemma(B, cfg=None):
    cfg = cfg or SampleConfig(samples=1000)
    js = [u for u in B.labels if B.classes[u] is LayerClass.J]
    if not js:
        raise NoClassJ("bunch has no class-J layer")
    rec = _Recorder(["group-cover", "chain-cover"])
    for i in range(cfg.samples):
        rng = _rng(cfg, i)
        u = js[rng.randrange(len(js))]
        G = B.groups[u]
        x = tuple(rng.randint(-cfg.coordinate_bound, cfg.coordinate_bound) for _ in range(G.dim))
        down_unit = og_cover(G, og_unit(G), "down")
        if og_combine(G, x, down_unit) != og_cover(G, x, "down"):
            rec.fail("group-cover", f"{u}: {x}")
        # in the chain, the complement of the layer unit is its lower cover
        got = _mul(B, ChainElement(u, x), _neg(B, unit_of(B, u)))
        if got != ChainElement(u, og_cover(G, x, "down")):
            rec.fail("chain-cover", f"{u}: {x} * {u}' = {got}")
    return rec.report()


def check_roundtrip_finite(C):
    rep = ValidationReport()
    v = fc_validate(C)
    rep.add("input-valid", v.ok, None if v.ok else v.failures[0].name)
    if not v.ok:
        return rep
    B = decompose_chain(C)
    bv = bunch_validate(B)
    rep.add("bunch-valid", bv.ok, None if bv.ok else bv.failures[0].witness)
    M = fc_materialize(B)
    iso = fc_isomorphic(M, C)
    rep.add("chain-roundtrip", iso is not None, None if iso else "materialized chain differs")
    same = bunch_equal(decompose_chain(M), B)
    rep.add("bunch-roundtrip", same, None if same else "bunch of the rebuilt chain differs")
    return rep


def check_lemma_equivalences(B, cfg=None):
    """Primary and simplified forms of negation, layer product, and layer order agree."""
    cfg = cfg or SampleConfig()
    rec = _Recorder(["negation-forms", "product-forms", "order-forms"])

    def one(x, y):
        if _neg(B, x) != negate_simplified(B, x):
            rec.fail("negation-forms", f"{x}: {_neg(B, x)} vs {negate_simplified(B, x)}")
        w = x.layer if B.pos[x.layer] >= B.pos[y.layer] else y.layer
        a, b = _rho(B, w, x), _rho(B, w, y)
        if _layer_mul(B, w, a, b) != layer_mul_primary(B, w, a, b):
            rec.fail("product-forms", f"{a} *{w} {b}")
        lt = _layer_cmp(a, b) is Ordering.LT
        le = _layer_cmp(a, b) is not Ordering.GT
        if lt != layer_lt_primary(B, w, a, b) or le != layer_le_alt(a, b):
            rec.fail("order-forms", f"{a} vs {b}")

    if B.is_all_trivial():
        elems = _all_elements(B)
        for x, y in cartesian(elems, repeat=2):
            one(x, y)
    else:
        for i in range(cfg.samples):
            one(sample_element(B, cfg, 2 * i), sample_element(B, cfg, 2 * i + 1))
    return rec.report()


def check_even_z_closed_forms(B, cfg=None):
    """On a single class-J layer over Z: f = -1, x' = -x-1, x->y = y-x."""
    cfg = cfg or SampleConfig(samples=1000)
    u = B.t
    rec = _Recorder(["falsum", "negation", "residuum"])
    _, f = chain_constants(B)
    if f != ChainElement(u, (-1,)):
        rec.fail("falsum", f"f = {f}")
    for i in range(cfg.samples):
        rng = _rng(cfg, i)
        a = rng.randint(-cfg.coordinate_bound, cfg.coordinate_bound)
        b = rng.randint(-cfg.coordinate_bound, cfg.coordinate_bound)
        x, y = ChainElement(u, (a,)), ChainElement(u, (b,))
        if _neg(B, x) != ChainElement(u, (-a - 1,)):
            rec.fail("negation", f"{x}' = {_neg(B, x)}")
        if _res(B, x, y) != ChainElement(u, (b - a,)):
            rec.fail("residuum", f"{x}->{y} = {_res(B, x, y)}")
    return rec.report()
