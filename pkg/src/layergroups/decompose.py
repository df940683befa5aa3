"""From a chain to its bunch of layer groups.

For finite chains everything is exact: skeleton, partition, layers and
transitions are read off the Cayley table. For the (generally infinite)
chain of a bunch, the same formulas are evaluated pointwise on samples and
compared against a claimed bunch.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as cartesian

from .bunch import Bunch, LayerClass, Parity, bunch_equal
from .chain import ChainElement, _compare, _mul, _neg, _res, chain_constants, unit_of
from .errors import DomainError, InputContradiction
from .finite_chain import fc_negate, fc_parity, fc_residuum
from .ogroup import (
    TRIVIAL,
    Kind,
    Ordering,
    OGroupHomDesc,
    SubgroupSpec,
    _norm,
    matvec,
    og_unit,
    sub_canonical,
    sub_contains,
)
from .report import ValidationReport


# ---------------------------------------------------------------------------
# Finite chains

def dec_skeleton(C):
    """Positive idempotents in increasing order; cross-checked against {x->x}."""
    P = C.product
    idem = [u for u in range(C.t, C.n) if P[u][u] == u]
    local_units = sorted({fc_residuum(C, x, x) for x in range(C.n)})
    if local_units != idem:
        raise InputContradiction(
            f"positive idempotents {idem} differ from local units {local_units}")
    return idem


def dec_partition(C, skeleton=None):
    skeleton = dec_skeleton(C) if skeleton is None else skeleton
    P = C.product
    parity = fc_parity(C)
    classes = {}
    for u in skeleton:
        if u == C.t:
            continue
        nu = fc_negate(C, u)
        classes[u] = LayerClass.I if P[nu][nu] == nu else LayerClass.J
    classes[C.t] = {
        Parity.ODD: LayerClass.O,
        Parity.EVEN_NON_IDEM: LayerClass.J,
        Parity.EVEN_IDEM: LayerClass.I,
    }[parity]
    return classes


def dec_layers(C, u, classes=None):
    """``(L_u, H_u, dotted H_u, G_u)`` as sorted index lists."""
    if not (0 <= u < C.n and C.product[u][u] == u and u >= C.t):
        raise DomainError(f"{u} is not in the skeleton")
    classes = dec_partition(C) if classes is None else classes
    L = [x for x in range(C.n) if fc_residuum(C, x, x) == u]
    if classes[u] is not LayerClass.I:
        return L, [], [], L
    nu = fc_negate(C, u)
    H = [x for x in L if C.product[x][nu] < x]
    inv = [x for x in L if any(C.product[x][y] == u for y in L)]
    if H != inv:
        raise InputContradiction(f"H_{u} = {H} but the {u}-invertible elements are {inv}")
    dotted = sorted({C.product[x][nu] for x in H})
    G = [x for x in L if x not in dotted]
    return L, H, dotted, G


def _layer_product(C, u, cls, x, y):
    xy = C.product[x][y]
    if cls is LayerClass.I:
        return fc_residuum(C, fc_residuum(C, xy, u), u)
    return xy


def dec_layer_group(C, u, classes=None):
    """Verify the group structure on G_u; a finite o-group must be trivial."""
    classes = dec_partition(C) if classes is None else classes
    _, _, _, G = dec_layers(C, u, classes)
    cls = classes[u]
    Gs = set(G)
    for x in G:
        for y in G:
            if _layer_product(C, u, cls, x, y) not in Gs:
                raise InputContradiction(f"G_{u} not closed under the layer product")
    if u not in Gs or any(_layer_product(C, u, cls, u, x) != x for x in G):
        raise InputContradiction(f"{u} is not the unit of G_{u}")
    for x in G:
        xi = fc_residuum(C, x, u)
        if xi not in Gs or _layer_product(C, u, cls, x, xi) != u:
            raise InputContradiction(f"{x} has no inverse in G_{u}")
    if len(G) != 1:
        raise InputContradiction(f"G_{u} has {len(G)} elements; finite o-groups are trivial")
    return TRIVIAL


def dec_transition(C, u, v, classes=None):
    if not u < v:
        raise DomainError(f"transitions need u < v, got {u}, {v} (u -> u is implicit)")
    classes = dec_partition(C) if classes is None else classes
    _, Hv, _, Gv = dec_layers(C, v, classes)
    _, _, _, Gu = dec_layers(C, u, classes)
    for x in Gu:
        y = C.product[v][x]
        if y not in Gv:
            raise InputContradiction(f"{v}*{x} = {y} is not in G_{v}")
        if classes[v] is LayerClass.I and y not in Hv:
            raise InputContradiction(f"{v}*{x} = {y} is not in H_{v}")
    return OGroupHomDesc.zero(TRIVIAL, TRIVIAL)


def decompose_chain(C):
    """The bunch of layer groups of a valid finite chain; labels are index strings."""
    skel = dec_skeleton(C)
    classes = dec_partition(C, skel)
    groups = {}
    subgroups = {}
    for u in skel:
        groups[str(u)] = dec_layer_group(C, u, classes)
        if classes[u] is LayerClass.I:
            subgroups[str(u)] = SubgroupSpec(TRIVIAL)
    trans = {}
    for i, u in enumerate(skel):
        for v in skel[i + 1:]:
            trans[(str(u), str(v))] = dec_transition(C, u, v, classes)
    return Bunch(
        labels=[str(u) for u in skel],
        classes={str(u): c for u, c in classes.items()},
        groups=groups,
        subgroups=subgroups,
        transitions=trans,
    )


def dec_element_map(C, B=None):
    """Index -> ChainElement of ``decompose_chain(C)`` for every element of C."""
    B = decompose_chain(C) if B is None else B
    classes = {int(u): c for u, c in B.classes.items()}
    out = {}
    for u in classes:
        L, H, dotted, G = dec_layers(C, u, classes)
        for x in L:
            out[x] = ChainElement(str(u), (), x in dotted)
    return out


# ---------------------------------------------------------------------------
# Symbolic bunches: evaluate the decomposition formulas on X_B

def _box(G, bound):
    if G.kind is Kind.TRIVIAL:
        return [()]
    if G.kind is Kind.RATIONAL:
        return [(Fraction(p, q),) for p in range(-bound, bound + 1) for q in range(1, bound + 1)]
    return [tuple(v) for v in cartesian(range(-bound, bound + 1), repeat=G.rank)]


def reconstruct_bunch(B, bound=4):
    """Read a bunch back off the chain of ``B`` using only chain operations.

    The skeleton is taken from the local units of layer units, the partition
    from idempotence of complements, transitions by multiplying basis
    elements with the unit of the upper layer, and each H_u as the subgroup
    generated by the box members x with x*u' < x. Group descriptors are
    carried over from ``B``; the chain evaluator needs them to form elements.
    """
    t, f = chain_constants(B)
    if f == t:
        parity = Parity.ODD
    elif _mul(B, f, f) == f:
        parity = Parity.EVEN_IDEM
    else:
        parity = Parity.EVEN_NON_IDEM
    labels = []
    for u in B.labels:
        e = unit_of(B, u)
        if _res(B, e, e) != e or _mul(B, e, e) != e or _compare(B, e, t) is Ordering.LT:
            raise InputContradiction(f"unit of layer {u} is not a positive idempotent")
        labels.append(u)
    classes = {}
    subgroups = {}
    for u in labels:
        e = unit_of(B, u)
        if u == B.t:
            classes[u] = {Parity.ODD: LayerClass.O, Parity.EVEN_NON_IDEM: LayerClass.J,
                          Parity.EVEN_IDEM: LayerClass.I}[parity]
        else:
            ne = _neg(B, e)
            classes[u] = LayerClass.I if _mul(B, ne, ne) == ne else LayerClass.J
        if classes[u] is LayerClass.I:
            ne = _neg(B, e)
            members = [v for v in _box(B.groups[u], bound)
                       if _compare(B, _mul(B, ChainElement(u, v), ne), ChainElement(u, v)) is Ordering.LT]
            subgroups[u] = sub_canonical(SubgroupSpec(B.groups[u], tuple(members)))
    trans = {}
    for i, u in enumerate(labels):
        G = B.groups[u]
        for v in labels[i + 1:]:
            ev = unit_of(B, v)
            if G.kind is Kind.TRIVIAL:
                cols = []
            else:
                basis = [tuple(int(i == j) for i in range(G.dim)) for j in range(G.dim)]
                cols = [_mul(B, ev, ChainElement(u, b)).value for b in basis]
            H = B.groups[v]
            mat = tuple(tuple(c[r] for c in cols) for r in range(H.dim))
            trans[(u, v)] = OGroupHomDesc(G, H, mat)
    return Bunch(labels=labels, classes=classes, groups=dict(B.groups),
                 subgroups=subgroups, transitions=trans)


def verify_decomposition_sampled(B, cfg=None, claimed=None, bound_h=4):
    """Check, on samples of the chain of ``B``, that the decomposition formulas give ``claimed``.

    ``claimed`` defaults to ``B`` itself (the round trip B -> X_B -> B).
    """
    from .oracle import SampleConfig, sample_element

    cfg = cfg or SampleConfig()
    claimed = B if claimed is None else claimed
    rep = ValidationReport()

    rec = reconstruct_bunch(B, bound_h)
    rep.add("reconstructed-equals-claimed", bunch_equal(rec, claimed),
            None if bunch_equal(rec, claimed) else _diff(rec, claimed))

    fails = {k: None for k in ("local-unit", "invertible", "dotted-copy", "transition",
                               "layer-product", "layer-inverse", "layer-order")}
    rng = random.Random(cfg.seed ^ 0x5EED)
    pos = 0
    for _ in range(cfg.samples):
        x = sample_element(B, cfg, pos)
        y = sample_element(B, cfg, pos + 1)
        pos += 2
        u = x.layer
        e = unit_of(B, u)
        cls = claimed.classes.get(u)
        if fails["local-unit"] is None and _res(B, x, x) != e:
            fails["local-unit"] = f"{x}->{x} = {_res(B, x, x)}"
        if cls is LayerClass.I:
            ne = _neg(B, e)
            is_h = _compare(B, _mul(B, x, ne), x) is Ordering.LT
            expect = not x.dotted and sub_contains(claimed.subgroups[u], x.value)
            if fails["invertible"] is None and is_h != expect:
                fails["invertible"] = f"{x}: x*u' < x is {is_h}"
            if is_h and fails["dotted-copy"] is None and _mul(B, x, ne) != ChainElement(u, x.value, True):
                fails["dotted-copy"] = f"{x}*{ne} = {_mul(B, x, ne)}"
        if x.dotted:
            continue
        higher = [v for v in B.labels if B.pos[v] > B.pos[u]]
        if higher and fails["transition"] is None:
            v = rng.choice(higher)
            got = _mul(B, unit_of(B, v), x)
            want = ChainElement(v, tuple(_norm(a) for a in matvec(claimed.transitions[(u, v)].matrix, x.value)))
            if got != want:
                fails["transition"] = f"{v}*{x} = {got}, claimed {want}"
        if fails["layer-inverse"] is None:
            got = _res(B, x, e)
            want = ChainElement(u, tuple(-a for a in x.value))
            if got != want:
                fails["layer-inverse"] = f"{x}->{e} = {got}"
        yv = ChainElement(u, y.value if y.layer == u else og_unit(B.groups[u]))
        if fails["layer-product"] is None:
            xy = _mul(B, x, yv)
            got = _res(B, _res(B, xy, e), e) if cls is LayerClass.I else xy
            want = ChainElement(u, tuple(a + b for a, b in zip(x.value, yv.value)))
            if got != want:
                fails["layer-product"] = f"{x} *_u {yv} = {got}"
        if fails["layer-order"] is None:
            a = _compare(B, x, yv)
            b = Ordering.of(x.value, yv.value)
            if a != b:
                fails["layer-order"] = f"{x} vs {yv}: chain {a.name}, group {b.name}"
    for k, w in fails.items():
        rep.add(k, w is None, w)
    return rep


def _diff(a, b):
    if list(a.labels) != list(b.labels):
        return f"skeleton {list(a.labels)} vs {list(b.labels)}"
    for u in a.labels:
        if a.classes[u] != b.classes.get(u):
            return f"class of {u}: {a.classes[u].value} vs {b.classes[u].value}"
        if u in a.subgroups and sub_canonical(a.subgroups[u]) != sub_canonical(b.subgroups[u]):
            return f"H_{u}: {a.subgroups[u]} vs {b.subgroups[u]}"
    for k, h in a.transitions.items():
        if h.matrix != b.transitions[k].matrix:
            return f"transition {k[0]}->{k[1]}: {h} vs {b.transitions[k]}"
    return "differs"
