"""Bunch homomorphisms, their validator, and the restrict/extend correspondence."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType

from .bunch import LayerClass, bunch_equal
from .chain import ChainElement, _compare, _mul, _res, chain_constants, check_element
from .decompose import dec_element_map, decompose_chain
from .errors import DomainError, NotAHom
from .finite_chain import fc_enumerate_homs, hom_violation
from .ogroup import (
    OGroupHomDesc,
    Ordering,
    format_element,
    hom_apply,
    hom_compose,
    hom_kernel_witness,
    hom_validate,
    og_check,
    og_cover,
    og_unit,
    preimage,
    sub_canonical,
    sub_contains,
)
from .report import Status, ValidationReport


@dataclass(frozen=True, eq=False)
class BunchHom:
    source: object
    target: object
    skeleton_map: dict
    layer_map: dict

    def __post_init__(self):
        object.__setattr__(self, "skeleton_map", MappingProxyType(dict(self.skeleton_map)))
        object.__setattr__(self, "layer_map", MappingProxyType(dict(self.layer_map)))

    def sigma(self, u):
        try:
            return self.skeleton_map[u]
        except KeyError:
            raise DomainError(f"{u!r} is not a source label") from None

    def __eq__(self, other):
        if not isinstance(other, BunchHom):
            return NotImplemented
        return (self.source.labels == other.source.labels
                and self.target.labels == other.target.labels
                and dict(self.skeleton_map) == dict(other.skeleton_map)
                and {u: h.matrix for u, h in self.layer_map.items()}
                == {u: h.matrix for u, h in other.layer_map.items()}
                and bunch_equal(self.source, other.source)
                and bunch_equal(self.target, other.target))

    def __hash__(self):
        return hash((self.source.labels, self.target.labels,
                     tuple(sorted(self.skeleton_map.items()))))

    def __repr__(self):
        sig = " ".join(f"{u}->{v}" for u, v in self.skeleton_map.items())
        return f"BunchHom({sig})"


def _structure_problems(phi):
    X, Y = phi.source, phi.target
    out = []
    for u in X.labels:
        if u not in phi.skeleton_map:
            out.append(f"no image for label {u}")
            continue
        v = phi.skeleton_map[u]
        if v not in Y.pos:
            out.append(f"{u} maps to unknown label {v}")
            continue
        h = phi.layer_map.get(u)
        if h is None:
            out.append(f"no layer map on {u}")
        elif h.source != X.groups[u] or h.target != Y.groups[v]:
            out.append(f"layer map on {u} has type {h.source} -> {h.target}, "
                       f"expected {X.groups[u]} -> {Y.groups[v]}")
    extra = set(phi.skeleton_map) - set(X.labels)
    if extra:
        out.append(f"images given for unknown labels {sorted(extra)}")
    return out


def _s6_witness(h, H, Hy):
    """None when h^{-1}(Hy) = H, else a description of an offending element."""
    for g in sub_canonical(H).gens:
        img = hom_apply(h, g)
        if not sub_contains(Hy, img):
            return f"{format_element(g)} in H maps to {format_element(img)} outside H"
    pre = preimage(h, Hy)
    if pre is None:
        # the whole of Q lands in H; pick a non-member of qZ
        q = Fraction(H.q) if H.gens else Fraction(0)
        x = (q / 2 if q else Fraction(1),)
        return f"{format_element(x)} not in H maps to {format_element(hom_apply(h, x))} in H"
    for g in sub_canonical(pre).gens:
        if not sub_contains(H, g):
            return f"{format_element(g)} not in H maps to {format_element(hom_apply(h, g))} in H"
    return None


SKELETON_MODES = ("isotone", "merge-into-o", "injective")


def bh_validate(phi, skeleton="merge-into-o"):
    """Conditions S1-S8, each with a witness on failure.

    ``skeleton`` selects how S1 treats two labels with the same image:
    "isotone" allows it freely, "injective" forbids it, and the default
    "merge-into-o" allows it only when the common image is class o, which is
    what chain homomorphisms produce.
    """
    if skeleton not in SKELETON_MODES:
        raise ValueError(f"skeleton mode must be one of {SKELETON_MODES}")
    rep = ValidationReport()
    probs = _structure_problems(phi)
    rep.add("structure", not probs, "; ".join(probs) or None)
    if probs:
        return rep
    X, Y = phi.source, phi.target
    sig = phi.skeleton_map
    labels = X.labels

    w = None
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            pu, pv = Y.pos[sig[u]], Y.pos[sig[v]]
            if pu > pv:
                w = f"{u} < {v} but {sig[u]} > {sig[v]}"
            elif pu == pv and (skeleton == "injective" or (
                    skeleton == "merge-into-o" and Y.classes[sig[u]] is not LayerClass.O)):
                w = f"{u} and {v} both map to {sig[u]} ({Y.classes[sig[u]].value})"
            if w:
                break
        if w:
            break
    rep.add("S1", w is None, w)

    w = None
    for u in labels:
        r = hom_validate(phi.layer_map[u])
        if not r.ok:
            w = f"{u}: {r.failures[0].witness}"
            break
    rep.add("S2", w is None, w)

    w = None
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            if Y.pos[sig[u]] > Y.pos[sig[v]]:
                continue  # already an S1 failure; no target transition to compare
            lhs = hom_compose(phi.layer_map[v], X.transition(u, v))
            rhs = hom_compose(Y.transition(sig[u], sig[v]), phi.layer_map[u])
            if lhs.matrix != rhs.matrix:
                w = f"{u}->{v}: {lhs} vs {rhs}"
                break
        if w:
            break
    rep.add("S3", w is None, w)

    rep.add("S4", sig[X.t] == Y.t, None if sig[X.t] == Y.t else f"{X.t} maps to {sig[X.t]}")

    allowed = {LayerClass.O: {LayerClass.O},
               LayerClass.J: {LayerClass.J, LayerClass.O},
               LayerClass.I: {LayerClass.I, LayerClass.O}}
    w = next((f"{u} ({X.classes[u].value}) maps to {sig[u]} ({Y.classes[sig[u]].value})"
              for u in labels if Y.classes[sig[u]] not in allowed[X.classes[u]]), None)
    rep.add("S5", w is None, w)

    w = None
    for u in labels:
        if X.classes[u] is LayerClass.I and Y.classes[sig[u]] is LayerClass.I:
            s = _s6_witness(phi.layer_map[u], X.subgroups[u], Y.subgroups[sig[u]])
            if s:
                w = f"{u}: {s}"
                break
    rep.add("S6", w is None, w)

    rep.add(*_s7(phi))

    w = None
    for u in labels:
        if Y.classes[sig[u]] is not LayerClass.I:
            continue
        d = hom_kernel_witness(phi.layer_map[u])
        if d is not None:
            b = tuple(-a for a in d)
            w = (f"{u}: {format_element(b)} < {format_element(og_unit(X.groups[u]))} in H "
                 f"but both map to {format_element(og_unit(Y.groups[sig[u]]))}")
            break
    rep.add("S8", w is None, w)
    return rep


def _s7(phi, probes=((0,), (1,), (-1,), (3,), (-7,))):
    """Exact matrix form, cross-checked pointwise on a few probes."""
    X, Y = phi.source, phi.target
    exact_w = probe_w = None
    for u in X.labels:
        if X.classes[u] is not LayerClass.J:
            continue
        v = phi.skeleton_map[u]
        h = phi.layer_map[u]
        G, K = X.groups[u], Y.groups[v]
        last = tuple(row[-1] for row in h.matrix)
        if Y.classes[v] is LayerClass.J:
            want = og_unit(K)[:-1] + (1,)
        elif Y.classes[v] is LayerClass.O:
            want = og_unit(K)
        else:
            continue
        if last != want and exact_w is None:
            exact_w = f"{u}: image of the last basis vector is {format_element(last)}"
        for p in probes:
            x = tuple(p[0] * (j + 1) for j in range(G.dim))
            lhs = hom_apply(h, og_cover(G, x, "down"))
            rhs = hom_apply(h, x)
            if Y.classes[v] is LayerClass.J:
                rhs = og_cover(K, rhs, "down")
            if lhs != rhs and probe_w is None:
                probe_w = f"{u}: x={format_element(x)}"
    if (exact_w is None) != (probe_w is None):
        return "S7", Status.INDET, f"matrix form and pointwise form disagree ({exact_w or probe_w})"
    return "S7", exact_w is None, exact_w


def bh_apply(phi, u, x):
    """Image of ``x`` in G_u as a pair (sigma(u), value)."""
    v = phi.sigma(u)
    og_check(phi.source.groups[u], x)
    return v, hom_apply(phi.layer_map[u], x)


def bh_extend(phi):
    """The chain homomorphism determined by ``phi``, as a function."""
    X, Y = phi.source, phi.target

    def ext(x):
        check_element(X, x)
        v = phi.skeleton_map[x.layer]
        img = hom_apply(phi.layer_map[x.layer], x.value)
        if x.dotted:
            c = Y.classes[v]
            if c is LayerClass.I:
                return ChainElement(v, img, True)
            if c is not LayerClass.O:
                raise DomainError(f"dotted element over {x.layer} maps into class {c.value}")
        return ChainElement(v, img, False)

    return ext


def bh_identity(B):
    return BunchHom(B, B, {u: u for u in B.labels},
                    {u: OGroupHomDesc.identity(B.groups[u]) for u in B.labels})


def bh_compose(psi, phi):
    """psi after phi."""
    if phi.target is not psi.source and not (
            phi.target.labels == psi.source.labels and bunch_equal(phi.target, psi.source)):
        raise DomainError("cannot compose: target of the first is not the source of the second")
    sig = {u: psi.skeleton_map[phi.skeleton_map[u]] for u in phi.source.labels}
    maps = {u: hom_compose(psi.layer_map[phi.skeleton_map[u]], phi.layer_map[u])
            for u in phi.source.labels}
    return BunchHom(phi.source, psi.target, sig, maps)


# ---------------------------------------------------------------------------
# Finite chains

def _bunch_for(C, B):
    """Decomposition of C and the relabelling onto ``B`` (which must match it)."""
    D = decompose_chain(C)
    if B is None:
        return D, {u: u for u in D.labels}
    if not bunch_equal(D, B):
        raise DomainError("given bunch is not the decomposition of the chain")
    return B, dict(zip(D.labels, B.labels))


def _element_index(C, B):
    B, ren = _bunch_for(C, B)
    emap = {i: e._replace(layer=ren[e.layer]) for i, e in dec_element_map(C).items()}
    return B, emap


def bh_restrict(phi, C1, C2, B1=None, B2=None):
    """The bunch homomorphism of a finite-chain homomorphism ``phi`` (index map)."""
    bad = hom_violation(C1, C2, phi)
    if bad:
        raise NotAHom(f"map violates {bad}")
    B1, e1 = _element_index(C1, B1)
    B2, e2 = _element_index(C2, B2)
    sig = {}
    for i, x in e1.items():
        if not x.dotted and x.layer not in sig:
            sig[x.layer] = e2[phi[i]].layer
    maps = {u: OGroupHomDesc.zero(B1.groups[u], B2.groups[sig[u]]) for u in B1.labels}
    return BunchHom(B1, B2, sig, maps)


def materialize_extension(Phi, C1, C2):
    """``bh_extend(Phi)`` as an index map C1 -> C2."""
    _, e1 = _element_index(C1, Phi.source)
    _, e2 = _element_index(C2, Phi.target)
    back = {x: i for i, x in e2.items()}
    ext = bh_extend(Phi)
    return tuple(back[ext(e1[i])] for i in range(C1.n))


def _isotone_maps(src, dst):
    for combo in combinations_with_replacement(range(len(dst)), len(src)):
        yield {u: dst[k] for u, k in zip(src, combo)}


def enumerate_bunch_homs_trivial(B1, B2):
    """Every bunch homomorphism between two all-trivial bunches.

    Layer maps are forced (zero), so only isotone skeleton maps are searched.
    """
    if not (B1.is_all_trivial() and B2.is_all_trivial()):
        raise DomainError("exhaustive bunch-hom search needs all-trivial bunches")
    out = []
    for sig in _isotone_maps(B1.labels, B2.labels):
        maps = {u: OGroupHomDesc.zero(B1.groups[u], B2.groups[sig[u]]) for u in B1.labels}
        phi = BunchHom(B1, B2, sig, maps)
        if bh_validate(phi).ok:
            out.append(phi)
    return out


def hom_correspondence_check(C1, C2):
    rep = ValidationReport()
    B1, B2 = decompose_chain(C1), decompose_chain(C2)
    fl = fc_enumerate_homs(C1, C2)
    bh = enumerate_bunch_homs_trivial(B1, B2)
    rep.add("count", len(fl) == len(bh), f"|Hom_FL|={len(fl)} |Hom_bunch|={len(bh)}")

    w = None
    for Phi in bh:
        m = materialize_extension(Phi, C1, C2)
        bad = hom_violation(C1, C2, m)
        if bad:
            w = f"extension of {Phi} violates {bad}"
            break
        if bh_restrict(m, C1, C2, B1, B2) != Phi:
            w = f"restrict(extend({Phi})) differs"
            break
    rep.add("restrict-extend", w is None, w)

    w = None
    for m in fl:
        back = materialize_extension(bh_restrict(m, C1, C2, B1, B2), C1, C2)
        if back != m:
            w = f"extend(restrict({list(m)})) = {list(back)}"
            break
    rep.add("extend-restrict", w is None, w)

    r = functoriality_check([C1, C2])
    rep.add("functoriality", r.ok, None if r.ok else r.failures[0].witness)
    return rep


def functoriality_check(chains):
    """Restriction preserves identities and composition on every composable pair."""
    rep = ValidationReport()
    bunches = [decompose_chain(C) for C in chains]
    homs = {}
    for i, A in enumerate(chains):
        for j, Bc in enumerate(chains):
            homs[(i, j)] = fc_enumerate_homs(A, Bc)

    w = None
    for i, C in enumerate(chains):
        ident = tuple(range(C.n))
        if bh_restrict(ident, C, C, bunches[i], bunches[i]) != bh_identity(bunches[i]):
            w = f"chain {i}: restriction of the identity is not the identity"
            break
    rep.add("identity", w is None, w)

    w = None
    pairs = 0
    n = len(chains)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for f in homs[(i, j)]:
                    F = bh_restrict(f, chains[i], chains[j], bunches[i], bunches[j])
                    for g in homs[(j, k)]:
                        pairs += 1
                        gf = tuple(g[f[x]] for x in range(chains[i].n))
                        G = bh_restrict(g, chains[j], chains[k], bunches[j], bunches[k])
                        if bh_restrict(gf, chains[i], chains[k], bunches[i], bunches[k]) \
                                != bh_compose(G, F):
                            w = f"chains {i}->{j}->{k}: {list(f)} then {list(g)}"
                            break
                    if w:
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("composition", w is None, w or f"{pairs} composable pairs")
    return rep


def check_extension(phi, cfg=None):
    """Sampled B1-B6 for ``bh_extend(phi)`` on an arbitrary (possibly infinite) bunch."""
    from .oracle import SampleConfig, sample_element

    cfg = cfg or SampleConfig(samples=1000)
    X, Y = phi.source, phi.target
    ext = bh_extend(phi)
    tX, fX = chain_constants(X)
    tY, fY = chain_constants(Y)
    rep = ValidationReport()
    w = {k: None for k in ("order", "product", "residuum", "unit", "falsum")}
    if ext(tX) != tY:
        w["unit"] = f"t maps to {ext(tX)}"
    if ext(fX) != fY:
        w["falsum"] = f"f maps to {ext(fX)}"
    for i in range(cfg.samples):
        x = sample_element(X, cfg, 2 * i)
        y = sample_element(X, cfg, 2 * i + 1)
        fx, fy = ext(x), ext(y)
        if (_compare(X, x, y) is not Ordering.GT
                and _compare(Y, fx, fy) is Ordering.GT and w["order"] is None):
            w["order"] = f"{x} <= {y} but images {fx} > {fy}"
        if ext(_mul(X, x, y)) != _mul(Y, fx, fy) and w["product"] is None:
            w["product"] = f"{x}, {y}"
        if ext(_res(X, x, y)) != _res(Y, fx, fy) and w["residuum"] is None:
            w["residuum"] = f"{x}, {y}"
    for k, v in w.items():
        rep.add(k, v is None, v)
    return rep

