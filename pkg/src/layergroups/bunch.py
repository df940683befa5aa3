"""Bunches of layer groups: data model, validation, parity, canonical equality."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

from .errors import DomainError
from .ogroup import (
    Kind,
    OGroupHomDesc,
    SubgroupSpec,
    format_element,
    format_group,
    hom_compose,
    hom_validate,
    matvec,
    og_is_valid,
    og_unit,
    sub_canonical,
    sub_contains,
)
from .report import ValidationReport


class LayerClass(str, enum.Enum):
    O = "o"
    J = "J"
    I = "I"  # noqa: E741


class Parity(str, enum.Enum):
    ODD = "Odd"
    EVEN_NON_IDEM = "EvenNonIdem"
    EVEN_IDEM = "EvenIdem"
    INVALID = "Invalid"


@dataclass(frozen=True, eq=False)
class Bunch:
    """A finite-skeleton bunch of layer groups.

    ``labels`` lists the skeleton in increasing order, so ``labels[0]`` is the
    least element t. ``transitions`` holds one homomorphism per pair u < v;
    identities u -> u are implicit.
    """
    labels: tuple
    classes: dict
    groups: dict
    subgroups: dict = field(default_factory=dict)
    transitions: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "classes", MappingProxyType(
            {u: LayerClass(c) for u, c in self.classes.items()}))
        object.__setattr__(self, "groups", MappingProxyType(dict(self.groups)))
        object.__setattr__(self, "subgroups", MappingProxyType(dict(self.subgroups)))
        object.__setattr__(self, "transitions", MappingProxyType(dict(self.transitions)))

    @property
    def t(self):
        return self.labels[0]

    @cached_property
    def pos(self):
        return {u: i for i, u in enumerate(self.labels)}

    def position(self, u):
        try:
            return self.pos[u]
        except KeyError:
            raise DomainError(f"unknown skeleton label {u!r}") from None

    def transition(self, u, v):
        if u == v:
            return OGroupHomDesc.identity(self.groups[u])
        if self.position(u) > self.position(v):
            raise DomainError(f"no transition {u}->{v}: {u} is above {v}")
        return self.transitions[(u, v)]

    @cached_property
    def _matrices(self):
        return {k: h.matrix for k, h in self.transitions.items()}

    def lift(self, u, v, x):
        """Apply the transition u -> v (u strictly below v) without validation."""
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self._matrices[(u, v)])

    @cached_property
    def _hgens(self):
        return {u: sub_canonical(H) for u, H in self.subgroups.items()}

    def in_h(self, u, x):
        H = self._hgens.get(u)
        return H is not None and sub_contains(H, x)

    def is_all_trivial(self):
        return all(G.kind is Kind.TRIVIAL for G in self.groups.values())

    def __repr__(self):
        return f"Bunch({list(self.labels)!r}, classes={dict(self.classes)!r})"


def complete_transitions(labels, groups, consecutive):
    """All transitions u < v, obtained by composing the consecutive ones.

    ``consecutive`` maps (labels[i], labels[i+1]) to a matrix (row tuples).
    """
    labels = list(labels)
    out = {}
    for i in range(len(labels) - 1):
        u, v = labels[i], labels[i + 1]
        out[(u, v)] = OGroupHomDesc(groups[u], groups[v], consecutive[(u, v)])
    for gap in range(2, len(labels)):
        for i in range(len(labels) - gap):
            u, v, w = labels[i], labels[i + gap - 1], labels[i + gap]
            out[(u, w)] = hom_compose(out[(v, w)], out[(u, v)])
    return out


def bunch_validate(B):
    rep = ValidationReport()
    labels = B.labels

    problems = []
    if not labels:
        problems.append("empty skeleton")
    if len(set(labels)) != len(labels):
        problems.append("duplicate labels")
    for u in labels:
        if u not in B.classes:
            problems.append(f"{u} has no class")
        if u not in B.groups:
            problems.append(f"{u} has no group")
    for u in B.classes:
        if u not in B.pos:
            problems.append(f"class given for unknown label {u}")
    for u in labels:
        has_h = u in B.subgroups
        if B.classes.get(u) is LayerClass.I and not has_h:
            problems.append(f"{u} is class I but has no subgroup")
        if B.classes.get(u) is not LayerClass.I and has_h:
            problems.append(f"{u} is not class I but has a subgroup")
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            h = B.transitions.get((u, v))
            if h is None:
                problems.append(f"missing transition {u}->{v}")
            elif h.source != B.groups.get(u) or h.target != B.groups.get(v):
                problems.append(f"transition {u}->{v} has the wrong type")
    for (u, v) in B.transitions:
        if u not in B.pos or v not in B.pos or B.pos[u] >= B.pos[v]:
            problems.append(f"transition {u}->{v} is not between labels u < v")
    rep.add("structure", not problems, "; ".join(problems) or None)
    if problems:
        return rep

    t = B.t
    bad = [u for u in labels if B.classes[u] is LayerClass.O and u != t]
    rep.add("least-element", True, f"t={t}")
    rep.add("G1", not bad, f"class o on {bad[0]}" if bad else None)

    hom_fail = None
    for (u, v), h in B.transitions.items():
        r = hom_validate(h)
        if not r.ok:
            hom_fail = f"{u}->{v}: {r.failures[0].witness}"
            break
    rep.add("homs", hom_fail is None, hom_fail)
    rep.add("D1", True, None)

    d2 = None
    for i, u in enumerate(labels):
        for j in range(i + 1, len(labels)):
            v = labels[j]
            for w in labels[j + 1:]:
                lhs = _compose_matrix(B.transitions[(v, w)], B.transitions[(u, v)])
                if lhs != B.transitions[(u, w)].matrix:
                    d2 = f"{u}->{v}->{w}"
                    break
            if d2:
                break
        if d2:
            break
    rep.add("D2", d2 is None, d2)

    g2 = None
    for v in labels:
        if B.classes[v] is not LayerClass.I:
            continue
        H = B.subgroups[v]
        if H.owner != B.groups[v] or not all(og_is_valid(H.owner, g) for g in H.gens):
            g2 = f"H_{v} is not a subgroup of {format_group(B.groups[v])}"
            break
        for u in labels[:B.pos[v]]:
            h = B.transitions[(u, v)]
            if h.source.kind is Kind.RATIONAL:
                col = h.columns()[0]
                if any(a != 0 for a in col):
                    g2 = f"{u}->{v}: divisible image {format_element(col)}*Q not inside H_{v}"
                    break
                continue
            for j, col in enumerate(h.columns()):
                if not sub_contains(H, col):
                    g2 = f"{u}->{v}: image {format_element(col)} of generator {j + 1} not in H_{v}"
                    break
            if g2:
                break
        if g2:
            break
    rep.add("G2", g2 is None, g2)

    g3 = None
    for u in labels:
        if B.classes[u] is not LayerClass.J:
            continue
        G = B.groups[u]
        if G.kind is not Kind.INTLEX:
            g3 = f"class-J layer {u} has non-discrete group {format_group(G)}"
            break
        down = og_unit(G)[:-1] + (-1,)
        for v in labels[B.pos[u] + 1:]:
            img = matvec(B.transitions[(u, v)].matrix, down)
            if any(img):
                g3 = f"{u}->{v} maps the lower cover of the unit to {format_element(img)}"
                break
        if g3:
            break
    rep.add("G3", g3 is None, g3)
    return rep


def _compose_matrix(g, h):
    return hom_compose(g, h).matrix


def bunch_parity(B):
    c = B.classes[B.t]
    if c is LayerClass.O:
        return Parity.ODD
    if c is LayerClass.J:
        return Parity.EVEN_NON_IDEM
    return Parity.EVEN_IDEM


def canonical_form(B):
    """Label-free description: per-position class, group, subgroup, and transitions."""
    n = len(B.labels)
    layers = tuple(
        (B.classes[u].value, format_group(B.groups[u]),
         sub_canonical(B.subgroups[u]) if u in B.subgroups else None)
        for u in B.labels)
    trans = tuple(
        ((i, j), B.transitions[(B.labels[i], B.labels[j])].matrix)
        for i in range(n) for j in range(i + 1, n))
    return layers, trans


def bunch_equal(B1, B2):
    return canonical_form(B1) == canonical_form(B2)


def relabel(B, mapping):
    """Rename skeleton labels (order is unchanged)."""
    name = (lambda u: mapping.get(u, u)) if isinstance(mapping, dict) else mapping
    return Bunch(
        labels=[name(u) for u in B.labels],
        classes={name(u): c for u, c in B.classes.items()},
        groups={name(u): G for u, G in B.groups.items()},
        subgroups={name(u): H for u, H in B.subgroups.items()},
        transitions={(name(u), name(v)): h for (u, v), h in B.transitions.items()},
    )


def trivial_subgroup(G):
    return SubgroupSpec(G, ())
