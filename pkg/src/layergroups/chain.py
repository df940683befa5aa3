"""The involutive FL_e-chain of a bunch, evaluated pointwise.

Elements are never enumerated: every operation works on a single
``ChainElement`` (layer label, group value, dotted flag). A dotted element
``•a`` stores its underlying subgroup element ``a`` as its value, so
``gamma`` is just ``x.value``.
"""
from __future__ import annotations

import contextlib
import contextvars
from functools import cmp_to_key
from typing import NamedTuple

from .bunch import LayerClass
from .errors import DomainError, ParseError
from .ogroup import Ordering, format_element, og_is_valid, og_unit, parse_element
from .report import ValidationReport


class ChainElement(NamedTuple):
    layer: str
    value: tuple
    dotted: bool = False

    def __str__(self):
        return format_chain_element(self)


def format_chain_element(x):
    return f"{x.layer}:{'*' if x.dotted else ''}{format_element(x.value)}"


def parse_chain_element(text):
    """Parse ``u:[1,2]`` (undotted) or ``u:*[2]`` (dotted)."""
    t = text.strip()
    if ":" not in t:
        raise ParseError(f"element literal needs 'label:[...]', got {t!r}")
    label, _, rest = t.partition(":")
    rest = rest.strip()
    dotted = rest.startswith("*")
    if dotted:
        rest = rest[1:]
    return ChainElement(label.strip(), parse_element(rest), dotted)


# ---------------------------------------------------------------------------
# Mutation hooks (used only by the sensitivity tests)

MUTATIONS = ("drop-dotting", "swap-tie-break", "misroute-J-negation")
_active = contextvars.ContextVar("layergroups_mutations", default=frozenset())


@contextlib.contextmanager
def mutated(*names):
    """Temporarily switch on deliberate implementation faults."""
    unknown = set(names) - set(MUTATIONS)
    if unknown:
        raise ValueError(f"unknown mutation(s): {sorted(unknown)}")
    token = _active.set(_active.get() | frozenset(names))
    try:
        yield
    finally:
        _active.reset(token)


# ---------------------------------------------------------------------------

def element_validate(B, x):
    rep = ValidationReport()
    if x.layer not in B.pos:
        rep.add("layer", False, f"unknown layer {x.layer!r}")
        return rep
    rep.add("layer", True)
    G = B.groups[x.layer]
    valid = og_is_valid(G, x.value)
    rep.add("value", valid, None if valid else f"{x.value!r} not in {G}")
    if x.dotted:
        if B.classes[x.layer] is not LayerClass.I:
            rep.add("dotted", False, f"{x.layer} is not class I")
        elif not valid or not B.in_h(x.layer, x.value):
            rep.add("dotted", False, f"{format_element(x.value)} not in H_{x.layer}")
        else:
            rep.add("dotted", True)
    return rep


def check_element(B, x):
    if not isinstance(x, ChainElement):
        raise DomainError(f"not a chain element: {x!r}")
    rep = element_validate(B, x)
    if not rep.ok:
        raise DomainError(f"invalid element {format_chain_element(x)}: {rep.failures[0].witness}")
    return x


def gamma(B, x):
    return x.value


def _rho(B, v, x):
    u = x.layer
    if u == v or B.pos[u] > B.pos[v]:
        return x
    return ChainElement(v, B.lift(u, v, x.value), False)


def rho(B, v, x):
    B.position(v)
    check_element(B, x)
    return _rho(B, v, x)


def _layer_cmp(a, b):
    """Within-layer order: dotted copies sit just below their originals."""
    if a.value != b.value:
        return Ordering.LT if a.value < b.value else Ordering.GT
    if a.dotted == b.dotted:
        return Ordering.EQ
    return Ordering.LT if a.dotted else Ordering.GT


def layer_le_alt(a, b):
    """Within-layer ``<=``, the non-strict equivalent form."""
    return a.value < b.value or (a.value == b.value and (a.dotted or not b.dotted))


def layer_lt_primary(B, u, a, b):
    """Within-layer ``<`` read directly off the extension of the group order."""
    if B.classes[u] is not LayerClass.I:
        return a.value < b.value
    if not a.dotted and not b.dotted:
        return a.value < b.value
    if a.dotted and b.dotted:
        return a.value < b.value
    if b.dotted:
        # x < •a  iff  x < a
        return a.value < b.value
    # •a < y  iff  a <= y
    return a.value <= b.value


def _compare(B, x, y):
    pu, pv = B.pos[x.layer], B.pos[y.layer]
    w = x.layer if pu >= pv else y.layer
    c = _layer_cmp(_rho(B, w, x), _rho(B, w, y))
    if c is not Ordering.EQ or pu == pv:
        return c
    c = Ordering.LT if pu < pv else Ordering.GT
    if "swap-tie-break" in _active.get():
        c = Ordering(-c)
    return c


def chain_compare(B, x, y):
    check_element(B, x)
    check_element(B, y)
    return _compare(B, x, y)


def _in_h(B, u, x):
    """``x`` (an element of L_u) belongs to H_u, i.e. it is undotted with value in H_u."""
    return not x.dotted and B.in_h(u, x.value)


def _layer_mul(B, u, x, y):
    a = tuple(p + q for p, q in zip(x.value, y.value))
    if (B.classes[u] is LayerClass.I and "drop-dotting" not in _active.get()
            and B.in_h(u, a) and not (_in_h(B, u, x) and _in_h(B, u, y))):
        return ChainElement(u, a, True)
    return ChainElement(u, a, False)


def layer_mul(B, u, x, y):
    check_element(B, x)
    check_element(B, y)
    if x.layer != u or y.layer != u:
        raise DomainError(f"layer_mul at {u} needs two elements of L_{u}")
    return _layer_mul(B, u, x, y)


def layer_mul_primary(B, u, x, y):
    """The three-case layer product, kept separate from the simplified one."""
    a = tuple(p + q for p, q in zip(x.value, y.value))
    if B.classes[u] is LayerClass.I:
        if B.in_h(u, a) and not (_in_h(B, u, x) and _in_h(B, u, y)):
            return ChainElement(u, a, True)
        return ChainElement(u, a, False)
    return ChainElement(u, a, False)


def _mul(B, x, y):
    w = x.layer if B.pos[x.layer] >= B.pos[y.layer] else y.layer
    return _layer_mul(B, w, _rho(B, w, x), _rho(B, w, y))


def chain_mul(B, x, y):
    check_element(B, x)
    check_element(B, y)
    return _mul(B, x, y)


def _neg(B, x):
    u = x.layer
    inv = tuple(-a for a in x.value)
    c = B.classes[u]
    if c is LayerClass.I:
        if x.dotted:
            return ChainElement(u, inv, False)
        if B.in_h(u, x.value):
            return ChainElement(u, inv, True)
        return ChainElement(u, inv, False)
    if c is LayerClass.J:
        if "misroute-J-negation" in _active.get():
            return ChainElement(u, inv, False)
        return ChainElement(u, inv[:-1] + (inv[-1] - 1,), False)
    return ChainElement(u, inv, False)


def chain_negate(B, x):
    check_element(B, x)
    return _neg(B, x)


def negate_simplified(B, x):
    """Three-case residual complement written with gamma."""
    u = x.layer
    inv = tuple(-a for a in x.value)
    c = B.classes[u]
    if c is LayerClass.I and _in_h(B, u, x):
        return ChainElement(u, inv, True)
    if c is LayerClass.J:
        return ChainElement(u, inv[:-1] + (inv[-1] - 1,), False)
    return ChainElement(u, inv, False)


def _res(B, x, y):
    return _neg(B, _mul(B, x, _neg(B, y)))


def chain_residuum(B, x, y):
    check_element(B, x)
    check_element(B, y)
    return _res(B, x, y)


def chain_constants(B):
    t = ChainElement(B.t, og_unit(B.groups[B.t]), False)
    return t, _neg(B, t)


def unit_of(B, u):
    """The undotted unit of layer ``u`` (the idempotent u itself)."""
    return ChainElement(u, og_unit(B.groups[u]), False)


def chain_sort_key(B):
    return cmp_to_key(lambda x, y: int(_compare(B, x, y)))
