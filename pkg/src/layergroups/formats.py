"""Line-oriented text formats for bunches and bunch homomorphisms.

Bunch file::

    # comments and blank lines are ignored
    skeleton: t u
    classes: t=o u=I
    layer t: zlex:1
    layer u: zlex:1 H=gens:[[2]]
    transition t->u: [[2]]

Every pair u < v needs a ``transition`` line. Matrices are lists of rows,
so a map into the trivial group is ``[]`` and a map from it into zlex:2 is
``[[],[]]``.

Bunch-hom file (paths are relative to the hom file)::

    source: bz2.bunch
    target: bz2.bunch
    sigma: t=t u=u
    map t: [[3]]
    map u: [[3]]
"""
from __future__ import annotations

import re
from pathlib import Path

from .bunch import Bunch, LayerClass
from .errors import ParseError
from .finite_chain import parse_finite_chain
from .hom import BunchHom
from .ogroup import (
    OGroupHomDesc,
    format_group,
    format_matrix,
    format_subgroup,
    parse_group,
    parse_matrix,
    parse_subgroup,
)

_LABEL = re.compile(r"[A-Za-z0-9_.\-]+$")


def _lines(text):
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield i, raw, s


def _col(raw, fragment):
    k = raw.find(fragment)
    return k + 1 if k >= 0 else None


def _label(tok, lineno, raw):
    if not _LABEL.match(tok) or "->" in tok:
        raise ParseError(f"bad label {tok!r}", lineno, _col(raw, tok))
    return tok


def _pairs(body, lineno, raw, what):
    out = {}
    for tok in body.split():
        k, eq, v = tok.partition("=")
        if not eq or not k or not v:
            raise ParseError(f"expected label=value in {what}, got {tok!r}", lineno, _col(raw, tok))
        if k in out:
            raise ParseError(f"duplicate {what} entry for {k}", lineno, _col(raw, tok))
        out[_label(k, lineno, raw)] = v
    return out


def _wrap(fn, lineno, raw, fragment):
    try:
        return fn()
    except ParseError as e:
        msg = str(e)
        raise ParseError(msg, lineno, _col(raw, fragment)) from None
    except ValueError as e:
        raise ParseError(str(e), lineno, _col(raw, fragment)) from None


def parse_bunch(text):
    labels = classes = None
    layers, trans = {}, {}
    where = {}
    for lineno, raw, s in _lines(text):
        head, colon, body = s.partition(":")
        if not colon:
            raise ParseError("expected 'key: value'", lineno, 1)
        head, body = head.strip(), body.strip()
        if head == "skeleton":
            if labels is not None:
                raise ParseError("duplicate skeleton line", lineno, 1)
            labels = [_label(t, lineno, raw) for t in body.split()]
            if not labels:
                raise ParseError("empty skeleton", lineno, 1)
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate label in skeleton", lineno, 1)
        elif head == "classes":
            if classes is not None:
                raise ParseError("duplicate classes line", lineno, 1)
            raw_cls = _pairs(body, lineno, raw, "classes")
            classes = {}
            for u, c in raw_cls.items():
                try:
                    classes[u] = LayerClass(c)
                except ValueError:
                    raise ParseError(f"unknown class {c!r} (use o, J or I)", lineno,
                                     _col(raw, f"{u}={c}")) from None
        elif head.startswith("layer "):
            u = _label(head[6:].strip(), lineno, raw)
            if u in layers:
                raise ParseError(f"duplicate layer line for {u}", lineno, 1)
            parts = body.split(None, 1)
            if not parts:
                raise ParseError("layer needs a group", lineno, len(raw))
            G = _wrap(lambda: parse_group(parts[0]), lineno, raw, parts[0])
            H = None
            if len(parts) == 2:
                rest = parts[1].strip()
                if not rest.startswith("H="):
                    raise ParseError("expected H=<subgroup>", lineno, _col(raw, rest))
                H = _wrap(lambda: parse_subgroup(rest[2:], G), lineno, raw, rest)
            layers[u] = (G, H)
            where[u] = lineno
        elif head.startswith("transition "):
            u, arrow, v = head[11:].partition("->")
            if not arrow:
                raise ParseError("expected 'transition u->v'", lineno, 1)
            key = (_label(u.strip(), lineno, raw), _label(v.strip(), lineno, raw))
            if key in trans:
                raise ParseError(f"duplicate transition {key[0]}->{key[1]}", lineno, 1)
            trans[key] = (lineno, _wrap(lambda: parse_matrix(body), lineno, raw, body), raw, body)
        else:
            raise ParseError(f"unknown key {head!r}", lineno, 1)

    if labels is None:
        raise ParseError("missing skeleton line")
    if classes is None:
        raise ParseError("missing classes line")
    for u in labels:
        if u not in classes:
            raise ParseError(f"no class for {u}")
        if u not in layers:
            raise ParseError(f"no layer line for {u}")
    for u in list(classes) + list(layers):
        if u not in labels:
            raise ParseError(f"{u} is not in the skeleton", where.get(u))
    for u in labels:
        has_h = layers[u][1] is not None
        if (classes[u] is LayerClass.I) != has_h:
            raise ParseError(f"layer {u}: H= is required exactly on class I", where[u])
    pos = {u: i for i, u in enumerate(labels)}
    maps = {}
    for (u, v), (lineno, M, raw, body) in trans.items():
        if u not in pos or v not in pos or pos[u] >= pos[v]:
            raise ParseError(f"transition {u}->{v} is not between labels u < v", lineno, 1)
        maps[(u, v)] = _wrap(lambda: OGroupHomDesc(layers[u][0], layers[v][0], M),
                             lineno, raw, body)
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            if (u, v) not in maps:
                raise ParseError(f"missing transition {u}->{v}")
    return Bunch(
        labels=labels,
        classes=classes,
        groups={u: layers[u][0] for u in labels},
        subgroups={u: layers[u][1] for u in labels if layers[u][1] is not None},
        transitions=maps,
    )


def format_bunch(B):
    out = ["skeleton: " + " ".join(B.labels),
           "classes: " + " ".join(f"{u}={B.classes[u].value}" for u in B.labels)]
    for u in B.labels:
        line = f"layer {u}: {format_group(B.groups[u])}"
        if u in B.subgroups:
            line += " H=" + format_subgroup(B.subgroups[u])
        out.append(line)
    for i, u in enumerate(B.labels):
        for v in B.labels[i + 1:]:
            out.append(f"transition {u}->{v}: {format_matrix(B.transitions[(u, v)].matrix)}")
    return "\n".join(out) + "\n"


def load_bunch(path):
    return parse_bunch(Path(path).read_text())


def load_finite_chain(path):
    return parse_finite_chain(Path(path).read_text())


def parse_bunch_hom(text, base=".", source=None, target=None):
    """Parse a hom file; ``source``/``target`` bunches override the named files."""
    fields, sigma, maps = {}, None, {}
    for lineno, raw, s in _lines(text):
        head, colon, body = s.partition(":")
        head, body = head.strip(), body.strip()
        if not colon:
            raise ParseError("expected 'key: value'", lineno, 1)
        if head in ("source", "target"):
            fields[head] = (lineno, body)
        elif head == "sigma":
            sigma = _pairs(body, lineno, raw, "sigma")
        elif head.startswith("map "):
            u = _label(head[4:].strip(), lineno, raw)
            maps[u] = (lineno, _wrap(lambda: parse_matrix(body), lineno, raw, body), raw, body)
        else:
            raise ParseError(f"unknown key {head!r}", lineno, 1)
    if sigma is None:
        raise ParseError("missing sigma line")
    bunches = {"source": source, "target": target}
    for key in ("source", "target"):
        if bunches[key] is None:
            if key not in fields:
                raise ParseError(f"missing {key} line")
            lineno, name = fields[key]
            try:
                bunches[key] = load_bunch(Path(base) / name)
            except OSError as e:
                raise ParseError(f"cannot read {name}: {e.strerror}", lineno) from None
    X, Y = bunches["source"], bunches["target"]
    layer = {}
    for u, (lineno, M, raw, body) in maps.items():
        if u not in X.pos:
            raise ParseError(f"map for unknown source label {u}", lineno, 1)
        if sigma.get(u) not in Y.pos:
            raise ParseError(f"sigma does not send {u} to a target label", lineno, 1)
        layer[u] = _wrap(lambda: OGroupHomDesc(X.groups[u], Y.groups[sigma[u]], M),
                         lineno, raw, body)
    for u in X.labels:
        if u not in layer:
            raise ParseError(f"missing map for {u}")
    return BunchHom(X, Y, sigma, layer)


def format_bunch_hom(phi, source_name, target_name):
    out = [f"source: {source_name}", f"target: {target_name}",
           "sigma: " + " ".join(f"{u}={phi.skeleton_map[u]}" for u in phi.source.labels)]
    out += [f"map {u}: {format_matrix(phi.layer_map[u].matrix)}" for u in phi.source.labels]
    return "\n".join(out) + "\n"


def load_bunch_hom(path):
    p = Path(path)
    return parse_bunch_hom(p.read_text(), base=p.parent)
