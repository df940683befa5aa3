"""Small named bunches used throughout the tests, demos, and acceptance suite.

OS3  odd 3-element Sugihara chain: t < u, t:o, u:I, trivial groups.
ES2  even 2-element Sugihara chain: t alone, class I, trivial group.
EZ   even chain over Z: t alone, class J, Z.
BZ2  t < u, t:o with Z, u:I with Z and H = 2Z, transition x2.
Z2J  t < u, t:J with lex Z^2, u:I with lex Z^2 and H = <(1,0),(0,2)>,
     transition (a, b) -> (a, 0).
MIX3 t < u < w mixing all three behaviours: t:o with Z, u:J with lex Z^2,
     w:I with Q and H = (1/2)Z.
"""
from fractions import Fraction

from .bunch import Bunch, complete_transitions
from .errors import DomainError
from .ogroup import RATIONAL, TRIVIAL, IntLex, OGroupHomDesc, SubgroupSpec


def os3():
    return Bunch(
        labels=["t", "u"],
        classes={"t": "o", "u": "I"},
        groups={"t": TRIVIAL, "u": TRIVIAL},
        subgroups={"u": SubgroupSpec(TRIVIAL)},
        transitions={("t", "u"): OGroupHomDesc.zero(TRIVIAL, TRIVIAL)},
    )


def es2():
    return Bunch(labels=["t"], classes={"t": "I"}, groups={"t": TRIVIAL},
                 subgroups={"t": SubgroupSpec(TRIVIAL)})


def ez():
    return Bunch(labels=["t"], classes={"t": "J"}, groups={"t": IntLex(1)})


def bz2(multiplier=2, h_gens=((2,),)):
    Z = IntLex(1)
    return Bunch(
        labels=["t", "u"],
        classes={"t": "o", "u": "I"},
        groups={"t": Z, "u": Z},
        subgroups={"u": SubgroupSpec.lattice(1, h_gens)},
        transitions={("t", "u"): OGroupHomDesc.scalar(Z, multiplier)},
    )


def z2j():
    Z2 = IntLex(2)
    return Bunch(
        labels=["t", "u"],
        classes={"t": "J", "u": "I"},
        groups={"t": Z2, "u": Z2},
        subgroups={"u": SubgroupSpec.lattice(2, [(1, 0), (0, 2)])},
        transitions={("t", "u"): OGroupHomDesc(Z2, Z2, ((1, 0), (0, 0)))},
    )


def mix3():
    groups = {"t": IntLex(1), "u": IntLex(2), "w": RATIONAL}
    trans = complete_transitions(["t", "u", "w"], groups, {
        ("t", "u"): ((2,), (1,)),
        ("u", "w"): ((Fraction(1, 2), 0),),
    })
    return Bunch(
        labels=["t", "u", "w"],
        classes={"t": "o", "u": "J", "w": "I"},
        groups=groups,
        subgroups={"w": SubgroupSpec.rational(Fraction(1, 2))},
        transitions=trans,
    )


def sugihara_bunch(kind, n):
    """Trivial-group bunch whose chain is the Sugihara chain with ``n`` elements."""
    kind = kind.lower()
    if kind == "odd":
        if n < 1 or n % 2 != 1:
            raise DomainError(f"odd Sugihara chains have odd size >= 1, got {n}")
        k = (n - 1) // 2
        labels = ["t"] + [f"s{i}" for i in range(1, k + 1)]
        classes = {u: ("o" if u == "t" else "I") for u in labels}
    elif kind == "even":
        if n < 2 or n % 2 != 0:
            raise DomainError(f"even Sugihara chains have even size >= 2, got {n}")
        k = n // 2
        labels = ["t"] + [f"s{i}" for i in range(1, k)]
        classes = {u: "I" for u in labels}
    else:
        raise DomainError(f"kind must be odd or even, got {kind!r}")
    groups = {u: TRIVIAL for u in labels}
    trans = complete_transitions(labels, groups,
                                 {(labels[i], labels[i + 1]): () for i in range(len(labels) - 1)})
    return Bunch(labels=labels, classes=classes, groups=groups,
                 subgroups={u: SubgroupSpec(TRIVIAL) for u in labels if classes[u] == "I"},
                 transitions=trans)


NAMED = {"OS3": os3, "ES2": es2, "EZ": ez, "BZ2": bz2, "Z2J": z2j, "MIX3": mix3}
