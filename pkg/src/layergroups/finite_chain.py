"""Finite involutive FL_e-chains stored as Cayley tables over 0..n-1.

The chain order is the index order. ``product[x][y]`` is the index of x*y.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian

from .bunch import Parity, bunch_validate
from .catalog import sugihara_bunch
from .chain import ChainElement, _mul, chain_constants, chain_sort_key
from .errors import DomainError, InfiniteChain, NotResiduated, ParseError, SizeGuard
from .report import ValidationReport

MAX_HOM_SOURCE = 8


@dataclass(frozen=True, eq=False)
class FiniteChain:
    n: int
    product: tuple
    t: int
    f: int
    # Optional names for the elements (e.g. the ChainElements they came from).
    elements: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "product", tuple(tuple(r) for r in self.product))

    def __eq__(self, other):
        return (isinstance(other, FiniteChain) and self.n == other.n and self.t == other.t
                and self.f == other.f and self.product == other.product)

    def __hash__(self):
        return hash((self.n, self.product, self.t, self.f))

    def mul(self, x, y):
        return self.product[x][y]

    @cached_property
    def residuum_table(self):
        """``res[x][z]`` = max{v : x v <= z}, or None when that set is empty."""
        n = self.n
        table = []
        for x in range(n):
            row = self.product[x]
            out = []
            for z in range(n):
                best = None
                for v in range(n):
                    if row[v] <= z:
                        best = v
                out.append(best)
            table.append(tuple(out))
        return tuple(table)

    def __repr__(self):
        return f"FiniteChain(n={self.n}, t={self.t}, f={self.f})"

    @classmethod
    def from_ranked(cls, product, t, f, rank):
        """Re-index a table whose elements are listed in arbitrary order.

        ``rank[i]`` is the position of element ``i`` in the chain order.
        Returns the sorted chain and the bijection old index -> new index.
        """
        n = len(product)
        if sorted(rank) != list(range(n)):
            raise DomainError("rank must be a permutation of 0..n-1")
        inv = [0] * n
        for old, new in enumerate(rank):
            inv[new] = old
        table = [[rank[product[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        return cls(n, table, rank[t], rank[f]), {i: rank[i] for i in range(n)}


def fc_residuum(C, x, z):
    r = C.residuum_table[x][z]
    if r is None:
        raise NotResiduated(f"no v with {x}*v <= {z}")
    return r


def fc_negate(C, x):
    return fc_residuum(C, x, C.f)


def _first(it):
    return next(iter(it), None)


def fc_validate(C):
    rep = ValidationReport()
    n, P = C.n, C.product
    shape = n >= 1 and len(P) == n and all(len(r) == n for r in P)
    rep.add("shape", shape, None if shape else f"table is not {n}x{n}")
    if not shape:
        rep.add("class", False, Parity.INVALID.value)
        return rep
    rng = all(0 <= v < n for r in P for v in r) and 0 <= C.t < n and 0 <= C.f < n
    rep.add("range", rng, None if rng else "entry or constant outside 0..n-1")
    if not rng:
        rep.add("class", False, Parity.INVALID.value)
        return rep
    idx = range(n)

    w = _first((x, y) for x in idx for y in idx if P[x][y] != P[y][x])
    rep.add("commutative", w is None, w and f"{w[0]}*{w[1]} != {w[1]}*{w[0]}")
    w = _first((x, y, z) for x in idx for y in idx for z in idx
               if P[P[x][y]][z] != P[x][P[y][z]])
    rep.add("associative", w is None, w and f"({w[0]}*{w[1]})*{w[2]} != {w[0]}*({w[1]}*{w[2]})")
    w = _first(x for x in idx if P[C.t][x] != x)
    rep.add("unit", w is None, None if w is None else f"t*{w} = {P[C.t][w]}")
    w = _first((x, y, z) for x in idx for y in range(n - 1) for z in (y + 1,)
               if P[x][y] > P[x][z])
    rep.add("monotone", w is None, w and f"{w[1]} <= {w[2]} but {w[0]}*{w[1]} > {w[0]}*{w[2]}")

    R = C.residuum_table
    w = _first((x, z) for x in idx for z in idx if R[x][z] is None)
    rep.add("residuated", w is None, w and f"no v with {w[0]}*v <= {w[1]}")
    if w is None:
        w = _first((x, y, z) for x in idx for y in idx for z in idx
                   if (P[x][y] <= z) != (y <= R[x][z]))
        rep.add("adjunction", w is None, w and f"x={w[0]} y={w[1]} z={w[2]}")
        neg = [R[x][C.f] for x in idx]
        w = _first(x for x in idx if neg[neg[x]] != x)
        rep.add("involutive", w is None, None if w is None else f"{w}'' = {neg[neg[w]]}")
    parity = fc_parity(C) if rep.ok else Parity.INVALID
    if rep.ok and parity is Parity.INVALID:
        rep.add("odd-or-even", False, f"f={C.f} is neither t nor its lower cover")
    rep.add("class", parity is not Parity.INVALID, parity.value)
    return rep


def fc_parity(C):
    """Odd / EvenNonIdem / EvenIdem from the constants alone (assumes a valid table)."""
    if C.f == C.t:
        return Parity.ODD
    if C.f == C.t - 1:
        return Parity.EVEN_IDEM if C.product[C.f][C.f] == C.f else Parity.EVEN_NON_IDEM
    return Parity.INVALID


def fc_isomorphic(C1, C2):
    """The order isomorphism (identity on indices) if it preserves the structure."""
    if C1.n != C2.n or C1.t != C2.t or C1.f != C2.f or C1.product != C2.product:
        return None
    return {i: i for i in range(C1.n)}


def is_hom(C1, C2, phi):
    """Conditions B1-B6 for an index map ``phi`` (a sequence or dict)."""
    return hom_violation(C1, C2, phi) is None


def hom_violation(C1, C2, phi):
    n1 = C1.n
    img = [phi[i] for i in range(n1)]
    if any(not 0 <= v < C2.n for v in img):
        return "B1"
    if any(img[i] > img[i + 1] for i in range(n1 - 1)):
        return "B2"
    P1, P2 = C1.product, C2.product
    for x in range(n1):
        for y in range(n1):
            if img[P1[x][y]] != P2[img[x]][img[y]]:
                return "B3"
    R1, R2 = C1.residuum_table, C2.residuum_table
    for x in range(n1):
        for y in range(n1):
            if img[R1[x][y]] != R2[img[x]][img[y]]:
                return "B4"
    if img[C1.t] != C2.t:
        return "B5"
    if img[C1.f] != C2.f:
        return "B6"
    return None


def fc_enumerate_homs(C1, C2):
    """All homomorphisms C1 -> C2 as tuples ``phi`` with ``phi[i]`` the image of i.

    Order-respecting backtracking: images are assigned in increasing index
    order, never decreasing, and every product/residuum constraint whose
    three indices are already assigned is checked immediately.
    """
    n1, n2 = C1.n, C2.n
    if n1 > MAX_HOM_SOURCE:
        raise SizeGuard(f"source has {n1} elements; enumeration is limited to {MAX_HOM_SOURCE}")
    P1, P2 = C1.product, C2.product
    R1, R2 = C1.residuum_table, C2.residuum_table
    fixed = {C1.t: C2.t}
    if C1.f in fixed and fixed[C1.f] != C2.f:
        return []
    fixed[C1.f] = C2.f
    img = [None] * n1
    out = []

    def consistent(k):
        for a in range(k + 1):
            for b in range(k + 1):
                p = P1[a][b]
                if p <= k and img[p] != P2[img[a]][img[b]]:
                    return False
                r = R1[a][b]
                if r <= k and img[r] != R2[img[a]][img[b]]:
                    return False
        return True

    def extend(k):
        if k == n1:
            out.append(tuple(img))
            return
        lo = img[k - 1] if k else 0
        choices = [fixed[k]] if k in fixed else range(lo, n2)
        for v in choices:
            if v < lo:
                continue
            img[k] = v
            if consistent(k):
                extend(k + 1)
        img[k] = None

    extend(0)
    return sorted(out)


def fc_materialize(B):
    """The finite chain of an all-trivial bunch, with its ChainElements as names."""
    if not B.is_all_trivial():
        bad = next(u for u in B.labels if B.groups[u].dim)
        raise InfiniteChain(f"layer {bad} has group {B.groups[bad]}; the chain is infinite")
    elems = []
    for u in B.labels:
        elems.append(ChainElement(u, (), False))
        if B.classes[u].value == "I":
            elems.append(ChainElement(u, (), True))
    elems.sort(key=chain_sort_key(B))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[_mul(B, x, y)] for y in elems] for x in elems]
    t, f = chain_constants(B)
    return FiniteChain(len(elems), table, index[t], index[f], tuple(elems))


def generate_sugihara(kind, n):
    B = sugihara_bunch(kind, n)
    assert bunch_validate(B).ok
    return fc_materialize(B)


def sugihara_table(kind, n):
    """Closed-form Sugihara monoid table, independent of the bunch construction.

    Elements are the integers -k..k (odd) or -k..-1, 1..k (even) in
    increasing order; x*y is the factor of larger absolute value, and the
    smaller factor when the absolute values tie.
    """
    kind = kind.lower()
    if kind == "odd":
        k = (n - 1) // 2
        vals = list(range(-k, k + 1))
        t = f = vals.index(0)
    else:
        k = n // 2
        vals = list(range(-k, 0)) + list(range(1, k + 1))
        t, f = vals.index(1), vals.index(-1)

    def m(a, b):
        if abs(a) != abs(b):
            return a if abs(a) > abs(b) else b
        return min(a, b)

    idx = {v: i for i, v in enumerate(vals)}
    table = [[idx[m(a, b)] for b in vals] for a in vals]
    return FiniteChain(len(vals), table, t, f)


def enumerate_homs_bruteforce(C1, C2):
    """Every function C1 -> C2 filtered by B1-B6 (exhaustive oracle)."""
    return sorted(phi for phi in cartesian(range(C2.n), repeat=C1.n) if is_hom(C1, C2, phi))


# ---------------------------------------------------------------------------
# Text format

def format_finite_chain(C):
    lines = [f"n {C.n}", f"t {C.t}", f"f {C.f}"]
    lines += [" ".join(str(v) for v in row) for row in C.product]
    return "\n".join(lines) + "\n"


def parse_finite_chain(text):
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    header = {}
    for key in ("n", "t", "f"):
        if not lines:
            raise ParseError(f"missing '{key}' line")
        lineno, ln = lines.pop(0)
        parts = ln.split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(f"expected '{key} <int>'", lineno, 1)
        try:
            header[key] = int(parts[1])
        except ValueError:
            raise ParseError(f"bad integer {parts[1]!r}", lineno, len(key) + 2) from None
    n = header["n"]
    if n < 1:
        raise ParseError("n must be positive", 1)
    if len(lines) != n:
        where = lines[n][0] if len(lines) > n else (lines[-1][0] if lines else None)
        raise ParseError(f"expected {n} table rows, found {len(lines)}", where)
    rows = []
    for lineno, ln in lines:
        parts = ln.split()
        if len(parts) != n:
            raise ParseError(f"row has {len(parts)} entries, expected {n} (table must be square)",
                             lineno)
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise ParseError("non-integer table entry", lineno) from None
        if any(not 0 <= v < n for v in row):
            raise ParseError(f"table entry outside 0..{n - 1}", lineno)
        rows.append(row)
    for key in ("t", "f"):
        if not 0 <= header[key] < n:
            raise ParseError(f"{key} index outside 0..{n - 1}")
    return FiniteChain(n, rows, header["t"], header["f"])
