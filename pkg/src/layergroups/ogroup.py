"""Exact abelian o-groups: the trivial group, lexicographic Z^r, and Q.

Group elements are plain tuples. The trivial group uses ``()``, ``IntLex(r)``
uses an r-tuple of ints, and ``Rational`` uses a 1-tuple holding an int or a
``Fraction``. With that encoding every homomorphism in the implemented family
is an exact matrix (target dimension x source dimension), and the group order
is Python's own tuple ordering: lexicographic, first coordinate most
significant.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from .errors import DomainError, ParseError
from .report import ValidationReport


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b):
        return cls((a > b) - (a < b))


class Kind(str, enum.Enum):
    TRIVIAL = "trivial"
    INTLEX = "zlex"
    RATIONAL = "rational"


@dataclass(frozen=True)
class OGroupDesc:
    kind: Kind
    rank: int = 0

    def __post_init__(self):
        if self.kind is Kind.INTLEX:
            if not isinstance(self.rank, int) or self.rank < 1:
                raise DomainError(f"IntLex rank must be a positive integer, got {self.rank!r}")
        elif self.rank != 0:
            raise DomainError(f"{self.kind.value} carries no rank")

    @property
    def dim(self):
        """Length of the element tuples."""
        if self.kind is Kind.INTLEX:
            return self.rank
        return 1 if self.kind is Kind.RATIONAL else 0

    @property
    def is_discrete(self):
        return self.kind is Kind.INTLEX

    def __str__(self):
        return format_group(self)


TRIVIAL = OGroupDesc(Kind.TRIVIAL)
RATIONAL = OGroupDesc(Kind.RATIONAL)


def IntLex(rank):
    return OGroupDesc(Kind.INTLEX, rank)


def _norm(q):
    """Collapse integral Fractions to int so that IntLex checks stay simple."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def _is_int(a):
    return isinstance(a, int) and not isinstance(a, bool)


def og_is_valid(G, x):
    if not isinstance(x, tuple) or len(x) != G.dim:
        return False
    if G.kind is Kind.INTLEX:
        return all(_is_int(a) for a in x)
    if G.kind is Kind.RATIONAL:
        return _is_int(x[0]) or isinstance(x[0], Fraction)
    return True


def og_check(G, x):
    if not og_is_valid(G, x):
        raise DomainError(f"{x!r} is not an element of {format_group(G)}")
    return x


def og_element(G, payload=()):
    """Build a validated element, normalizing rationals."""
    x = tuple(_norm(Fraction(a)) if G.kind is Kind.RATIONAL else a for a in payload)
    if G.kind is Kind.INTLEX:
        x = tuple(_norm(a) if isinstance(a, Fraction) else a for a in x)
    return og_check(G, x)


def og_compare(G, x, y):
    og_check(G, x)
    og_check(G, y)
    return Ordering.of(x, y)


def og_combine(G, x, y):
    og_check(G, x)
    og_check(G, y)
    return tuple(a + b for a, b in zip(x, y))


def og_inverse(G, x):
    og_check(G, x)
    return tuple(-a for a in x)


def og_unit(G):
    return (0,) * G.dim


def og_cover(G, x, direction="down"):
    """Lower or upper cover of ``x``; dense and trivial groups return ``x``."""
    og_check(G, x)
    if G.kind is not Kind.INTLEX:
        return x
    step = -1 if direction.lower() == "down" else 1
    return x[:-1] + (x[-1] + step,)


# ---------------------------------------------------------------------------
# Hermite normal form (column style, lower echelon)

def _xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def column_hnf(rows, ncols=None):
    """Column Hermite normal form of an integer matrix given as a list of rows.

    Returns ``(H, U, rank)`` with ``A @ U == H``, ``U`` unimodular, the first
    ``rank`` columns of ``H`` in lower echelon form (pivot rows strictly
    increasing, pivots positive, entries left of a pivot reduced into
    ``[0, pivot)``) and the remaining columns zero. Columns ``rank..`` of
    ``U`` are therefore a basis of the integer kernel of ``A``.
    """
    m = len(rows)
    k = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(k)] for i in range(k)]

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
        for M in (H, U):
            for row in M:
                x, y = row[i], row[j]
                row[i] = a * x + b * y
                row[j] = c * x + d * y

    r = 0
    for i in range(m):
        if r == k:
            break
        for j in range(r + 1, k):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][r]
            g, s, t = _xgcd(a, b)
            colop(r, j, s, t, -b // g, a // g)
        p = H[i][r]
        if p == 0:
            continue
        if p < 0:
            colop(r, r, -1, 0, -1, 0)
            p = -p
        for c in range(r):
            q = H[i][c] // p
            if q:
                colop(c, r, 1, -q, 0, 1)
        r += 1
    return H, U, r


def _columns(rows, k):
    return [tuple(row[j] for row in rows) for j in range(k)]


def _rows(cols, dim):
    return [[c[i] for c in cols] for i in range(dim)]


def integer_kernel(rows, ncols):
    """Basis (list of column tuples) of ``{x in Z^ncols : A x = 0}``."""
    _, U, r = column_hnf(rows, ncols)
    return _columns(U, ncols)[r:]


def _leading(col):
    for i, a in enumerate(col):
        if a != 0:
            return i, a
    return None, 0


def lattice_solve(hnf_cols, x):
    """Integer coefficients expressing ``x`` over HNF columns, or None."""
    res = list(x)
    coeffs = []
    for col in hnf_cols:
        p, piv = _leading(col)
        if any(res[i] != 0 for i in range(p)):
            return None
        q, rem = divmod(res[p], piv)
        if rem:
            return None
        coeffs.append(q)
        if q:
            for i in range(p, len(res)):
                res[i] -= q * col[i]
    if any(res):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# Subgroups

def _rational_gcd(values):
    """Positive generator of the subgroup of Q generated by ``values`` (0 if trivial)."""
    fr = [Fraction(v) for v in values if v != 0]
    if not fr:
        return 0
    return _norm(reduce(lambda a, b: Fraction(gcd(a.numerator * b.denominator,
                                                  b.numerator * a.denominator),
                                              a.denominator * b.denominator), fr))


@dataclass(frozen=True)
class SubgroupSpec:
    """A subgroup given by generator elements.

    For IntLex the generators are lattice columns; for Rational a single
    generator ``(q,)`` describes qZ. The trivial subgroup has no generators.
    """
    owner: OGroupDesc
    gens: tuple = ()

    @classmethod
    def rational(cls, q):
        q = Fraction(q)
        if q < 0:
            q = -q
        return sub_canonical(cls(RATIONAL, ((q,),) if q else ()))

    @classmethod
    def lattice(cls, rank, columns):
        return sub_canonical(cls(IntLex(rank), tuple(tuple(c) for c in columns)))

    @classmethod
    def trivial(cls, owner):
        return cls(owner, ())

    @property
    def q(self):
        """Generator of a Rational subgroup (0 for the trivial subgroup)."""
        if self.owner.kind is not Kind.RATIONAL:
            raise DomainError("q is defined for Rational subgroups only")
        return sub_canonical(self).gens[0][0] if self.gens else 0

    def __str__(self):
        return format_subgroup(self)


def sub_canonical(H):
    return _canonical(H.owner, H.gens)


@lru_cache(maxsize=4096)
def _canonical(G, gens):
    for g in gens:
        og_check(G, g)
    H = SubgroupSpec(G, gens)
    if G.kind is Kind.TRIVIAL:
        return SubgroupSpec(G, ())
    if G.kind is Kind.RATIONAL:
        q = _rational_gcd(g[0] for g in H.gens)
        return SubgroupSpec(G, ((q,),) if q else ())
    cols = list(H.gens)
    Hm, _, r = column_hnf(_rows(cols, G.dim), len(cols))
    return SubgroupSpec(G, tuple(_columns(Hm, len(cols))[:r]))


def sub_contains(H, x):
    G = H.owner
    og_check(G, x)
    if G.kind is Kind.TRIVIAL:
        return True
    if G.kind is Kind.RATIONAL:
        q = _rational_gcd(g[0] for g in H.gens)
        if q == 0:
            return x[0] == 0
        return (Fraction(x[0]) / q).denominator == 1
    return lattice_solve(sub_canonical(H).gens, x) is not None


def sub_is_whole(H):
    """True when the subgroup is the whole group."""
    G = H.owner
    if G.kind is Kind.TRIVIAL:
        return True
    if G.kind is Kind.RATIONAL:
        return False
    gens = sub_canonical(H).gens
    return len(gens) == G.rank and all(_leading(c)[1] == 1 for c in gens)


# ---------------------------------------------------------------------------
# Homomorphisms

@dataclass(frozen=True)
class OGroupHomDesc:
    source: OGroupDesc
    target: OGroupDesc
    matrix: tuple = ()

    def __post_init__(self):
        m = tuple(tuple(_norm(Fraction(a)) if not _is_int(a) else a for a in row)
                  for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.dim:
            raise DomainError(
                f"matrix has {len(m)} rows, target {format_group(self.target)} needs {self.target.dim}")
        for row in m:
            if len(row) != self.source.dim:
                raise DomainError(
                    f"matrix row {list(row)} has {len(row)} entries, source needs {self.source.dim}")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, tuple((0,) * source.dim for _ in range(target.dim)))

    @classmethod
    def identity(cls, G):
        return cls(G, G, tuple(tuple(int(i == j) for j in range(G.dim)) for i in range(G.dim)))

    @classmethod
    def scalar(cls, G, c):
        return cls(G, G, tuple(tuple(c if i == j else 0 for j in range(G.dim)) for i in range(G.dim)))

    def columns(self):
        return _columns(self.matrix, self.source.dim)

    def __str__(self):
        return format_matrix(self.matrix)


def matvec(matrix, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in matrix)


def hom_apply(h, x):
    og_check(h.source, x)
    y = tuple(_norm(v) for v in matvec(h.matrix, x))
    if h.target.kind is Kind.INTLEX and not all(_is_int(a) for a in y):
        raise DomainError(f"{format_element(x)} has non-integral image {format_element(y)}")
    return y


def hom_compose(g, h):
    """``g after h``."""
    if h.target != g.source:
        raise DomainError(
            f"cannot compose: {format_group(h.target)} is not {format_group(g.source)}")
    n, m = g.target.dim, h.source.dim
    if g.source.dim == 0:
        mat = tuple((0,) * m for _ in range(n))
    else:
        mat = tuple(tuple(_norm(sum(g.matrix[i][k] * h.matrix[k][j]
                                    for k in range(g.source.dim)))
                          for j in range(m)) for i in range(n))
    return OGroupHomDesc(h.source, g.target, mat)


def _basis(dim, j, scale=1):
    return tuple(scale if i == j else 0 for i in range(dim))


def _sign(a):
    return (a > 0) - (a < 0)


def _monotone_witness(h):
    """A positive source element whose image is negative or ill-typed, or None."""
    S, T = h.source, h.target
    cols = h.columns()
    if S.dim == 0 or T.dim == 0:
        return None
    if S.kind is Kind.RATIONAL:
        c = cols[0]
        p, lead = _leading(c)
        if p is None:
            return None
        if T.kind is Kind.RATIONAL:
            return (1,) if lead < 0 else None
        if lead < 0:
            return (1,)
        # no nonzero hom Q -> Z^n: 1/N leaves the lattice once N exceeds every entry
        return (Fraction(1, 2 * max(abs(a) for a in c) + 1),)
    if T.kind is Kind.INTLEX:
        for col in cols:
            for a in col:
                if not _is_int(a):
                    return _basis(S.dim, cols.index(col))
    lead_rows = [_leading(c) for c in cols]
    if T.kind is Kind.RATIONAL:
        c1 = cols[0][0]
        if c1 < 0:
            return _basis(S.dim, 0)
        for j in range(1, S.dim):
            cj = cols[j][0]
            if cj != 0:
                N = abs(c1) // abs(cj) + 1 if c1 else 2
                x = list(_basis(S.dim, 0))
                x[j] = -_sign(cj) * N
                return tuple(x)
        return None
    prev_row = -1
    zero_seen = None
    for k, (p, lead) in enumerate(lead_rows):
        if p is None:
            if zero_seen is None:
                zero_seen = k
            continue
        if zero_seen is not None:
            x = list(_basis(S.dim, zero_seen))
            x[k] = -_sign(lead) * 2
            return tuple(x)
        if lead < 0:
            return _basis(S.dim, k)
        if p <= prev_row:
            # find the earlier column this one dominates
            for i in range(k):
                pi, li = lead_rows[i]
                if pi is not None and pi >= p:
                    x = list(_basis(S.dim, i))
                    N = 1 if pi > p else abs(cols[i][p]) // abs(lead) + 1
                    x[k] = -_sign(lead) * N
                    return tuple(x)
        prev_row = p
    return None


def hom_validate(h):
    """Check that ``h`` is an order-preserving group homomorphism."""
    rep = ValidationReport()
    w = _monotone_witness(h)
    if w is None:
        rep.add("monotone", True)
    else:
        y = tuple(_norm(v) for v in matvec(h.matrix, w))
        rep.add("monotone", False, f"{format_element(w)} -> {format_element(y)}")
    return rep


def hom_kernel_witness(h):
    """A positive source element mapped to the unit, or None when the kernel is trivial."""
    S = h.source
    if S.dim == 0:
        return None
    if h.target.dim == 0 or all(a == 0 for row in h.matrix for a in row):
        return _basis(S.dim, 0)
    if S.kind is Kind.RATIONAL:
        return None
    rows = []
    for row in h.matrix:
        D = 1
        for a in row:
            d = Fraction(a).denominator
            D = D * d // gcd(D, d)
        rows.append([int(Fraction(a) * D) for a in row])
    ker = integer_kernel(rows, S.dim)
    if not ker:
        return None
    return _make_positive(ker[0])


def _make_positive(x):
    return x if x > (0,) * len(x) else tuple(-a for a in x)


def preimage(h, H):
    """Canonical SubgroupSpec of ``h^{-1}(H)`` when it is a subgroup of the given form.

    Returns None when the preimage is not finitely generated (e.g. all of Q).
    """
    S = h.source
    if S.kind is Kind.TRIVIAL:
        return SubgroupSpec(S, ())
    if S.kind is Kind.RATIONAL:
        c = h.matrix[0][0] if h.target.dim else 0
        if h.target.kind is not Kind.RATIONAL or c == 0:
            return None
        return SubgroupSpec.rational(Fraction(H.q) / Fraction(c))
    # IntLex source
    if h.target.kind is Kind.TRIVIAL:
        return SubgroupSpec.lattice(S.rank, [_basis(S.rank, j) for j in range(S.rank)])
    if h.target.kind is Kind.RATIONAL:
        row = [Fraction(a) for a in h.matrix[0]]
        q = Fraction(H.q)
        # integer x with sum(row[j] x_j) in qZ; scale to integers: D*row . x in D*q Z
        D = 1
        for a in row + [q]:
            D = D * a.denominator // gcd(D, a.denominator)
        irow = [int(a * D) for a in row]
        iq = int(q * D)
        A = [irow + [-iq]] if iq else [irow]
        ker = integer_kernel(A, len(A[0]))
        gens = [k[:S.rank] for k in ker]
        return SubgroupSpec.lattice(S.rank, gens)
    Hc = sub_canonical(H).gens
    k = len(Hc)
    A = [list(h.matrix[i]) + [-c[i] for c in Hc] for i in range(h.target.dim)]
    ker = integer_kernel(A, S.rank + k)
    return SubgroupSpec.lattice(S.rank, [v[:S.rank] for v in ker])


# ---------------------------------------------------------------------------
# Text syntax

def format_number(a):
    a = _norm(a)
    if isinstance(a, Fraction):
        return f"{a.numerator}/{a.denominator}"
    return str(a)


def format_element(x):
    return "[" + ",".join(format_number(a) for a in x) + "]"


def format_group(G):
    if G.kind is Kind.INTLEX:
        return f"zlex:{G.rank}"
    return G.kind.value


def format_subgroup(H):
    H = sub_canonical(H)
    if H.owner.kind is Kind.RATIONAL:
        return "q:" + format_number(H.q)
    return "gens:[" + ",".join(format_element(g) for g in H.gens) + "]"


def format_matrix(rows):
    return "[" + ",".join(format_element(r) for r in rows) + "]"


_NUM = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_number(text):
    m = _NUM.match(text)
    if not m:
        raise ParseError(f"bad number {text.strip()!r}")
    if m.group(2) is None:
        return int(m.group(1))
    if int(m.group(2)) == 0:
        raise ParseError(f"zero denominator in {text.strip()!r}")
    return _norm(Fraction(int(m.group(1)), int(m.group(2))))


def parse_group(text):
    t = text.strip()
    if t == "trivial":
        return TRIVIAL
    if t == "rational":
        return RATIONAL
    m = re.fullmatch(r"zlex:(\d+)", t)
    if m and int(m.group(1)) >= 1:
        return IntLex(int(m.group(1)))
    raise ParseError(f"unknown group descriptor {t!r}")


def parse_element(text):
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"element must be bracketed: {t!r}")
    body = t[1:-1].strip()
    if not body:
        return ()
    return tuple(parse_number(p) for p in body.split(","))


def parse_matrix(text):
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"matrix must be bracketed: {t!r}")
    body = t[1:-1].strip()
    if not body:
        return ()
    rows = re.findall(r"\[[^\[\]]*\]", body)
    rest = re.sub(r"\[[^\[\]]*\]", "", body)
    if rest.replace(",", "").strip():
        raise ParseError(f"malformed matrix {t!r}")
    return tuple(parse_element(r) for r in rows)


def parse_subgroup(text, owner):
    t = text.strip()
    if t.startswith("q:"):
        if owner.kind is not Kind.RATIONAL:
            raise ParseError("q: subgroups are only valid in rational groups")
        q = Fraction(parse_number(t[2:]))
        if q < 0:
            raise ParseError("subgroup generator q must be nonnegative")
        return SubgroupSpec.rational(q)
    if t.startswith("gens:"):
        gens = parse_matrix(t[5:])
        for g in gens:
            if not og_is_valid(owner, g):
                raise ParseError(f"generator {format_element(g)} is not in {format_group(owner)}")
        return sub_canonical(SubgroupSpec(owner, gens))
    raise ParseError(f"unknown subgroup syntax {t!r}")
