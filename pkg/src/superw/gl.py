"""Exact arithmetic for the general linear Lie superalgebra gl(M|N).

Basis indices are boxes: plus boxes 1..M (even) followed by minus boxes
1..N (odd), totally ordered plus-before-minus.  Elements are sparse
rational combinations of elementary matrices e_{i,j}; the supercommutator
and the supertrace form are computed from the structure constants

    [e_ij, e_kl] = delta_jk e_il - (-1)^{(tp i + tp j)(tp k + tp l)} delta_li e_kj.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple

Scalar = int | Fraction

PLUS = 0
MINUS = 1


@dataclass(frozen=True)
class BoxIndex:
    """One basis index of gl(M|N): sign 0 for a plus box, 1 for a minus box."""

    sign: int
    ordinal: int

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise ValueError(f"sign must be 0 (plus) or 1 (minus), got {self.sign!r}")
        if self.ordinal < 1:
            raise ValueError(f"ordinal must be positive, got {self.ordinal!r}")

    # Total order 1 < ... < M < 1bar < ... < Nbar.
    def sort_key(self) -> tuple[int, int]:
        return (self.sign, self.ordinal)

    def __lt__(self, other: "BoxIndex") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "BoxIndex") -> bool:
        return self.sort_key() <= other.sort_key()

    def __str__(self) -> str:
        return str(self.ordinal) if self.sign == PLUS else f"-{self.ordinal}"

    def __repr__(self) -> str:
        return f"box({self})"


def plus(ordinal: int) -> BoxIndex:
    return BoxIndex(PLUS, ordinal)


def minus(ordinal: int) -> BoxIndex:
    return BoxIndex(MINUS, ordinal)


def parity(i: BoxIndex) -> int:
    """tp(i): 0 for plus boxes, 1 for minus boxes."""
    return i.sign


def pair_parity(i: BoxIndex, j: BoxIndex) -> int:
    """Parity of the elementary matrix e_{i,j}."""
    return (i.sign + j.sign) & 1


Pair = Tuple[BoxIndex, BoxIndex]


class LieSuperElement:
    """Sparse rational combination of elementary matrices e_{i,j}.

    Treated as immutable; zero coefficients are pruned eagerly so equality
    is structural and the empty map is the unique zero.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Pair, Scalar] | Iterable[tuple[Pair, Scalar]] = ()):
        data: dict[Pair, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for pair, c in items:
            if c:
                data[pair] = data.get(pair, 0) + c
                if not data[pair]:
                    del data[pair]
        self.terms = data

    def __iter__(self) -> Iterator[tuple[Pair, Scalar]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LieSuperElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieSuperElement") -> "LieSuperElement":
        data = dict(self.terms)
        for pair, c in other.terms.items():
            data[pair] = data.get(pair, 0) + c
            if not data[pair]:
                del data[pair]
        out = LieSuperElement.__new__(LieSuperElement)
        out.terms = data
        return out

    def __neg__(self) -> "LieSuperElement":
        out = LieSuperElement.__new__(LieSuperElement)
        out.terms = {pair: -c for pair, c in self.terms.items()}
        return out

    def __sub__(self, other: "LieSuperElement") -> "LieSuperElement":
        return self + (-other)

    def scaled(self, c: Scalar) -> "LieSuperElement":
        if not c:
            return LieSuperElement()
        out = LieSuperElement.__new__(LieSuperElement)
        out.terms = {pair: c * v for pair, v in self.terms.items()}
        return out

    def __rmul__(self, c: Scalar) -> "LieSuperElement":
        return self.scaled(c)

    def homogeneous_parity(self) -> int | None:
        """Common parity of all terms, or None if mixed (0 for the zero element)."""
        parities = {pair_parity(i, j) for (i, j) in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return None
        return parities.pop()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())):
            bits.append(f"{c}*e({i},{j})")
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


def e(i: BoxIndex, j: BoxIndex, c: Scalar = 1) -> LieSuperElement:
    """The elementary matrix c * e_{i,j}."""
    return LieSuperElement({(i, j): c})


def basis_indices(M: int, N: int) -> list[BoxIndex]:
    return [plus(k) for k in range(1, M + 1)] + [minus(k) for k in range(1, N + 1)]


def basis_pairs(M: int, N: int) -> list[Pair]:
    idx = basis_indices(M, N)
    return [(i, j) for i in idx for j in idx]


def bracket_pair(i: BoxIndex, j: BoxIndex, k: BoxIndex, l: BoxIndex) -> LieSuperElement:
    """Supercommutator [e_{i,j}, e_{k,l}] of two basis elements."""
    out: dict[Pair, Scalar] = {}
    if j == k:
        out[(i, l)] = out.get((i, l), 0) + 1
    if l == i:
        sgn = -1 if (pair_parity(i, j) and pair_parity(k, l)) else 1
        out[(k, j)] = out.get((k, j), 0) - sgn
    return LieSuperElement(out)


def bracket(x: LieSuperElement, y: LieSuperElement) -> LieSuperElement:
    """Bilinear supercommutator [x, y]."""
    acc: dict[Pair, Scalar] = {}
    for (i, j), cx in x.terms.items():
        for (k, l), cy in y.terms.items():
            c = cx * cy
            if j == k:
                acc[(i, l)] = acc.get((i, l), 0) + c
            if l == i:
                sgn = -1 if (pair_parity(i, j) and pair_parity(k, l)) else 1
                acc[(k, j)] = acc.get((k, j), 0) - sgn * c
    return LieSuperElement(acc)


def superform(x: LieSuperElement, y: LieSuperElement) -> Scalar:
    """Supertrace form (x, y) = str(xy).

    On basis elements (e_ab, e_cd) = delta_bc delta_ad (-1)^{tp a}.
    """
    total: Scalar = 0
    for (a, b), cx in x.terms.items():
        c = y.terms.get((b, a))
        if c:
            total += cx * c if a.sign == PLUS else -cx * c
    return total


def rational_rank(rows: list[list[Scalar]]) -> int:
    """Rank of a matrix over the rationals by fraction-free-ish Gaussian elimination."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    col = 0
    nrows = len(mat)
    while rank < nrows and col < ncols:
        pivot = None
        for r in range(rank, nrows):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, nrows):
            factor = mat[r][col] * inv
            if factor:
                row = mat[r]
                for cidx in range(col, ncols):
                    row[cidx] -= factor * prow[cidx]
        rank += 1
        col += 1
    return rank


def centralizer_dims(x: LieSuperElement, M: int, N: int) -> tuple[int, int]:
    """Codimensions (d0, d1) of the centralizer of an even element inside gl(M|N).

    d0 = dim g_even - dim ker(ad x)|_even = rank(ad x)|_even, and d1 likewise on
    the odd part.  Rejects elements with odd terms since ad x then mixes parities.
    """
    for (i, j) in x.terms:
        if pair_parity(i, j):
            raise ValueError(f"centralizer_dims needs an even element; found odd term e({i},{j})")
    idx = basis_indices(M, N)
    even_pairs = [(i, j) for i in idx for j in idx if not pair_parity(i, j)]
    odd_pairs = [(i, j) for i in idx for j in idx if pair_parity(i, j)]

    def ad_rank(pairs: list[Pair]) -> int:
        pos = {pair: k for k, pair in enumerate(pairs)}
        cols = []
        for pair in pairs:
            img = bracket(x, LieSuperElement({pair: 1}))
            colvec = [0] * len(pairs)
            for tgt, c in img.terms.items():
                colvec[pos[tgt]] = c
            cols.append(colvec)
        return rational_rank(cols)

    return ad_rank(even_pairs), ad_rank(odd_pairs)
