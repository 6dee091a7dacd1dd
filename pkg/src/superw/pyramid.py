"""Pyramids of boxes and the good pairs they induce.

A pyramid is determined by a shift matrix sigma, a width ell, and a sign
word over {0,1} (0 = plus row, 1 = minus row).  Rows are numbered top to
bottom, columns 1..ell left to right; row i occupies the consecutive
columns s[last][i]+1 .. ell - s[i][last], and these intervals nest
downward.  Plus boxes are numbered down columns from left to right, minus
boxes independently the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .gl import (
    BoxIndex,
    LieSuperElement,
    Pair,
    bracket,
    e,
    minus,
    pair_parity,
    plus,
    rational_rank,
    superform,
)


@dataclass(frozen=True)
class ShiftMatrix:
    """Square matrix of nonnegative integers with zero diagonal and
    additive monotone chains: s[i][k] = s[i][j] + s[j][k] whenever
    i <= j <= k or i >= j >= k (indices 1-based in the math, 0-based here)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("shift matrix must be square")
            for v in row:
                if not isinstance(v, int) or v < 0:
                    raise ValueError(f"shift entries must be nonnegative integers, got {v!r}")
        for i in range(n):
            if self.entries[i][i] != 0:
                raise ValueError("shift matrix must have zero diagonal")
        s = self.entries
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    if s[i][k] != s[i][j] + s[j][k]:
                        raise ValueError(
                            f"shift matrix not additive on chain {i+1}<={j+1}<={k+1}"
                        )
                    if s[k][i] != s[k][j] + s[j][i]:
                        raise ValueError(
                            f"shift matrix not additive on chain {k+1}>={j+1}>={i+1}"
                        )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ShiftMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def s(self, i: int, j: int) -> int:
        """Entry s_{i,j}, 1-based."""
        return self.entries[i - 1][j - 1]

    def __str__(self) -> str:
        return "[" + ", ".join(str(list(row)) for row in self.entries) + "]"


class SuperStats(NamedTuple):
    q_check: tuple[int, ...]          # per column, 1-based via index+1
    row_check: dict                   # BoxIndex -> signed row count through its row
    row_hat: tuple[int, ...]          # per row


class Pyramid:
    """Immutable pyramid with all derived combinatorial data precomputed."""

    def __init__(self, shift: ShiftMatrix, ell: int, signs: str):
        if isinstance(signs, (list, tuple)):
            signs = "".join(str(int(v)) for v in signs)
        if not isinstance(signs, str) or any(ch not in "01" for ch in signs):
            raise ValueError("signs must be a word over {0,1}")
        nrows = shift.size
        if len(signs) != nrows:
            raise ValueError(f"sign word length {len(signs)} != shift matrix size {nrows}")
        if ell < 1:
            raise ValueError("ell must be positive")

        first = tuple(shift.s(nrows, i) + 1 for i in range(1, nrows + 1))
        last = tuple(ell - shift.s(i, nrows) for i in range(1, nrows + 1))
        p = tuple(last[i] - first[i] + 1 for i in range(nrows))
        for i in range(nrows):
            if p[i] < 1:
                raise ValueError(f"ell={ell} too small: row {i+1} would have length {p[i]}")
        for i in range(nrows - 1):
            if p[i] > p[i + 1]:
                raise ValueError("row lengths must weakly increase downward")
            if not (first[i] >= first[i + 1] and last[i] <= last[i + 1]):
                raise ValueError("row intervals must nest downward")

        self.shift = shift
        self.ell = ell
        self.signs = signs
        self.nrows = nrows
        self.p = p
        self.row_first_col = first
        self.row_last_col = last
        self.m = signs.count("0")
        self.n = signs.count("1")
        self.h_shift = self.m - self.n

        # Box numbering: down columns, left to right, each parity independently.
        pos_of: dict[BoxIndex, tuple[int, int]] = {}
        at: dict[tuple[int, int], BoxIndex] = {}
        np_, nm = 0, 0
        for c in range(1, ell + 1):
            for r in range(1, nrows + 1):
                if first[r - 1] <= c <= last[r - 1]:
                    if signs[r - 1] == "0":
                        np_ += 1
                        b = plus(np_)
                    else:
                        nm += 1
                        b = minus(nm)
                    pos_of[b] = (r, c)
                    at[(r, c)] = b
        self.M = np_
        self.N = nm
        self._pos = pos_of
        self._at = at
        self.boxes = tuple(
            sorted(pos_of, key=BoxIndex.sort_key)
        )  # 1 .. M, then 1bar .. Nbar

        q = [0] * ell
        for b, (_, c) in pos_of.items():
            q[c - 1] += 1 if b.sign == 0 else -1
        self.q_check = tuple(q)

        rh = []
        acc = 0
        for ch in signs:
            acc += 1 if ch == "0" else -1
            rh.append(acc)
        self.row_hat = tuple(rh)

        self._e_pi: LieSuperElement | None = None
        self._h_pi: LieSuperElement | None = None

    # -- accessors -------------------------------------------------------

    def row(self, b: BoxIndex) -> int:
        return self._pos[b][0]

    def col(self, b: BoxIndex) -> int:
        return self._pos[b][1]

    def box_at(self, row: int, col: int) -> BoxIndex:
        try:
            return self._at[(row, col)]
        except KeyError:
            raise KeyError(f"no box at row {row}, column {col}") from None

    def has_box(self, row: int, col: int) -> bool:
        return (row, col) in self._at

    def col_x_of_col(self, c: int) -> int:
        return 2 * c - self.ell - 1

    def col_x(self, b: BoxIndex) -> int:
        return self.col_x_of_col(self.col(b))

    def row_check(self, b: BoxIndex) -> int:
        return self.row_hat[self.row(b) - 1]

    def degree(self, pair: Pair) -> int:
        """Grading degree of e_{i,j}: col_x(j) - col_x(i)."""
        i, j = pair
        return self.col_x(j) - self.col_x(i)

    def row_sign(self, r: int) -> int:
        """0 for a plus row, 1 for a minus row; written |r| in the math."""
        return int(self.signs[r - 1])

    def column_rows(self, c: int) -> range:
        """Rows occupied by column c, top to bottom."""
        top = min(
            (r for r in range(1, self.nrows + 1) if self.row_first_col[r - 1] <= c <= self.row_last_col[r - 1]),
            default=None,
        )
        if top is None:
            raise KeyError(f"column {c} out of range")
        return range(top, self.nrows + 1)

    # -- equality / serialization ---------------------------------------

    def _key(self):
        return (self.shift.entries, self.ell, self.signs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Pyramid) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Pyramid(shift={self.shift}, ell={self.ell}, signs={self.signs!r})"

    def to_json(self) -> dict:
        return {
            "shift": [list(row) for row in self.shift.entries],
            "ell": self.ell,
            "signs": self.signs,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Pyramid":
        return cls(ShiftMatrix.from_rows(doc["shift"]), int(doc["ell"]), doc["signs"])


def from_shift(shift, ell: int, signs) -> Pyramid:
    """Construct a pyramid; `shift` may be a ShiftMatrix or raw rows."""
    if not isinstance(shift, ShiftMatrix):
        shift = ShiftMatrix.from_rows(shift)
    return Pyramid(shift, ell, signs)


def super_stats(py: Pyramid) -> SuperStats:
    row_check = {b: py.row_check(b) for b in py.boxes}
    return SuperStats(py.q_check, row_check, py.row_hat)


def adjacent_pairs(py: Pyramid) -> list[Pair]:
    """Horizontally adjacent same-row box pairs (left, right)."""
    out = []
    for r in range(1, py.nrows + 1):
        for c in range(py.row_first_col[r - 1], py.row_last_col[r - 1]):
            out.append((py.box_at(r, c), py.box_at(r, c + 1)))
    return out


def vertical_adjacent_pairs(py: Pyramid) -> list[Pair]:
    """Vertically adjacent box pairs (upper, lower), column by column."""
    out = []
    for c in range(1, py.ell + 1):
        rows = list(py.column_rows(c))
        for upper, lower in zip(rows, rows[1:]):
            out.append((py.box_at(upper, c), py.box_at(lower, c)))
    return out


def e_pi(py: Pyramid) -> LieSuperElement:
    if py._e_pi is None:
        py._e_pi = LieSuperElement({pair: 1 for pair in adjacent_pairs(py)})
    return py._e_pi


def h_pi(py: Pyramid) -> LieSuperElement:
    if py._h_pi is None:
        py._h_pi = LieSuperElement({(b, b): -py.col_x(b) for b in py.boxes})
    return py._h_pi


def all_pairs(py: Pyramid) -> list[Pair]:
    return [(i, j) for i in py.boxes for j in py.boxes]


def graded_basis(py: Pyramid, part: str) -> list[Pair]:
    """Ordered basis pairs of one of the subalgebras cut out by the grading.

    The orders are canonical and shared with the PBW engine: within m and
    p_prime by (degree, lex); within h diagonal pairs first, then lex.
    """
    pairs = all_pairs(py)
    lex = lambda pr: (pr[0].sort_key(), pr[1].sort_key())
    if part == "m":
        sel = [pr for pr in pairs if py.degree(pr) < 0]
        sel.sort(key=lambda pr: (py.degree(pr), lex(pr)))
        return sel
    if part == "h":
        diag = sorted((pr for pr in pairs if pr[0] == pr[1]), key=lex)
        off = sorted(
            (pr for pr in pairs if pr[0] != pr[1] and py.degree(pr) == 0), key=lex
        )
        return diag + off
    if part == "p_prime":
        sel = [pr for pr in pairs if py.degree(pr) > 0]
        sel.sort(key=lambda pr: (py.degree(pr), lex(pr)))
        return sel
    if part == "p":
        return graded_basis(py, "h") + graded_basis(py, "p_prime")
    raise ValueError(f"unknown part {part!r}; expected one of m, h, p, p_prime")


def chi(py: Pyramid, x: LieSuperElement):
    """The character chi(x) = (e_pi, x) under the supertrace form."""
    return superform(e_pi(py), x)


def good_pair_check(py: Pyramid) -> bool:
    """Verify the good-pair axioms for (e_pi, h_pi) by exact linear algebra.

    ad h_pi must be diagonal with even integer eigenvalues matching the
    column grading, the identity must sit in degree 0, and ad e_pi must be
    injective on degrees <= -1 and surjective onto degrees >= 1.
    """
    ep = e_pi(py)
    hp = h_pi(py)
    if bracket(hp, ep) != 2 * ep:
        return False

    pairs = all_pairs(py)
    by_deg: dict[int, list[Pair]] = {}
    for pr in pairs:
        d = py.degree(pr)
        if d % 2 != 0:
            return False
        by_deg.setdefault(d, []).append(pr)
        if bracket(hp, e(*pr)) != d * e(*pr):
            return False

    identity = LieSuperElement({(b, b): 1 for b in py.boxes})
    if not bracket(hp, identity).is_zero():
        return False

    degrees = sorted(by_deg)
    for d in degrees:
        block = by_deg[d]
        target = by_deg.get(d + 2, [])
        tpos = {pr: k for k, pr in enumerate(target)}
        rows = []
        for pr in block:
            img = bracket(ep, e(*pr))
            vec = [0] * len(target)
            for tgt, c in img.terms.items():
                if tgt not in tpos:
                    return False  # ad e_pi must raise degree by exactly 2
                vec[tpos[tgt]] = c
            rows.append(vec)
        rank = rational_rank(rows)
        if d <= -1 and rank != len(block):
            return False
        if d >= -1 and rank != len(target):
            return False
    return True


def odd_generator_rows(py: Pyramid) -> set[int]:
    """Rows i whose sign differs from row i+1; these index the odd generators."""
    return {
        i
        for i in range(1, py.nrows)
        if py.signs[i - 1] != py.signs[i]
    }


# -- enumeration -------------------------------------------------------


def _weakly_increasing_rows(total_max: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: list[int], remaining: int, minlen: int):
        if prefix:
            yield tuple(prefix)
        for v in range(minlen, remaining + 1):
            prefix.append(v)
            yield from rec(prefix, remaining - v, v)
            prefix.pop()

    yield from rec([], total_max, 1)


def enumerate_shapes(max_boxes: int) -> Iterator[tuple[ShiftMatrix, int]]:
    """All pyramid shapes (shift matrix, ell) with at most max_boxes boxes.

    Shapes are enumerated by weakly increasing row lengths plus a choice of
    nested left offsets; the bottom row always spans the full width.
    """
    for p in _weakly_increasing_rows(max_boxes):
        k = len(p)
        ell = p[-1]

        def offsets(i: int, lo_next: int, right_next: int) -> Iterator[list[int]]:
            # choose left offsets bottom-up; row i must nest inside row i+1
            if i < 0:
                yield []
                return
            for li in range(lo_next, right_next - p[i] + 1):
                for rest in offsets(i - 1, li, li + p[i]):
                    yield rest + [li]

        for lefts_top in offsets(k - 2, 0, ell):
            lefts = lefts_top + [0]  # rows 1..k, bottom row offset 0
            s = [[0] * k for _ in range(k)]
            rights = [ell - lefts[i] - p[i] for i in range(k)]
            for i in range(k):
                for j in range(k):
                    if i < j:
                        s[i][j] = rights[i] - rights[j]
                    elif i > j:
                        s[i][j] = lefts[j] - lefts[i]
            yield ShiftMatrix.from_rows(s), ell


def enumerate_pyramids(max_boxes: int) -> Iterator[Pyramid]:
    """All pyramids (shape plus sign word) with at most max_boxes boxes."""
    for shift, ell in enumerate_shapes(max_boxes):
        k = shift.size
        for bits in range(1 << k):
            signs = format(bits, f"0{k}b")
            yield Pyramid(shift, ell, signs)
