"""Eigenvalue data of one-dimensional modules and its inversion back to
tableaux.

A column-connected tableau A acts on its one-dimensional module with
D_i^{(r)} eigenvalue (-1)^{r|i|} e_r of the row-i entries shifted by
(-1)^{|i|} rhat(i).  In the b-coordinates b_{i,j} = (-1)^{|i|} a_{i,j} +
rhat(i) this collapses to e_r(b_i) = a_i^{(r)}, which is what the solver
inverts: a triangular solve for the elementary symmetric functions of the
new values of each row, then factorization of the resulting monic
polynomial into linear factors (exact rational roots, or numpy in
numeric mode).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .pyramid import Pyramid
from .scalars import format_scalar, is_exact, parse_scalar, scalar_sort_key, scalars_close
from .tableau import Tableau, is_column_connected

Scalar = int | Fraction


class NonSplitError(ValueError):
    """Raised in exact mode when a row polynomial has no rational root."""


def elementary_symmetric(r: int, values: Sequence) -> Scalar:
    """e_r of the given values; e_0 = 1."""
    values = list(values)
    if r < 0 or r > len(values):
        raise ValueError(f"e_{r} undefined for {len(values)} values")
    if r == 0:
        return 1
    # dp over (1 + v z) products: coefficient of z^r
    coeffs = [1] + [0] * r
    for v in values:
        for k in range(min(r, len(coeffs) - 1), 0, -1):
            coeffs[k] = coeffs[k] + coeffs[k - 1] * v
    return coeffs[r]


class EigenvalueData:
    """Eigenvalues a_i^{(r)} of the level generators on a one-dimensional
    module: full table (r up to p_i) plus the reduced prefix (r up to
    p_i - p_{i-1}) that already determines it."""

    __slots__ = ("signs", "levels", "full")

    def __init__(self, signs: str, levels: Sequence[int], full: Sequence[Sequence]):
        levels = tuple(int(p) for p in levels)
        if len(signs) != len(levels):
            raise ValueError("sign word and level list must have equal length")
        if list(levels) != sorted(levels) or (levels and levels[0] < 1):
            raise ValueError("levels must be weakly increasing positive integers")
        full = tuple(tuple(row) for row in full)
        if len(full) != len(levels):
            raise ValueError("one eigenvalue row per pyramid row required")
        for i, row in enumerate(full):
            if len(row) != levels[i]:
                raise ValueError(
                    f"row {i+1} must list levels 1..{levels[i]}, got {len(row)} values"
                )
        self.signs = signs
        self.levels = levels
        self.full = full

    @property
    def reduced(self) -> tuple[tuple, ...]:
        prev = 0
        out = []
        for p, row in zip(self.levels, self.full):
            out.append(tuple(row[: p - prev]))
            prev = p
        return tuple(out)

    @classmethod
    def from_reduced(cls, signs: str, levels: Sequence[int], reduced: Sequence[Sequence]) -> "EigenvalueData":
        """Rebuild the full table: beyond the reduced range each value is
        forced by the vanishing of the quotient-series coefficients."""
        levels = tuple(int(p) for p in levels)
        reduced = [list(row) for row in reduced]
        if len(reduced) != len(levels):
            raise ValueError("one reduced row per pyramid row required")
        prev = 0
        for i, row in enumerate(reduced):
            if len(row) != levels[i] - prev:
                raise ValueError(
                    f"reduced row {i+1} must have {levels[i] - prev} values, got {len(row)}"
                )
            prev = levels[i]
        full: list[list] = []
        for i, row in enumerate(reduced):
            if i == 0:
                full.append(list(row))
                continue
            prev_row = full[i - 1]
            dprime = _series_inverse(prev_row, levels[i])
            cur = list(row)
            for r in range(len(cur) + 1, levels[i] + 1):
                acc = 0
                for t in range(0, r):
                    a_t = cur[t - 1] if t >= 1 else 1
                    acc += dprime[r - t] * a_t
                cur.append(-acc)
            full.append(cur)
        return cls("".join(signs), levels, full)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EigenvalueData)
            and self.signs == other.signs
            and self.levels == other.levels
            and self.full == other.full
        )

    def __repr__(self):
        return f"EigenvalueData(signs={self.signs!r}, levels={self.levels}, full={self.full})"

    def to_json(self) -> dict:
        return {
            "signs": self.signs,
            "levels": list(self.levels),
            "a": [[format_scalar(v) for v in row] for row in self.full],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "EigenvalueData":
        return cls(
            doc["signs"],
            doc["levels"],
            [[parse_scalar(v) for v in row] for row in doc["a"]],
        )


def _series_inverse(coeffs: Sequence, order: int) -> list:
    """Inverse of the series 1 + c_1 u^{-1} + ... as a list of length
    order+1 (index = exponent); input indexed from c_1."""
    c = list(coeffs) + [0] * max(0, order - len(coeffs))
    inv = [1] + [0] * order
    for r in range(1, order + 1):
        acc = 0
        for t in range(1, r + 1):
            if t <= len(c):
                acc += c[t - 1] * inv[r - t]
        inv[r] = -acc
    return inv


def eigenvalues_of(A: Tableau) -> EigenvalueData:
    """The full eigenvalue table of a tableau, by the shifted elementary
    symmetric formula."""
    py = A.pyramid
    full = []
    for i, row in enumerate(A.rows(), start=1):
        sgn = py.row_sign(i)
        shift = py.row_hat[i - 1] if sgn == 0 else -py.row_hat[i - 1]
        shifted = [v + shift for v in row]
        vals = []
        for r in range(1, len(row) + 1):
            er = elementary_symmetric(r, shifted)
            vals.append(-er if (sgn and r % 2) else er)
        full.append(vals)
    return EigenvalueData(py.signs, py.p, full)


# -- polynomial root extraction -----------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs: list, root) -> list:
    """Synthetic division by (z - root); exact for Fraction arithmetic."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    return out


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All roots with multiplicity of a monic rational polynomial, raising
    NonSplitError if it does not split over the rationals."""
    coeffs = [Fraction(c) for c in coeffs]
    deg = len(coeffs) - 1
    roots: list[Fraction] = []
    while deg > 0:
        if coeffs[-1] == 0:
            roots.append(Fraction(0))
            coeffs = coeffs[:-1]
            deg -= 1
            continue
        den = 1
        for c in coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        lead, const = ints[0], ints[-1]
        found = None
        for p in _divisors(const):
            for q in _divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(coeffs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise NonSplitError(
                "polynomial does not split over the rationals: "
                + " ".join(format_scalar(c) for c in coeffs)
            )
        while _poly_eval(coeffs, found) == 0 and deg > 0:
            roots.append(found)
            coeffs = _deflate(coeffs, found)
            deg -= 1
    return roots


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def _numeric_roots(coeffs: Sequence, tol: float) -> list[complex]:
    import numpy as np

    arr = [complex(c) for c in coeffs]
    if len(arr) == 1:
        return []
    roots = np.roots(arr)
    out = []
    for z in roots:
        z = complex(z)
        if abs(_poly_eval(arr, z)) > tol * max(1.0, max(abs(c) for c in arr)):
            raise ValueError(f"numeric root {z} exceeds the residual tolerance")
        out.append(z)
    return out


def _roots_of_monic(coeffs: list, mode: str, tol: float) -> list:
    if mode == "exact":
        return _rational_roots(coeffs)
    if mode == "numeric":
        return _numeric_roots(coeffs, tol)
    raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'numeric'")


# -- the inverse problem ------------------------------------------------


def _as_reduced_rows(signs: str, levels: Sequence[int], a) -> list[list]:
    if isinstance(a, EigenvalueData):
        if a.signs != "".join(signs) or tuple(a.levels) != tuple(levels):
            raise ValueError("eigenvalue data does not match the given shape")
        return [list(row) for row in a.reduced]
    return [list(row) for row in a]


def _solve_new_values(reduced_row: Sequence, inherited: Sequence, mode: str, tol: float) -> list:
    """Values n_1..n_k with e_r(n ∪ inherited) = a^{(r)} for r = 1..k."""
    k = len(reduced_row)
    e_new = [1]
    for r in range(1, k + 1):
        acc = reduced_row[r - 1]
        for s in range(0, r):
            hi = r - s
            if hi > len(inherited):
                continue
            acc -= e_new[s] * elementary_symmetric(hi, inherited)
        e_new.append(acc)
    # monic polynomial with the new values as roots
    coeffs = [1]
    for r in range(1, k + 1):
        coeffs.append(e_new[r] if r % 2 == 0 else -e_new[r])
    roots = _roots_of_monic(coeffs, mode, tol)
    return sorted(roots, key=scalar_sort_key)


def solve_b(signs: str, levels: Sequence[int], a, mode: str = "exact", tol: float = 1e-10) -> list[list]:
    """Recover b_{i,j} from reduced eigenvalue data, inherited values
    aligned at the row tails: b_{i, (p_i - p_{i-1}) + r} = b_{i-1, r}."""
    signs = "".join(signs)
    levels = tuple(int(p) for p in levels)
    reduced = _as_reduced_rows(signs, levels, a)
    rows: list[list] = []
    prev: list = []
    for i, red in enumerate(reduced):
        new = _solve_new_values(red, prev, mode, tol)
        cur = new + prev
        if len(cur) != levels[i]:
            raise AssertionError("row length bookkeeping failed")
        rows.append(cur)
        prev = cur
    return rows


def solve_b_shifted(py: Pyramid, a, mode: str = "exact", tol: float = 1e-10) -> list[list]:
    """As solve_b, but inherited values occupy positions s_{i,i-1}+1 ..
    s_{i,i-1}+p_{i-1}, mirroring the column alignment of the pyramid."""
    reduced = _as_reduced_rows(py.signs, py.p, a)
    rows: list[list] = []
    prev: list = []
    for i, red in enumerate(reduced, start=1):
        new = _solve_new_values(red, prev, mode, tol)
        if i == 1:
            cur = list(new)
        else:
            off = py.shift.s(i, i - 1)
            cur = [None] * py.p[i - 1]
            for r, v in enumerate(prev):
                cur[off + r] = v
            free = [k for k, v in enumerate(cur) if v is None]
            for k, v in zip(free, new):
                cur[k] = v
        rows.append(cur)
        prev = cur
    return rows


def tableau_from_eigenvalues(py: Pyramid, a, mode: str = "exact", tol: float = 1e-10) -> Tableau:
    """The column-connected tableau realizing the given reduced data:
    entries a_{i,j} = (-1)^{|i|}(b_{i,j} - rhat(i)) with b from the
    shifted solver."""
    b = solve_b_shifted(py, a, mode, tol)
    rows = []
    for i in range(1, py.nrows + 1):
        sgn = -1 if py.row_sign(i) else 1
        rhat = py.row_hat[i - 1]
        rows.append([sgn * (v - rhat) for v in b[i - 1]])
    A = Tableau.from_rows(py, rows)
    if all(is_exact(v) for row in rows for v in row) and not is_column_connected(A):
        raise AssertionError("constructed tableau is not column-connected")
    return A


def quotient_relation_check(a: EigenvalueData, extra: int = 2, tol: float = 0.0) -> bool:
    """The series quotient a_{j+1}(u)/a_j(u) must be polynomial of degree
    at most p_{j+1} - p_j: its coefficients beyond that vanish."""
    for j in range(len(a.levels) - 1):
        pj, pj1 = a.levels[j], a.levels[j + 1]
        bound = pj1 + extra
        dprime = _series_inverse(list(a.full[j]), bound)
        nxt = list(a.full[j + 1])
        for r in range(pj1 - pj + 1, bound + 1):
            acc = 0
            for t in range(0, r + 1):
                if t == 0:
                    a_t = 1
                elif t <= len(nxt):
                    a_t = nxt[t - 1]
                else:
                    continue
                acc += dprime[r - t] * a_t
            if tol:
                if not scalars_close(acc, 0, tol):
                    return False
            elif acc != 0:
                return False
    return True


def weight_space_search(py: Pyramid, row_contents: Sequence[Sequence]):
    """Search for a one-dimensional highest weight with the given row content.

    Works entirely on the weight side: lambda - rho_tilde restricted to a
    column must take a single value t on plus boxes and -t on minus boxes,
    so each column contributes one free scalar.  Returns the lambda of a
    matching arrangement as a Weight, or None.  This is deliberately
    independent of the entry-chain search in tableau.find_cc_representative;
    the two must agree on solvability.
    """
    from collections import Counter

    from .weights import Weight, rho_tilde

    rt = rho_tilde(py)
    counts = [Counter(row) for row in row_contents]
    if len(counts) != py.nrows:
        raise ValueError(f"expected {py.nrows} content rows, got {len(counts)}")
    for i, cnt in enumerate(counts, start=1):
        if sum(cnt.values()) != py.p[i - 1]:
            raise ValueError(f"row {i} content must have {py.p[i - 1]} values")

    columns = sorted(range(1, py.ell + 1), key=lambda c: (-len(py.column_rows(c)), c))
    col_boxes = {c: [py.box_at(r, c) for r in py.column_rows(c)] for c in columns}
    dead: set = set()

    def state_key(pos: int):
        return (pos, tuple(tuple(sorted(c.items(), key=lambda kv: scalar_sort_key(kv[0]))) for c in counts))

    assignment: dict = {}

    def entry_from_t(b, t):
        sgn = -1 if b.sign else 1
        return sgn * t + rt[b]

    def dfs(pos: int) -> bool:
        if pos == len(columns):
            return True
        key = state_key(pos)
        if key in dead:
            return False
        c = columns[pos]
        boxes = col_boxes[c]
        b0 = boxes[0]
        sgn0 = -1 if b0.sign else 1
        seen = set()
        for v, n in counts[py.row(b0) - 1].items():
            if n <= 0:
                continue
            t = sgn0 * (v - rt[b0])
            if t in seen:
                continue
            seen.add(t)
            consumed = []
            ok = True
            for b in boxes:
                a_b = entry_from_t(b, t)
                row_cnt = counts[py.row(b) - 1]
                if row_cnt.get(a_b, 0) <= 0:
                    ok = False
                    break
                row_cnt[a_b] -= 1
                consumed.append((py.row(b) - 1, a_b))
            if ok:
                for b in boxes:
                    assignment[b] = entry_from_t(b, t)
                if dfs(pos + 1):
                    return True
                for b in boxes:
                    del assignment[b]
            for ri, a_b in consumed:
                counts[ri][a_b] += 1
        dead.add(key)
        return False

    if not dfs(0):
        return None
    return Weight(dict(assignment))


def symbolic_module_check(A: Tableau, extra_levels: int = 0) -> bool:
    """Fully symbolic check that A's one-dimensional module has the
    predicted generator action: each D_i^{(r)} evaluates (through the
    weight lambda_A - rho_tilde) to the formula eigenvalue, and the E/F
    generators at their lowest admissible levels evaluate to zero."""
    from .pbw import evaluate_one_dim
    from .weights import lambda_A, rho_tilde
    from .yangian import D, E, F

    py = A.pyramid
    if not is_column_connected(A):
        raise ValueError("symbolic check requires a column-connected tableau")
    data = eigenvalues_of(A)
    lam = lambda_A(A) - rho_tilde(py)
    for i in range(1, py.nrows + 1):
        for r in range(1, py.p[i - 1] + 1):
            got = evaluate_one_dim(py, D(py, i, r), lam)
            if got != data.full[i - 1][r - 1]:
                return False
    for i in range(1, py.nrows):
        for extra in range(0, extra_levels + 1):
            s_e = py.shift.s(i, i + 1) + 1 + extra
            if evaluate_one_dim(py, E(py, i, s_e), lam) != 0:
                return False
            s_f = py.shift.s(i + 1, i) + 1 + extra
            if evaluate_one_dim(py, F(py, i, s_f), lam) != 0:
                return False
    return True
