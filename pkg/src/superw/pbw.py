"""U(gl(M|N)) as a PBW term-rewriting engine, adapted to a pyramid.

The canonical basis order puts diagonal h first, then off-diagonal h,
then p' (positive degree), and the m-pairs (negative degree) last.  With
the m-pairs trailing, the projection onto U(p) along the left ideal
generated by {a - chi(a) : a in m} acts monomial by monomial: u·a is
congruent to chi(a)·u, so the trailing m-factors of a normal monomial
are replaced by their chi values.  (Putting m first would instead realize
the projection along the right ideal, under which the explicit generators
fail to be invariant.)

Monomials are stored as weakly increasing tuples of basis-pair indices;
odd indices never repeat (odd squares vanish).  Straightening is the
rewrite x·y -> +/- y·x + [x,y] applied recursively with memoization, and
all bracket structure constants are integers, so coefficients stay in
int until user scalars introduce Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .gl import (
    BoxIndex,
    LieSuperElement,
    Pair,
    bracket_pair,
    pair_parity,
)
from .pyramid import Pyramid, chi as pyramid_chi, graded_basis
from .gl import e as lie_e

Scalar = int | Fraction


@dataclass(frozen=True)
class PBWMonomial:
    """Public view of a normal monomial: ((basis pair, exponent), ...) in
    strictly increasing canonical order, odd pairs with exponent 1."""

    factors: tuple[tuple[Pair, int], ...]

    def __post_init__(self):
        for (_, exp) in self.factors:
            if exp < 1:
                raise ValueError("exponents must be positive")

    def total_degree(self) -> int:
        return sum(exp for _, exp in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        bits = []
        for (i, j), exp in self.factors:
            base = f"e({i},{j})"
            bits.append(base if exp == 1 else f"{base}^{exp}")
        return "*".join(bits)


class EnvelopingAlgebra:
    """Multiplication engine for U(gl(M|N)) in the PBW order of a pyramid."""

    def __init__(self, py: Pyramid):
        self.pyramid = py
        p_basis = graded_basis(py, "p")
        m_basis = graded_basis(py, "m")
        self.pairs: tuple[Pair, ...] = tuple(p_basis + m_basis)
        self.index: dict[Pair, int] = {pr: k for k, pr in enumerate(self.pairs)}
        self.parities: tuple[int, ...] = tuple(pair_parity(i, j) for (i, j) in self.pairs)
        self.p_count = len(p_basis)
        self.m_count = len(m_basis)
        self.ndiag = len(py.boxes)
        self.diag_boxes: tuple[BoxIndex, ...] = tuple(pr[0] for pr in p_basis[: self.ndiag])
        for k in range(self.ndiag):
            pr = p_basis[k]
            if pr[0] != pr[1]:
                raise AssertionError("h-basis must start with the diagonal pairs")
        self.chi_values: tuple[int, ...] = tuple(
            int(pyramid_chi(py, lie_e(i, j))) for (i, j) in m_basis
        )
        # Odd squares rewrite to (1/2)[x,x]; for gl(M|N) that bracket is 0.
        for k, pr in enumerate(self.pairs):
            if self.parities[k] and not bracket_pair(*pr, *pr).is_zero():
                raise AssertionError(f"odd self-bracket nonzero for {pr}")
        self._brackets: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        self._gen_memo: dict = {}
        self._mono_memo: dict = {}

    # -- structure constants -------------------------------------------

    def _bracket_idx(self, x: int, y: int) -> tuple[tuple[int, int], ...]:
        key = (x, y)
        hit = self._brackets.get(key)
        if hit is None:
            lie = bracket_pair(*self.pairs[x], *self.pairs[y])
            hit = tuple((self.index[pr], int(c)) for pr, c in lie.terms.items())
            self._brackets[key] = hit
        return hit

    # -- straightening --------------------------------------------------

    def _gen_times_mono(self, x: int, mono: tuple) -> dict:
        """Normal form of generator x times normal monomial mono.

        Returned dicts live in the memo table; callers must not mutate.
        """
        key = (x, mono)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        if not mono:
            res = {(x,): 1}
        else:
            y = mono[0]
            if x < y:
                res = {(x,) + mono: 1}
            elif x == y:
                res = {} if self.parities[x] else {(x,) + mono: 1}
            else:
                rest = mono[1:]
                sgn = -1 if (self.parities[x] and self.parities[y]) else 1
                acc: dict = {}
                for sub, c in self._gen_times_mono(x, rest).items():
                    if sgn < 0:
                        c = -c
                    for out, c2 in self._gen_times_mono(y, sub).items():
                        v = acc.get(out, 0) + c * c2
                        if v:
                            acc[out] = v
                        elif out in acc:
                            del acc[out]
                for z, cz in self._bracket_idx(x, y):
                    for out, c2 in self._gen_times_mono(z, rest).items():
                        v = acc.get(out, 0) + cz * c2
                        if v:
                            acc[out] = v
                        elif out in acc:
                            del acc[out]
                res = acc
        self._gen_memo[key] = res
        return res

    def _mono_times_mono(self, left: tuple, right: tuple) -> dict:
        if not left:
            return {right: 1}
        if not right:
            return {left: 1}
        key = (left, right)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        head, x = left[:-1], left[-1]
        acc: dict = {}
        for mid, c in self._gen_times_mono(x, right).items():
            for out, c2 in self._mono_times_mono(head, mid).items():
                v = acc.get(out, 0) + c * c2
                if v:
                    acc[out] = v
                elif out in acc:
                    del acc[out]
        self._mono_memo[key] = acc
        return acc

    def mono_parity(self, mono: tuple) -> int:
        par = 0
        for idx in mono:
            par ^= self.parities[idx]
        return par


_algebras: dict[Pyramid, EnvelopingAlgebra] = {}


def algebra_for(py: Pyramid) -> EnvelopingAlgebra:
    alg = _algebras.get(py)
    if alg is None:
        alg = EnvelopingAlgebra(py)
        _algebras[py] = alg
    return alg


class UEAElement:
    """Sparse rational combination of normal monomials in one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: EnvelopingAlgebra, terms: Mapping[tuple, Scalar] | None = None):
        self.algebra = algebra
        data: dict[tuple, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    data[mono] = data.get(mono, 0) + c
                    if not data[mono]:
                        del data[mono]
        self.terms = data

    # -- constructors ---------------------------------------------------

    @classmethod
    def _raw(cls, algebra: EnvelopingAlgebra, terms: dict) -> "UEAElement":
        out = cls.__new__(cls)
        out.algebra = algebra
        out.terms = terms
        return out

    # -- ring structure -------------------------------------------------

    def _check_same(self, other: "UEAElement"):
        if self.algebra is not other.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar_element(self.algebra, other)
        self._check_same(other)
        data = dict(self.terms)
        for mono, c in other.terms.items():
            v = data.get(mono, 0) + c
            if v:
                data[mono] = v
            elif mono in data:
                del data[mono]
        return UEAElement._raw(self.algebra, data)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar_element(self.algebra, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UEAElement._raw(self.algebra, {})
            return UEAElement._raw(self.algebra, {m: c * other for m, c in self.terms.items()})
        self._check_same(other)
        alg = self.algebra
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                c = ca * cb
                for mono, cc in alg._mono_times_mono(a, b).items():
                    v = acc.get(mono, 0) + c * cc
                    if v:
                        acc[mono] = v
                    elif mono in acc:
                        del acc[mono]
        return UEAElement._raw(alg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = identity(self.algebra)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar_element(self.algebra, other)
        return (
            isinstance(other, UEAElement)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((), 0)

    def parity(self) -> int | None:
        """Common parity of all monomials, None if mixed, 0 if zero."""
        seen = {self.algebra.mono_parity(m) for m in self.terms}
        if not seen:
            return 0
        if len(seen) > 1:
            return None
        return seen.pop()

    def in_U_p(self) -> bool:
        pc = self.algebra.p_count
        return all(idx < pc for mono in self.terms for idx in mono)

    # -- public monomial view ------------------------------------------

    def factored_terms(self) -> Iterator[tuple[PBWMonomial, Scalar]]:
        for mono in sorted(self.terms):
            factors = []
            for idx in mono:
                pr = self.algebra.pairs[idx]
                if factors and factors[-1][0] == pr:
                    factors[-1] = (pr, factors[-1][1] + 1)
                else:
                    factors.append((pr, 1))
            yield PBWMonomial(tuple(factors)), self.terms[mono]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, c in self.factored_terms():
            if not mono.factors:
                bits.append(str(c))
            elif c == 1:
                bits.append(str(mono))
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        out = " + ".join(bits)
        return out.replace("+ -", "- ")

    __repr__ = __str__


# -- element constructors ----------------------------------------------


def scalar_element(alg: EnvelopingAlgebra, c: Scalar) -> UEAElement:
    return UEAElement(alg, {(): c} if c else {})


def identity(alg: EnvelopingAlgebra) -> UEAElement:
    return scalar_element(alg, 1)


def generator(alg: EnvelopingAlgebra, i: BoxIndex, j: BoxIndex, c: Scalar = 1) -> UEAElement:
    return UEAElement(alg, {(alg.index[(i, j)],): c})


def from_lie(alg: EnvelopingAlgebra, x: LieSuperElement) -> UEAElement:
    return UEAElement(alg, {(alg.index[pr],): c for pr, c in x.terms.items()})


def from_factors(alg: EnvelopingAlgebra, factors: Iterable[tuple[Pair, int]], c: Scalar = 1) -> UEAElement:
    """Build c times the normal monomial with the given (pair, exponent) factors."""
    flat: list[int] = []
    prev = -1
    for pr, exp in factors:
        idx = alg.index[pr]
        if idx <= prev:
            raise ValueError("factors must be in strictly increasing canonical order")
        if alg.parities[idx] and exp != 1:
            raise ValueError(f"odd pair {pr} cannot carry exponent {exp}")
        flat.extend([idx] * exp)
        prev = idx
    return UEAElement(alg, {tuple(flat): c})


# -- module operations --------------------------------------------------


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b


def supercommutator(a: UEAElement, b: UEAElement) -> UEAElement:
    """[a, b] = ab - (-1)^{p(a)p(b)} ba, computed term by term."""
    a._check_same(b)
    alg = a.algebra
    acc: dict = {}
    for A, ca in a.terms.items():
        pa = alg.mono_parity(A)
        for B, cb in b.terms.items():
            pb = alg.mono_parity(B)
            c = ca * cb
            for mono, cc in alg._mono_times_mono(A, B).items():
                v = acc.get(mono, 0) + c * cc
                if v:
                    acc[mono] = v
                elif mono in acc:
                    del acc[mono]
            if pa and pb:
                c = -c
            for mono, cc in alg._mono_times_mono(B, A).items():
                v = acc.get(mono, 0) - c * cc
                if v:
                    acc[mono] = v
                elif mono in acc:
                    del acc[mono]
    return UEAElement._raw(alg, acc)


def pr_chi(py: Pyramid, u: UEAElement) -> UEAElement:
    """Project U(g) onto U(p) along the left ideal generated by a - chi(a),
    a in m: u·a = chi(a)·u there, so trailing m-factors strip to chi values."""
    alg = u.algebra
    if alg.pyramid != py:
        raise ValueError("element was built over a different pyramid")
    pc = alg.p_count
    chi_vals = alg.chi_values
    acc: dict = {}
    for mono, c in u.terms.items():
        k = len(mono)
        coeff = c
        while k > 0 and mono[k - 1] >= pc:
            coeff *= chi_vals[mono[k - 1] - pc]
            if not coeff:
                break
            k -= 1
        if not coeff:
            continue
        rest = mono[:k]
        v = acc.get(rest, 0) + coeff
        if v:
            acc[rest] = v
        elif rest in acc:
            del acc[rest]
    return UEAElement._raw(alg, acc)


def _as_m_element(py: Pyramid, a) -> UEAElement:
    alg = algebra_for(py)
    if isinstance(a, UEAElement):
        el = a
    elif isinstance(a, LieSuperElement):
        el = from_lie(alg, a)
    elif isinstance(a, tuple) and len(a) == 2:
        el = generator(alg, *a)
    else:
        raise TypeError(f"cannot interpret {a!r} as an m-basis element")
    pc = alg.p_count
    for mono in el.terms:
        if len(mono) != 1 or mono[0] < pc:
            raise ValueError("twisting element must be supported on the m-basis")
    return el


def twisted_action(py: Pyramid, a, y: UEAElement) -> UEAElement:
    """a . y = pr_chi([a, y]) for a in m, y in U(p)."""
    if not y.in_U_p():
        raise ValueError("y must lie in U(p)")
    a_el = _as_m_element(py, a)
    return pr_chi(py, supercommutator(a_el, y))


def is_W_invariant(py: Pyramid, y: UEAElement) -> bool:
    """True iff y in U(p) is invariant under the chi-twisted m-action."""
    if not y.in_U_p():
        raise ValueError("y must lie in U(p)")
    alg = algebra_for(py)
    for idx in range(alg.p_count, len(alg.pairs)):
        a_el = UEAElement._raw(alg, {(idx,): 1})
        if not pr_chi(py, supercommutator(a_el, y)).is_zero():
            return False
    return True


def evaluate_one_dim(py: Pyramid, u: UEAElement, diag, strict: bool = False) -> Scalar:
    """Evaluate u in U(p) on the one-dimensional p-module where the diagonal
    e_{i,i} acts by diag[i] and everything off-diagonal acts by zero.

    Evaluation reads the straightened normal form of u as given; it does
    not use any multiplicativity shortcut.  With strict=True the diagonal
    values are first checked to define a genuine one-dimensional h-weight.
    """
    if not u.in_U_p():
        raise ValueError("u must lie in U(p)")
    if strict:
        from .weights import Weight, is_onedim_h_weight

        lam = diag if isinstance(diag, Weight) else Weight({b: diag[b] for b in py.boxes})
        if not is_onedim_h_weight(py, lam):
            raise ValueError("diag does not satisfy the one-dimensionality constraints")
    alg = u.algebra
    if alg.pyramid != py:
        raise ValueError("element was built over a different pyramid")
    nd = alg.ndiag
    total: Scalar = 0
    for mono, c in u.terms.items():
        val = c
        alive = True
        for idx in mono:
            if idx < nd:
                val *= diag[alg.diag_boxes[idx]]
            else:
                alive = False
                break
        if alive:
            total += val
    return total
