"""Truncated multi-alphabet symmetric functions in the power-sum basis.

A :class:`SymFunc` of rank r is a finite sum of products of power sums
p_k^(alpha), alpha = 1..r, with every term of total degree at most the
truncation degree.  Indices are tuples of r partitions (plain tuples of
weakly decreasing positive integers).
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .coeff import (ONE, ZERO, Coeff, RankMismatch, TailUndefined, NotContained,
                    memo, q, t)
from .partitions import Partition, partitions_of, pk_sp, pk_xi, b_coeff

__all__ = [
    "SymFunc", "VirtualAlphabet", "power_basis", "add", "scale", "mul", "pderiv",
    "plethystic_eval", "translate", "translate_graded", "substitute", "exp_series",
    "m_to_p", "p_to_m", "hall_inner", "hall_qt_inner", "qt_norm_p", "macdonald_P",
    "macdonald_P_tilde", "kernel_Pi", "skew_P", "coproduct", "embed", "pair_alphabet",
]

PowIndex = tuple  # tuple of r weakly decreasing tuples


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _deg(idx: PowIndex) -> int:
    return sum(sum(p) for p in idx)


class SymFunc:
    """Element of the degree-truncated ring Lambda^{(x) r} in the p-basis."""

    __slots__ = ("rank", "degree", "terms")

    def __init__(self, rank: int, degree: int, terms: Mapping[PowIndex, Coeff] | None = None,
                 _trusted: bool = False):
        self.rank = int(rank)
        self.degree = int(degree)
        if _trusted:
            self.terms = terms
            return
        out = {}
        for idx, c in (terms or {}).items():
            idx = tuple(tuple(sorted((int(k) for k in part), reverse=True)) for part in idx)
            if len(idx) != self.rank:
                raise RankMismatch(f"index {idx} has wrong rank for {self.rank}")
            if _deg(idx) > self.degree:
                continue
            c = c if isinstance(c, Coeff) else Coeff(c)
            c = out.get(idx, ZERO) + c
            if c.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = c
        self.terms = out

    # construction
    @classmethod
    def zero(cls, rank: int, degree: int) -> "SymFunc":
        return cls(rank, degree, {}, _trusted=True)

    @classmethod
    def one(cls, rank: int, degree: int, c: Coeff = ONE) -> "SymFunc":
        if c.is_zero():
            return cls.zero(rank, degree)
        return cls(rank, degree, {((),) * rank: c}, _trusted=True)

    @classmethod
    def p(cls, k: int, alpha: int = 1, rank: int = 1, degree: int = 0) -> "SymFunc":
        idx = [()] * rank
        idx[alpha - 1] = (k,)
        return cls(rank, degree, {tuple(idx): ONE})

    @classmethod
    def p_index(cls, idx: Sequence[Sequence[int]], rank: int | None = None, degree: int | None = None,
                c: Coeff = ONE) -> "SymFunc":
        idx = tuple(tuple(sorted(p, reverse=True)) for p in idx)
        return cls(rank or len(idx), degree if degree is not None else _deg(idx), {idx: c})

    # structure
    def _check(self, other: "SymFunc"):
        if not isinstance(other, SymFunc):
            raise TypeError("expected a SymFunc")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((_deg(i) for i in self.terms), default=-1)

    def homogeneous(self, d: int) -> "SymFunc":
        return SymFunc(self.rank, self.degree, {i: c for i, c in self.terms.items() if _deg(i) == d}, _trusted=True)

    def truncate(self, degree: int) -> "SymFunc":
        return SymFunc(self.rank, degree, {i: c for i, c in self.terms.items() if _deg(i) <= degree}, _trusted=True)

    def with_degree(self, degree: int) -> "SymFunc":
        return self.truncate(degree)

    def coeff(self, idx) -> Coeff:
        idx = tuple(tuple(p) for p in idx)
        return self.terms.get(idx, ZERO)

    def constant_term(self) -> Coeff:
        return self.terms.get(((),) * self.rank, ZERO)

    def map_coeffs(self, fn: Callable[[Coeff], Coeff]) -> "SymFunc":
        out = {}
        for i, c in self.terms.items():
            c = fn(c)
            if not c.is_zero():
                out[i] = c
        return SymFunc(self.rank, self.degree, out, _trusted=True)

    # arithmetic
    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            if _deg(i) > self.degree:
                continue
            v = out.get(i)
            if v is None:
                out[i] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[i]
                else:
                    out[i] = v
        deg = min(self.degree, other.degree)
        if deg < self.degree:
            out = {i: c for i, c in out.items() if _deg(i) <= deg}
        return SymFunc(self.rank, deg, out, _trusted=True)

    def __neg__(self):
        return SymFunc(self.rank, self.degree, {i: -c for i, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = c if isinstance(c, Coeff) else Coeff(c)
        if c.is_zero():
            return SymFunc.zero(self.rank, self.degree)
        if c == ONE:
            return self
        return self.map_coeffs(lambda x: x * c)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return mul(self, other)
        if isinstance(other, (Coeff, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Coeff, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.rank != other.rank:
            return False
        D = min(self.degree, other.degree)
        return (self.truncate(D) - other.truncate(D)).is_zero()

    __hash__ = None

    def pderiv(self, k: int, alpha: int = 1) -> "SymFunc":
        return pderiv(self, k, alpha)

    def __repr__(self):
        if not self.terms:
            return f"SymFunc(r={self.rank}, D={self.degree}, 0)"
        parts = []
        for idx, c in sorted(self.terms.items(), key=lambda ic: _sort_key(ic[0])):
            mono = _mono_str(idx, self.rank)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return f"SymFunc(r={self.rank}, D={self.degree}, " + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        terms = [{"pows": [list(p) for p in idx], "coeff": c.to_json()}
                 for idx, c in sorted(self.terms.items(), key=lambda ic: _sort_key(ic[0]))]
        return {"rank": self.rank, "degree": self.degree, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        return cls(data["rank"], data["degree"],
                   {tuple(tuple(p) for p in tm["pows"]): Coeff.from_json(tm["coeff"]) for tm in data["terms"]})


def _sort_key(idx):
    return (_deg(idx), tuple(tuple(-k for k in p) for p in idx))


def _mono_str(idx, rank):
    out = []
    for a, part in enumerate(idx, start=1):
        for k, m in sorted(Counter(part).items()):
            sym = f"p{k}" if rank == 1 else f"p{k}[{a}]"
            out.append(sym if m == 1 else f"{sym}^{m}")
    return "*".join(out)


# --------------------------------------------------------------------------
# basic operations

def add(f: SymFunc, g: SymFunc) -> SymFunc:
    return f + g


def scale(c: Coeff, f: SymFunc) -> SymFunc:
    return f.scale(c)


def mul(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product truncated at the smaller of the two degrees."""
    f._check(g)
    D = min(f.degree, g.degree)
    out: dict = {}
    gi = [(_deg(i), i, c) for i, c in g.terms.items()]
    for i1, c1 in f.terms.items():
        d1 = _deg(i1)
        if d1 > D:
            continue
        for d2, i2, c2 in gi:
            if d1 + d2 > D:
                continue
            idx = tuple(_merge(a, b) for a, b in zip(i1, i2))
            v = out.get(idx)
            out[idx] = c1 * c2 if v is None else v + c1 * c2
    return SymFunc(f.rank, D, {i: c for i, c in out.items() if not c.is_zero()}, _trusted=True)


def pderiv(f: SymFunc, k: int, alpha: int = 1) -> SymFunc:
    """Partial derivative with respect to p_k of alphabet alpha."""
    if k < 1:
        raise ValueError("k must be positive")
    out: dict = {}
    a = alpha - 1
    for idx, c in f.terms.items():
        part = idx[a]
        m = part.count(k)
        if not m:
            continue
        lst = list(part)
        lst.remove(k)
        nidx = idx[:a] + (tuple(lst),) + idx[a + 1:]
        v = out.get(nidx, ZERO) + c * m
        if v.is_zero():
            out.pop(nidx, None)
        else:
            out[nidx] = v
    return SymFunc(f.rank, f.degree, out, _trusted=True)


def exp_series(g: SymFunc) -> SymFunc:
    """exp(g) truncated at g.degree; g must have no constant term."""
    if not g.constant_term().is_zero():
        raise ValueError("exp_series needs a series without constant term")
    D = g.degree
    comps = [g.homogeneous(k) for k in range(D + 1)]
    E = [SymFunc.one(g.rank, D)]
    # n E_n = sum_k k g_k E_{n-k}
    for n in range(1, D + 1):
        acc = SymFunc.zero(g.rank, D)
        for k in range(1, n + 1):
            if comps[k].is_zero() or E[n - k].is_zero():
                continue
            acc = acc + mul(comps[k], E[n - k]).scale(Coeff(k))
        E.append(acc.scale(Coeff(Fraction(1, n))))
    out = SymFunc.zero(g.rank, D)
    for e in E:
        out = out + e
    return out


def power_basis(rank: int, d: int) -> tuple[PowIndex, ...]:
    """All p-indices of total degree d, in a fixed order."""
    return _power_basis(rank, d)


@lru_cache(maxsize=None)
def _power_basis(rank: int, d: int):
    if rank == 1:
        return tuple((tuple(p),) for p in partitions_of(d))
    out = []
    for k in range(d, -1, -1):
        for p in partitions_of(k):
            for rest in _power_basis(rank - 1, d - k):
                out.append((tuple(p),) + rest)
    return tuple(out)


# --------------------------------------------------------------------------
# alphabets and plethysm

class VirtualAlphabet:
    """A virtual alphabet described by its power sums p_k.

    ``letters`` is a list of (coefficient, letter) pairs contributing
    coefficient * letter**k; ``tail`` optionally adds a closed form in k.
    """

    def __init__(self, letters: Iterable[tuple[Coeff, Coeff]] = (), tail: Callable[[int], Coeff] | None = None,
                 tail_max: int | None = None):
        self.letters = [(Coeff(c) if not isinstance(c, Coeff) else c, Coeff(m) if not isinstance(m, Coeff) else m)
                        for c, m in letters]
        self.tail = tail
        self.tail_max = tail_max
        self._cache: dict[int, Coeff] = {}

    def pk(self, k: int) -> Coeff:
        v = self._cache.get(k)
        if v is not None:
            return v
        v = ZERO
        for c, m in self.letters:
            v = v + c * m ** k
        if self.tail is not None:
            if self.tail_max is not None and k > self.tail_max:
                raise TailUndefined(f"tail of the alphabet is undefined at k={k}")
            tv = self.tail(k)
            if tv is None:
                raise TailUndefined(f"tail of the alphabet is undefined at k={k}")
            v = v + tv
        self._cache[k] = v
        return v

    # alphabet algebra
    @classmethod
    def from_pk(cls, fn: Callable[[int], Coeff], tail_max: int | None = None) -> "VirtualAlphabet":
        return cls((), fn, tail_max)

    @classmethod
    def letter(cls, x: Coeff) -> "VirtualAlphabet":
        return cls([(ONE, x)])

    @classmethod
    def sp(cls, lam, dual: bool = False) -> "VirtualAlphabet":
        """epsilon_lambda (or its dual, q and t inverted)."""
        lam = Partition(lam)
        return cls.from_pk(lambda k: pk_sp(lam, k, dual))

    @classmethod
    def xi(cls, lam, dual: bool = False) -> "VirtualAlphabet":
        lam = Partition(lam)
        return cls.from_pk(lambda k: pk_xi(lam, k, dual))

    @classmethod
    def empty(cls) -> "VirtualAlphabet":
        return cls()

    def times(self, u: Coeff) -> "VirtualAlphabet":
        """The alphabet u * A, with p_k(uA) = u^k p_k(A)."""
        return VirtualAlphabet.from_pk(lambda k: u ** k * self.pk(k))

    def __neg__(self):
        return VirtualAlphabet.from_pk(lambda k: -self.pk(k))

    def __add__(self, other: "VirtualAlphabet"):
        return VirtualAlphabet.from_pk(lambda k: self.pk(k) + other.pk(k))

    def __sub__(self, other: "VirtualAlphabet"):
        return VirtualAlphabet.from_pk(lambda k: self.pk(k) - other.pk(k))


def plethystic_eval(f: SymFunc, alphabets: Sequence[VirtualAlphabet] | VirtualAlphabet) -> Coeff:
    """Image of f under p_k^(alpha) -> p_k(alphabet alpha)."""
    if isinstance(alphabets, VirtualAlphabet):
        alphabets = [alphabets]
    if len(alphabets) != f.rank:
        raise RankMismatch(f"{len(alphabets)} alphabets for a rank {f.rank} function")
    total = ZERO
    for idx, c in f.terms.items():
        term = c
        for A, part in zip(alphabets, idx):
            for k in part:
                term = term * A.pk(k)
        total = total + term
    return total


def substitute(f: SymFunc, image: Callable[[int, int], SymFunc], rank: int | None = None,
               degree: int | None = None) -> SymFunc:
    """Ring homomorphism p_k^(alpha) -> image(k, alpha) (graded, truncated)."""
    rank = f.rank if rank is None else rank
    D = f.degree if degree is None else degree
    cache: dict = {}

    def img_pow(k, a, m):
        key = (k, a, m)
        v = cache.get(key)
        if v is None:
            if m == 1:
                v = image(k, a).truncate(D)
                if v.rank != rank:
                    raise RankMismatch("image has the wrong rank")
            else:
                v = mul(img_pow(k, a, m - 1), img_pow(k, a, 1))
            cache[key] = v
        return v

    out = SymFunc.zero(rank, D)
    acc: dict = {}
    for idx, c in f.terms.items():
        term = SymFunc.one(rank, D, c)
        for a, part in enumerate(idx, start=1):
            for k, m in Counter(part).items():
                term = mul(term, img_pow(k, a, m))
                if term.is_zero():
                    break
            if term.is_zero():
                break
        for i, v in term.terms.items():
            w = acc.get(i)
            acc[i] = v if w is None else w + v
    out = SymFunc(rank, D, {i: c for i, c in acc.items() if not c.is_zero()}, _trusted=True)
    return out


def translate_graded(f: SymFunc, shifts: Mapping[int, Callable[[int], Coeff]]) -> list[SymFunc]:
    """Components T_j of exp(sum_{k,beta} a_beta(k) w^k d/dp_k^(beta)) f.

    ``shifts`` maps alphabet index beta to k -> a_beta(k).  Entry j of the
    result is the coefficient of w^j.
    """
    D = f.degree
    out = [dict() for _ in range(max(f.max_degree(), 0) + 1)]
    acache: dict = {}

    def a(beta, k):
        key = (beta, k)
        v = acache.get(key)
        if v is None:
            v = shifts[beta](k)
            acache[key] = v
        return v

    for idx, c in f.terms.items():
        # per (alphabet, k) choose how many copies of p_k to hit
        choices = []
        for b, part in enumerate(idx, start=1):
            if b not in shifts:
                continue
            for k, m in Counter(part).items():
                choices.append((b, k, m))
        ranges = [range(m + 1) for (_, _, m) in choices]
        for pick in product(*ranges):
            j = 0
            coef = c
            new = [list(p) for p in idx]
            for (b, k, m), i in zip(choices, pick):
                if not i:
                    continue
                j += k * i
                coef = coef * (math.comb(m, i) * a(b, k) ** i)
                for _ in range(i):
                    new[b - 1].remove(k)
            if coef.is_zero():
                continue
            nidx = tuple(tuple(p) for p in new)
            d = out[j]
            v = d.get(nidx)
            d[nidx] = coef if v is None else v + coef
    return [SymFunc(f.rank, D, {i: c for i, c in d.items() if not c.is_zero()}, _trusted=True) for d in out]


def translate(f: SymFunc, alpha: int, A: VirtualAlphabet) -> SymFunc:
    """f with alphabet alpha shifted by A, i.e. exp(sum p_k(A) d/dp_k^(alpha)) f."""
    comps = translate_graded(f, {alpha: A.pk})
    out = SymFunc.zero(f.rank, f.degree)
    for c in comps:
        out = out + c
    return out


def embed(f: SymFunc, rank: int, alphabets: Sequence[int]) -> SymFunc:
    """Relabel alphabets: alphabet a of f becomes alphabets[a-1] of a rank-`rank` function."""
    out = {}
    for idx, c in f.terms.items():
        new = [()] * rank
        for a, part in enumerate(idx):
            tgt = alphabets[a] - 1
            new[tgt] = _merge(new[tgt], part)
        out[tuple(new)] = out.get(tuple(new), ZERO) + c
    return SymFunc(rank, f.degree, out)


def coproduct(f: SymFunc) -> SymFunc:
    """Rank-1 f(x) -> f(x + y) as a rank-2 function."""
    if f.rank != 1:
        raise RankMismatch("coproduct acts on rank-1 functions")
    return substitute(f, lambda k, a: SymFunc(2, f.degree, {((k,), ()): ONE, ((), (k,)): ONE}), rank=2)


# --------------------------------------------------------------------------
# inner products

def qt_norm_p(part: tuple) -> Coeff:
    """<p_lambda, p_lambda>_{q,t}."""
    return _qt_norm(tuple(part))


@memo
def _qt_norm(part):
    c = Coeff(Partition(part).z())
    for k in part:
        c = c * (1 - q() ** k) / (1 - t() ** k)
    return c


def hall_inner(f: SymFunc, g: SymFunc) -> Coeff:
    """Hall product <p_lambda, p_mu> = z_lambda delta (alphabetwise)."""
    f._check(g)
    total = ZERO
    for idx, c in f.terms.items():
        d = g.terms.get(idx)
        if d is not None:
            z = 1
            for part in idx:
                z *= Partition(part).z()
            total = total + c * d * z
    return total


def hall_qt_inner(f: SymFunc, g: SymFunc) -> Coeff:
    """Macdonald (q,t) inner product on rank-1 functions."""
    if f.rank != 1 or g.rank != 1:
        raise RankMismatch("the (q,t) product is defined here for rank 1")
    total = ZERO
    for idx, c in f.terms.items():
        d = g.terms.get(idx)
        if d is not None:
            total = total + c * d * qt_norm_p(idx[0])
    return total


def pair_alphabet(f: SymFunc, alpha: int, g: SymFunc) -> SymFunc:
    """(q,t) pairing of the rank-1 g against alphabet alpha of f; alphabet alpha is removed."""
    if g.rank != 1:
        raise RankMismatch("pairing partner must have rank 1")
    out: dict = {}
    a = alpha - 1
    for idx, c in f.terms.items():
        d = g.terms.get((idx[a],))
        if d is None:
            continue
        rest = idx[:a] + idx[a + 1:]
        v = c * d * qt_norm_p(idx[a])
        out[rest] = out.get(rest, ZERO) + v
    return SymFunc(f.rank - 1, f.degree, out)


# --------------------------------------------------------------------------
# monomial basis

def _p_in_m(mu: tuple, lam: tuple) -> int:
    """Coefficient of m_lam in p_mu: number of ways to distribute parts of mu onto rows of lam."""
    n = len(lam)
    target = list(lam)

    @lru_cache(maxsize=None)
    def count(i, rem):
        if i == len(mu):
            return 1 if all(r == 0 for r in rem) else 0
        total = 0
        for row in range(n):
            if rem[row] >= mu[i]:
                nr = list(rem)
                nr[row] -= mu[i]
                total += count(i + 1, tuple(nr))
        return total

    return count(0, tuple(target))


@lru_cache(maxsize=None)
def _p_to_m_matrix(d: int):
    parts = partitions_of(d)
    return [[Fraction(_p_in_m(tuple(mu), tuple(lam))) for lam in parts] for mu in parts]


@lru_cache(maxsize=None)
def _m_to_p_matrix(d: int):
    M = _p_to_m_matrix(d)
    n = len(M)
    # invert the exact matrix (rows: p_mu in m-basis)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    inv = [row[n:] for row in A]
    # m_lam = sum_mu inv[lam][mu] p_mu, since p = M m  =>  m = M^{-1} p
    return inv


def m_to_p(lam, degree: int | None = None) -> SymFunc:
    """Monomial symmetric function m_lambda in the power-sum basis."""
    lam = Partition(lam)
    d = lam.size
    parts = partitions_of(d)
    inv = _m_to_p_matrix(d)
    row = inv[parts.index(lam)]
    return SymFunc(1, d if degree is None else degree,
                   {(tuple(mu),): Coeff(c) for mu, c in zip(parts, row) if c != 0})


def p_to_m(f: SymFunc, d: int) -> dict[Partition, Coeff]:
    """Degree-d part of a rank-1 function in the monomial basis."""
    if f.rank != 1:
        raise RankMismatch("monomial expansion is for rank 1")
    parts = partitions_of(d)
    M = _p_to_m_matrix(d)
    out = {lam: ZERO for lam in parts}
    for i, mu in enumerate(parts):
        c = f.terms.get((tuple(mu),))
        if c is None:
            continue
        for j, lam in enumerate(parts):
            if M[i][j]:
                out[lam] = out[lam] + c * Coeff(M[i][j])
    return {k: v for k, v in out.items() if not v.is_zero()}


# --------------------------------------------------------------------------
# Macdonald polynomials (Gram-Schmidt oracle)

@memo
def _macdonald_block(d: int) -> dict:
    parts = partitions_of(d)  # reverse-lex: [d] first
    done: dict = {}
    norms: dict = {}
    for lam in reversed(parts):
        f = m_to_p(lam)
        for mu, P in done.items():
            c = hall_qt_inner(m_to_p(lam), P)
            if not c.is_zero():
                f = f - P.scale(c / norms[mu])
        done[lam] = f
        norms[lam] = hall_qt_inner(f, f)
    return done


def macdonald_P(lam, degree: int | None = None) -> SymFunc:
    """Macdonald P_lambda in the p-basis, by Gram-Schmidt on monomials."""
    lam = Partition(lam)
    f = _macdonald_block(lam.size)[lam]
    return SymFunc(1, lam.size if degree is None else degree, f.terms)


def macdonald_P_tilde(lam, degree: int | None = None) -> SymFunc:
    from .partitions import eval_P_at_sp_empty
    return macdonald_P(lam, degree).scale(eval_P_at_sp_empty(Partition(lam)).inv())


def kernel_Pi(degree: int) -> SymFunc:
    """exp(sum_k (1/k) (1-t^k)/(1-q^k) p_k(x) p_k(y)) on two alphabets."""
    terms = {}
    for k in range(1, degree // 2 + 1):
        terms[((k,), (k,))] = Coeff(Fraction(1, k)) * (1 - t() ** k) / (1 - q() ** k)
    return exp_series(SymFunc(2, degree, terms))


def skew_P(lam, mu, degree: int | None = None) -> SymFunc:
    """Skew function P_{lambda/mu} defined by P_lambda(x+y) = sum_mu P_mu(x) P_{lambda/mu}(y)."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        raise NotContained(f"{mu} is not contained in {lam}")
    D = lam.size if degree is None else degree
    cop = coproduct(macdonald_P(lam, lam.size))
    res = pair_alphabet(cop, 1, macdonald_P(mu, mu.size))
    return SymFunc(1, D, res.terms).scale(b_coeff(mu))
