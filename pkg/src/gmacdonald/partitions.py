"""Partitions, multipartitions and the scalar factories built on them.

Contents, plethystic values of xi and epsilon, the functions Y and Psi,
Nekrasov factors, Pieri coefficients and normalisation factors.  All
quantities are returned as :class:`~gmacdonald.coeff.Coeff` and respect the
active parameter specialisation.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .coeff import (ONE, ArgumentPole, Coeff, DivisionByZero, InvalidBox,
                    ResonanceError, gamma, memo, q, q1, q2, q3, t)

__all__ = [
    "Partition", "MultiPartition", "Box", "partitions_of", "multipartitions_of",
    "addable_boxes", "removable_boxes", "content", "pk_xi", "pk_sp",
    "calY", "calPsi", "calY_boxes", "calPsi_boxes", "calY_multi", "calPsi_multi",
    "S_func", "g_func", "calG_log_coeff", "pieri_psi", "pieri_psi_star", "pieri_r", "pieri_r_star",
    "pieri_tilde", "pieri_tilde_star", "pieri_r_multi", "pieri_r_star_multi",
    "nekrasov", "nekrasov_contents", "nekrasov_tilde", "b_coeff", "b_tilde",
    "b_tilde_nekrasov", "eval_P_at_sp_empty", "norm_G", "norm_G_star", "g_lambda",
]


class Box(NamedTuple):
    """Box at row ``i``, column ``j`` (1-based) in alphabet ``alpha``."""

    i: int
    j: int
    alpha: int = 1

    def to_json(self) -> list[int]:
        return [self.alpha, self.i, self.j]


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return f"[{','.join(map(str, self))}]"

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """lambda_i with 1-based index; zero beyond the length."""
        return self[i - 1] if 0 < i <= len(self) else 0

    def transpose(self) -> "Partition":
        return _transpose(self)

    @property
    def T(self) -> "Partition":
        return _transpose(self)

    def n(self) -> int:
        return sum(i * p for i, p in enumerate(self))

    def z(self) -> int:
        out = 1
        for k, m in Counter(self).items():
            out *= k ** m * math.factorial(m)
        return out

    def boxes(self) -> list[Box]:
        return [Box(i + 1, j + 1) for i, p in enumerate(self) for j in range(p)]

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def add_box(self, box: Box) -> "Partition":
        if box not in addable_boxes(self):
            raise InvalidBox(f"{tuple(box[:2])} is not addable to {self}")
        parts = list(self) + [0]
        parts[box.i - 1] += 1
        return Partition(parts)

    def remove_box(self, box: Box) -> "Partition":
        if box not in removable_boxes(self):
            raise InvalidBox(f"{tuple(box[:2])} is not removable from {self}")
        parts = list(self)
        parts[box.i - 1] -= 1
        return Partition(parts)

    def to_json(self) -> list[int]:
        return list(self)


@lru_cache(maxsize=None)
def _transpose(lam: Partition) -> Partition:
    if not lam:
        return lam
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


class MultiPartition(tuple):
    """Tuple of r partitions, one per alphabet."""

    def __new__(cls, comps: Iterable[Iterable[int]]):
        comps = tuple(c if isinstance(c, Partition) else Partition(c) for c in comps)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        return super().__new__(cls, comps)

    def __repr__(self):
        return "(" + ",".join(repr(c) for c in self) + ")"

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(c.size for c in self)

    def boxes(self) -> list[Box]:
        return [Box(b.i, b.j, a + 1) for a, lam in enumerate(self) for b in lam.boxes()]

    def addable(self) -> list[Box]:
        return [Box(b.i, b.j, a + 1) for a, lam in enumerate(self) for b in addable_boxes(lam)]

    def removable(self) -> list[Box]:
        return [Box(b.i, b.j, a + 1) for a, lam in enumerate(self) for b in removable_boxes(lam)]

    def add_box(self, box: Box) -> "MultiPartition":
        comps = list(self)
        comps[box.alpha - 1] = comps[box.alpha - 1].add_box(Box(box.i, box.j))
        return MultiPartition(comps)

    def remove_box(self, box: Box) -> "MultiPartition":
        comps = list(self)
        comps[box.alpha - 1] = comps[box.alpha - 1].remove_box(Box(box.i, box.j))
        return MultiPartition(comps)

    def partial_sums(self) -> tuple[int, ...]:
        out, s = [], 0
        for c in self:
            s += c.size
            out.append(s)
        return tuple(out)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self]


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order ([n] first)."""
    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in gen(n - k, k):
                yield (k,) + rest
    return tuple(Partition(p) for p in gen(n, n))


@lru_cache(maxsize=None)
def multipartitions_of(n: int, r: int) -> tuple[MultiPartition, ...]:
    """All r-tuples of partitions with total size n."""
    if r == 1:
        return tuple(MultiPartition([p]) for p in partitions_of(n))
    out = []
    for k in range(n, -1, -1):
        for p in partitions_of(k):
            for rest in multipartitions_of(n - k, r - 1):
                out.append(MultiPartition((p,) + tuple(rest)))
    return tuple(out)


@lru_cache(maxsize=None)
def addable_boxes(lam: Partition) -> tuple[Box, ...]:
    lam = Partition(lam)
    out = []
    for i in range(1, len(lam) + 2):
        j = lam.part(i) + 1
        if i == 1 or lam.part(i - 1) >= j:
            out.append(Box(i, j))
    return tuple(out)


@lru_cache(maxsize=None)
def removable_boxes(lam: Partition) -> tuple[Box, ...]:
    lam = Partition(lam)
    return tuple(Box(i, lam.part(i)) for i in range(1, len(lam) + 1)
                 if lam.part(i) > lam.part(i + 1))


# --------------------------------------------------------------------------
# contents and plethystic values

@memo
def _qt(a: int, b: int) -> Coeff:
    return q() ** a * t() ** b


def _chi(i: int, j: int) -> Coeff:
    # q1^(i-1) q2^(j-1) = t^(1-i) q^(j-1)
    return _qt(j - 1, 1 - i)


def content(box: Box | tuple) -> Coeff:
    return _chi(box[0], box[1])


def g_lambda(lam: Partition) -> Coeff:
    lam = Partition(lam)
    return q1() ** lam.n() * q2() ** lam.T.n()


@memo
def pk_xi(lam: Partition, k: int, dual: bool = False) -> Coeff:
    """p_k(xi_lambda); ``dual`` inverts q and t."""
    lam = Partition(lam)
    a, b = (q1(), q2()) if not dual else (q1().inv(), q2().inv())
    s = sum((_chi(bx.i, bx.j) ** (k if not dual else -k) for bx in lam.boxes()), Coeff(0))
    return 1 - (1 - a ** k) * (1 - b ** k) * s


@memo
def pk_sp(lam: Partition, k: int, dual: bool = False) -> Coeff:
    """p_k(epsilon_lambda) in closed form; ``dual`` inverts q and t."""
    lam = Partition(lam)
    a, b = (q1(), q2()) if not dual else (q1().inv(), q2().inv())
    ak, bk = a ** k, b ** k
    s = sum((ak ** i * (bk ** lam.part(i) - 1) for i in range(1, len(lam) + 1)), Coeff(0))
    return s + ak / (1 - ak)


# --------------------------------------------------------------------------
# Y and Psi

def _safe_div(a: Coeff, b: Coeff) -> Coeff:
    try:
        return a / b
    except DivisionByZero as exc:
        raise ArgumentPole("argument hits a pole") from exc


def calY(lam: Partition, z: Coeff) -> Coeff:
    """Y_lambda(z) from addable and removable boxes."""
    lam = Partition(lam)
    zi = _safe_div(ONE, z)
    num = ONE
    for b in addable_boxes(lam):
        num *= 1 - content(b) * zi
    den = ONE
    q3i = q3().inv()
    for b in removable_boxes(lam):
        den *= 1 - content(b) * q3i * zi
    return _safe_div(num, den)


def calPsi(lam: Partition, z: Coeff) -> Coeff:
    return _safe_div(calY(lam, z / q3()), calY(lam, z))


def S_func(z: Coeff) -> Coeff:
    a, b = q1(), q2()
    return _safe_div((1 - a * z) * (1 - b * z), (1 - z) * (1 - a * b * z))


def g_func(z: Coeff) -> Coeff:
    out = ONE
    for qa in (q1(), q2(), q3()):
        out *= _safe_div(1 - qa * z, 1 - z / qa)
    return out


def calG_log_coeff(k: int) -> Coeff:
    """Coefficient of z^k in log G(z), G(z) = prod_{i,j>=1} (1 - z q1^{i-1} q2^{j-1}).

    G is an infinite product with no closed rational form; it enters only
    through normalization constants, so it is housed as its log series.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return _safe_div(Coeff(-1), k * (1 - q1() ** k) * (1 - q2() ** k))


def calY_boxes(lam: Partition, z: Coeff) -> Coeff:
    """Y_lambda(z) as (1 - 1/z) times S over the boxes."""
    out = 1 - _safe_div(ONE, z)
    for b in Partition(lam).boxes():
        out *= S_func(_safe_div(content(b), z))
    return out


def calPsi_boxes(lam: Partition, z: Coeff) -> Coeff:
    out = _safe_div(1 - q3() / z, 1 - 1 / z)
    for b in Partition(lam).boxes():
        out *= g_func(z / content(b))
    return out


def calY_multi(lam: MultiPartition, z: Coeff, v: Sequence[Coeff]) -> Coeff:
    out = ONE
    for comp, va in zip(lam, v):
        out *= calY(comp, z / va)
    return out


def calPsi_multi(lam: MultiPartition, z: Coeff, v: Sequence[Coeff]) -> Coeff:
    out = ONE
    for comp, va in zip(lam, v):
        out *= calPsi(comp, z / va)
    return out


# --------------------------------------------------------------------------
# Pieri coefficients

def _need(box, boxes, what, lam):
    if (box[0], box[1]) not in {(b.i, b.j) for b in boxes}:
        raise InvalidBox(f"{tuple(box[:2])} is not {what} for {lam}")


@memo
def pieri_psi(lam: Partition, box: Box) -> Coeff:
    lam = Partition(lam)
    _need(box, addable_boxes(lam), "addable", lam)
    i, j = box[0], box[1]
    out = ONE
    for ip in range(1, i):
        lp = lam.part(ip)
        out *= ((1 - _qt(lp - j + 1, i - ip - 1)) * (1 - _qt(lp - j, i - ip + 1))
                / ((1 - _qt(lp - j + 1, i - ip)) * (1 - _qt(lp - j, i - ip))))
    return out


@memo
def pieri_psi_star(lam: Partition, box: Box) -> Coeff:
    lam = Partition(lam)
    _need(box, removable_boxes(lam), "removable", lam)
    i, j = box[0], box[1]
    lt = lam.T
    out = ONE
    for jp in range(1, j):
        c = lt.part(jp)
        out *= ((1 - _qt(j - jp - 1, c - i + 1)) * (1 - _qt(j - jp + 1, c - i))
                / ((1 - _qt(j - jp, c - i + 1)) * (1 - _qt(j - jp, c - i))))
    return out


@memo
def pieri_r(lam: Partition, box: Box) -> Coeff:
    """Residue of 1/(w Y_lambda(w)) at w = chi_box, box addable."""
    lam = Partition(lam)
    _need(box, addable_boxes(lam), "addable", lam)
    chi = content(box)
    q3i = q3().inv()
    out = ONE
    for r in removable_boxes(lam):
        out *= 1 - content(r) * q3i / chi
    for a in addable_boxes(lam):
        if (a.i, a.j) != (box[0], box[1]):
            out /= 1 - content(a) / chi
    return out


@memo
def pieri_r_star(lam: Partition, box: Box) -> Coeff:
    """Residue of Y_lambda(w/q3)/w at w = chi_box, box removable."""
    lam = Partition(lam)
    _need(box, removable_boxes(lam), "removable", lam)
    chi = content(box)
    out = ONE
    for a in addable_boxes(lam):
        out *= 1 - q3() * content(a) / chi
    for r in removable_boxes(lam):
        if (r.i, r.j) != (box[0], box[1]):
            out /= 1 - content(r) / chi
    return out


@memo
def eval_P_at_sp_empty(lam: Partition) -> Coeff:
    """P_lambda(epsilon_empty) from its product formula."""
    lam = Partition(lam)
    out = ONE
    for (i, j, _) in lam.boxes():
        f = _chi(i, j) / (1 - _chi(0, j))
        for ip in range(1, i):
            lp = lam.part(ip)
            f *= (1 - _chi(1 + i - ip, j - lp + 1)) / (1 - _chi(2 + i - ip, j - lp + 1))
        out *= f
    return out if lam.size % 2 == 0 else -out


@memo
def pieri_tilde(lam: Partition, box: Box) -> Coeff:
    """Pieri coefficient of p_1 on spherical functions, from the ratio of evaluations."""
    lam = Partition(lam)
    return pieri_psi(lam, box) * eval_P_at_sp_empty(lam.add_box(Box(box[0], box[1]))) / eval_P_at_sp_empty(lam)


@memo
def pieri_tilde_star(lam: Partition, box: Box) -> Coeff:
    lam = Partition(lam)
    return pieri_psi_star(lam, box) * eval_P_at_sp_empty(lam.remove_box(Box(box[0], box[1]))) / eval_P_at_sp_empty(lam)


def pieri_r_multi(lam: MultiPartition, box: Box, v: Sequence[Coeff]) -> Coeff:
    a = box.alpha
    chi = content(box)
    out = pieri_r(lam[a - 1], Box(box.i, box.j))
    for b, comp in enumerate(lam, start=1):
        if b != a:
            out /= calY(comp, v[a - 1] * chi / v[b - 1])
    return out


def pieri_r_star_multi(lam: MultiPartition, box: Box, v: Sequence[Coeff]) -> Coeff:
    a = box.alpha
    chi = content(box)
    out = pieri_r_star(lam[a - 1], Box(box.i, box.j))
    q3i = q3().inv()
    for b, comp in enumerate(lam, start=1):
        if b != a:
            out *= calY(comp, q3i * v[a - 1] * chi / v[b - 1])
    return out


# --------------------------------------------------------------------------
# Nekrasov factors

def nekrasov(lam: Partition, mu: Partition, z: Coeff) -> Coeff:
    """N_{lambda,mu}(z) from arm and leg lengths."""
    lam, mu = Partition(lam), Partition(mu)
    lt, mt = lam.T, mu.T
    out = ONE
    for (i, j, _) in lam.boxes():
        out *= 1 - z * _chi(lt.part(j) - i + 2, j - mu.part(i) + 1)
    for (i, j, _) in mu.boxes():
        out *= 1 - z * _chi(i - mt.part(j) + 1, lam.part(i) - j + 2)
    return out


def nekrasov_contents(lam: Partition, mu: Partition, z: Coeff) -> Coeff:
    """N_{lambda,mu}(z) from S over pairs of contents (generic z)."""
    lam, mu = Partition(lam), Partition(mu)
    out = ONE
    q3i = q3().inv()
    lb = [content(b) for b in lam.boxes()]
    mb = [content(b) for b in mu.boxes()]
    for x in lb:
        for y in mb:
            out *= S_func(z * x / y)
    for x in lb:
        out *= 1 - q3i * z * x
    for y in mb:
        out *= 1 - z / y
    return out


def nekrasov_tilde(lam: Partition, mu: Partition, z: Coeff) -> Coeff:
    lam = Partition(lam)
    mono = ONE
    q3i = q3().inv()
    for b in lam.boxes():
        mono *= -q3i * z * content(b)
    return _safe_div(nekrasov(lam, mu, z), mono)


# --------------------------------------------------------------------------
# normalisation factors

@memo
def b_coeff(lam: Partition) -> Coeff:
    lam = Partition(lam)
    lt = lam.T
    out = ONE
    for (i, j, _) in lam.boxes():
        a, l = lam.part(i) - j, lt.part(j) - i
        out *= (1 - _qt(a, l + 1)) / (1 - _qt(a + 1, l))
    return out


@memo
def b_tilde(lam: Partition) -> Coeff:
    return b_coeff(lam) * eval_P_at_sp_empty(lam) ** 2


def b_tilde_nekrasov(lam: Partition) -> Coeff:
    lam = Partition(lam)
    return q().inv() ** lam.size / nekrasov_tilde(lam, lam, ONE)


def _tilde_or_resonance(lam, mu, z):
    val = nekrasov_tilde(lam, mu, z)
    if val.is_zero():
        raise ResonanceError(f"Nekrasov factor vanishes for weight ratio {z}")
    return val


def norm_G(lam: MultiPartition, v: Sequence[Coeff]) -> Coeff:
    lam = MultiPartition(lam)
    m = lam.rank
    out = gamma() ** sum((a - 1) * lam[a - 1].size for a in range(1, m + 1))
    for a in range(1, m + 1):
        for b in range(1, a):
            out /= _tilde_or_resonance(lam[a - 1], lam[b - 1], v[a - 1] / v[b - 1])
    return out


def norm_G_star(lam: MultiPartition, v: Sequence[Coeff]) -> Coeff:
    lam = MultiPartition(lam)
    m = lam.rank
    out = gamma() ** sum((m - a) * lam[a - 1].size for a in range(1, m + 1))
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            out /= _tilde_or_resonance(lam[a - 1], lam[b - 1], v[a - 1] / v[b - 1])
    return out
