"""Linear operators on truncated Lambda^{(x) r}.

Operators are closures acting on :class:`SymFunc`.  Every constant they
use is computed once, under the parameter session active at construction
time; applying an operator later under a different session mixes values,
so build and apply under the same :class:`Params`.

Vertex-operator modes are extracted by bigraded bookkeeping: a current
``sum_m X_m z^{-m}`` written as ``exp(creation) exp(annihilation)`` has
``X_m f = sum_n C_n T_{n+m}(f)`` where ``C_n`` is the degree-n part of the
creation exponential and ``T_j`` is the part of the translated function
that lost degree j.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Mapping, Sequence

from .coeff import (ONE, ZERO, BasisMissing, Coeff, RankMismatch,
                    ResonanceError, current_params, gamma, gamma_half, q, q1, q2, q3, t)
from .partitions import (MultiPartition, Partition, b_tilde, nekrasov_tilde,
                         partitions_of)
from .symfunc import (SymFunc, VirtualAlphabet, exp_series, mul, pderiv, plethystic_eval, power_basis, skew_P, substitute,
                      translate_graded)

__all__ = [
    "GradedOperator", "WeightVector", "identity", "rep_a", "rep_x_mode", "ek_poly",
    "L0", "t_L0", "grading_power", "mult_exp", "deriv_exp", "mult_by", "K_pair",
    "K_twist", "K_twist_inverse", "diagonal_operator", "nabla", "nabla_inverse",
    "delta_plus", "delta_z", "V_operator", "framed_a_minus1", "c_k",
    "afs_matrix_element", "afs_operator", "mukade_element", "resonant", "x_mode_macdonald",
]


def c_k(k: int) -> Coeff:
    """c_k = -(1/k) prod_{a=1,2,3} (1 - q_a^k)."""
    k = abs(k)
    return -(1 - q1() ** k) * (1 - q2() ** k) * (1 - q3() ** k) / k


# --------------------------------------------------------------------------
# weights

class WeightVector(tuple):
    """Weights (u_1, ..., u_r) as exact coefficients."""

    def __new__(cls, values: Iterable):
        vals = tuple(v if isinstance(v, Coeff) else Coeff(v) for v in values)
        if any(v.is_zero() for v in vals):
            raise ValueError("weights must be nonzero")
        return super().__new__(cls, vals)

    @classmethod
    def symbolic(cls, r: int, name: str = "u") -> "WeightVector":
        p = current_params()
        return cls(p.sym(f"{name}{a}") for a in range(1, r + 1))

    @classmethod
    def from_Q(cls, Q: Coeff | None = None) -> "WeightVector":
        """The rank-2 weights (Q, 1)."""
        return cls((current_params().sym("Q") if Q is None else Q, ONE))

    @property
    def rank(self) -> int:
        return len(self)


def _weights(u, r: int) -> WeightVector:
    if u is None:
        return WeightVector.symbolic(r)
    u = u if isinstance(u, WeightVector) else WeightVector(u)
    if len(u) != r:
        raise RankMismatch(f"{len(u)} weights for rank {r}")
    return u


def resonant(u: Sequence[Coeff], degree: int) -> bool:
    """True if some ratio u_a/u_b equals q^i t^j with |i|, |j| <= degree.

    The comparison is exact, so independent symbolic weights are never
    resonant while, say, (q u, u) is.
    """
    u = list(u)
    qq, tt = q(), t()
    for a in range(len(u)):
        for b in range(len(u)):
            if a == b:
                continue
            ratio = u[a] / u[b]
            for i in range(-degree, degree + 1):
                for j in range(-degree, degree + 1):
                    if ratio == qq ** i * tt ** j:
                        return True
    return False


# --------------------------------------------------------------------------
# operator container

class GradedOperator:
    """A linear map on truncated symmetric functions of fixed rank.

    ``shift`` is the exact degree change for homogeneous operators and
    ``None`` for operators mixing degrees (plethystic exponentials, V).
    Results are truncated at the degree of the input.
    """

    __slots__ = ("rank", "shift", "_fn", "name")

    def __init__(self, rank: int, shift: int | None, fn: Callable[[SymFunc], SymFunc], name: str = ""):
        self.rank = rank
        self.shift = shift
        self._fn = fn
        self.name = name

    def __repr__(self):
        return f"GradedOperator({self.name or '?'}, rank={self.rank}, shift={self.shift})"

    def apply(self, f: SymFunc) -> SymFunc:
        if f.rank != self.rank:
            raise RankMismatch(f"operator of rank {self.rank} applied to rank {f.rank}")
        out = self._fn(f)
        if out.degree != f.degree:
            out = SymFunc(out.rank, f.degree, out.truncate(f.degree).terms, _trusted=True)
        return out

    __call__ = apply

    def _same(self, other):
        if not isinstance(other, GradedOperator):
            raise TypeError("expected a GradedOperator")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """Composition: (A @ B)(f) = A(B(f))."""
        self._same(other)
        s = None if self.shift is None or other.shift is None else self.shift + other.shift
        return GradedOperator(self.rank, s, lambda f: self.apply(other.apply(f)),
                              f"{self.name}*{other.name}")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._same(other)
        s = self.shift if self.shift == other.shift else None
        return GradedOperator(self.rank, s, lambda f: self.apply(f) + other.apply(f),
                              f"({self.name}+{other.name})")

    def __neg__(self):
        return self.scale(Coeff(-1))

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, c) -> "GradedOperator":
        c = c if isinstance(c, Coeff) else Coeff(c)
        return GradedOperator(self.rank, self.shift, lambda f: self.apply(f).scale(c),
                              f"{c}*{self.name}")

    def __rmul__(self, c):
        return self.scale(c)

    def commutator(self, other: "GradedOperator") -> "GradedOperator":
        return self @ other - other @ self

    def matrix(self, d_in: int, d_out: int | None = None, degree: int | None = None) -> list[list[Coeff]]:
        """Dense block in the power-sum basis: rows index degree d_out, columns degree d_in."""
        if d_out is None:
            if self.shift is None:
                raise ValueError("d_out is required for an inhomogeneous operator")
            d_out = d_in + self.shift
        D = max(d_in, d_out) if degree is None else degree
        cols = power_basis(self.rank, d_in)
        rows = power_basis(self.rank, d_out)
        out = [[ZERO] * len(cols) for _ in rows]
        for j, idx in enumerate(cols):
            img = self.apply(SymFunc(self.rank, D, {idx: ONE}, _trusted=True))
            for i, ridx in enumerate(rows):
                out[i][j] = img.coeff(ridx)
        return out


def identity(rank: int) -> GradedOperator:
    return GradedOperator(rank, 0, lambda f: f, "1")


# --------------------------------------------------------------------------
# Heisenberg generators

def rep_a(k: int, r: int) -> GradedOperator:
    """Cartan mode a_k in the level-(r, 0) horizontal representation."""
    if k == 0:
        raise ValueError("a_0 is not represented; k must be nonzero")
    n = abs(k)
    g = gamma_half() ** (-r * n)
    if k > 0:
        pref = -g * (1 - q2() ** n) * (1 - q3() ** n)
        w = [q3() ** ((a - 1) * n) for a in range(1, r + 1)]

        def fn(f):
            out = SymFunc.zero(r, f.degree)
            for a in range(1, r + 1):
                out = out + pderiv(f, n, a).scale(w[a - 1])
            return out.scale(pref)
        return GradedOperator(r, -n, fn, f"a_{k}")

    pref = -g * (1 - q1() ** n) * (1 - q3() ** n) / n

    def fn(f):
        ps = SymFunc.zero(r, f.degree)
        for a in range(1, r + 1):
            ps = ps + SymFunc.p(n, a, r, f.degree)
        return mul(ps, f).scale(pref)
    return GradedOperator(r, n, fn, f"a_{k}")


def _creation_series(r: int, coeff: Callable[[int, int], Coeff]) -> Callable[[int], list[SymFunc]]:
    """Homogeneous parts of exp(sum_{k, a} coeff(k, a) p_k^(a)) per truncation degree."""
    cache: dict[int, list[SymFunc]] = {}

    def get(D: int) -> list[SymFunc]:
        v = cache.get(D)
        if v is None:
            terms = {}
            for k in range(1, D + 1):
                for a in range(1, r + 1):
                    c = coeff(k, a)
                    if not c.is_zero():
                        idx = [()] * r
                        idx[a - 1] = (k,)
                        terms[tuple(idx)] = c
            E = exp_series(SymFunc(r, D, terms))
            v = [E.homogeneous(n) for n in range(D + 1)]
            cache[D] = v
        return v
    return get


def _vertex_mode(f: SymFunc, m: int, creation: list[SymFunc], shifts: Mapping[int, Callable[[int], Coeff]]) -> SymFunc:
    T = translate_graded(f, shifts)
    out = SymFunc.zero(f.rank, f.degree)
    for n, C in enumerate(creation):
        j = n + m
        if j < 0 or j >= len(T) or C.is_zero() or T[j].is_zero():
            continue
        out = out + mul(C, T[j])
    return out


def rep_x_mode(sign: int | str, m: int, r: int, u: Sequence | None = None) -> GradedOperator:
    """Mode x^{+-}_m (coefficient of z^{-m}) of the Drinfeld current at level (r, 0)."""
    s = _sign(sign)
    u = _weights(u, r)
    Q1, Q2, Q3, G = q1(), q2(), q3(), gamma()
    comps = []
    if s > 0:
        for a in range(1, r + 1):
            def cre(k, b, a=a):
                if b < a:
                    return (1 - Q1 ** k) * (1 - Q3 ** k) / k
                if b == a:
                    return (1 - Q1 ** k) / k
                return ZERO
            shifts = {a: (lambda k: -(1 - Q2 ** k))}
            comps.append((u[a - 1], _creation_series(r, cre), shifts))
    else:
        for a in range(1, r + 1):
            def cre(k, b, a=a):
                if b != a:
                    return ZERO
                return -(G ** (r * k)) * (1 - Q1 ** k) * Q3 ** (-(a - 1) * k) / k

            def shift_for(b, a=a):
                if b == a:
                    return lambda k: Q3 ** k * G ** (-r * k) * (1 - Q2 ** k) * Q3 ** ((a - 1) * k)
                return lambda k: (Q3 ** k * G ** (-r * k) * (1 - Q2 ** k) * (1 - Q3 ** (-k))
                                  * Q3 ** ((b - 1) * k))
            shifts = {b: shift_for(b) for b in range(a, r + 1)}
            comps.append((u[a - 1].inv(), _creation_series(r, cre), shifts))

    def fn(f):
        out = SymFunc.zero(r, f.degree)
        for w, cre, shifts in comps:
            out = out + _vertex_mode(f, m, cre(f.degree), shifts).scale(w)
        return out
    return GradedOperator(r, -m, fn, f"x{'+' if s > 0 else '-'}_{m}")


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def ek_poly(k: int, contents: Sequence[Coeff]) -> Coeff:
    """E_k(chi_1..chi_k) = sum_l (-1)^(l-1) binom(k-1, l-1) chi_l."""
    if k < 1 or len(contents) != k:
        raise ValueError("ek_poly needs k >= 1 and exactly k contents")
    out = ZERO
    for l in range(1, k + 1):
        out = out + contents[l - 1] * ((-1) ** (l - 1) * math.comb(k - 1, l - 1))
    return out


def _box_sequences(lam: Partition, k: int, add: bool):
    from .partitions import addable_boxes, pieri_psi, pieri_psi_star, removable_boxes
    if k == 0:
        yield (), lam, ONE
        return
    for b in (addable_boxes(lam) if add else removable_boxes(lam)):
        nxt = lam.add_box(b) if add else lam.remove_box(b)
        c = pieri_psi(lam, b) if add else pieri_psi_star(lam, b)
        for rest, fin, cc in _box_sequences(nxt, k - 1, add):
            yield (b,) + rest, fin, c * cc


def x_mode_macdonald(sign, m: int, lam) -> dict:
    """Closed form of x^{+-}_m P_lam at weight 1, as {partition: coefficient}.

    Sums over sequences of |m| removed (m > 0) or added (m < 0) boxes with
    E_{|m|} weights.  For m = 0 this is the eigenvalue xi_lam (resp. its dual).
    """
    from .partitions import content, pk_xi
    s = _sign(sign)
    lam = Partition(lam)
    if m == 0:
        return {lam: pk_xi(lam, 1, dual=s < 0)}
    k = abs(m)
    add = m < 0
    G = gamma_half()
    if add:
        pref = Coeff(s) ** k * G ** ((s - 1) * k + 2 - 2 * s) * (1 - q1()) / (1 - q2()) ** (k - 1)
    else:
        pref = -Coeff(s) ** k * G ** ((s - 1) * k + 2 - 2 * s) * (1 - q2()) / (1 - q1()) ** (k - 1)
    out: dict = {}
    for boxes, fin, c in _box_sequences(lam, k, add):
        e = ek_poly(k, [content(b) ** s for b in boxes])
        out[fin] = out.get(fin, ZERO) + e * c * pref
    return {p: v for p, v in out.items() if not v.is_zero()}


# --------------------------------------------------------------------------
# grading, exponentials, K-twist

def _deg(idx) -> int:
    return sum(sum(p) for p in idx)


def grading_power(x: Coeff, r: int) -> GradedOperator:
    """x^{L_0}: multiplies the degree-d part by x^d."""
    def fn(f):
        return SymFunc(r, f.degree, {i: c * x ** _deg(i) for i, c in f.terms.items()}, _trusted=True)
    return GradedOperator(r, 0, fn, f"({x})^L0")


def L0(r: int) -> GradedOperator:
    def fn(f):
        return SymFunc(r, f.degree, {i: c * _deg(i) for i, c in f.terms.items() if _deg(i)}, _trusted=True)
    return GradedOperator(r, 0, fn, "L0")


def t_L0(r: int) -> GradedOperator:
    """t^{-L_0}."""
    return grading_power(t().inv(), r)


def mult_by(g: SymFunc) -> GradedOperator:
    return GradedOperator(g.rank, None, lambda f: mul(g.with_degree(f.degree), f), "mult")


def mult_exp(coeff: Callable[[int, int], Coeff], r: int) -> GradedOperator:
    """Multiplication by exp(sum_{k>0, a} coeff(k, a) p_k^(a))."""
    series = _creation_series(r, coeff)

    def fn(f):
        E = series(f.degree)
        out = SymFunc.zero(r, f.degree)
        for C in E:
            if not C.is_zero():
                out = out + mul(C, f)
        return out
    return GradedOperator(r, None, fn, "exp(p)")


def deriv_exp(coeff: Callable[[int, int], Coeff], r: int) -> GradedOperator:
    """exp(sum_{k>0, a} coeff(k, a) d/dp_k^(a)), i.e. p_k^(a) -> p_k^(a) + coeff(k, a)."""
    shifts = {a: (lambda k, a=a: coeff(k, a)) for a in range(1, r + 1)}

    def fn(f):
        out = SymFunc.zero(r, f.degree)
        for T in translate_graded(f, shifts):
            out = out + T
        return out
    return GradedOperator(r, None, fn, "exp(d)")


def K_pair(alpha: int, beta: int, rank: int, inverse: bool = False) -> GradedOperator:
    """K_{alpha,beta} = exp(sum_k (1-q3^k) p_k^(alpha) d/dp_k^(beta)).

    As a ring map it sends p_k^(beta) to p_k^(beta) + (1-q3^k) p_k^(alpha).
    """
    if alpha == beta:
        raise ValueError("K_pair needs two distinct alphabets")
    Q3 = q3()
    sgn = -1 if inverse else 1

    def image(k, a, D):
        f = SymFunc.p(k, a, rank, D)
        if a == beta:
            f = f + SymFunc.p(k, alpha, rank, D).scale((1 - Q3 ** k) * sgn)
        return f

    def fn(f):
        return substitute(f, lambda k, a: image(k, a, f.degree))
    return GradedOperator(rank, 0, fn, f"K{alpha}{beta}")


def _K_factors(r: int, rank: int | None = None, offset: int = 0) -> list[GradedOperator]:
    rank = r if rank is None else rank
    facs = []
    # K^{(r-1)} = prod_{a<r} K_{a,r} * prod_{a<r-1} K_{a,r-1} * ... * K_{1,2}
    for top in range(r, 1, -1):
        for a in range(1, top):
            facs.append(K_pair(a + offset, top + offset, rank))
    return facs


def K_twist(r: int, rank: int | None = None, offset: int = 0) -> GradedOperator:
    """The Cartan twist K^{(r-1)} on r alphabets (alphabets offset+1..offset+r of ``rank``)."""
    if r < 2:
        raise ValueError("K_twist needs rank r >= 2")
    facs = _K_factors(r, rank, offset)
    op = facs[0]
    for f in facs[1:]:
        op = op @ f
    op.name = f"K^({r - 1})"
    return op


def K_twist_inverse(r: int, rank: int | None = None, offset: int = 0) -> GradedOperator:
    if r < 2:
        raise ValueError("K_twist needs rank r >= 2")
    rank = r if rank is None else rank
    facs = []
    for top in range(r, 1, -1):
        for a in range(1, top):
            facs.append(K_pair(a + offset, top + offset, rank, inverse=True))
    facs.reverse()
    op = facs[0]
    for f in facs[1:]:
        op = op @ f
    op.name = f"K^({r - 1})^-1"
    return op


# --------------------------------------------------------------------------
# operators diagonal on a basis

def _check_basis(basis, u=None):
    if basis is None:
        raise BasisMissing("a generalized Macdonald basis is required")
    if u is not None and tuple(basis.weights) != tuple(u):
        raise BasisMissing("basis was built for different weights")


def diagonal_operator(basis, eigen: Callable[[MultiPartition], Coeff], name: str = "diag") -> GradedOperator:
    """Operator acting on basis element lam by the scalar eigen(lam).

    ``basis`` must provide ``rank``, ``degree``, ``expand(f)`` returning
    {lam: coefficient} and ``element(lam)``.
    """
    _check_basis(basis)
    cache: dict = {}

    def ev(lam):
        v = cache.get(lam)
        if v is None:
            v = eigen(lam)
            cache[lam] = v
        return v

    def fn(f):
        if f.max_degree() > basis.degree:
            raise BasisMissing(f"basis built to degree {basis.degree}, input has degree {f.max_degree()}")
        out = {}
        for lam, c in basis.expand(f).items():
            e = ev(lam)
            if e.is_zero():
                continue
            for idx, v in basis.element(lam).terms.items():
                w = out.get(idx)
                out[idx] = c * e * v if w is None else w + c * e * v
        return SymFunc(f.rank, f.degree, {i: c for i, c in out.items() if not c.is_zero()}, _trusted=True)
    return GradedOperator(basis.rank, 0, fn, name)


def _box_weight_product(lam: MultiPartition, u: Sequence[Coeff]) -> Coeff:
    from .partitions import content
    out = ONE
    for a, comp in enumerate(lam):
        for b in comp.boxes():
            out = out * u[a] * content(b)
    return out


def nabla(u: Sequence | None, basis) -> GradedOperator:
    """Framing operator: eigenvalue prod_{boxes} u_box chi_box on the basis."""
    _check_basis(basis)
    u = _weights(u if u is not None else basis.weights, basis.rank)
    _check_basis(basis, u)
    return diagonal_operator(basis, lambda lam: _box_weight_product(lam, u), "nabla")


def nabla_inverse(u: Sequence | None, basis) -> GradedOperator:
    _check_basis(basis)
    u = _weights(u if u is not None else basis.weights, basis.rank)
    _check_basis(basis, u)
    return diagonal_operator(basis, lambda lam: _box_weight_product(lam, u).inv(), "nabla^-1")


def delta_plus(f: SymFunc, u: Sequence | None, basis) -> GradedOperator:
    """Eigenvalue f(sum_a u_a eps_{lam^(a)}) for a level-1 f."""
    _check_basis(basis)
    if f.rank != 1:
        raise RankMismatch("delta_plus takes a rank-1 symmetric function")
    u = _weights(u if u is not None else basis.weights, basis.rank)
    _check_basis(basis, u)

    def eig(lam):
        A = VirtualAlphabet.empty()
        for a, comp in enumerate(lam):
            A = A + VirtualAlphabet.sp(comp).times(u[a])
        return plethystic_eval(f, A)
    return diagonal_operator(basis, eig, "Delta+")


def delta_z(z: Coeff, u: Sequence | None, basis) -> GradedOperator:
    """Eigenvalue exp(-sum_k z^k/k sum_a u_a^k p_k(chi_lam^(a))) = prod_box (1 - z u_box chi_box)."""
    from .partitions import content
    _check_basis(basis)
    u = _weights(u if u is not None else basis.weights, basis.rank)
    _check_basis(basis, u)

    def eig(lam):
        out = ONE
        for a, comp in enumerate(lam):
            for b in comp.boxes():
                out = out * (1 - z * u[a] * content(b))
        return out
    return diagonal_operator(basis, eig, "Delta(z)")


def V_operator(v: Sequence | None, basis) -> GradedOperator:
    """nabla(v) exp(sum (-1)^k/(k(1-q^k)) sum_a p_k^(a)) t^{-L0}
    exp(sum (-1)^k/(1-t^k) sum_a q3^{(a-1)k} d/dp_k^(a)) nabla(v)."""
    _check_basis(basis)
    r = basis.rank
    N = nabla(v, basis)
    Q, T, Q3 = q(), t(), q3()
    E1 = mult_exp(lambda k, a: Coeff((-1) ** k) / (k * (1 - Q ** k)), r)
    E2 = deriv_exp(lambda k, a: Coeff((-1) ** k) * Q3 ** ((a - 1) * k) / (1 - T ** k), r)
    op = N @ E1 @ t_L0(r) @ E2 @ N
    op.name = "V"
    return op


def framed_a_minus1(r: int) -> GradedOperator:
    """The framed mode -gamma^{r/2} q1^{-1} (1-q3)^{-1} a_{-1}."""
    return rep_a(-1, r).scale(-(gamma_half() ** r) / (q1() * (1 - q3())))


# --------------------------------------------------------------------------
# closed-form matrix elements

def _t_factor(lam: Partition, kind: str, n: int, u: Coeff, v: Coeff) -> Coeff:
    from .partitions import content
    lam = Partition(lam)
    prod = ONE
    for b in lam.boxes():
        prod = prod * v * content(b)
    if kind == "phi":
        return (-gamma() * u * v) ** lam.size * prod ** (-n - 1)
    return (gamma() * u) ** (-lam.size) * prod ** n


def _kind(kind) -> str:
    k = str(kind).lower().replace("φ", "phi").replace("Φ", "phi")
    if k in ("phi", "phi_", "plain"):
        return "phi"
    if k in ("phi*", "phistar", "phi_star", "star", "dual"):
        return "phi*"
    raise ValueError(f"kind must be Phi or Phi*, got {kind!r}")


def afs_matrix_element(nu, lam, mu, kind="phi", n: int = 0, u: Coeff | None = None,
                       v: Coeff | None = None) -> Coeff:
    """<P_nu, Phi_lam[u, v] P_mu>_{q,t} in closed form.

    The sum runs over sigma contained in both nu and mu with weight
    1/b_sigma = <P_sigma, P_sigma>_{q,t}.
    """
    kind = _kind(kind)
    nu, lam, mu = Partition(nu), Partition(lam), Partition(mu)
    p = current_params()
    u = p.sym("u1") if u is None else (u if isinstance(u, Coeff) else Coeff(u))
    v = p.sym("v1") if v is None else (v if isinstance(v, Coeff) else Coeff(v))
    from .partitions import b_coeff
    eps = VirtualAlphabet.sp(lam)
    eps_d = VirtualAlphabet.sp(lam, dual=True)
    total = ZERO
    for s in range(min(nu.size, mu.size) + 1):
        for sigma in partitions_of(s):
            if not (nu.contains(sigma) and mu.contains(sigma)):
                continue
            left = skew_P(nu, sigma)
            right = skew_P(mu, sigma)
            if kind == "phi":
                term = plethystic_eval(left, eps) * plethystic_eval(right, -eps_d) * q3() ** s
            else:
                term = plethystic_eval(left, -eps) * plethystic_eval(right, eps_d)
            total = total + term / b_coeff(sigma)
    tl = _t_factor(lam, kind, n, u, v)
    if kind == "phi":
        return tl * v ** (nu.size - mu.size) * q3() ** (-mu.size) * total
    return tl * (gamma() * v) ** (nu.size - mu.size) * total


def afs_operator(lam, kind="phi", n: int = 0, u: Coeff | None = None, v: Coeff | None = None) -> GradedOperator:
    """The vertical component Phi_lam[u, v] as an operator on Lambda (rank 1)."""
    kind = _kind(kind)
    lam = Partition(lam)
    p = current_params()
    u = p.sym("u1") if u is None else (u if isinstance(u, Coeff) else Coeff(u))
    v = p.sym("v1") if v is None else (v if isinstance(v, Coeff) else Coeff(v))
    Q, T, Q3, G = q(), t(), q3(), gamma()
    eps = VirtualAlphabet.sp(lam)
    eps_d = VirtualAlphabet.sp(lam, dual=True)
    tl = _t_factor(lam, kind, n, u, v)
    vinv = v.inv()
    if kind == "phi":
        cre = _creation_series(1, lambda k, a: v ** k / k * (1 - T ** k) / (1 - Q ** k) * eps.pk(k))
        shifts = {1: lambda k: -(vinv * Q3.inv()) ** k * eps_d.pk(k)}
    else:
        cre = _creation_series(1, lambda k, a: -(v * G) ** k / k * (1 - T ** k) / (1 - Q ** k) * eps.pk(k))
        shifts = {1: lambda k: (vinv / G) ** k * eps_d.pk(k)}

    def fn(f):
        C = cre(f.degree)
        out = SymFunc.zero(1, f.degree)
        for T_ in translate_graded(f, shifts):
            for Cn in C:
                if not Cn.is_zero() and not T_.is_zero():
                    out = out + mul(Cn, T_)
        return out.scale(tl)
    return GradedOperator(1, None, fn, f"Phi{'*' if kind == 'phi*' else ''}_{lam}")


def mukade_element(lam, mu, u: Sequence | None = None, v: Sequence | None = None,
                   w: Coeff | None = None) -> Coeff:
    """Normalized matrix element of the Mukade operator in the spherical basis.

    q^{|mu|} w^{|lam|-|mu|} prod_a btilde_{lam_a} prod_{a,b} Ntilde_{lam_a, mu_b}(gamma v_a/u_b)
    divided by prod_{a>b} Ntilde_{lam_a, lam_b}(v_a/v_b) prod_{a<b} Ntilde_{mu_a, mu_b}(u_a/u_b).
    """
    lam = lam if isinstance(lam, MultiPartition) else MultiPartition(lam)
    mu = mu if isinstance(mu, MultiPartition) else MultiPartition(mu)
    r = lam.rank
    if mu.rank != r:
        raise RankMismatch("multipartitions of different ranks")
    p = current_params()
    u = _weights(u, r)
    v = _weights(v, r) if v is not None else WeightVector.symbolic(r, "v")
    w = p.sym("w") if w is None else (w if isinstance(w, Coeff) else Coeff(w))
    G = gamma()
    num = q() ** mu.size * w ** (lam.size - mu.size)
    for a in range(r):
        num = num * b_tilde(lam[a])
        for b in range(r):
            num = num * nekrasov_tilde(lam[a], mu[b], G * v[a] / u[b])
    if num.is_zero():
        return ZERO
    den = ONE
    for a in range(r):
        for b in range(r):
            if a > b:
                den = den * nekrasov_tilde(lam[a], lam[b], v[a] / v[b])
            elif a < b:
                den = den * nekrasov_tilde(mu[a], mu[b], u[a] / u[b])
    if den.is_zero():
        raise ResonanceError("Mukade element has a vanishing normalization (resonant weights)")
    return num / den
