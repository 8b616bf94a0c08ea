"""Exact scalar field for every computation in the package.

Elements are rational functions in a fixed registry of parameter symbols.
The deformation parameters are stored through fourth roots ``q4``, ``t4``
(``q = q4**4``, ``t = t4**4``) so that gamma = (t/q)**(1/2) and its square
root are Laurent monomials.  Numerators and denominators are polynomials over
the integers held by python-flint; Laurent monomials always live in the
denominator.

A :class:`Params` object, made active with ``with params.active():``,
specialises any subset of symbols to exact rationals.  That is how the
randomized identity-testing mode runs the same pipelines on numbers.
"""

from __future__ import annotations

import contextlib
import contextvars
import functools
import random
from fractions import Fraction
from typing import Iterable, Mapping

import flint

__all__ = [
    "REGISTRY", "ArtifactError", "RegistryMismatch", "DivisionByZero",
    "EvaluationPole", "ArgumentPole", "InvalidBox", "ResonanceError",
    "TailUndefined", "RankMismatch", "NotContained", "BasisMissing",
    "BudgetExceeded", "SparsePoly", "Coeff", "poly_arith", "frac_arith",
    "evaluate", "is_zero", "Params", "current_params", "sym", "q", "t",
    "gamma", "gamma_half", "q1", "q2", "q3", "ONE", "ZERO", "memo",
    "set_full_gcd", "set_budget", "reset_budget", "get_budget",
]


# --------------------------------------------------------------------------
# errors

class ArtifactError(Exception):
    """Base class of all domain errors raised by the package."""


class RegistryMismatch(ArtifactError):
    pass


class DivisionByZero(ArtifactError, ZeroDivisionError):
    pass


class EvaluationPole(ArtifactError):
    pass


class ArgumentPole(ArtifactError):
    pass


class InvalidBox(ArtifactError, ValueError):
    pass


class ResonanceError(ArtifactError):
    pass


class TailUndefined(ArtifactError):
    pass


class RankMismatch(ArtifactError, ValueError):
    pass


class NotContained(ArtifactError, ValueError):
    pass


class BasisMissing(ArtifactError):
    pass


class BudgetExceeded(ArtifactError):
    pass


# --------------------------------------------------------------------------
# registry and flint contexts

REGISTRY: tuple[str, ...] = (
    ("q4", "t4")
    + tuple(f"u{i}" for i in range(1, 7))
    + tuple(f"v{i}" for i in range(1, 7))
    + ("Q", "w", "z", "a", "b", "c", "x", "y")
)
_INDEX = {name: i for i, name in enumerate(REGISTRY)}
_NV = len(REGISTRY)
_CTX = flint.fmpz_mpoly_ctx.get(REGISTRY, "deglex")
_QCTX = flint.fmpq_mpoly_ctx.get(REGISTRY, "deglex")
_ZERO_EXP = (0,) * _NV

# alias -> (internal symbol, exponent divisor)
_ALIASES = {"s_q": ("q4", 2), "s_t": ("t4", 2), "q": ("q4", 4), "t": ("t4", 4)}

_config = {"full_gcd": True}
_BUDGET = contextvars.ContextVar("gmacdonald_budget", default=2_000_000)


def set_full_gcd(flag: bool) -> None:
    """Toggle the multivariate gcd pass of fraction reduction.

    With the flag off only integer content and common monomials are removed.
    Values are unaffected either way since equality is by cross-multiplication.
    """
    _config["full_gcd"] = bool(flag)


def set_budget(n: int):
    """Set the per-coefficient term ceiling; returns a token for reset."""
    return _BUDGET.set(int(n))


def reset_budget(token) -> None:
    """Undo a :func:`set_budget` call."""
    _BUDGET.reset(token)


def get_budget() -> int:
    return _BUDGET.get()


def _as_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, (int, flint.fmpz)):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def _rat_str(c) -> str:
    c = _as_fmpq(c)
    return f"{c.p}/{c.q}"


def _grlex_key(exps: tuple[int, ...]):
    return (-sum(exps), tuple(-e for e in exps))


# --------------------------------------------------------------------------
# SparsePoly: public Laurent polynomial type

class SparsePoly:
    """Laurent polynomial with rational coefficients over a symbol registry.

    Stored as a flint polynomial times a monomial shift with non-positive
    exponents.
    """

    __slots__ = ("registry", "_p", "_shift", "_qctx")

    def __init__(self, terms: Mapping[tuple[int, ...], object] | None = None,
                 registry: tuple[str, ...] = REGISTRY):
        self.registry = tuple(registry)
        self._qctx = _QCTX if self.registry == REGISTRY else flint.fmpq_mpoly_ctx.get(self.registry, "deglex")
        n = len(self.registry)
        items = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != n:
                raise RegistryMismatch("exponent vector length differs from registry size")
            c = _as_fmpq(c)
            if c != 0:
                items[e] = items.get(e, flint.fmpq(0)) + c
        items = {e: c for e, c in items.items() if c != 0}
        shift = tuple(min([0] + [e[i] for e in items]) for i in range(n))
        self._shift = shift
        self._p = self._qctx.from_dict({tuple(a - b for a, b in zip(e, shift)): c for e, c in items.items()})

    @classmethod
    def _raw(cls, registry, qctx, p, shift):
        obj = cls.__new__(cls)
        obj.registry, obj._qctx, obj._p, obj._shift = registry, qctx, p, shift
        return obj._normalized()

    def _normalized(self):
        if self._p.is_zero():
            self._shift = (0,) * len(self.registry)
            return self
        if any(self._shift):
            d = dict(self._p.to_dict())
            low = [min(e[i] for e in d) for i in range(len(self.registry))]
            low = [min(lo, -s) for lo, s in zip(low, self._shift)]
            if any(low):
                self._p = self._qctx.from_dict({tuple(a - b for a, b in zip(e, low)): c for e, c in d.items()})
                self._shift = tuple(s + lo for s, lo in zip(self._shift, low))
        return self

    def _check(self, other: "SparsePoly"):
        if not isinstance(other, SparsePoly) or other.registry != self.registry:
            raise RegistryMismatch("operands use different symbol registries")

    def terms(self) -> list[tuple[tuple[int, ...], flint.fmpq]]:
        out = [(tuple(a + b for a, b in zip(e, self._shift)), c) for e, c in self._p.to_dict().items()]
        out.sort(key=lambda ec: _grlex_key(ec[0]))
        return out

    def __len__(self):
        return len(self._p)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.registry == other.registry and self._shift == other._shift and self._p == other._p

    def __hash__(self):
        return hash((self.registry, tuple(self.terms())))

    def _lift(self, shift):
        mono = tuple(a - b for a, b in zip(self._shift, shift))
        if not any(mono):
            return self._p
        return self._p * self._qctx.term(exp_vec=mono, coeff=1)

    def __add__(self, other):
        self._check(other)
        s = tuple(min(a, b) for a, b in zip(self._shift, other._shift))
        return SparsePoly._raw(self.registry, self._qctx, self._lift(s) + other._lift(s), s)

    def __neg__(self):
        return SparsePoly._raw(self.registry, self._qctx, -self._p, self._shift)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        s = tuple(a + b for a, b in zip(self._shift, other._shift))
        return SparsePoly._raw(self.registry, self._qctx, self._p * other._p, s)

    def __pow__(self, k: int):
        k = int(k)
        if k >= 0:
            return SparsePoly._raw(self.registry, self._qctx, self._p ** k, tuple(s * k for s in self._shift))
        ts = self.terms()
        if len(ts) != 1:
            raise DivisionByZero("negative power of a non-monomial polynomial")
        (e, c), = ts
        return SparsePoly({tuple(v * k for v in e): c ** k}, self.registry)

    def __repr__(self):
        return f"SparsePoly({self.to_json()!r})"

    def to_json(self) -> list:
        return [[*e, _rat_str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data, registry: tuple[str, ...] = REGISTRY) -> "SparsePoly":
        return cls({tuple(row[:-1]): row[-1] for row in data}, registry)

    @classmethod
    def symbol(cls, name: str, registry: tuple[str, ...] = REGISTRY) -> "SparsePoly":
        e = [0] * len(registry)
        e[registry.index(name)] = 1
        return cls({tuple(e): 1}, registry)

    @classmethod
    def constant(cls, c, registry: tuple[str, ...] = REGISTRY) -> "SparsePoly":
        return cls({(0,) * len(registry): c}, registry)


def poly_arith(op: str, a: SparsePoly, b=None) -> SparsePoly:
    """Exact arithmetic on :class:`SparsePoly`; ``op`` in add/sub/mul/neg/pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


# --------------------------------------------------------------------------
# Coeff: rational functions

def _normalize_sign(n, d):
    if d.leading_coefficient() < 0:
        return -n, -d
    return n, d


def _reduce(n, d):
    if d.is_zero():
        raise DivisionByZero("zero denominator")
    if n.is_zero():
        return ZERO
    if _config["full_gcd"]:
        g = n.gcd(d)
    else:
        g = n.term_content().gcd(d.term_content())
    if not g.is_one():
        n = n / g
        d = d / g
    return _finish(n, d)


def _finish(n, d):
    n, d = _normalize_sign(n, d)
    if d.is_constant() and n.is_constant():
        return Coeff._numeric(flint.fmpq(int(n.leading_coefficient()), int(d.leading_coefficient())))
    budget = _BUDGET.get()
    if len(n) + len(d) > budget:
        raise BudgetExceeded(f"coefficient with {len(n) + len(d)} terms exceeds the budget of {budget}")
    c = Coeff.__new__(Coeff)
    c._v = None
    c._n = n
    c._d = d
    return c


class Coeff:
    """Exact rational function over the symbol registry (immutable)."""

    __slots__ = ("_v", "_n", "_d")

    def __init__(self, value=0):
        if isinstance(value, Coeff):
            self._v, self._n, self._d = value._v, value._n, value._d
            return
        self._v = _as_fmpq(value)
        self._n = self._d = None

    # construction helpers
    @staticmethod
    def _numeric(v: flint.fmpq) -> "Coeff":
        c = Coeff.__new__(Coeff)
        c._v = v
        c._n = c._d = None
        return c

    @staticmethod
    def symbol(name: str) -> "Coeff":
        if name not in _INDEX:
            raise RegistryMismatch(f"unknown symbol {name!r}")
        c = Coeff.__new__(Coeff)
        c._v = None
        c._n = _CTX.gens()[_INDEX[name]]
        c._d = _CTX.constant(1)
        return c

    @staticmethod
    def monomial(exps: Mapping[str, int], coeff=1) -> "Coeff":
        """Laurent monomial ``coeff * prod(name**e)``."""
        pos = [0] * _NV
        neg = [0] * _NV
        for name, e in exps.items():
            if e > 0:
                pos[_INDEX[name]] += e
            elif e < 0:
                neg[_INDEX[name]] -= e
        c = _as_fmpq(coeff)
        if c == 0:
            return ZERO
        if not any(pos) and not any(neg):
            return Coeff._numeric(c)
        n = _CTX.term(exp_vec=tuple(pos), coeff=int(c.p))
        d = _CTX.term(exp_vec=tuple(neg), coeff=int(c.q))
        return _finish(n, d)

    @staticmethod
    def from_polys(num: SparsePoly, den: SparsePoly) -> "Coeff":
        """Quotient of two registry polynomials."""
        if num.registry != REGISTRY or den.registry != REGISTRY:
            raise RegistryMismatch("coefficients live over the default registry")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        return _from_qparts(num._p, num._shift) / _from_qparts(den._p, den._shift)

    def _pair(self):
        if self._v is not None:
            return _CTX.constant(int(self._v.p)), _CTX.constant(int(self._v.q))
        return self._n, self._d

    # predicates
    def is_zero(self) -> bool:
        return self._v is not None and self._v == 0

    def is_numeric(self) -> bool:
        return self._v is not None

    def to_fmpq(self) -> flint.fmpq:
        if self._v is None:
            raise ValueError("coefficient is not a number")
        return self._v

    def to_fraction(self) -> Fraction:
        v = self.to_fmpq()
        return Fraction(int(v.p), int(v.q))

    def nterms(self) -> int:
        if self._v is not None:
            return 1
        return len(self._n) + len(self._d)

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._v is not None and o._v is not None:
            return Coeff._numeric(self._v + o._v)
        if self._v is not None and self._v == 0:
            return o
        if o._v is not None and o._v == 0:
            return self
        n1, d1 = self._pair()
        n2, d2 = o._pair()
        if d1 == d2:
            return _reduce(n1 + n2, d1)
        if d1.is_constant() or d2.is_constant():
            return _reduce(n1 * d2 + n2 * d1, d1 * d2)
        g = d1.gcd(d2)
        if g.is_one():
            return _reduce(n1 * d2 + n2 * d1, d1 * d2)
        a1 = d1 / g
        a2 = d2 / g
        return _reduce(n1 * a2 + n2 * a1, d1 * a2)

    __radd__ = __add__

    def __neg__(self):
        if self._v is not None:
            return Coeff._numeric(-self._v)
        c = Coeff.__new__(Coeff)
        c._v, c._n, c._d = None, -self._n, self._d
        return c

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._v is not None and o._v is not None:
            return Coeff._numeric(self._v * o._v)
        if self._v is not None:
            self, o = o, self
        if o._v is not None:
            v = o._v
            if v == 0:
                return ZERO
            if v == 1:
                return self
            n = self._n * int(v.p)
            d = self._d * int(v.q)
            g = n.term_content().gcd(d.term_content())
            if not g.is_one():
                n = n / g
                d = d / g
            return _finish(n, d)
        n1, d1 = self._n, self._d
        n2, d2 = o._n, o._d
        if _config["full_gcd"]:
            g1 = n1.gcd(d2)
            g2 = n2.gcd(d1)
            if not g1.is_one():
                n1 = n1 / g1
                d2 = d2 / g1
            if not g2.is_one():
                n2 = n2 / g2
                d1 = d1 / g2
            return _finish(n1 * n2, d1 * d2)
        return _reduce(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self) -> "Coeff":
        if self._v is not None:
            if self._v == 0:
                raise DivisionByZero("inverse of zero")
            return Coeff._numeric(1 / self._v)
        return _finish(self._d, self._n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("division by the zero function")
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return ONE
        if self._v is not None:
            return Coeff._numeric(self._v ** k)
        return _finish(self._n ** k, self._d ** k)

    # comparison
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._v is not None and o._v is not None:
            return self._v == o._v
        n1, d1 = self._pair()
        n2, d2 = o._pair()
        return n1 * d2 == n2 * d1

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._v is not None:
            return hash((int(self._v.p), int(self._v.q)))
        return hash((str(self._n), str(self._d)))

    def __bool__(self):
        return not self.is_zero()

    # views
    @property
    def num(self) -> SparsePoly:
        n, _ = self._pair()
        return SparsePoly(dict(n.to_dict()))

    @property
    def den(self) -> SparsePoly:
        _, d = self._pair()
        return SparsePoly(dict(d.to_dict()))

    def free_symbols(self) -> set[str]:
        if self._v is not None:
            return set()
        out = set()
        for poly in (self._n, self._d):
            for e in poly.monoms():
                out.update(REGISTRY[i] for i, v in enumerate(e) if v)
        return out

    def to_json(self) -> dict:
        n, d = self._pair()
        return {"num": _poly_json(n), "den": _poly_json(d)}

    @staticmethod
    def from_json(data: Mapping) -> "Coeff":
        return Coeff.from_polys(SparsePoly.from_json(data["num"]), SparsePoly.from_json(data["den"]))

    def __repr__(self):
        return f"Coeff({self})"

    def __str__(self):
        if self._v is not None:
            return str(self._v)
        ns = _poly_str(self._n)
        if self._d.is_one():
            return ns
        ds = _poly_str(self._d)
        if len(self._n) > 1:
            ns = f"({ns})"
        if len(self._d) > 1 or not self._d.is_constant() and self._d.leading_coefficient() != 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def evaluate(self, assignment: Mapping[str, object]) -> "Coeff":
        return evaluate(self, assignment)


def _poly_json(p) -> list:
    rows = [(tuple(int(v) for v in e), c) for e, c in p.to_dict().items()]
    rows.sort(key=lambda ec: _grlex_key(ec[0]))
    return [[*e, _rat_str(c)] for e, c in rows]


def _fmt_exp(base: str, e: int, root: int) -> str:
    f = Fraction(e, root)
    if f == 1:
        return base
    if f.denominator == 1:
        return f"{base}^{f.numerator}"
    return f"{base}^({f})"


def _poly_str(p) -> str:
    """Human-readable polynomial with q, t shown through their roots."""
    rows = [(tuple(int(v) for v in e), int(c)) for e, c in p.to_dict().items()]
    rows.sort(key=lambda ec: _grlex_key(ec[0]))
    parts = []
    for e, c in rows:
        factors = []
        for i, v in enumerate(e):
            if not v:
                continue
            name = REGISTRY[i]
            if name == "q4":
                factors.append(_fmt_exp("q", v, 4))
            elif name == "t4":
                factors.append(_fmt_exp("t", v, 4))
            else:
                factors.append(name if v == 1 else f"{name}^{v}")
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = mono if (mono and a == 1) else (f"{a}*{mono}" if mono else str(a))
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _from_qparts(p, shift) -> Coeff:
    """Coeff from an fmpq polynomial times a monomial with exponents ``shift``."""
    d = dict(p.to_dict())
    if not d:
        return ZERO
    den = 1
    for c in d.values():
        den = den * int(c.q) // _gcd(den, int(c.q))
    num = _CTX.from_dict({e: int(c * den) for e, c in d.items()})
    pos = tuple(max(s, 0) for s in shift)
    neg = tuple(max(-s, 0) for s in shift)
    if any(pos):
        num = num * _CTX.term(exp_vec=pos, coeff=1)
    return _reduce(num, _CTX.term(exp_vec=neg, coeff=den))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _coerce(x):
    if isinstance(x, Coeff):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
        return Coeff._numeric(_as_fmpq(x))
    return NotImplemented


ONE = Coeff._numeric(flint.fmpq(1))
ZERO = Coeff._numeric(flint.fmpq(0))


def frac_arith(op: str, a: Coeff, b: Coeff | None = None) -> Coeff:
    """Field operation ``op`` in add/sub/mul/div/inv on coefficients."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown field operation {op!r}")


def is_zero(c: Coeff) -> bool:
    return _coerce(c).is_zero()


def evaluate(c: Coeff, assignment: Mapping[str, object]) -> Coeff:
    """Substitute exact rationals for symbols.

    Keys are registry names or the aliases ``q``, ``t`` (fourth powers of the
    internal roots) and ``s_q``, ``s_t`` (their squares).  An alias can only be
    used when every exponent of the underlying root is divisible accordingly.
    """
    c = _coerce(c)
    if c._v is not None or not assignment:
        return c
    scale = {}
    values = {}
    for key, val in assignment.items():
        if key in _ALIASES:
            base, div = _ALIASES[key]
        elif key in _INDEX:
            base, div = key, 1
        else:
            raise RegistryMismatch(f"unknown symbol {key!r}")
        if base in scale and scale[base] != div:
            raise ValueError(f"conflicting assignments for {base}")
        scale[base] = div
        values[base] = _as_fmpq(val)
    parts = []
    for poly in (c._n, c._d):
        d = {}
        for e, coef in poly.to_dict().items():
            e = list(e)
            for base, div in scale.items():
                i = _INDEX[base]
                if e[i] % div:
                    raise ValueError(f"{base} appears with exponent {e[i]} not divisible by {div}")
                e[i] //= div
            d[tuple(e)] = d.get(tuple(e), 0) + int(coef)
        qp = _QCTX.from_dict(d)
        parts.append(qp.subs({b: values[b] for b in values}))
    nq, dq = parts
    if dq.is_zero():
        raise EvaluationPole("denominator vanishes under the assignment")
    return _from_qparts(nq, _ZERO_EXP) / _from_qparts(dq, _ZERO_EXP)


# --------------------------------------------------------------------------
# parameter specialisation

class Params:
    """Assignment of some registry symbols to exact rationals.

    The empty assignment is the fully symbolic mode.
    """

    __slots__ = ("values", "seed", "key", "_cache")

    def __init__(self, values: Mapping[str, object] | None = None, seed: int | None = None):
        vals = {}
        for k, v in (values or {}).items():
            if k not in _INDEX:
                raise RegistryMismatch(f"unknown symbol {k!r}")
            vals[k] = _as_fmpq(v)
        self.values = dict(sorted(vals.items()))
        self.seed = seed
        self.key = tuple((k, int(v.p), int(v.q)) for k, v in self.values.items())
        self._cache = {}

    def __repr__(self):
        if not self.values:
            return "Params(symbolic)"
        return f"Params(seed={self.seed}, {', '.join(f'{k}={v}' for k, v in self.values.items())})"

    @property
    def is_symbolic(self) -> bool:
        return not self.values

    def sym(self, name: str) -> Coeff:
        c = self._cache.get(name)
        if c is None:
            v = self.values.get(name)
            c = Coeff._numeric(v) if v is not None else Coeff.symbol(name)
            self._cache[name] = c
        return c

    @contextlib.contextmanager
    def active(self):
        token = _PARAMS.set(self)
        try:
            yield self
        finally:
            _PARAMS.reset(token)

    def to_json(self) -> dict:
        return {k: _rat_str(v) for k, v in self.values.items()}

    @classmethod
    def random(cls, seed: int, degree: int, keep: Iterable[str] = ("a", "b", "w", "z", "x", "y", "c"),
               symbols: Iterable[str] | None = None) -> "Params":
        """Draw a non-resonant random point.

        Numerators and denominators are integers in [2, 2**16].  The roots of
        q and t avoid q = t, q = 1, t = 1, q t = 1 and small relations
        q^a t^b = 1; weight ratios avoid q^a t^b for |a|, |b| <= degree + 1.
        """
        rng = random.Random(seed)
        keep = set(keep)
        names = [n for n in (symbols if symbols is not None else REGISTRY) if n not in keep]
        bound = degree + 2

        def draw():
            while True:
                a, b = rng.randint(2, 2 ** 16), rng.randint(2, 2 ** 16)
                if a != b:
                    return Fraction(a, b)

        def qt_monos(qv, tv):
            out = set()
            for i in range(-bound, bound + 1):
                for j in range(-bound, bound + 1):
                    out.add(qv ** i * tv ** j)
            return out

        while True:
            q4v, t4v = draw(), draw()
            qv, tv = q4v ** 4, t4v ** 4
            monos = qt_monos(qv, tv)
            bad = any(qv ** i * tv ** j == 1 for i in range(-bound, bound + 1)
                      for j in range(-bound, bound + 1) if (i, j) != (0, 0))
            if not bad:
                break
        vals = {"q4": q4v, "t4": t4v}
        weights = {}
        for name in names:
            if name in vals:
                continue
            while True:
                v = draw()
                group = name[0] if name[0] in "uv" and name[1:].isdigit() else None
                ok = True
                if group:
                    for other, ov in weights.items():
                        if other[0] == group and (v / ov) in monos:
                            ok = False
                            break
                if ok:
                    break
            weights[name] = v
        vals.update(weights)
        return cls(vals, seed=seed)


_SYMBOLIC = Params()
_PARAMS: contextvars.ContextVar[Params] = contextvars.ContextVar("gmacdonald_params", default=_SYMBOLIC)


def current_params() -> Params:
    return _PARAMS.get()


def sym(name: str) -> Coeff:
    """Registry symbol under the active specialisation."""
    return _PARAMS.get().sym(name)


def memo(fn):
    """Cache a pure function of hashable arguments per active specialisation."""
    cache = {}

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        key = (_PARAMS.get().key, args, tuple(sorted(kwargs.items())) if kwargs else ())
        try:
            return cache[key]
        except KeyError:
            val = fn(*args, **kwargs)
            cache[key] = val
            return val

    wrapper.cache = cache
    return wrapper


def _cached_param(name):
    def fn():
        p = _PARAMS.get()
        c = p._cache.get(name)
        if c is None:
            c = _DERIVED[name](p)
            p._cache[name] = c
        return c
    fn.__name__ = name
    return fn


_DERIVED = {
    "q": lambda p: p.sym("q4") ** 4,
    "t": lambda p: p.sym("t4") ** 4,
    "gamma": lambda p: p.sym("t4") ** 2 / p.sym("q4") ** 2,
    "gamma_half": lambda p: p.sym("t4") / p.sym("q4"),
    "q1": lambda p: p.sym("t4") ** -4,
    "q2": lambda p: p.sym("q4") ** 4,
    "q3": lambda p: p.sym("t4") ** 4 / p.sym("q4") ** 4,
}

q = _cached_param("q")
t = _cached_param("t")
gamma = _cached_param("gamma")
gamma_half = _cached_param("gamma_half")
q1 = _cached_param("q1")
q2 = _cached_param("q2")
q3 = _cached_param("q3")
