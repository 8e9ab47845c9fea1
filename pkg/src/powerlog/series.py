"""Truncated power-log series ``sum_k R_k(ln x) x**k`` and the delta calculus.

A coefficient ``R(t)`` stands for ``R(ln x)``.  With ``delta = x d/dx`` the
term ``R(ln x) x**k`` maps to ``x**k ((k + d/dt) R)(ln x)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import RatFunc
from .frontend.model import DeltaPolynomial

__all__ = [
    "PowerLogSeries", "JetVector", "AllZero", "delta", "jet", "substitute",
    "partial_series", "valuation",
]


class PowerLogSeries:
    """Series known exactly modulo ``x**(trunc+1)``; zero coefficients are not stored."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc: int = 0):
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        clean = {}
        for k, r in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative exponent in a power-log series")
            if not isinstance(r, RatFunc):
                r = RatFunc.const(r)
            if k <= trunc and r:
                clean[k] = r
        self.coeffs = clean
        self.trunc = trunc

    @classmethod
    def _raw(cls, coeffs: dict, trunc: int) -> "PowerLogSeries":
        s = object.__new__(cls)
        s.coeffs, s.trunc = coeffs, trunc
        return s

    @classmethod
    def zero(cls, trunc: int) -> "PowerLogSeries":
        return cls._raw({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "PowerLogSeries":
        return cls._raw({0: RatFunc.const(1)}, trunc)

    def __getitem__(self, k: int) -> RatFunc:
        return self.coeffs.get(k, _ZERO)

    def __eq__(self, other):
        if not isinstance(other, PowerLogSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {r}" for k, r in sorted(self.coeffs.items()))
        return f"PowerLogSeries({{{body}}}, trunc={self.trunc})"

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, n: int) -> "PowerLogSeries":
        n = min(n, self.trunc)
        return PowerLogSeries._raw({k: r for k, r in self.coeffs.items() if k <= n}, n)

    def with_trunc(self, n: int) -> "PowerLogSeries":
        """Reinterpret the stored terms at another truncation order (no certification)."""
        return PowerLogSeries._raw({k: r for k, r in self.coeffs.items() if k <= n}, n)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        n = min(self.trunc, other.trunc)
        out = {k: r for k, r in self.coeffs.items() if k <= n}
        for k, r in other.coeffs.items():
            if k > n:
                continue
            s = out.get(k)
            s = r if s is None else s + r
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PowerLogSeries._raw(out, n)

    def __neg__(self):
        return PowerLogSeries._raw({k: -r for k, r in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PowerLogSeries":
        if isinstance(c, RatFunc):
            if not c:
                return PowerLogSeries.zero(self.trunc)
            return PowerLogSeries._raw({k: r * c for k, r in self.coeffs.items()}, self.trunc)
        c = RatFunc.const(c)
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, PowerLogSeries):
            return self.scale(other)
        n = min(self.trunc, other.trunc)
        out: dict[int, RatFunc] = {}
        b_items = sorted(other.coeffs.items())
        for i, a in self.coeffs.items():
            if i > n:
                continue
            for j, b in b_items:
                k = i + j
                if k > n:
                    break
                p = a * b
                s = out.get(k)
                out[k] = p if s is None else s + p
        return PowerLogSeries._raw({k: r for k, r in out.items() if r}, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a series")
        result = PowerLogSeries.one(self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_x(self, mu: int) -> "PowerLogSeries":
        """Multiply by ``x**mu``; the truncation order is unchanged."""
        if mu == 0:
            return self
        return PowerLogSeries._raw(
            {k + mu: r for k, r in self.coeffs.items() if k + mu <= self.trunc}, self.trunc)


_ZERO = RatFunc.const(0)


@dataclass(frozen=True)
class AllZero:
    """Valuation marker for a series with no nonzero coefficient up to ``trunc``."""

    trunc: int

    def __str__(self):
        return f"all-zero up to {self.trunc}"


def valuation(s: PowerLogSeries):
    """Smallest exponent with a nonzero coefficient, or :class:`AllZero`."""
    if not s.coeffs:
        return AllZero(s.trunc)
    return min(s.coeffs)


def _delta_coeff(r: RatFunc, lam) -> RatFunc:
    d = r.derivative()
    return r.scale(lam) + d if lam else d


def delta(s: PowerLogSeries, shift: int = 0) -> PowerLogSeries:
    """``(delta + shift) s``, acting on ``R_k`` as ``(shift + k + d/dt)``."""
    out = {}
    for k, r in s.coeffs.items():
        v = _delta_coeff(r, shift + k)
        if v:
            out[k] = v
    return PowerLogSeries._raw(out, s.trunc)


class JetVector(tuple):
    """``(s, (delta+l) s, ..., (delta+l)^n s)``; all entries share one truncation order."""

    def __new__(cls, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a jet has at least one entry")
        if len({e.trunc for e in entries}) != 1:
            raise ValueError("jet entries must share the truncation order")
        return super().__new__(cls, entries)

    @property
    def n(self) -> int:
        return len(self) - 1

    @property
    def trunc(self) -> int:
        return self[0].trunc


def jet(s: PowerLogSeries, n: int, shift: int = 0) -> JetVector:
    if n < 0:
        raise ValueError("jet order must be nonnegative")
    entries = [s]
    for _ in range(n):
        entries.append(delta(entries[-1], shift))
    return JetVector(entries)


def substitute(F: DeltaPolynomial, jets: JetVector) -> PowerLogSeries:
    """``F(x, jets[0], ..., jets[n])`` modulo ``x**(trunc+1)``."""
    if len(jets) != F.n + 1:
        raise ValueError(f"expected a jet of length {F.n + 1}, got {len(jets)}")
    N = jets.trunc
    powers: list[dict[int, PowerLogSeries]] = [{1: e} for e in jets]

    def power(j, e):
        cache = powers[j]
        if e not in cache:
            # build from the largest cached power below e
            b = max(k for k in cache if k < e)
            cache[e] = power(j, b) * power(j, e - b)
        return cache[e]

    total = PowerLogSeries.zero(N)
    for (mu, q), c in F.sorted_terms():
        if mu > N:
            continue
        term = None
        for j, e in enumerate(q):
            if e:
                p = power(j, e)
                term = p if term is None else term * p
        if term is None:
            term = PowerLogSeries.one(N)
        total = total + term.shift_x(mu).scale(c)
    return total


def partial_series(F: DeltaPolynomial, j: int, jets: JetVector) -> PowerLogSeries:
    """``dF/dy_j`` evaluated on the jets."""
    return substitute(F.partial(j), jets)
