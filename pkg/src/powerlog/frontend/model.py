"""Polynomials in ``x, y0, ..., yn`` and the problem record."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact import QQ, GaussianRational, RatFunc, format_scalar, to_scalar

__all__ = ["DeltaPolynomial", "AlgebraicODE", "Problem", "format_monomial"]


class DeltaPolynomial:
    """Sparse polynomial ``sum c * x**mu * y0**q0 * ... * yn**qn``.

    ``terms`` maps ``(mu, q)`` with ``q`` an ``(n+1)``-tuple to a nonzero
    scalar.  Here ``y_j`` stands for ``delta**j y``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        if n < 0:
            raise ValueError("order must be nonnegative")
        self.n = n
        clean = {}
        for (mu, q), c in (terms or {}).items():
            q = tuple(q)
            if len(q) != n + 1:
                raise ValueError(f"exponent vector {q} does not match order {n}")
            if mu < 0 or any(e < 0 for e in q):
                raise ValueError("negative exponent in monomial")
            c = to_scalar(c)
            if c:
                key = (mu, q)
                c = clean.get(key, QQ(0)) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.terms = clean

    def __eq__(self, other):
        if not isinstance(other, DeltaPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, {format_delta_poly(self)!r})"

    def __str__(self):
        return format_delta_poly(self)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def x_degree(self) -> int:
        return max((mu for mu, _ in self.terms), default=0)

    def y_degree(self) -> int:
        return max((sum(q) for _, q in self.terms), default=0)

    def involves_unknown(self) -> bool:
        return any(any(q) for _, q in self.terms)

    def partial(self, j: int) -> "DeltaPolynomial":
        """Derivative with respect to ``y_j``."""
        if not 0 <= j <= self.n:
            raise IndexError(f"no variable y{j} in an order-{self.n} polynomial")
        out = {}
        for (mu, q), c in self.terms.items():
            if q[j]:
                q2 = list(q)
                q2[j] -= 1
                out[(mu, tuple(q2))] = c * q[j]
        return DeltaPolynomial(self.n, out)

    def _lift(self, other):
        if not isinstance(other, DeltaPolynomial):
            return DeltaPolynomial(self.n, {(0, (0,) * (self.n + 1)): other})
        if other.n != self.n:
            raise ValueError("order mismatch")
        return other

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, QQ(0)) + c
        return DeltaPolynomial(self.n, terms)

    def __neg__(self):
        return DeltaPolynomial(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        terms = {}
        for (m1, q1), c1 in self.terms.items():
            for (m2, q2), c2 in other.terms.items():
                key = (m1 + m2, tuple(a + b for a, b in zip(q1, q2)))
                terms[key] = terms.get(key, QQ(0)) + c1 * c2
        return DeltaPolynomial(self.n, terms)


class AlgebraicODE(DeltaPolynomial):
    """``F(x, y, delta y, ..., delta^n y)`` with ``F`` actually involving ``y``."""

    __slots__ = ()

    def __init__(self, n: int, terms=None):
        super().__init__(n, terms)
        if not self.involves_unknown():
            raise ValueError("equation does not involve the unknown function")

    @classmethod
    def from_poly(cls, p: DeltaPolynomial) -> "AlgebraicODE":
        return cls(p.n, p.terms)


def format_monomial(mu: int, q) -> str:
    factors = []
    if mu:
        factors.append("x" if mu == 1 else f"x^{mu}")
    for j, e in enumerate(q):
        if e:
            factors.append(f"y{j}" if e == 1 else f"y{j}^{e}")
    return "*".join(factors)


def format_delta_poly(p: DeltaPolynomial) -> str:
    """Canonical printing: monomials sorted by ``(mu, q)``, scalar first."""
    if not p.terms:
        return "0"
    parts = []
    for (mu, q), c in p.sorted_terms():
        mono = format_monomial(mu, q)
        if not mono:
            parts.append(format_scalar(c))
        elif isinstance(c, GaussianRational):
            parts.append(f"({format_scalar(c)})*{mono}")
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{format_scalar(c)}*{mono}")
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


@dataclass(frozen=True)
class Problem:
    """An equation together with a seed prefix and run options."""

    ode: AlgebraicODE
    seed: tuple  # ((k, RatFunc), ...) sorted by k
    expand_to: int
    check_depth: int
    precision_bits: int = 128
    sector: object = None
    name: str = ""
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.ode.n

    def seed_dict(self) -> dict[int, RatFunc]:
        return {k: r for k, r in self.seed if r}

    @property
    def seed_end(self) -> int:
        """Largest exponent covered by the seed."""
        return max((k for k, _ in self.seed), default=-1)
