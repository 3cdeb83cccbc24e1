"""Exact arithmetic in Z[1/N], factorization, m-adic valuations and norms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "FACTORIZE_LIMIT",
    "DomainError",
    "Factorization",
    "NRational",
    "NotAUnitError",
    "factorize",
    "n_adic_norm",
    "n_adic_valuation",
    "p_adic_valuation",
    "primitive_root",
    "reduce_mod",
    "strip_primes",
]

# Trial division is only sensible for small inputs.
FACTORIZE_LIMIT = 2**64


class NotAUnitError(ArithmeticError):
    """Raised when inverting an element that is not a unit of Z[1/N]."""


class DomainError(ValueError):
    """Raised when a value lies outside the ring an operation is defined on."""


@dataclass(frozen=True)
class Factorization:
    base: int
    primes: tuple[tuple[int, int], ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.primes)

    def exponent(self, p: int) -> int:
        for q, e in self.primes:
            if q == p:
                return e
        return 0


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division.

    Inputs must satisfy ``2 <= n < FACTORIZE_LIMIT``.

    >>> factorize(60).primes
    ((2, 2), (3, 1), (5, 1))
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"factorize needs an integer >= 2, got {n!r}")
    if n >= FACTORIZE_LIMIT:
        raise ValueError(f"{n} exceeds the trial-division limit 2**64")
    primes = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            primes.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        primes.append((m, 1))
    return Factorization(n, tuple(primes))


def strip_primes(d: int, n: int) -> int:
    """Remove from ``d`` every prime factor it shares with ``n``."""
    g = math.gcd(d, n)
    while g > 1:
        while d % g == 0:
            d //= g
        g = math.gcd(d, n)
    return d


def _in_localization(x: Fraction, n: int) -> bool:
    return strip_primes(x.denominator, n) == 1


class NRational:
    """An element of Z[1/N]: a reduced fraction whose denominator divides a power of N.

    Instances are immutable. Arithmetic between two NRationals requires equal
    contexts; plain integers are coerced into the context of the other operand.
    """

    __slots__ = ("value", "n")

    def __init__(self, value: int | Fraction | str | NRational, n: int):
        if isinstance(value, NRational):
            value = value.value
        value = Fraction(value)
        if not isinstance(n, int) or n < 2:
            raise ValueError(f"context N must be an integer >= 2, got {n!r}")
        if not _in_localization(value, n):
            raise DomainError(f"{value} is not in Z[1/{n}]")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "n", n)

    @classmethod
    def _raw(cls, value: Fraction, n: int) -> NRational:
        # Skips validation: callers guarantee closure of Z[1/N].
        obj = object.__new__(cls)
        object.__setattr__(obj, "value", value)
        object.__setattr__(obj, "n", n)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("NRational is immutable")

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, NRational):
            if other.n != self.n:
                raise ValueError(f"context mismatch: Z[1/{self.n}] vs Z[1/{other.n}]")
            return other.value
        if isinstance(other, int):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NRational._raw(self.value + o, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NRational._raw(self.value - o, self.n)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NRational._raw(o - self.value, self.n)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NRational._raw(self.value * o, self.n)

    __rmul__ = __mul__

    def __neg__(self) -> NRational:
        return NRational._raw(-self.value, self.n)

    def __abs__(self) -> NRational:
        return NRational._raw(abs(self.value), self.n)

    def is_unit(self) -> bool:
        return self.value != 0 and strip_primes(abs(self.value.numerator), self.n) == 1

    def inverse(self) -> NRational:
        """Multiplicative inverse; only units (signed products of primes of N) qualify."""
        if not self.is_unit():
            raise NotAUnitError(f"{self} is not a unit of Z[1/{self.n}]")
        return NRational._raw(1 / self.value, self.n)

    def __truediv__(self, other):
        o = other if isinstance(other, NRational) else NRational(other, self.n)
        if o.n != self.n:
            raise ValueError(f"context mismatch: Z[1/{self.n}] vs Z[1/{o.n}]")
        return self * o.inverse()

    def __pow__(self, k: int) -> NRational:
        if k < 0:
            return self.inverse() ** (-k)
        return NRational._raw(self.value**k, self.n)

    def __eq__(self, other):
        if isinstance(other, NRational):
            return self.n == other.n and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        return self.value < (other.value if isinstance(other, NRational) else other)

    def __le__(self, other):
        return self.value <= (other.value if isinstance(other, NRational) else other)

    def __gt__(self, other):
        return self.value > (other.value if isinstance(other, NRational) else other)

    def __ge__(self, other):
        return self.value >= (other.value if isinstance(other, NRational) else other)

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return f"{self.value.numerator}/{self.value.denominator}"

    def __repr__(self):
        return f"NRational({str(self)!r}, {self.n})"

    @classmethod
    def parse(cls, text: str, n: int) -> NRational:
        return cls(Fraction(text.strip()), n)


def _as_fraction(x, m: int) -> Fraction:
    if isinstance(x, NRational):
        return x.value
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        f = Fraction(x)
        if not _in_localization(f, m):
            raise DomainError(f"{f} is not in Z[1/{m}]")
        return f
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def p_adic_valuation(x: int | Fraction, p: int) -> int | float:
    """Ordinary p-adic valuation of a rational; ``math.inf`` at zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def n_adic_valuation(x, m: int) -> int | float:
    """The m-adic valuation: the largest t with x in m**t times the m-adic integers.

    For composite ``m`` this is ``min(floor(v_p(x) / v_p(m)))`` over primes
    ``p | m``. Zero has valuation ``math.inf``.

    ``x`` may be an NRational of any context (primes outside ``m`` are
    m-adic units) or a plain int/Fraction, which must then lie in Z[1/m].
    """
    fac = factorize(m)
    x = _as_fraction(x, m)
    if x == 0:
        return math.inf
    return min(p_adic_valuation(x, p) // e for p, e in fac.primes)


def n_adic_norm(x, m: int) -> Fraction:
    """``|x|_m = m ** -v_m(x)`` as an exact fraction, with ``|0|_m = 0``."""
    v = n_adic_valuation(x, m)
    if v == math.inf:
        return Fraction(0)
    return Fraction(m) ** (-v)


def reduce_mod(x: Fraction, modulus: Fraction, n: int) -> Fraction:
    """Canonical representative of the ball ``x + modulus * Z_n``.

    ``modulus`` must be a positive rational built from primes of ``n`` only;
    ``x`` may carry denominator primes coprime to ``n`` (they are n-adic units).
    The result ``r`` lies in Z[1/n] with ``0 <= r < modulus``.
    """
    x = Fraction(x)
    modulus = Fraction(modulus)
    if modulus <= 0 or not (
        strip_primes(modulus.numerator, n) == 1 and strip_primes(modulus.denominator, n) == 1
    ):
        raise DomainError(f"modulus {modulus} is not a positive power product of primes of {n}")
    den_other = strip_primes(x.denominator, n)
    den_n = x.denominator // den_other
    scale = math.lcm(den_n, modulus.denominator)
    k = modulus.numerator * (scale // modulus.denominator)
    a = x.numerator * (scale // den_n)
    r = (a * pow(den_other, -1, k)) % k if k > 1 else 0
    return Fraction(r, scale)


def primitive_root(n: int) -> tuple[int, int]:
    """Return ``(r, a)`` with ``r ** a == n`` and ``a`` maximal, so ``r`` is not a proper power."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"primitive_root needs an integer >= 2, got {n!r}")
    fac = factorize(n)
    a = 0
    for _, e in fac.primes:
        a = math.gcd(a, e)
    r = 1
    for p, e in fac.primes:
        r *= p ** (e // a)
    return r, a
