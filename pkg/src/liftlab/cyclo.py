"""Exact arithmetic in cyclotomic fields Q_n.

An element is stored against its minimal conductor n, as the coefficient
vector of 1, z, ..., z^(phi(n)-1) after reduction modulo the n-th cyclotomic
polynomial, where z is a fixed primitive n-th root of unity.  That form is
canonical: two equal field elements have identical stored data, so equality
and hashing are structural.  Coefficients are arbitrary-precision rationals;
there is no floating point anywhere in the arithmetic (``approx`` exists for
report rendering only).

Conductor promotion uses the lcm; every constructed value is demoted back to
its minimal conductor, one prime at a time, by exact linear solves against
cached subfield embeddings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .exactla import LinearSolver

_ZERO = Fraction(0)


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Integer coefficients of the monic n-th cyclotomic polynomial,
    low degree first, computed by exact division of x^n - 1."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            den = cyclotomic_polynomial(d)
            quo = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for i in range(len(quo) - 1, -1, -1):
                c = rem[i + len(den) - 1]
                quo[i] = c
                if c:
                    for j, dv in enumerate(den):
                        rem[i + j] -= c * dv
            assert not any(rem[:len(den) - 1])
            num = quo
    return tuple(num)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_row(n: int, e: int):
    """Coordinates of z_n^e in the reduced power basis (integer entries)."""
    phi = _phi(n)
    e %= n
    if e < phi:
        return tuple(1 if i == e else 0 for i in range(phi))
    prev = _power_row(n, e - 1)
    top = prev[-1]
    shifted = [0] + list(prev[:-1])
    if top:
        low = cyclotomic_polynomial(n)[:phi]  # x^phi = -(low-degree part)
        shifted = [s - top * c for s, c in zip(shifted, low)]
    return tuple(shifted)


@lru_cache(maxsize=None)
def _subfield_solver(n: int, m: int) -> LinearSolver:
    """Solver expressing elements of Q_n in the z_m power basis (m | n)."""
    t = n // m
    columns = [_power_row(n, (j * t) % n) for j in range(_phi(m))]
    return LinearSolver(columns)


@dataclass(frozen=True)
class Cyclotomic:
    """An element of a cyclotomic field in canonical minimal-conductor form."""

    conductor: int
    coeffs: tuple

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _RAT_ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _RAT_ONE

    # -- arithmetic --------------------------------------------------------

    def _dense(self, n):
        """Exponent-indexed rational vector of length n inside Q_n."""
        t = n // self.conductor
        out = [_ZERO] * n
        for e, c in enumerate(self.coeffs):
            if c:
                out[(e * t) % n] += c
        return out

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return Cyclotomic(1, (self.coeffs[0] + other.coeffs[0],))
        n = math.lcm(self.conductor, other.conductor)
        dense = self._dense(n)
        for e, c in enumerate(other._dense(n)):
            if c:
                dense[e] += c
        return _build(n, dense)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.conductor == 1:
            q = other.coeffs[0]
            if not q:
                return _RAT_ZERO
            return Cyclotomic(self.conductor, tuple(c * q for c in self.coeffs))
        if self.conductor == 1:
            return other * self
        n = math.lcm(self.conductor, other.conductor)
        a = self._dense(n)
        b = other._dense(n)
        dense = [_ZERO] * n
        for e1, c1 in enumerate(a):
            if c1:
                for e2, c2 in enumerate(b):
                    if c2:
                        dense[(e1 + e2) % n] += c1 * c2
        return _build(n, dense)

    __rmul__ = __mul__

    # -- field structure ---------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the automorphism z_n -> z_n^k (k invertible mod n)."""
        n = self.conductor
        if n == 1:
            return self
        if math.gcd(k, n) != 1:
            raise InputError(f"exponent {k} is not invertible mod {n}")
        dense = [_ZERO] * n
        for e, c in enumerate(self.coeffs):
            if c:
                dense[(e * k) % n] += c
        return _build(n, dense)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    def as_rational(self):
        """The Fraction value, or None when the element is irrational."""
        return self.coeffs[0] if self.conductor == 1 else None

    def coords_at(self, n: int):
        """Reduced power-basis coordinates inside Q_n (conductor must divide n)."""
        if n % self.conductor:
            raise InputError(f"conductor {self.conductor} does not divide {n}")
        t = n // self.conductor
        vec = [_ZERO] * _phi(n)
        for e, c in enumerate(self.coeffs):
            if c:
                for i, r in enumerate(_power_row(n, (e * t) % n)):
                    if r:
                        vec[i] += c * r
        return tuple(vec)

    def is_zero(self) -> bool:
        return self.conductor == 1 and not self.coeffs[0]

    # -- rendering ---------------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form: plain rational, or c0 + c1*z(n)^1 + ..."""
        if self.conductor == 1:
            return str(self.coeffs[0])
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z({self.conductor})^{e}")
        return " + ".join(parts)

    def approx(self) -> complex:
        """Float approximation; report rendering only, never used in the core."""
        n = self.conductor
        return sum(complex(c) * _unit_root_approx(n, e)
                   for e, c in enumerate(self.coeffs) if c)

    def __str__(self):
        return self.serialize()


@lru_cache(maxsize=None)
def _unit_root_approx(n, e):
    import cmath
    return cmath.exp(2j * cmath.pi * e / n)


_RAT_ZERO = Cyclotomic(1, (Fraction(0),))
_RAT_ONE = Cyclotomic(1, (Fraction(1),))


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic(1, (Fraction(x),))
    return NotImplemented


def _build(n: int, dense) -> Cyclotomic:
    """Reduce an exponent-indexed vector mod the cyclotomic polynomial and
    demote to the minimal conductor."""
    phi = _phi(n)
    vec = list(dense[:phi]) + [_ZERO] * max(0, phi - len(dense))
    for e in range(phi, len(dense)):
        c = dense[e]
        if c:
            for i, r in enumerate(_power_row(n, e)):
                if r:
                    vec[i] += c * r
    while n > 1:
        for q in _prime_factors(n):
            sol = _subfield_solver(n, n // q).solve(vec)
            if sol is not None:
                n //= q
                vec = sol
                break
        else:
            break
    return Cyclotomic(n, tuple(vec))


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """z_n^k in canonical form."""
    if n < 1:
        raise InputError("root_of_unity needs n >= 1")
    dense = [_ZERO] * n
    dense[k % n] = Fraction(1)
    return _build(n, dense)


def from_root_sum(n: int, coeffs) -> Cyclotomic:
    """Sum of c_k * z_n^k for an exponent-indexed coefficient sequence."""
    if n < 1:
        raise InputError("from_root_sum needs n >= 1")
    dense = [_ZERO] * n
    for e, c in enumerate(coeffs):
        if c:
            dense[e % n] += Fraction(c)
    return _build(n, dense)


@dataclass(frozen=True)
class GaloisAutomorphism:
    """z_n -> z_n^k with gcd(k, n) = 1; composition multiplies the exponents."""

    conductor: int
    exponent: int

    def __post_init__(self):
        if math.gcd(self.exponent, self.conductor) != 1:
            raise InputError(
                f"exponent {self.exponent} is not invertible mod {self.conductor}")

    def apply(self, a: Cyclotomic) -> Cyclotomic:
        if self.conductor % a.conductor:
            raise InputError("value does not lie in the automorphism's field")
        return a.galois(self.exponent % a.conductor or a.conductor)

    def compose(self, other: "GaloisAutomorphism") -> "GaloisAutomorphism":
        if self.conductor != other.conductor:
            raise InputError("automorphisms of different fields")
        return GaloisAutomorphism(
            self.conductor, (self.exponent * other.exponent) % self.conductor)


def is_p_rational(values, p: int) -> bool:
    """True iff all values are fixed by Gal(Q_m / Q_{m_p'}), i.e. lie in the
    cyclotomic field whose conductor is prime to p."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"{p} is not prime")
    values = list(values)
    m = 1
    for v in values:
        m = math.lcm(m, v.conductor)
    mp = m
    while mp % p == 0:
        mp //= p
    for k in range(1, m + 1, mp):
        if math.gcd(k, m) != 1:
            continue
        for v in values:
            kv = k % v.conductor
            if v.galois(kv if kv else v.conductor) != v:
                return False
    return True
