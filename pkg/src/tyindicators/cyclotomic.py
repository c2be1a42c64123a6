"""Exact arithmetic in cyclotomic fields.

Elements of Q(zeta_L) are stored as an integer numerator vector in the power
basis 1, z, ..., z^(phi(L)-1) (reduced modulo the L-th cyclotomic polynomial)
plus a positive common denominator.  The representation is canonical for a
fixed conductor, so equal elements at the same conductor compare equal
structurally.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def divisors(n: int) -> Tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with increasing p."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def _poly_divexact(num: List[int], den: Sequence[int]) -> List[int]:
    """Exact division of integer polynomials (low degree first), ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(coeffs: List[int], L: int) -> List[int]:
    """Reduce an integer coefficient list modulo Phi_L in place; returns phi(L) entries."""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            base = i - deg
            for j in range(deg):
                pj = phi[j]
                if pj:
                    coeffs[base + j] -= c * pj
            coeffs[i] = 0
    if len(coeffs) < deg:
        coeffs.extend([0] * (deg - len(coeffs)))
    del coeffs[deg:]
    return coeffs


@lru_cache(maxsize=4096)
def _root_vector(L: int, k: int) -> Tuple[int, ...]:
    k %= L
    vec = [0] * (k + 1)
    vec[k] = 1
    return tuple(_reduce(vec, L))


@lru_cache(maxsize=None)
def _units(L: int) -> Tuple[int, ...]:
    return tuple(s for s in range(1, L + 1) if math.gcd(s, L) == 1)


class Cyclotomic:
    """An element of Q(zeta_L), immutable."""

    __slots__ = ("conductor", "num", "den", "_reduced")

    def __init__(self, conductor: int, coeffs: Iterable[Rational] = ()):
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [int(f * den) for f in fracs]
        self._set(conductor, _reduce(nums, conductor), den)

    def _set(self, L: int, num: List[int], den: int) -> None:
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.conductor = L
        self.num = tuple(num)
        self.den = den
        self._reduced = None

    @classmethod
    def _raw(cls, L: int, num: List[int], den: int = 1) -> "Cyclotomic":
        obj = cls.__new__(cls)
        if den < 0:
            num, den = [-c for c in num], -den
        obj._set(L, num, den)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q: Rational) -> "Cyclotomic":
        q = Fraction(q)
        return cls._raw(1, [q.numerator], q.denominator)

    @classmethod
    def zeta(cls, L: int, k: int = 1) -> "Cyclotomic":
        """The root of unity exp(2*pi*i*k/L)."""
        return cls._raw(L, list(_root_vector(L, k)))

    @classmethod
    def from_counts(cls, L: int, counts: Sequence[Rational]) -> "Cyclotomic":
        """Sum of ``counts[j] * zeta_L**j`` for j < L."""
        if all(isinstance(c, int) for c in counts):
            vec = list(counts)
            return cls._raw(L, _reduce(vec, L))
        return cls(L, counts)

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- embedding --------------------------------------------------------

    def embed(self, M: int) -> "Cyclotomic":
        """The same element viewed in Q(zeta_M); ``M`` must be a multiple of the conductor."""
        L = self.conductor
        if M == L:
            return self
        if M % L:
            raise ValueError(f"cannot embed conductor {L} into {M}")
        step = M // L
        full = [0] * ((len(self.num) - 1) * step + 1)
        for j, c in enumerate(self.num):
            full[j * step] = c
        return Cyclotomic._raw(M, _reduce(full, M), self.den)

    def _common(self, other: "Cyclotomic") -> Tuple["Cyclotomic", "Cyclotomic"]:
        if self.conductor == other.conductor:
            return self, other
        M = math.lcm(self.conductor, other.conductor)
        return self.embed(M), other.embed(M)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return Cyclotomic._raw(a.conductor, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self.conductor, [-c for c in self.num], self.den)

    def __sub__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._raw(
                self.conductor, [c * q.numerator for c in self.num], self.den * q.denominator
            )
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        if a.conductor == 1:
            return b * Fraction(a.num[0], a.den)
        if b.conductor == 1:
            return a * Fraction(b.num[0], b.den)
        x, y = a.num, b.num
        prod = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] += xi * yj
        return Cyclotomic._raw(a.conductor, _reduce(prod, a.conductor), a.den * b.den)

    __rmul__ = __mul__

    def times_root(self, M: int, k: int) -> "Cyclotomic":
        """Multiply by zeta_M**k without a general product."""
        L = math.lcm(self.conductor, M)
        a = self.embed(L)
        shift = (k * (L // M)) % L
        if shift == 0:
            return a
        vec = [0] * shift + list(a.num)
        return Cyclotomic._raw(L, _reduce(vec, L), a.den)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.to_rational())
        # x^{-1} = (product of the other conjugates) / norm(x)
        rest = Cyclotomic.rational(1)
        for s in _units(self.conductor)[1:]:
            rest = rest * self.galois(s)
        norm = self * rest
        if not norm.is_rational():
            raise ArithmeticError("norm is not rational")
        return rest * (1 / norm.to_rational())

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Cyclotomic":
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- predicates and comparisons --------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        r = self.reduce_conductor()
        if r.conductor == 1:
            return hash(Fraction(r.num[0], r.den))
        return hash((r.conductor, r.num, r.den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- Galois theory ----------------------------------------------------

    def galois(self, s: int) -> "Cyclotomic":
        """Apply the automorphism zeta_L -> zeta_L**s."""
        L = self.conductor
        if math.gcd(s, L) != 1:
            raise ValueError(f"{s} is not coprime to the conductor {L}")
        full = [0] * L
        for j, c in enumerate(self.num):
            if c:
                full[(j * s) % L] += c
        return Cyclotomic._raw(L, _reduce(full, L), self.den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def reduce_conductor(self) -> "Cyclotomic":
        """Return the same element written over its smallest cyclotomic field."""
        if self._reduced is not None:
            return self._reduced
        L = self.conductor
        if self.is_rational():
            result = Cyclotomic._raw(1, [self.num[0]], self.den)
        else:
            d = L
            for p, _ in factorize(L):
                while d % p == 0 and self._lies_in(d // p):
                    d //= p
            result = self._descend(d) if d != L else self
        self._reduced = result
        return result

    def _lies_in(self, d: int) -> bool:
        L = self.conductor
        for s in _units(L):
            if s % d == 1 % d and s != 1 and self.galois(s) != self:
                return False
        return True

    def _descend(self, d: int) -> "Cyclotomic":
        # Solve for coefficients c with sum_j c_j zeta_d^j == self, using exact elimination.
        L = self.conductor
        n = euler_phi(d)
        cols = [Cyclotomic.zeta(d, j).embed(L).num for j in range(n)]
        rows = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(self.num[i], self.den)]
                for i in range(len(self.num))]
        sol = _solve(rows, n)
        out = Cyclotomic(d, sol)
        if out.embed(L) != self:
            raise ArithmeticError("conductor reduction failed")
        return out

    def minimal_polynomial(self) -> List[Fraction]:
        """Monic minimal polynomial over Q, coefficients constant term first."""
        L = self.conductor
        conj: List[Cyclotomic] = []
        seen = set()
        for s in _units(L):
            c = self.galois(s)
            key = (c.num, c.den)
            if key not in seen:
                seen.add(key)
                conj.append(c)
        poly = [Cyclotomic.rational(1)]
        for c in conj:
            # multiply poly by (t - c)
            new = [Cyclotomic.rational(0)] * (len(poly) + 1)
            for i, p in enumerate(poly):
                new[i + 1] = new[i + 1] + p
                new[i] = new[i] - p * c
            poly = new
        out = []
        for p in poly:
            if not p.is_rational():
                raise ArithmeticError("minimal polynomial has irrational coefficients")
            out.append(p.to_rational())
        return out

    def is_algebraic_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.minimal_polynomial())

    def root_of_unity_order(self) -> Optional[int]:
        """Least n >= 1 with self**n == 1, or None if self is not a root of unity."""
        if self.is_zero():
            return None
        if abs(abs(self.to_complex()) - 1.0) > 1e-6:
            return None
        M = math.lcm(2, self.conductor)
        if self ** M != 1:
            return None
        for d in divisors(M):
            if self ** d == 1:
                return d
        raise AssertionError("unreachable")

    # -- output -----------------------------------------------------------

    def to_complex(self) -> complex:
        L = self.conductor
        w = cmath.exp(2j * cmath.pi / L)
        acc = 0j
        for j, c in enumerate(self.num):
            if c:
                acc += c * w ** j
        return acc / self.den

    def render(self) -> str:
        """Canonical string ``c0+c1*zL^1...`` over the smallest conductor."""
        r = self.reduce_conductor()
        L = r.conductor
        terms = []
        for j, c in enumerate(r.num):
            if not c:
                continue
            q = Fraction(c, r.den)
            if j == 0:
                body = str(q)
            else:
                mono = f"z{L}" if j == 1 else f"z{L}^{j}"
                if q == 1:
                    body = mono
                elif q == -1:
                    body = "-" + mono
                else:
                    body = f"{q}*{mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        parts = [f"{Fraction(c, self.den)}*z({self.conductor})^{j}"
                 for j, c in enumerate(self.num) if c]
        return "Cyclotomic(" + (" + ".join(parts) or "0") + ")"


def _solve(rows: List[List[Fraction]], n: int) -> List[Fraction]:
    """Solve an overdetermined but consistent augmented system with ``n`` unknowns."""
    m = len(rows)
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, m):
        if rows[i][n] != 0:
            raise ArithmeticError("inconsistent linear system")
    sol = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][n]
    return sol


def zeta(L: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.zeta(L, k)


def _gauss_sqrt_prime(p: int) -> Cyclotomic:
    if p == 2:
        return Cyclotomic.zeta(8, 1) + Cyclotomic.zeta(8, 7)
    g = Cyclotomic.from_counts(p, _square_counts(p))
    if p % 4 == 3:
        # the quadratic Gauss sum is i*sqrt(p) here
        g = g.times_root(4, 3)
    return g


def _square_counts(p: int) -> List[int]:
    counts = [0] * p
    for i in range(p):
        counts[i * i % p] += 1
    return counts


@lru_cache(maxsize=None)
def embed_sqrt(m: int) -> Cyclotomic:
    """The positive square root of ``m`` as an element of a cyclotomic field."""
    if m < 1:
        raise ValueError(f"embed_sqrt needs a positive integer, got {m}")
    square, free = 1, []
    for p, e in factorize(m):
        square *= p ** (e // 2)
        if e % 2:
            free.append(p)
    s = Cyclotomic.rational(square)
    for p in free:
        s = s * _gauss_sqrt_prime(p)
    if s.to_complex().real < 0:
        s = -s
    if s * s != m:
        raise ArithmeticError(f"sqrt({m}) construction failed")
    return s


def galois_apply(x: Cyclotomic, s: int) -> Cyclotomic:
    return x.galois(s)


def root_of_unity_order(x: Cyclotomic) -> Optional[int]:
    return x.root_of_unity_order()


def minimal_polynomial(x: Cyclotomic) -> List[Fraction]:
    return x.minimal_polynomial()


def is_algebraic_integer(x: Cyclotomic) -> bool:
    return x.is_algebraic_integer()


class ScaledValue:
    """The number ``num * base**(-half_power/2)`` kept with an explicit square-root scale."""

    __slots__ = ("num", "base", "half_power")

    def __init__(self, num, base: int = 1, half_power: int = 0):
        if base < 1:
            raise ValueError("base must be a positive integer")
        self.num = Cyclotomic.coerce(num)
        self.base = base
        self.half_power = half_power

    @classmethod
    def coerce(cls, x) -> "ScaledValue":
        if isinstance(x, ScaledValue):
            return x
        return cls(Cyclotomic.coerce(x))

    def to_cyclotomic(self) -> Cyclotomic:
        e, B = self.half_power, self.base
        if e % 2 == 0:
            return self.num * Fraction(B) ** (-e // 2)
        return self.num * embed_sqrt(B) * Fraction(B) ** (-(e + 1) // 2)

    def to_complex(self) -> complex:
        return self.num.to_complex() * self.base ** (-self.half_power / 2)

    def _at_power(self, e: int) -> Cyclotomic:
        """Numerator of the same value rewritten with half power ``e``."""
        diff = e - self.half_power
        # value = num * B^{-h/2} = (num * B^{diff/2}) * B^{-e/2}
        if diff % 2 == 0:
            return self.num * Fraction(self.base) ** (diff // 2)
        return self.num * embed_sqrt(self.base) * Fraction(self.base) ** ((diff - 1) // 2)

    def __add__(self, other) -> "ScaledValue":
        try:
            other = ScaledValue.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.base == other.base or other.base == 1 or self.base == 1:
            B = self.base if self.base != 1 else other.base
            a = ScaledValue(self.num, B, self.half_power if self.base == B else 0)
            b = ScaledValue(other.num, B, other.half_power if other.base == B else 0)
            e = max(a.half_power, b.half_power)
            return ScaledValue(a._at_power(e) + b._at_power(e), B, e)
        return ScaledValue(self.to_cyclotomic() + other.to_cyclotomic())

    __radd__ = __add__

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.num, self.base, self.half_power)

    def __sub__(self, other) -> "ScaledValue":
        return self + (-ScaledValue.coerce(other))

    def __rsub__(self, other) -> "ScaledValue":
        return ScaledValue.coerce(other) - self

    def __mul__(self, other) -> "ScaledValue":
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return ScaledValue(self.num * other, self.base, self.half_power)
        if not isinstance(other, ScaledValue):
            return NotImplemented
        if other.base == 1:
            return ScaledValue(self.num * other.num, self.base, self.half_power)
        if self.base == 1:
            return ScaledValue(self.num * other.num, other.base, other.half_power)
        if other.base == self.base:
            return ScaledValue(self.num * other.num, self.base, self.half_power + other.half_power)
        return ScaledValue(self.to_cyclotomic() * other.to_cyclotomic())

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledValue":
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return ScaledValue(self.num / other, self.base, self.half_power)
        if isinstance(other, ScaledValue):
            if other.base == self.base:
                return ScaledValue(self.num / other.num, self.base,
                                   self.half_power - other.half_power)
            return ScaledValue(self.to_cyclotomic() / other.to_cyclotomic())
        return NotImplemented

    def __pow__(self, n: int) -> "ScaledValue":
        return ScaledValue(self.num ** n, self.base, self.half_power * n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclotomic, ScaledValue)):
            o = ScaledValue.coerce(other)
            if o.base == self.base and o.half_power == self.half_power:
                return self.num == o.num
            return self.to_cyclotomic() == o.to_cyclotomic()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_cyclotomic())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def canonical(self) -> "ScaledValue":
        """Normal form depending only on the value: num / sqrt(d) with d squarefree.

        d ranges over squarefree divisors of the conductor (d = 1 means no scaling);
        the choice minimises the numerator's conductor, ties going to the smaller d.
        """
        v = self.to_cyclotomic().reduce_conductor()
        if v.is_zero() or v.conductor == 1:
            return ScaledValue(v)
        best = (v.conductor, 1, v)
        primes = [p for p, _ in factorize(v.conductor)]
        for r in range(1, len(primes) + 1):
            for combo in itertools.combinations(primes, r):
                d = math.prod(combo)
                root = embed_sqrt(d)
                if v.conductor % root.reduce_conductor().conductor:
                    continue
                num = (v * root).reduce_conductor()
                if (num.conductor, d) < best[:2]:
                    best = (num.conductor, d, num)
        _, d, num = best
        return ScaledValue(num, d, 1) if d > 1 else ScaledValue(num)

    def render(self) -> str:
        c = self.canonical()
        s = c.num.render()
        if c.half_power:
            s += f"|sqrt({c.base})^-{c.half_power}"
        return s

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ScaledValue({self.num!r}, base={self.base}, half_power={self.half_power})"


def to_complex(x) -> complex:
    if isinstance(x, (Cyclotomic, ScaledValue)):
        return x.to_complex()
    return complex(x)
