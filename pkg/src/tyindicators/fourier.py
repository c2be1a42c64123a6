"""Functions on a finite abelian group and the Fourier transform attached to a bicharacter."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

from .abelian import AbelianGroup, Element
from .cyclotomic import Cyclotomic, ScaledValue, embed_sqrt
from .errors import TheoremViolation

_ZERO = Cyclotomic.rational(0)
_ONE = Cyclotomic.rational(1)


class GroupFunction:
    """A total map A -> Q(zeta), stored densely in enumeration order."""

    __slots__ = ("group", "values")

    def __init__(self, group: AbelianGroup, values: Sequence):
        if len(values) != group.order:
            raise ValueError(f"expected {group.order} values, got {len(values)}")
        self.group = group
        self.values = tuple(Cyclotomic.coerce(v) for v in values)

    @classmethod
    def from_callable(cls, group: AbelianGroup, f: Callable[[Element], object]) -> "GroupFunction":
        return cls(group, [f(a) for a in group.elements])

    @classmethod
    def constant(cls, group: AbelianGroup, c=1) -> "GroupFunction":
        return cls(group, [c] * group.order)

    def __call__(self, a: Element) -> Cyclotomic:
        return self.values[self.group.index(a)]

    def __repr__(self) -> str:
        return f"GroupFunction({self.group}, [{', '.join(v.render() for v in self.values)}])"

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupFunction) and self.group == other.group
                and all(x == y for x, y in zip(self.values, other.values)))

    def __hash__(self) -> int:
        return hash((self.group, self.values))

    def _check(self, other: "GroupFunction") -> None:
        if self.group != other.group:
            raise ValueError(f"functions live on different groups {self.group} and {other.group}")

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        self._check(other)
        return GroupFunction(self.group, [x + y for x, y in zip(self.values, other.values)])

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        self._check(other)
        return GroupFunction(self.group, [x - y for x, y in zip(self.values, other.values)])

    def __neg__(self) -> "GroupFunction":
        return GroupFunction(self.group, [-x for x in self.values])

    def __mul__(self, other) -> "GroupFunction":
        """Pointwise product, or scaling by a number."""
        if isinstance(other, GroupFunction):
            self._check(other)
            return GroupFunction(self.group, [x * y for x, y in zip(self.values, other.values)])
        return GroupFunction(self.group, [x * other for x in self.values])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupFunction":
        return GroupFunction(self.group, [x ** k for x in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def total(self) -> Cyclotomic:
        s = _ZERO
        for v in self.values:
            s = s + v
        return s

    def reflect(self) -> "GroupFunction":
        """a -> f(-a)."""
        G = self.group
        return GroupFunction(G, [self.values[G.neg_table[i]] for i in range(G.order)])

    def to_complex(self) -> List[complex]:
        return [v.to_complex() for v in self.values]


@dataclass(frozen=True)
class ScaledFunction:
    """fn * base^(-half_power/2), pointwise."""

    fn: GroupFunction
    base: int
    half_power: int

    @property
    def group(self) -> AbelianGroup:
        return self.fn.group

    def __call__(self, a: Element) -> ScaledValue:
        return ScaledValue(self.fn(a), self.base, self.half_power)

    def values(self) -> List[ScaledValue]:
        return [ScaledValue(v, self.base, self.half_power) for v in self.fn.values]

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupFunction):
            other = ScaledFunction(other, 1, 0)
        if not isinstance(other, ScaledFunction) or self.group != other.group:
            return False
        return all(x == y for x, y in zip(self.values(), other.values()))

    def __hash__(self) -> int:
        return hash((self.group, tuple(self.values())))

    def __mul__(self, other) -> "ScaledFunction":
        if isinstance(other, ScaledFunction):
            if other.base != self.base:
                raise ValueError("scaled functions with different bases")
            return ScaledFunction(self.fn * other.fn, self.base, self.half_power + other.half_power)
        return ScaledFunction(self.fn * other, self.base, self.half_power)

    def __pow__(self, k: int) -> "ScaledFunction":
        return ScaledFunction(self.fn ** k, self.base, self.half_power * k)

    def is_zero(self) -> bool:
        return self.fn.is_zero()


def delta(group: AbelianGroup, a: Element) -> GroupFunction:
    group.check(a)
    i = group.index(a)
    return GroupFunction(group, [_ONE if j == i else _ZERO for j in range(group.order)])


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f * g)(a) = sum_x f(x) g(a - x)."""
    f._check(g)
    G = f.group
    add = G.add_table
    neg = G.neg_table
    out = [_ZERO] * G.order
    for x, fx in enumerate(f.values):
        if fx.is_zero():
            continue
        for a in range(G.order):
            gy = g.values[add[a, neg[x]]]
            if not gy.is_zero():
                out[a] = out[a] + fx * gy
    return GroupFunction(G, out)


def convolution_power(f: GroupFunction, k: int) -> GroupFunction:
    if k < 1:
        raise ValueError("convolution power needs k >= 1")
    out = f
    for _ in range(k - 1):
        out = convolve(out, f)
    return out


def _kernel_sum(chi, f: GroupFunction, sign: int) -> GroupFunction:
    G = chi.group
    if f.group != G:
        raise ValueError("function and bicharacter live on different groups")
    N = chi.N
    T = chi.table
    out = []
    for a in range(G.order):
        s = _ZERO
        for x, fx in enumerate(f.values):
            if not fx.is_zero():
                s = s + fx.times_root(N, sign * int(T[x, a]))
        out.append(s)
    return GroupFunction(G, out)


def transform(chi, f) -> ScaledFunction:
    """F_chi(f)(a) = |A|^(-1/2) sum_x f(x) chi(x, a)^(-1)."""
    if isinstance(f, ScaledFunction):
        inner = transform(chi, f.fn)
        if f.half_power and f.base != chi.group.order:
            raise ValueError("cannot combine scales with different bases")
        return ScaledFunction(inner.fn, inner.base, inner.half_power + f.half_power)
    return ScaledFunction(_kernel_sum(chi, f, -1), chi.group.order, 1)


def inverse_transform(chi, f) -> ScaledFunction:
    """Kernel chi(x, a); the inverse of ``transform`` when chi is non-degenerate."""
    if isinstance(f, ScaledFunction):
        inner = inverse_transform(chi, f.fn)
        return ScaledFunction(inner.fn, inner.base, inner.half_power + f.half_power)
    return ScaledFunction(_kernel_sum(chi, f, 1), chi.group.order, 1)


def project(K: Sequence[Element], f: GroupFunction) -> GroupFunction:
    """P_K(f)(a) = |K|^(-1) sum_{x in K} f(a + x)."""
    G = f.group
    if not G.is_subgroup(K):
        raise ValueError("projection needs a subgroup")
    add = G.add_table
    idx = [G.index(k) for k in K]
    inv = Fraction(1, len(idx))
    out = []
    for a in range(G.order):
        s = _ZERO
        for k in idx:
            s = s + f.values[add[a, k]]
        out.append(s * inv)
    return GroupFunction(G, out)


def descend_function(descent, f: GroupFunction) -> GroupFunction:
    """View a function constant on radical cosets as a function on the presented quotient."""
    pres = descent.presentation
    return GroupFunction.from_callable(pres.group, lambda y: f(pres.to_concrete[y]))


def trace_of_transform(chi) -> ScaledValue:
    """|A|^(-1/2) sum_a chi(a, a)^(-1)."""
    N = chi.N
    counts = [0] * N
    T = chi.table
    for i in range(chi.group.order):
        counts[(-int(T[i, i])) % N] += 1
    return ScaledValue(Cyclotomic.from_counts(N, counts), chi.group.order, 1)


@dataclass(frozen=True)
class TraceParity:
    n_plus: int
    n_minus: int
    d_plus: int
    d_minus: int
    radical_order: int
    quotient_order: int


def trace_parity(chi) -> TraceParity:
    """Write Trace(F_chi) = sqrt|J| (n+ + n- i) and check n± against d±."""
    A = chi.group
    J = chi.radical()
    trace = trace_of_transform(chi)
    z = trace.to_complex() / math.sqrt(len(J))
    n_plus, n_minus = round(z.real), round(z.imag)
    guess = embed_sqrt(len(J)) * (Cyclotomic.rational(n_plus) + Cyclotomic.zeta(4, 1) * n_minus)
    if trace != guess:
        raise TheoremViolation(f"trace {trace} is not sqrt({len(J)}) times a Gaussian integer")
    Js = set(J)
    q = A.order // len(J)
    two_torsion = sum(1 for a in A.elements if A.mul(2, a) in Js) // len(J)
    d_plus, d_minus = (q + two_torsion) // 2, (q - two_torsion) // 2
    if (n_plus - d_plus) % 2 or (n_minus - d_minus) % 2:
        raise TheoremViolation(f"parity mismatch: n=({n_plus},{n_minus}) d=({d_plus},{d_minus})")
    return TraceParity(n_plus, n_minus, d_plus, d_minus, len(J), q)


def transform_matrix(chi) -> List[List[Cyclotomic]]:
    """Unscaled matrix of F_chi in the delta basis: column a holds F(delta_a)."""
    N = chi.N
    T = chi.table
    n = chi.group.order
    return [[Cyclotomic.zeta(N, -int(T[a, b])) for a in range(n)] for b in range(n)]


def exact_rank(rows: List[List[Cyclotomic]]) -> int:
    """Rank over the cyclotomic field by Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inverse()
        prow = [x * inv for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], prow)]
        rank += 1
    return rank
