"""Finite abelian groups presented as products of cyclic groups.

Elements are plain tuples of residues ``(a_1, ..., a_r)`` with ``0 <= a_i < n_i``.
Enumeration order is lexicographic on these tuples.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from .cyclotomic import factorize
from .errors import BoundExceeded, SpecError

Element = Tuple[int, ...]

DEFAULT_AUT_BOUND = 64


class AbelianGroup:
    """The group Z_{n_1} x ... x Z_{n_r}."""

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(n) for n in factors)
        if any(n < 1 for n in factors):
            raise ValueError(f"cyclic orders must be >= 1, got {factors}")
        self.factors = factors

    def __repr__(self) -> str:
        return f"AbelianGroup({list(self.factors)})"

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.factors) or "Z1"

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    @cached_property
    def elements(self) -> List[Element]:
        return [tuple(t) for t in itertools.product(*(range(n) for n in self.factors))]

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def index(self, a: Element) -> int:
        i = 0
        for ai, n in zip(a, self.factors):
            i = i * n + ai
        return i

    def generators(self) -> List[Element]:
        gens = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1 % self.factors[i]
            gens.append(tuple(e))
        return gens

    def element(self, values: Sequence[int]) -> Element:
        if len(values) != self.rank:
            raise ValueError(f"expected {self.rank} residues, got {len(values)}")
        return tuple(int(v) % n for v, n in zip(values, self.factors))

    def check(self, a: Element) -> Element:
        if len(a) != self.rank or any(not 0 <= x < n for x, n in zip(a, self.factors)):
            raise ValueError(f"{a} is not an element of {self}")
        return a

    def contains(self, a) -> bool:
        try:
            self.check(tuple(a))
        except (ValueError, TypeError):
            return False
        return True

    # -- group law --------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        self.check(a)
        self.check(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a: Element) -> Element:
        self.check(a)
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def mul(self, k: int, a: Element) -> Element:
        """``k * a`` (written a^k multiplicatively)."""
        self.check(a)
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def sum(self, elems: Sequence[Element]) -> Element:
        out = [0] * self.rank
        for a in elems:
            for i, x in enumerate(a):
                out[i] += x
        return tuple(x % n for x, n in zip(out, self.factors))

    def element_order(self, a: Element) -> int:
        self.check(a)
        return math.lcm(1, *(n // math.gcd(n, x) for x, n in zip(a, self.factors)))

    @cached_property
    def add_table(self):
        import numpy as np

        elems = self.elements
        tab = np.empty((self.order, self.order), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                tab[i, j] = self.index(tuple((x + y) % n for x, y, n in zip(a, b, self.factors)))
        return tab

    @cached_property
    def neg_table(self) -> List[int]:
        return [self.index(self.neg(a)) for a in self.elements]

    # -- subgroups --------------------------------------------------------

    def torsion(self, n: int) -> List[Element]:
        """The n-torsion subgroup A[n]; ``n = 0`` gives all of A."""
        if n < 0:
            raise ValueError("n must be non-negative")
        return [a for a in self.elements if all((n * x) % m == 0 for x, m in zip(a, self.factors))]

    def is_subgroup(self, K: Sequence[Element]) -> bool:
        Ks = set(K)
        if self.zero not in Ks:
            return False
        return all(self.add(a, self.neg(b)) in Ks for a in Ks for b in Ks)

    def span(self, gens: Sequence[Element]) -> List[Element]:
        return sorted(_span(gens, self.zero, self.add))

    def quotient(self, K: Sequence[Element]) -> "Quotient":
        if not self.is_subgroup(K):
            raise ValueError("quotient requires a subgroup")
        return Quotient(self, sorted(set(K)))

    def canonical_form(self) -> "AbelianGroup":
        """Invariant factor presentation n_1 | n_2 | ... with trivial factors dropped."""
        by_prime: Dict[int, List[int]] = {}
        for n in self.factors:
            for p, e in factorize(n):
                by_prime.setdefault(p, []).append(p ** e)
        length = max((len(v) for v in by_prime.values()), default=0)
        inv = [1] * length
        for p, powers in by_prime.items():
            powers.sort(reverse=True)
            for i, q in enumerate(powers):
                inv[length - 1 - i] *= q
        return AbelianGroup(inv)

    def is_isomorphic(self, other: "AbelianGroup") -> bool:
        return self.canonical_form() == other.canonical_form()

    # -- decompositions and morphisms --------------------------------------

    def sylow_decompose(self) -> List["SylowComponent"]:
        primes = sorted({p for n in self.factors for p, _ in factorize(n)})
        out = []
        for p in primes:
            slots, orders, lifts = [], [], []
            for i, n in enumerate(self.factors):
                q = p ** dict(factorize(n)).get(p, 0)
                if q == 1:
                    continue
                m = n // q
                # CRT idempotent for the p-part of Z_n
                lifts.append(m * pow(m, -1, q) % n)
                slots.append(i)
                orders.append(q)
            out.append(SylowComponent(p, self, AbelianGroup(orders), tuple(slots), tuple(lifts)))
        return out

    def isomorphisms(self, target: "AbelianGroup", bound: int = DEFAULT_AUT_BOUND,
                     accept: Optional[Callable[[int, Tuple[Element, ...]], bool]] = None
                     ) -> Iterator["Homomorphism"]:
        """Enumerate isomorphisms by backtracking over generator images.

        ``accept(i, images)`` may prune a partial assignment of the first ``i + 1``
        generator images.
        """
        if self.order > bound:
            raise BoundExceeded(f"|A| = {self.order} exceeds the brute-force bound {bound}; "
                                f"raise it with --bound-aut")
        if self.order != target.order:
            return iter(())
        return self._iso_search(target, accept)

    def _iso_search(self, target, accept):
        choices = [[b for b in target.elements if n % target.element_order(b) == 0]
                   for n in self.factors]
        images: List[Element] = []

        def rec(i: int):
            if i == self.rank:
                hom = Homomorphism(self, target, tuple(images))
                if hom.is_bijective():
                    yield hom
                return
            for b in choices[i]:
                images.append(b)
                if accept is None or accept(i, tuple(images)):
                    yield from rec(i + 1)
                images.pop()

        yield from rec(0)

    def automorphisms(self, bound: int = DEFAULT_AUT_BOUND) -> Iterator["Homomorphism"]:
        return self.isomorphisms(self, bound=bound)

    def characters(self):
        """The |A| characters lambda_b(a) = prod zeta_{n_i}^{a_i b_i}, indexed by b."""
        from .fourier import GroupFunction
        from .cyclotomic import Cyclotomic

        N = self.exponent
        for b in self.elements:
            yield GroupFunction(self, [
                Cyclotomic.zeta(N, sum(x * y * (N // n) for x, y, n in zip(a, b, self.factors)))
                for a in self.elements
            ])


@dataclass(frozen=True)
class Homomorphism:
    source: AbelianGroup
    target: AbelianGroup
    images: Tuple[Element, ...]

    def __call__(self, a: Element) -> Element:
        out = [0] * self.target.rank
        for ai, img in zip(a, self.images):
            for j, x in enumerate(img):
                out[j] += ai * x
        return tuple(x % n for x, n in zip(out, self.target.factors))

    def is_bijective(self) -> bool:
        if self.source.order != self.target.order:
            return False
        seen = {self(a) for a in self.source.elements}
        return len(seen) == self.target.order

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        return Homomorphism(other.source, self.target, tuple(self(img) for img in other.images))

    def is_identity(self) -> bool:
        return self.source == self.target and all(self(a) == a for a in self.source.generators())


@dataclass(frozen=True)
class SylowComponent:
    prime: int
    parent: AbelianGroup
    group: AbelianGroup
    slots: Tuple[int, ...]
    lifts: Tuple[int, ...]

    def embed(self, x: Element) -> Element:
        out = [0] * self.parent.rank
        for xi, i, lift in zip(x, self.slots, self.lifts):
            out[i] = (xi * lift) % self.parent.factors[i]
        return tuple(out)

    def project(self, a: Element) -> Element:
        return tuple(a[i] % q for i, q in zip(self.slots, self.group.factors))


def recombine(components: Sequence[SylowComponent], parts: Sequence[Element]) -> Element:
    A = components[0].parent
    return A.sum([c.embed(x) for c, x in zip(components, parts)])


# -- quotients -----------------------------------------------------------


def _span(gens, zero, add) -> set:
    seen = {zero}
    frontier = [zero]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def decompose(elements: Sequence[Hashable], add: Callable, zero: Hashable
              ) -> List[Tuple[Hashable, int]]:
    """Cyclic basis of a finite abelian group given by its elements and addition.

    Works prime by prime: in a p-group an element of maximal order generates a
    direct summand, and a subgroup maximal among those meeting it trivially is a
    complement.  Returns ``[(generator, order), ...]``.
    """
    def order(x):
        k, y = 1, x
        while y != zero:
            y = add(y, x)
            k += 1
        return k

    orders = {x: order(x) for x in elements}
    total = len(elements)
    basis = []
    for p, _ in factorize(total):
        current = [x for x in elements if _is_power_of(orders[x], p)]
        while len(current) > 1:
            g = max(current, key=lambda x: orders[x])  # first of maximal order
            cyc = _span([g], zero, add)
            comp = {zero}
            comp_gens: List[Hashable] = []
            for x in current:
                if x in comp:
                    continue
                trial = _span(comp_gens + [x], zero, add)
                if trial & cyc == {zero}:
                    comp = trial
                    comp_gens.append(x)
            basis.append((g, orders[g]))
            current = [x for x in current if x in comp]
    return basis


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class Quotient:
    """A/K with a deterministic transversal and an explicit cyclic presentation."""

    def __init__(self, parent: AbelianGroup, subgroup: Sequence[Element]):
        self.parent = parent
        self.subgroup = list(subgroup)
        proj: Dict[Element, Element] = {}
        reps: List[Element] = []
        for a in parent.elements:
            if a in proj:
                continue
            reps.append(a)
            for k in self.subgroup:
                proj[parent.add(a, k)] = a
        self.reps = reps
        self._proj = proj

    @property
    def order(self) -> int:
        return len(self.reps)

    def project(self, a: Element) -> Element:
        return self._proj[a]

    def add(self, a: Element, b: Element) -> Element:
        return self._proj[self.parent.add(a, b)]

    @cached_property
    def presentation(self) -> "Presentation":
        basis = decompose(self.reps, self.add, self.parent.zero)
        return Presentation.build(basis, self.add, self.parent.zero, self.reps)


@dataclass
class Presentation:
    """An isomorphism between a cyclic-product group and a concretely given group."""

    group: AbelianGroup
    to_concrete: Dict[Element, Hashable]
    from_concrete: Dict[Hashable, Element]

    @classmethod
    def build(cls, basis, add, zero, elements) -> "Presentation":
        G = AbelianGroup([o for _, o in basis])
        to_c: Dict[Element, Hashable] = {}
        for y in G.elements:
            x = zero
            for yi, (g, _) in zip(y, basis):
                for _ in range(yi):
                    x = add(x, g)
            to_c[y] = x
        from_c = {x: y for y, x in to_c.items()}
        if len(from_c) != len(elements) or set(from_c) != set(elements):
            raise ArithmeticError("cyclic decomposition is not bijective")
        return cls(G, to_c, from_c)


def subquotient(A: AbelianGroup, H: Sequence[Element], K: Sequence[Element]) -> Tuple[Quotient, Presentation]:
    """H/K for subgroups K <= H <= A, with a cyclic presentation."""
    Hs, Ks = set(H), set(K)
    if not Ks <= Hs:
        raise ValueError("K must be contained in H")
    q = A.quotient(sorted(Ks))
    reps = sorted({q.project(h) for h in Hs})
    basis = decompose(reps, q.add, A.zero)
    return q, Presentation.build(basis, q.add, A.zero, reps)


# -- parsing --------------------------------------------------------------

_ATOM = re.compile(r"[zZ](\d+)")


def parse_group_spec(s: str) -> AbelianGroup:
    """Parse ``Z4xZ4`` style strings (case-insensitive, no whitespace)."""
    if not s:
        raise SpecError("empty group spec")
    factors = []
    pos = 0
    while True:
        m = _ATOM.match(s, pos)
        if not m:
            raise SpecError(f"group spec {s!r}: expected Z<n> at position {pos}")
        n = int(m.group(1))
        if n < 1:
            raise SpecError(f"group spec {s!r}: cyclic order must be >= 1 at position {pos}")
        factors.append(n)
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] not in "xX":
            raise SpecError(f"group spec {s!r}: expected 'x' at position {pos}")
        pos += 1
    return AbelianGroup(factors)
