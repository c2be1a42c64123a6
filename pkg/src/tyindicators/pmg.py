"""Bicharacters of finite abelian groups and pseudo-metric groups.

A bicharacter on Z_{n_1} x ... x Z_{n_r} with exponent N is stored as an
integer matrix C over Z_N with chi(e_i, e_j) = zeta_N^{C_ij}.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian import (DEFAULT_AUT_BOUND, AbelianGroup, Element, Homomorphism, Presentation,
                      Quotient, SylowComponent, parse_group_spec)
from .cyclotomic import Cyclotomic
from .errors import SpecError


class Bicharacter:
    """chi(a, b) = zeta_N^(a^T C b) on a product of cyclic groups."""

    def __init__(self, group: AbelianGroup, matrix: Sequence[Sequence[int]], zeta: Optional[int] = None):
        N = group.exponent
        r = group.rank
        rows = [list(row) for row in matrix]
        if len(rows) != r or any(len(row) != r for row in rows):
            raise SpecError(f"bicharacter matrix must be {r}x{r} for {group}")
        if zeta is not None and zeta != N:
            converted = []
            for row in rows:
                new = []
                for e in row:
                    if (e * N) % zeta:
                        raise SpecError(f"entry {e} over zeta_{zeta} is not a power of zeta_{N}")
                    new.append(e * N // zeta)
                converted.append(new)
            rows = converted
        n = group.factors
        for i in range(r):
            for j in range(r):
                step = N // math.gcd(n[i], n[j])
                if rows[i][j] % step:
                    raise SpecError(
                        f"matrix entry C[{i}][{j}] = {rows[i][j]} must be divisible by "
                        f"N/gcd(n_{i}, n_{j}) = {step} (N = {N})")
        self.group = group
        self.N = N
        self.matrix = tuple(tuple(e % N for e in row) for row in rows)

    def __repr__(self) -> str:
        return f"Bicharacter({self.group}, zeta={self.N}, matrix={[list(r) for r in self.matrix]})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bicharacter) and self.group == other.group
                and self.matrix == other.matrix)

    def __hash__(self) -> int:
        return hash((self.group, self.matrix))

    # -- evaluation -------------------------------------------------------

    def exponent(self, a: Element, b: Element) -> int:
        """e with chi(a, b) = zeta_N^e."""
        C = self.matrix
        s = 0
        for i, ai in enumerate(a):
            if ai:
                row = C[i]
                for j, bj in enumerate(b):
                    s += ai * row[j] * bj
        return s % self.N

    def turns(self, a: Element, b: Element) -> Fraction:
        """chi(a, b) as a fraction of a full turn."""
        return Fraction(self.exponent(a, b), self.N)

    def __call__(self, a: Element, b: Element) -> Cyclotomic:
        return Cyclotomic.zeta(self.N, self.exponent(a, b))

    eval = __call__

    @cached_property
    def table(self) -> np.ndarray:
        """|A| x |A| exponent table in enumeration order."""
        E = np.array(self.group.elements, dtype=np.int64).reshape(self.group.order, self.group.rank)
        C = np.array(self.matrix, dtype=np.int64).reshape(self.group.rank, self.group.rank)
        return (E @ C @ E.T) % self.N

    # -- properties -------------------------------------------------------

    def is_symmetric(self) -> bool:
        C = self.matrix
        r = self.group.rank
        if any(C[i][j] != C[j][i] for i in range(r) for j in range(r)):
            return False
        T = self.table
        return bool((T == T.T).all())

    def is_alternating(self) -> bool:
        return bool((np.diag(self.table) == 0).all())

    def radical(self) -> List[Element]:
        gens = self.group.generators()
        return [a for a in self.group.elements if all(self.exponent(e, a) == 0 for e in gens)]

    def orthogonality_average(self, z: Element) -> Cyclotomic:
        """(1/|A|) sum_a chi(a, z), computed exactly."""
        counts = [0] * self.N
        for a in self.group.elements:
            counts[self.exponent(a, z)] += 1
        return Cyclotomic.from_counts(self.N, counts) / self.group.order

    def is_nondegenerate(self) -> bool:
        return len(self.radical()) == 1

    def galois_twist(self, s: int) -> "Bicharacter":
        if math.gcd(s, self.N) != 1:
            raise ValueError(f"{s} is not coprime to the exponent {self.N}")
        return Bicharacter(self.group, [[s * e for e in row] for row in self.matrix])

    def pullback(self, hom: Homomorphism) -> "Bicharacter":
        """(a, b) -> chi(f(a), f(b)) on the source of ``hom``."""
        if hom.target != self.group:
            raise ValueError("homomorphism does not land in this group")
        return Bicharacter.from_turns(hom.source, lambda a, b: self.turns(hom(a), hom(b)))

    @classmethod
    def from_turns(cls, group: AbelianGroup, turns) -> "Bicharacter":
        """Build from a function returning chi(e_i, e_j) as a fraction of a turn."""
        N = group.exponent
        gens = group.generators()
        rows = []
        for a in gens:
            row = []
            for b in gens:
                t = Fraction(turns(a, b)) * N
                if t.denominator != 1:
                    raise ValueError("values are not N-th roots of unity")
                row.append(int(t))
            rows.append(row)
        return cls(group, rows)

    def descend_to_quotient(self) -> "Descent":
        """The bicharacter induced on A/Rad(chi), presented as a cyclic product."""
        J = self.radical()
        q = self.group.quotient(J)
        pres = q.presentation
        chi_bar = Bicharacter.from_turns(
            pres.group, lambda x, y: self.turns(pres.to_concrete[x], pres.to_concrete[y]))
        if not chi_bar.is_nondegenerate():
            raise ArithmeticError("descended bicharacter is degenerate")
        return Descent(self, q, pres, chi_bar)

    # -- named constructors -----------------------------------------------

    @classmethod
    def diag(cls, p: int, coeffs: Sequence[int]) -> "Bicharacter":
        """chi(v, w) = exp(2 pi i/p * sum a_s v_s w_s) on F_p^r."""
        r = len(coeffs)
        return cls(AbelianGroup([p] * r), [[coeffs[i] if i == j else 0 for j in range(r)] for i in range(r)])

    @classmethod
    def sym(cls, r: int) -> "Bicharacter":
        return cls.diag(2, [1] * r)

    @classmethod
    def alt(cls, r: int) -> "Bicharacter":
        if r % 2:
            raise SpecError("the alternating form needs even rank")
        return cls.hyperbolic(2, r // 2)

    @classmethod
    def cyclic(cls, N: int, c: int) -> "Bicharacter":
        """chi(i, j) = zeta_N^(c i j) on Z_N."""
        return cls(AbelianGroup([N]), [[c]])

    @classmethod
    def hyperbolic(cls, n: int, r: int) -> "Bicharacter":
        """chi(a, b) = zeta_n^E(a, b) on Z_n^(2r), E = sum a_{2i-1} b_{2i} + a_{2i} b_{2i-1}."""
        size = 2 * r
        C = [[0] * size for _ in range(size)]
        for i in range(r):
            C[2 * i][2 * i + 1] = C[2 * i + 1][2 * i] = 1
        return cls(AbelianGroup([n] * size), C)

    @classmethod
    def trivial(cls, group: AbelianGroup) -> "Bicharacter":
        return cls(group, [[0] * group.rank for _ in range(group.rank)])

    def to_json(self) -> Dict[str, Any]:
        return {"group": list(self.group.factors), "zeta": self.N,
                "matrix": [list(r) for r in self.matrix]}


@dataclass
class Descent:
    chi: Bicharacter
    quotient: Quotient
    presentation: Presentation
    chi_bar: Bicharacter

    @property
    def group(self) -> AbelianGroup:
        return self.presentation.group

    def project(self, a: Element) -> Element:
        return self.presentation.from_concrete[self.quotient.project(a)]


@dataclass(frozen=True)
class PseudoMetricGroup:
    """A finite abelian group with a symmetric bicharacter."""

    chi: Bicharacter

    def __post_init__(self):
        if not self.chi.is_symmetric():
            raise SpecError("a pseudo-metric group needs a symmetric bicharacter")

    @property
    def group(self) -> AbelianGroup:
        return self.chi.group


def _as_chi(x) -> Bicharacter:
    return x.chi if isinstance(x, PseudoMetricGroup) else x


def eval_bichar(chi: Bicharacter, a: Element, b: Element) -> Cyclotomic:
    chi.group.check(a)
    chi.group.check(b)
    return chi(a, b)


def is_isometric(p, q, bound: int = DEFAULT_AUT_BOUND) -> Optional[Homomorphism]:
    """A group isomorphism f with chi_q(f a, f b) = chi_p(a, b), or None."""
    chi, chi2 = _as_chi(p), _as_chi(q)
    A, B = chi.group, chi2.group
    if A.order != B.order or not A.is_isomorphic(B):
        return None
    if A.order > bound:
        # let isomorphisms() raise the uniform error
        next(A.isomorphisms(B, bound=bound), None)
    gens = A.generators()
    if A == B and all(chi.turns(x, y) == chi2.turns(x, y) for x in gens for y in gens):
        return Homomorphism(A, A, tuple(gens))
    diag1 = Counter(chi.turns(a, a) for a in A.elements)
    diag2 = Counter(chi2.turns(b, b) for b in B.elements)
    if diag1 != diag2:
        return None

    def accept(i: int, images: Tuple[Element, ...]) -> bool:
        return all(chi2.turns(images[i], images[j]) == chi.turns(gens[i], gens[j])
                   for j in range(i + 1))

    for f in A.isomorphisms(B, bound=bound, accept=accept):
        if all(chi2.turns(f(a), f(b)) == chi.turns(a, b) for a in A.elements for b in A.elements):
            return f
    return None


def product_decompose(p) -> List[Tuple[SylowComponent, Bicharacter]]:
    """Restrict chi to each Sylow subgroup; cross terms are verified trivial."""
    chi = _as_chi(p)
    comps = chi.group.sylow_decompose()
    out = []
    for c in comps:
        out.append((c, Bicharacter.from_turns(c.group, lambda x, y, c=c: chi.turns(c.embed(x), c.embed(y)))))
    for c1 in comps:
        for c2 in comps:
            if c1.prime == c2.prime:
                continue
            for x in c1.group.elements:
                for y in c2.group.elements:
                    if chi.exponent(c1.embed(x), c2.embed(y)):
                        raise ArithmeticError("Sylow components are not orthogonal")
    return out


def direct_product(chi1: Bicharacter, chi2: Bicharacter) -> Bicharacter:
    G = AbelianGroup(chi1.group.factors + chi2.group.factors)
    r1 = chi1.group.rank

    def turns(a, b):
        return chi1.turns(a[:r1], b[:r1]) + chi2.turns(a[r1:], b[r1:])

    return Bicharacter.from_turns(G, turns)


def bichar_from_json(obj: Dict[str, Any], group: Optional[AbelianGroup] = None) -> Bicharacter:
    """Parse ``{"group": [...], "zeta": N, "matrix": [[...]]}`` or a ``"named"`` form."""
    if "group" in obj:
        spec = obj["group"]
        if isinstance(spec, str):
            g = parse_group_spec(spec)
        else:
            try:
                g = AbelianGroup(spec)
            except (TypeError, ValueError) as exc:
                raise SpecError(f"bad group in bicharacter JSON: {exc}") from None
        if group is not None and g != group:
            raise SpecError(f"bicharacter group {g} does not match {group}")
        group = g
    if group is None:
        raise SpecError("bicharacter JSON needs a group")
    if "named" in obj:
        return named_bichar(group, obj["named"])
    if "matrix" not in obj:
        raise SpecError("bicharacter JSON needs 'matrix' or 'named'")
    return Bicharacter(group, obj["matrix"], obj.get("zeta"))


def named_bichar(group: AbelianGroup, named) -> Bicharacter:
    """Named forms: "alt", "sym", "trivial", "hyperbolic", {"diag": [...]}, {"cyclic": c}."""
    f = group.factors
    if isinstance(named, str):
        if named == "sym":
            if set(f) - {2}:
                raise SpecError("'sym' needs a group of the form Z2^r")
            return Bicharacter.sym(len(f))
        if named == "alt":
            if set(f) - {2} or len(f) % 2:
                raise SpecError("'alt' needs a group Z2^r with r even")
            return Bicharacter.alt(len(f))
        if named == "hyperbolic":
            if len(set(f)) != 1 or len(f) % 2:
                raise SpecError("'hyperbolic' needs a group Z_n^(2r)")
            return Bicharacter.hyperbolic(f[0], len(f) // 2)
        if named == "trivial":
            return Bicharacter.trivial(group)
        raise SpecError(f"unknown named bicharacter {named!r}")
    if isinstance(named, dict) and "diag" in named:
        coeffs = list(named["diag"])
        if len(set(f)) != 1 or len(coeffs) != len(f):
            raise SpecError("'diag' needs a group Z_p^r and r coefficients")
        return Bicharacter.diag(f[0], coeffs)
    if isinstance(named, dict) and "cyclic" in named:
        if len(f) != 1:
            raise SpecError("'cyclic' needs a cyclic group")
        return Bicharacter.cyclic(f[0], int(named["cyclic"]))
    raise SpecError(f"unknown named bicharacter {named!r}")
