"""Quadratic lifts: functions rho on A with rho(a) rho(a+b)^-1 rho(b) = chi(a, b).

Every such rho takes values in the 2N-th roots of unity (N the exponent of A),
so a lift is stored as its exponent vector modulo 2N.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np

from .abelian import Element
from .cyclotomic import Cyclotomic
from .errors import TheoremViolation
from .fourier import GroupFunction
from .pmg import Bicharacter


class QuadraticLift:
    """rho(a) = zeta_{2N}^{exps[a]} with coboundary chi, verified on all pairs."""

    def __init__(self, chi: Bicharacter, exps: Sequence[int], verify: bool = True):
        if len(exps) != chi.group.order:
            raise ValueError("one exponent per group element is required")
        self.chi = chi
        self.modulus = 2 * chi.N
        self.exps = np.asarray(exps, dtype=np.int64) % self.modulus
        if verify:
            self._verify()

    def _verify(self) -> None:
        G = self.chi.group
        e = self.exps
        if e[G.index(G.zero)] != 0:
            raise TheoremViolation("rho(0) must be 1")
        lhs = (e[:, None] + e[None, :] - e[G.add_table]) % self.modulus
        if not np.array_equal(lhs, (2 * self.chi.table) % self.modulus):
            raise TheoremViolation("coboundary of rho differs from chi")

    @property
    def group(self):
        return self.chi.group

    def exponent(self, a: Element) -> int:
        return int(self.exps[self.group.index(a)])

    def __call__(self, a: Element) -> Cyclotomic:
        return Cyclotomic.zeta(self.modulus, self.exponent(a))

    def as_function(self) -> GroupFunction:
        return GroupFunction(self.group, [Cyclotomic.zeta(self.modulus, int(x)) for x in self.exps])

    def power_function(self, k: int) -> GroupFunction:
        """a -> rho(a)^k."""
        return GroupFunction(self.group, [Cyclotomic.zeta(self.modulus, int(x) * k) for x in self.exps])

    def is_sign_valued(self) -> bool:
        return bool(np.isin(self.exps, (0, self.chi.N)).all())

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadraticLift) and self.chi == other.chi
                and np.array_equal(self.exps, other.exps))

    def __hash__(self) -> int:
        return hash((self.chi, tuple(int(x) for x in self.exps)))

    def __repr__(self) -> str:
        return f"QuadraticLift(zeta={self.modulus}, exps={[int(x) for x in self.exps]})"


def _theta_exponent(n: int, c: int, N: int) -> int:
    """Exponent over zeta_{2N} of a square root of chi(e, e)^-1, where chi(e, e) = zeta_N^c."""
    if n % 2:
        return (-c * (n + 1)) % (2 * N)
    # chi(e, e) = zeta_n^{c'}; the roots in zeta_{2n} are t and t + n with t = -c' mod n
    t = (-(c // (N // n))) % n
    return t * (N // n)


def standard_lift(chi: Bicharacter) -> QuadraticLift:
    G = chi.group
    N = chi.N
    C = chi.matrix
    theta = [_theta_exponent(n, C[i][i], N) for i, n in enumerate(G.factors)]
    exps = []
    for a in G.elements:
        e = 0
        for i, ai in enumerate(a):
            if ai:
                e += theta[i] * ai * ai
                for j in range(i + 1, G.rank):
                    e -= 2 * C[i][j] * ai * a[j]
        exps.append(e)
    return QuadraticLift(chi, exps)


def _character_exponents(G, b: Element, N: int) -> List[int]:
    """lambda_b(a) as exponents over zeta_{2N}."""
    w = [2 * bi * (N // n) for bi, n in zip(b, G.factors)]
    return [sum(x * y for x, y in zip(a, w)) for a in G.elements]


def all_lifts(chi: Bicharacter) -> List[QuadraticLift]:
    """The |A| lifts rho * lambda_b, indexed by b in enumeration order."""
    base = standard_lift(chi)
    G = chi.group
    out = []
    for b in G.elements:
        lam = np.asarray(_character_exponents(G, b, chi.N), dtype=np.int64)
        out.append(QuadraticLift(chi, base.exps + lam))
    if len({tuple(int(x) for x in r.exps) for r in out}) != G.order:
        raise TheoremViolation("character twists of the standard lift are not distinct")
    return out


def product_formula_check(rho: QuadraticLift, elems: Sequence[Element]) -> bool:
    """prod rho(a_i) = rho(sum a_i) * prod_{i<j} chi(a_i, a_j)."""
    G = rho.group
    M = rho.modulus
    lhs = sum(rho.exponent(a) for a in elems)
    cross = sum(2 * rho.chi.exponent(elems[i], elems[j])
                for i in range(len(elems)) for j in range(i + 1, len(elems)))
    rhs = rho.exponent(G.sum(elems)) + cross
    return (lhs - rhs) % M == 0


def radical_restriction(rho: QuadraticLift) -> bool:
    """True iff rho restricted to Rad(chi) is the trivial character.

    Raises TheoremViolation if the restriction is not multiplicative against A.
    """
    G = rho.group
    M = rho.modulus
    J = rho.chi.radical()
    for r in J:
        er = rho.exponent(r)
        for b in G.elements:
            if (rho.exponent(G.add(r, b)) - er - rho.exponent(b)) % M:
                raise TheoremViolation(f"rho(r + b) != rho(r) rho(b) at r={r}, b={b}")
    return all(rho.exponent(r) == 0 for r in J)


def _power_nontrivial(rho: QuadraticLift, torsion: Sequence[Element], k: int) -> bool:
    return any((k * rho.exponent(a)) % rho.modulus for a in torsion)


def lift_power_on_torsion(chi: Bicharacter, k: int, check_all: bool = True) -> bool:
    """Whether some a in A[k] has rho(a)^k != 1; checked to be lift-independent."""
    torsion = chi.group.torsion(k)
    std = standard_lift(chi)
    answer = _power_nontrivial(std, torsion, k)
    if check_all:
        M = std.modulus
        for rho in all_lifts(chi):
            for a in torsion:
                if (k * (rho.exponent(a) - std.exponent(a))) % M:
                    raise TheoremViolation(f"rho(a)^k depends on the lift at a={a}")
    return answer
