"""Tambara-Yamagami categories TY(A, chi, tau): indicators, center data and related invariants.

Indicators of the non-invertible object m are available through four
independent routes (Fourier transform of a lift, iterated convolution, the
closed tuple sum, and twists of the Drinfeld center).  All return a
``ScaledValue`` with base |A|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .abelian import DEFAULT_AUT_BOUND, Element, Homomorphism, Presentation, subquotient
from .cyclotomic import Cyclotomic, ScaledValue, divisors, embed_sqrt
from .errors import BoundExceeded, NotSquare, SpecError, TheoremViolation
from .pmg import Bicharacter, PseudoMetricGroup
from .quadlift import QuadraticLift, all_lifts, lift_power_on_torsion, standard_lift

DEFAULT_WORK_BOUND = 10 ** 7
ROUTES = ("fourier", "convolution", "closed", "center")

_CHUNK = 1 << 18


@dataclass(frozen=True)
class CenterSimple:
    """A simple object of the Drinfeld center: X(a, eps), Y(a, b) or Z(rho, Delta)."""

    kind: str
    label: tuple
    pdim: ScaledValue
    twist: Cyclotomic

    def describe(self) -> str:
        if self.kind == "X":
            a, eps = self.label
            return f"X[{a},{eps.render()}]"
        if self.kind == "Y":
            return f"Y[{self.label[0]},{self.label[1]}]"
        j, delta = self.label
        return f"Z[rho{j},{delta.render()}]"


@dataclass(frozen=True)
class Certificate:
    xi: Cyclotomic
    vanishes: bool
    xi_square_sign: Optional[int]
    xi_order: Optional[int]


@dataclass(frozen=True)
class FiberWitness:
    sigma: Homomorphism
    presentation: Presentation
    chi_bar: Bicharacter
    rho: QuadraticLift

    @property
    def V(self):
        return self.presentation.group


def _tuple_sum(chi: Bicharacter, k: int, bound: int) -> Cyclotomic:
    """sum over a_1 + ... + a_k = 0 of prod_{i<j} chi(a_i, a_j), by direct enumeration."""
    G = chi.group
    n = G.order
    if k < 1:
        raise ValueError("k must be positive")
    terms = n ** (k - 1)
    if terms > bound:
        raise BoundExceeded(f"closed tuple sum needs |A|^(k-1) = {terms} terms, above the work "
                            f"bound {bound}; raise it with --bound-terms")
    N = chi.N
    T = chi.table
    add = G.add_table
    neg = np.asarray(G.neg_table, dtype=np.int64)
    counts = np.zeros(N, dtype=np.int64)
    for start in range(0, terms, _CHUNK):
        t = np.arange(start, min(terms, start + _CHUNK), dtype=np.int64)
        idx = []
        total = np.zeros_like(t)
        for _ in range(k - 1):
            a = t % n
            t = t // n
            idx.append(a)
            total = add[total, a]
        idx.append(neg[total])
        e = np.zeros_like(total)
        for i in range(k):
            for j in range(i + 1, k):
                e += T[idx[i], idx[j]]
        counts += np.bincount(e % N, minlength=N)
    return Cyclotomic.from_counts(N, [int(c) for c in counts])


def xi_invariant(p, k: int, bound: int = DEFAULT_WORK_BOUND) -> ScaledValue:
    """Normalised tuple sum |B|^{-(k-1)/2} |B[k]|^{-1/2} sum prod_{i<j} beta(b_i, b_j)."""
    chi = p.chi if isinstance(p, PseudoMetricGroup) else p
    B = chi.group
    S = _tuple_sum(chi, k, bound)
    value = ScaledValue(S, B.order ** (k - 1) * len(B.torsion(k)), 1)
    if chi.is_nondegenerate() and not value.is_zero():
        if value.to_cyclotomic().root_of_unity_order() is None:
            raise TheoremViolation(f"Xi_{k} = {value} is neither zero nor a root of unity")
    return value


def _root_exponent(w: Cyclotomic) -> Tuple[int, int]:
    """(M, j) with w = zeta_M^j and M the order of w."""
    M = w.root_of_unity_order()
    if M is None:
        raise TheoremViolation(f"{w.render()} is not a root of unity")
    for j in range(M):
        if math.gcd(j, M) == 1 and Cyclotomic.zeta(M, j) == w:
            return M, j
    raise TheoremViolation(f"could not locate {w.render()} among the {M}-th roots of unity")


class TYCategory:
    """TY(A, chi, tau) with chi non-degenerate symmetric and tau = sign * |A|^(-1/2)."""

    def __init__(self, chi: Bicharacter, tau_sign: int):
        if isinstance(chi, PseudoMetricGroup):
            chi = chi.chi
        if tau_sign not in (1, -1):
            raise SpecError(f"tau sign must be +1 or -1, got {tau_sign}")
        if not chi.is_symmetric():
            raise SpecError("TY data needs a symmetric bicharacter")
        if not chi.is_nondegenerate():
            raise SpecError("TY data needs a non-degenerate bicharacter")
        self.chi = chi
        self.group = chi.group
        self.tau_sign = tau_sign

    def __repr__(self) -> str:
        return f"TYCategory({self.group}, {list(map(list, self.chi.matrix))}, {'+' if self.tau_sign > 0 else '-'})"

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def tau(self) -> ScaledValue:
        return ScaledValue(self.tau_sign, self.order, 1)

    @property
    def global_dimension(self) -> int:
        return 2 * self.order

    @property
    def fpdim_m(self) -> ScaledValue:
        return ScaledValue(1, self.order, -1)

    # -- lifts and transforms ---------------------------------------------

    @cached_property
    def lifts(self) -> List[QuadraticLift]:
        return all_lifts(self.chi)

    @cached_property
    def standard(self) -> QuadraticLift:
        return standard_lift(self.chi)

    def _lift(self, lift) -> QuadraticLift:
        if lift is None:
            return self.standard
        if isinstance(lift, int):
            return self.lifts[lift]
        return lift

    def _hat_numerators(self, rho: QuadraticLift) -> List[Cyclotomic]:
        """sum_x rho(x) chi(x, a)^-1 for every a, i.e. sqrt|A| times the transform of rho."""
        M = rho.modulus
        idx = (rho.exps[:, None] - 2 * self.chi.table) % M
        return [Cyclotomic.from_counts(M, [int(c) for c in np.bincount(idx[:, a], minlength=M)])
                for a in range(self.order)]

    # -- indicators -------------------------------------------------------

    def nu_invertible(self, a: Element, n: int) -> int:
        self.group.check(a)
        return 1 if self.group.mul(n, a) == self.group.zero else 0

    def nu_m(self, n: int, route: str = "fourier", lift=None,
             bound: int = DEFAULT_WORK_BOUND) -> ScaledValue:
        if n < 1:
            raise ValueError("n must be positive")
        if route not in ROUTES + ("izumi",):
            raise ValueError(f"unknown route {route!r}")
        if n % 2:
            return ScaledValue(0, self.order, 0)
        k = n // 2
        sign = self.tau_sign ** k
        A = self.order
        if route == "fourier":
            hats = self._hat_numerators(self._lift(lift))
            s = Cyclotomic.rational(0)
            for h in hats:
                s = s + h ** k
            return ScaledValue(s * sign, A, k + 1)
        if route == "izumi":
            rho = self._lift(lift)
            h0 = self._hat_numerators(rho)[0]
            counts = np.bincount((-k * rho.exps) % rho.modulus, minlength=rho.modulus)
            s = Cyclotomic.from_counts(rho.modulus, [int(c) for c in counts])
            return ScaledValue(h0 ** k * s * sign, A, k + 1)
        if route == "convolution":
            return ScaledValue(self._convolution_power_at_zero(self._lift(lift), k) * sign, A, k - 1)
        if route == "closed":
            return ScaledValue(_tuple_sum(self.chi, k, bound) * sign, A, k - 1)
        # center: (1 / dim C) sum over Z objects of Delta^n * sqrt|A|
        s = Cyclotomic.rational(0)
        for z in self.center_simples():
            if z.kind == "Z":
                s = s + z.twist ** n
        return ScaledValue(s * Fraction(1, 2 * A), A, -1)

    def _convolution_power_at_zero(self, rho: QuadraticLift, k: int) -> Cyclotomic:
        G = self.group
        M = rho.modulus
        n = G.order
        dtype = object if n ** max(k - 1, 1) > 2 ** 60 else np.int64
        e = [int(x) for x in rho.exps]
        R = np.zeros((n, M), dtype=dtype)
        for x in range(n):
            R[x, e[x]] = 1
        add = G.add_table
        neg = G.neg_table
        F = R
        for _ in range(k - 1):
            H = np.zeros((n, M), dtype=dtype)
            for x in range(n):
                H += np.roll(F[add[:, neg[x]]], e[x], axis=1)
            F = H
        return Cyclotomic.from_counts(M, [int(c) for c in F[G.index(G.zero)]])

    # -- Drinfeld center --------------------------------------------------

    def center_simples(self) -> List[CenterSimple]:
        if not hasattr(self, "_center"):
            self._center = self._build_center()
        return self._center

    def _build_center(self) -> List[CenterSimple]:
        G = self.group
        A = self.order
        N = self.chi.N
        one = ScaledValue(1)
        out: List[CenterSimple] = []
        for a in G.elements:
            c = self.chi.exponent(a, a)
            twist = Cyclotomic.zeta(N, c)
            for eps in (Cyclotomic.zeta(2 * N, c), Cyclotomic.zeta(2 * N, c + N)):
                out.append(CenterSimple("X", (a, eps), one, twist))
        elems = G.elements
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                out.append(CenterSimple("Y", (a, b), ScaledValue(2), self.chi(a, b)))
        sqrtA = ScaledValue(1, A, -1)
        for j, rho in enumerate(self.lifts):
            total = Cyclotomic.from_counts(rho.modulus, [int(c) for c in np.bincount(rho.exps, minlength=rho.modulus)])
            w = ScaledValue(total * self.tau_sign, A, 1).to_cyclotomic()
            M, e = _root_exponent(w)
            for delta in (Cyclotomic.zeta(2 * M, e), Cyclotomic.zeta(2 * M, e + M)):
                if delta * delta != w:
                    raise TheoremViolation("Delta does not square to tau * sum rho")
                out.append(CenterSimple("Z", (j, delta), sqrtA, delta))
        counts = {k: sum(1 for s in out if s.kind == k) for k in "XYZ"}
        if counts != {"X": 2 * A, "Y": A * (A - 1) // 2, "Z": 2 * A}:
            raise TheoremViolation(f"unexpected center object counts {counts}")
        dim2 = sum((s.pdim * s.pdim).to_cyclotomic().to_rational() for s in out)
        if dim2 != 4 * A * A:
            raise TheoremViolation(f"sum of squared dimensions {dim2} != {4 * A * A}")
        return out

    def nu_via_center(self, V: Union[str, Element], n: int) -> ScaledValue:
        """(1 / dim C) sum_X theta_X^n pdim(X) dim Hom(V, X), multiplicities read off the labels."""
        A = self.order
        s = ScaledValue(0)
        for X in self.center_simples():
            if V == "m":
                mult = 1 if X.kind == "Z" else 0
            elif X.kind == "X":
                mult = 1 if X.label[0] == tuple(V) else 0
            elif X.kind == "Y":
                mult = 1 if tuple(V) in X.label else 0
            else:
                mult = 0
            if mult:
                s = s + X.pdim * (X.twist ** n) * mult
        return s * Fraction(1, 2 * A)

    # -- sums of indicators -------------------------------------------------

    def nu_category(self, n: int, route: str = "fourier") -> ScaledValue:
        inv = len(self.group.torsion(n))
        return ScaledValue(inv) + self.nu_m(n, route) * self.fpdim_m

    def _xi(self, k: int) -> Tuple[ScaledValue, Cyclotomic]:
        nu = self.nu_m(2 * k)
        tk = len(self.group.torsion(k))
        xi = nu.to_cyclotomic() / embed_sqrt(tk)
        if xi * xi * tk != nu.to_cyclotomic() ** 2:
            raise TheoremViolation("xi^2 |A[k]| differs from nu^2")
        return nu, xi

    def nu_category_decompose(self, k: int) -> Tuple[int, Cyclotomic]:
        G = self.group
        t1, t2 = len(G.torsion(k)), len(G.torsion(2 * k))
        ratio = t2 // t1
        r = ratio.bit_length() - 1
        if t2 % t1 or ratio != 1 << r:
            raise TheoremViolation(f"|A[2k]|/|A[k]| = {t2}/{t1} is not a power of two")
        _, xi = self._xi(k)
        if not (xi.is_zero() or xi ** 8 == 1):
            raise TheoremViolation(f"xi = {xi.render()} is not in mu_8 or zero")
        rebuilt = (Cyclotomic.rational(2 ** r) + embed_sqrt(self.order // t1) * xi) * t1
        if rebuilt != self.nu_category(2 * k).to_cyclotomic():
            raise TheoremViolation("decomposition does not reproduce nu_2k(C)")
        return r, xi

    def arithmetic_certificate(self, k: int) -> Certificate:
        _, xi = self._xi(k)
        order = None
        if not xi.is_zero():
            order = xi.root_of_unity_order()
            if order is None or 8 % order:
                raise TheoremViolation(f"xi = {xi.render()} is not an 8th root of unity")
        vanishes = lift_power_on_torsion(self.chi, k)
        if vanishes != xi.is_zero():
            raise TheoremViolation(f"vanishing criterion mismatch at k={k}: xi={xi.render()}")
        sq = None
        if self.order % 2:
            x2 = xi * xi
            if x2 == 1:
                sq = 1
            elif x2 == -1:
                sq = -1
            else:
                raise TheoremViolation(f"xi^2 = {x2.render()} is not +-1 for odd |A|")
            q = self.order ** (k - 1) // len(self.group.torsion(k))
            expected = 1 if q % 4 == 1 else -1
            if sq != expected:
                raise TheoremViolation(f"xi^2 = {sq} but the mod-4 criterion predicts {expected}")
        return Certificate(xi, vanishes, sq, order)

    def frobenius_check(self) -> Dict[int, bool]:
        out = {}
        for n in divisors(self.global_dimension):
            v = self.nu_category(n).to_cyclotomic() / n
            out[n] = v.is_algebraic_integer()
        return out

    def trace_antipode(self) -> ScaledValue:
        return ScaledValue(len(self.group.torsion(2))) + ScaledValue(self.tau_sign, self.order, -1)

    # -- fiber functors -----------------------------------------------------

    def fiber_functor_search(self, bound: int = DEFAULT_AUT_BOUND) -> List[FiberWitness]:
        A = self.order
        if math.isqrt(A) ** 2 != A:
            raise NotSquare(f"|A| = {A} is not a perfect square, so TY({self.group}) has no fiber functor")
        G = self.group
        chi = self.chi
        witnesses = []
        for sigma in G.automorphisms(bound=bound):
            if not all(sigma(sigma(g)) == g for g in G.generators()):
                continue
            if any(chi.exponent(a, sigma(a)) for a in G.elements):
                continue
            fixed = [a for a in G.elements if sigma(a) == a]
            image = sorted({G.add(a, sigma(a)) for a in G.elements})
            _, pres = subquotient(G, fixed, image)
            chi_bar = Bicharacter.from_turns(
                pres.group, lambda x, y: chi.turns(pres.to_concrete[x], pres.to_concrete[y]))
            V = pres.group.order
            for rho in all_lifts(chi_bar):
                if not rho.is_sign_valued():
                    continue
                total = sum(1 if e == 0 else -1 for e in rho.exps)
                if ScaledValue(total, V, 1) == self.tau_sign:
                    witnesses.append(FiberWitness(sigma, pres, chi_bar, rho))
        return witnesses
