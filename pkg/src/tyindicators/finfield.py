"""Closed-form indicators over F_p^r, Gauss sums, the D invariant and named examples.

The closed forms here share no code with the general indicator routes, so agreement
between the two is a real cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelian import AbelianGroup
from .cyclotomic import Cyclotomic, ScaledValue, embed_sqrt, factorize
from .errors import SpecError, TheoremViolation
from .pmg import Bicharacter, is_isometric


def _check_odd_prime(p: int) -> None:
    if p < 3 or factorize(p) != ((p, 1),):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    euler = pow(a, (p - 1) // 2, p)
    value = 1 if euler == 1 else -1
    squares = {x * x % p for x in range(1, p)}
    if (a in squares) != (value == 1):
        raise ArithmeticError(f"Euler's criterion disagrees with enumeration for ({a}/{p})")
    return value


@dataclass(frozen=True)
class LegendreContext:
    p: int

    def __post_init__(self):
        _check_odd_prime(self.p)

    @property
    def eps_p(self) -> Cyclotomic:
        return Cyclotomic.rational(1) if self.p % 4 == 1 else Cyclotomic.zeta(4, 1)

    def symbol(self, a: int) -> int:
        return legendre(a, self.p)


def eps_p(p: int) -> Cyclotomic:
    return LegendreContext(p).eps_p


def gauss_sum(a: int, p: int) -> Cyclotomic:
    """sum_i zeta_p^(a i^2) by direct summation, checked against (a/p) eps_p sqrt(p)."""
    _check_odd_prime(p)
    if a % p == 0:
        raise ValueError(f"a = {a} must be coprime to p = {p}")
    counts = [0] * p
    for i in range(p):
        counts[a * i * i % p] += 1
    g = Cyclotomic.from_counts(p, counts)
    expected = eps_p(p) * embed_sqrt(p) * legendre(a, p)
    if g != expected:
        raise TheoremViolation(f"Gauss sum identity fails for a={a}, p={p}")
    return g


def _det_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in M]
    n = len(rows)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % p
        inv = pow(rows[c][c], -1, p)
        for i in range(c + 1, n):
            f = rows[i][c] * inv % p
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return det % p


def _prime_field_rank(chi: Bicharacter) -> Tuple[int, int]:
    f = chi.group.factors
    if not f or len(set(f)) != 1 or factorize(f[0]) != ((f[0], 1),):
        raise SpecError(f"{chi.group} is not of the form F_p^r")
    return f[0], len(f)


def d_invariant(chi: Bicharacter) -> int:
    """Legendre symbol of det B for chi = chi_B on F_p^r, p odd."""
    p, _ = _prime_field_rank(chi)
    _check_odd_prime(p)
    if not chi.is_symmetric():
        raise SpecError("D(chi) needs a symmetric form")
    det = _det_mod_p(chi.matrix, p)
    if det == 0:
        raise SpecError("D(chi) needs a non-degenerate form")
    return legendre(det, p)


def closed_form_fp(p: int, r: int, D: int, tau_sign: int, k: int) -> ScaledValue:
    """nu_2k(m) for TY(F_p^r, chi, tau) with D(chi) = D, p odd."""
    _check_odd_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    eps = eps_p(p)
    sign = tau_sign ** k
    m2 = legendre(-2, p)
    if k % p:
        value = eps ** (r * (k + 1)) * (sign * legendre(-k, p) ** r * m2 ** (r * (k + 1)) * D ** (k + 1))
        return ScaledValue(value)
    value = eps ** (r * k) * (sign * m2 ** (r * k) * D ** k)
    return ScaledValue(value, p, -r)


def closed_form_f2(r: int, form: str, tau_sign: int, k: int) -> ScaledValue:
    """nu_2k(m) for TY(F_2^r, chi_form, tau).

    For the diagonal form this is sgn^k zeta_8^(rk) ((1 + i^-k) / sqrt 2)^r.
    """
    if k < 1:
        raise ValueError("k must be positive")
    sign = tau_sign ** k
    if form == "sym":
        i_minus_k = Cyclotomic.zeta(4, -k)
        num = Cyclotomic.zeta(8, r * k) * (Cyclotomic.rational(1) + i_minus_k) ** r * sign
        return ScaledValue(num, 2, r)
    if form == "alt":
        if r % 2:
            raise SpecError("the alternating form needs even r")
        if k % 2:
            return ScaledValue(tau_sign)
        return ScaledValue(1, 2, -r)
    raise SpecError(f"unknown form {form!r}; expected 'sym' or 'alt'")


# -- classification ----------------------------------------------------------


def _partition(keys: Sequence) -> List[List[int]]:
    classes: Dict = {}
    for i, key in enumerate(keys):
        classes.setdefault(key, []).append(i)
    return list(classes.values())


def _key(*values: ScaledValue) -> Tuple[str, ...]:
    return tuple(v.render() for v in values)


def is_elementary_abelian(G: AbelianGroup) -> bool:
    f = G.factors
    return bool(f) and len(set(f)) == 1 and factorize(f[0]) == ((f[0], 1),)


def _isometry_partition(categories: Sequence) -> List[List[int]]:
    G = categories[0].group
    reps: List[int] = []
    labels = []
    for i, C in enumerate(categories):
        for j in reps:
            D = categories[j]
            if C.tau_sign == D.tau_sign and is_isometric(C.chi, D.chi, bound=max(64, G.order)):
                labels.append(j)
                break
        else:
            reps.append(i)
            labels.append(i)
    return _partition(labels)


def _m_partition(categories: Sequence, ns: Sequence[int]) -> List[List[int]]:
    return _partition([_key(*(C.nu_m(n) for n in ns)) for C in categories])


def separating_indicators(categories: Sequence) -> Tuple[int, ...]:
    """Smallest (2, 4, 6, ...) whose nu_n(m) values reproduce the isometry partition.

    Over F_p^r this is always (2, 4). Elsewhere the pair can collapse classes
    (a Z2 factor forces nu_4(m) = 0, for example) and higher n are appended, up
    to n = 4 exp(A).
    """
    if not categories:
        return (2, 4)
    by_iso = sorted(_isometry_partition(categories))
    ns = [2, 4]
    limit = 4 * categories[0].group.exponent
    while sorted(_m_partition(categories, ns)) != by_iso:
        if ns[-1] + 2 > max(limit, 4):
            raise TheoremViolation(f"nu_n(m) for n <= {ns[-1]} does not separate "
                                   f"the categories over {categories[0].group}")
        ns.append(ns[-1] + 2)
    return tuple(ns)


def classify_by_indicators(categories: Sequence, ns: Optional[Sequence[int]] = None,
                           check: bool = True) -> List[List[int]]:
    """Partition indices by (nu_n(m))_{n in ns}; checked against isometry classes and nu(C).

    ns defaults to (2, 4) over F_p^r and to separating_indicators() elsewhere.
    """
    if not categories:
        return []
    G = categories[0].group
    if any(C.group != G for C in categories):
        raise SpecError("classification needs categories over one group")
    if ns is None:
        ns = (2, 4) if is_elementary_abelian(G) or G.order == 1 else separating_indicators(categories)
    by_m = _m_partition(categories, ns)
    if check:
        by_c = _partition([_key(*(C.nu_category(n) for n in ns)) for C in categories])
        by_iso = _isometry_partition(categories)
        if sorted(by_m) != sorted(by_c) or sorted(by_m) != sorted(by_iso):
            raise TheoremViolation(f"indicator partition {by_m} differs from {by_c} or {by_iso}")
    return by_m


def nondegenerate_forms(G: AbelianGroup, bound: int = 64) -> List[Bicharacter]:
    """One representative of each isometry class of non-degenerate symmetric bicharacters."""
    N = G.exponent
    r = G.rank
    steps = [[N // math.gcd(G.factors[i], G.factors[j]) for j in range(r)] for i in range(r)]
    slots = [(i, j) for i in range(r) for j in range(i, r)]
    ranges = [range(0, N, steps[i][j]) for i, j in slots]
    reps: List[Bicharacter] = []
    for values in itertools.product(*ranges):
        C = [[0] * r for _ in range(r)]
        for (i, j), v in zip(slots, values):
            C[i][j] = C[j][i] = v
        chi = Bicharacter(G, C)
        if not chi.is_nondegenerate():
            continue
        if any(is_isometric(chi, rep, bound=bound) for rep in reps):
            continue
        reps.append(chi)
    return reps


# -- named examples ------------------------------------------------------------


def _closure(gens: List[np.ndarray]) -> List[np.ndarray]:
    identity = np.eye(gens[0].shape[0], dtype=gens[0].dtype)
    seen = {identity.tobytes(): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                key = y.tobytes()
                if key not in seen:
                    seen[key] = y
                    nxt.append(y)
        frontier = nxt
    return list(seen.values())


def _torsion_counts(elems: List[np.ndarray], ns: Sequence[int]) -> List[int]:
    identity = np.eye(elems[0].shape[0], dtype=elems[0].dtype)
    out = []
    for n in ns:
        out.append(sum(1 for g in elems if np.array_equal(np.linalg.matrix_power(g, n), identity)))
    return out


def dihedral8() -> List[np.ndarray]:
    r = np.array([[0, -1], [1, 0]], dtype=np.int64)
    s = np.array([[1, 0], [0, -1]], dtype=np.int64)
    return _closure([r, s])


def quaternion8() -> List[np.ndarray]:
    # units of the quaternions as 4x4 real matrices (left multiplication)
    i = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64)
    j = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)
    return _closure([i, j])


def b8_indicators(n: int) -> int:
    """Regular-representation indicators of the 8-dimensional Kac-Paljutkin algebra."""
    if n % 2:
        return 1
    return {2: 6, 4: 4, 6: 6, 0: 8}[n % 8]


def h2p2_indicators(p: int, n: int) -> int:
    g = math.gcd(n, p)
    return g * g + (p * g if n % 2 == 0 else 0)


@dataclass(frozen=True)
class NamedExample:
    name: str
    group: AbelianGroup
    chi: Bicharacter
    tau_sign: int
    label: str
    vector: Tuple[int, ...]


def _vector(C, ns) -> Tuple:
    out = []
    for n in ns:
        v = C.nu_category(n).to_cyclotomic()
        out.append(int(v.to_rational()) if v.is_rational() and v.to_rational().denominator == 1 else v)
    return tuple(out)


def _match(name: str, target: Sequence[int], candidates, ns) -> Tuple:
    hits = [(label, C) for label, C in candidates if _vector(C, ns) == tuple(target)]
    if len(hits) != 1:
        raise TheoremViolation(f"{name}: expected one matching category, found {[h[0] for h in hits]}")
    return hits[0]


def named_examples(primes: Sequence[int] = (3, 5)) -> List[NamedExample]:
    from .tycat import TYCategory

    ns8 = range(1, 9)
    V = AbelianGroup([2, 2])
    cands = [(f"{form},{'+' if t > 0 else '-'}", TYCategory(chi, t))
             for form, chi in (("sym", Bicharacter.sym(2)), ("alt", Bicharacter.alt(2)))
             for t in (1, -1)]
    out = []
    targets = [
        ("B8", [b8_indicators(n) for n in ns8], "sym,+"),
        ("D8", _torsion_counts(dihedral8(), ns8), "alt,+"),
        ("Q8", _torsion_counts(quaternion8(), ns8), "alt,-"),
    ]
    for name, target, expected in targets:
        label, C = _match(name, target, cands, ns8)
        if label != expected:
            raise TheoremViolation(f"{name} matched {label}, expected {expected}")
        out.append(NamedExample(name, V, C.chi, C.tau_sign, label, tuple(target)))
    for p in primes:
        _check_odd_prime(p)
        ns = range(1, 2 * p * p + 1)
        nonres = next(a for a in range(2, p) if legendre(a, p) == -1)
        cands = [(f"D={legendre(c, p):+d},{'+' if t > 0 else '-'}", TYCategory(Bicharacter.diag(p, [1, c]), t))
                 for c in (1, nonres) for t in (1, -1)]
        target = [h2p2_indicators(p, n) for n in ns]
        label, C = _match(f"H_2*{p}^2", target, cands, ns)
        eps2 = 1 if p % 4 == 1 else -1
        if C.tau_sign != 1 or d_invariant(C.chi) != eps2:
            raise TheoremViolation(f"H_2p^2 for p={p} matched {label}")
        out.append(NamedExample(f"H_{2 * p * p}", C.group, C.chi, C.tau_sign, label, tuple(target)))
    return out
