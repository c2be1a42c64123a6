"""Double-precision recomputation of indicator formulas, sharing no code with the package."""

import itertools

import numpy as np


def elements(factors):
    return list(itertools.product(*(range(n) for n in factors)))


def chi_matrix(factors, C, N):
    E = np.array(elements(factors), dtype=np.int64).reshape(-1, len(factors))
    M = np.array(C, dtype=np.int64).reshape(len(factors), len(factors))
    return np.exp(2j * np.pi * ((E @ M @ E.T) % N) / N)


def _add_index(factors):
    elems = elements(factors)
    pos = {a: i for i, a in enumerate(elems)}
    return np.array([[pos[tuple((x + y) % n for x, y, n in zip(a, b, factors))] for b in elems]
                     for a in elems])


def tuple_sum(factors, C, N, k):
    """sum over a_1 + ... + a_k = 0 of prod_{i<j} chi(a_i, a_j), by partial sums."""
    X = chi_matrix(factors, C, N)
    add = _add_index(factors)
    n = X.shape[0]
    v = np.zeros(n, dtype=complex)
    v[0] = 1
    for _ in range(k - 1):
        w = np.zeros(n, dtype=complex)
        for s in range(n):
            if v[s] != 0:
                np.add.at(w, add[s], v[s] * X[s])
        v = w
    # the last element is forced to be -s
    neg = [int(np.where(add[s] == 0)[0][0]) for s in range(n)]
    return sum(v[s] * X[s, neg[s]] for s in range(n))


def nu_m(factors, C, N, sign, n):
    if n % 2:
        return 0j
    k = n // 2
    A = len(elements(factors))
    if k == 1:
        return complex(sign)
    return sign ** k * tuple_sum(factors, C, N, k) / A ** ((k - 1) / 2)


def torsion_count(factors, n):
    return sum(1 for a in elements(factors) if all((n * x) % m == 0 for x, m in zip(a, factors)))


def nu_category(factors, C, N, sign, n):
    A = len(elements(factors))
    return torsion_count(factors, n) + np.sqrt(A) * nu_m(factors, C, N, sign, n)


def trace_of_transform(factors, C, N):
    X = chi_matrix(factors, C, N)
    return np.sum(1 / np.diag(X)) / np.sqrt(X.shape[0])


def gauss_sum(a, p):
    i = np.arange(p)
    return np.sum(np.exp(2j * np.pi * a * i * i / p))
