import numpy as np
import pytest

import float_oracle as fo
from tyindicators.finfield import gauss_sum
from tyindicators.fourier import trace_of_transform
from tyindicators.tycat import xi_invariant
from tyindicators.verify import default_categories, degenerate_corpus, nondegenerate_corpus

TOL = 1e-9


def float_track_mismatches(cats, nmax=12):
    """Compare exact values against the float oracle; returns a list of mismatch strings."""
    bad = []
    for C in cats:
        f, M, N = list(C.group.factors), [list(r) for r in C.chi.matrix], C.chi.N
        for n in range(1, nmax + 1):
            pairs = [("nu_m", C.nu_m(n), fo.nu_m(f, M, N, C.tau_sign, n)),
                     ("nu_C", C.nu_category(n), fo.nu_category(f, M, N, C.tau_sign, n))]
            for name, exact, approx in pairs:
                if abs(exact.to_complex() - approx) > TOL:
                    bad.append(f"{C} {name} n={n}: {exact.to_complex()} vs {approx}")
    for chi in nondegenerate_corpus() + degenerate_corpus():
        f, M, N = list(chi.group.factors), [list(r) for r in chi.matrix], chi.N
        if abs(trace_of_transform(chi).to_complex() - fo.trace_of_transform(f, M, N)) > TOL:
            bad.append(f"trace {chi}")
        if chi.is_nondegenerate():
            A = chi.group.order
            for k in (2, 3):
                tk = fo.torsion_count(f, k)
                approx = fo.tuple_sum(f, M, N, k) / np.sqrt(A ** (k - 1) * tk)
                if abs(xi_invariant(chi, k).to_complex() - approx) > TOL:
                    bad.append(f"Xi_{k} {chi}")
    for p in (3, 5, 7, 11, 13):
        for a in range(1, p):
            if abs(gauss_sum(a, p).to_complex() - fo.gauss_sum(a, p)) > TOL:
                bad.append(f"gauss a={a} p={p}")
    return bad


def test_float_track_corpus():
    assert float_track_mismatches(default_categories()) == []


@pytest.mark.parametrize("n", [2, 4, 6])
def test_float_oracle_reproduces_frozen_values(n):
    sym = {2: 1, 4: 0, 6: 1}
    assert fo.nu_m([2, 2], [[1, 0], [0, 1]], 2, 1, n) == pytest.approx(sym[n], abs=TOL)
