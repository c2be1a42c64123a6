"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) for the report alone, or under
pytest, where the lines are repeated in the terminal summary.
"""

import itertools
import math
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from float_oracle import nu_m as float_nu_m  # noqa: E402
from test_float_track import float_track_mismatches  # noqa: E402
from tyindicators.abelian import AbelianGroup  # noqa: E402
from tyindicators.cyclotomic import Cyclotomic  # noqa: E402
from tyindicators.errors import TYError  # noqa: E402
from tyindicators.finfield import (classify_by_indicators, is_elementary_abelian,  # noqa: E402
                                   named_examples, nondegenerate_forms, separating_indicators)
from tyindicators.pmg import Bicharacter, is_isometric  # noqa: E402
from tyindicators.tycat import TYCategory, xi_invariant  # noqa: E402
from tyindicators.verify import (default_categories, predicted_frobenius_failures,  # noqa: E402
                                 run_suite)

RESULTS = []

F2_TABLE = {
    ("alt", 1): [0, 1, 0, 2, 0, 1, 0, 2],
    ("alt", -1): [0, -1, 0, 2, 0, -1, 0, 2],
    ("sym", 1): [0, 1, 0, 0, 0, 1, 0, 2],
    ("sym", -1): [0, -1, 0, 0, 0, -1, 0, 2],
}


def report(number, title, ok, detail="", seconds=None):
    status = "PASS" if ok else "FAIL"
    timing = f" [{seconds:.1f}s]" if seconds is not None else ""
    line = f"criterion {number:>2} {status}  {title}{timing}"
    if detail:
        line += f"  -- {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _suite_ok(checks):
    bad = [c for c in checks if not c.ok]
    total = sum(c.instances for c in checks)
    detail = f"{total} instances"
    if bad:
        detail += f"; {bad[0].anchor}: {bad[0].failures[0]}"
    return not bad, detail


# -- criteria ------------------------------------------------------------------

def criterion_1():
    t = time.perf_counter()
    forms = {"alt": Bicharacter.alt(2), "sym": Bicharacter.sym(2)}
    wrong = []
    for (name, tau), row in F2_TABLE.items():
        C = TYCategory(forms[name], tau)
        got = [C.nu_m(n) for n in range(1, 9)]
        if got != row:
            wrong.append(f"{name},{tau}: {[v.render() for v in got]}")
    dt = time.perf_counter() - t
    return report(1, "F2^2 indicators of m, n = 1..8", not wrong and dt < 1,
                  "; ".join(wrong) or "4 rows exact", dt)


def criterion_2():
    t = time.perf_counter()
    cats = default_categories()
    groups = sorted({str(C.group) for C in cats})
    routes = run_suite("routes", cats, kmax=6)
    ok, detail = _suite_ok(routes)
    dt = time.perf_counter() - t
    ok = ok and len(cats) >= 12 and dt < 60
    return report(2, "four routes agree for n <= 12, every lift", ok,
                  f"{len(cats)} categories over {', '.join(groups)}; {detail}", dt)


def criterion_3():
    t = time.perf_counter()
    ok, detail = _suite_ok(run_suite("arithmetic", default_categories(), kmax=6))
    xi = xi_invariant(Bicharacter.cyclic(8, -1), 2)
    special = xi == Cyclotomic.zeta(8)
    return report(3, "xi in mu_8 or 0, vanishing and mod-4 criteria", ok and special,
                  f"{detail}; Xi_2(Z8, zeta^-ij) = {xi.render()} = z8", time.perf_counter() - t)


def criterion_4():
    t = time.perf_counter()
    checks = run_suite("fourier")
    ok, detail = _suite_ok(checks)
    conv = next(c for c in checks if c.anchor.startswith("convolution"))
    gauss = next(c for c in checks if c.anchor.startswith("Gauss"))
    ok = ok and conv.instances == 100 and gauss.instances == 2 + 4 + 6 + 10 + 12
    return report(4, "Fourier identities, trace parity, Gauss sums", ok, detail,
                  time.perf_counter() - t)


def criterion_5():
    t = time.perf_counter()
    checks = run_suite("closedforms", kmax=6)
    ok, detail = _suite_ok(checks)
    fp, f2 = checks
    # 3 primes x 2 ranks x 2 D x 2 signs x 6 k;  (4 sym + 2 alt ranks) x 2 signs x 6 k
    ok = ok and fp.instances == 144 and f2.instances == 72
    return report(5, "closed forms over F_p^r and F_2^r match the routes", ok, detail,
                  time.perf_counter() - t)


FROBENIUS_GOOD = ([5], [3, 3], [13])
FROBENIUS_BAD = ([3], [7])


def _all_categories(factors):
    return [TYCategory(chi, tau) for chi in nondegenerate_forms(AbelianGroup(factors))
            for tau in (1, -1)]


def frobenius_failures(C):
    return sorted(n for n, ok in C.frobenius_check().items() if not ok)


def criterion_6():
    t = time.perf_counter()
    problems = []
    for C in default_categories():
        for n in range(1, 2 * C.order + 1, 2):
            if C.nu_category(n) != len(C.group.torsion(n)):
                problems.append(f"{C} odd n={n}")
    for f in FROBENIUS_GOOD:
        for C in _all_categories(f):
            if frobenius_failures(C):
                problems.append(f"{C} fails at {frobenius_failures(C)}")
    seen = {}
    for f in FROBENIUS_BAD:
        for C in _all_categories(f):
            failed = frobenius_failures(C)
            seen[str(C.group)] = failed
            if 2 not in failed or set(failed) != predicted_frobenius_failures(C):
                problems.append(f"{C} fails at {failed}, predicted "
                                f"{sorted(predicted_frobenius_failures(C))}")
    detail = "; ".join(problems) or (
        "odd n sums exact; Z5, Z3^2, Z13 pass; n=2 fails (expected) with failure sets "
        + ", ".join(f"{g}: {v}" for g, v in seen.items())
        + " matching the derived mod-4 prediction; the literal 'only n=2' reading is xfail")
    return report(6, "odd indicator sums and Frobenius divisibility", not problems, detail,
                  time.perf_counter() - t)


def criterion_7():
    t = time.perf_counter()
    C = TYCategory(Bicharacter.hyperbolic(4, 1), -1)
    trace = C.trace_antipode()
    witnesses = C.fiber_functor_search(bound=200)
    dt = time.perf_counter() - t
    ok = trace == 0 and len(witnesses) >= 1 and dt < 30
    return report(7, "Z4^2 hyperbolic, tau = -1/4: zero antipode trace, fiber functor", ok,
                  f"trace {trace.render()}, {len(witnesses)} witnesses", dt)


def criterion_8():
    t = time.perf_counter()
    rows = {ex.name: ex for ex in named_examples((3, 5))}
    ok = (rows["B8"].vector == (1, 6, 1, 4, 1, 6, 1, 8) and rows["B8"].label == "sym,+"
          and rows["D8"].label == "alt,+" and rows["Q8"].label == "alt,-"
          and "H_18" in rows and "H_50" in rows)
    detail = ", ".join(f"{k} -> {v.label}" for k, v in rows.items())
    return report(8, "named examples B8, D8, Q8, H_18, H_50", ok, detail, time.perf_counter() - t)


CORPUS_GROUPS = ([2], [3], [4], [5], [8], [2, 2], [3, 3], [4, 2], [4, 4])


def _all_presentations(G):
    """Every non-degenerate symmetric matrix on G (isometric ones included)."""
    N, r = G.exponent, G.rank
    slots = [(i, j) for i in range(r) for j in range(i, r)]
    ranges = [range(0, N, N // math.gcd(G.factors[i], G.factors[j])) for i, j in slots]
    out = []
    for values in itertools.product(*ranges):
        M = [[0] * r for _ in range(r)]
        for (i, j), v in zip(slots, values):
            M[i][j] = M[j][i] = v
        chi = Bicharacter(G, M)
        if chi.is_nondegenerate():
            out.append(chi)
    return out


def criterion_9():
    t = time.perf_counter()
    problems, notes = [], []
    for f in CORPUS_GROUPS:
        G = AbelianGroup(f)
        cats = [TYCategory(chi, tau) for chi in _all_presentations(G) for tau in (1, -1)]
        try:
            parts = classify_by_indicators(cats)
        except TYError as exc:  # report rather than abort the sweep
            problems.append(f"{G}: {exc}")
            continue
        # classes must be exactly the (isometry, tau) classes
        for cls in parts:
            a = cats[cls[0]]
            for i in cls[1:]:
                b = cats[i]
                if a.tau_sign != b.tau_sign or is_isometric(a.chi, b.chi, bound=200) is None:
                    problems.append(f"{G}: merged non-equivalent {a} and {b}")
        reps = [cats[c[0]] for c in parts]
        for a, b in itertools.combinations(reps, 2):
            if a.tau_sign == b.tau_sign and is_isometric(a.chi, b.chi, bound=200) is not None:
                problems.append(f"{G}: split equivalent {a} and {b}")
        if is_elementary_abelian(G):
            if sorted(classify_by_indicators(cats, ns=(2, 4))) != sorted(parts):
                problems.append(f"{G}: (nu_2, nu_4) does not classify")
        else:
            ns = separating_indicators(cats)
            if ns != (2, 4):
                notes.append(f"{G} needs nu_n(m) for n in {ns}")
        if len(cats) > len(parts):
            notes.append(f"{G}: {len(cats)} presentations -> {len(parts)} classes")
    detail = "; ".join(problems) or "; ".join(notes)
    return report(9, "indicator classification = isometry classes x tau", not problems, detail,
                  time.perf_counter() - t)


def criterion_10():
    t = time.perf_counter()
    bad = float_track_mismatches(default_categories())
    return report(10, "float track agrees to 1e-9", not bad, "; ".join(bad[:3]) or "corpus clean",
                  time.perf_counter() - t)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    assert criterion()


@pytest.mark.xfail(strict=True, reason="Z3 also fails at n=6 and Z7 at n=14; see decisions ledger")
def test_frobenius_fails_only_at_two_literal_reading():
    for f in FROBENIUS_BAD:
        for C in _all_categories(f):
            assert frobenius_failures(C) == [2]


def test_float_oracle_matches_frozen_f2_table():
    forms = {"alt": [[0, 1], [1, 0]], "sym": [[1, 0], [0, 1]]}
    for (name, tau), row in F2_TABLE.items():
        got = [float_nu_m([2, 2], forms[name], 2, tau, n) for n in range(1, 9)]
        assert got == pytest.approx(row, abs=1e-9)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
