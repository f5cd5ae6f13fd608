"""Oracle-equivalence and invariant suites behind ``motzeta selftest``.

Each suite returns ``(status, detail)`` with status ``pass``, ``fail`` or
``skip``. A suite is skipped, not failed, when an oracle's size guard trips.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from .errors import SizeGuardExceeded
from .graded import GRADED, GradedElement, lambda_graded, lambda_series_graded
from .k0 import (
    K0Expr,
    SymRuleSet,
    burnside_multiset_count,
    counting_specialize,
    kapranov_zeta,
    set_L_zero,
    stratify,
    sym_expr,
    verify_sb_closed_form,
)
from .measures import HodgeData, distinguish_sym_powers, invariants_dim_bruteforce, mu1_sym_sequence, mun_sym_leading
from .rationality import IRRATIONAL, RATIONAL, AnalysisContext, analyze, check_periodic_ratio
from .series import ZZ, TruncatedSeries, exp_from_log_counts, one_series, series_inverse, series_mul
from .zm import MElement, ZMElement, lambda_zm

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Limits:
    horizon: int = 60
    p_max: int = 8
    i0_max: int = 12
    oracle_max_tuples: int = 10**6
    oracle_max_dim: int = 3
    oracle_max_m: int = 4
    random_cases: int = 200
    seed: int = 0


def _series_ring_laws(limits, rng):
    for _ in range(limits.random_cases):
        n = rng.randint(0, 16)
        a, b, c = (TruncatedSeries(ZZ, [rng.randint(-9, 9) for _ in range(n + 1)]) for _ in range(3))
        if series_mul(series_mul(a, b), c) != series_mul(a, series_mul(b, c)):
            return FAIL, "associativity"
        if series_mul(a, b + c) != series_mul(a, b) + series_mul(a, c):
            return FAIL, "distributivity"
        u = TruncatedSeries(ZZ, (rng.choice([1, -1]),) + a.coeffs[1:])
        if series_mul(u, series_inverse(u)) != one_series(ZZ, n):
            return FAIL, "inverse"
    return PASS, f"{limits.random_cases} random triples"


def _counting(limits, rng):
    for q in (2, 3):
        got = list(exp_from_log_counts([q**m + 1 for m in range(1, 13)], 12))
        if got != [(q ** (n + 1) - 1) // (q - 1) for n in range(13)]:
            return FAIL, f"P^1 over F_{q}"
        zeta = kapranov_zeta(K0Expr.one() + K0Expr.lefschetz(), SymRuleSet(), 12)
        if [counting_specialize(c, {}, q) for c in zeta] != got:
            return FAIL, f"symbolic P^1 count over F_{q}"
    for N in range(7):
        for n in range(7):
            if burnside_multiset_count(N, n) != (1 if n == 0 else math.comb(N + n - 1, n)):
                return FAIL, f"Burnside N={N} n={n}"
    for _ in range(50):
        q = rng.choice([2, 3, 5])
        hx, hy = ([rng.randint(0, 2) for _ in range(3)] for _ in range(2))
        cx = [sum(h * q ** (i * m) for i, h in enumerate(hx)) for m in range(1, 9)]
        cy = [sum(h * q ** (i * m) for i, h in enumerate(hy)) for m in range(1, 9)]
        union = exp_from_log_counts([a + b for a, b in zip(cx, cy)], 8)
        if union != series_mul(exp_from_log_counts(cx, 8), exp_from_log_counts(cy, 8)):
            return FAIL, "disjoint union convolution"
    return PASS, "P^1 counts, Burnside N,n<=6, 50 disjoint unions"


def _random_graded(rng):
    return GradedElement(rng.randint(-2, 3) for _ in range(rng.randint(0, 4)))


def _random_m(rng):
    return MElement(GradedElement([1] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 3))]))


def _random_k0(rng):
    terms = []
    for _ in range(rng.randint(0, 3)):
        mono = rng.choice([(), ("X",), ("Y",)])
        terms.append(((mono, rng.randint(0, 2)), rng.randint(-2, 2)))
    return K0Expr(terms)


def _lambda_axioms(limits, rng):
    rules = SymRuleSet.free(["X", "Y"])
    layers = {
        "Z[s]": (_random_graded, lambda n, x: lambda_graded(n, x), GradedElement()),
        "Z[M]": (
            lambda r: ZMElement((_random_m(r), r.randint(-2, 2)) for _ in range(r.randint(0, 3))),
            lambda n, x: lambda_zm(n, x),
            ZMElement(),
        ),
        "K0": (_random_k0, lambda n, x: sym_expr(n, x, rules), K0Expr()),
    }
    for name, (gen, lam, zero) in layers.items():
        for _ in range(limits.random_cases):
            x, y = gen(rng), gen(rng)
            n = rng.randint(0, 5)
            if lam(0, x) != 1 or lam(1, x) != x:
                return FAIL, f"{name}: lambda^0/lambda^1"
            rhs = zero
            for i in range(n + 1):
                rhs = rhs + lam(i, x) * lam(n - i, y)
            if lam(n, x + y) != rhs:
                return FAIL, f"{name}: addition rule at n={n}"
    for _ in range(limits.random_cases):
        x = _random_graded(rng)
        if series_mul(lambda_series_graded(x, 8), lambda_series_graded(-x, 8)) != one_series(GRADED, 8):
            return FAIL, "Z[s]: lambda_t(x) lambda_t(-x) != 1"
    return PASS, f"{limits.random_cases} cases per layer"


def _plethysm_oracle(limits, rng):
    checked = 0
    for top in range(limits.oracle_max_dim + 1):
        for dims in itertools.product(range(limits.oracle_max_dim + 1), repeat=top + 1):
            if sum(dims) > limits.oracle_max_dim or (dims and dims[-1] == 0):
                continue
            x = GradedElement(dims)
            for m in range(1, limits.oracle_max_m + 1):
                lam = lambda_graded(m, x)
                for j in range(m * max(x.degree, 0) + 1):
                    try:
                        want = invariants_dim_bruteforce(x, m, j, limits.oracle_max_tuples)
                    except SizeGuardExceeded as exc:
                        return SKIP, str(exc)
                    if lam[j] != want:
                        return FAIL, f"lambda^{m}({x}) degree {j}: {lam[j]} vs oracle {want}"
                    checked += 1
    return PASS, f"{checked} (input, m, j) triples"


def _curves(limits, rng):
    ctx = AnalysisContext(horizon=limits.horizon, p_max=limits.p_max, i0_max=limits.i0_max)
    for g in range(6):
        seq = mu1_sym_sequence(HodgeData(dim=1, h0=(1, g)), limits.horizon)
        v = analyze(seq, ctx)
        if (v.kind, v.p, v.i0) != (RATIONAL, 1, g):
            return FAIL, f"genus {g}: {v.kind} p={v.p} i0={v.i0}"
        if seq[-1].poly != GradedElement([1, 1]) ** g:
            return FAIL, f"genus {g}: stable value"
    return PASS, "genus 0..5 RationalConsistent(p=1, i0=g)"


def _surfaces(limits, rng):
    ctx = AnalysisContext(
        horizon=limits.horizon, p_max=limits.p_max, i0_max=limits.i0_max, bounded_coefficients=True
    )
    for h0 in ((1, 0, 1), (1, 2, 1)):
        seq = mu1_sym_sequence(HodgeData(dim=2, h0=h0), limits.horizon)
        if analyze(seq, ctx).kind != IRRATIONAL:
            return FAIL, f"h0={h0} not certified"
        for p in range(1, limits.p_max + 1):
            for i0 in range(limits.i0_max + 1):
                if check_periodic_ratio(seq, p, i0, limits.horizon):
                    return FAIL, f"h0={h0} passes p={p} i0={i0}"
    return PASS, "K3 and abelian surface certified irrational"


def _severi_brauer(limits, rng):
    for d in (1, 2, 3, 5, 7):
        if not verify_sb_closed_form(d, max(limits.horizon, 2 * d)):
            return FAIL, f"d={d}"
    return PASS, "d in 1,2,3,5,7"


def _lambda_ideal(limits, rng):
    rules = SymRuleSet.free(["X", "Y"])
    L = K0Expr.lefschetz()
    for _ in range(50):
        x = _random_k0(rng)
        shifted = kapranov_zeta(L * x, rules, 20)
        for n in range(1, 11):
            if not set_L_zero(shifted[n]).is_zero():
                return FAIL, f"Sym^{n}(L*{x}) survives mod L"
        if shifted != kapranov_zeta(x, rules, 20).scale_variable(L):
            return FAIL, f"A1 shift for {x}"
    return PASS, "50 random expressions"


def _strata(limits, rng):
    for n in range(1, 7):
        strata = stratify(n, 1)
        if sum(math.factorial(n) // s.normalizer_order for s in strata) != _bell(n):
            return FAIL, f"n={n}: set partitions miscounted"
    return PASS, "pattern counts sum to Bell numbers, n<=6"


def _bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _witnesses(limits, rng):
    w = distinguish_sym_powers(HodgeData(dim=2, h0=(1, 0, 1)), 2, 3)
    if w is None or w.degrees != (4, 6):
        return FAIL, "K3 (2,3)"
    if distinguish_sym_powers(HodgeData(dim=2, h0=(1, 0, 0), plurigenera={1: 0, 2: 0}), 2, 3) is not None:
        return FAIL, "rational surface produced a witness"
    degs = [mun_sym_leading(2, 2, 2, m) for m in range(1, 31)]
    if any(d != (2 * m, m + 1) for m, d in zip(range(1, 31), degs)):
        return FAIL, "leading terms"
    return PASS, "K3 witness, rational surface none, leading terms m<=30"


SUITES = {
    "series-ring-laws": _series_ring_laws,
    "counting-measure": _counting,
    "lambda-axioms": _lambda_axioms,
    "plethysm-oracle": _plethysm_oracle,
    "curve-rationality": _curves,
    "surface-irrationality": _surfaces,
    "severi-brauer": _severi_brauer,
    "lambda-ideal": _lambda_ideal,
    "stratification": _strata,
    "witnesses": _witnesses,
}


def run_selftest(limits: Limits) -> list[dict]:
    # validates before any suite runs
    AnalysisContext(horizon=limits.horizon, p_max=limits.p_max, i0_max=limits.i0_max)
    results = []
    for name, suite in SUITES.items():
        rng = random.Random(f"{limits.seed}:{name}")
        start = time.perf_counter()
        try:
            status, detail = suite(limits, rng)
        except SizeGuardExceeded as exc:
            status, detail = SKIP, str(exc)
        except Exception as exc:  # a crashing suite is a failing suite
            status, detail = FAIL, f"{type(exc).__name__}: {exc}"
        results.append(
            {"suite": name, "status": status, "detail": detail, "seconds": round(time.perf_counter() - start, 3)}
        )
    return results


def format_table(results: list[dict]) -> str:
    width = max(len(r["suite"]) for r in results)
    lines = [f"{'suite'.ljust(width)}  status  detail"]
    for r in results:
        lines.append(f"{r['suite'].ljust(width)}  {r['status'].upper():6}  {r['detail']}")
    return "\n".join(lines)
