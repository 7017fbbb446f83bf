"""One function per acceptance claim, shared by the CLI and the test suite.

Each criterion re-derives its target through an independent route where the
claim is numeric (trial-division enumerators, Monte Carlo, divisor-sum sigma
oracles) and compares against the package's implementation. Results carry a
pass flag and a human-readable detail line; nothing raises on failure, so a
red criterion shows up as data rather than a stack trace.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .admissible import Tuple, verify_diameter_bound
from .arith import euler_phi, is_squarefree, mobius, rad
from .bounds import gap_bound_abelian, verify_theorem1
from .chebsets import (
    Congruence,
    FactorizationType,
    GaloisContext,
    empirical_density,
    tau_mod_stream,
)
from .gapscan import scan, tau_gap_scan
from .primes import iter_prime_segments, verify_dusart
from .sieve import (
    build_config,
    lambda_weight,
    predicted_terms,
    sum_s1,
    sum_s2,
    support_d_vectors,
    tuple_determinant,
    weight_table,
)
from .variational import (
    SimplexPolynomial,
    integral_I,
    integral_J,
    optimize_rayleigh,
    rayleigh,
    simplified_mk_bound,
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail} ({self.elapsed:.1f}s)"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "elapsed": round(self.elapsed, 2),
        }


def _result(number: int, title: str, t0: float, passed: bool, detail: str) -> CriterionResult:
    return CriterionResult(number, title, bool(passed), detail, time.time() - t0)


# -- 1 -----------------------------------------------------------------------


def criterion_1_threshold() -> CriterionResult:
    t0 = time.time()

    def expr(k: int) -> float:
        return math.log(k) - 2 * math.log(math.log(k)) - 2

    first = next(k for k in range(2, 10**4) if expr(k) > 0)
    ok = first == 213 and all(expr(k) <= 0 for k in range(2, 213))
    ok = ok and simplified_mk_bound(212) <= 0 < simplified_mk_bound(213)
    return _result(
        1,
        "positivity threshold of log k - 2 log log k - 2",
        t0,
        ok,
        f"first positive k = {first} (212 -> {expr(212):.2e}, 213 -> {expr(213):.2e})",
    )


# -- 2 -----------------------------------------------------------------------


def criterion_2_abelian_constants() -> CriterionResult:
    t0 = time.time()
    got = (gap_bound_abelian(8), gap_bound_abelian(28))
    ok = got == (4800, 16800)
    return _result(2, "abelian gap constants 600q", t0, ok, f"q=8 -> {got[0]}, q=28 -> {got[1]}")


# -- 3 -----------------------------------------------------------------------


def criterion_3_proof_chain() -> CriterionResult:
    t0 = time.time()
    rep = verify_theorem1(GaloisContext(6, 6, 1))
    ok = rep.k_chosen == 1_815_500 and rep.proof_ok and rep.k_chosen >= 213
    return _result(
        3,
        "nonabelian proof chain at |G|=|C|=6, disc 1",
        t0,
        ok,
        f"k = {rep.k_chosen}, rk = {rep.rk}, proof_ok = {rep.proof_ok}",
    )


# -- 4 -----------------------------------------------------------------------


def criterion_4_diameter() -> CriterionResult:
    t0 = time.time()
    rep = verify_diameter_bound(213, 10**4)
    return _result(
        4,
        "shifted prime tuple diameter <= 1.6 k log k on [213, 10^4]",
        t0,
        rep.ok,
        f"worst ratio {rep.worst_ratio:.4f}"
        + ("" if rep.ok else f", first failure k = {rep.first_failure}"),
    )


# -- 5 -----------------------------------------------------------------------


def criterion_5_dusart() -> CriterionResult:
    t0 = time.time()
    low = verify_dusart(6, 10**5)
    high = verify_dusart(355991, 4 * 10**5)
    ok = low.ok and high.ok
    return _result(
        5,
        "two-sided prime bounds (nth on [6, 1e5]; pi from 355991 to 4e5)",
        t0,
        ok,
        f"nth checked {low.nth_checked + high.nth_checked}, pi checked {high.pi_checked}",
    )


# -- 6 -----------------------------------------------------------------------


def _random_poly(rng: np.random.Generator) -> SimplexPolynomial:
    k = int(rng.integers(2, 6))
    terms = {}
    for _ in range(int(rng.integers(1, 5))):
        deg = int(rng.integers(0, 7))
        exps = [0] * k
        for _ in range(deg):
            exps[int(rng.integers(0, k))] += 1
        c = int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + Fraction(c, int(rng.integers(1, 3)))
    f = SimplexPolynomial.from_dense(k, terms)
    return f if not f.is_zero else SimplexPolynomial.from_dense(k, {tuple([1] + [0] * (k - 1)): 1})


def _mc_integrals(f: SimplexPolynomial, rng: np.random.Generator, samples: int):
    """(estimate, sigma) for I = int F^2 and J = int (int F dt1)^2, straight
    Monte Carlo over the unit cube with a simplex mask."""
    k = f.k
    pts = rng.random((samples, k))
    inside = pts.sum(axis=1) <= 1.0
    vals = np.zeros(samples)
    for exps, c in f.coeffs:
        term = np.full(samples, float(c))
        for j, e in enumerate(exps):
            if e:
                term *= pts[:, j] ** e
        vals += term
    sq = np.where(inside, vals * vals, 0.0)
    i_est = sq.mean()
    i_sig = sq.std(ddof=1) / math.sqrt(samples)

    rest = rng.random((samples, k - 1))
    s = 1.0 - rest.sum(axis=1)
    mask = s >= 0.0
    s = np.where(mask, s, 0.0)
    g = np.zeros(samples)
    for exps, c in f.coeffs:
        a = exps[0]
        term = np.full(samples, float(c) / (a + 1)) * s ** (a + 1)
        for j, e in enumerate(exps[1:]):
            if e:
                term *= rest[:, j] ** e
        g += term
    gsq = np.where(mask, g * g, 0.0)
    j_est = gsq.mean()
    j_sig = gsq.std(ddof=1) / math.sqrt(samples)
    return (i_est, i_sig), (j_est, j_sig)


def criterion_6_variational_mc(seed: int = 0, polys: int = 50, samples: int = 10**6) -> CriterionResult:
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = 0
    for _ in range(polys):
        f = _random_poly(rng)
        dense = f if f.form == "dense" else f.to_dense()
        (i_est, i_sig), (j_est, j_sig) = _mc_integrals(dense, rng, samples)
        i_exact = float(integral_I(f))
        j_exact = float(integral_J(f, 1))
        for exact, est, sig in ((i_exact, i_est, i_sig), (j_exact, j_est, j_sig)):
            dev = abs(exact - est) / sig if sig > 0 else (0.0 if exact == est else math.inf)
            worst = max(worst, dev)
            if dev > 3:
                failures += 1
    one = SimplexPolynomial.one(2)
    exact_ok = rayleigh(one).value == Fraction(4, 3)
    ok = failures == 0 and exact_ok
    return _result(
        6,
        "exact simplex integrals vs Monte Carlo (3 sigma) and rayleigh(1) = 4/3",
        t0,
        ok,
        f"{polys} polynomials, worst deviation {worst:.2f} sigma, "
        f"rayleigh(1, k=2) exact: {exact_ok}",
    )


# -- 7 -----------------------------------------------------------------------


def criterion_7_m105(max_degree: int = 15) -> CriterionResult:
    t0 = time.time()
    value = None
    degree_used = None
    for degree in range(11, max_degree + 1):
        res = optimize_rayleigh(105, degree)
        if res.value > 4:
            value, degree_used = res.value, degree
            break
    ok = value is not None
    detail = (
        f"certified {float(value):.15f} > 4 at degree {degree_used}"
        if ok
        else f"no certificate above 4 up to degree {max_degree}"
    )
    return _result(7, "M_105 > 4 by exact re-certification", t0, ok, detail)


# -- 8 and 9: the frozen demo sieve ------------------------------------------


def demo_config():
    ctx = GaloisContext(2, 1, 1, abelian_conductor=4)
    spec = Congruence(4, {1}, ctx)
    cfg = build_config(
        n_start=10**5,
        k=2,
        tup=Tuple([0, 4]),
        context=ctx,
        theta=0.4,
        epsilon=0.05,
        d0_override=5,
    )
    return cfg, spec


def _brute_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _brute_lambda(d1: int, d2: int, cfg) -> Fraction:
    # rebuilt from the definitions, sharing nothing with sieve.lambda_weight
    r_cap = cfg.r_limit
    w = cfg.w_modulus
    d = d1 * d2
    if not (d < r_cap and is_squarefree(d) and math.gcd(d, w) == 1):
        return Fraction(0)
    log_r = Fraction(math.log(r_cap))
    total = Fraction(0)
    r1 = d1
    while r1 < r_cap:
        if math.gcd(r1, w) == 1 and is_squarefree(r1):
            r2 = d2
            while r1 * r2 < r_cap:
                if (
                    math.gcd(r2, w) == 1
                    and is_squarefree(r1 * r2)
                ):
                    a1 = Fraction(math.log(r1)) / log_r if r1 > 1 else Fraction(0)
                    a2 = Fraction(math.log(r2)) / log_r if r2 > 1 else Fraction(0)
                    if a1 + a2 <= 1:
                        fval = (1 - a1 - a2)  # the demo F, inlined
                        total += Fraction(1, euler_phi(r1) * euler_phi(r2)) * fval
                r2 += d2
        r1 += d1
    return mobius(d1) * d1 * mobius(d2) * d2 * total


def _brute_divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _brute_sums(cfg, spec) -> tuple[Fraction, Fraction]:
    lam_memo: dict[tuple[int, int], Fraction] = {}

    def lam(d1, d2):
        if (d1, d2) not in lam_memo:
            lam_memo[(d1, d2)] = _brute_lambda(d1, d2, cfg)
        return lam_memo[(d1, d2)]

    h1, h2 = list(cfg.tuple)
    s1 = Fraction(0)
    s2 = Fraction(0)
    n = cfg.n_start
    while n < 2 * cfg.n_start:
        if n % cfg.u_modulus == cfg.u0 % cfg.u_modulus:
            inner = Fraction(0)
            for d1 in _brute_divisors(n + h1):
                for d2 in _brute_divisors(n + h2):
                    inner += lam(d1, d2)
            w_n = inner * inner
            s1 += w_n
            for h in (h1, h2):
                m = n + h
                if _brute_is_prime(m) and m % 4 == 1:
                    s2 += w_n
        n += 1
    return s1, s2


def criterion_8_sieve_brute_force() -> CriterionResult:
    t0 = time.time()
    cfg, spec = demo_config()
    support = support_d_vectors(cfg)
    lam_ok = all(lambda_weight(d, cfg) == _brute_lambda(d[0], d[1], cfg) for d in support)
    off = [(2, 1), (1, 6), (7, 7), (30, 1)]
    lam_ok = lam_ok and all(
        lambda_weight(d, cfg) == _brute_lambda(d[0], d[1], cfg) == 0 for d in off
    )
    table = weight_table(cfg)
    s1 = sum_s1(cfg, table)
    s2 = sum_s2(cfg, spec, table)
    bs1, bs2 = _brute_sums(cfg, spec)
    ok = lam_ok and s1 == bs1 and s2 == bs2
    return _result(
        8,
        "sieve sums equal an independent exhaustive enumerator",
        t0,
        ok,
        f"S1 = {s1} (brute {bs1}), S2 = {s2} (brute {bs2}), lambda match: {lam_ok}",
    )


def criterion_9_sieve_ratio() -> CriterionResult:
    t0 = time.time()
    cfg, spec = demo_config()
    table = weight_table(cfg)
    s1 = sum_s1(cfg, table)
    s2 = sum_s2(cfg, spec, table)
    pred_s1, pred_s2 = predicted_terms(cfg, spec)
    observed = float(s2 / s1)
    predicted = pred_s2 / pred_s1
    factor = observed / predicted if predicted else math.inf
    ratio_ok = 0.5 <= factor <= 2.0

    # support and positivity invariants, exhaustively on the demo config
    inv_ok = all(w >= 0 for w in table.entries.values()) and s1 >= 0 and 0 <= s2 <= cfg.k * s1
    det_h = abs(tuple_determinant(cfg.tuple))
    guard = cfg.u_modulus * abs(cfg.context.discriminant) * det_h
    for vec in support_d_vectors(cfg):
        lam = lambda_weight(vec, cfg)
        d = math.prod(vec)
        if lam != 0:
            inv_ok = inv_ok and d < cfg.r_limit and is_squarefree(d)
            inv_ok = inv_ok and math.gcd(d, cfg.w_modulus) == 1
            inv_ok = inv_ok and math.gcd(d, guard) == 1
    ok = ratio_ok and inv_ok
    return _result(
        9,
        "observed S2/S1 within factor 2 of the predicted main-term ratio",
        t0,
        ok,
        f"observed {observed:.4f}, predicted {predicted:.4f}, factor {factor:.2f}, "
        f"invariants: {inv_ok}",
    )


# -- 10 ----------------------------------------------------------------------


def criterion_10_density() -> CriterionResult:
    t0 = time.time()
    cubic = FactorizationType(
        (-1, -1, 0, 1), (3,), GaloisContext(6, 2, -23)
    )  # x^3 - x - 1 inert
    d_cubic = float(empirical_density(cubic, 10**6))
    cong = Congruence(4, {1}, GaloisContext(2, 1, 1, abelian_conductor=4))
    d_cong = float(empirical_density(cong, 10**6))
    ok = abs(d_cubic - 1 / 3) <= 0.02 and abs(d_cong - 0.5) <= 0.01
    return _result(
        10,
        "empirical densities match class sizes (cubic inert 1/3, 1 mod 4 at 1/2)",
        t0,
        ok,
        f"cubic {d_cubic:.5f} (target 1/3), congruence {d_cong:.5f} (target 1/2)",
    )


# -- 11 ----------------------------------------------------------------------


def criterion_11_gap_evidence() -> CriterionResult:
    t0 = time.time()
    rep = scan(Congruence(8, {3}, GaloisContext(2, 1, 1, abelian_conductor=8)), 10**6, 4800)
    scan_ok = rep.min_gap == 8 and rep.pairs_within_bound >= 100

    tau_rep = tau_gap_scan(691, 10**5)
    stream = tau_mod_stream(691, 10**5)
    sigma_ok = True
    members = 0
    for seg in iter_prime_segments(2, 10**5 + 1):
        for p in seg.tolist():
            if p != 691 and int(stream[p]) == 0:
                members += 1
                if (1 + pow(p, 11, 691)) % 691 != 0:
                    sigma_ok = False
    count_ok = members == tau_rep.prime_count
    ok = scan_ok and sigma_ok and count_ok
    return _result(
        11,
        "gap scans: min gap 8 mod 8, tau-vanishing members pass the sigma_11 oracle",
        t0,
        ok,
        f"min_gap {rep.min_gap} at {rep.min_gap_pair}, pairs {rep.pairs_within_bound}; "
        f"tau members {tau_rep.prime_count}, sigma11 oracle: {sigma_ok}",
    )


# -- 12 ----------------------------------------------------------------------


def criterion_12_tau_stream(seed: int = 0) -> CriterionResult:
    t0 = time.time()
    limit = 10**4
    stream = tau_mod_stream(691, limit)
    sig = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):  # sigma_11 by divisor sweep
        sig[d::d] += pow(d, 11, 691)
    cong_ok = all(int(stream[n]) == int(sig[n] % 691) for n in range(1, limit + 1))

    rng = np.random.default_rng(seed)
    mult_ok = True
    hecke_ok = True
    for d in (691, 10**6, 998_244_353):
        s = tau_mod_stream(d, limit)
        for _ in range(200):
            m = int(rng.integers(2, 100))
            n = int(rng.integers(2, limit // m))
            if math.gcd(m, n) == 1 and int(s[m * n]) != int(s[m]) * int(s[n]) % d:
                mult_ok = False
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 59, 97):
            if p * p <= limit:
                if int(s[p * p]) != (int(s[p]) ** 2 - pow(p, 11, d)) % d:
                    hecke_ok = False
    ok = cong_ok and mult_ok and hecke_ok
    return _result(
        12,
        "tau stream: 691 congruence, multiplicativity, Hecke relation at p^2",
        t0,
        ok,
        f"congruence to 1e4: {cong_ok}, multiplicativity: {mult_ok}, Hecke: {hecke_ok}",
    )


# -- runner -------------------------------------------------------------------

CRITERIA = [
    (1, criterion_1_threshold),
    (2, criterion_2_abelian_constants),
    (3, criterion_3_proof_chain),
    (4, criterion_4_diameter),
    (5, criterion_5_dusart),
    (6, criterion_6_variational_mc),
    (7, criterion_7_m105),
    (8, criterion_8_sieve_brute_force),
    (9, criterion_9_sieve_ratio),
    (10, criterion_10_density),
    (11, criterion_11_gap_evidence),
    (12, criterion_12_tau_stream),
]


def run_all(quick: bool = False, seed: int = 0) -> list[CriterionResult]:
    """Every acceptance criterion in order; quick mode skips the optimizer
    run (criterion 7), the only one that takes minutes."""
    results = []
    for number, fn in CRITERIA:
        if quick and number == 7:
            results.append(
                CriterionResult(7, "M_105 > 4 by exact re-certification", True, "skipped (quick mode)", 0.0)
            )
            continue
        if number in (6, 12):
            results.append(fn(seed=seed))
        else:
            results.append(fn())
    return results
