"""Simplex variational problem behind the multidimensional sieve.

For F supported on the simplex R_k = {t_i >= 0, sum t_i <= 1} define

    I_k(F)     = integral over R_k of F^2
    J_k^i(F)   = integral over R_{k-1} of (integral of F dt_i from 0
                 to 1 - sum_{j != i} t_j)^2
    rayleigh   = sum_i J_k^i(F) / I_k(F)

and M_k = sup over F of the Rayleigh quotient. Everything here is exact
rational: monomials integrate by the Dirichlet formula

    int_{R_k} t^a (1 - sum t)^c dt = (prod a_i!) c! / (k + sum a_i + c)!

and symmetric polynomials (monomial-symmetric-basis dictionaries) integrate
through an arrangement-pair count so that k = 105 never expands a dense
polynomial in 105 variables.

Basis for the optimizer: (1 - P1)^a P2^b with a + 2b <= degree, where
P1 = sum t_i and P2 = sum t_i^2. A float generalized eigensolve picks the
direction; the returned witness is rationalized and re-certified exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb

_FACT_CACHE: list[int] = [1]


def _fact(n: int) -> int:
    while len(_FACT_CACHE) <= n:
        _FACT_CACHE.append(_FACT_CACHE[-1] * len(_FACT_CACHE))
    return _FACT_CACHE[n]


Partition = tuple[int, ...]  # weakly decreasing positive ints, () allowed


def _check_partition(part) -> Partition:
    t = tuple(int(v) for v in part)
    if any(v < 1 for v in t) or list(t) != sorted(t, reverse=True):
        raise ValueError(f"not a partition (need weakly decreasing, positive): {part}")
    return t


@dataclass(frozen=True)
class SimplexPolynomial:
    """Polynomial on R_k, either dense ({exponent tuple: coeff}) or symmetric
    ({partition: coeff}, monomial symmetric basis m_lambda in k variables).

    Evaluation returns 0 outside R_k: these objects stand for sieve cutoff
    functions, which vanish off the simplex by definition.
    """

    k: int
    form: str  # "dense" | "symmetric"
    coeffs: tuple  # sorted ((key, Fraction), ...) pairs, canonical

    def __init__(self, k: int, form: str, coeffs):
        if k < 1:
            raise ValueError("k must be >= 1")
        if form not in ("dense", "symmetric"):
            raise ValueError("form must be 'dense' or 'symmetric'")
        items = {}
        for key, c in dict(coeffs).items():
            c = Fraction(c)
            if c == 0:
                continue
            if form == "dense":
                key = tuple(int(e) for e in key)
                if len(key) != k or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent tuple for k={k}: {key}")
            else:
                key = _check_partition(key)
                if len(key) > k:
                    raise ValueError(f"partition {key} has more than k={k} parts")
            items[key] = items.get(key, Fraction(0)) + c
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "form", form)
        object.__setattr__(
            self, "coeffs", tuple(sorted((kk, c) for kk, c in items.items() if c))
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dense(cls, k: int, coeffs) -> "SimplexPolynomial":
        return cls(k, "dense", coeffs)

    @classmethod
    def from_symmetric(cls, k: int, coeffs) -> "SimplexPolynomial":
        return cls(k, "symmetric", coeffs)

    @classmethod
    def one(cls, k: int) -> "SimplexPolynomial":
        return cls(k, "symmetric", {(): Fraction(1)})

    # -- views -------------------------------------------------------------

    @property
    def coeff_dict(self) -> dict:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(key) for key, _ in self.coeffs)

    def to_dense(self) -> "SimplexPolynomial":
        """Expand arrangements; only sensible for small k."""
        if self.form == "dense":
            return self
        out: dict[tuple, Fraction] = {}
        for lam, c in self.coeffs:
            padded = tuple(lam) + (0,) * (self.k - len(lam))
            for perm in set(permutations(padded)):
                out[perm] = out.get(perm, Fraction(0)) + c
        return SimplexPolynomial(self.k, "dense", out)

    def to_symmetric(self) -> "SimplexPolynomial":
        """Group monomials by sorted exponent pattern; fails if not symmetric."""
        if self.form == "symmetric":
            return self
        by_pattern: dict[Partition, dict] = {}
        for exps, c in self.coeffs:
            pat = tuple(sorted((e for e in exps if e), reverse=True))
            by_pattern.setdefault(pat, {})[exps] = c
        out = {}
        for pat, monos in by_pattern.items():
            vals = set(monos.values())
            n_arr = _n_arrangements(pat, self.k)
            if len(vals) != 1 or len(monos) != n_arr:
                raise ValueError("polynomial is not symmetric")
            out[pat] = vals.pop()
        return SimplexPolynomial(self.k, "symmetric", out)

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point; 0 outside the closed simplex."""
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != self.k:
            raise ValueError(f"need {self.k} coordinates")
        if any(x < 0 for x in pt) or sum(pt) > 1:
            return Fraction(0)
        total = Fraction(0)
        if self.form == "dense":
            for exps, c in self.coeffs:
                v = c
                for e, x in zip(exps, pt):
                    v *= x**e
                total += v
        else:
            for lam, c in self.coeffs:
                padded = tuple(lam) + (0,) * (self.k - len(lam))
                mval = Fraction(0)
                for perm in set(permutations(padded)):
                    v = Fraction(1)
                    for e, x in zip(perm, pt):
                        v *= x**e
                    mval += v
                total += c * mval
        return total

    def scale(self, c) -> "SimplexPolynomial":
        c = Fraction(c)
        return SimplexPolynomial(
            self.k, self.form, {key: cc * c for key, cc in self.coeffs}
        )


def _n_arrangements(part: Partition, k: int) -> int:
    """Distinct arrangements of part padded with zeros to k slots."""
    if len(part) > k:
        return 0
    n = _fact(k) // _fact(k - len(part))
    for v in set(part):
        n //= _fact(part.count(v))
    return n


# ---------------------------------------------------------------------------
# exact integrals
# ---------------------------------------------------------------------------


def _value_classes(part: Partition, m: int) -> list[tuple[int, int]]:
    """(value, count) classes of part padded with zeros to m slots."""
    cls: dict[int, int] = {}
    for v in part:
        cls[v] = cls.get(v, 0) + 1
    if m - len(part) > 0:
        cls[0] = m - len(part)
    return sorted(cls.items())


@lru_cache(maxsize=None)
def _pair_weight(m: int, nu: Partition, mu: Partition) -> int:
    """Sum over arrangement pairs (alpha of nu, beta of mu, m slots each) of
    prod_i (alpha_i + beta_i)!.

    Computed as N_nu * T where T fixes one arrangement of nu and distributes
    the nonzero parts of mu over its value classes (DP over classes); the
    zero class of mu absorbs the slack row by row.
    """
    if len(nu) > m or len(mu) > m:
        return 0
    rows = _value_classes(nu, m)
    cols = [(w, c) for (w, c) in _value_classes(mu, m) if w != 0]

    def rec(j: int, remaining: tuple[int, ...]) -> int:
        if j == len(rows):
            return 1 if all(x == 0 for x in remaining) else 0
        v, n = rows[j]
        total = 0

        def alloc(l: int, left: int, ways: int, acc: tuple[int, ...]):
            nonlocal total
            if l == len(cols):
                sub = rec(j + 1, tuple(r - a for r, a in zip(remaining, acc)))
                if sub:
                    weight = _fact(v) ** left  # slots paired with mu-zeros
                    for (w, _), a in zip(cols, acc):
                        weight *= _fact(v + w) ** a
                    total += (ways // _fact(left)) * weight * sub
                return
            for a in range(0, min(left, remaining[l]) + 1):
                alloc(l + 1, left - a, ways // _fact(a), acc + (a,))

        alloc(0, n, _fact(n), ())
        return total

    n_nu = _fact(m)
    for _, c in _value_classes(nu, m):
        n_nu //= _fact(c)
    return n_nu * rec(0, tuple(c for _, c in cols))


def pair_integral(m: int, nu: Partition, mu: Partition, c_pow: int = 0) -> Fraction:
    """Exact integral over R_m of (1 - sum t)^c_pow * m_nu * m_mu."""
    w = _pair_weight(m, nu, mu)
    return Fraction(w * _fact(c_pow), _fact(m + sum(nu) + sum(mu) + c_pow))


def _dense_square(coeffs) -> dict:
    out: dict[tuple, Fraction] = {}
    items = list(coeffs)
    for i, (e1, c1) in enumerate(items):
        for e2, c2 in items[i:]:
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 * c2 if e1 == e2 else 2 * c1 * c2
            out[e] = out.get(e, Fraction(0)) + c
    return out


def integral_I(f: SimplexPolynomial) -> Fraction:
    """Exact integral of F^2 over the simplex R_k."""
    k = f.k
    if f.form == "dense":
        total = Fraction(0)
        for exps, c in _dense_square(f.coeffs).items():
            num = 1
            for a in exps:
                num *= _fact(a)
            total += c * Fraction(num, _fact(k + sum(exps)))
        return total
    total = Fraction(0)
    items = list(f.coeffs)
    for i, (lam, cl) in enumerate(items):
        for mu, cm in items[i:]:
            w = pair_integral(k, lam, mu)
            total += cl * cm * w if lam == mu else 2 * cl * cm * w
    return total


def _inner_terms_dense(f: SimplexPolynomial, i: int):
    """Antiderivative in t_i evaluated at s = 1 - sum of the others:
    terms ((other exponents), c_pow, coeff) with c_pow >= 1."""
    out: dict[tuple, Fraction] = {}
    for exps, c in f.coeffs:
        rest = exps[:i] + exps[i + 1 :]
        key = (rest, exps[i] + 1)
        out[key] = out.get(key, Fraction(0)) + Fraction(c, exps[i] + 1)
    return out


def _inner_terms_symmetric(f: SimplexPolynomial):
    """Split off the first variable: terms ((partition over k-1 vars), c_pow,
    coeff). m_lam(t1..tk) = sum over distinct v>0 of t1^v m_{lam minus v}
    plus (if lam fits in k-1 slots) m_lam."""
    k = f.k
    out: dict[tuple, Fraction] = {}
    for lam, c in f.coeffs:
        if len(lam) <= k - 1:
            key = (lam, 1)
            out[key] = out.get(key, Fraction(0)) + c
        for v in set(lam):
            lst = list(lam)
            lst.remove(v)
            key = (tuple(lst), v + 1)
            out[key] = out.get(key, Fraction(0)) + Fraction(c, v + 1)
    return out


def integral_J(f: SimplexPolynomial, i: int = 1) -> Fraction:
    """Exact J_k^i(F): square of the t_i-section integral, integrated over
    the remaining k-1 variables (i is 1-indexed)."""
    k = f.k
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= k, got {i}")
    if f.form == "symmetric":
        terms = _inner_terms_symmetric(f)  # value independent of i
        m = k - 1
        total = Fraction(0)
        items = list(terms.items())
        for a, ((nu, c1), co1) in enumerate(items):
            for (mu, c2), co2 in items[a:]:
                cp = c1 + c2
                w = Fraction(
                    _pair_weight(m, nu, mu) * _fact(cp),
                    _fact(m + sum(nu) + sum(mu) + cp),
                )
                t = co1 * co2 * w
                total += t if (nu, c1) == (mu, c2) else 2 * t
        return total
    terms = _inner_terms_dense(f, i - 1)
    m = k - 1
    total = Fraction(0)
    items = list(terms.items())
    for a, ((b1, c1), co1) in enumerate(items):
        for (b2, c2), co2 in items[a:]:
            exps = tuple(x + y for x, y in zip(b1, b2))
            cp = c1 + c2
            num = _fact(cp)
            for e in exps:
                num *= _fact(e)
            w = Fraction(num, _fact(m + sum(exps) + cp))
            t = co1 * co2 * w
            total += t if (b1, c1) == (b2, c2) else 2 * t
    return total


def integral_J_sum(f: SimplexPolynomial) -> Fraction:
    """sum over i of J_k^i(F)."""
    if f.form == "symmetric":
        return f.k * integral_J(f, 1)
    return sum(integral_J(f, i) for i in range(1, f.k + 1))


@dataclass(frozen=True)
class RayleighResult:
    value: Fraction  # sum_i J^i / I, exact
    numerator: Fraction  # sum_i J^i(F)
    denominator: Fraction  # I(F)
    witness: SimplexPolynomial
    dropped: tuple[int, ...] = ()  # basis indices removed for dependence

    def to_json(self) -> dict:
        return {
            "value": {
                "numerator": str(self.value.numerator),
                "denominator": str(self.value.denominator),
            },
            "value_float": float(self.value),
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "witness_form": self.witness.form,
            "witness_terms": [
                [list(key), str(c)] for key, c in self.witness.coeffs
            ],
            "dropped_basis_indices": list(self.dropped),
        }


def rayleigh(f: SimplexPolynomial) -> RayleighResult:
    """Exact Rayleigh quotient of F; F must have nonzero I."""
    den = integral_I(f)
    if den == 0:
        raise ValueError("I(F) = 0: F vanishes on the simplex")
    num = integral_J_sum(f)
    return RayleighResult(num / den, num, den, f)


# ---------------------------------------------------------------------------
# optimizer over the (1 - P1)^a P2^b basis
# ---------------------------------------------------------------------------


def _mult_power_sum(poly: dict, r: int, k: int) -> dict:
    """Multiply an m-basis dict by p_r = sum t_i^r (integer coefficients)."""
    out: dict[Partition, int] = {}
    for lam, c in poly.items():
        vals = set(lam)
        if len(lam) < k:
            vals.add(0)
        for v in vals:
            if v == 0:
                mu = tuple(sorted(lam + (r,), reverse=True))
            else:
                lst = list(lam)
                lst.remove(v)
                lst.append(v + r)
                mu = tuple(sorted(lst, reverse=True))
            out[mu] = out.get(mu, 0) + c * mu.count(v + r)
    return {p: c for p, c in out.items() if c}


def symmetric_basis(k: int, degree: int) -> list[tuple[tuple[int, int], dict]]:
    """[( (a, b), m-basis dict of (1-P1)^a P2^b )] for a + 2b <= degree."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    basis = []
    one = {(): 1}
    for b in range(degree // 2 + 1):
        p2b = one
        for _ in range(b):
            p2b = _mult_power_sum(p2b, 2, k)
        cur = p2b
        powers = [p2b]
        for _ in range(degree - 2 * b):
            cur = _mult_power_sum(cur, 1, k)
            powers.append(cur)
        for a in range(degree - 2 * b + 1):
            elt: dict[Partition, int] = {}
            for j in range(a + 1):
                s = (-1) ** j * comb(a, j)
                for lam, c in powers[j].items():
                    elt[lam] = elt.get(lam, 0) + s * c
            basis.append(((a, b), {p: c for p, c in elt.items() if c}))
    return basis


def _gram_matrices(k: int, basis) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Exact Gram matrices (I-form, sum-J-form) over the given m-basis dicts.

    Inner sums run over integers against a common factorial denominator;
    Fractions only materialize once per entry.
    """
    n = len(basis)
    deg = max((max((sum(p) for p in elt), default=0) for _, elt in basis), default=0)
    den_i = _fact(k + 2 * deg)
    gram_i = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        bu = basis[u][1]
        for v in range(u, n):
            s = 0
            for lam, cl in bu.items():
                slam = sum(lam)
                for mu, cm in basis[v][1].items():
                    s += (
                        cl
                        * cm
                        * _pair_weight(k, lam, mu)
                        * (den_i // _fact(k + slam + sum(mu)))
                    )
            gram_i[u][v] = gram_i[v][u] = Fraction(s, den_i)

    # inner expansions scaled to integers by lcm(1..deg+1)
    scale = math.lcm(*range(1, deg + 2))
    m = k - 1
    expansions = []
    for _, elt in basis:
        e: dict[tuple, int] = {}
        for lam, c in elt.items():
            if len(lam) <= m:
                key = (lam, 1)
                e[key] = e.get(key, 0) + c * scale
            for v in set(lam):
                lst = list(lam)
                lst.remove(v)
                key = (tuple(lst), v + 1)
                e[key] = e.get(key, 0) + c * (scale // (v + 1))
        expansions.append({kk: cc for kk, cc in e.items() if cc})
    den_j = _fact(m + 2 * deg + 2 * (deg + 1))
    gram_j = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        eu = expansions[u]
        for v in range(u, n):
            s = 0
            for (nu, c1), co1 in eu.items():
                snu = sum(nu)
                for (mu, c2), co2 in expansions[v].items():
                    cp = c1 + c2
                    s += (
                        co1
                        * co2
                        * _pair_weight(m, nu, mu)
                        * _fact(cp)
                        * (den_j // _fact(m + snu + sum(mu) + cp))
                    )
            val = Fraction(k) * Fraction(s, den_j * scale * scale)
            gram_j[u][v] = gram_j[v][u] = val
    return gram_i, gram_j


def _pow2_scale(fr: Fraction) -> Fraction:
    """2^-round(log2(fr)/2) as an exact rational, for diagonal rescaling."""
    if fr == 0:
        return Fraction(1)
    e = (fr.numerator.bit_length() - fr.denominator.bit_length()) // 2
    return Fraction(1, 2**e) if e >= 0 else Fraction(2 ** (-e))


def optimize_rayleigh(
    k: int,
    basis_degree: int,
    denominator_bound: int = 10**6,
) -> RayleighResult:
    """Maximize the Rayleigh quotient over span{(1-P1)^a P2^b : a+2b <= degree}.

    Exact Gram matrices, a float64 generalized symmetric eigensolve for the
    search direction (after exact power-of-two diagonal rescaling), then the
    eigenvector is rationalized by continued fractions and the quotient is
    re-certified in exact arithmetic. The certified value is a true lower
    bound for M_k regardless of float behavior.
    """
    import numpy as np
    from scipy.linalg import eigh

    basis = symmetric_basis(k, basis_degree)
    labels = [ab for ab, _ in basis]
    gram_i, gram_j = _gram_matrices(k, basis)

    dropped: list[int] = []
    active = list(range(len(basis)))
    while True:
        scales = [_pow2_scale(gram_i[u][u]) for u in active]
        a_mat = np.array(
            [
                [
                    float(gram_j[u][v] * scales[iu] * scales[iv])
                    for iv, v in enumerate(active)
                ]
                for iu, u in enumerate(active)
            ]
        )
        b_mat = np.array(
            [
                [
                    float(gram_i[u][v] * scales[iu] * scales[iv])
                    for iv, v in enumerate(active)
                ]
                for iu, u in enumerate(active)
            ]
        )
        try:
            eigvals, eigvecs = eigh(a_mat, b_mat)
            if np.isfinite(eigvals[-1]):
                break
        except np.linalg.LinAlgError:
            pass
        # numerically dependent basis: drop the element dominating the
        # smallest eigendirection of the I-Gram and retry
        w, v = np.linalg.eigh(b_mat)
        worst = int(np.argmax(np.abs(v[:, 0])))
        dropped.append(active[worst])
        del active[worst]
        if not active:
            raise ValueError("I-Gram singular for every basis subset")

    vec = eigvecs[:, -1]
    vec = vec / np.max(np.abs(vec))
    coeffs = [
        Fraction(float(x)).limit_denominator(denominator_bound) * scales[iu]
        for iu, x in enumerate(vec)
    ]

    witness_terms: dict[Partition, Fraction] = {}
    for c, u in zip(coeffs, active):
        if c == 0:
            continue
        for lam, cc in basis[u][1].items():
            witness_terms[lam] = witness_terms.get(lam, Fraction(0)) + c * cc
    witness = SimplexPolynomial.from_symmetric(k, witness_terms)
    if witness.is_zero:
        raise ValueError("rationalized witness collapsed to zero; raise the bound")

    # exact re-certification via the Gram forms (bilinear, identical to
    # integral_I / integral_J_sum on the witness)
    num = Fraction(0)
    den = Fraction(0)
    for iu, u in enumerate(active):
        cu = coeffs[iu]
        if cu == 0:
            continue
        for iv, v in enumerate(active):
            cv = coeffs[iv]
            if cv == 0:
                continue
            num += cu * cv * gram_j[u][v]
            den += cu * cv * gram_i[u][v]
    if den <= 0:
        raise ValueError("certified I(F) not positive; optimization failed")
    result = RayleighResult(num / den, num, den, witness, tuple(dropped))
    _check_witness_consistency(result, labels)
    return result


def _check_witness_consistency(result: RayleighResult, labels) -> None:
    # cheap guard: Gram bilinear value must match direct integration for
    # small k where the direct path is affordable
    if result.witness.k <= 4:
        direct = rayleigh(result.witness)
        if direct.value != result.value:
            raise AssertionError("Gram certification disagrees with direct integrals")


# ---------------------------------------------------------------------------
# closed-form lower bounds for M_k
# ---------------------------------------------------------------------------


def simplified_mk_bound(k: int) -> float:
    """log k - 2 log log k - 2, the clean lower bound for M_k (k >= 213
    makes it positive; it crosses zero between 212 and 213)."""
    if k < 16:
        raise ValueError("bound needs k >= 16")
    return math.log(k) - 2 * math.log(math.log(k)) - 2


def mk_lower_bound(k: int) -> float | None:
    """The sharper lower bound A(1 - A e^A / (k (1 - A/(e^A - 1) - e^A/k)^2))
    with A = log k - 2 log log k, when its proviso holds; None otherwise.

    None signals that the inner factor is non-positive (small k), where the
    bound statement is vacuous.
    """
    if k < 16:
        raise ValueError("bound needs k >= 16")
    a = math.log(k) - 2 * math.log(math.log(k))
    ea = math.exp(a)
    inner = 1 - a / (ea - 1) - ea / k
    if inner <= 0:
        return None
    value = a * (1 - a * ea / (k * inner * inner))
    return value if value > 0 else None
