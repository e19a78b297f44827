"""Limit theory for the greedy bounds: giant component size, limit ratios,
prefix integrals and the bracketing constants L_t, U_t.

All scalar roots are found by bisection and all integrals by adaptive
Simpson quadrature, both implemented here so the error control is explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DomainError, NumericalError

ZETA3 = 1.2020569031595943
QUAD_TOL = 1e-9
MAX_DEPTH = 60
BETA_TOL = 1e-12
MAX_BISECTIONS = 200


def threshold(t: int) -> float:
    """Edges-per-vertex density 1/(t(t-1)) at which the giant component appears."""
    return 1.0 / (t * (t - 1))


# ---------------------------------------------------------------------------
# quadrature

def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = QUAD_TOL,
    max_depth: int = MAX_DEPTH,
    panels: int = 16,
) -> tuple[float, float]:
    """Integrate ``f`` over [a, b] to absolute tolerance ``tol``.

    The interval is first cut into ``panels`` equal pieces so that narrow
    features are not missed by the first Simpson estimate. Returns
    ``(value, error_estimate)``; raises NumericalError if some subinterval
    hits ``max_depth`` without meeting its share of the tolerance.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, err = adaptive_simpson(f, b, a, tol, max_depth, panels)
        return -value, err

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def refine(lo, hi, flo, fmid, fhi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0, abs(delta) / 15.0
        if depth >= max_depth:
            raise NumericalError(
                f"adaptive Simpson did not reach tolerance on [{lo!r}, {hi!r}]"
            )
        lv, le = refine(lo, mid, flo, flm, fmid, left, tol / 2.0, depth + 1)
        rv, re = refine(mid, hi, fmid, frm, fhi, right, tol / 2.0, depth + 1)
        return lv + rv, le + re

    edges = [a + (b - a) * i / panels for i in range(panels + 1)]
    edges[-1] = b
    values = [f(x) for x in edges]
    total = err = 0.0
    for i in range(panels):
        lo, hi = edges[i], edges[i + 1]
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        whole = simpson(values[i], fmid, values[i + 1], hi - lo)
        v, e = refine(lo, hi, values[i], fmid, values[i + 1], whole, tol / panels, 1)
        total += v
        err += e
    return total, err


# ---------------------------------------------------------------------------
# giant component

def _density_of_log_survival(t: int, s: float) -> float:
    """Edge density c at which the giant holds a fraction 1 - e^{-s} of vertices.

    Same function as ln(1-b) / (t((1-b)^(t-1) - 1)) with b = 1 - e^{-s},
    written to stay accurate for s -> 0 and s -> infinity.
    """
    if s == 0.0:
        return threshold(t)
    return s / (t * -math.expm1(-(t - 1) * s))


def giant_equation_rhs(t: int, beta: float) -> float:
    """c as a function of the giant fraction beta, for beta in [0, 1)."""
    if not 0.0 <= beta < 1.0:
        raise DomainError("beta must lie in [0, 1)")
    return _density_of_log_survival(t, -math.log1p(-beta))


@dataclass(frozen=True)
class BetaSolution:
    t: int
    c: float
    beta: float
    residual: float
    log_survival: float = 0.0  # -ln(1 - beta), kept for precision near beta = 1


def beta_of_c(t: int, c: float) -> BetaSolution:
    """Limiting giant-component fraction of G_t(n, cn).

    Zero at or below the threshold density; above it, the unique root of
    c = ln(1-b) / (t((1-b)^(t-1) - 1)). The root is bracketed and bisected
    in s = -ln(1 - b), in which the right-hand side is increasing and
    asymptotically linear, so the bracket never collapses against b = 1.
    """
    if t < 2:
        raise DomainError("t must be at least 2")
    c = float(c)
    if not c > 0:
        raise DomainError("c must be positive")
    if c <= threshold(t):
        return BetaSolution(t, c, 0.0, 0.0, 0.0)

    g = lambda s: _density_of_log_survival(t, s)
    lo, hi = 0.0, 1.0
    while g(hi) < c:
        lo, hi = hi, 2.0 * hi
    if not g(lo) <= c <= g(hi):
        raise NumericalError(f"density not increasing on bracket [{lo}, {hi}]")
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BETA_TOL * 0.1 or mid in (lo, hi):
            break
        if g(mid) < c:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericalError(f"bisection for beta(t={t}, c={c}) did not converge")
    s = 0.5 * (lo + hi)
    return BetaSolution(t, c, -math.expm1(-s), abs(c - g(s)), s)


def graph_giant_fraction(kappa: float) -> float:
    """Root b in (0, 1) of b + e^{-kappa b} = 1 for mean degree kappa; 0 if kappa <= 1.

    Solved for q = 1 - b, which lies in (0, 1/kappa) where
    q - e^{-kappa (1 - q)} changes sign exactly once.
    """
    return 1.0 - graph_small_fraction(kappa)


def graph_small_fraction(kappa: float) -> float:
    if kappa <= 1.0:
        return 1.0
    h = lambda q: q - math.exp(-kappa * (1.0 - q))
    lo, hi = 0.0, 1.0 / kappa
    for _ in range(4 * MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if h(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def decay_surrogate(c: float) -> float:
    """Upper surrogate for the fraction of components C/n at density c.

    Projecting every hyperedge onto two of its vertices leaves a random graph
    with cn/2 edges, mean degree c, whose component count only grows; its
    non-giant fraction 1 - b(2c) bounds C/n from above.
    """
    if not c > 0:
        raise DomainError("c must be positive")
    return graph_small_fraction(2.0 * c)


# ---------------------------------------------------------------------------
# limit ratios and prefix integrals

F2_LEMMA = "lemma"
F2_SECTION3 = "section3"


def f1(t: int, beta: float) -> float:
    return 1.0 - beta**t


def f2_lemma(t: int, beta: float) -> float:
    return t * (1.0 - beta) - (1.0 - beta**t)


def f2_section3(t: int, beta: float) -> float:
    return t * (1.0 - beta) - (1.0 - beta) ** t


def f_ratio(ell: int, t: int, beta: float, variant: str = F2_LEMMA) -> float:
    """Limit of E[charge of algorithm ell] / E[w] when the giant holds ``beta``.

    ``variant`` picks between the two published forms of the second ratio.
    """
    if not 0.0 <= beta <= 1.0:
        raise DomainError("beta must lie in [0, 1]")
    if ell == 1:
        return f1(t, beta)
    if ell == 2:
        if variant == F2_LEMMA:
            return f2_lemma(t, beta)
        if variant == F2_SECTION3:
            return f2_section3(t, beta)
        raise ValueError(f"unknown f2 variant {variant!r}")
    raise ValueError(f"algorithm index must be 1 or 2, got {ell}")


def weight_scale(t: int) -> float:
    """(t!)^(1/(t-1)): w at step cn is about a * (c t!)^(1/(t-1)) / n."""
    return math.factorial(t) ** (1.0 / (t - 1))


def prefix_integral(
    ell: int, t: int, c: float, a: float = 1.0, variant: str = F2_LEMMA, tol: float = QUAD_TOL
) -> float:
    """Predicted limit of the running total of algorithm ``ell`` after cn steps.

    a (t!)^(1/(t-1)) * int_0^c x^(1/(t-1)) f_ell(beta(x)) dx. Below the
    threshold beta = 0 and the integral has a closed form; above it the
    integrand is evaluated with ``beta_of_c`` and integrated adaptively.
    """
    c = float(c)
    if c < 0:
        raise DomainError("c must be non-negative")
    if c == 0:
        return 0.0
    p = 1.0 / (t - 1)
    star = threshold(t)
    sub = min(c, star)
    total = f_ratio(ell, t, 0.0, variant) * sub ** (p + 1.0) / (p + 1.0)
    if c > star:
        integrand = lambda x: x**p * f_ratio(ell, t, beta_of_c(t, x).beta, variant)
        value, _ = adaptive_simpson(integrand, star, c, tol)
        total += value
    return a * weight_scale(t) * total


# ---------------------------------------------------------------------------
# bracketing constants

@dataclass(frozen=True)
class TheoryConstants:
    t: int
    L_t: float
    U_t: float
    gap_ratio: float
    quadrature_error_bound: float
    threshold: float


def _survival_ratio(t: int, u: float) -> float:
    # ln(1-x) / ((1-x)^(t-1) - 1) at x = 1 - e^{-u}
    if u == 0.0:
        return 1.0 / (t - 1)
    return u / -math.expm1(-(t - 1) * u)


def _gamma_tail_bound(p: float, u0: float) -> float:
    # int_{u0}^inf u^p e^{-u} du <= u0^p e^{-u0} / (1 - p/u0) for u0 > p
    return u0**p * math.exp(-u0) / (1.0 - p / u0)


def bound_constants(t: int, tol: float = QUAD_TOL) -> TheoryConstants:
    """L_t and U_t with the unbound prefactor symbol read as 1.

    Both integrals over x in [0, 1] blow up logarithmically at x = 1; after
    substituting x = 1 - e^{-u} they become exponentially decaying integrals
    over u >= 0, truncated once the analytic tail bound is below 1e-14.
    """
    if t < 2:
        raise DomainError("t must be at least 2")
    p = t / (t - 1)
    prefactor = math.factorial(t - 1) ** (1.0 / (t - 1))

    def upper_integrand(u):
        return _survival_ratio(t, u) ** p * (-math.expm1(-u)) ** (t - 1) * math.exp(-u)

    def lower_integrand(u):
        return _survival_ratio(t, u) ** p * (-math.expm1(-(t - 1) * u)) * math.exp(-u)

    u_max = 10.0
    envelope = lambda u: (1.0 / -math.expm1(-(t - 1) * u)) ** p * _gamma_tail_bound(p, u)
    while envelope(u_max) > 1e-14:
        u_max += 1.0
    tail = envelope(u_max)

    upper, upper_err = adaptive_simpson(upper_integrand, 0.0, u_max, tol)
    lower, lower_err = adaptive_simpson(lower_integrand, 0.0, u_max, tol)
    L = prefactor * (t - 1) / t**2 * lower
    U = prefactor * (t - 1) / t * upper
    err = prefactor * ((t - 1) / t**2 * (lower_err + tail) + (t - 1) / t * (upper_err + tail))
    return TheoryConstants(t, L, U, U / L, err, threshold(t))


def gap_table(ts: Iterable[int] = range(2, 11)) -> list[TheoryConstants]:
    return [bound_constants(t) for t in ts]


# ---------------------------------------------------------------------------
# zeta(3)

def zeta3_partial(terms: int) -> float:
    return math.fsum(1.0 / k**3 for k in range(1, terms + 1))


def zeta3_tail(K: int) -> float:
    """sum_{k >= K} 1/k^3 by Euler-Maclaurin; error O(K^-8)."""
    return 1 / (2 * K**2) + 1 / (2 * K**3) + 1 / (4 * K**4) - 1 / (12 * K**6)


def zeta3(terms: int = 1000) -> float:
    """sum 1/k^3: the first ``terms - 1`` terms directly, the rest from
    ``zeta3_tail``, which at 1000 terms is exact to double precision."""
    return math.fsum([*(1.0 / k**3 for k in range(terms - 1, 0, -1)), zeta3_tail(terms)])
