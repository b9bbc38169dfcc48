"""Hurwitz, Riemann, Dirichlet-eta and alternating Hurwitz zeta functions.

All evaluations use principal-branch powers ``x**-s = exp(-s Log x)``.
Results outside the validated domain (Re z > 0, |z| <= 50, |s| <= 30) are
still computed but carry ``meta["best_effort"] = True``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError, PoleError
from .numcore import (
    DEFAULT_CONFIG,
    EPS,
    EvalConfig,
    SeriesResult,
    alt_sum,
    bernoulli_fractions,
    cexpm1,
    clog1p,
    contour_taylor_coeffs,
    csum,
    phi1,
    within_target,
)

LOG2 = math.log(2.0)
POLE_TOL = 1e-8
ETA_TAYLOR_RADIUS = 1e-3
ETA_TAYLOR_TERMS = 10
_MAX_THRESHOLD_DOUBLINGS = 4


def check_shift(z: complex) -> complex:
    """Reject z in {0, -1, -2, ...}."""
    z = complex(z)
    if abs(z.imag) <= 1e-12 and z.real <= 1e-12 and abs(z.real - round(z.real)) <= 1e-12:
        raise DomainError(f"z = {z} is a non-positive integer")
    return z


def _best_effort(s: complex, z: complex) -> bool:
    return z.real <= 0 or abs(z) > 50 or abs(s) > 30


def _npow(a: np.ndarray | complex, s: complex) -> np.ndarray:
    return np.exp(-s * np.log(np.asarray(a, dtype=complex)))


def _em_corrections(s: complex, a: np.ndarray, n_terms: int):
    """Bernoulli corrections of the Euler-Maclaurin tail of zeta(s, a).

    Returns (a**-s / 2 + sum_k B_2k/(2k)! (s)_{2k-1} a**(-s-2k+1), first
    omitted term).
    """
    bern = bernoulli_fractions(2 * n_terms + 2)
    a = np.asarray(a, dtype=complex)
    a_ms = _npow(a, s)
    total = 0.5 * a_ms
    rising = s  # (s)_{2k-1}
    power = a_ms / a  # a**(-s-1)
    fact = 2.0  # (2k)!
    omitted = None
    for k in range(1, n_terms + 2):
        term = float(bern[2 * k]) / fact * rising * power
        if k == n_terms + 1:
            omitted = term
            break
        total = total + term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power = power / (a * a)
        fact *= (2 * k + 1) * (2 * k + 2)
    return total, omitted


def _shift_count(re_z: float, threshold: float) -> int:
    return max(0, math.ceil(threshold - re_z))


def hurwitz_zeta(s: complex, z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """zeta(s, z) by upward shift and Euler-Maclaurin summation."""
    s = complex(s)
    z = check_shift(z)
    if abs(s - 1) < POLE_TOL:
        raise PoleError("zeta(s, z) has a pole at s = 1")
    threshold = max(cfg.shift_threshold, 0.0)
    for _ in range(_MAX_THRESHOLD_DOUBLINGS):
        n = _shift_count(z.real, threshold)
        terms = _npow(z + np.arange(n), s)
        head = csum(terms) if n else 0j
        a = z + n
        pole = complex(_npow(a, s - 1)) / (s - 1)
        corr, omitted = _em_corrections(s, np.array([a]), cfg.em_bernoulli_terms)
        value = head + pole + complex(corr[0])
        trunc = abs(complex(omitted[0]))
        err = trunc + 8 * EPS * (float(np.abs(terms).sum()) + abs(pole))
        # a larger shift only helps truncation; roundoff grows with it
        if within_target(value, trunc, cfg):
            break
        threshold *= 2
    return SeriesResult(
        value,
        err,
        n + cfg.em_bernoulli_terms,
        "euler-maclaurin",
        within_target(value, err, cfg),
        {"shift": n, "best_effort": _best_effort(s, z)},
    )


def riemann_zeta(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    return hurwitz_zeta(s, 1.0, cfg)


def contour_derivative(
    f, center: complex, order: int, cfg: EvalConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """order-th derivative of an analytic f at center from its Cauchy integral.

    The error estimate is the change against a half-resolution contour.
    """
    r, nodes = cfg.contour_radius, cfg.contour_nodes
    fine = contour_taylor_coeffs(f, center, r, order, nodes)[order]
    coarse = contour_taylor_coeffs(f, center, r, order, max(nodes // 2, 4 * (order + 1)))[order]
    fact = math.factorial(order)
    value = fine * fact
    err = abs(fine - coarse) * fact + 16 * EPS * abs(value)
    return SeriesResult(value, err, nodes, "contour", within_target(value, err, cfg))


def hurwitz_zeta_s_derivative(
    s0: complex, z: complex, cfg: EvalConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """d/ds zeta(s, z) at s0."""
    s0 = complex(s0)
    z = check_shift(z)
    if abs(s0 - 1) <= cfg.contour_radius * (1 + 1e-6):
        raise ParameterError("contour disk around s0 must exclude the pole at s = 1")
    res = contour_derivative(lambda s: hurwitz_zeta(s, z, cfg).value, s0, 1, cfg)
    res.meta["best_effort"] = _best_effort(s0, z)
    return res


def dirichlet_eta(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """eta(s) = (1 - 2**(1-s)) zeta(s); Taylor series about s = 1 near the removable point."""
    s = complex(s)
    u = s - 1
    if abs(u) >= ETA_TAYLOR_RADIUS:
        factor = -cexpm1(-u * LOG2)
        zr = riemann_zeta(s, cfg)
        value = factor * zr.value
        err = abs(factor) * zr.error_estimate
        return SeriesResult(
            value, err, zr.terms_used, "euler-maclaurin", within_target(value, err, cfg)
        )
    coeffs = _eta_taylor_at_one(cfg)
    value = 0j
    for c in reversed(coeffs):
        value = value * u + c
    err = 64 * EPS * max(1.0, abs(value))
    return SeriesResult(value, err, len(coeffs), "contour", within_target(value, err, cfg))


@lru_cache(maxsize=8)
def _eta_taylor_at_one(cfg: EvalConfig) -> tuple[complex, ...]:
    nodes = max(cfg.contour_nodes, 4 * ETA_TAYLOR_TERMS)
    coeffs = contour_taylor_coeffs(
        lambda s: dirichlet_eta(s, cfg).value, 1.0, cfg.contour_radius, ETA_TAYLOR_TERMS - 1, nodes
    )
    return tuple(coeffs)


def eta_prime_zero(cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """eta'(0), expected to be log sqrt(pi/2)."""
    return contour_derivative(lambda s: dirichlet_eta(s, cfg).value, 0.0, 1, cfg)


def alt_hurwitz_zeta(
    s: complex, z: complex, method: str = "split", cfg: EvalConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """Alternating Hurwitz zeta sum_{m>=0} (-1)**m (m+z)**-s.

    ``split`` uses 2**-s (zeta(s, z/2) - zeta(s, (z+1)/2)) evaluated as one
    pole-free Euler-Maclaurin expression, valid for every s.  ``direct`` sums
    the alternating series itself and needs Re(s) > 0.
    """
    s = complex(s)
    z = check_shift(z)
    if method == "split":
        return _alt_hurwitz_split(s, z, cfg)
    if method == "direct":
        if s.real <= 0:
            raise DomainError("direct alternating sum needs Re(s) > 0")
        res = alt_sum(
            lambda m: np.where(m % 2 == 0, 1.0, -1.0) * _npow(m + z, s),
            0,
            cfg,
            method="euler",
            vectorized=True,
        )
        res.meta["best_effort"] = _best_effort(s, z)
        return res
    raise ParameterError(f"unknown method {method!r}")


def _alt_hurwitz_split(s: complex, z: complex, cfg: EvalConfig) -> SeriesResult:
    a1, a2 = z / 2, (z + 1) / 2
    threshold = cfg.shift_threshold
    for _ in range(_MAX_THRESHOLD_DOUBLINGS):
        n = _shift_count(a1.real, threshold)
        if n:
            m = np.arange(n)
            terms = _npow(m + a1, s) - _npow(m + a2, s)
            head = csum(terms)
            magnitude = float(np.abs(_npow(m + a1, s)).sum() + np.abs(_npow(m + a2, s)).sum())
        else:
            head, magnitude = 0j, 0.0
        b1, b2 = a1 + n, a2 + n
        # (b1**(1-s) - b2**(1-s)) / (s-1) written without the 1/(s-1) pole
        t = 1 - s
        d = clog1p((b1 - b2) / b2)
        pole = -complex(np.exp(t * np.log(b2))) * d * phi1(t * d)
        corr, omitted = _em_corrections(s, np.array([b1, b2]), cfg.em_bernoulli_terms)
        scale = complex(np.exp(-s * LOG2))
        value = scale * (head + pole + complex(corr[0] - corr[1]))
        trunc = abs(scale) * abs(complex(omitted[0] - omitted[1]))
        err = trunc + abs(scale) * 8 * EPS * (magnitude + abs(pole))
        if within_target(value, trunc, cfg):
            break
        threshold *= 2
    return SeriesResult(
        value,
        err,
        2 * (n + cfg.em_bernoulli_terms),
        "euler-maclaurin",
        within_target(value, err, cfg),
        {"shift": n, "best_effort": _best_effort(s, z)},
    )
