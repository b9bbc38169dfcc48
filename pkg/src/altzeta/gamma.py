"""Classical gamma/digamma and the modified gamma family built on zeta_E.

The modified gamma function satisfies

    log G(z) = (z - 2) log 2 + 2 log Gamma(z/2) - log Gamma(z),

obtained by integrating psi~(z) = -psi(z) + psi(z/2) + log 2 and fixing the
constant with G(1) = pi/2.  That closed form is the fast route; the product
and log-series routes evaluate the Weierstrass-type expansions directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .numcore import (
    DEFAULT_CONFIG,
    EPS,
    EvalConfig,
    SeriesResult,
    alt_sum,
    bernoulli_fractions,
    contour_taylor_coeffs,
    csum,
    richardson_extrapolate,
    w_minus_log1p,
    within_target,
)
from .zeta import LOG2, alt_hurwitz_zeta, check_shift

HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
ROUTES = ("closed_form", "weierstrass_product", "log_series")
ROUTE_ALIASES = {"closed": "closed_form", "product": "weierstrass_product", "series": "log_series"}
PRODUCT_PAIRS = 10**4
MAX_POLYGAMMA_ORDER = 12
MAX_STIELTJES_INDEX = 8


def _shift_up(z: complex, threshold: float) -> tuple[complex, np.ndarray]:
    n = max(0, math.ceil(threshold - z.real))
    return z + n, z + np.arange(n)


def classical_digamma(z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    z = check_shift(z)
    w, skipped = _shift_up(z, cfg.shift_threshold)
    bern = bernoulli_fractions(2 * cfg.em_bernoulli_terms)
    acc = complex(np.log(w)) - 0.5 / w
    w2 = w * w
    power = w2
    for k in range(1, cfg.em_bernoulli_terms + 1):
        acc -= float(bern[2 * k]) / (2 * k) / power
        power *= w2
    return acc - csum(1.0 / skipped) if len(skipped) else acc


def classical_log_gamma(z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """Principal log Gamma(z) via Stirling's series after an upward shift."""
    z = check_shift(z)
    w, skipped = _shift_up(z, cfg.shift_threshold)
    bern = bernoulli_fractions(2 * cfg.em_bernoulli_terms)
    acc = (w - 0.5) * complex(np.log(w)) - w + HALF_LOG_2PI
    w2 = w * w
    power = w
    for k in range(1, cfg.em_bernoulli_terms + 1):
        acc += float(bern[2 * k]) / (2 * k * (2 * k - 1)) / power
        power *= w2
    if not len(skipped):
        return acc
    # one log of the product rounds once; at most ~12 modest factors, no overflow
    prod = complex(np.prod(skipped))
    branch = csum(np.log(skipped)).imag
    log_prod = complex(math.log(abs(prod)), branch)
    return acc - log_prod


def psi_tilde(z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    z = check_shift(z)
    return -classical_digamma(z, cfg) + classical_digamma(z / 2, cfg) + LOG2


def psi_tilde_n(n: int, z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """n-th derivative of psi~ as (-1)**(n+1) n! zeta_E(n+1, z)."""
    if not 0 <= n <= MAX_POLYGAMMA_ORDER:
        raise ParameterError(f"order must be in [0, {MAX_POLYGAMMA_ORDER}]")
    ze = alt_hurwitz_zeta(n + 1, z, "split", cfg).value
    return (-1) ** (n + 1) * math.factorial(n) * ze


def mod_euler_const(cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """1/2 + 1/2 sum_{j>=1} (-1)**(j+1) / (j (j+1)); equals log 2."""
    res = alt_sum(
        lambda j: np.where(j % 2 == 1, 1.0, -1.0) / (j * (j + 1.0)),
        1,
        cfg,
        vectorized=True,
    )
    value = 0.5 + 0.5 * res.value
    err = 0.5 * res.error_estimate
    return SeriesResult(value.real, err, res.terms_used, res.method, within_target(value, err, cfg))


@lru_cache(maxsize=4)
def _gamma0(cfg: EvalConfig) -> float:
    return mod_euler_const(cfg).value.real


def resolve_route(route: str) -> str:
    route = ROUTE_ALIASES.get(route, route)
    if route not in ROUTES:
        raise ParameterError(f"unknown route {route!r}")
    return route


def log_gamma_tilde(
    z: complex,
    route: str = "closed_form",
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    pairs: int = PRODUCT_PAIRS,
) -> SeriesResult:
    """log of the modified gamma function (a branch continuous in Re z > 0)."""
    z = check_shift(complex(z))
    route = resolve_route(route)
    if route == "closed_form":
        value = (z - 2) * LOG2 + 2 * classical_log_gamma(z / 2, cfg) - classical_log_gamma(z, cfg)
        err = 16 * EPS * max(1.0, abs(value))
        return SeriesResult(value, err, 0, "direct", True, {"route": route})
    lead = -complex(np.log(z)) + _gamma0(cfg) * z
    if route == "log_series":
        tail = alt_sum(
            lambda k: np.where(k % 2 == 0, 1.0, -1.0) * w_minus_log1p(z / k),
            1,
            cfg,
            vectorized=True,
        )
        res = SeriesResult(
            lead + tail.value, tail.error_estimate, tail.terms_used, tail.method, tail.converged
        )
    else:
        res = _weierstrass_log(z, lead, pairs, cfg)
    res.meta["route"] = route
    return res


def _weierstrass_log(z: complex, lead: complex, pairs: int, cfg: EvalConfig) -> SeriesResult:
    if pairs < 16:
        raise ParameterError("need at least 16 factor pairs")
    k = np.arange(1, pairs + 1, dtype=float)
    odd, even = 2 * k - 1, 2 * k
    # factors m = 2k-1 and m = 2k merged before taking the log
    w = z / (odd * (even + z))
    logs = (w - w_minus_log1p(w)) - z / (odd * even)
    levels = [pairs // 16, pairs // 8, pairs // 4, pairs // 2, pairs]
    partials = [csum(logs[:lv]) for lv in levels]
    hi = richardson_extrapolate(partials, 3, levels)
    # same order on the coarser samples: error of the coarse extrapolant
    lo = richardson_extrapolate(partials[:-1], 3, levels[:-1])
    value = lead + hi
    err = abs(hi - lo) + 8 * EPS * max(abs(p) for p in partials)
    return SeriesResult(value, err, 2 * pairs, "richardson", within_target(value, err, cfg))


def gamma_tilde(
    z: complex,
    route: str = "closed_form",
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    pairs: int = PRODUCT_PAIRS,
) -> SeriesResult:
    lg = log_gamma_tilde(z, route, cfg, pairs=pairs)
    value = complex(np.exp(lg.value))
    err = abs(value) * lg.error_estimate
    meta = dict(lg.meta, log_value=lg.value)
    return SeriesResult(
        value, err, lg.terms_used, lg.method, within_target(value, err, cfg) and lg.converged, meta
    )


@dataclass(frozen=True)
class ModStieltjesResult:
    k: int
    z: complex
    value: complex
    error_estimate: float


@lru_cache(maxsize=64)
def _zeta_e_taylor(z: complex, cfg: EvalConfig) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    def f(s):
        return alt_hurwitz_zeta(s, z, "split", cfg).value

    r, nodes = cfg.contour_radius, cfg.contour_nodes
    fine = contour_taylor_coeffs(f, 1.0, r, MAX_STIELTJES_INDEX, 2 * nodes)
    coarse = contour_taylor_coeffs(f, 1.0, r, MAX_STIELTJES_INDEX, nodes)
    return tuple(fine), tuple(coarse)


def mod_stieltjes(k: int, z: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> ModStieltjesResult:
    """Coefficient gamma~_k(z) of zeta_E(s, z) = sum (-1)**k gamma~_k(z)/k! (s-1)**k."""
    if not 0 <= k <= MAX_STIELTJES_INDEX:
        raise ParameterError(f"k must be in [0, {MAX_STIELTJES_INDEX}]")
    z = check_shift(z)
    fine, coarse = _zeta_e_taylor(z, cfg)
    scale = (-1) ** k * math.factorial(k)
    value = scale * fine[k]
    roundoff = 16 * EPS * abs(fine[0]) / cfg.contour_radius**k
    err = abs(scale) * (abs(fine[k] - coarse[k]) + roundoff)
    return ModStieltjesResult(k, z, value, float(err))
