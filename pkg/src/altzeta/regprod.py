"""Zeta-regularized alternating products and identity verification.

For shifts z_1..z_n the Dirichlet series

    L(s) = sum_{m>=0} (-1)**(m+1) prod_j (m + z_j)**-s

defines the regularized product prod_m {prod_j (m + z_j)}**((-1)**m) as
exp(L'(0)).  L'(0) is assembled from a finite head up to a cutoff c, an
analytic tail beyond c, and the constants eta'(0) = log sqrt(pi/2) and
eta(1) = gamma~_0.
"""

from __future__ import annotations

import cmath
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import DomainError, ParameterError
from .gamma import _gamma0, classical_log_gamma, log_gamma_tilde
from .numcore import (
    DEFAULT_CONFIG,
    EPS,
    EvalConfig,
    SeriesResult,
    alt_sum,
    csum,
    richardson_extrapolate,
    w_minus_log1p,
    within_target,
)
from .zeta import alt_hurwitz_zeta, check_shift, hurwitz_zeta_s_derivative

HALF_LOG_HALF_PI = 0.5 * math.log(math.pi / 2)
IDENTITIES = ("mizuno", "lerch", "lerch_qi", "kurokawa_wakayama", "wallis", "classical_lerch")
TAIL_METHODS = ("eta-expansion", "paired")
ABS_SWITCH = 1e-8
POLY_TOL = 1e-12
_MAX_ETA_TERMS = 400


@dataclass(frozen=True)
class ProductSpec:
    shifts: tuple[complex, ...]
    cutoff: int | None = None

    def __post_init__(self):
        shifts = tuple(complex(z) for z in self.shifts)
        if not shifts:
            raise ParameterError("at least one shift is required")
        for z in shifts:
            check_shift(z)
        object.__setattr__(self, "shifts", shifts)
        if self.cutoff is not None:
            if int(self.cutoff) != self.cutoff or self.cutoff < 1:
                raise ParameterError("cutoff must be a positive integer")
            if max(abs(z) for z in shifts) / (self.cutoff + 1) >= 1:
                raise ParameterError(f"cutoff {self.cutoff} too small: need |z_j| < c + 1")

    @property
    def n(self) -> int:
        return len(self.shifts)

    def resolved_cutoff(self) -> int:
        if self.cutoff is not None:
            return int(self.cutoff)
        return max(10, math.ceil(2 * max(abs(z) for z in self.shifts)))

    def with_cutoff(self, cutoff: int | None) -> ProductSpec:
        return ProductSpec(self.shifts, cutoff)

    def __add__(self, other: ProductSpec) -> ProductSpec:
        return ProductSpec(self.shifts + other.shifts)


@dataclass
class VerificationReport:
    identity: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    metadata: dict[str, Any] = field(default_factory=dict)


def make_report(
    identity: str, lhs: complex, rhs: complex, tol: float, metadata: dict | None = None
) -> VerificationReport:
    """Compare two sides; relative error unless |rhs| < 1e-8."""
    if identity not in IDENTITIES:
        raise ParameterError(f"unknown identity {identity!r}")
    if not tol > 0:
        raise ParameterError("tol must be positive")
    lhs, rhs = complex(lhs), complex(rhs)
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / abs(rhs) if rhs != 0 else math.inf
    if not (np.isfinite(lhs) and np.isfinite(rhs)):
        passed = False
    elif abs(rhs) < ABS_SWITCH:
        passed = abs_err <= tol
    else:
        passed = rel_err <= tol
    return VerificationReport(
        identity, lhs, rhs, abs_err, rel_err, tol, bool(passed), metadata or {}
    )


def roots_of_unity(n: int) -> list[complex]:
    if n < 1:
        raise ParameterError("n must be >= 1")
    exact = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}
    roots = []
    for j in range(n):
        if (4 * j) % n == 0:
            roots.append(exact[(4 * j) // n])
        else:
            roots.append(cmath.exp(2j * math.pi * j / n))
    return roots


def _signs(m: np.ndarray) -> np.ndarray:
    # (-1)**(m+1)
    return np.where(m % 2 == 1, 1.0, -1.0)


def lambda_star(s: complex, spec: ProductSpec, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """sum_{m>=0} (-1)**(m+1) prod_j (m + z_j)**-s for Re(s) > 0."""
    s = complex(s)
    if s.real <= 0:
        raise DomainError("the defining series needs Re(s) > 0")
    zs = np.array(spec.shifts)

    def term(m):
        logs = np.log(m[:, None] + zs[None, :]).sum(axis=1)
        return _signs(m) * np.exp(-s * logs)

    return alt_sum(term, 0, cfg, method="euler", vectorized=True)


@lru_cache(maxsize=4096)
def _eta_tail(k: int, c: int, cfg: EvalConfig) -> float:
    """sum_{m>c} (-1)**(m+1) m**-k, computed as (-1)**c zeta_E(k, c+1)."""
    val = alt_hurwitz_zeta(k, c + 1, "split", cfg).value.real
    return val if c % 2 == 0 else -val


def _t3_eta(zs: np.ndarray, c: int, cfg: EvalConfig, k_limit: int | None = None):
    ratio = float(np.max(np.abs(zs))) / (c + 1)
    k = 2
    total = 0j
    bound = math.inf
    while k <= _MAX_ETA_TERMS and (k_limit is None or k <= k_limit):
        coeff = (1.0 if k % 2 else -1.0) / k * _eta_tail(k, c, cfg)
        total += coeff * csum(zs**k)
        # remaining terms are bounded by a geometric series in ratio
        bound = len(zs) * ratio ** (k + 1) / (k + 1) / (1 - ratio)
        if bound < cfg.target_rel_error * 1e-3:
            break
        k += 1
    return -total, bound, k - 1


def _t3_paired(zs: np.ndarray, c: int, cfg: EvalConfig) -> SeriesResult:
    def term(m):
        w = zs[None, :] / m[:, None]
        # (-1)**(m+1) * sum_j [log(1 + z_j/m) - z_j/m]
        return -_signs(m) * w_minus_log1p(w.ravel()).reshape(w.shape).sum(axis=1)

    res = alt_sum(term, c + 1, cfg, method="paired", vectorized=True)
    res.value = -res.value
    return res


def lambda_star_deriv_zero(
    spec: ProductSpec,
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    tail_method: str = "eta-expansion",
) -> SeriesResult:
    """L'(0) from the cutoff decomposition head + tail + constants."""
    if tail_method not in TAIL_METHODS:
        raise ParameterError(f"unknown tail method {tail_method!r}")
    c = spec.resolved_cutoff()
    zs = np.array(spec.shifts)
    n = spec.n
    ratio = float(np.max(np.abs(zs))) / (c + 1)
    if ratio >= 1:
        raise ParameterError(f"cutoff {c} too small: need |z_j| < c + 1")

    m = np.arange(c + 1)
    shifted = m[:, None] + zs[None, :]
    t1 = -csum((_signs(m)[:, None] * np.log(shifted)).ravel())
    mm = m[1:].astype(float)
    sg = _signs(m[1:])
    t2 = n * csum(sg * np.log(mm)) + csum(zs) * csum(sg / mm)

    if tail_method == "eta-expansion":
        t3, err3, k_used = _t3_eta(zs, c, cfg)
        terms = k_used - 1
    else:
        tail = _t3_paired(zs, c, cfg)
        t3, err3, terms = tail.value, tail.error_estimate, tail.terms_used
    t4 = n * HALF_LOG_HALF_PI - csum(zs) * _gamma0(cfg)

    value = t1 + t2 + t3 + t4
    err = err3 + 8 * EPS * (abs(t1) + abs(t2) + abs(t4)) * max(1, c)
    meta = {
        "cutoff": c,
        "tail_method": tail_method,
        "tail_ratio": ratio,
        "parts": [t1, t2, t3, t4],
        "branch_warning": bool(np.any(shifted.real <= 0)),
    }
    method = "eta-expansion" if tail_method == "eta-expansion" else "paired"
    return SeriesResult(value, err, terms + c + 1, method, within_target(value, err, cfg), meta)


def reg_alt_product(
    spec: ProductSpec, cfg: EvalConfig = DEFAULT_CONFIG, *, tail_method: str = "eta-expansion"
) -> SeriesResult:
    d = lambda_star_deriv_zero(spec, cfg, tail_method=tail_method)
    value = complex(np.exp(d.value))
    err = abs(value) * d.error_estimate
    meta = dict(d.meta, log_value=d.value)
    return SeriesResult(value, err, d.terms_used, d.method, d.converged, meta)


def mizuno_rhs(spec: ProductSpec, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """(pi/2)**(n/2) / prod_j G(z_j) with G the modified gamma function."""
    logs = [log_gamma_tilde(z, "closed_form", cfg) for z in spec.shifts]
    log_value = spec.n * HALF_LOG_HALF_PI - sum(r.value for r in logs)
    value = complex(np.exp(log_value))
    err = abs(value) * sum(r.error_estimate for r in logs)
    return SeriesResult(value, err, 0, "direct", True, {"log_value": log_value})


def verify_mizuno(
    spec: ProductSpec,
    tol: float = 1e-8,
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    identity: str = "mizuno",
) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = reg_alt_product(spec, cfg)
    rhs = mizuno_rhs(spec, cfg)
    meta = {
        "shifts": list(spec.shifts),
        "cutoff": lhs.meta["cutoff"],
        "tail_method": lhs.meta["tail_method"],
        "terms_used": lhs.terms_used,
        "lhs_error_estimate": lhs.error_estimate,
        "converged": lhs.converged and rhs.converged,
        "branch_warning": lhs.meta["branch_warning"],
        "best_effort": any(z.real <= 0 for z in spec.shifts),
        "runtime_ms": 1000 * (time.perf_counter() - t0),
    }
    return make_report(identity, lhs.value, rhs.value, tol, meta)


def verify_lerch_type(x: complex, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG):
    """prod_m (m + x)**((-1)**m) = sqrt(pi/2) / G(x)."""
    return verify_mizuno(ProductSpec((x,)), tol, cfg, identity="lerch")


def verify_lerch_qi(
    x: complex, y: complex, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG
) -> VerificationReport:
    """prod_m ((m + x)**2 + y**2)**((-1)**m) = (pi/2) / (G(x+iy) G(x-iy))."""
    x, y = complex(x), complex(y)
    rep = verify_mizuno(ProductSpec((x + 1j * y, x - 1j * y)), tol, cfg, identity="lerch_qi")
    rep.metadata["lhs_imag"] = rep.lhs.imag
    return rep


def kurokawa_wakayama(
    n: int, x: complex, y: complex, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG
) -> VerificationReport:
    """prod_m ((m+x)**n - y**n)**((-1)**m) via the shifts x - zeta**j y."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    x, y = complex(x), complex(y)
    roots = roots_of_unity(n)
    shifts = tuple(x - r * y for r in roots)
    spec = ProductSpec(shifts)
    poly_err = 0.0
    for m in range(6):
        lhs_poly = complex(np.prod([m + z for z in shifts]))
        rhs_poly = (m + x) ** n - y**n
        poly_err = max(poly_err, abs(lhs_poly - rhs_poly) / abs(rhs_poly))
    rep = verify_mizuno(spec, tol, cfg, identity="kurokawa_wakayama")
    rep.metadata.update({"n": n, "x": x, "y": y, "poly_rel_err": poly_err})
    rep.passed = rep.passed and poly_err <= POLY_TOL
    return rep


# Wallis ---------------------------------------------------------------------


def _wallis_log(pairs: int) -> float:
    k = np.arange(1, pairs + 1, dtype=float)
    # each pair contributes (2k)^2 / ((2k-1)(2k+1)) = 1 / (1 - 1/(4k^2))
    return -math.fsum(np.log1p(-0.25 / (k * k)))


def wallis_partial(pairs: int) -> SeriesResult:
    """prod_{k=1}^{2 pairs} (k/(k+1))**((-1)**k), accumulated in log space."""
    if pairs < 1:
        raise ParameterError("pairs must be >= 1")
    value = math.exp(_wallis_log(pairs))
    err = abs(value - math.pi / 2)
    return SeriesResult(value, err, 2 * pairs, "direct", False, {"pairs": pairs})


def wallis_extrapolated(
    pairs: int, order: int = 3, cfg: EvalConfig = DEFAULT_CONFIG
) -> SeriesResult:
    """Richardson limit of the partial products at pairs / 2**j, j = order..0."""
    if pairs < 2 ** (order + 1):
        raise ParameterError(f"pairs must be >= {2 ** (order + 1)} for order {order}")
    levels = [pairs // 2**j for j in range(order + 1, -1, -1)]
    partials = [math.exp(_wallis_log(p)) for p in levels]
    hi = richardson_extrapolate(partials, order, levels)
    lo = richardson_extrapolate(partials[:-1], order, levels[:-1])
    err = abs(hi - lo) + 8 * EPS
    meta = {"levels": levels, "partials": partials}
    return SeriesResult(hi.real, err, 2 * pairs, "richardson", within_target(hi, err, cfg), meta)


def verify_wallis(
    pairs: int, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG
) -> VerificationReport:
    t0 = time.perf_counter()
    ext = wallis_extrapolated(pairs, cfg=cfg)
    raw = wallis_partial(pairs)
    half = wallis_partial(max(1, pairs // 2))
    meta = {
        "pairs": pairs,
        "factors": 2 * pairs,
        "raw_partial": raw.value.real,
        "raw_error": raw.error_estimate,
        "error_ratio_on_doubling": half.error_estimate / raw.error_estimate,
        "extrapolation_levels": ext.meta["levels"],
        "runtime_ms": 1000 * (time.perf_counter() - t0),
    }
    return make_report("wallis", ext.value, math.pi / 2, tol, meta)


# Empirical oracle -----------------------------------------------------------


def _geometric_mean_log(zs: np.ndarray, M: int) -> complex:
    m = np.arange(2 * M + 2)
    f = np.log(m[:, None] + zs[None, :]).sum(axis=1)
    signed = np.where(m % 2 == 0, 1.0, -1.0) * f
    log_even = csum(signed[: 2 * M + 1])
    log_odd = log_even + signed[2 * M + 1]
    return 0.5 * (log_even + log_odd)


def geometric_mean_oracle(spec: ProductSpec, M: int, *, extrapolate: bool = True) -> SeriesResult:
    """sqrt(P_{2M} P_{2M+1}) for the partial products P_N, optionally extrapolated in 1/M."""
    if M < 16:
        raise ParameterError("M must be >= 16")
    zs = np.array(spec.shifts)
    if not extrapolate:
        val = _geometric_mean_log(zs, M)
        return SeriesResult(np.exp(val), 0.0, 2 * M + 2, "direct", False, {"log_value": val})
    levels = [M // 8, M // 4, M // 2, M]
    logs = [_geometric_mean_log(zs, lv) for lv in levels]
    hi = richardson_extrapolate(logs, 3, levels)
    lo = richardson_extrapolate(logs[1:], 2, levels[1:])
    value = complex(np.exp(hi))
    err = abs(value) * abs(hi - lo)
    return SeriesResult(value, err, 2 * M + 2, "richardson", False, {"log_value": hi})


# Classical Lerch --------------------------------------------------------------


def classical_lerch_check(
    z: complex, tol: float = 1e-8, cfg: EvalConfig = DEFAULT_CONFIG
) -> VerificationReport:
    """Regularized prod_m (m + z) = exp(-zeta'(0, z)) against sqrt(2 pi) / Gamma(z)."""
    z = check_shift(z)
    t0 = time.perf_counter()
    dz = hurwitz_zeta_s_derivative(0.0, z, cfg).value
    d1 = hurwitz_zeta_s_derivative(0.0, 1.0, cfg).value
    log_gamma = classical_log_gamma(z, cfg)
    lhs = complex(np.exp(-dz))
    rhs = math.sqrt(2 * math.pi) / complex(np.exp(log_gamma))
    gamma_zeta = complex(np.exp(dz - d1))
    gamma_classical = complex(np.exp(log_gamma))
    meta = {
        "z": z,
        "zeta_prime_zero": d1,
        "zeta_prime_zero_err": abs(d1 + 0.5 * math.log(2 * math.pi)),
        "gamma_from_zeta": gamma_zeta,
        "gamma_classical": gamma_classical,
        "gamma_rel_err": abs(gamma_zeta - gamma_classical) / abs(gamma_classical),
        "runtime_ms": 1000 * (time.perf_counter() - t0),
    }
    return make_report("classical_lerch", lhs, rhs, tol, meta)


# Sweeps -----------------------------------------------------------------------


def random_specs(seed: int, cases: int) -> list[ProductSpec]:
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(cases):
        n = int(rng.integers(1, 5))
        re = rng.uniform(0.2, 5.0, n)
        im = rng.uniform(-5.0, 5.0, n)
        specs.append(ProductSpec(tuple(complex(a, b) for a, b in zip(re, im))))
    return specs


def property_checks(spec: ProductSpec, cfg: EvalConfig = DEFAULT_CONFIG) -> dict[str, float]:
    """Cutoff invariance, additivity over shifts, and tail-method agreement."""
    base = lambda_star_deriv_zero(spec, cfg)
    c = base.meta["cutoff"]
    spread = max(
        abs(lambda_star_deriv_zero(spec.with_cutoff(c + extra), cfg).value - base.value)
        for extra in (10, 50)
    )
    if spec.n >= 2:
        half = spec.n // 2
        a, b = ProductSpec(spec.shifts[:half]), ProductSpec(spec.shifts[half:])
    else:
        a = b = spec
    combined = lambda_star_deriv_zero(a + b, cfg).value
    additivity = abs(
        combined - lambda_star_deriv_zero(a, cfg).value - lambda_star_deriv_zero(b, cfg).value
    )
    paired = lambda_star_deriv_zero(spec, cfg, tail_method="paired")
    return {
        "cutoff_spread": spread,
        "additivity_err": additivity,
        "tail_method_diff": abs(paired.value - base.value),
    }


def verify_suite(
    seed: int = 42,
    cases: int = 100,
    tol: float = 1e-8,
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    property_tol: float = 1e-11,
    with_properties: bool = True,
) -> list[VerificationReport]:
    reports = []
    for i, spec in enumerate(random_specs(seed, cases)):
        rep = verify_mizuno(spec, tol, cfg)
        rep.metadata.update({"case": i, "seed": seed})
        if with_properties:
            props = property_checks(spec, cfg)
            rep.metadata.update(props)
            rep.metadata["properties_ok"] = all(v <= property_tol for v in props.values())
        reports.append(rep)
    return reports


# Benchmark --------------------------------------------------------------------


def bench_accel(
    spec: ProductSpec,
    methods: Sequence[str] = TAIL_METHODS,
    sizes: Sequence[int] = (1000, 10000, 100000),
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[dict[str, Any]]:
    """Tail accuracy and wall time per method under a term budget."""
    zs = np.array(spec.shifts)
    c = spec.resolved_cutoff()
    reference, _, _ = _t3_eta(zs, c, cfg)
    rows = []
    for method in methods:
        if method not in TAIL_METHODS:
            raise ParameterError(f"unknown method {method!r}")
        for size in sizes:
            size = int(size)
            t0 = time.perf_counter()
            if method == "eta-expansion":
                value, _, used = _t3_eta(zs, c, cfg, k_limit=size + 1)
                used -= 1
            else:
                value, used = _t3_paired_budget(zs, c, size)
            ms = 1000 * (time.perf_counter() - t0)
            rows.append(
                {
                    "method": method,
                    "size": size,
                    "terms_used": used,
                    "value": complex(value),
                    "abs_err": abs(complex(value) - reference),
                    "runtime_ms": ms,
                }
            )
    return rows


def _t3_paired_budget(zs: np.ndarray, c: int, size: int) -> tuple[complex, int]:
    pairs = max(16, size // 2)
    m = c + 1 + np.arange(2 * pairs)
    w = zs[None, :] / m[:, None]
    t = -_signs(m) * w_minus_log1p(w.ravel()).reshape(w.shape).sum(axis=1)
    paired = t[0::2] + t[1::2]
    levels = [pairs // 8, pairs // 4, pairs // 2, pairs]
    partials = [csum(paired[:lv]) for lv in levels]
    return -richardson_extrapolate(partials, 3, levels), 2 * pairs
