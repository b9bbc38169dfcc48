"""Numerical kernels shared by the zeta and gamma modules.

Everything here is a pure function of its arguments.  The only shared state
is the Bernoulli-number cache, which is filled once under a lock.
"""

from __future__ import annotations

import math
import threading
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import ParameterError

METHODS = (
    "direct",
    "paired",
    "richardson",
    "eta-expansion",
    "euler-maclaurin",
    "contour",
    "euler-transform",
)

EPS = np.finfo(float).eps
MAX_BERNOULLI = 64


@dataclass(frozen=True)
class EvalConfig:
    target_rel_error: float = 1e-12
    max_terms: int = 10**6
    em_bernoulli_terms: int = 12
    shift_threshold: float = 12.0
    contour_radius: float = 0.5
    contour_nodes: int = 64

    def __post_init__(self):
        for name in (
            "target_rel_error",
            "max_terms",
            "em_bernoulli_terms",
            "shift_threshold",
            "contour_radius",
            "contour_nodes",
        ):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        if self.contour_radius >= 1:
            raise ParameterError("contour_radius must be < 1")
        if 2 * self.em_bernoulli_terms + 2 > MAX_BERNOULLI:
            raise ParameterError("em_bernoulli_terms too large")

    def as_dict(self) -> dict[str, Any]:
        return {
            "target_rel_error": self.target_rel_error,
            "max_terms": self.max_terms,
            "em_bernoulli_terms": self.em_bernoulli_terms,
            "shift_threshold": self.shift_threshold,
            "contour_radius": self.contour_radius,
            "contour_nodes": self.contour_nodes,
        }


DEFAULT_CONFIG = EvalConfig()


@dataclass
class SeriesResult:
    """A computed value with its truncation error estimate.

    ``error_estimate`` is absolute.  ``converged`` means the estimate is
    within ``target_rel_error * max(1, |value|)``.
    """

    value: complex
    error_estimate: float
    terms_used: int
    method: str
    converged: bool
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown method tag {self.method!r}")
        if not self.error_estimate >= 0:
            raise ParameterError("error_estimate must be non-negative")
        self.value = complex(self.value)
        self.error_estimate = float(self.error_estimate)
        self.terms_used = int(self.terms_used)
        self.converged = bool(self.converged)


def within_target(value: complex, err: float, cfg: EvalConfig) -> bool:
    return err <= cfg.target_rel_error * max(1.0, abs(value))


def csum(values) -> complex:
    """Compensated sum of a complex array."""
    arr = np.asarray(values, dtype=complex)
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


# Bernoulli numbers ---------------------------------------------------------

_bernoulli_lock = threading.Lock()
_bernoulli_exact: list[Fraction] = []


def bernoulli_fractions(count: int) -> list[Fraction]:
    """Exact B_0..B_count (B_1 = -1/2)."""
    if not isinstance(count, (int, np.integer)) or not 0 <= count <= MAX_BERNOULLI:
        raise ParameterError(f"count must be an integer in [0, {MAX_BERNOULLI}]")
    if not _bernoulli_exact:
        with _bernoulli_lock:
            if not _bernoulli_exact:
                _bernoulli_exact.extend(_bernoulli_table(MAX_BERNOULLI))
    return _bernoulli_exact[: count + 1]


def _bernoulli_table(n_max: int) -> list[Fraction]:
    # sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1
    table = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum(math.comb(n + 1, k) * table[k] for k in range(n))
        table.append(-acc / (n + 1))
    return table


def bernoulli_numbers(count: int) -> list[float]:
    return [float(b) for b in bernoulli_fractions(count)]


# Extrapolation -------------------------------------------------------------


def richardson_extrapolate(
    partials: Sequence[complex],
    order: int,
    points: Sequence[float] | None = None,
) -> complex:
    """Extrapolate truncated approximations to M -> infinity.

    The error is modelled as a polynomial of degree ``order`` in ``1/M``;
    the last ``order + 1`` samples are used.  ``points`` are the truncation
    sizes M; when omitted they are taken to double from one sample to the next.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ParameterError("order must be a positive integer")
    if len(partials) < order + 1:
        raise ParameterError(f"need at least {order + 1} samples, got {len(partials)}")
    if points is None:
        points = [2.0**i for i in range(len(partials))]
    if len(points) != len(partials):
        raise ParameterError("points and partials differ in length")
    h = [1.0 / float(p) for p in points[-(order + 1) :]]
    y = [complex(v) for v in partials[-(order + 1) :]]
    if len(set(h)) != len(h):
        raise ParameterError("truncation points must be distinct")
    # Neville's scheme evaluated at h = 0
    for j in range(1, order + 1):
        for i in range(order, j - 1, -1):
            y[i] = (h[i] * y[i - 1] - h[i - j] * y[i]) / (h[i] - h[i - j])
    return y[order]


# Alternating sums ----------------------------------------------------------


def _eval_terms(term, idx: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        out = np.asarray(term(idx), dtype=complex)
        return np.broadcast_to(out, idx.shape).astype(complex)
    return np.fromiter((complex(term(int(m))) for m in idx), dtype=complex, count=len(idx))


def alt_sum(
    term: Callable,
    start: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    *,
    method: str = "paired",
    vectorized: bool = False,
) -> SeriesResult:
    """Sum an alternating series ``sum_{m >= start} term(m)``.

    ``method="paired"`` adds consecutive terms (the pairs form an absolutely
    convergent series) and Richardson-extrapolates the paired partial sums
    in powers of 1/M at M, 2M, 4M, 8M pairs.  This needs a term magnitude with
    an asymptotic expansion in integer powers of 1/m.

    ``method="euler"`` applies repeated averaging of consecutive partial sums
    (Euler's transformation).  It only needs the magnitude to be smooth, so it
    handles ``m**-s`` for arbitrary complex ``s`` with ``Re(s) > 0``.

    With ``vectorized=True`` the term is called once with an integer array.
    """
    if method == "paired":
        return _alt_sum_paired(term, start, cfg, vectorized)
    if method == "euler":
        return _alt_sum_euler(term, start, cfg, vectorized)
    raise ParameterError(f"unknown alt_sum method {method!r}")


def _alt_sum_paired(term, start, cfg, vectorized) -> SeriesResult:
    order = 3
    # the first pass uses 32 * m0 terms; keep it inside the budget when possible
    m0 = max(1, min(32, cfg.max_terms // 32))
    while True:
        levels = [m0 * 2**i for i in range(order + 2)]
        idx = start + np.arange(2 * levels[-1])
        t = _eval_terms(term, idx, vectorized)
        pairs = t[0::2] + t[1::2]
        partials = []
        acc = 0j
        prev = 0
        for lv in levels:
            acc += csum(pairs[prev:lv])
            partials.append(acc)
            prev = lv
        hi = richardson_extrapolate(partials, order, levels)
        # same order on the coarser samples; their gap bounds the coarse error
        lo = richardson_extrapolate(partials[:-1], order, levels[:-1])
        scale = max(abs(p) for p in partials)
        err = abs(hi - lo) + 8 * EPS * scale
        result = SeriesResult(hi, err, len(idx), "paired", within_target(hi, err, cfg))
        if result.converged or 4 * len(idx) > cfg.max_terms:
            return result
        m0 *= 4


def _euler_average(partials: np.ndarray) -> complex:
    s = partials
    while len(s) > 1:
        s = 0.5 * (s[:-1] + s[1:])
    return complex(s[0])


def _alt_sum_euler(term, start, cfg, vectorized) -> SeriesResult:
    # two passes are needed for an error estimate; the second uses 3n + 1 terms
    n = max(2, min(32, (cfg.max_terms - 1) // 3))
    prev = None
    used = 0
    while True:
        # head of n terms, then n averaging passes
        idx = start + np.arange(2 * n + 1)
        t = _eval_terms(term, idx, vectorized)
        used = len(idx)
        head = csum(t[:n])
        partials = head + np.concatenate(([0j], np.cumsum(t[n:])))[1:]
        value = _euler_average(partials)
        scale = float(np.max(np.abs(partials)))
        if prev is not None:
            err = abs(value - prev) + 8 * EPS * scale
            if within_target(value, err, cfg) or 2 * (n + n // 2) + 1 > cfg.max_terms:
                return SeriesResult(
                    value, err, used, "euler-transform", within_target(value, err, cfg)
                )
        prev = value
        n += n // 2


# Contour integration -------------------------------------------------------


def contour_taylor_coeffs(
    f: Callable[[complex], complex],
    center: complex,
    radius: float,
    k_max: int,
    nodes: int,
) -> list[complex]:
    """Taylor coefficients a_0..a_{k_max} of ``f`` about ``center``.

    Trapezoidal rule on the Cauchy integral over a circle; spectrally
    accurate because the integrand is periodic.
    """
    if not radius > 0:
        raise ParameterError("radius must be positive")
    if k_max < 0:
        raise ParameterError("k_max must be non-negative")
    if nodes < 4 * (k_max + 1):
        raise ParameterError(f"need at least {4 * (k_max + 1)} nodes for k_max={k_max}")
    theta = 2 * np.pi * np.arange(nodes) / nodes
    pts = complex(center) + radius * np.exp(1j * theta)
    vals = np.array([complex(f(complex(p))) for p in pts])
    coeffs = np.fft.fft(vals) / nodes
    return [complex(coeffs[k]) / radius**k for k in range(k_max + 1)]


# Complex elementary helpers ------------------------------------------------


def cexpm1(x: complex) -> complex:
    """exp(x) - 1 without cancellation near 0."""
    x = complex(x)
    if abs(x) >= 0.5:
        return complex(np.exp(x)) - 1.0
    term, acc = x, x
    for k in range(2, 24):
        term *= x / k
        acc += term
    return acc


def phi1(x: complex) -> complex:
    """(exp(x) - 1) / x, equal to 1 at x = 0."""
    x = complex(x)
    if abs(x) >= 0.5:
        return (complex(np.exp(x)) - 1.0) / x
    term, acc = 1.0 + 0j, 1.0 + 0j
    for k in range(2, 25):
        term *= x / k
        acc += term
    return acc


def clog1p(w: complex) -> complex:
    """Principal log(1 + w) without cancellation near 0."""
    w = complex(w)
    if abs(w) >= 0.1:
        return complex(np.log(1.0 + w))
    acc, power = 0j, 1.0 + 0j
    for k in range(1, 40):
        power *= w
        acc += power / k if k % 2 else -power / k
    return acc


def w_minus_log1p(w) -> np.ndarray:
    """w - log(1 + w), elementwise, accurate for small |w|."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    out = np.empty_like(w)
    small = np.abs(w) < 0.1
    ws = w[small]
    if ws.size:
        # w**2/2 - w**3/3 + ..., truncated once |w|**k / k is below eps**2
        wmax = float(np.max(np.abs(ws)))
        k_max = 2 if wmax == 0 else min(40, max(3, math.ceil(-36 / math.log10(wmax))))
        acc = np.zeros_like(ws)
        for k in range(k_max, 1, -1):
            acc = acc * ws + (1.0 / k if k % 2 == 0 else -1.0 / k)
        out[small] = acc * ws * ws
    wl = w[~small]
    out[~small] = wl - np.log1p(wl)
    return out
