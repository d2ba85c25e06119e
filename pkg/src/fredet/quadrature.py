"""Quadrature rules and Chebyshev spectral operators for 1-D integral equations."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_NODES = 4096


@dataclass(frozen=True)
class QuadRule:
    """Interpolatory quadrature rule on [a, b] with strictly increasing nodes."""

    a: float
    b: float
    nodes: np.ndarray
    weights: np.ndarray
    kind: str = ""


@dataclass(frozen=True)
class SpectralOps:
    """Chebyshev collocation operators on n Lobatto points.

    points  ascending Chebyshev-Lobatto points on [-1, 1]
    C       Vandermonde C[m, k] = T_k(points[m])
    Cinv    inverse of C (samples -> Chebyshev coefficients)
    Sl      coefficient-space antiderivative vanishing at -1
    Sr      coefficient-space antiderivative of -f vanishing at +1,
            i.e. C @ Sr @ Cinv maps samples of q to samples of int_x^1 q
    """

    n: int
    points: np.ndarray
    C: np.ndarray
    Cinv: np.ndarray
    Sl: np.ndarray
    Sr: np.ndarray


def _check_interval(a: float, b: float):
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got a={a}, b={b}")


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadRule:
    """Gauss-Legendre rule with n nodes on [a, b].

    Nodes are found by Newton iteration on the Legendre recurrence from the
    asymptotic guesses cos(pi*(4k-1)/(4n+2)), tolerance 1e-15, at most 100
    sweeps.  Exact for polynomials of degree <= 2n-1.
    """
    _check_interval(a, b)
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"n must be in [1, {MAX_NODES}], got {n}")
    if n == 1:
        x = np.zeros(1)
        dp = np.ones(1)  # P_1' = 1
    else:
        k = np.arange(1, n + 1)
        x = np.cos(np.pi * (4 * k - 1) / (4 * n + 2))
        for _ in range(100):
            p0 = np.ones_like(x)
            p1 = x.copy()
            for m in range(2, n + 1):
                p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if np.max(np.abs(dx)) < 1e-15:
                break
        else:
            raise RuntimeError("Gauss-Legendre Newton iteration did not converge")
        x = 0.5 * (x - x[::-1])  # enforce symmetry exactly
        p0 = np.ones_like(x)
        p1 = x.copy()
        for m in range(2, n + 1):
            p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    half = 0.5 * (b - a)
    return QuadRule(a, b, 0.5 * (a + b) + half * x, half * w, kind="gauss_legendre")


def rectangle(n: int, a: float = -1.0, b: float = 1.0) -> QuadRule:
    """Midpoint rule with n equal cells on [a, b]."""
    _check_interval(a, b)
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"n must be in [1, {MAX_NODES}], got {n}")
    h = (b - a) / n
    nodes = a + h * (np.arange(n) + 0.5)
    return QuadRule(a, b, nodes, np.full(n, h), kind="rectangle")


def _antiderivative_rows(n: int) -> np.ndarray:
    """Rows 1..n-1 of the Chebyshev antiderivative map (row 0 left as zero).

    From int T_0 = T_1, int T_1 = (T_0 + T_2)/4 and, for k >= 2,
    int T_k = T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1)); the T_n output of the
    last input coefficient is dropped, which is why sample-space
    integration is exact only up to degree n-2.
    """
    raw = np.zeros((n, n))
    raw[1, 0] = 1.0
    if n > 2:
        raw[1, 2] = -0.5
    for k in range(2, n):
        raw[k, k - 1] = 1.0 / (2 * k)
        if k + 1 < n:
            raw[k, k + 1] = -1.0 / (2 * k)
    return raw


def spectral_ops(n: int) -> SpectralOps:
    """Chebyshev-Lobatto collocation operators of size n (n >= 2).

    C @ Sl @ Cinv applied to samples of a polynomial q of degree <= n-2
    yields samples of int_{-1}^x q; C @ Sr @ Cinv yields int_x^1 q.
    """
    if not 2 <= n <= MAX_NODES:
        raise ValueError(f"n must be in [2, {MAX_NODES}], got {n}")
    j = np.arange(n)
    points = -np.cos(np.pi * j / (n - 1))
    points[np.abs(points) < 1e-15] = 0.0
    points[0], points[-1] = -1.0, 1.0
    C = np.polynomial.chebyshev.chebvander(points, n - 1)
    Cinv = np.linalg.inv(C)  # LU-backed; n is small enough for this to be stable

    raw = _antiderivative_rows(n)
    signs = (-1.0) ** np.arange(1, n)
    Sl = raw.copy()
    Sl[0, :] = -signs @ raw[1:, :]  # constant row: antiderivative vanishes at -1
    Sr = -raw
    Sr[0, :] = np.sum(raw[1:, :], axis=0)  # vanishes at +1 instead
    return SpectralOps(n, points, C, Cinv, Sl, Sr)


@lru_cache(maxsize=64)
def _gl_cache(npts: int):
    rule = gauss_legendre(npts)
    return 0.5 * (rule.nodes + 1.0), 0.5 * rule.weights  # on [0, 1]


def singular_moments(alpha: float, x: float, n: int, a: float = -1.0, b: float = 1.0) -> np.ndarray:
    """Moments beta_j(x) = int_a^b |x-y|^(-alpha) T_j(yhat) dy for j < n.

    yhat is y mapped affinely onto [-1, 1].  The integral is split at y = x
    and the substitution t = s^(1/(1-alpha)) removes the singularity on each
    side; composite Gauss-Legendre panels, geometrically graded toward s = 0,
    integrate the smooth remainder.  alpha >= 1 is not integrable and is
    rejected.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    _check_interval(a, b)
    if n < 1:
        raise ValueError("n must be at least 1")
    if not a <= x <= b:
        raise ValueError(f"x={x} outside [{a}, {b}]")

    q = 1.0 / (1.0 - alpha)
    q_int = int(round(q)) if abs(q - round(q)) < 1e-12 and q <= 4.5 else 0
    if q_int:
        # integrand is a polynomial of degree q*(n-1) in s: one exact panel
        u01, w01 = _gl_cache(q_int * (n - 1) // 2 + 8)
    else:
        u01, w01 = _gl_cache(max(24, n // 2 + 16))
    out = np.zeros(n)
    for side in (-1.0, 1.0):
        length = (b - x) if side > 0 else (x - a)
        if length <= 0.0:
            continue
        s_top = length ** (1.0 - alpha)
        if q_int:
            edges = np.array([0.0, s_top])
        else:
            # graded panels: [0, r^M] then [r^m, r^(m-1)] up to s_top
            m_panels = 24
            frac = s_top * 0.25 ** np.arange(m_panels, -1, -1.0)
            edges = np.concatenate(([0.0], frac))
        lo, hi = edges[:-1], edges[1:]
        s = (lo[:, None] + (hi - lo)[:, None] * u01[None, :]).ravel()
        ws = ((hi - lo)[:, None] * w01[None, :]).ravel()
        y = x + side * s**q
        yhat = (2.0 * y - (a + b)) / (b - a)
        tvals = np.polynomial.chebyshev.chebvander(yhat, n - 1)
        out += q * (ws @ tvals)
    return out
