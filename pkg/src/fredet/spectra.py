"""Eigenvalue location from determinant zeros: contour counting plus Newton."""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .determinants import det_p
from .linalg import as_complex_matrix

MAX_CONTOUR_SAMPLES = 2**16


class ZeroOnContourError(RuntimeError):
    """A determinant value on the sampling contour was indistinguishable from zero."""


class RefinementError(RuntimeError):
    """Newton refinement failed; .last holds the last iterate when available."""

    def __init__(self, msg, last=None):
        super().__init__(msg)
        self.last = last


@dataclass(frozen=True)
class EigenEstimate:
    """A determinant zero z_root and the eigenvalue estimate lam = 1/z_root."""

    z_root: complex
    lam: complex
    residual: float
    mult_estimate: int = 1


@dataclass(frozen=True)
class OrderFit:
    """Least-squares slope of log(err) against log(n)."""

    slope: float
    intercept: float
    r_squared: float
    points: Tuple[Tuple[float, float], ...]


def _winding(vals: np.ndarray) -> int:
    ratios = np.roll(vals, -1) / vals
    total = np.sum(np.angle(ratios))
    return int(np.rint(total / (2.0 * np.pi)))


def count_zeros(detfun: Callable, center, radius: float, samples: int = 256) -> int:
    """Number of zeros (with multiplicity) of detfun inside a disc.

    The winding number is the sum of phase increments along the sampled
    circle; the sample count doubles until two consecutive counts agree.
    A contour value within 1e-13 of zero relative to the largest sample
    raises ZeroOnContourError, and disagreement past 2^16 samples raises
    RefinementError.
    """
    center = complex(center)
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if samples < 64:
        raise ValueError(f"need at least 64 samples, got {samples}")

    m = int(samples)
    angles = 2.0 * np.pi * np.arange(m) / m
    vals = np.array([detfun(center + radius * np.exp(1j * t)) for t in angles], dtype=np.complex128)

    def guard(v):
        mags = np.abs(v)
        if mags.min() <= 1e-13 * mags.max():
            raise ZeroOnContourError(f"|det| ~ {mags.min():.3g} on contour radius {radius:.3g}")

    guard(vals)
    count = _winding(vals)
    while True:
        m *= 2
        if m > MAX_CONTOUR_SAMPLES:
            raise RefinementError(f"winding number did not settle within {MAX_CONTOUR_SAMPLES} samples")
        odd = 2.0 * np.pi * (np.arange(m // 2) + 0.5) / (m // 2)
        new = np.empty(m, dtype=np.complex128)
        new[0::2] = vals
        new[1::2] = [detfun(center + radius * np.exp(1j * t)) for t in odd]
        guard(new)
        refined = _winding(new)
        if refined == count:
            return refined
        count, vals = refined, new


def refine_zero(detfun: Callable, z0, tol: float = 1e-10) -> EigenEstimate:
    """Newton iteration on detfun with central-difference derivatives.

    Steps are backtracked until the residual decreases, so |detfun| falls
    monotonically over accepted iterates.  Failure modes: divergence beyond
    |z| = 1e6, a dead derivative, or no convergence within 50 iterations;
    each raises RefinementError with the last iterate attached.
    """
    z = complex(z0)
    fz = detfun(z)
    for _ in range(50):
        if abs(z) > 1e6:
            raise RefinementError("iterates diverged", last=_estimate(z, fz))
        h = 1e-6 * (1.0 + abs(z))
        deriv = (detfun(z + h) - detfun(z - h)) / (2.0 * h)
        if deriv == 0:
            raise RefinementError("derivative vanished", last=_estimate(z, fz))
        step = fz / deriv
        scale = 1.0
        moved = False
        for _ in range(25):
            zc = z - scale * step
            fc = detfun(zc)
            if abs(fc) < abs(fz):
                z, fz = zc, fc
                moved = True
                break
            scale *= 0.5
        if not moved:
            if abs(step) <= tol * (1.0 + abs(z)):
                return _estimate(z, fz)
            raise RefinementError("residual stopped decreasing", last=_estimate(z, fz))
        if abs(scale * step) <= tol * (1.0 + abs(z)):
            return _estimate(z, fz)
    raise RefinementError("iteration cap reached", last=_estimate(z, fz))


def _estimate(z: complex, fz: complex, mult: int = 1) -> EigenEstimate:
    lam = 1.0 / z if z != 0 else complex("inf")
    return EigenEstimate(z, lam, abs(fz), mult)


# hexagonal half-radius covering: the six offsets at distance sqrt(3)/2 * r
# plus the center disc cover the parent disc exactly
_HEX = np.sqrt(3.0) / 2.0 * np.exp(2j * np.pi * np.arange(6) / 6.0)


def locate_eigs(op, p: int, center, radius: float, sign: int = -1,
                samples: int = 64, resolution: float = None) -> list:
    """All zeros of z -> det_p(I + sign*z*K_N) in a disc, as EigenEstimates.

    Recursive subdivision: a disc whose winding number is positive splits
    into seven half-radius discs until the search resolution is reached,
    then Newton refinement runs from the disc center.  The winding number of
    the final disc is kept as the multiplicity estimate, and with the default
    sign = -1 the reported eigenvalue is lam = 1/z_root.
    """
    m = as_complex_matrix(getattr(op, "matrix", op))
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    center = complex(center)
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if resolution is None:
        resolution = 1e-2 * radius

    def detfun(z):
        return det_p(m, p, sign * z).value

    found = []

    def count_robust(c, r):
        # only grow the contour on retry so the nominal disc stays covered
        for bump in (1.0, 1.0093, 1.0217, 1.0341):
            try:
                return count_zeros(detfun, c, r * bump, samples)
            except ZeroOnContourError:
                continue
        raise ZeroOnContourError(f"determinant vanishes near every contour tried at {c}")

    def search(c, r):
        k = count_robust(c, r)
        if k == 0:
            return
        if r <= resolution:
            try:
                est = refine_zero(detfun, c, tol=1e-10)
            except RefinementError as exc:
                # multiple roots stall Newton at the residual noise floor;
                # the last iterate is still the best available estimate
                if exc.last is None:
                    raise
                est = exc.last
            if abs(est.z_root - center) <= radius * (1.0 + 1e-9):
                found.append(EigenEstimate(est.z_root, est.lam, est.residual, max(k, 1)))
            return
        for off in np.concatenate(([0.0 + 0.0j], _HEX * r)):
            search(c + off, 0.5 * r)

    search(center, radius)

    dedup = []
    for est in sorted(found, key=lambda e: abs(e.z_root)):
        tol = 1e-6 * (1.0 + abs(est.z_root))
        match = next((d for d in dedup if abs(d.z_root - est.z_root) <= tol), None)
        if match is None:
            dedup.append(est)
        elif est.residual < match.residual:
            dedup[dedup.index(match)] = EigenEstimate(
                est.z_root, est.lam, est.residual, max(est.mult_estimate, match.mult_estimate)
            )
    # negative sign flips the root-to-eigenvalue map: I + s z K singular at z = -1/(s lam)
    if sign == -1:
        return dedup
    return [EigenEstimate(e.z_root, -e.lam, e.residual, e.mult_estimate) for e in dedup]


def fit_order(ns, errs) -> OrderFit:
    """Fit log(err) = slope * log(n) + intercept by least squares (>= 4 points)."""
    ns = np.asarray(ns, dtype=float)
    errs = np.asarray(errs, dtype=float)
    if ns.shape != errs.shape or ns.ndim != 1:
        raise ValueError("ns and errs must be 1-D arrays of equal length")
    if ns.size < 4:
        raise ValueError(f"need at least 4 points to fit an order, got {ns.size}")
    if np.any(ns <= 0) or np.any(errs <= 0):
        raise ValueError("ns and errs must be positive")
    x = np.log(ns)
    y = np.log(errs)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot <= 1e-300:
        r2 = 1.0 if ss_res <= 1e-24 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return OrderFit(float(slope), float(intercept), r2, tuple(zip(x.tolist(), y.tolist())))
