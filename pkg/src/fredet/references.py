"""Analytic reference determinants d(z) = det_p(I - zK) for the built-in kernels."""

import numpy as np

from . import discretize, kernels, linalg
from .determinants import det_from_eigs


def det_green(z) -> complex:
    """d(z) = sin(sqrt z)/sqrt z for the green kernel, as an entire series.

    Summing sum_k (-1)^k z^k / (2k+1)! sidesteps the square-root branch cut,
    so grids crossing the negative real axis evaluate cleanly.
    """
    z = complex(z)
    term = 1.0 + 0.0j
    total = term
    for k in range(1, 400):
        term *= -z / ((2.0 * k) * (2.0 * k + 1.0))
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            return total
    raise ValueError(f"reference series did not converge at z = {z}")


def det_bernoulli(z) -> complex:
    """d(z) = (2 - 2 cos(sqrt z))/z for the bernoulli kernel, as an entire series."""
    z = complex(z)
    term = 1.0 + 0.0j  # 2/2! = 1
    total = term
    for k in range(1, 400):
        term *= -z / ((2.0 * k + 1.0) * (2.0 * k + 2.0))
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            return total
    raise ValueError(f"reference series did not converge at z = {z}")


def det_sign_p2(z) -> complex:
    """d_2(z) = cosh(2z) for the sign kernel with zeroed diagonal."""
    return complex(np.cosh(2.0 * complex(z)))


_iter2_ref_cache = {}


def det_iter2_p2(w, n_ref: int = 512) -> complex:
    """Reference det_2(I - w K^2) for K the abs_pow(1/2) operator on [-1, 1].

    There is no elementary closed form; the value is the full eigenvalue
    product built from the product-quadrature discretization of K at a large
    reference size, using l(K^2) = l(K)^2.
    """
    lam = _iter2_ref_cache.get(n_ref)
    if lam is None:
        op = discretize.assemble_singular(kernels.registry("abs_pow", {"alpha": 0.5}), n_ref)
        lam = linalg.eigenvalues(op.matrix)
        _iter2_ref_cache[n_ref] = lam
    return det_from_eigs(lam * lam, 2, -complex(w)).value


# name -> (reference callable in the det(I - zK) convention, required p)
REFERENCES = {
    "green": (det_green, 1),
    "bernoulli": (det_bernoulli, 1),
    "sign": (det_sign_p2, 2),
    "abs_pow_iter2": (det_iter2_p2, 2),
}
