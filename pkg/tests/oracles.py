"""Independent reference implementations used only by the tests.

Everything here is deliberately naive: permutation-expansion determinants,
dense grid searches, reduced-density Schmidt coefficients.  None of it
shares code with the package, so agreement is meaningful evidence.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import minimize


def det_permutation_sum(rows):
    """Determinant by the Leibniz formula over any commutative ring.

    `rows` is a square nested list; entries need +, * and unary -.
    Exponential cost, fine for the sizes tests use (n <= 5).
    """
    n = len(rows)
    assert all(len(r) == n for r in rows)
    total = None
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _qubit_state(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta) * np.exp(1j * phi)])


def min_biproduct_grid(grouped: np.ndarray, n_theta: int = 121, n_phi: int = 240) -> float:
    """Minimum of <a (x) b| G |a (x) b> when the `a` side is a qubit.

    `grouped` is G reshaped to (2, m, 2, m) with the qubit side first.  For
    each qubit state a on a dense (theta, phi) grid, the inner problem over
    b is solved exactly as the smallest eigenvalue of the 2x2-contracted
    operator; a Nelder-Mead polish then refines the best grid cell.  No
    alternating steps anywhere.
    """
    assert grouped.shape[0] == 2 and grouped.shape[2] == 2

    def inner(angles) -> float:
        a = _qubit_state(angles[0], angles[1])
        eff = np.einsum("aibj,a,b->ij", grouped, a.conj(), a)
        return float(np.linalg.eigvalsh(eff)[0])

    best = np.inf
    best_angles = (0.0, 0.0)
    for theta in np.linspace(0.0, math.pi / 2, n_theta):
        for phi in np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False):
            v = inner((theta, phi))
            if v < best:
                best = v
                best_angles = (theta, phi)
    res = minimize(inner, best_angles, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000})
    return min(best, float(res.fun))


def max_overlap_grid(grouped: np.ndarray, n_theta: int = 121, n_phi: int = 240) -> float:
    """Same scheme as min_biproduct_grid but maximizing (largest eigenvalue)."""
    assert grouped.shape[0] == 2 and grouped.shape[2] == 2

    def inner(angles) -> float:
        a = _qubit_state(angles[0], angles[1])
        eff = np.einsum("aibj,a,b->ij", grouped, a.conj(), a)
        return -float(np.linalg.eigvalsh(eff)[-1])

    best = np.inf
    best_angles = (0.0, 0.0)
    for theta in np.linspace(0.0, math.pi / 2, n_theta):
        for phi in np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False):
            v = inner((theta, phi))
            if v < best:
                best = v
                best_angles = (theta, phi)
    res = minimize(inner, best_angles, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000})
    return -min(best, float(res.fun))


def schmidt_by_reduced_density(state: np.ndarray, left_dim: int, right_dim: int) -> np.ndarray:
    """Schmidt coefficients from the left reduced density operator.

    Avoids the SVD on purpose: eigenvalues of rho = X X^dag are the squared
    coefficients.
    """
    x = np.asarray(state, dtype=complex).reshape(left_dim, right_dim)
    rho = x @ x.conj().T
    eigs = np.linalg.eigvalsh(rho)[::-1]
    return np.sqrt(np.clip(eigs, 0.0, None))
