"""Numerical convex-roof extension of pure-state measures.

A decomposition of ``rho = W W^dagger`` into ``k`` pure states is
``psi_i = sum_j U_ij w_j`` for a ``k x r`` isometry ``U``; every such ``U``
reproduces ``rho`` exactly. ``U`` is parametrized by an unconstrained
complex matrix passed through a QR orthonormalization, and the weighted
average of the pure measure is minimized by multi-start Nelder-Mead.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import InputError
from .linalg import check_dims, clip_spectrum
from .measures import SIGMA_YY, as_measure, check_density, measure_eval

MAX_ROOF_DIM = 16


@dataclass(frozen=True)
class RoofResult:
    value: float
    weights: np.ndarray
    states: np.ndarray  # one normalized state per column
    status: str  # "converged" or "budget-exhausted"
    evaluations: int

    def reconstruct(self):
        return (self.states * self.weights) @ self.states.conj().T


def _weighted_values(measure, psi, dims, left):
    """``p_i E(psi_i / sqrt(p_i))`` for each unnormalized column ``psi_i``."""
    name = measure.name
    p = np.einsum("ij,ij->j", psi.conj(), psi).real
    if name == "CONCURRENCE" and dims == (2, 2):
        return np.abs(np.einsum("ij,ik,kj->j", psi, SIGMA_YY, psi))
    k = psi.shape[1]
    n = len(dims)
    right = [i for i in range(n) if i not in left]
    d_left = int(np.prod([dims[i] for i in left]))
    t = psi.T.reshape((k,) + dims).transpose([0] + [1 + i for i in left] + [1 + i for i in right])
    mats = t.reshape(k, d_left, -1)
    if name == "NEGATIVITY":
        s = np.linalg.svd(mats, compute_uv=False)
        return np.maximum(s.sum(axis=1) ** 2 - p, 0.0)
    red = mats @ np.conj(np.swapaxes(mats, 1, 2))
    purity = np.einsum("kij,kij->k", red, red.conj()).real
    gap = np.maximum(p * p - purity, 0.0)
    if name == "TANGLE":
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(p > 0, 2.0 * gap / np.where(p > 0, p, 1.0), 0.0)
    return np.sqrt(2.0 * gap)


def convex_roof(rho, measure, dims=(2, 2), cut=(0,), k=None, restarts=8,
                max_evals=2000, tol=1e-6, seed=0):
    """Upper bound on the convex roof of ``measure`` at ``rho``.

    ``measure`` is a :class:`~monolab.measures.MeasureId` (or its name), or a
    callable mapping a normalized state vector to a float. The returned value
    never exceeds the eigendecomposition average.

    Parameters
    ----------
    rho : ndarray
        Density matrix of dimension at most 16.
    dims, cut : tuple
        Subsystem dimensions and left subsystems of the cut.
    k : int, optional
        Ensemble size, default ``2 * rank``.
    restarts, max_evals, tol
        Number of random starts, evaluation budget per start, and the
        Nelder-Mead convergence tolerance.
    seed : int
        Seed for the starting points.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] > MAX_ROOF_DIM:
        raise InputError(f"convex roof limited to dimension {MAX_ROOF_DIM}")
    dims = check_dims(dims, rho.shape[0])
    left = tuple(sorted(set(cut)))
    rho = check_density(rho)

    if callable(measure) and not hasattr(measure, "name"):
        pure = measure

        def weighted(psi):
            p = np.einsum("ij,ij->j", psi.conj(), psi).real
            out = np.zeros(psi.shape[1])
            for i in np.flatnonzero(p > 0):
                out[i] = p[i] * pure(psi[:, i] / np.sqrt(p[i]))
            return out
    else:
        m = as_measure(measure)
        pure = lambda v: measure_eval(m.name, v, dims, left)  # noqa: E731

        def weighted(psi):
            return _weighted_values(m, psi, dims, left)

    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    w = clip_spectrum(w)
    keep = w > 0
    factor = v[:, keep] * np.sqrt(w[keep])
    r = factor.shape[1]
    if r == 1:
        vec = v[:, np.argmax(w)]
        return RoofResult(float(pure(vec)), np.ones(1), vec[:, None], "converged", 1)

    k = 2 * r if k is None else int(k)
    if k < r:
        raise InputError("ensemble size must be at least the rank")

    def isometry(x):
        z = (x[: k * r] + 1j * x[k * r:]).reshape(k, r)
        q, _ = np.linalg.qr(z)
        return q

    def objective(x):
        return float(weighted(factor @ isometry(x).T).sum())

    base = np.zeros(2 * k * r)
    base[: k * r] = np.eye(k, r).ravel()
    best_x, best_val = base, objective(base)
    rng = np.random.default_rng(seed)
    evals = 1
    converged = False
    for _ in range(restarts):
        x0 = rng.standard_normal(2 * k * r)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxfev": max_evals, "xatol": tol, "fatol": tol})
        evals += res.nfev
        converged |= bool(res.success)
        if res.fun < best_val:
            best_x, best_val = res.x, res.fun

    psi = factor @ isometry(best_x).T
    p = np.einsum("ij,ij->j", psi.conj(), psi).real
    nz = p > 0
    states = psi[:, nz] / np.sqrt(p[nz])
    status = "converged" if converged else "budget-exhausted"
    return RoofResult(float(best_val), p[nz], states, status, evals)
