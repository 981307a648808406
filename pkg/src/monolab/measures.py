"""Bipartite entanglement measures: tangle, concurrence, negativity.

Pure states are handled through the Schmidt coefficients of the cut, which
avoids forming projectors. Mixed two-qubit states use the Wootters closed
form; negativity works on any density matrix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DispatchError, InputError
from .linalg import (
    check_dim,
    check_dims,
    check_hermitian,
    clip_spectrum,
    cut_matrix,
    partial_transpose,
    schmidt_coefficients,
    trace_norm,
)

NEGATIVITY_CLIP = 1e-10
PSD_TOL = 1e-10
PURE_TOL = 1e-10
SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)

MEASURES = ("TANGLE", "CONCURRENCE", "NEGATIVITY")


@dataclass(frozen=True)
class MeasureId:
    name: str
    power_alpha: float = 1.0

    def __post_init__(self):
        name = str(self.name).upper()
        if name not in MEASURES:
            raise InputError(f"unknown measure {self.name!r}")
        alpha = float(self.power_alpha)
        if not alpha > 0:
            raise InputError("power_alpha must be positive")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "power_alpha", alpha)

    def __str__(self):
        base = self.name.lower()
        return base if self.power_alpha == 1.0 else f"{base}^{self.power_alpha:g}"


def as_measure(m):
    return m if isinstance(m, MeasureId) else MeasureId(m)


@dataclass(frozen=True)
class Bipartition:
    """Left parties of a cut; the right side is the complement within ``n``."""

    left: tuple
    n: int

    def __post_init__(self):
        left = tuple(sorted({int(i) for i in self.left}))
        if not left or len(left) >= self.n or left[0] < 0 or left[-1] >= self.n:
            raise InputError("bipartition must be nonempty, disjoint and covering")
        object.__setattr__(self, "left", left)

    @property
    def right(self):
        return tuple(i for i in range(self.n) if i not in self.left)


def _pairwise_sum(x):
    """``sum_{i<j} x_i x_j`` without the cancellation of ``((sum x)^2 - sum x^2) / 2``."""
    x = np.sort(np.asarray(x, dtype=float))
    return float(np.dot(x[1:], np.cumsum(x)[:-1]))


def _cut(state, cut):
    if isinstance(cut, Bipartition):
        cut = cut.left
    if hasattr(state, "subsystems"):
        return state.amplitudes, state.dims, state.subsystems(cut)
    raise InputError("expected a PureState")


def tangle_pure(psi, cut=(0,)):
    """``2 (1 - Tr rho_A^2)`` across ``cut`` (left logical parties)."""
    amps, dims, left = _cut(psi, cut)
    p = schmidt_coefficients(amps, dims, left) ** 2
    return 4.0 * _pairwise_sum(p)


def concurrence_pure(psi, cut=(0,)):
    return float(np.sqrt(tangle_pure(psi, cut)))


def _wootters_from_factor(w):
    # rho = w w^dagger; singular values of w^T (sy x sy) w are the square roots
    # of the eigenvalues of rho (sy x sy) rho* (sy x sy)
    s = np.linalg.svd(w.T @ SIGMA_YY @ w, compute_uv=False)
    s = np.concatenate([s, np.zeros(max(0, 4 - s.size))])
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


def check_density(rho, tol=PSD_TOL):
    rho = check_hermitian(rho, tol, what="density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol * max(1, rho.shape[0]):
        raise InputError("density matrix must have unit trace")
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if w[0] < -tol:
        raise InputError("density matrix must be positive semidefinite")
    return rho


def _psd_factor(rho):
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    w = clip_spectrum(w)
    keep = w > 0
    return v[:, keep] * np.sqrt(w[keep])


def concurrence_wootters(rho):
    """Two-qubit concurrence ``max(0, s1 - s2 - s3 - s4)``."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise InputError("two-qubit only")
    rho = check_density(rho)
    return _wootters_from_factor(_psd_factor(rho))


def tangle_mixed_2q(rho):
    return concurrence_wootters(rho) ** 2


def negativity(x, dims, cut):
    """``||x^{T_B}||_1 - 1`` for a state vector or density matrix.

    ``cut`` lists the left subsystems; the complement is transposed. Values
    below ``1e-10`` are reported as zero.
    """
    x = np.asarray(x)
    dims = check_dims(dims, x.shape[0])
    left = tuple(sorted({int(i) for i in ([cut] if np.isscalar(cut) else cut)}))
    right = tuple(i for i in range(len(dims)) if i not in left)
    if not left or not right:
        raise InputError("invalid subsystem selection")
    if x.ndim == 1:
        s = schmidt_coefficients(x, dims, left)
        value = 2.0 * _pairwise_sum(s)
    else:
        check_dim(x.shape[0])
        value = trace_norm(partial_transpose(x, dims, right)) - 1.0
    return 0.0 if value < NEGATIVITY_CLIP else float(value)


def _is_product_diagonal(rho, tol=PURE_TOL):
    off = rho - np.diag(np.diag(rho))
    return np.abs(off).max(initial=0.0) <= tol


def _base_value(name, x, dims, left):
    """Unpowered measure and the route used; raises DispatchError."""
    if name == "NEGATIVITY":
        return negativity(x, dims, left), "negativity"
    if x.ndim == 1:
        p = schmidt_coefficients(x, dims, left) ** 2
        tau = 4.0 * _pairwise_sum(p)
        return (tau if name == "TANGLE" else float(np.sqrt(tau))), "pure"
    w, v = np.linalg.eigh(0.5 * (x + x.conj().T))
    if w[-1] >= 1.0 - PURE_TOL:
        return _base_value(name, v[:, -1], dims, left)[0], "pure-marginal"
    if dims == (2, 2):
        c = _wootters_from_factor(_psd_factor(x))
        return (c * c if name == "TANGLE" else c), "wootters"
    if _is_product_diagonal(x):
        # mixture of computational product states: separable
        return 0.0, "product-diagonal"
    raise DispatchError(
        f"measure not computable for this input class: {name.lower()} of a mixed state on dims {dims}"
    )


def measure_eval(m, x, dims, cut):
    """``E(x)**alpha`` for a state vector or density matrix across ``cut``.

    ``cut`` holds the left subsystem indices. Tangle and concurrence of mixed
    states are exact only for two-qubit inputs (Wootters), rank-one inputs,
    and states diagonal in the product basis; other mixed inputs raise
    :class:`DispatchError`.
    """
    m = as_measure(m)
    x = np.asarray(x, dtype=complex)
    dims = check_dims(dims, x.shape[0])
    left = tuple(sorted({int(i) for i in ([cut] if np.isscalar(cut) else cut)}))
    if not left or len(left) >= len(dims) or any(i < 0 or i >= len(dims) for i in left):
        raise InputError("invalid subsystem selection")
    if x.ndim == 2:
        x = check_density(x)
    value, _ = _base_value(m.name, x, dims, left)
    return _power(value, m)


def _power(value, m):
    return value**m.power_alpha if m.power_alpha != 1.0 else value


def entanglement(m, state, parties=None, left=(0,)):
    """Measure ``m`` of ``state`` reduced to ``parties``, cut at ``left``.

    ``parties`` and ``left`` are logical party indices; ``left`` must be a
    proper subset of ``parties`` (default: all parties).
    """
    return entanglement_route(m, state, parties, left)[0]


def entanglement_route(m, state, parties=None, left=(0,)):
    """Like :func:`entanglement` but also names the evaluation route.

    Two-qubit marginals go through the Wootters formula on a factor of the
    reduced state taken straight from the amplitudes.
    """
    m = as_measure(m)
    all_parties = tuple(range(state.n_parties))
    parties = all_parties if parties is None else tuple(sorted(set(parties)))
    left = tuple(sorted(set(left)))
    if not left or not set(left) < set(parties):
        raise InputError("invalid subsystem selection")
    keep = state.subsystems(parties)
    left_phys = state.subsystems(left)
    if parties == all_parties:
        value, route = _base_value(m.name, state.amplitudes, state.dims, left_phys)
        return _power(value, m), route
    local_left = tuple(keep.index(i) for i in left_phys)
    sub_dims = tuple(state.dims[i] for i in keep)
    check_dim(int(np.prod(sub_dims)))
    factor = cut_matrix(state.amplitudes, state.dims, keep)
    if m.name != "NEGATIVITY" and sub_dims == (2, 2):
        c = _wootters_from_factor(factor)
        return _power(c * c if m.name == "TANGLE" else c, m), "wootters"
    rho = factor @ factor.conj().T
    value, route = _base_value(m.name, rho, sub_dims, local_left)
    return _power(value, m), route
