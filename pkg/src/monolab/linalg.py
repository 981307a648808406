"""Dense complex linear algebra on tensor-factorized operators.

Matrices are plain ``numpy`` arrays. A ``dims`` sequence lists the local
dimension of every subsystem, most significant first, so that the basis
index of ``|i_0 i_1 ... i_{n-1}>`` is the mixed-radix number with digits
``i_k``.
"""

import os

import numpy as np

from .errors import DimensionCapError, InputError

DEFAULT_DIM_CAP = 2**16
EIG_CLIP = 1e-12
HERMITIAN_TOL = 1e-10


def dim_cap():
    """Largest admissible dimension of a single vector or operator side.

    ``MONOLAB_DIM_CAP`` overrides the default of ``2**16``.
    """
    raw = os.environ.get("MONOLAB_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"MONOLAB_DIM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError("MONOLAB_DIM_CAP must be positive")
    return cap


def check_dim(dim, cap=None):
    cap = dim_cap() if cap is None else cap
    if dim > cap:
        raise DimensionCapError(dim, cap)
    return dim


def check_dims(dims, total=None):
    """Validate a dimension list and return it as a tuple of ints."""
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise InputError("dims must be non-empty")
    if any(d < 2 for d in dims):
        raise InputError(f"every subsystem dimension must be >= 2, got {dims}")
    if total is not None and int(np.prod(dims)) != total:
        raise InputError(f"dims {dims} do not factor dimension {total}")
    return dims


def _square(m, what="not an operator"):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(what)
    return m


def check_hermitian(m, tol=HERMITIAN_TOL, what="Hermitian trace norm only"):
    m = _square(m)
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.conj().T).max(initial=0.0) > tol * scale:
        raise InputError(what)
    return m


def _subsystems(sel, n, allow_empty=False):
    if isinstance(sel, (int, np.integer)):
        sel = (sel,)
    sel = tuple(sorted({int(i) for i in sel}))
    if (not sel and not allow_empty) or any(i < 0 or i >= n for i in sel):
        raise InputError("invalid subsystem selection")
    return sel


def kron(a, b, cap=None):
    """Kronecker product ``a ⊗ b`` with a dimension-cap guard.

    Works for matrices and vectors alike.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    for n_a, n_b in zip(a.shape, b.shape):
        check_dim(n_a * n_b, cap)
    return np.kron(a, b)


def partial_trace(rho, dims, keep):
    """Reduce ``rho`` to the subsystems listed in ``keep``.

    The kept factors appear in their original order.

    >>> bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    >>> partial_trace(np.outer(bell, bell), (2, 2), [0]).real
    array([[0.5, 0. ],
           [0. , 0.5]])
    """
    rho = _square(rho)
    dims = check_dims(dims, rho.shape[0])
    n = len(dims)
    keep = _subsystems(keep, n)
    t = rho.reshape(dims + dims)
    cur = n
    for ax in reversed(range(n)):
        if ax in keep:
            continue
        t = np.trace(t, axis1=ax, axis2=ax + cur)
        cur -= 1
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def partial_transpose(rho, dims, subsystems):
    """Transpose the listed tensor factors of ``rho``.

    Pure index permutation, so applying it twice returns the input exactly.
    """
    rho = _square(rho)
    dims = check_dims(dims, rho.shape[0])
    n = len(dims)
    sel = _subsystems(subsystems, n, allow_empty=True)
    axes = list(range(2 * n))
    for i in sel:
        axes[i], axes[i + n] = axes[i + n], axes[i]
    return rho.reshape(dims + dims).transpose(axes).reshape(rho.shape)


def clip_spectrum(w, eps=EIG_CLIP):
    w = np.array(w, dtype=float)
    w[np.abs(w) < eps] = 0.0
    return w


def hermitian_eigenvalues(m, tol=HERMITIAN_TOL):
    """Real eigenvalues of a Hermitian matrix in descending order."""
    m = check_hermitian(m, tol)
    m = 0.5 * (m + m.conj().T)
    return np.linalg.eigvalsh(m)[::-1]


def trace_norm(m, tol=HERMITIAN_TOL):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    w = hermitian_eigenvalues(check_hermitian(m, tol), tol)
    return float(np.abs(w).sum())


def reduce_pure(psi, dims, keep):
    """Reduced density matrix of the pure state ``psi`` on ``keep``.

    Contracts the amplitude tensor directly, so the full projector is never
    formed.
    """
    psi = np.asarray(psi)
    dims = check_dims(dims, psi.shape[0])
    n = len(dims)
    keep = _subsystems(keep, n)
    traced = [i for i in range(n) if i not in keep]
    t = psi.reshape(dims).transpose(list(keep) + traced)
    d = int(np.prod([dims[i] for i in keep]))
    m = t.reshape(d, -1)
    return m @ m.conj().T


def cut_matrix(psi, dims, left):
    """Amplitudes reshaped to ``(dim(left), dim(rest))`` for a bipartite cut."""
    psi = np.asarray(psi)
    dims = check_dims(dims, psi.shape[0])
    n = len(dims)
    left = _subsystems(left, n)
    right = [i for i in range(n) if i not in left]
    if not right:
        raise InputError("invalid subsystem selection")
    t = psi.reshape(dims).transpose(list(left) + right)
    d = int(np.prod([dims[i] for i in left]))
    return t.reshape(d, -1)


def schmidt_coefficients(psi, dims, left):
    """Singular values of the cut matrix, descending."""
    return np.linalg.svd(cut_matrix(psi, dims, left), compute_uv=False)
