import numpy as np
import pytest

SY = np.array([[0, -1j], [1j, 0]])


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def wootters_textbook(rho):
    """Eigenvalues of rho (sy x sy) rho* (sy x sy), square roots, descending."""
    yy = np.kron(SY, SY)
    r = rho @ yy @ rho.conj() @ yy
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(r).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def brute_partial_trace(rho, dims, keep):
    """Index-loop partial trace; independent of the reshaping implementation."""
    n = len(dims)
    keep = sorted(keep)
    out_dims = [dims[i] for i in keep]
    d_out = int(np.prod(out_dims))
    out = np.zeros((d_out, d_out), dtype=complex)
    for i in np.ndindex(*dims):
        for j in np.ndindex(*dims):
            if any(i[k] != j[k] for k in range(n) if k not in keep):
                continue
            a = np.ravel_multi_index([i[k] for k in keep], out_dims)
            b = np.ravel_multi_index([j[k] for k in keep], out_dims)
            out[a, b] += rho[np.ravel_multi_index(i, dims), np.ravel_multi_index(j, dims)]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
