"""Minimal copy counts that restore ``E_total >= E_AB + E_AC`` on ``rho^{⊗m}``.

Three models are kept side by side:

* ``RATIO_LM``: smallest ``m`` with ``L**m + M**m <= 1`` where ``L``, ``M``
  are the single-copy pair-to-total ratios.
* ``PAPER_W_FORMULA``: the closed-form W-state copy concurrences
  ``((1 + 4 sqrt(2)/3)**m - 1) / 2`` and ``((1 + 4/3)**m - 1) / 2``.
* ``ORACLE_NEGATIVITY``: exact negativities of the tensor power, evaluated
  on the collective cuts.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionCapError, InputError
from .linalg import check_dim, dim_cap, kron, partial_transpose, trace_norm
from .measures import as_measure, entanglement, negativity
from .states import tensor_power, w_state

DEFAULT_M_CAP = 64
HOLD_TOL = 1e-12


class CopyModel(str, Enum):
    RATIO_LM = "RATIO_LM"
    PAPER_W_FORMULA = "PAPER_W_FORMULA"
    ORACLE_NEGATIVITY = "ORACLE_NEGATIVITY"


@dataclass(frozen=True)
class CopyReport:
    model: CopyModel
    m_min: int  # None when not found within the cap
    per_m: tuple  # (m, lhs, rhs_sum) rows up to m_min
    m_cap: int
    partial: bool = False
    note: str = ""

    def to_dict(self):
        return {
            "model": self.model.value,
            "m_min": self.m_min,
            "found": self.m_min is not None,
            "m_cap": self.m_cap,
            "partial": self.partial,
            "per_m": [{"m": m, "lhs": lhs, "rhs_sum": rhs} for m, lhs, rhs in self.per_m],
            "note": self.note,
        }


def _holds(lhs, rhs, tol=HOLD_TOL):
    return lhs - rhs >= -tol * max(1.0, abs(lhs))


def _scan(model, rows, m_cap, tol=HOLD_TOL):
    per_m = []
    for m in range(1, m_cap + 1):
        lhs, rhs = rows(m)
        per_m.append((m, lhs, rhs))
        if _holds(lhs, rhs, tol):
            return CopyReport(model, m, tuple(per_m), m_cap)
    return CopyReport(model, None, tuple(per_m), m_cap, note=f"not found for m <= {m_cap}")


def copies_min_ratio(L, M, m_cap=DEFAULT_M_CAP):
    """Smallest ``m`` with ``L**m + M**m <= 1``; rows are ``(m, 1, L**m + M**m)``."""
    L, M = float(L), float(M)
    if not (0 <= L <= 1 and 0 <= M <= 1):
        raise InputError("ratios must lie in [0, 1]")
    return _scan(CopyModel.RATIO_LM, lambda m: (1.0, L**m + M**m), m_cap)


def copies_w_formula(m):
    """``(c_global, c_pair)`` of ``m`` W-state copies from the closed forms."""
    if m < 1:
        raise InputError("copy count must be positive")
    c_global = 0.5 * ((1 + 4 * math.sqrt(2) / 3) ** m - 1)
    c_pair = 0.5 * ((1 + 4 / 3) ** m - 1)
    return c_global, c_pair


def copies_min_w_formula(m_cap=DEFAULT_M_CAP):
    def rows(m):
        g, p = copies_w_formula(m)
        return g, 2 * p

    return _scan(CopyModel.PAPER_W_FORMULA, rows, m_cap)


def oracle_negativity_power(state, left, m, dense=False):
    """Negativity of ``state^{⊗m}`` across the collective cut of ``left`` parties.

    With ``dense=True`` the full projector is built and partially
    transposed; otherwise the Schmidt coefficients of the power are used.
    """
    power = tensor_power(state, m)
    left_phys = power.subsystems(left)
    if not dense:
        return negativity(power.amplitudes, power.dims, left_phys)
    rho = power.amplitudes[:, None]
    rho = kron(rho, rho.conj().T)
    right = [i for i in range(len(power.dims)) if i not in left_phys]
    return max(0.0, trace_norm(partial_transpose(rho, power.dims, right)) - 1.0)


def pair_power_negativity(rho_pair, pair_dims, left, m):
    """Negativity of ``rho_pair^{⊗m}`` with subsystems ``left`` of every copy on the left."""
    check_dim(int(np.prod(pair_dims)) ** m)
    big = rho_pair
    for _ in range(m - 1):
        big = kron(big, rho_pair)
    n = len(pair_dims)
    dims = tuple(pair_dims) * m
    left = tuple(i + c * n for c in range(m) for i in left)
    return negativity(big, dims, left)


def copies_min_oracle(state, left=(0,), m_cap=DEFAULT_M_CAP):
    """Exact-negativity copy count for ``left`` against every other party.

    Stops with a partial report when the next power exceeds the dimension
    cap.
    """
    left = tuple(sorted(set(left)))
    others = [p for p in range(state.n_parties) if p not in left]
    if not others:
        raise InputError("invalid subsystem selection")
    cap = dim_cap()
    per_m = []
    pair_marginals = []
    for j in others:
        keep = state.subsystems(left + (j,))
        local = tuple(keep.index(i) for i in state.subsystems(left))
        rho, dims = state.reduced(left + (j,))
        pair_marginals.append((rho, dims, local))
    for m in range(1, m_cap + 1):
        try:
            check_dim(state.dim**m, cap)
            lhs = oracle_negativity_power(state, left, m)
            rhs = sum(pair_power_negativity(rho, d, lf, m) for rho, d, lf in pair_marginals)
        except DimensionCapError as exc:
            return CopyReport(CopyModel.ORACLE_NEGATIVITY, None, tuple(per_m), m_cap,
                              partial=True, note=str(exc))
        per_m.append((m, lhs, rhs))
        if _holds(lhs, rhs):
            return CopyReport(CopyModel.ORACLE_NEGATIVITY, m, tuple(per_m), m_cap)
    return CopyReport(CopyModel.ORACLE_NEGATIVITY, None, tuple(per_m), m_cap,
                      note=f"not found for m <= {m_cap}")


def is_w3(state, tol=1e-12):
    return state.dims == (2, 2, 2) and np.allclose(state.amplitudes, w_state(3).amplitudes, atol=tol)


def copy_reports(state, measure="CONCURRENCE", m_cap=DEFAULT_M_CAP):
    """All three copy models for a tripartite state (``A`` = party 0)."""
    m = as_measure(measure)
    if state.n_parties != 3:
        raise InputError("copy analysis needs a three-party state")
    e_total = entanglement(m, state, None, (0,))
    if e_total > 0:
        L = min(entanglement(m, state, (0, 1), (0,)) / e_total, 1.0)
        M = min(entanglement(m, state, (0, 2), (0,)) / e_total, 1.0)
    else:
        L = M = 0.0
    out = {
        "measure": str(m),
        "ratios": {"L": L, "M": M},
        CopyModel.RATIO_LM.value: copies_min_ratio(L, M, m_cap),
        CopyModel.PAPER_W_FORMULA.value: copies_min_w_formula(m_cap) if is_w3(state) else None,
        CopyModel.ORACLE_NEGATIVITY.value: copies_min_oracle(state, (0,), m_cap),
    }
    return out

