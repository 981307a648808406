"""Chain bound for ``N``-partite states built from per-level monogamy weights.

Level ``i`` (1-based, ``i = 1 .. N-2``) splits the marginal on
``A, B_i, ..., B_{N-1}`` into ``A | B_i | (B_{i+1} ... B_{N-1})``. Each level
contributes ``E_level = E_AB_i + mu_i E_rest`` (``GEQ``, pair value is the
larger) or ``E_level = mu_i E_AB_i + E_rest`` (``LEQ``). Unrolling the levels
gives the lower bound on ``E_{A|B_1 ... B_{N-1}}``.
"""

import math
from dataclasses import dataclass

from .errors import DispatchError, InputError
from .measures import as_measure, entanglement_route
from .monogamy import TOL, monogamy_weight

BOUND_TOL = 1e-8


@dataclass(frozen=True)
class ChainLevel:
    level: int
    e_level: float
    e_ab: float
    e_rest: float
    mu: float
    ordering: str  # "GEQ" if e_ab >= e_rest else "LEQ"
    region: str
    dispatch: str


@dataclass(frozen=True)
class ChainReport:
    measure: str
    levels: tuple
    gamma: tuple
    pivot_m: int
    hypothesis_holds: bool
    bound_rhs: float
    e_total: float

    @property
    def holds(self):
        return self.e_total >= self.bound_rhs - BOUND_TOL

    def to_dict(self):
        return {
            "measure": self.measure,
            "e_total": self.e_total,
            "bound_rhs": self.bound_rhs,
            "holds": self.holds,
            "pivot_m": self.pivot_m,
            "hypothesis_holds": self.hypothesis_holds,
            "gamma": list(self.gamma),
            "per_level": [
                {
                    "level": lv.level,
                    "mu": lv.mu,
                    "e_level": lv.e_level,
                    "e_ab": lv.e_ab,
                    "e_rest": lv.e_rest,
                    "ordering": lv.ordering,
                    "region": lv.region,
                    "dispatch": lv.dispatch,
                }
                for lv in self.levels
            ],
        }


def _mul(a, b):
    """Product with the convention ``0 * inf = 0``."""
    return 0.0 if a == 0 or b == 0 else a * b


def _scaled(coef, value, tol=TOL):
    # an infinite weight only ever multiplies values that vanish by monotonicity
    if value <= tol and math.isinf(coef):
        return 0.0
    return coef * value


def chain_theorem3(state, measure, tol=TOL):
    """Per-level weights, cumulative products and the unrolled lower bound.

    ``A`` is party 0 and ``B_i`` is party ``i``. Raises
    :class:`DispatchError` naming the level whose marginal the measure
    cannot evaluate exactly.
    """
    m = as_measure(measure)
    n = state.n_parties
    if n < 3:
        raise InputError("chain bound needs at least three parties")

    def value(parties, level):
        try:
            return entanglement_route(m, state, parties, (0,))
        except DispatchError as exc:
            raise DispatchError(f"measure not computable at level {level}: {exc}") from None

    levels = []
    e_level, route = value(None, 1)
    e_total = e_level
    for i in range(1, n - 1):
        rest = (0,) + tuple(range(i + 1, n))
        e_ab, _ = value((0, i), i)
        e_rest, rest_route = value(rest, i)
        report = monogamy_weight(e_level, e_ab, e_rest, tol)
        ordering = "GEQ" if e_ab >= e_rest else "LEQ"
        levels.append(ChainLevel(i, e_level, e_ab, e_rest, report.mu, ordering,
                                 report.region.value, route))
        e_level, route = e_rest, rest_route

    gamma = []
    acc = 1.0
    for lv in levels:
        acc = _mul(acc, lv.mu)
        gamma.append(acc)

    orderings = [lv.ordering for lv in levels]
    pivot = 0
    while pivot < len(orderings) and orderings[pivot] == "GEQ":
        pivot += 1
    hypothesis = all(o == "LEQ" for o in orderings[pivot:])

    bound = 0.0
    prefix = 1.0
    for lv in levels:
        if lv.ordering == "GEQ":
            bound += _scaled(prefix, lv.e_ab, tol)
            prefix = _mul(prefix, lv.mu)
        else:
            bound += _scaled(prefix, _scaled(lv.mu, lv.e_ab, tol), tol)
    bound += _scaled(prefix, levels[-1].e_rest, tol)

    return ChainReport(str(m), tuple(levels), tuple(gamma), pivot, hypothesis, bound, e_total)
