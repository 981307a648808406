"""Monogamy weight analysis of tripartite entanglement triples.

The weight ``mu`` solves ``E_total = mu * E_small + E_large`` where
``E_small``/``E_large`` are the smaller/larger of the two pair values.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InputError
from .measures import as_measure, entanglement

TOL = 1e-9


class Region(str, Enum):
    BLUE = "BLUE"
    ORANGE = "ORANGE"
    YELLOW = "YELLOW"
    WHITE = "WHITE"
    BOUNDARY_NONMONOGAMOUS = "BOUNDARY_NONMONOGAMOUS"
    DEGENERATE_TRIVIAL = "DEGENERATE_TRIVIAL"


class Ordering(str, Enum):
    A_HIGHER = "a ⪰ b"
    B_HIGHER = "b ⪰ a"
    EQUIVALENT = "equivalent"


@dataclass(frozen=True)
class MonogamyReport:
    e_total: float
    e_ab: float
    e_ac: float
    mu: float  # math.inf when no finite weight exists
    region: Region
    alpha_min: float  # math.inf when a pair value saturates e_total
    k_tradeoff: float = None
    flags: tuple = ()
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def alpha_min_integer(self):
        if not math.isfinite(self.alpha_min):
            return None
        return max(1, math.ceil(self.alpha_min - 1e-12))

    def to_dict(self):
        return {
            "e_total": self.e_total,
            "e_ab": self.e_ab,
            "e_ac": self.e_ac,
            "mu": self.mu,
            "region": self.region.value,
            "alpha_min": self.alpha_min,
            "alpha_min_integer": self.alpha_min_integer,
            "k_tradeoff": self.k_tradeoff,
            "flags": list(self.flags),
            "provenance": dict(self.provenance),
        }


def region_classify(mu, e_total=None):
    """Region of the trade-off square and the matching diagonal point ``k``.

    Returns ``(region, k)`` with ``k = e_total / (1 + mu)``, or ``k = None``
    when ``e_total`` is not given or ``mu`` is the infinite sentinel.
    Intervals are closed on the left: ``[1, inf)``, ``[1/2, 1)``,
    ``[1/3, 1/2)``, ``(0, 1/3)``.
    """
    mu = float(mu)
    if math.isnan(mu) or mu < 0:
        raise InputError(f"invalid monogamy weight {mu!r}")
    if math.isinf(mu):
        return Region.DEGENERATE_TRIVIAL, None
    if mu >= 1:
        region = Region.BLUE
    elif mu >= 0.5:
        region = Region.ORANGE
    elif mu >= 1 / 3:
        region = Region.YELLOW
    elif mu > 0:
        region = Region.WHITE
    else:
        region = Region.BOUNDARY_NONMONOGAMOUS
    k = None if e_total is None else e_total / (1.0 + mu)
    return region, k


def alpha_threshold(x1, x2, tol=1e-10):
    """Infimum of ``g > 0`` with ``x1**g + x2**g <= 1``.

    ``x1``, ``x2`` are pair-to-total ratios in ``[0, 1]``. Returns
    ``math.inf`` when either ratio reaches 1 (no power restores the
    inequality) and ``0.0`` when at most one ratio is nonzero.
    """
    x1, x2 = float(x1), float(x2)
    for x in (x1, x2):
        if not 0.0 <= x <= 1.0:
            raise InputError(f"ratio {x!r} outside [0, 1]")
    if max(x1, x2) >= 1.0:
        return math.inf
    if min(x1, x2) == 0.0:
        return 0.0

    def excess(g):
        return math.exp(g * math.log(x1)) + math.exp(g * math.log(x2)) - 1.0

    lo, hi = 0.0, 1.0
    while excess(hi) > 0:
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return hi


def ckw_check(e_total, e_ab, e_ac, alpha=1.0, tol=TOL):
    """``(holds, slack)`` for ``e_total**a >= e_ab**a + e_ac**a``."""
    if min(e_total, e_ab, e_ac) < 0 or not alpha > 0:
        raise InputError("ckw_check needs nonnegative values and alpha > 0")
    slack = e_total**alpha - e_ab**alpha - e_ac**alpha
    return slack >= -tol, slack


def _ratios(e_total, e_ab, e_ac):
    if e_total <= 0:
        return 0.0, 0.0
    return min(e_ab / e_total, 1.0), min(e_ac / e_total, 1.0)


def monogamy_weight(e_total, e_ab, e_ac, tol=TOL):
    """Monogamy weight and region of one entanglement triple.

    >>> r = monogamy_weight(2 * 2**0.5 / 3, 2 / 3, 2 / 3)
    >>> round(r.mu, 12), r.region.value
    (0.414213562373, 'YELLOW')
    """
    e_total, e_ab, e_ac = float(e_total), float(e_ab), float(e_ac)
    if min(e_total, e_ab, e_ac) < 0:
        raise InputError("not an entanglement triple: negative value")
    small, large = min(e_ab, e_ac), max(e_ab, e_ac)
    if e_total < large - tol:
        raise InputError(
            f"not an entanglement triple: total {e_total!r} below pair value {large!r}"
        )
    flags = []
    if small <= tol:
        flags.append("zero_pair")
    if e_total <= large + tol:
        flags.append("saturated")
    if e_total <= tol:
        flags.append("zero_total")

    if small <= tol:
        mu, region, k = math.inf, Region.DEGENERATE_TRIVIAL, None
    elif e_total <= large + tol:
        mu = 0.0
        region, k = Region.BOUNDARY_NONMONOGAMOUS, e_total
    else:
        mu = (e_total - large) / small
        region, k = region_classify(mu, e_total)

    x1, x2 = _ratios(e_total, e_ab, e_ac)
    if "saturated" in flags and large > tol:
        alpha = math.inf
    else:
        alpha = alpha_threshold(x1, x2)
    return MonogamyReport(e_total, e_ab, e_ac, mu, region, alpha, k, tuple(flags))


def _canonical_tail(p):
    _, _, l2, l3, l4 = p.lambdas
    if not p.is_canonical:
        raise InputError("closed-form weights need lambda2 >= lambda3 >= lambda4")
    if l3 == 0:
        raise InputError("weight undefined (zero denominator)")
    return l2, l3, l4


def weight_tau_schmidt(p):
    """Tangle weight ``1 + (l4/l3)**2`` of the five-amplitude Schmidt state."""
    _, l3, l4 = _canonical_tail(p)
    return 1.0 + (l4 / l3) ** 2


def weight_c_schmidt(p):
    """Concurrence weight ``sqrt(1 + x**2 + y**2) - x``, ``x = l2/l3``, ``y = l4/l3``."""
    l2, l3, l4 = _canonical_tail(p)
    x, y = l2 / l3, l4 / l3
    # rationalized form of sqrt(1 + x^2 + y^2) - x; stable for large x
    return (1.0 + y * y) / (math.sqrt(1.0 + x * x + y * y) + x)


def analyze_state(state, measure, pair_override=None, tol=TOL):
    """Monogamy report of a tripartite pure state with party 0 as ``A``.

    ``pair_override`` replaces the computed ``(e_ab, e_ac)`` with externally
    supplied values, which the report records in its provenance.
    """
    m = as_measure(measure)
    if state.n_parties != 3:
        raise InputError("monogamy analysis needs a three-party state")
    e_total = entanglement(m, state, None, (0,))
    provenance = {"measure": str(m), "state": state.label or "explicit"}
    if pair_override is None:
        e_ab = entanglement(m, state, (0, 1), (0,))
        e_ac = entanglement(m, state, (0, 2), (0,))
        provenance["pairs"] = "computed"
    else:
        e_ab, e_ac = (float(v) for v in pair_override)
        provenance["pairs"] = "override"
        provenance["pair_override"] = [e_ab, e_ac]
    report = monogamy_weight(e_total, e_ab, e_ac, tol)
    return MonogamyReport(
        report.e_total, report.e_ab, report.e_ac, report.mu, report.region,
        report.alpha_min, report.k_tradeoff, report.flags, provenance,
    )


def compare_measures(a, b, tol=TOL):
    """Order two ``(measure, mu)`` pairs by monogamy weight."""
    (_, mu_a), (_, mu_b) = a, b
    if not (math.isfinite(mu_a) and math.isfinite(mu_b)):
        raise InputError("incomparable: monogamy weight is not finite")
    if abs(mu_a - mu_b) <= tol:
        return Ordering.EQUIVALENT
    return Ordering.A_HIGHER if mu_a > mu_b else Ordering.B_HIGHER
