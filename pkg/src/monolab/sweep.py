"""Parameter sweeps over the Schmidt family and over Haar-random states."""

import io
import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import MonolabError
from .monogamy import analyze_state
from .serialize import csv_cell
from .states import SchmidtParams, haar_random_pure, schmidt_state

SCHMIDT_HEADER = ("lambda0", "lambda1", "lambda2", "lambda3", "lambda4", "phi",
                  "e_total", "e_ab", "e_ac", "x1", "x2", "mu", "region", "alpha_min")
HAAR_HEADER = ("index", "e_total", "e_ab", "e_ac", "x1", "x2", "mu", "region", "alpha_min")


def _sphere(angles):
    out = []
    s = 1.0
    for a in angles:
        out.append(s * math.cos(a))
        s *= math.sin(a)
    out.append(s)
    return out


def schmidt_grid(resolution, lambda4_zero=False, phi=0.0):
    """Canonical Schmidt parameters on a hyperspherical midpoint grid.

    Every amplitude is strictly positive (except ``lambda4`` on the
    ``lambda4_zero`` slice). The tail is sorted so that
    ``lambda2 >= lambda3 >= lambda4``.
    """
    n = int(resolution)
    if n < 0:
        raise MonolabError("resolution must be nonnegative")
    ticks = [(j + 0.5) * math.pi / (2 * n) for j in range(n)]
    n_angles = 3 if lambda4_zero else 4
    for idx in np.ndindex(*([n] * n_angles)):
        lam = _sphere([ticks[j] for j in idx])
        if lambda4_zero:
            lam.append(0.0)
        lam[2:] = sorted(lam[2:], reverse=True)
        yield SchmidtParams(tuple(lam), phi)


def _ratios(report):
    if report.e_total <= 0:
        return None, None
    return report.e_ab / report.e_total, report.e_ac / report.e_total


def _schmidt_row(args):
    p, measure = args
    r = analyze_state(schmidt_state(p), measure)
    x1, x2 = _ratios(r)
    return (*p.lambdas, p.phi, r.e_total, r.e_ab, r.e_ac, x1, x2, r.mu, r.region, r.alpha_min)


def _haar_row(args):
    index, seed, measure = args
    r = analyze_state(haar_random_pure((2, 2, 2), (seed, index)), measure)
    x1, x2 = _ratios(r)
    return (index, r.e_total, r.e_ab, r.e_ac, x1, x2, r.mu, r.region, r.alpha_min)


def _map(fn, items, jobs):
    if jobs is None or jobs <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so output is independent of scheduling
        return list(pool.map(fn, items, chunksize=64))


def schmidt_sweep(measure, resolution, lambda4_zero=False, phi=0.0, jobs=1):
    items = [(p, measure) for p in schmidt_grid(resolution, lambda4_zero, phi)]
    return SCHMIDT_HEADER, _map(_schmidt_row, items, jobs)


def haar_sweep(measure, samples, seed=0, jobs=1):
    items = [(i, int(seed), measure) for i in range(int(samples))]
    return HAAR_HEADER, _map(_haar_row, items, jobs)


def to_csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(csv_cell(x) for x in row) + "\n")
    return buf.getvalue()
