"""Quasi-energy spectra: eigenangles, degeneracy clusters, rational classification."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional

import numpy as np

DEGENERACY_TOL = 1e-8
DEFAULT_Q_MAX = 48
DEFAULT_BINS = 16
EXACT_RESIDUAL = 1e-8
TWO_PI = 2 * np.pi


def wrap_angle(theta):
    """Map angles into (-pi, pi]."""
    theta = np.asarray(theta, dtype=float)
    out = np.mod(theta + np.pi, TWO_PI) - np.pi
    return np.where(out <= -np.pi, out + TWO_PI, out)


class Cluster(NamedTuple):
    angle: float
    multiplicity: int


class RationalFit(NamedTuple):
    """theta ~ fraction * pi."""

    fraction: Fraction
    residual: float

    @property
    def exact(self):
        return self.residual < EXACT_RESIDUAL


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    eigenangles: np.ndarray
    clusters: List[Cluster]
    rational_fit: List[RationalFit]
    bin_edges: np.ndarray
    counts: np.ndarray
    params: Optional[object] = field(default=None)

    @property
    def n_clusters(self):
        return len(self.clusters)

    def to_dict(self):
        return {
            "eigenangles": [float(a) for a in self.eigenangles],
            "clusters": [{"angle": c.angle, "multiplicity": c.multiplicity} for c in self.clusters],
            "rational_fit": [
                {"p": f.fraction.numerator, "q": f.fraction.denominator, "residual": f.residual}
                for f in self.rational_fit
            ],
            "histogram": {"edges": [float(e) for e in self.bin_edges], "counts": [int(c) for c in self.counts]},
        }


def eigenangles(op):
    """Sorted quasi-energies of a FloquetOperator (or any unitary matrix) in (-pi, pi]."""
    if hasattr(op, "eigenangles"):
        angles = op.eigenangles()
    else:
        angles = np.angle(np.linalg.eigvals(np.asarray(op)))
    return np.sort(wrap_angle(angles))


def degeneracy_clusters(angles, tol=DEGENERACY_TOL):
    """
    Single-linkage clusters on the circle: neighbours closer than ``tol`` join.

    Representatives are circular means of their members.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.sort(wrap_angle(angles))
    if a.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(a) > tol) + 1
    groups = np.split(a, breaks)
    wrap_gap = a[0] + TWO_PI - a[-1]
    if len(groups) > 1 and wrap_gap <= tol:
        groups[0] = np.concatenate([groups.pop(), groups[0]])
    clusters = []
    for g in groups:
        mean = np.angle(np.mean(np.exp(1j * g)))
        clusters.append(Cluster(float(wrap_angle(mean)), int(g.size)))
    return sorted(clusters, key=lambda c: c.angle)


def _best_fraction(theta, q_max):
    best = None
    for q in range(1, q_max + 1):
        p = round(theta * q / np.pi)
        r = abs(theta - p * np.pi / q)
        # strict improvement keeps the smallest denominator on ties
        if best is None or r < best[1] - 1e-15:
            best = (Fraction(p, q), r)
    return RationalFit(best[0], float(best[1]))


def rational_classify(angles, q_max=DEFAULT_Q_MAX):
    """Closest p*pi/q with q <= q_max for every angle."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    return [_best_fraction(float(t), int(q_max)) for t in np.atleast_1d(angles)]


def angle_histogram(angles, bins=DEFAULT_BINS):
    counts, edges = np.histogram(wrap_angle(angles), bins=bins, range=(-np.pi, np.pi))
    return counts, edges


def spectrum_report(op, tol=DEGENERACY_TOL, q_max=DEFAULT_Q_MAX, bins=DEFAULT_BINS):
    angles = eigenangles(op)
    counts, edges = angle_histogram(angles, bins)
    return SpectrumReport(
        eigenangles=angles,
        clusters=degeneracy_clusters(angles, tol),
        rational_fit=rational_classify(angles, q_max),
        bin_edges=edges,
        counts=counts,
        params=getattr(op, "params", None),
    )
