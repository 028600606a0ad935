"""Holomorphic curves in C^m seen as minimal surfaces in R^2m.

A holomorphic curve zeta: U -> C^m is realized in R^2m with coordinates
(x_1, y_1, x_2, y_2, ...), x_k = Re zeta_k and y_k = Im zeta_k. Its adapted
frame is the realization of the Hermitian Gram-Schmidt frame of
zeta', zeta'', ..., so e_{2s+2} = J e_{2s+1} and every curvature ellipse is
a circle. The curvature radii kappa_s and their ratios tau_s = kappa_s /
kappa_{s-1} (kappa_0 = 1) then determine the connection forms:

    omega_{2s-1,2s+1} = omega_{2s,2s+2} = tau_s omega_1
    omega_{2s-1,2s+2} = -omega_{2s,2s+1} = tau_s omega_2
    omega_{2s+1,2s+2} = (s+1) omega_12 + *d log kappa_s

and the shape operators of the ruled submanifold reduce to expressions in
tau_1, tau_2, tau_3 and the derivatives of tau_2.

Rotating the curve by e^{i theta} is the associated family, and the map
S_theta that rotates each normal plane of order two and higher by theta
makes F_g o S_{-theta} congruent to F_theta. equivariance_residual measures
that congruence on a point cloud.

Every operation accepts a HoloCurveSpec, or any chart or framing so that the
same checks run as controls on surfaces that are not holomorphic curves.

Example:
    >>> from isoruled.holocurve import HoloCurveSpec, tau_ratios
    >>> rows = [[0, 1], [0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, 1 / 24]]
    >>> spec = HoloCurveSpec.from_coefficients(rows)
    >>> tau_ratios(spec, 0.0)
    array([1., 1., 1.])
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from isoruled.alignment import alignment_residual
from isoruled.errors import DegeneracyError, DomainError, ShapeError
from isoruled.family import DeformedChart
from isoruled.jetcalc import DEFAULT_EPS_RANK, DEFAULT_ORDER, HoloSeries, Jet2
from isoruled.ruled import (
    RuledPoint,
    ShapeOperators,
    assemble_operators,
    eval_F,
    frame_at,
    shape_operators,
)
from isoruled.surfgeo import AdaptedFrame, Framing, OsculatingFraming, as_framing, hodge_star
from isoruled.weierstrass import (
    Coefficient,
    SurfaceChart,
    chart_from_gauss_map,
    series_from_coefficients,
)

logger = logging.getLogger(__name__)

MIN_COMPLEX_DIM = 4


@dataclass(frozen=True)
class HoloCurveSpec:
    """A holomorphic curve zeta with m components, realized in R^2m.

    Attributes:
        m: Complex dimension; the ruled submanifold has dimension n = 2m - 2
        components: The curve as a series with m components
        radius: Radius of the disc on which the chart is evaluated
        name: Label carried into chart provenance
    """

    m: int
    components: HoloSeries
    radius: float = 1.0
    name: str = "holo"

    def __post_init__(self):
        if self.m < MIN_COMPLEX_DIM:
            raise ShapeError(f"holomorphic curves need m >= {MIN_COMPLEX_DIM}, got m={self.m}")
        if self.components.ncomp != self.m:
            raise ShapeError(f"expected {self.m} components, got {self.components.ncomp}")
        if self.radius <= 0:
            raise DomainError(f"radius must be positive, got {self.radius}")

    @classmethod
    def from_coefficients(
        cls,
        rows: Sequence[Sequence[Coefficient]],
        base_point: Coefficient = 0.0,
        radius: float = 1.0,
        name: str = "holo",
        order: int = DEFAULT_ORDER,
    ) -> "HoloCurveSpec":
        series = series_from_coefficients(rows, base_point, order)
        return cls(m=series.ncomp, components=series, radius=radius, name=name)

    @property
    def N(self) -> int:
        return 2 * self.m

    @property
    def base_point(self) -> complex:
        return self.components.base_point


CurveSource = Union[HoloCurveSpec, SurfaceChart, Framing]


def realize(zeta: HoloSeries) -> HoloSeries:
    """The series G = (zeta_1, -i zeta_1, zeta_2, -i zeta_2, ...) with Re G = (Re zeta, Im zeta)."""
    parts = []
    for k in range(zeta.ncomp):
        parts.append(zeta[k])
        parts.append(zeta[k] * -1j)
    return HoloSeries.stack(parts)


def osculating_norm_oracle(
    spec: HoloCurveSpec, z: complex, s_max: Optional[int] = None
) -> np.ndarray:
    """Curvature radii kappa_1..kappa_{s_max} from a complex QR of zeta', ..., zeta^(s_max + 1).

    Independent of the real frame machinery: ``kappa_s = |R_ss| / |R_00|^(s+1)``.
    """
    s_max = _check_order(spec.N, s_max)
    D = spec.components.derivatives_at(complex(z), s_max + 1)
    M = D[1 : s_max + 2].T
    R = np.linalg.qr(M, mode="r")
    h = np.abs(np.diag(R))
    return np.array([h[s] / h[0] ** (s + 1) for s in range(1, s_max + 1)])


def ratios_from_radii(kappas: Sequence[float]) -> np.ndarray:
    """tau_s = kappa_s / kappa_{s-1} with kappa_0 = 1."""
    k = np.asarray(kappas, dtype=float)
    return k / np.concatenate([[1.0], k[:-1]])


def holo_chart(spec: HoloCurveSpec, eps_rank: float = DEFAULT_EPS_RANK) -> SurfaceChart:
    """The realized curve as a surface chart.

    Raises:
        DegeneracyError: If zeta', ..., zeta^(m) are dependent at the base point
    """
    z0 = spec.base_point
    D = spec.components.derivatives_at(z0, spec.m)[1:].T
    R = np.linalg.qr(D, mode="r")
    h = np.abs(np.diag(R))
    scale = float(np.max(np.linalg.norm(D, axis=0)))
    for s, value in enumerate(h):
        if value <= eps_rank * scale:
            raise DegeneracyError(
                f"curve {spec.name!r} is not substantial: osculating rank {s} at the base point",
                index=s,
                point=z0,
            )
    gamma = realize(spec.components).derivative()
    chart = chart_from_gauss_map(gamma, provenance=f"holo:{spec.name}", radius=spec.radius)
    logger.debug(f"Built chart {chart.provenance}: N={chart.N}")
    return chart


@lru_cache(maxsize=32)
def holo_framing(spec: HoloCurveSpec) -> OsculatingFraming:
    """Shared framing of the realized curve; frames are cached per point."""
    return OsculatingFraming(holo_chart(spec))


def _framing(source: CurveSource) -> Framing:
    if isinstance(source, HoloCurveSpec):
        return holo_framing(source)
    return as_framing(source)


def _check_order(N: int, s_max: Optional[int]) -> int:
    top = N // 2 - 1
    if s_max is None:
        return top
    if not 1 <= s_max <= top:
        raise DomainError(f"curvature order must lie in [1, {top}] for N={N}, got {s_max}")
    return s_max


def kappa_jets(frame: AdaptedFrame, s_max: int) -> List[Jet2]:
    """Jets of kappa_1..kappa_{s_max}: the osculating residual norms over rho^(s+1)."""
    out = []
    power = frame.rho
    for s in range(1, s_max + 1):
        power = power * frame.rho
        out.append(frame.norms[2 * s] / power)
    return out


def curvature_radii(source: CurveSource, z: complex, s_max: Optional[int] = None) -> np.ndarray:
    framing = _framing(source)
    s_max = _check_order(framing.N, s_max)
    return np.array([float(k.value) for k in kappa_jets(framing.frame(z), s_max)])


def tau_ratios(source: CurveSource, z: complex, s_max: Optional[int] = None) -> np.ndarray:
    """tau_1..tau_{s_max} at z; tau_1 = kappa_1."""
    return ratios_from_radii(curvature_radii(source, z, s_max))


def _pair(x: float, y: float) -> np.ndarray:
    return np.array([x, y])


def connection_residuals(frame: AdaptedFrame, s: int) -> Dict[str, float]:
    """Deviation of the frame's connection forms from the holomorphic-curve identities at order s."""
    s_max = frame.N // 2 - 1
    if not 1 <= s <= s_max:
        return {"con1": 0.0, "con2": 0.0}
    kappas = kappa_jets(frame, s)
    values = [float(k.value) for k in kappas]
    tau = values[-1] / (values[-2] if s > 1 else 1.0)
    i, j = 2 * s - 1, 2 * s + 1
    con1 = max(
        np.max(np.abs(frame.form(i, j) - _pair(tau, 0.0))),
        np.max(np.abs(frame.form(i + 1, j + 1) - _pair(tau, 0.0))),
        np.max(np.abs(frame.form(i, j + 1) - _pair(0.0, tau))),
        np.max(np.abs(frame.form(i + 1, j) + _pair(0.0, tau))),
    )
    log_k = kappas[-1].log()
    dlog = _pair(float(frame.along(log_k, 1)), float(frame.along(log_k, 2)))
    expected = (s + 1) * frame.form(1, 2) + hodge_star(dlog)
    con2 = np.max(np.abs(frame.form(j, j + 1) - expected))
    return {"con1": float(con1), "con2": float(con2)}


def holo_connection_check(
    source: CurveSource, z: complex, s: Optional[int] = None
) -> Dict[str, float]:
    """Largest residuals of both connection-form identities at z.

    With ``s`` given only that order is checked; an order outside
    [1, N/2 - 1] has nothing to check and gives zero residuals.
    """
    framing = _framing(source)
    frame = framing.frame(z)
    orders = range(1, framing.N // 2) if s is None else [s]
    worst = {"con1": 0.0, "con2": 0.0}
    for order in orders:
        res = connection_residuals(frame, order)
        worst = {k: max(worst[k], res[k]) for k in worst}
    return worst


def holo_shape_operators(source: CurveSource, rp: RuledPoint) -> ShapeOperators:
    """Shape operators of the ruled submanifold from tau_1, tau_2, tau_3 and e_i(tau_2) alone.

    ``h_1 = -(t_1 e_1(tau_2) - t_2 e_2(tau_2) + t_3 tau_2 tau_3) / D``,
    ``h_2 = -(t_1 e_2(tau_2) + t_2 e_1(tau_2) + t_4 tau_2 tau_3) / D`` and
    ``r = -tau_2 / sqrt(D)`` with ``D = 1 + (t_1^2 + t_2^2) tau_2^2``.
    """
    framing = _framing(source)
    frame = frame_at(framing, rp)
    s_max = min(3, framing.N // 2 - 1)
    kappas = kappa_jets(frame, s_max)
    tau1 = float(kappas[0].value)
    tau2_jet = kappas[1] / kappas[0]
    tau2 = float(tau2_jet.value)
    tau3 = float(kappas[2].value / kappas[1].value) if s_max >= 3 else 0.0
    e1_tau2 = float(frame.along(tau2_jet, 1))
    e2_tau2 = float(frame.along(tau2_jet, 2))

    t = list(rp.t) + [0.0] * max(0, 4 - len(rp.t))
    t1, t2, t3, t4 = t[:4]
    D = 1.0 + (t1 * t1 + t2 * t2) * tau2 * tau2
    Omega = math.sqrt(D)
    h1 = -(t1 * e1_tau2 - t2 * e2_tau2 + t3 * tau2 * tau3) / D
    h2 = -(t1 * e2_tau2 + t2 * e1_tau2 + t4 * tau2 * tau3) / D
    log_k1 = kappas[0].log()
    dlog = _pair(float(frame.along(log_k1, 1)), float(frame.along(log_k1, 2)))
    return assemble_operators(
        kappa=tau1,
        h1=h1,
        h2=h2,
        r=(-tau2 / Omega, 0.0),
        s=(0.0, -tau2 / Omega),
        n=framing.N - 2,
        B=3 * frame.form(1, 2) + hodge_star(dlog),
        Omega=Omega,
    )


def specialization_residual(source: CurveSource, rp: RuledPoint) -> float:
    """Entrywise gap between holo_shape_operators and the general shape operators."""
    framing = _framing(source)
    mine = holo_shape_operators(framing, rp)
    general = shape_operators(framing, rp)
    return float(
        max(np.max(np.abs(mine.A_xi - general.A_xi)), np.max(np.abs(mine.A_eta - general.A_eta)))
    )


def rotate_fibers(rp: RuledPoint, theta: float) -> RuledPoint:
    """S_theta: rotate each pair (t_1, t_2), (t_3, t_4), ... by theta, keeping z."""
    c, s = math.cos(theta), math.sin(theta)
    t = list(rp.t)
    for k in range(0, len(t) - 1, 2):
        x, y = t[k], t[k + 1]
        t[k], t[k + 1] = c * x - s * y, s * x + c * y
    return RuledPoint(rp.z, tuple(t))


def equivariance_residual(source: CurveSource, points: Sequence[RuledPoint], theta: float) -> float:
    """How far F_g o S_{-theta} is from congruent to F_theta on a point cloud.

    Returns the RMS distance after optimal rigid alignment, over the diameter
    of the F_theta cloud.

    Raises:
        AlignmentError: If the cloud has fewer than 12 points or is too flat
    """
    framing = _framing(source)
    deformed = DeformedChart(framing, theta)
    target = np.array([eval_F(deformed, q) for q in points])
    moved = np.array([eval_F(framing, rotate_fibers(q, -theta)) for q in points])
    return alignment_residual(moved, target)


def nonkaehler_witness(source: CurveSource, points: Sequence[RuledPoint]) -> float:
    """max(|h_1| + |h_2|) over the samples; positive means the metric is not Kaehler at some sample."""
    framing = _framing(source)
    worst = 0.0
    for q in points:
        ops = holo_shape_operators(framing, q)
        worst = max(worst, abs(ops.h1) + abs(ops.h2))
    return worst
