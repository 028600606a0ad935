"""Weierstrass construction of 1-isotropic minimal surfaces.

A surface is built from seed data by lifting a holomorphic map to a null
map one step at a time:

    lift(alpha, beta) = beta * (1 - (phi, phi), i (1 + (phi, phi)), 2 phi),
    phi = integral of alpha

The final lift (with a factor 1/2) is the Gauss map gamma of the surface
and g = Re integral gamma. Because the isotropic data phi' is itself the
output of a lift, (phi', phi') vanishes identically and the surface is
1-isotropic.

Example:
    >>> from isoruled.weierstrass import SeedSpec, build_surface, series_from_coefficients
    >>> seed = SeedSpec(ambient_dim=6, alpha0=series_from_coefficients([[1.0], [0.0, 1.0]]))
    >>> chart = build_surface(seed)
    >>> chart.gauss_map(0.0)
    array([0.5+0.j , 0. +0.5j, 0. +0.j , 0. +0.j , 0. +0.j , 0. +0.j ])
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from isoruled.errors import DomainError, SeedError, ShapeError
from isoruled.jetcalc import DEFAULT_ORDER, HoloSeries

logger = logging.getLogger(__name__)

DOMAIN_MARGIN = 0.9
SUBSTANTIALITY_EPS = 1e-10

Coefficient = Union[float, complex, Sequence[float]]


def _coefficient(value: Coefficient) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ShapeError(f"complex coefficient must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def series_from_coefficients(
    rows: Sequence[Sequence[Coefficient]],
    base_point: Coefficient = 0.0,
    order: int = DEFAULT_ORDER,
) -> HoloSeries:
    """Build a series from per-component coefficient lists.

    Coefficients may be plain numbers or ``[re, im]`` pairs, the form used in
    configuration files. Components may have different lengths.
    """
    if not rows:
        raise ShapeError("a series needs at least one component")
    width = max(len(r) for r in rows) or 1
    c = np.zeros((len(rows), width), dtype=complex)
    for i, row in enumerate(rows):
        for k, value in enumerate(row):
            c[i, k] = _coefficient(value)
    return HoloSeries(c, _coefficient(base_point), order)


def null_lift(phi: HoloSeries, scale: HoloSeries) -> HoloSeries:
    """``scale * (1 - (phi,phi), i (1 + (phi,phi)), 2 phi)``; always a null series."""
    s = phi.sym_inner(phi)
    one = HoloSeries.constant(1.0, phi.base_point, phi.order)
    head = HoloSeries.stack([one - s, (one + s) * 1j, phi * 2.0])
    return head * scale


def isotropic_lift(alpha: HoloSeries, scale: HoloSeries) -> HoloSeries:
    """Lift an m-component map to a null (m + 2)-component map.

    Args:
        alpha: Holomorphic data, integrated from the base point
        scale: One-component multiplier, nonzero at the base point

    Raises:
        SeedError: If ``scale`` vanishes at the base point
    """
    if scale.ncomp != 1:
        raise ShapeError(f"scale must have one component, got {scale.ncomp}")
    if abs(scale(alpha.base_point)[0]) == 0:
        raise SeedError("lift scale vanishes at the base point")
    return null_lift(alpha.antiderivative(0.0), scale)


@dataclass(frozen=True)
class SeedSpec:
    """Seed data for :func:`build_surface`.

    Attributes:
        ambient_dim: N = n + 2
        alpha0: Holomorphic map with ``N - 2 - 2 * lifts`` components
        scales: One scale per lift plus one for the Gauss map; missing ones are 1
        base_point: Expansion and integration point z0
        radius: Radius of the disc on which the chart is evaluated
        lifts: Number of null lifts applied before the Gauss map formula
        name: Label carried into chart provenance
    """

    ambient_dim: int
    alpha0: HoloSeries
    scales: Tuple[HoloSeries, ...] = ()
    base_point: complex = 0j
    radius: float = 1.0
    lifts: int = 1
    name: str = "seed"

    def __post_init__(self):
        if self.lifts < 1:
            raise SeedError(f"at least one lift is needed, got {self.lifts}")
        expected = self.ambient_dim - 2 - 2 * self.lifts
        if expected < 1:
            raise SeedError(
                f"ambient dimension {self.ambient_dim} too small for {self.lifts} lift(s)"
            )
        if self.alpha0.ncomp != expected:
            raise SeedError(
                f"alpha0 needs {expected} components for N={self.ambient_dim}, got {self.alpha0.ncomp}"
            )
        if self.alpha0.max_abs() == 0:
            raise SeedError("alpha0 is identically zero")
        if self.radius <= 0:
            raise DomainError(f"radius must be positive, got {self.radius}")
        if complex(self.base_point) != self.alpha0.base_point:
            raise SeedError("alpha0 must be expanded about the seed base point")
        if len(self.scales) > self.lifts + 1:
            raise SeedError(f"expected at most {self.lifts + 1} scales, got {len(self.scales)}")
        for k, s in enumerate(self.scales):
            if s.ncomp != 1:
                raise SeedError(f"scale {k} must have one component")
            if abs(s(self.base_point)[0]) == 0:
                raise SeedError(f"scale {k} vanishes at the base point")

    def stage_scales(self) -> List[HoloSeries]:
        one = HoloSeries.constant(1.0, self.alpha0.base_point, self.alpha0.order)
        given = [s.with_order(self.alpha0.order) for s in self.scales]
        return given + [one] * (self.lifts + 1 - len(given))


@dataclass(frozen=True)
class SurfaceChart:
    """A conformal minimal surface ``g = Re G`` on a disc about ``base_point``.

    Attributes:
        N: Ambient dimension
        gauss_map: gamma = G', a null series with N components
        iso_data: phi with N - 2 components; 1-isotropic iff (phi', phi') = 0
        primitive: G with G(base_point) = 0
        provenance: ``"seed:<name>"``, ``"holo:<name>"`` or ``"manual"``
        radius: Radius of the disc of validity
    """

    N: int
    gauss_map: HoloSeries
    iso_data: HoloSeries
    primitive: HoloSeries
    provenance: str = "manual"
    radius: float = 1.0

    @property
    def base_point(self) -> complex:
        return self.gauss_map.base_point

    @property
    def order(self) -> int:
        return self.gauss_map.order

    def check_domain(self, z: complex) -> complex:
        """Return ``z`` as complex, rejecting points outside the safe disc."""
        z = complex(z)
        if abs(z - self.base_point) >= DOMAIN_MARGIN * self.radius:
            raise DomainError(
                f"z={z} is outside the disc |z - {self.base_point}| < {DOMAIN_MARGIN * self.radius}"
            )
        return z

    def derivatives(self, z: complex, kmax: int) -> np.ndarray:
        """Complex derivatives ``G^(k)(z)`` for k = 0..kmax, shape (kmax + 1, N)."""
        return self.primitive.derivatives_at(self.check_domain(z), kmax)

    def position(self, z: complex) -> np.ndarray:
        return self.primitive(self.check_domain(z)).real

    def rotated(self, theta: float) -> "SurfaceChart":
        """The chart with Gauss map ``e^{i theta} gamma`` (the associated surface)."""
        w = np.exp(1j * theta)
        return SurfaceChart(
            self.N,
            self.gauss_map * w,
            self.iso_data,
            self.primitive * w,
            f"{self.provenance}@theta={theta:.6g}",
            self.radius,
        )


def chart_from_gauss_map(
    gamma: HoloSeries,
    iso_data: Optional[HoloSeries] = None,
    provenance: str = "manual",
    radius: float = 1.0,
) -> SurfaceChart:
    """Wrap a Gauss map into a chart, integrating it from the base point.

    When ``iso_data`` is omitted it is recovered as ``gamma[2:] / (gamma_1 -/+ i gamma_2)``,
    dividing by whichever combination is nonzero at the base point.
    """
    if gamma.ncomp < 5:
        raise ShapeError(f"ambient dimension must be at least 5, got {gamma.ncomp}")
    if iso_data is None:
        z0 = gamma.base_point
        minus = gamma[0] - gamma[1] * 1j
        plus = gamma[0] + gamma[1] * 1j
        denom = minus if abs(minus(z0)[0]) >= abs(plus(z0)[0]) else plus
        iso_data = gamma[2:] / denom
    return SurfaceChart(
        N=gamma.ncomp,
        gauss_map=gamma,
        iso_data=iso_data,
        primitive=gamma.antiderivative(0.0),
        provenance=provenance,
        radius=radius,
    )


def chart_from_iso_data(
    phi: HoloSeries,
    scale: Optional[HoloSeries] = None,
    radius: float = 1.0,
    provenance: str = "manual",
) -> SurfaceChart:
    """Minimal surface with arbitrary isotropic data ``phi`` (not necessarily 1-isotropic)."""
    if scale is None:
        scale = HoloSeries.constant(1.0, phi.base_point, phi.order)
    gamma = null_lift(phi, scale * 0.5)
    return chart_from_gauss_map(gamma, phi, provenance, radius)


def build_surface(seed: SeedSpec) -> SurfaceChart:
    """Run the lift chain on ``seed`` and return the resulting chart."""
    scales = seed.stage_scales()
    alpha = seed.alpha0
    for k in range(seed.lifts):
        alpha = isotropic_lift(alpha, scales[k])
    if alpha.max_abs() == 0:
        raise SeedError("lift produced the zero series")
    phi = alpha.antiderivative(0.0)
    gamma = null_lift(phi, scales[-1] * 0.5)
    chart = chart_from_gauss_map(gamma, phi, f"seed:{seed.name}", seed.radius)
    logger.debug(
        f"Built chart {chart.provenance}: N={chart.N}, deg G={chart.primitive.degree()}, "
        f"order={chart.order}"
    )
    if chart.primitive.degree() >= chart.order:
        logger.warning(f"Chart {chart.provenance} fills the truncation order {chart.order}")
    rank = substantiality_rank(chart, seed.base_point)
    if rank < chart.N:
        logger.warning(f"Chart {chart.provenance} may not be substantial: rank {rank} < {chart.N}")
    return chart


def isotropy_defect(chart: SurfaceChart) -> float:
    """Normalized size of (phi', phi'); zero exactly for 1-isotropic charts."""
    dphi = chart.iso_data.derivative()
    num = dphi.sym_inner(dphi).max_abs()
    k = chart.order + 1
    mags = np.abs(dphi.coeffs)
    proxy = np.sum([np.convolve(r, r)[:k] for r in mags], axis=0)
    den = float(np.max(proxy))
    if den == 0:
        return 0.0
    return num / den


def conformality_defect(chart: SurfaceChart) -> float:
    """Normalized size of (gamma, gamma); zero for conformal minimal charts."""
    g = chart.gauss_map
    return g.sym_inner(g).max_abs() / max(g.max_abs() ** 2, 1e-300)


def evaluate_surface(
    chart: SurfaceChart, z: complex, deriv_order: int
) -> Dict[Tuple[int, int], np.ndarray]:
    """All partial derivatives of g at z up to total order ``deriv_order``.

    Returns:
        Mapping ``(a, b) -> d^a_u d^b_v g(z)``; ``(0, 0)`` is the position
    """
    if deriv_order < 0:
        raise DomainError(f"derivative order must be nonnegative, got {deriv_order}")
    d = chart.derivatives(z, deriv_order)
    out = {}
    for total in range(deriv_order + 1):
        for b in range(total + 1):
            out[(total - b, b)] = (1j**b * d[total]).real
    return out


def substantiality_rank(chart: SurfaceChart, z: complex, kmax: Optional[int] = None) -> int:
    """Dimension of the span of the real derivatives of g at z.

    Heuristic for substantiality: a chart whose derivatives up to order
    ``kmax`` (default 2N) span fewer than N directions lies in a hyperplane
    to that order.
    """
    kmax = kmax or 2 * chart.N
    d = chart.derivatives(z, kmax)[1:]
    # Taylor coefficients keep the rows on a comparable scale
    d = d / np.array([math.factorial(k) for k in range(1, kmax + 1)])[:, np.newaxis]
    rows = np.vstack([d.real, (1j * d).real])
    sv = linalg.svdvals(rows)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > SUBSTANTIALITY_EPS * sv[0]))


def pointwise_conformality(chart: SurfaceChart, z: complex) -> float:
    """Largest of ||g_u|^2 - |g_v|^2|, |<g_u, g_v>| and |g_uu + g_vv| at z, relative to |g_u|^2 and |g_uu|."""
    d = evaluate_surface(chart, z, 2)
    gu, gv = d[(1, 0)], d[(0, 1)]
    scale = float(gu @ gu)
    second = max(float(np.linalg.norm(d[(2, 0)])), 1e-300)
    return max(
        abs(float(gu @ gu - gv @ gv)) / scale,
        abs(float(gu @ gv)) / scale,
        float(np.linalg.norm(d[(2, 0)] + d[(0, 2)])) / second,
    )
