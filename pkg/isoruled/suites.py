"""Verification suites: every identity of the package checked on sampled points.

Architecture:
    - prepare(): build the surface named by a RunConfig (seed or holomorphic curve)
    - draw_samples(): grids and random ruled points, drawn once from the
      configured seed so that every suite sees the same samples
    - one function per suite (surface, ruled, family, holo), each returning
      a list of :class:`~isoruled.report.Check`
    - run(): executes the selected suites on a thread pool and assembles the
      report in a fixed order

Suites also run contrast controls: a chart that is not 1-isotropic, and a
surface that is not a holomorphic curve, must fail the identities that are
special to those classes. A suite whose controls pass vacuously fails.

The number of worker threads comes from the ``ISORULED_THREADS`` environment
variable (default 1).
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from isoruled import family, holocurve, ruled, surfgeo, weierstrass
from isoruled.clock import Clock, RealClock
from isoruled.config import SUITES, RunConfig, load_config
from isoruled.errors import ConfigError, DegeneracyError
from isoruled.holocurve import HoloCurveSpec
from isoruled.report import LOWER, UPPER, Check, VerificationReport
from isoruled.ruled import RuledPoint
from isoruled.surfgeo import Framing, OsculatingFraming

logger = logging.getLogger(__name__)

THREADS_ENV = "ISORULED_THREADS"
CONTRAST_THETA = math.pi / 4

# Each anchor quotes the statement it checks, prefixed by the label of the
# equation or result it belongs to when there is one.
ANCHORS = {
    "isotropy": "if and only if (φ′,φ′)=0",
    "null_gauss_map": "the Gauss map γ: U→ℂ^N of g has the expression",
    "conformality": "g=Re∫^z γ dz",
    "circle": "the ellipse of curvature at all points is a circle",
    "curvature": "α_g(e₁,e₁)=κe₃ and α_g(e₁,e₂)=μe₄",
    "frame_gram": "We refer to {e₁,…,e_{n+2}} as an adapted frame",
    "frame_transport": "We refer to {e₁,…,e_{n+2}} as an adapted frame",
    "dual_fields": "[conn] ω₄₅=−(1/λ)*ω₃₅ and ω₄₆=−(1/λ)*ω₃₆",
    "ricci": "[A] the Ricci equations ⟨R^⊥(e₁,e₂)e_α,e_β⟩=0 … are equivalent to",
    "zero_section": "[main1] the integral surface L² of H is unique and totally geodesic",
    "isotropy_contrast": "if and only if (φ′,φ′)=0",
    "normal_frame": "[NF] the normal space N_FM(p,v) is spanned by",
    "metric": "[NF] F_*X₁=g_*e₁−φ₁e₃−(1/λ)φ₂e₄",
    "shape_operator": "[ssf] A_ξ = [κ+h₁ h₂ r₁ s₁; …]",
    "mean_curvature": "[main1] is an (n−2)-ruled minimal submanifold",
    "nullity": "[ssf] vanish along V⁰",
    "normal_derivatives": "[comp] ξ_*E₃=g_*V, ξ_*E₄=g_*W",
    "rank": "[main1] rank ρ=4 on an open dense subset",
    "rank_xi": "[main2] have rank four for any normal direction along an open dense subset",
    "rank_eta": "[main2] have rank four for any normal direction along an open dense subset",
    "deformation": "[forms] the relation between the second fundamental forms",
    "deformation_exact": "[forms] the relation between the second fundamental forms",
    "deformation_closed": "[forms] A^θ_{Ψ_θξ}=A_{R_θξ}−2κ sin(θ/2)L_θ",
    "isometry": "[main2] That F_θ is isometric to F_g is immediate",
    "family_frame": "[main2] e^θ₃=R¹_θe₃ … e^θ_j=e_j, 5≤j≤n+2",
    "family_chart": "g_θ(x)=∫_{p₀}^x g_*∘J_θ",
    "bundle_isometry": "[main2] is a parallel vector bundle isometry",
    "bundle_parallel": "[main2] is a parallel vector bundle isometry",
    "tau": "set τ_s=κ_s/κ_{s−1}, 1≤s≤n/2, with κ₀=1",
    "circle_all_orders": "radius of the s-th curvature ellipse",
    "con1": "[con1] ω_{2s−1,2s+1}=ω_{2s,2s+2}=τ_sω₁",
    "con2": "[con2] ω_{2s+1,2s+2}=(s+1)ω₁₂+*d log κ_s",
    "specialization": "[ssfc] r=−τ₂/√(1+(t₁²+t₂²)τ₂²)",
    "equivariance": "[main3] F_g∘S_{−θ} is congruent to F_θ",
    "nonkaehler": "[Ap] M^n is not a Kaehler manifold",
    "con1_contrast": "[con1] ω_{2s−1,2s+1}=ω_{2s,2s+2}=τ_sω₁",
    "equivariance_contrast": "[main3] F_g∘S_{−θ} is congruent to F_θ",
}


@dataclass(frozen=True)
class Subject:
    """The surface a run is about."""

    config: RunConfig
    framing: Framing
    holo: Optional[HoloCurveSpec] = None

    @property
    def chart(self) -> weierstrass.SurfaceChart:
        return self.framing.chart


@dataclass(frozen=True)
class Samples:
    """Sample points shared by every suite.

    ``skipped`` lists the surface parameters dropped because the adapted
    frame degenerates there, each once.
    """

    grid: List[complex]
    ricci_grid: List[complex]
    ruled: List[RuledPoint]
    family: List[RuledPoint]
    cloud: List[RuledPoint]
    skipped: List[complex] = field(default_factory=list)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be at least 1, got {value}")
    return value


def prepare(config: RunConfig) -> Subject:
    """Build the chart (and framing) described by the configuration."""
    if config.holo is not None:
        spec = config.holo.to_spec(config.order, config.domain_radius)
        return Subject(config, holocurve.holo_framing(spec), spec)
    assert config.seed is not None
    chart = weierstrass.build_surface(config.seed.to_spec(config.order, config.domain_radius))
    return Subject(config, OsculatingFraming(chart))


def square_grid(center: complex, radius: float, n: int) -> List[complex]:
    """n x n grid on the square inscribed in the disc of the given radius, row-major."""
    half = radius / math.sqrt(2)
    xs = np.linspace(-half, half, n)
    return [complex(center + x + 1j * y) for y in xs for x in xs]


def split_regular(
    framing: Framing, points: Sequence[complex]
) -> Tuple[List[complex], List[complex]]:
    """Separate the points where the adapted frame exists from the degenerate ones."""
    regular, degenerate = [], []
    for z in points:
        try:
            framing.frame(z)
        except DegeneracyError as exc:
            logger.warning(f"Skipping degenerate sample z={complex(z)}: {exc}")
            degenerate.append(complex(z))
        else:
            regular.append(z)
    return regular, degenerate


def draw_samples(subject: Subject) -> Samples:
    """Grids and ruled points around the base point, without the degenerate ones."""
    s = subject.config.samples
    framing = subject.framing
    z0 = subject.chart.base_point
    rng = np.random.default_rng(s.rng_seed)
    skipped: List[complex] = []

    def keep(points: Sequence[complex]) -> List[complex]:
        regular, degenerate = split_regular(framing, points)
        skipped.extend(z for z in degenerate if z not in skipped)
        return regular

    def keep_ruled(count: int) -> List[RuledPoint]:
        drawn = ruled.sample_ruled_points(framing, rng, count, s.radius, s.t_scale)
        regular = set(keep([rp.z for rp in drawn]))
        return [rp for rp in drawn if rp.z in regular]

    return Samples(
        grid=keep(square_grid(z0, s.radius, s.grid)),
        ricci_grid=keep(square_grid(z0, s.radius, s.ricci_grid)),
        ruled=keep_ruled(s.ruled_points),
        family=keep_ruled(s.family_points),
        cloud=keep_ruled(s.cloud_points),
        skipped=skipped,
    )


def _check(suite: str, name: str, values, tol: float, bound: str = UPPER) -> Check:
    return Check.from_values(suite, name, ANCHORS[name], values, tol, bound)


def isotropy_control(N: int) -> weierstrass.SurfaceChart:
    """Minimal surface with isotropic data (z, z, 0, ...), which is not 1-isotropic."""
    rows = [[0.0, 1.0], [0.0, 1.0]] + [[0.0]] * (N - 4)
    phi = weierstrass.series_from_coefficients(rows)
    return weierstrass.chart_from_iso_data(phi, provenance="control:non-isotropic")


def surface_suite(subject: Subject, samples: Samples) -> List[Check]:
    """Construction, curvature ellipse, frame and Ricci identities of g."""
    tol = subject.config.tolerances
    chart, framing = subject.chart, subject.framing
    step = subject.config.samples.step
    name = "surface"
    circle, curvature, gram, conformal, dual, zero = [], [], [], [], [], []
    for z in samples.grid:
        frame = framing.frame(z)
        ellipse = surfgeo.curvature_ellipse(framing, z, 1)
        circle.append(ellipse.circle_defect)
        curvature.append(abs(ellipse.kappa - frame.kappa) / frame.kappa)
        gram.append(surfgeo.frame_gram_defect(frame))
        conformal.append(weierstrass.pointwise_conformality(chart, z))
        dual.append(surfgeo.conn_residual(surfgeo.dual_fields(frame)))
        zero.append(ruled.zero_section_residual(framing, z))
    transport = [surfgeo.frame_transport_residual(framing, z, step) for z in samples.ricci_grid]
    ricci = [float(np.max(ruled.ricci_residuals(framing, z))) for z in samples.ricci_grid]
    control = isotropy_control(chart.N)
    return [
        _check(name, "isotropy", [weierstrass.isotropy_defect(chart)], tol.isotropy),
        _check(name, "null_gauss_map", [weierstrass.conformality_defect(chart)], tol.isotropy),
        _check(name, "conformality", conformal, tol.conformality),
        _check(name, "circle", circle, tol.circle),
        _check(name, "curvature", curvature, tol.curvature),
        _check(name, "frame_gram", gram, tol.metric),
        _check(name, "frame_transport", transport, tol.frame),
        _check(name, "dual_fields", dual, tol.ricci),
        _check(name, "ricci", ricci, tol.ricci),
        _check(name, "zero_section", zero, tol.zero_section),
        _check(
            name,
            "isotropy_contrast",
            [weierstrass.isotropy_defect(control)],
            tol.isotropy_contrast,
            LOWER,
        ),
    ]


def _fraction(suite: str, name: str, flags: List[float], tol: float) -> Check:
    fraction = float(np.mean(flags)) if flags else 0.0
    return Check(suite, name, ANCHORS[name], fraction, fraction, tol, LOWER, len(flags))


def ruled_suite(subject: Subject, samples: Samples) -> List[Check]:
    """Closed forms of the ruled submanifold F against finite-difference oracles."""
    tol = subject.config.tolerances
    framing = subject.framing
    step = subject.config.samples.step
    name = "ruled"
    nf, metric, sff, mean, nullity, deriv = [], [], [], [], [], []
    full, full_xi, full_eta = [], [], []
    for rp in samples.ruled:
        nf.append(ruled.normal_frame_residual(framing, rp))
        metric.append(ruled.metric_residual(framing, rp))
        ops = ruled.shape_operators(framing, rp)
        num = ruled.numeric_sff(framing, rp, step)
        sff.append(
            max(np.max(np.abs(ops.A_xi - num.A_xi)), np.max(np.abs(ops.A_eta - num.A_eta)))
        )
        mean.append(num.mean_curvature)
        if ops.n > 4:
            nullity.append(
                max(np.max(np.abs(num.A_xi[:, 4:])), np.max(np.abs(num.A_eta[:, 4:])))
            )
        deriv.append(max(ruled.comp_residuals(framing, rp, step).values()))
        profile = ruled.operator_rank(ops)
        full.append(1.0 if profile.rank == 4 else 0.0)
        full_xi.append(1.0 if profile.rank_xi == 4 else 0.0)
        full_eta.append(1.0 if profile.rank_eta == 4 else 0.0)
    checks = [
        _check(name, "normal_frame", nf, tol.normal_frame),
        _check(name, "metric", metric, tol.metric),
        _check(name, "shape_operator", sff, tol.shape_operator),
        _check(name, "mean_curvature", mean, tol.mean_curvature),
    ]
    if nullity:
        checks.append(_check(name, "nullity", nullity, tol.nullity))
    checks += [
        _check(name, "normal_derivatives", deriv, tol.derivative),
        _fraction(name, "rank", full, tol.rank_fraction),
        _fraction(name, "rank_xi", full_xi, tol.rank_fraction),
        _fraction(name, "rank_eta", full_eta, tol.rank_fraction),
    ]
    return checks


def family_suite(subject: Subject, samples: Samples) -> List[Check]:
    """The associated family F_theta on every configured angle."""
    cfg = subject.config
    tol = cfg.tolerances
    framing = subject.framing
    name = "family"
    deform, exact, closed, iso, frame_ids, chart_ids = [], [], [], [], [], []
    bundle, parallel = [], []
    for theta in cfg.samples.thetas:
        deformed = family.DeformedChart(framing, theta)
        for z in samples.ricci_grid:
            chart_ids.append(
                max(
                    deformed.metric_defect(z),
                    deformed.pushforward_defect(z),
                    deformed.second_form_defect(z),
                )
            )
        for rp in samples.family:
            residual = family.deformation_residual(framing, rp, theta, cfg.samples.step)
            (exact if theta == 0.0 else deform).append(residual)
            closed.append(family.deformation_closed_residual(framing, rp, theta))
            iso.append(family.isometry_residual(framing, rp, theta))
            frame_ids.append(max(family.theta_frame_identities(framing, rp, theta).values()))
            b = family.bundle_isometry_residuals(framing, rp, theta, cfg.samples.step)
            bundle.append(max(b["closed_form"], b["norms"]))
            parallel.append(b["parallel"])
    checks = []
    if deform:
        checks.append(_check(name, "deformation", deform, tol.deformation))
    if exact:
        checks.append(_check(name, "deformation_exact", exact, tol.deformation_exact))
    checks += [
        _check(name, "deformation_closed", closed, tol.deformation_closed),
        _check(name, "isometry", iso, tol.isometry),
        _check(name, "family_frame", frame_ids, tol.isometry),
        _check(name, "family_chart", chart_ids, tol.isometry),
        _check(name, "bundle_isometry", bundle, tol.isometry),
        _check(name, "bundle_parallel", parallel, tol.parallel),
    ]
    return checks


def _control_subject(config: RunConfig) -> Subject:
    control = load_config(config.control)
    if control.is_holo:
        raise ConfigError(f"control {config.control!r} must be a seed surface", field="control")
    return prepare(control)


def holo_suite(subject: Subject, samples: Samples) -> List[Check]:
    """Holomorphic-curve identities, with a non-holomorphic control surface."""
    cfg = subject.config
    tol = cfg.tolerances
    name = "holo"
    if subject.holo is None:
        logger.info(f"Skipping holo suite for {cfg.name}: not a holomorphic curve")
        return []
    spec, framing = subject.holo, subject.framing
    orders = min(3, framing.N // 2 - 1)
    tau, circle, con1, con2 = [], [], [], []
    for z in samples.grid:
        oracle = holocurve.ratios_from_radii(holocurve.osculating_norm_oracle(spec, z))
        tau.append(float(np.max(np.abs(holocurve.tau_ratios(framing, z) - oracle))))
        circle.append(
            max(
                surfgeo.curvature_ellipse(framing, z, s).circle_defect
                for s in range(1, orders + 1)
            )
        )
        res = holocurve.holo_connection_check(framing, z)
        con1.append(res["con1"])
        con2.append(res["con2"])
    special = [holocurve.specialization_residual(framing, rp) for rp in samples.ruled]
    equivariance = [
        holocurve.equivariance_residual(framing, samples.cloud, theta)
        for theta in cfg.samples.thetas
    ]
    witness = holocurve.nonkaehler_witness(spec, samples.cloud)

    control = _control_subject(cfg)
    rng = np.random.default_rng(cfg.samples.rng_seed + 1)
    control_cloud = ruled.sample_ruled_points(
        control.framing, rng, cfg.samples.cloud_points, cfg.samples.radius, cfg.samples.t_scale
    )
    grid = square_grid(control.chart.base_point, cfg.samples.radius, cfg.samples.grid)
    control_grid, _ = split_regular(control.framing, grid)
    regular, _ = split_regular(control.framing, [rp.z for rp in control_cloud])
    control_cloud = [rp for rp in control_cloud if rp.z in set(regular)]
    control_con1 = [
        holocurve.holo_connection_check(control.framing, z)["con1"] for z in control_grid
    ]
    control_eq = holocurve.equivariance_residual(control.framing, control_cloud, CONTRAST_THETA)
    return [
        _check(name, "tau", tau, tol.curvature),
        _check(name, "circle_all_orders", circle, tol.circle),
        _check(name, "con1", con1, tol.connection),
        _check(name, "con2", con2, tol.connection),
        _check(name, "specialization", special, tol.specialization),
        _check(name, "equivariance", equivariance, tol.equivariance),
        _check(name, "nonkaehler", [witness], tol.witness, LOWER),
        _check(name, "con1_contrast", control_con1, tol.connection_contrast, LOWER),
        _check(name, "equivariance_contrast", [control_eq], tol.equivariance_contrast, LOWER),
    ]


SuiteFn = Callable[[Subject, Samples], List[Check]]

SUITE_FUNCTIONS: Dict[str, SuiteFn] = {
    "surface": surface_suite,
    "ruled": ruled_suite,
    "family": family_suite,
    "holo": holo_suite,
}


def run(
    config: RunConfig, clock: Optional[Clock] = None, threads: Optional[int] = None
) -> VerificationReport:
    """Run the selected suites and assemble the report.

    Raises:
        DomainError, SeedError: If the configured surface cannot be built

    Sample points where the adapted frame degenerates are left out of every
    suite and listed in the report.
    """
    clock = clock or RealClock()
    threads = threads or thread_count()
    started = clock.monotonic()
    subject = prepare(config)
    samples = draw_samples(subject)
    selected = [s for s in SUITES if s in config.suites]
    if samples.skipped:
        logger.warning(f"Left out {len(samples.skipped)} degenerate sample point(s)")
    logger.info(
        f"Running suites {', '.join(selected)} on {subject.chart.provenance} "
        f"({threads} thread(s))"
    )

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {s: pool.submit(SUITE_FUNCTIONS[s], subject, samples) for s in selected}
        checks: List[Check] = []
        for s in selected:
            suite_checks = futures[s].result()
            logger.info(f"Suite {s} finished with {len(suite_checks)} checks")
            checks.extend(suite_checks)

    report = VerificationReport(
        name=config.name,
        config=config.to_dict(),
        checks=checks,
        generated_at=clock.time(),
        runtime_s=clock.monotonic() - started,
        skipped=samples.skipped,
    )
    for c in report.failures():
        logger.warning(f"{c.suite}/{c.name} failed: max={c.max:.3e}, tol={c.tol:.1e} ({c.bound})")
    return report
