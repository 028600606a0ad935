"""isoruled - minimal ruled submanifolds over 1-isotropic surfaces, built and verified numerically.

A 1-isotropic minimal surface g in R^N (N = n + 2 >= 6) carries a ruled
submanifold F(p, v) = g(p) + v over the normal subbundle beyond the first
normal plane. F is minimal of rank four, comes with an associated family
F_theta of isometric minimal immersions, and specializes nicely over
holomorphic curves. This package builds such surfaces from Weierstrass
seed data, evaluates every closed form exactly through truncated power
series and jets, and checks each identity against independent
finite-difference and alignment oracles.

Architecture:
    - jetcalc: truncated holomorphic series and real 2-jets
    - weierstrass: seed data to surface charts (isotropic lifts)
    - surfgeo: adapted frames, curvature ellipses, connection forms
    - ruled: the ruled submanifold, its normal frame and shape operators
    - family: the associated family F_theta
    - holocurve: surfaces realized from holomorphic curves
    - oracle, alignment: finite differences and rigid alignment
    - config, suites, report, mesh: runs, verification suites and outputs
    - command, commands: the command line

Quick Start:
    >>> from isoruled import load_config, run
    >>> report = run(load_config("seed-a"))
    >>> report.passed
    True
"""

from isoruled.alignment import RigidMotion, alignment_residual, rigid_align
from isoruled.config import RunConfig, available_presets, load_config, parse_config
from isoruled.errors import (
    AlignmentError,
    ConfigError,
    DegeneracyError,
    DomainError,
    IsoRuledError,
    ModelViolationError,
    ProjectionError,
    SeedError,
    ShapeError,
)
from isoruled.family import (
    DeformedChart,
    associated_surface,
    deformation_closed_residual,
    deformation_residual,
)
from isoruled.holocurve import HoloCurveSpec, holo_chart, tau_ratios
from isoruled.jetcalc import HoloSeries, Jet2
from isoruled.mesh import SliceSpec, edge_length_stats, grid_mesh, to_obj
from isoruled.report import Check, VerificationReport
from isoruled.ruled import (
    RuledPoint,
    eval_F,
    normal_frame,
    numeric_sff,
    rank_profile,
    shape_operators,
)
from isoruled.suites import run
from isoruled.surfgeo import OsculatingFraming, adapted_frame, curvature_ellipse
from isoruled.weierstrass import SeedSpec, SurfaceChart, build_surface, series_from_coefficients

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "Check",
    "ConfigError",
    "DeformedChart",
    "DegeneracyError",
    "DomainError",
    "HoloCurveSpec",
    "HoloSeries",
    "IsoRuledError",
    "Jet2",
    "ModelViolationError",
    "OsculatingFraming",
    "ProjectionError",
    "RigidMotion",
    "RuledPoint",
    "RunConfig",
    "SeedError",
    "SeedSpec",
    "ShapeError",
    "SliceSpec",
    "SurfaceChart",
    "VerificationReport",
    "adapted_frame",
    "alignment_residual",
    "associated_surface",
    "available_presets",
    "build_surface",
    "curvature_ellipse",
    "deformation_closed_residual",
    "deformation_residual",
    "edge_length_stats",
    "eval_F",
    "grid_mesh",
    "holo_chart",
    "load_config",
    "normal_frame",
    "numeric_sff",
    "parse_config",
    "rank_profile",
    "rigid_align",
    "run",
    "series_from_coefficients",
    "shape_operators",
    "tau_ratios",
]
