"""Run configurations for the isoruled command line.

A run configuration names one surface (Weierstrass seed data or a
holomorphic curve), the samples on which identities are checked, the
tolerances, and where results go. Configurations are JSON documents read
through :class:`~isoruled.serde.JSONSerDe`; complex numbers are written as
``[re, im]`` pairs and series as lists of per-component coefficient lists.

Example document::

    {
      "name": "seed-a",
      "seed": {"ambient_dim": 6, "alpha0": [[1.0], [0.0, 1.0]]},
      "samples": {"radius": 0.5, "ruled_points": 50},
      "suites": ["surface", "ruled", "family"]
    }

Presets shipped in ``isoruled/presets`` are addressable by name.
"""

import logging
import math
from dataclasses import asdict, dataclass, field, fields, replace
from importlib import resources
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from isoruled.alignment import MIN_POINTS
from isoruled.errors import ConfigError, DomainError
from isoruled.filesystem import Filesystem, RealFilesystem
from isoruled.holocurve import HoloCurveSpec
from isoruled.jetcalc import DEFAULT_ORDER, MIN_ORDER
from isoruled.serde import JSONSerDe
from isoruled.weierstrass import DOMAIN_MARGIN, SeedSpec, series_from_coefficients

logger = logging.getLogger(__name__)

SUITES = ("surface", "ruled", "family", "holo")
DEFAULT_THETAS = [k * math.pi / 12 for k in range(12)]

Rows = List[List[Any]]


def _fail(message: str, path: str) -> ConfigError:
    return ConfigError(message, field=path)


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(f"expected an integer, got {value!r}", path)
    return value


def _as_float(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"expected a number, got {value!r}", path)
    return float(value)


def _as_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise _fail(f"expected a string, got {value!r}", path)
    return value


def _as_complex(value: Any, path: str) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise _fail(f"complex numbers are [re, im] pairs, got {value!r}", path)
        return complex(_as_float(value[0], path), _as_float(value[1], path))
    return complex(_as_float(value, path))


def _as_rows(value: Any, path: str) -> Rows:
    if not isinstance(value, list) or not value:
        raise _fail("expected a non-empty list of coefficient lists", path)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise _fail(f"expected a list of coefficients, got {row!r}", f"{path}[{i}]")
        for k, c in enumerate(row):
            _as_complex(c, f"{path}[{i}][{k}]")
        rows.append(list(row))
    return rows


def _optional(convert: Callable[[Any, str], Any]) -> Callable[[Any, str], Any]:
    def inner(value: Any, path: str) -> Any:
        return None if value is None else convert(value, path)

    return inner


def _list_of(convert: Callable[[Any, str], Any]) -> Callable[[Any, str], Any]:
    def inner(value: Any, path: str) -> List[Any]:
        if not isinstance(value, list):
            raise _fail(f"expected a list, got {value!r}", path)
        return [convert(v, f"{path}[{i}]") for i, v in enumerate(value)]

    return inner


def _read_section(
    data: Any, path: str, converters: Dict[str, Callable[[Any, str], Any]]
) -> Dict[str, Any]:
    """Convert the keys of a JSON object, rejecting unknown ones."""
    if not isinstance(data, dict):
        raise _fail(f"expected an object, got {type(data).__name__}", path)
    unknown = sorted(set(data) - set(converters))
    if unknown:
        raise _fail(f"unknown key(s) {', '.join(unknown)}", path)
    prefix = f"{path}." if path else ""
    return {k: converters[k](v, prefix + k) for k, v in data.items()}


@dataclass(frozen=True)
class SeedConfig:
    """Weierstrass seed data; see :class:`~isoruled.weierstrass.SeedSpec`."""

    ambient_dim: int
    alpha0: Rows
    scales: List[Rows] = field(default_factory=list)
    base_point: complex = 0j
    lifts: int = 1
    name: str = "seed"

    @classmethod
    def from_dict(cls, data: Any, path: str = "seed") -> "SeedConfig":
        values = _read_section(
            data,
            path,
            {
                "ambient_dim": _as_int,
                "alpha0": _as_rows,
                "scales": _list_of(_as_rows),
                "base_point": _as_complex,
                "lifts": _as_int,
                "name": _as_str,
            },
        )
        for key in ("ambient_dim", "alpha0"):
            if key not in values:
                raise _fail("missing required key", f"{path}.{key}")
        return cls(**values)

    def to_spec(self, order: int, radius: float) -> SeedSpec:
        alpha0 = series_from_coefficients(self.alpha0, self.base_point, order)
        scales = tuple(series_from_coefficients(s, self.base_point, order) for s in self.scales)
        return SeedSpec(
            ambient_dim=self.ambient_dim,
            alpha0=alpha0,
            scales=scales,
            base_point=self.base_point,
            radius=radius,
            lifts=self.lifts,
            name=self.name,
        )


@dataclass(frozen=True)
class HoloConfig:
    """A holomorphic curve zeta with one coefficient list per complex component."""

    components: Rows
    base_point: complex = 0j
    name: str = "holo"

    @classmethod
    def from_dict(cls, data: Any, path: str = "holo") -> "HoloConfig":
        values = _read_section(
            data, path, {"components": _as_rows, "base_point": _as_complex, "name": _as_str}
        )
        if "components" not in values:
            raise _fail("missing required key", f"{path}.components")
        return cls(**values)

    def to_spec(self, order: int, radius: float) -> HoloCurveSpec:
        return HoloCurveSpec.from_coefficients(
            self.components, self.base_point, radius=radius, name=self.name, order=order
        )


@dataclass(frozen=True)
class SampleConfig:
    """Where identities are sampled.

    Attributes:
        radius: Sampling disc radius about the base point
        grid: Points per axis of the square grid used by surface checks
        ricci_grid: Points per axis of the grid for the Ricci identities
        ruled_points: Random ruled points for the ruled suite
        family_points: Random ruled points per angle for the family suite
        cloud_points: Size of the point cloud for equivariance checks
        t_scale: Ruling coordinates are drawn from [-t_scale, t_scale]
        thetas: Angles of the associated family, each in [0, pi)
        rng_seed: Seed of the sample generator
        step: Finite-difference step of the oracles
    """

    radius: float = 0.5
    grid: int = 7
    ricci_grid: int = 5
    ruled_points: int = 50
    family_points: int = 6
    cloud_points: int = 25
    t_scale: float = 0.5
    thetas: List[float] = field(default_factory=lambda: list(DEFAULT_THETAS))
    rng_seed: int = 0
    step: float = 1e-4

    @classmethod
    def from_dict(cls, data: Any, path: str = "samples") -> "SampleConfig":
        converters: Dict[str, Callable[[Any, str], Any]] = {
            f.name: _as_int if f.type is int else _as_float for f in fields(cls)
        }
        converters["thetas"] = _list_of(_as_float)
        values = _read_section(data, path, converters)
        for key in ("grid", "ricci_grid", "ruled_points", "family_points", "cloud_points"):
            if key in values and values[key] < 2:
                raise _fail("must be at least 2", f"{path}.{key}")
        if values.get("cloud_points", MIN_POINTS) < MIN_POINTS:
            raise _fail(f"must be at least {MIN_POINTS}", f"{path}.cloud_points")
        for key in ("radius", "t_scale", "step"):
            if key in values and values[key] <= 0:
                raise _fail("must be positive", f"{path}.{key}")
        for i, theta in enumerate(values.get("thetas", [])):
            if not 0.0 <= theta < math.pi:
                raise _fail(f"angle {theta} outside [0, pi)", f"{path}.thetas[{i}]")
        return cls(**values)


@dataclass(frozen=True)
class Tolerances:
    """Upper bounds for residuals, and lower bounds for contrast controls."""

    isotropy: float = 1e-12
    conformality: float = 1e-11
    circle: float = 1e-9
    curvature: float = 1e-9
    frame: float = 1e-6
    ricci: float = 1e-8
    normal_frame: float = 1e-9
    metric: float = 1e-9
    zero_section: float = 1e-6
    shape_operator: float = 2e-5
    mean_curvature: float = 1e-5
    nullity: float = 1e-5
    derivative: float = 1e-5
    rank_fraction: float = 0.95
    deformation: float = 2e-5
    deformation_exact: float = 1e-12
    deformation_closed: float = 1e-9
    isometry: float = 1e-9
    parallel: float = 1e-5
    specialization: float = 1e-9
    connection: float = 1e-6
    equivariance: float = 1e-6
    witness: float = 1e-3
    isotropy_contrast: float = 0.1
    connection_contrast: float = 1e-2
    equivariance_contrast: float = 1e-2

    LOWER_BOUNDS = (
        "rank_fraction",
        "witness",
        "isotropy_contrast",
        "connection_contrast",
        "equivariance_contrast",
    )

    @classmethod
    def from_dict(cls, data: Any, path: str = "tolerances") -> "Tolerances":
        values = _read_section(data, path, {f.name: _as_float for f in fields(cls)})
        for key, value in values.items():
            if value <= 0:
                raise _fail("tolerances must be positive", f"{path}.{key}")
        return cls(**values)

    def scaled(self, factor: float) -> "Tolerances":
        """Multiply every upper bound by ``factor`` and divide every lower bound by it.

        The rank fraction is a proportion and is left unchanged.
        """
        if factor <= 0:
            raise DomainError(f"tolerance scale must be positive, got {factor}")
        changes = {}
        for f in fields(self):
            if f.name == "rank_fraction":
                continue
            value = getattr(self, f.name)
            changes[f.name] = value / factor if f.name in self.LOWER_BOUNDS else value * factor
        return replace(self, **changes)


@dataclass(frozen=True)
class OutputConfig:
    """Output paths; None means standard output (reports) or skip (tables, meshes)."""

    report: Optional[str] = None
    table: Optional[str] = None
    mesh: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Any, path: str = "output") -> "OutputConfig":
        conv = _optional(_as_str)
        return cls(**_read_section(data, path, {"report": conv, "table": conv, "mesh": conv}))


@dataclass(frozen=True)
class RunConfig:
    """A complete run: one surface, its samples, tolerances and outputs.

    Exactly one of ``seed`` and ``holo`` is set.
    """

    name: str
    seed: Optional[SeedConfig] = None
    holo: Optional[HoloConfig] = None
    order: int = DEFAULT_ORDER
    domain_radius: float = 1.0
    samples: SampleConfig = field(default_factory=SampleConfig)
    tolerances: Tolerances = field(default_factory=Tolerances)
    output: OutputConfig = field(default_factory=OutputConfig)
    suites: Tuple[str, ...] = SUITES
    control: str = "seed-b"

    def __post_init__(self):
        if (self.seed is None) == (self.holo is None):
            raise ConfigError("exactly one of 'seed' and 'holo' must be given")
        if self.order < MIN_ORDER:
            raise ConfigError(f"order must be at least {MIN_ORDER}", field="order")
        if self.domain_radius <= 0:
            raise ConfigError("must be positive", field="domain_radius")
        if self.samples.radius >= DOMAIN_MARGIN * self.domain_radius:
            raise DomainError(
                f"sample radius {self.samples.radius} must stay below "
                f"{DOMAIN_MARGIN} x domain radius {self.domain_radius}"
            )
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}", field="suites")

    @property
    def is_holo(self) -> bool:
        return self.holo is not None

    @classmethod
    def from_dict(cls, data: Any) -> "RunConfig":
        values = _read_section(
            data,
            "",
            {
                "name": _as_str,
                "seed": SeedConfig.from_dict,
                "holo": HoloConfig.from_dict,
                "order": _as_int,
                "domain_radius": _as_float,
                "samples": SampleConfig.from_dict,
                "tolerances": Tolerances.from_dict,
                "output": OutputConfig.from_dict,
                "suites": _list_of(_as_str),
                "control": _as_str,
            },
        )
        if "name" not in values:
            raise _fail("missing required key", "name")
        if "suites" in values:
            values["suites"] = tuple(values["suites"])
        return cls(**values)

    def with_suites(self, suites: Sequence[str]) -> "RunConfig":
        return replace(self, suites=tuple(suites))

    def with_tolerance_scale(self, factor: float) -> "RunConfig":
        return replace(self, tolerances=self.tolerances.scaled(factor))

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data echo of the configuration for reports."""
        out = asdict(self)
        out["suites"] = list(self.suites)
        return out


def available_presets() -> List[str]:
    root = resources.files("isoruled.presets")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def parse_config(text: str) -> RunConfig:
    """Parse a JSON document into a RunConfig.

    Raises:
        ConfigError: On syntax errors (with line) or invalid fields (with field path)
        DomainError: If the sample disc leaves the domain of the chart
    """
    return RunConfig.from_dict(JSONSerDe().deserialize(text))


def load_config(source: str, filesystem: Optional[Filesystem] = None) -> RunConfig:
    """Load a configuration from a file path, or a preset by name.

    Raises:
        ConfigError: If neither a file nor a preset of that name exists
    """
    filesystem = filesystem or RealFilesystem()
    if filesystem.is_file(source):
        logger.debug(f"Reading configuration from {source}")
        return parse_config(filesystem.read_text(source))
    preset = resources.files("isoruled.presets") / f"{source}.json"
    if preset.is_file():
        logger.debug(f"Using preset {source}")
        return parse_config(preset.read_text(encoding="utf-8"))
    raise ConfigError(
        f"no configuration file or preset named {source!r} "
        f"(presets: {', '.join(available_presets())})"
    )
