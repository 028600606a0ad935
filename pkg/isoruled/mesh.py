"""Triangulated grid meshes of g, g_theta and fixed-t slices of F_g, written as OBJ text.

A slice is given as ``key=value`` pairs separated by semicolons:

    coords=1,2,3;t=0.2,0;theta=0.785;grid=20;radius=0.5

``coords`` picks three ambient coordinates (1-based); alternatively
``proj=r1/r2/r3`` states three rows of an orthogonal projection, each a
comma-separated vector of length N. ``t`` fixes the ruling coordinates
(missing ones are 0), ``theta`` picks the member of the associated family.

Example:
    >>> from isoruled.mesh import SliceSpec
    >>> SliceSpec.parse("coords=1,2,3;grid=20").grid
    20
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from isoruled.errors import ConfigError, ProjectionError
from isoruled.family import DeformedChart
from isoruled.ruled import RuledPoint, coordinate_metric, eval_F
from isoruled.surfgeo import Framing, as_framing

logger = logging.getLogger(__name__)

DEFAULT_GRID = 20
PROJECTION_RANK_TOL = 1e-12


def _floats(text: str, key: str) -> Tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}", field=f"slice.{key}")


def _single(text: str, key: str) -> float:
    parts = _floats(text, key)
    if len(parts) != 1:
        raise ConfigError(f"expected one number, got {text!r}", field=f"slice.{key}")
    return parts[0]


@dataclass(frozen=True)
class SliceSpec:
    """Which slice to mesh and how to project it to three dimensions."""

    coords: Optional[Tuple[int, ...]] = (1, 2, 3)
    projection: Optional[Tuple[Tuple[float, ...], ...]] = None
    t: Tuple[float, ...] = ()
    theta: float = 0.0
    grid: int = DEFAULT_GRID
    radius: Optional[float] = None

    @classmethod
    def parse(cls, text: str) -> "SliceSpec":
        """Parse ``key=value;...``.

        Raises:
            ConfigError: On unknown keys or malformed values
        """
        values: Dict[str, object] = {}
        for part in filter(None, (p.strip() for p in text.split(";"))):
            key, sep, raw = part.partition("=")
            key = key.strip()
            if not sep:
                raise ConfigError(f"expected key=value, got {part!r}", field="slice")
            if key == "coords":
                values["coords"] = tuple(int(c) for c in _floats(raw, key))
            elif key == "proj":
                values["projection"] = tuple(_floats(r, key) for r in raw.split("/"))
                values["coords"] = None
            elif key == "t":
                values["t"] = _floats(raw, key)
            elif key in ("theta", "radius"):
                values[key] = _single(raw, key)
            elif key == "grid":
                values["grid"] = int(_single(raw, key))
            else:
                raise ConfigError(f"unknown slice key {key!r}", field=f"slice.{key}")
        spec = cls(**values)  # type: ignore[arg-type]
        if spec.grid < 2:
            raise ConfigError("grid must be at least 2", field="slice.grid")
        if spec.radius is not None and spec.radius <= 0:
            raise ConfigError("radius must be positive", field="slice.radius")
        return spec

    def projection_matrix(self, N: int) -> np.ndarray:
        """3 x N projection; coordinate picks become rows of the identity.

        Raises:
            ProjectionError: If a coordinate is out of range or the rows have rank < 3
        """
        if self.coords is not None:
            if len(self.coords) != 3:
                raise ProjectionError(f"need exactly 3 output coordinates, got {self.coords}")
            for c in self.coords:
                if not 1 <= c <= N:
                    raise ProjectionError(f"coordinate {c} outside 1..{N}")
            P = np.eye(N)[[c - 1 for c in self.coords]]
        else:
            assert self.projection is not None
            if len(self.projection) != 3 or any(len(r) != N for r in self.projection):
                raise ProjectionError(f"projection must be 3 rows of length {N}")
            P = np.array(self.projection, dtype=float)
        sv = linalg.svdvals(P)
        if sv[-1] <= PROJECTION_RANK_TOL * max(sv[0], 1.0):
            rank = int(np.sum(sv > PROJECTION_RANK_TOL * max(sv[0], 1.0)))
            raise ProjectionError(f"projection has rank {rank} < 3")
        return P

    def fiber(self, N: int) -> Tuple[float, ...]:
        n_t = N - 4
        if len(self.t) > n_t:
            raise ConfigError(f"at most {n_t} ruling coordinates for N={N}", field="slice.t")
        return tuple(self.t) + (0.0,) * (n_t - len(self.t))


@dataclass
class Mesh:
    """Grid mesh: vertices in R^3, faces as 0-based vertex triples, and the sample points."""

    vertices: np.ndarray
    faces: np.ndarray
    points: List[RuledPoint] = field(default_factory=list)
    theta: float = 0.0

    def edges(self) -> np.ndarray:
        pairs = set()
        for a, b, c in self.faces:
            for i, j in ((a, b), (b, c), (c, a)):
                pairs.add((min(i, j), max(i, j)))
        return np.array(sorted(pairs), dtype=int)


def grid_faces(G: int) -> np.ndarray:
    """Two triangles per cell of a row-major G x G grid."""
    faces = []
    for i in range(G - 1):
        for j in range(G - 1):
            a = i * G + j
            c = a + G
            faces.append((a, a + 1, c + 1))
            faces.append((a, c + 1, c))
    return np.array(faces, dtype=int)


def grid_mesh(surface, slice_spec: SliceSpec, radius: float) -> Mesh:
    """Mesh of F_theta at fixed t over the square inscribed in the disc about the base point."""
    framing: Framing = as_framing(surface)
    if slice_spec.theta:
        framing = DeformedChart(framing, slice_spec.theta)
    N = framing.N
    P = slice_spec.projection_matrix(N)
    t = slice_spec.fiber(N)
    radius = slice_spec.radius or radius
    G = slice_spec.grid
    half = radius / np.sqrt(2)
    xs = np.linspace(-half, half, G)
    z0 = framing.chart.base_point
    points = [RuledPoint(complex(z0 + x + 1j * y), t) for y in xs for x in xs]
    vertices = np.array([P @ eval_F(framing, rp) for rp in points])
    logger.debug(
        f"Meshed {len(points)} points of {framing.chart.provenance} at theta={slice_spec.theta}"
    )
    return Mesh(vertices, grid_faces(G), points, slice_spec.theta)


def to_obj(mesh: Mesh, comment: Optional[str] = None) -> str:
    """OBJ text: ``v x y z`` lines then ``f i j k`` lines with 1-based indices."""
    lines = [f"# {comment}"] if comment else []
    lines += [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in mesh.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EdgeStats:
    count: int
    min: float
    max: float
    mean: float

    def gap(self, other: "EdgeStats") -> float:
        return max(
            abs(self.min - other.min), abs(self.max - other.max), abs(self.mean - other.mean)
        )


def edge_length_stats(surface, mesh: Mesh) -> EdgeStats:
    """Intrinsic edge lengths: sqrt(dx^T G dx) with G the coordinate metric at the edge midpoint.

    Only the (u, v) block of the metric enters since t is fixed on a slice.
    Lengths are measured on the member of the family the mesh was built from.
    """
    framing: Framing = as_framing(surface)
    if mesh.theta:
        framing = DeformedChart(framing, mesh.theta)
    lengths = []
    for i, j in mesh.edges():
        p, q = mesh.points[i], mesh.points[j]
        mid = RuledPoint((p.z + q.z) / 2, p.t)
        G = coordinate_metric(framing, mid)[:2, :2]
        d = np.array([(q.z - p.z).real, (q.z - p.z).imag])
        lengths.append(float(np.sqrt(d @ G @ d)))
    v = np.asarray(lengths)
    return EdgeStats(int(v.size), float(v.min()), float(v.max()), float(v.mean()))


def mesh_summary(mesh: Mesh) -> Dict[str, int]:
    return {"vertices": int(len(mesh.vertices)), "faces": int(len(mesh.faces))}
