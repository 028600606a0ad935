"""Tests for OBJ meshes of slices of F_theta."""

import math

import numpy as np
import pytest

from isoruled.errors import ConfigError, DomainError, ProjectionError
from isoruled.mesh import (
    SliceSpec,
    edge_length_stats,
    grid_faces,
    grid_mesh,
    mesh_summary,
    to_obj,
)
from isoruled.ruled import eval_F


class TestSliceSpec:
    """Parsing of slice descriptions."""

    def test_defaults(self):
        spec = SliceSpec.parse("")
        assert spec.coords == (1, 2, 3)
        assert spec.grid == 20
        assert spec.theta == 0.0

    def test_all_keys(self):
        spec = SliceSpec.parse("coords=4,5,6; t=0.2,-0.1; theta=0.5; grid=8; radius=0.4")
        assert spec.coords == (4, 5, 6)
        assert spec.t == (0.2, -0.1)
        assert spec.theta == 0.5
        assert spec.grid == 8
        assert spec.radius == 0.4

    def test_projection_rows(self):
        spec = SliceSpec.parse("proj=1,0,0,0,0,0/0,1,0,0,0,0/0,0,0.6,0.8,0,0")
        assert spec.coords is None
        P = spec.projection_matrix(6)
        np.testing.assert_allclose(P[2], [0, 0, 0.6, 0.8, 0, 0])

    @pytest.mark.parametrize(
        "text, field",
        [
            ("color=red", "slice.color"),
            ("grid", "slice"),
            ("theta=0.1,0.2", "slice.theta"),
            ("t=a,b", "slice.t"),
            ("grid=1", "slice.grid"),
            ("radius=-1", "slice.radius"),
        ],
    )
    def test_malformed(self, text, field):
        with pytest.raises(ConfigError) as info:
            SliceSpec.parse(text)
        assert info.value.field == field

    @pytest.mark.parametrize("text", ["coords=1,1,2", "coords=1,2", "coords=0,1,2", "coords=1,2,7"])
    def test_bad_coordinates(self, text):
        with pytest.raises(ProjectionError):
            SliceSpec.parse(text).projection_matrix(6)

    def test_rank_deficient_projection(self):
        spec = SliceSpec.parse("proj=1,0,0,0,0,0/2,0,0,0,0,0/0,1,0,0,0,0")
        with pytest.raises(ProjectionError):
            spec.projection_matrix(6)

    def test_fiber_padding(self):
        assert SliceSpec.parse("t=0.3").fiber(8) == (0.3, 0.0, 0.0, 0.0)
        with pytest.raises(ConfigError):
            SliceSpec.parse("t=1,2,3").fiber(6)


class TestGridMesh:
    """Grid meshes and their OBJ text."""

    def test_default_grid_counts(self, seed_a):
        mesh = grid_mesh(seed_a, SliceSpec(), radius=0.5)
        assert mesh_summary(mesh) == {"vertices": 400, "faces": 722}
        assert mesh.vertices.shape == (400, 3)

    def test_faces(self):
        np.testing.assert_array_equal(grid_faces(2), [[0, 1, 3], [0, 3, 2]])
        assert grid_faces(20).max() == 399

    def test_vertices_are_projected_points(self, seed_b):
        spec = SliceSpec.parse("coords=2,5,7;t=0.1,0.2;grid=3")
        mesh = grid_mesh(seed_b, spec, radius=0.4)
        full = eval_F(seed_b, mesh.points[4])
        np.testing.assert_allclose(mesh.vertices[4], full[[1, 4, 6]])
        assert mesh.points[4].z == pytest.approx(seed_b.chart.base_point)

    def test_obj_text(self, seed_a):
        mesh = grid_mesh(seed_a, SliceSpec.parse("grid=3"), radius=0.5)
        lines = to_obj(mesh, comment="seed:seed-a").splitlines()
        assert lines[0] == "# seed:seed-a"
        assert sum(line.startswith("v ") for line in lines) == 9
        assert sum(line.startswith("f ") for line in lines) == 8
        assert lines[-1] == "f 5 9 8"

    def test_obj_round_trips_coordinates(self, seed_a):
        mesh = grid_mesh(seed_a, SliceSpec.parse("grid=2"), radius=0.5)
        lines = [line for line in to_obj(mesh).splitlines() if line.startswith("v ")]
        parsed = np.array([[float(x) for x in line.split()[1:]] for line in lines])
        np.testing.assert_array_equal(parsed, mesh.vertices)

    def test_theta_out_of_range(self, seed_a):
        with pytest.raises(DomainError):
            grid_mesh(seed_a, SliceSpec.parse("theta=3.5"), radius=0.5)


class TestEdgeLengths:
    def test_family_members_are_isometric(self, seed_a):
        spec = "t=0.2,-0.1;grid=6"
        flat = grid_mesh(seed_a, SliceSpec.parse(spec), radius=0.5)
        turned = grid_mesh(seed_a, SliceSpec.parse(f"{spec};theta={math.pi / 2}"), radius=0.5)
        a = edge_length_stats(seed_a, flat)
        b = edge_length_stats(seed_a, turned)
        assert a.count == b.count == len(flat.edges())
        assert a.gap(b) <= 1e-9

    def test_edge_count(self, seed_a):
        mesh = grid_mesh(seed_a, SliceSpec.parse("grid=3"), radius=0.5)
        # 2 * 3 * 2 grid edges plus 4 diagonals
        assert len(mesh.edges()) == 16
