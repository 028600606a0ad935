"""Tests for run configurations."""

import json

import numpy as np
import pytest

from isoruled.config import (
    SUITES,
    RunConfig,
    Tolerances,
    available_presets,
    load_config,
    parse_config,
)
from isoruled.errors import ConfigError, DomainError
from isoruled.holocurve import HoloCurveSpec
from isoruled.weierstrass import SeedSpec

SEED = {"ambient_dim": 6, "alpha0": [[1.0], [0.0, 1.0]]}


def document(**extra):
    data = {"name": "run", "seed": SEED}
    data.update(extra)
    return json.dumps(data)


class TestParseConfig:
    """Validation of JSON configuration documents."""

    def test_minimal_document(self):
        config = parse_config(document())
        assert config.name == "run"
        assert config.suites == SUITES
        assert not config.is_holo
        assert config.samples.radius == 0.5

    def test_complex_base_point(self):
        seed = dict(SEED, base_point=[0.1, -0.2])
        config = parse_config(document(seed=seed))
        assert config.seed.base_point == 0.1 - 0.2j

    def test_syntax_error_reports_line(self):
        with pytest.raises(ConfigError) as info:
            parse_config('{\n  "name": "run",\n  "seed": {\n}}}')
        assert info.value.line == 4

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(samples={"radius": 0.3, "bogus": 1}))
        assert info.value.field == "samples"
        assert "bogus" in str(info.value)

    def test_wrong_type_names_field(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(samples={"grid": True}))
        assert info.value.field == "samples.grid"

    def test_missing_seed_fields(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(seed={"ambient_dim": 6}))
        assert info.value.field == "seed.alpha0"

    def test_exactly_one_surface(self):
        holo = {"components": [[0, 1]] * 4}
        with pytest.raises(ConfigError):
            parse_config(document(holo=holo))
        with pytest.raises(ConfigError):
            parse_config(json.dumps({"name": "run"}))

    def test_angles_in_range(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(samples={"thetas": [0.0, 3.5]}))
        assert info.value.field == "samples.thetas[1]"

    def test_cloud_needs_enough_points(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(samples={"cloud_points": 5}))
        assert info.value.field == "samples.cloud_points"

    def test_sample_disc_inside_domain(self):
        with pytest.raises(DomainError):
            parse_config(document(samples={"radius": 0.95}))

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            parse_config(document(suites=["surface", "bogus"]))

    def test_tolerances_positive(self):
        with pytest.raises(ConfigError) as info:
            parse_config(document(tolerances={"ricci": 0.0}))
        assert info.value.field == "tolerances.ricci"


class TestRunConfig:
    def test_seed_spec(self):
        spec = parse_config(document(order=24)).seed.to_spec(24, 0.8)
        assert isinstance(spec, SeedSpec)
        assert spec.ambient_dim == 6
        assert spec.alpha0.order == 24
        assert spec.radius == 0.8

    def test_holo_spec(self):
        components = [[0, 1], [0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1]]
        config = parse_config(json.dumps({"name": "h", "holo": {"components": components}}))
        assert config.is_holo
        assert isinstance(config.holo.to_spec(config.order, 1.0), HoloCurveSpec)

    def test_with_suites(self):
        config = parse_config(document()).with_suites(["ruled"])
        assert config.suites == ("ruled",)

    def test_to_dict(self):
        data = parse_config(document()).to_dict()
        assert data["suites"] == list(SUITES)
        assert data["seed"]["ambient_dim"] == 6

    def test_invalid_order(self):
        with pytest.raises(ConfigError):
            parse_config(document(order=4))


class TestTolerances:
    """Scaling of upper and lower bounds."""

    def test_scaled(self):
        base = Tolerances()
        scaled = base.scaled(10.0)
        assert scaled.ricci == pytest.approx(base.ricci * 10)
        assert scaled.witness == pytest.approx(base.witness / 10)
        assert scaled.rank_fraction == base.rank_fraction

    def test_scale_must_be_positive(self):
        with pytest.raises(DomainError):
            Tolerances().scaled(0.0)

    def test_run_config_scale(self):
        config = parse_config(document()).with_tolerance_scale(2.0)
        assert config.tolerances.metric == pytest.approx(2e-9)


class TestLoadConfig:
    def test_presets(self):
        assert {"seed-a", "seed-b", "holo-c", "seed-a-full"} <= set(available_presets())

    @pytest.mark.parametrize("name", ["seed-a", "seed-b", "holo-c", "seed-a-full"])
    def test_preset_parses(self, name):
        config = load_config(name)
        assert isinstance(config, RunConfig)

    def test_holo_preset(self):
        config = load_config("holo-c")
        assert config.is_holo
        assert config.control == "seed-b"
        assert "holo" in config.suites

    def test_seed_b_preset_is_the_cubic_seed(self):
        # (1, z, z^2/2, z^3/6) expanded about 1/4 + i/4
        config = load_config("seed-b")
        spec = config.seed.to_spec(config.order, config.domain_radius)
        assert spec.base_point == 0.25 + 0.25j
        for z in (0.25 + 0.25j, 0.0, -0.1 + 0.4j):
            expected = [1.0, z, z**2 / 2, z**3 / 6]
            np.testing.assert_allclose(spec.alpha0(z), expected, atol=1e-15)

    def test_file_wins(self, memory_fs):
        memory_fs.write_text("seed-a", document())
        assert load_config("seed-a", memory_fs).name == "run"

    def test_missing(self, memory_fs):
        with pytest.raises(ConfigError) as info:
            load_config("no-such-run", memory_fs)
        assert "seed-a" in str(info.value)
