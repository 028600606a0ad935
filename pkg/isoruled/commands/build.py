"""``isoruled build``: construct the surface of a configuration and describe it."""

import argparse
import logging

from isoruled import holocurve, weierstrass
from isoruled.command import CLICommand
from isoruled.config import RunConfig, load_config
from isoruled.serde import JSONSerDe
from isoruled.suites import Subject, prepare

logger = logging.getLogger(__name__)


def describe(subject: Subject) -> dict:
    """Invariants of the chart at its base point, as plain data."""
    chart = subject.chart
    z0 = chart.base_point
    frame = subject.framing.frame(z0)
    out = {
        "name": subject.config.name,
        "provenance": chart.provenance,
        "ambient_dim": chart.N,
        "order": chart.order,
        "base_point": z0,
        "isotropy_defect": weierstrass.isotropy_defect(chart),
        "conformality_defect": weierstrass.conformality_defect(chart),
        "substantiality_rank": weierstrass.substantiality_rank(chart, z0),
        "rho": frame.rho.value,
        "kappa": frame.kappa,
        "mu": frame.mu,
        "position": chart.position(z0),
    }
    if subject.holo is not None:
        out["tau"] = holocurve.tau_ratios(subject.framing, z0)
    return out


class BuildCommand(CLICommand):
    """Build the chart and print its invariants at the base point as JSON."""

    @classmethod
    def get_name(cls) -> str:
        return "build"

    @classmethod
    def get_description(cls) -> str:
        return "Construct the surface of a configuration and print its invariants"

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="Configuration file or preset name")

    def init(self) -> None:
        self.config: RunConfig = load_config(self.args.config, self.filesystem)

    def run(self) -> None:
        subject = prepare(self.config)
        info = describe(subject)
        if info["substantiality_rank"] < subject.chart.N:
            logger.warning(f"{subject.chart.provenance} may not be substantial at the base point")
        print(JSONSerDe().serialize(info), file=self.console)
        self._exit_code = 0
