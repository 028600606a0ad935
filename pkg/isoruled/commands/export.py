"""``isoruled export``: OBJ mesh of a slice of F_theta."""

import argparse
import logging

from isoruled.command import CLICommand
from isoruled.config import RunConfig, load_config
from isoruled.mesh import SliceSpec, grid_mesh, mesh_summary, to_obj
from isoruled.suites import prepare

logger = logging.getLogger(__name__)

DEFAULT_SLICE = "coords=1,2,3"


class ExportCommand(CLICommand):
    @classmethod
    def get_name(cls) -> str:
        return "export"

    @classmethod
    def get_description(cls) -> str:
        return "Write a triangulated grid mesh of a fixed-t slice as OBJ"

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="Configuration file or preset name")
        parser.add_argument(
            "--slice",
            default=DEFAULT_SLICE,
            help="Slice as key=value pairs: coords|proj, t, theta, grid, radius",
        )
        parser.add_argument(
            "--out", help="OBJ output path (default: configured mesh path or stdout)"
        )

    def init(self) -> None:
        self.config: RunConfig = load_config(self.args.config, self.filesystem)
        self.slice = SliceSpec.parse(self.args.slice)

    def run(self) -> None:
        subject = prepare(self.config)
        mesh = grid_mesh(subject.framing, self.slice, self.config.samples.radius)
        text = to_obj(mesh, comment=f"{subject.chart.provenance} {self.args.slice}")
        out = self.args.out or self.config.output.mesh
        if out:
            self.filesystem.write_text(out, text)
            summary = mesh_summary(mesh)
            logger.info(f"Wrote {summary['vertices']} vertices, {summary['faces']} faces to {out}")
        else:
            self.console.write(text)
        self._exit_code = 0
