"""``isoruled verify``: run verification suites and write the report."""

import argparse
import logging

from isoruled.command import CLICommand
from isoruled.config import SUITES, RunConfig, load_config
from isoruled.suites import run

logger = logging.getLogger(__name__)

EXIT_FAILED = 2


class VerifyCommand(CLICommand):
    """Run the selected suites; exit code 2 when any check fails."""

    @classmethod
    def get_name(cls) -> str:
        return "verify"

    @classmethod
    def get_description(cls) -> str:
        return "Check every identity on sampled points and write a report"

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="Configuration file or preset name")
        parser.add_argument(
            "--suite",
            choices=list(SUITES) + ["all"],
            action="append",
            help="Suite to run (repeatable; default: the suites of the configuration)",
        )
        parser.add_argument(
            "--tol-scale",
            type=float,
            default=1.0,
            help="Multiply upper tolerances (and divide lower bounds) by this factor",
        )
        parser.add_argument("--report", help="JSON report path (overrides the configuration)")
        parser.add_argument("--table", help="CSV table path (overrides the configuration)")

    def init(self) -> None:
        config: RunConfig = load_config(self.args.config, self.filesystem)
        if self.args.suite:
            suites = SUITES if "all" in self.args.suite else self.args.suite
            config = config.with_suites([s for s in SUITES if s in suites])
        if self.args.tol_scale != 1.0:
            config = config.with_tolerance_scale(self.args.tol_scale)
        self.config = config

    def run(self) -> None:
        report = run(self.config, clock=self.clock)
        report_path = self.args.report or self.config.output.report
        table_path = self.args.table or self.config.output.table
        if report_path:
            self.filesystem.write_text(report_path, report.to_json())
            logger.info(f"Wrote report to {report_path}")
            print(report.summary(), file=self.console)
        else:
            self.console.write(report.to_json())
        if table_path:
            self.filesystem.write_text(table_path, report.to_csv())
            logger.info(f"Wrote table to {table_path}")
        self._exit_code = 0 if report.passed else EXIT_FAILED
