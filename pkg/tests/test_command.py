"""Tests for command interface, discovery and the build/verify/export commands."""

import argparse
import json
import logging

import pytest

from isoruled.command import CLICommand, Command, CommandRunner
from isoruled.commands.build import BuildCommand
from isoruled.commands.export import ExportCommand
from isoruled.commands.verify import EXIT_FAILED, VerifyCommand
from isoruled.errors import SeedError


# Test command implementations (prefixed with Sample to avoid pytest collection)
class SampleCLICommand(CLICommand):
    """Records its lifecycle and fails on request."""

    calls: list = []

    @classmethod
    def get_name(cls) -> str:
        return "sample"

    def init(self) -> None:
        self.calls.append("init")

    def run(self) -> None:
        self.calls.append("run")
        failure = getattr(self.args, "failure", None)
        if failure is not None:
            raise failure
        self._exit_code = getattr(self.args, "code", None)

    def cleanup(self) -> None:
        self.calls.append("cleanup")


def run_sample(**kwargs) -> int:
    SampleCLICommand.calls = []
    return SampleCLICommand(argparse.Namespace(**kwargs)).execute()


class TestCLICommand:
    """Exit codes and cleanup of the command lifecycle."""

    def test_default_exit_code(self):
        assert run_sample() == 0
        assert SampleCLICommand.calls == ["init", "run", "cleanup"]

    def test_explicit_exit_code(self):
        assert run_sample(code=3) == 3

    def test_library_error(self, caplog):
        with caplog.at_level(logging.ERROR, logger="isoruled.command"):
            assert run_sample(failure=SeedError("alpha0 is identically zero")) == 1
        assert "sample failed: alpha0 is identically zero" in caplog.text
        assert SampleCLICommand.calls[-1] == "cleanup"

    def test_unexpected_error(self):
        assert run_sample(failure=RuntimeError("boom")) == 1

    def test_keyboard_interrupt(self):
        assert run_sample(failure=KeyboardInterrupt()) == 130
        assert SampleCLICommand.calls[-1] == "cleanup"

    def test_system_exit(self):
        assert run_sample(failure=SystemExit(4)) == 4

    def test_command_is_abstract(self):
        with pytest.raises(TypeError):
            Command(argparse.Namespace())  # type: ignore[abstract]


class TestCommandRunner:
    """Discovery and dispatch."""

    def test_discovers_commands(self):
        commands = CommandRunner().discover_commands("isoruled.commands")
        assert commands == {
            "build": BuildCommand,
            "verify": VerifyCommand,
            "export": ExportCommand,
        }

    def test_discovery_is_cached(self):
        runner = CommandRunner()
        assert runner.discover_commands("isoruled.commands") is runner.discover_commands(
            "isoruled.commands"
        )

    def test_command_required(self):
        with pytest.raises(SystemExit):
            CommandRunner().run("isoruled.commands", args=[])

    def test_log_level_option(self, console):
        runner = CommandRunner(console=console)
        args = ["--log-level", "ERROR", "build", "--config", "seed-a"]
        assert runner.run("isoruled.commands", args=args) == 0
        assert logging.getLogger("isoruled").level == logging.ERROR
        logging.getLogger("isoruled").setLevel(logging.NOTSET)


def cli(memory_fs, clock, console, *args) -> int:
    runner = CommandRunner(filesystem=memory_fs, clock=clock, console=console)
    return runner.run("isoruled.commands", prog="isoruled", args=list(args))


class TestBuild:
    def test_seed_preset(self, memory_fs, clock, console):
        assert cli(memory_fs, clock, console, "build", "--config", "seed-a") == 0
        info = json.loads(console.getvalue())
        assert info["provenance"] == "seed:seed-a"
        assert info["ambient_dim"] == 6
        assert info["kappa"] == pytest.approx(4.0)
        assert info["isotropy_defect"] <= 1e-12
        assert info["base_point"] == [0.0, 0.0]
        assert "tau" not in info

    def test_holo_preset(self, memory_fs, clock, console):
        assert cli(memory_fs, clock, console, "build", "--config", "holo-c") == 0
        info = json.loads(console.getvalue())
        assert info["provenance"] == "holo:holo-c"
        assert info["tau"] == pytest.approx([1.0, 1.0, 1.0])

    def test_missing_config(self, memory_fs, clock, console):
        assert cli(memory_fs, clock, console, "build", "--config", "/nowhere.json") == 1
        assert console.getvalue() == ""


class TestVerify:
    """The verify command against a small in-memory configuration."""

    def test_report_to_console(self, memory_fs, clock, console, tiny_config_path):
        code = cli(memory_fs, clock, console, "verify", "--config", tiny_config_path)
        assert code == 0
        report = json.loads(console.getvalue())
        assert report["passed"] is True
        assert report["name"] == "tiny"
        assert report["generated_at"] == "2023-11-14T22:13:20+00:00"
        assert [s["name"] for s in report["suites"]] == ["surface", "ruled", "family"]
        assert report["skipped_samples"] == []

    def test_report_and_table_files(self, memory_fs, clock, console, tiny_config_path):
        code = cli(
            memory_fs,
            clock,
            console,
            "verify",
            "--config",
            tiny_config_path,
            "--suite",
            "surface",
            "--report",
            "/out/report.json",
            "--table",
            "/out/table.csv",
        )
        assert code == 0
        report = json.loads(memory_fs.read_text("/out/report.json"))
        assert [s["name"] for s in report["suites"]] == ["surface"]
        table = memory_fs.read_text("/out/table.csv").splitlines()
        assert table[0].startswith("suite,name,anchor")
        assert len(table) == 1 + len(report["checks"])
        assert console.getvalue().startswith("surface")

    def test_failing_checks_exit_code(self, memory_fs, clock, console, tiny_config_path):
        code = cli(
            memory_fs,
            clock,
            console,
            "verify",
            "--config",
            tiny_config_path,
            "--suite",
            "surface",
            "--tol-scale",
            "1e-30",
        )
        assert code == EXIT_FAILED
        assert json.loads(console.getvalue())["passed"] is False

    def test_unknown_suite_rejected(self, memory_fs, clock, console, tiny_config_path):
        with pytest.raises(SystemExit):
            cli(memory_fs, clock, console, "verify", "--config", tiny_config_path, "--suite", "x")


class TestExport:
    def test_obj_to_file(self, memory_fs, clock, console):
        code = cli(
            memory_fs,
            clock,
            console,
            "export",
            "--config",
            "seed-a",
            "--slice",
            "coords=1,2,3;t=0.1,0;grid=5",
            "--out",
            "/meshes/a.obj",
        )
        assert code == 0
        lines = memory_fs.read_text("/meshes/a.obj").splitlines()
        assert lines[0].startswith("# seed:seed-a")
        assert sum(line.startswith("v ") for line in lines) == 25
        assert sum(line.startswith("f ") for line in lines) == 32

    def test_obj_to_console(self, memory_fs, clock, console):
        assert cli(memory_fs, clock, console, "export", "--config", "seed-a") == 0
        assert console.getvalue().count("\nv ") == 400

    def test_bad_slice(self, memory_fs, clock, console):
        args = ["export", "--config", "seed-a", "--slice", "coords=1,1,2"]
        assert cli(memory_fs, clock, console, *args) == 1
