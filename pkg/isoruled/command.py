"""Command interface and discovery for the isoruled command line.

Commands are classes discovered by reflection over a package
(``isoruled.commands``); each contributes a subparser and runs through a
small lifecycle:

- init() - load the configuration, build what the command needs
- run() - do the work and set the exit code
- cleanup() - always called once init() succeeded

Commands receive the filesystem, clock and console they should use, so a
whole command can be driven from tests with in-memory stand-ins.
"""

import argparse
import importlib
import inspect
import logging
import pkgutil
import sys
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Type

from isoruled.clock import Clock, RealClock
from isoruled.console import Console, RealConsole
from isoruled.errors import IsoRuledError
from isoruled.filesystem import Filesystem, RealFilesystem

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Command(ABC):
    """Interface for CLI commands."""

    @classmethod
    @abstractmethod
    def get_name(cls) -> str:
        """Command name as typed on the command line (e.g. "verify")."""
        pass

    @classmethod
    def get_description(cls) -> str:
        return ""

    @classmethod
    def add_args(cls, parser: argparse.ArgumentParser) -> None:
        """Add arguments to the command's argument parser."""
        pass

    def __init__(
        self,
        args: argparse.Namespace,
        filesystem: Optional[Filesystem] = None,
        clock: Optional[Clock] = None,
        console: Optional[Console] = None,
    ):
        self.args = args
        self.filesystem = filesystem or RealFilesystem()
        self.clock = clock or RealClock()
        self.console = console or RealConsole()
        self._initialized = False

    def init(self) -> None:
        pass

    def run(self) -> None:
        pass

    @abstractmethod
    def execute(self) -> int:
        """Execute the command.

        Returns:
            Exit code (0 for success, non-zero for error)
        """
        pass

    def cleanup(self) -> None:
        pass


class CLICommand(Command):
    """Base class for one-shot commands.

    Subclasses override init() and run(); run() sets ``_exit_code``.
    Library errors (bad configuration, degenerate samples) are reported on
    one line and give exit code 1; anything else is logged with a traceback.
    """

    def __init__(
        self,
        args: argparse.Namespace,
        filesystem: Optional[Filesystem] = None,
        clock: Optional[Clock] = None,
        console: Optional[Console] = None,
    ):
        super().__init__(args, filesystem, clock, console)
        self._exit_code: Optional[int] = None

    def execute(self) -> int:
        try:
            self.init()
            self._initialized = True
            self.run()
            return self._exit_code if self._exit_code is not None else 0

        except KeyboardInterrupt:
            logger.info(f"{self.get_name()} interrupted by user")
            return 130  # SIGINT
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 1
        except IsoRuledError as e:
            logger.error(f"{self.get_name()} failed: {e}")
            return 1
        except Exception as e:
            logger.error(f"Error in {self.get_name()}: {e}", exc_info=True)
            return 1
        finally:
            if self._initialized:
                try:
                    self.cleanup()
                except Exception as e:
                    logger.error(f"Error during cleanup: {e}", exc_info=True)


def _is_command(obj: object, package_path: str) -> bool:
    return (
        inspect.isclass(obj)
        and issubclass(obj, Command)
        and not inspect.isabstract(obj)
        and obj.__module__.startswith(package_path)
    )


class CommandRunner:
    """Discovers commands in a package and runs the one selected on the command line."""

    def __init__(
        self,
        filesystem: Optional[Filesystem] = None,
        clock: Optional[Clock] = None,
        console: Optional[Console] = None,
    ):
        self.filesystem = filesystem
        self.clock = clock
        self.console = console
        self._command_cache: Optional[Dict[str, Type[Command]]] = None

    def discover_commands(self, package_path: str) -> Dict[str, Type[Command]]:
        """Map command names to the command classes found in the package."""
        if self._command_cache is not None:
            return self._command_cache

        commands: Dict[str, Type[Command]] = {}
        package = importlib.import_module(package_path)
        modules = [package]
        for _, modname, ispkg in pkgutil.iter_modules(
            getattr(package, "__path__", []), package_path + "."
        ):
            if ispkg:
                continue
            try:
                modules.append(importlib.import_module(modname))
            except ImportError as e:
                logger.debug(f"Failed to import module {modname}: {e}")

        for module in modules:
            for _, obj in inspect.getmembers(module, lambda o: _is_command(o, package_path)):
                commands[obj.get_name()] = obj

        self._command_cache = commands
        return commands

    def create_parser(
        self,
        commands: Dict[str, Type[Command]],
        prog: Optional[str] = None,
        description: Optional[str] = None,
    ) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog=prog, description=description, formatter_class=argparse.RawDescriptionHelpFormatter
        )
        parser.add_argument(
            "--log-level",
            choices=LOG_LEVELS,
            default=None,
            help="Logging level (default: ISORULED_LOG_LEVEL or WARNING)",
        )
        subparsers = parser.add_subparsers(
            dest="command", help="Command to run", metavar="COMMAND", required=True
        )
        self._register_commands(subparsers, commands)
        return parser

    def _register_commands(
        self, subparsers: argparse._SubParsersAction, commands: Dict[str, Type[Command]]
    ) -> None:
        for cmd_name, cmd_class in sorted(commands.items()):
            description = cmd_class.get_description()
            cmd_parser = subparsers.add_parser(cmd_name, help=description, description=description)
            cmd_class.add_args(cmd_parser)

    def run(
        self,
        package_path: str,
        prog: Optional[str] = None,
        description: Optional[str] = None,
        args: Optional[List[str]] = None,
    ) -> int:
        """Parse ``args`` (default: sys.argv[1:]) and execute the selected command.

        Returns:
            Exit code from command execution
        """
        commands = self.discover_commands(package_path)
        if not commands:
            print(f"No commands found in {package_path}", file=sys.stderr)
            return 1

        parser = self.create_parser(commands, prog=prog, description=description)
        parsed_args = parser.parse_args(args)
        if parsed_args.log_level:
            logging.getLogger("isoruled").setLevel(parsed_args.log_level)

        command_class = commands[parsed_args.command]
        command = command_class(
            parsed_args, filesystem=self.filesystem, clock=self.clock, console=self.console
        )
        return command.execute()
