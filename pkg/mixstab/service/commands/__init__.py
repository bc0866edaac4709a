"""Subcommands of the mixstab CLI, collected from the modules of this package."""

import dataclasses
import importlib
import json
import logging
import os
import pkgutil
from typing import Any, Callable, Dict, Optional

from mixstab.constants import ExitCode
from mixstab.protocol.config_protocol import RunConfig
from mixstab.utils import emit, render_csv, render_json


@dataclasses.dataclass
class CommandContext:
    args: Any
    config: RunConfig
    threads: int
    # file prefix; None writes to stdout
    output: Optional[str]
    logger: logging.Logger

    def _path(self, suffix: str) -> Optional[str]:
        if self.output is None:
            return None
        return f"{self.output}{suffix}"

    def write_csv(self, columns, rows, resolved: Dict[str, Any], suffix: str = ".csv") -> None:
        path = self._path(suffix)
        emit(render_csv(columns, rows, resolved), path)
        if path is not None:
            self.logger.info(f"wrote {path}")

    def write_json(self, payload: Any, resolved: Dict[str, Any], suffix: str = ".json") -> None:
        path = self._path(suffix)
        emit(render_json(payload, resolved), path)
        if path is not None:
            self.logger.info(f"wrote {path}")


@dataclasses.dataclass(frozen=True)
class Command:
    # The name of the subcommand
    name: str
    help: str
    add_args: Callable[[Any], None]
    run: Callable[[CommandContext], ExitCode]


# A global registry for all subcommands
commands: Dict[str, Command] = {}


def register_command(command: Command, override: bool = False):
    """Register a new subcommand."""
    if not override:
        assert command.name not in commands, f"{command.name} has been registered."
    commands[command.name] = command


def get_command(name: str) -> Command:
    return commands[name]


def resolved_config(config: RunConfig, **sections: Any) -> Dict[str, Any]:
    """JSON-ready echo of the configuration a command actually used."""
    out = json.loads(config.json(exclude_none=True))
    out.update(sections)
    return out


commands_path = os.path.dirname(__file__)
for module_loader, name, ispkg in pkgutil.iter_modules([commands_path]):
    module = importlib.import_module("." + name, __package__)
    for attr, value in vars(module).items():
        if isinstance(value, Command):
            register_command(value)
