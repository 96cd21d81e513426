"""
Command framework for the Mumford bound toolkit.
Error codes, the exception hierarchy, structured reports and the command registry
used by the CLI.
"""

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional


class ErrorCode(Enum):
    """Exit-status contract of every command"""
    OK = 0
    INVALID_INPUT = 1
    MISMATCH = 2
    INDETERMINATE = 3


class MumfordError(Exception):
    """Base class for all toolkit errors"""
    code = ErrorCode.INVALID_INPUT

    def __init__(self, message: str, data: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.data = data or {}


class InvalidInputError(MumfordError):
    """Parse error, violated precondition or unsupported parameter"""
    code = ErrorCode.INVALID_INPUT


class IndeterminateError(MumfordError):
    """A comparison cannot be decided at the available precision"""
    code = ErrorCode.INDETERMINATE


class CatalogError(MumfordError):
    """Group tag or case parameters excluded by the classification"""
    code = ErrorCode.INVALID_INPUT


class TreeStructureError(MumfordError):
    """Malformed tree of groups"""
    code = ErrorCode.INVALID_INPUT


class ContractionError(MumfordError):
    """Contraction refused; `witness` is the offending geodesic"""
    code = ErrorCode.MISMATCH

    def __init__(self, message: str, witness: List[str]):
        super().__init__(message, {"witness": list(witness)})
        self.witness = list(witness)


class GenusError(MumfordError):
    """Genus is not an integer >= 2"""
    code = ErrorCode.INVALID_INPUT


class TableMismatchError(MumfordError):
    """Regenerated table disagrees with golden data"""
    code = ErrorCode.MISMATCH

    def __init__(self, message: str, diff: List[Dict[str, Any]]):
        super().__init__(message, {"diff": diff})
        self.diff = diff


def to_jsonable(value: Any) -> Any:
    """Convert Fractions, tuples and nested containers for json.dumps."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return value


@dataclass
class Report:
    """Result of one command: payload, table rows and failed checks"""
    command: str
    payload: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    error: Optional[ErrorCode] = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error.value
        return ErrorCode.MISMATCH.value if self.failures else ErrorCode.OK.value

    @property
    def ok(self) -> bool:
        return self.exit_code == 0

    def check(self, condition: bool, description: str) -> bool:
        """Record a consistency check; failed checks turn the exit status to 2."""
        if not condition:
            self.failures.append(description)
        return condition

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "payload": to_jsonable(self.payload),
            "rows": to_jsonable(self.rows),
            "failures": list(self.failures),
            "exit": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


class Command:
    """One CLI command definition"""

    def __init__(
        self,
        name: str,
        description: str,
        arguments: Dict[str, Any],
        handler: Callable[[Dict[str, Any]], Report]
    ):
        self.name = name
        self.description = description
        self.arguments = arguments
        self.handler = handler

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "arguments": self.arguments
        }


class CommandRegistry:
    """Registry routing command names to handlers"""

    def __init__(self, name: str = "mumford"):
        self.name = name
        self.commands: Dict[str, Command] = {}
        self.logger = logging.getLogger(f"Mumford.{name}")

    def register_command(self, command: Command):
        self.commands[command.name] = command
        self.logger.info(f"Registered command: {command.name}")

    def list_commands(self) -> List[Dict[str, Any]]:
        return [command.to_dict() for command in self.commands.values()]

    def run(self, name: str, params: Dict[str, Any]) -> Report:
        """Run a command; toolkit errors become failed reports with their exit code."""
        if name not in self.commands:
            report = Report(command=name, error=ErrorCode.INVALID_INPUT)
            report.failures.append(f"Command not found: {name}")
            return report

        started = datetime.now()
        try:
            report = self.commands[name].handler(params)
        except MumfordError as e:
            self.logger.error(f"Command {name} failed: {e.message}")
            report = Report(command=name, payload={"error": e.message, **to_jsonable(e.data)}, error=e.code)
            report.failures.append(e.message)
        self.logger.debug(f"Command {name} finished in {(datetime.now() - started).total_seconds():.3f}s")
        return report


def command(name: str, description: str, arguments: Dict[str, Any]):
    """Decorator for creating commands"""
    def decorator(func: Callable[[Dict[str, Any]], Report]) -> Command:
        return Command(
            name=name,
            description=description,
            arguments=arguments,
            handler=func
        )
    return decorator


def setup_logging(level: str = "INFO"):
    """Setup logging for the toolkit"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
