"""
Error hierarchy shared by every package.

Library code raises these; only the CLI turns them into process exit codes.
"""
from typing import Iterable, List, Optional


EXIT_SYNTHESIZED = 0
EXIT_INTERNAL = 1
EXIT_UNKNOWN = 2
EXIT_UNREALIZABLE = 3
EXIT_REJECTED = 4
EXIT_USAGE = 64


class GxwError(Exception):
    """Base error carrying a human readable detail and an exit code."""
    exit_code: int = EXIT_INTERNAL

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return self.detail


class NotFound(GxwError):
    """Input file is missing or unreadable."""


class ParseError(GxwError):
    """Malformed spec file, netlist or trace."""

    def __init__(self, detail: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            detail = f"{line}:{column}: {detail}"
        super().__init__(detail)
        self.line = line
        self.column = column


class TemporalOperatorInPropositionalContext(GxwError):
    exit_code = EXIT_REJECTED


class NoMatch(GxwError):
    """Formula does not fit any of the supported patterns."""
    exit_code = EXIT_REJECTED


class MixedClause(GxwError):
    exit_code = EXIT_REJECTED


class DepthExceeded(GxwError):
    exit_code = EXIT_REJECTED


class CycleError(GxwError):
    """The wiring contains a directed loop; `scc` lists its ports."""
    exit_code = EXIT_REJECTED

    def __init__(self, scc: Iterable[str]):
        self.scc: List[str] = sorted(scc)
        super().__init__("feedback loop through " + ", ".join(self.scc))


class UnwiredPort(GxwError):
    pass


class ConflictAtRuntime(GxwError):
    """A resolution actor received both true and false in the same cycle."""

    def __init__(self, actor_id: str, cycle: Optional[int] = None):
        self.actor_id = actor_id
        self.cycle = cycle
        where = f" at cycle {cycle}" if cycle is not None else ""
        super().__init__(f"conflicting demands on {actor_id}{where}")


class DashAtExternalOutput(GxwError):
    pass


class StateExplosion(GxwError):
    pass


class InvalidH(GxwError):
    pass


class UnknownWitnessVariable(GxwError):
    pass


class UnsatisfiableAssumption(GxwError):
    pass


class InstanceTooLarge(GxwError):
    pass
