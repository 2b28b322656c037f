from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple


@dataclass
class Trace:
    """Per-cycle assignment to the inputs and, optionally, the outputs."""
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...] = ()
    rows: List[Dict[str, bool]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def joint(self) -> bool:
        return bool(self.outputs)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.inputs + self.outputs

    def input_rows(self) -> List[Dict[str, bool]]:
        return [{n: row[n] for n in self.inputs} for row in self.rows]

    def with_outputs(self, outputs: Sequence[str], values: Sequence[Dict[str, bool]]) -> 'Trace':
        if len(values) != len(self.rows):
            raise ValueError("output trace length differs from input trace length")
        rows = [{**row, **produced} for row, produced in zip(self.input_rows(), values)]
        return Trace(self.inputs, tuple(outputs), rows)

    def validate(self):
        for cycle, row in enumerate(self.rows):
            missing = [n for n in self.names if n not in row]
            if missing:
                raise ValueError(f"cycle {cycle} lacks {', '.join(missing)}")


@dataclass(frozen=True, order=True)
class Violation:
    cycle: int
    label: str
    reason: str

    def __str__(self) -> str:
        return f"{self.label}@{self.cycle}: {self.reason}"


@dataclass(frozen=True)
class Realizable:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class StrategyNode:
    """Environment move at `cycle`; `replies` maps each output choice to the next move, None when it loses at once."""
    cycle: int
    inputs: Tuple[Tuple[str, bool], ...]
    replies: Tuple[Tuple[Tuple[bool, ...], Optional['StrategyNode']], ...] = ()

    def depth(self) -> int:
        return 1 + max((child.depth() for _, child in self.replies if child is not None), default=0)


@dataclass(frozen=True)
class Unrealizable:
    strategy: StrategyNode

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Ok:
    traces: int = 0

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Counterexample:
    trace: Trace
    violations: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return False
