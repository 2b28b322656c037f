from dataclasses import dataclass, field
from typing import Dict, List, Union


@dataclass
class QbfProblem:
    """
    exists forall: assumptions -> guarantees.

    `universals` are the primary universal bits (external inputs and
    pre-states); `dependent` holds every other non-parameter variable, each
    defined or constrained by the assumption clauses.
    """
    exists: List[int]
    universals: List[int]
    dependent: List[int]
    assumptions: List[List[int]]
    guarantees: List[List[int]]
    num_vars: int
    names: Dict[int, str] = field(default_factory=dict)
    # output variable -> parameter variable
    parameters: Dict[str, int] = field(default_factory=dict)
    depth: int = 0

    @property
    def trivially_valid(self) -> bool:
        return not self.guarantees

    def summary(self) -> Dict[str, int]:
        return {
            'exists': len(self.exists),
            'universals': len(self.universals),
            'dependent': len(self.dependent),
            'assumption_clauses': len(self.assumptions),
            'guarantee_clauses': len(self.guarantees),
        }


@dataclass(frozen=True)
class SatWitness:
    """Constant resolution parameter per output variable."""
    values: Dict[str, bool]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Unsat:
    def __bool__(self) -> bool:
        return False


QbfResult = Union[SatWitness, Unsat]
