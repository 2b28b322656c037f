"""
Decision procedure for exists A forall Y: assumptions -> guarantees.

Candidates for A come from an abstraction solver that starts empty and is
refined with one counterexample per iteration; a candidate is checked by
asking the CDCL solver for a model of assumptions, negated guarantees and the
candidate. The candidate returned first is the lexicographically smallest
valid assignment (false before true, parameters in output order).
"""
import logging
from itertools import product
from typing import Dict, List, Optional, Sequence

from qbf.models import QbfProblem, QbfResult, SatWitness, Unsat
from qbf.sat import CdclSolver

logger = logging.getLogger(__name__)


class _Verifier:
    """Incremental check of a candidate: SAT means a counterexample exists."""

    def __init__(self, problem: QbfProblem):
        self.solver = CdclSolver(problem.num_vars)
        self.solver.add_clauses(problem.assumptions)
        selectors = []
        for clause in problem.guarantees:
            selector = self.solver.new_var()
            for lit in clause:
                self.solver.add_clause([-selector, -lit])
            selectors.append(selector)
        self.solver.add_clause(selectors)

    def counterexample(self, candidate: Sequence[int]) -> Optional[Dict[int, bool]]:
        if self.solver.solve(candidate):
            return self.solver.model
        return None


def _candidate(solver: CdclSolver, exists: Sequence[int]) -> Optional[List[int]]:
    """Lexicographically smallest model over `exists`, or None."""
    if not solver.solve():
        return None
    chosen: List[int] = []
    for var in exists:
        if solver.solve(chosen + [-var]):
            chosen.append(-var)
        else:
            chosen.append(var)
    return chosen


def _substitute(clause: Sequence[int], fixed: Dict[int, bool], rename: Dict[int, int]) -> Optional[List[int]]:
    """Apply fixed values and renaming; None if the clause is satisfied."""
    result = []
    for lit in clause:
        var = abs(lit)
        if var in fixed:
            if fixed[var] == (lit > 0):
                return None
            continue
        mapped = rename.get(var, var)
        result.append(mapped if lit > 0 else -mapped)
    return result


class _Abstraction:
    def __init__(self, problem: QbfProblem):
        self.problem = problem
        self.solver = CdclSolver(problem.num_vars)
        # parameters keep their own numbers; everything else is copied per refinement
        self.next_var = problem.num_vars

    def fresh(self) -> int:
        self.next_var += 1
        return self.next_var

    def refine(self, model: Dict[int, bool]):
        problem = self.problem
        if problem.dependent:
            self._refine_conjunction(model)
        else:
            self._refine_implication(model)

    def _refine_conjunction(self, model: Dict[int, bool]):
        """Dependents are defined by parameters and universals: copy both parts."""
        problem = self.problem
        fixed = {u: model[u] for u in problem.universals}
        rename = {d: self.fresh() for d in problem.dependent}
        for clause in problem.assumptions + problem.guarantees:
            substituted = _substitute(clause, fixed, rename)
            if substituted is not None:
                self.solver.add_clause(substituted)

    def _refine_implication(self, model: Dict[int, bool]):
        """Every non-parameter variable is fixed: assert assumptions(A) -> guarantees(A)."""
        problem = self.problem
        exists = set(problem.exists)
        fixed = {v: model.get(v, False) for v in range(1, problem.num_vars + 1) if v not in exists}
        violated = []
        for clause in problem.assumptions:
            substituted = _substitute(clause, fixed, {})
            if substituted is None:
                continue
            flag = self.fresh()
            for lit in substituted:
                self.solver.add_clause([-flag, -lit])
            violated.append(flag)
        holds = self.fresh()
        for clause in problem.guarantees:
            substituted = _substitute(clause, fixed, {})
            if substituted is not None:
                self.solver.add_clause([-holds] + substituted)
        self.solver.add_clause([holds] + violated)


def _assignment(problem: QbfProblem, lits: Sequence[int]) -> SatWitness:
    names = {var: name for name, var in problem.parameters.items()}
    values = {}
    for lit in lits:
        values[names.get(abs(lit), str(abs(lit)))] = lit > 0
    return SatWitness(values)


def _enumerate(problem: QbfProblem, verifier: _Verifier) -> QbfResult:
    for bits in product((False, True), repeat=len(problem.exists)):
        candidate = [v if b else -v for v, b in zip(problem.exists, bits)]
        if verifier.counterexample(candidate) is None:
            return _assignment(problem, candidate)
    return Unsat()


def solve_2qbf(problem: QbfProblem, method: str = 'cegar') -> QbfResult:
    """
    Decide the problem.

    Args:
        problem: the encoded constraints
        method: 'cegar', or 'enumerate' to try every assignment in order

    Returns:
        SatWitness with the smallest valid parameter assignment, or Unsat
    """
    if problem.trivially_valid:
        return _assignment(problem, [-v for v in problem.exists])
    verifier = _Verifier(problem)
    if method == 'enumerate':
        return _enumerate(problem, verifier)
    if method != 'cegar':
        raise ValueError(f"unknown method {method!r}")
    abstraction = _Abstraction(problem)
    limit = 2 ** len(problem.exists)
    for iteration in range(limit + 1):
        candidate = _candidate(abstraction.solver, problem.exists)
        if candidate is None:
            logger.debug("no candidate left after %d refinements", iteration)
            return Unsat()
        model = verifier.counterexample(candidate)
        if model is None:
            logger.debug("valid candidate after %d refinements", iteration)
            return _assignment(problem, candidate)
        abstraction.refine(model)
    logger.info("refinement did not converge after %d iterations, enumerating", limit)
    return _enumerate(problem, verifier)
