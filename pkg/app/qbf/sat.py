"""
Conflict-driven clause learning solver over DIMACS integer literals.

Two watched literals per clause with the implied literal kept at position 0,
first-UIP learning with non-chronological backjumping, VSIDS decisions with
saved phases, Luby restarts and an assumption interface. Learned clauses are
kept across calls to `solve`, so the solver can be queried incrementally.
"""
import heapq
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

RESTART_UNIT = 100
VAR_DECAY = 0.95


def luby(x: int, y: int = 2) -> int:
    """x-th element (from 0) of the Luby sequence scaled by powers of y."""
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x = x % size
    return y ** seq


class CdclSolver:
    def __init__(self, num_vars: int = 0):
        self.num_vars = 0
        self.value: List[int] = [0]
        self.level: List[int] = [0]
        self.reason: List[Optional[List[int]]] = [None]
        self.activity: List[float] = [0.0]
        self.phase: List[bool] = [False]
        self.watches: Dict[int, List[List[int]]] = {}
        self.learnts: List[List[int]] = []
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.heap: List[Tuple[float, int]] = []
        self.var_inc = 1.0
        self.ok = True
        self.model: Dict[int, bool] = {}
        self.conflicts = 0
        self.decisions = 0
        self.ensure(num_vars)

    def ensure(self, num_vars: int):
        while self.num_vars < num_vars:
            self.num_vars += 1
            v = self.num_vars
            self.value.append(0)
            self.level.append(0)
            self.reason.append(None)
            self.activity.append(0.0)
            self.phase.append(False)
            self.watches[v] = []
            self.watches[-v] = []
            heapq.heappush(self.heap, (0.0, v))

    def new_var(self) -> int:
        self.ensure(self.num_vars + 1)
        return self.num_vars

    def lit_value(self, lit: int) -> int:
        """1 if true, -1 if false, 0 if unassigned."""
        value = self.value[abs(lit)]
        return value if lit > 0 else -value

    def decision_level(self) -> int:
        return len(self.trail_lim)

    def add_clause(self, clause: Iterable[int]) -> bool:
        """Add a clause at level 0; returns False once the clause set is unsatisfiable."""
        if not self.ok:
            return False
        self.cancel_until(0)
        lits = list(dict.fromkeys(clause))
        if lits:
            self.ensure(max(abs(lit) for lit in lits))
        if any(-lit in lits for lit in lits) or any(self.lit_value(lit) == 1 for lit in lits):
            return True
        lits = [lit for lit in lits if self.lit_value(lit) == 0]
        if not lits:
            self.ok = False
            return False
        if len(lits) == 1:
            self._enqueue(lits[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(lits)
        return True

    def add_clauses(self, clauses: Iterable[Iterable[int]]) -> bool:
        for clause in clauses:
            if not self.add_clause(clause):
                return False
        return True

    def _attach(self, clause: List[int]):
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    def _enqueue(self, lit: int, reason: Optional[List[int]]):
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = self.decision_level()
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> Optional[List[int]]:
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches[false_lit]
            kept: List[List[int]] = []
            i = 0
            while i < len(watching):
                clause = watching[i]
                i += 1
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                if self.lit_value(clause[0]) == 1:
                    kept.append(clause)
                    continue
                for k in range(2, len(clause)):
                    if self.lit_value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[clause[1]].append(clause)
                        break
                else:
                    kept.append(clause)
                    if self.lit_value(clause[0]) == -1:
                        kept.extend(watching[i:])
                        self.watches[false_lit] = kept
                        self.qhead = len(self.trail)
                        return clause
                    self._enqueue(clause[0], clause)
            self.watches[false_lit] = kept
        return None

    def _bump(self, v: int):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.num_vars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.num_vars + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
        elif self.value[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, conflict: List[int]) -> Tuple[List[int], int]:
        seen = set()
        learnt: List[int] = [0]
        pending = 0
        index = len(self.trail) - 1
        clause = conflict
        implied = None
        while True:
            for lit in (clause if implied is None else clause[1:]):
                v = abs(lit)
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                self._bump(v)
                if self.level[v] >= self.decision_level():
                    pending += 1
                else:
                    learnt.append(lit)
            while abs(self.trail[index]) not in seen:
                index -= 1
            implied = self.trail[index]
            index -= 1
            clause = self.reason[abs(implied)]
            seen.discard(abs(implied))
            pending -= 1
            if pending == 0:
                break
        learnt[0] = -implied
        if len(learnt) == 1:
            return learnt, 0
        deepest = max(range(1, len(learnt)), key=lambda k: self.level[abs(learnt[k])])
        learnt[1], learnt[deepest] = learnt[deepest], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def cancel_until(self, level: int):
        if self.decision_level() <= level:
            return
        start = self.trail_lim[level]
        for lit in reversed(self.trail[start:]):
            v = abs(lit)
            self.phase[v] = lit > 0
            self.value[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _pick_branch(self) -> Optional[int]:
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.value[v] == 0:
                return v
        return None

    def _search(self, budget: int, assumptions: Sequence[int]) -> Optional[bool]:
        conflicts = 0
        while True:
            conflict = self._propagate()
            if conflict is not None:
                conflicts += 1
                self.conflicts += 1
                if self.decision_level() == 0:
                    self.ok = False
                    return False
                learnt, back = self._analyze(conflict)
                self.cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    self.learnts.append(learnt)
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= VAR_DECAY
                continue
            if conflicts >= budget:
                self.cancel_until(0)
                return None
            decision = None
            while self.decision_level() < len(assumptions):
                lit = assumptions[self.decision_level()]
                value = self.lit_value(lit)
                if value == 1:
                    self.trail_lim.append(len(self.trail))
                elif value == -1:
                    return False
                else:
                    decision = lit
                    break
            if decision is None:
                v = self._pick_branch()
                if v is None:
                    self.model = {u: self.value[u] == 1 for u in range(1, self.num_vars + 1)}
                    return True
                self.decisions += 1
                decision = v if self.phase[v] else -v
            self.trail_lim.append(len(self.trail))
            self._enqueue(decision, None)

    def solve(self, assumptions: Sequence[int] = ()) -> bool:
        """Decide satisfiability under `assumptions`; on success `model` maps every variable to a bool."""
        self.model = {}
        if not self.ok:
            return False
        if assumptions:
            self.ensure(max(abs(lit) for lit in assumptions))
        self.cancel_until(0)
        restarts = 0
        while True:
            status = self._search(luby(restarts) * RESTART_UNIT, assumptions)
            if status is not None:
                self.cancel_until(0)
                logger.debug("sat=%s after %d conflicts, %d restarts", status, self.conflicts, restarts)
                return status
            restarts += 1

    def model_value(self, lit: int) -> bool:
        value = self.model[abs(lit)]
        return value if lit > 0 else not value


def solve_cnf(clauses: Iterable[Iterable[int]], assumptions: Sequence[int] = ()) -> Optional[Dict[int, bool]]:
    """One-shot helper: a model, or None when unsatisfiable."""
    solver = CdclSolver()
    if not solver.add_clauses(clauses):
        return None
    return dict(solver.model) if solver.solve(assumptions) else None
