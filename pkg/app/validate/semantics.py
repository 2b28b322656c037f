"""
Finite-trace violation semantics.

Every conjunct gets an online monitor over a buffer of the most recent frames,
so a joint trace is checked in one pass and the monitor states are finite
(the realizability oracle memoizes on them). A frame maps variables to
booleans, or to None where a value is not known (outputs of an input-only
trace, cycles past the end of a trace).

P3, P4, P5 and the assumption are checked pointwise once their window is
complete. P1 and P2 track weak-until obligations: a failure of the constrained
literal at cycle f is a violation once every release window starting between
the obligation start and f is known to be false. Obligations still pending
at the end of a trace are not violations.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from formula.dnf import evaluate_window
from formula.models import TRUE, DnfClause, GxwSpec, Literal, PatternId, SubSpec
from validate.models import Trace, Violation

logger = logging.getLogger(__name__)

Frame = Tuple[Optional[bool], ...]
Found = List[Tuple[int, str]]


class FrameView:
    """The buffered frames ending at cycle `t`; later cycles are unknown."""

    def __init__(self, names: Sequence[str], buffer: Sequence[Frame], t: int):
        self.t = t
        self.first = t - len(buffer) + 1
        self.rows = [dict(zip(names, frame)) for frame in buffer]

    def row(self, position: int) -> Dict[str, Optional[bool]]:
        if position > self.t:
            return {}
        if position < self.first:
            raise IndexError(f"cycle {position} is no longer buffered")
        return self.rows[position - self.first]

    def window(self, position: int, length: int) -> List[Dict[str, Optional[bool]]]:
        return [self.row(position + j) for j in range(length)]

    def literal(self, lit: Literal, position: int) -> Optional[bool]:
        value = self.row(position + lit.depth).get(lit.name)
        return None if value is None else value == lit.positive


def any_clause(clauses: Sequence[DnfClause], window_of, position: int) -> Optional[bool]:
    """Three-valued disjunction of clauses anchored at `position`."""
    result: Optional[bool] = False
    for clause in clauses:
        value = clause.evaluate(window_of(position, clause.depth + 1))
        if value is True:
            return True
        if value is None:
            result = None
    return result


class ConjunctMonitor:
    def __init__(self, sub: SubSpec):
        self.label = sub.label
        self.sub = sub

    def initial(self):
        return None

    def advance(self, state, t: int, view: FrameView) -> Tuple[object, Found]:
        raise NotImplementedError


class ImplicationMonitor(ConjunctMonitor):
    """P3: the trigger window ending at t forces the literal at t."""

    def advance(self, state, t, view):
        start = t - self.sub.depth
        if start < 0 or any_clause(self.sub.trigger, view.window, start) is not True:
            return state, []
        if view.literal(self.sub.out, t) is False:
            return state, [(t, "output deviated after trigger")]
        return state, []


class EquivalenceMonitor(ConjunctMonitor):
    """P4: from cycle i on the literal equals the trigger window ending at the same cycle."""

    def advance(self, state, t, view):
        start = t - self.sub.depth
        if start < 0:
            return state, []
        expected = any_clause(self.sub.trigger, view.window, start)
        actual = view.literal(self.sub.out, t)
        if expected is None or actual is None or expected == actual:
            return state, []
        return state, [(t, f"output should be {str(expected).lower()}")]


class InvariantMonitor(ConjunctMonitor):
    """P5 over the outputs, or the assumption over the inputs."""

    def __init__(self, sub: SubSpec, reason: str = "invariant false"):
        super().__init__(sub)
        self.names = tuple(sub.invariant.variables())
        self.reason = reason

    def advance(self, state, t, view):
        row = view.row(t)
        if any(row.get(n) is None for n in self.names):
            return state, []
        if evaluate_window(self.sub.invariant, [row]):
            return state, []
        return state, [(t, self.reason)]


# (start, released, unknown release positions, pending failure, reported)
Obligation = Tuple[int, bool, FrozenSet[int], Optional[Tuple[int, FrozenSet[int]]], bool]


class WeakUntilMonitor(ConjunctMonitor):
    """
    P1 (one obligation from cycle 0) and P2 (an obligation per trigger).

    Only the latest obligation is tracked: an earlier one can only fail when
    the latest fails too. A failure whose release windows are not all known
    yet stays pending; pending failures of superseded obligations are kept
    until they resolve.
    """

    def __init__(self, sub: SubSpec):
        super().__init__(sub)
        self.p1 = sub.pattern is PatternId.P1
        self.release = sub.trigger if self.p1 else sub.release
        self.reason = "output deviated before the event" if self.p1 else "output deviated while locked"

    def initial(self):
        obligation = (0, False, frozenset(), None, False) if self.p1 else None
        return obligation, frozenset()

    @staticmethod
    def _resolve(unknown: FrozenSet[int], release) -> Optional[FrozenSet[int]]:
        """None if some position is now true, else the positions still unknown."""
        remaining = set()
        for r in unknown:
            value = release(r)
            if value is True:
                return None
            if value is None:
                remaining.add(r)
        return frozenset(remaining)

    def advance(self, state, t, view):
        obligation, orphans = state
        found: Found = []
        cache: Dict[int, Optional[bool]] = {}

        def release(r: int) -> Optional[bool]:
            if r not in cache:
                cache[r] = any_clause(self.release, view.window, r)
            return cache[r]

        if not self.p1:
            start = t - self.sub.depth
            if start >= 0 and any_clause(self.sub.trigger, view.window, start) is True:
                if obligation is not None and obligation[3] is not None:
                    orphans = orphans | {obligation[3]}
                obligation = (t, False, frozenset(), None, False)

        kept = set()
        for failed, unknown in orphans:
            remaining = self._resolve(unknown, release)
            if remaining is None:
                continue
            if remaining:
                kept.add((failed, remaining))
            else:
                found.append((failed, self.reason))

        if obligation is not None:
            begin, released, unknown, pending, reported = obligation
            if not released:
                remaining = self._resolve(unknown | {t}, release)
                if remaining is None:
                    released, unknown = True, frozenset()
                else:
                    unknown = remaining
            if pending is not None:
                failed, waiting = pending
                remaining = self._resolve(waiting, release)
                if remaining is None:
                    pending = None
                elif not remaining:
                    found.append((failed, self.reason))
                    pending, reported = None, True
                else:
                    pending = (failed, remaining)
            if not released and not reported and pending is None and view.literal(self.sub.out, t) is False:
                if unknown:
                    pending = (t, unknown)
                else:
                    found.append((t, self.reason))
                    reported = True
            obligation = (begin, released, unknown, pending, reported)
        return (obligation, frozenset(kept)), found


def monitor_for(sub: SubSpec) -> ConjunctMonitor:
    if sub.pattern in (PatternId.P1, PatternId.P2):
        return WeakUntilMonitor(sub)
    if sub.pattern is PatternId.P3:
        return ImplicationMonitor(sub)
    if sub.pattern is PatternId.P4:
        return EquivalenceMonitor(sub)
    if sub.pattern is PatternId.P5:
        return InvariantMonitor(sub)
    raise ValueError(f"no monitor for {sub.pattern.value}")


def window_depth(spec: GxwSpec) -> int:
    """Longest look-ahead of any conjunct."""
    return max((max(s.depth, s.max_depth()) for s in spec.subspecs), default=0)


class TraceChecker:
    """Incremental checker; states are hashable so callers may memoize on them."""

    def __init__(self, spec: GxwSpec, check_assumption: bool = True):
        self.spec = spec
        self.names = tuple(spec.inputs) + tuple(spec.outputs)
        self.monitors: List[ConjunctMonitor] = [monitor_for(s) for s in spec.subspecs]
        if check_assumption and spec.assumption != TRUE:
            assumption = SubSpec(0, 'assume', PatternId.P6, spec.assumption, invariant=spec.assumption)
            self.monitors.append(InvariantMonitor(assumption, "assumption violated"))
        self.depth = window_depth(spec)

    def initial(self):
        return (), tuple(m.initial() for m in self.monitors)

    def feed(self, state, t: int, frame: Dict[str, Optional[bool]]):
        buffer, states = state
        buffer = (buffer + (tuple(frame.get(n) for n in self.names),))[-(self.depth + 1):]
        view = FrameView(self.names, buffer, t)
        following = []
        violations: List[Violation] = []
        for monitor, current in zip(self.monitors, states):
            advanced, found = monitor.advance(current, t, view)
            following.append(advanced)
            violations.extend(Violation(cycle, monitor.label, reason) for cycle, reason in found)
        return (buffer, tuple(following)), violations


def check_trace(spec: GxwSpec, trace: Trace) -> List[Violation]:
    """All violations of a (joint) trace, ordered by cycle."""
    checker = TraceChecker(spec)
    state = checker.initial()
    violations: List[Violation] = []
    for t, row in enumerate(trace.rows):
        state, found = checker.feed(state, t, row)
        violations.extend(found)
    return sorted(violations)


def naive_violations(spec: GxwSpec, trace: Trace) -> List[Tuple[str, int]]:
    """Re-evaluate every window from scratch; (label, cycle) pairs."""
    rows = trace.rows
    end = len(rows)

    def row(p: int) -> Dict[str, Optional[bool]]:
        return rows[p] if p < end else {}

    def window(p: int, length: int):
        return [row(p + j) for j in range(length)]

    def literal(lit: Literal, p: int) -> Optional[bool]:
        value = row(p).get(lit.name)
        return None if value is None else value == lit.positive

    found = set()
    for sub in spec.subspecs:
        i = sub.depth
        if sub.pattern is PatternId.P3:
            for t in range(i, end):
                if any_clause(sub.trigger, window, t - i) is True and literal(sub.out, t) is False:
                    found.add((sub.label, t))
        elif sub.pattern is PatternId.P4:
            for t in range(i, end):
                expected = any_clause(sub.trigger, window, t - i)
                actual = literal(sub.out, t)
                if expected is not None and actual is not None and expected != actual:
                    found.add((sub.label, t))
        elif sub.pattern is PatternId.P5:
            names = sub.invariant.variables()
            for t in range(end):
                if all(row(t).get(n) is not None for n in names) and not evaluate_window(sub.invariant, [row(t)]):
                    found.add((sub.label, t))
        else:
            release = sub.trigger if sub.pattern is PatternId.P1 else sub.release
            if sub.pattern is PatternId.P1:
                starts = [0]
            else:
                starts = [a for a in range(i, end) if any_clause(sub.trigger, window, a - i) is True]
            for a in starts:
                for t in range(a, end):
                    if literal(sub.out, t) is not False:
                        continue
                    values = [any_clause(release, window, r) for r in range(a, t + 1)]
                    if all(v is False for v in values):
                        found.add((sub.label, t))
                        break
                    if True in values:
                        break
    if spec.assumption != TRUE:
        for t in range(end):
            if not evaluate_window(spec.assumption, [row(t)]):
                found.add(('assume', t))
    return sorted(found, key=lambda item: (item[1], item[0]))
