import logging
from itertools import product
from typing import Dict, List, Sequence

from errors import DepthExceeded, TemporalOperatorInPropositionalContext
from formula.models import (
    FALSE, TRUE, DnfClause, Formula, Literal, Op, VarTag, and_, next_, not_, or_, var,
)

logger = logging.getLogger(__name__)


def to_dnf(formula: Formula) -> List[DnfClause]:
    """
    Normalize a propositional formula with X into a sorted list of clauses.

    Negation and X are pushed down to the variables; contradictory clauses are
    dropped with a warning.

    Args:
        formula: formula built from !, &, |, ->, <->, X, constants and variables

    Returns:
        Clauses in lexicographic order; an empty list means unsatisfiable

    Raises:
        TemporalOperatorInPropositionalContext: if G or W occurs
    """
    raw = _dnf(formula, False, 0)
    clauses: Dict[tuple, DnfClause] = {}
    for literals in raw:
        clause = DnfClause(tuple(literals))
        if clause.is_contradictory():
            logger.warning("dropping contradictory clause %s", clause)
            continue
        clauses.setdefault(clause.sort_key(), clause)
    return [clauses[key] for key in sorted(clauses)]


def _dnf(f: Formula, negated: bool, depth: int) -> List[List[Literal]]:
    op = f.op
    if op is Op.VAR:
        return [[Literal(depth, f.name, not negated)]]
    if op is Op.TRUE or op is Op.FALSE:
        holds = (op is Op.TRUE) != negated
        return [[]] if holds else []
    if op is Op.NOT:
        return _dnf(f.children[0], not negated, depth)
    if op is Op.X:
        return _dnf(f.children[0], negated, depth + 1)
    if op is Op.AND or op is Op.OR:
        parts = [_dnf(c, negated, depth) for c in f.children]
        conjunctive = (op is Op.AND) != negated
        return _product(parts) if conjunctive else [c for part in parts for c in part]
    if op is Op.IMPLIES:
        a, b = f.children
        return _dnf(Formula(Op.OR, (not_(a), b)), negated, depth)
    if op is Op.IFF:
        a, b = f.children
        if negated:
            rewritten = Formula(Op.OR, (and_(a, not_(b)), and_(not_(a), b)))
        else:
            rewritten = Formula(Op.OR, (and_(a, b), and_(not_(a), not_(b))))
        return _dnf(rewritten, False, depth)
    raise TemporalOperatorInPropositionalContext(f"operator {op.value} inside a propositional part: {f}")


def _product(parts: List[List[List[Literal]]]) -> List[List[Literal]]:
    result: List[List[Literal]] = [[]]
    for part in parts:
        result = [left + right for left in result for right in part]
    return result


def pad_clause(clause: DnfClause, depth: int) -> DnfClause:
    """Extend a clause to `depth` with an implicit `X^depth true`."""
    if clause.depth > depth:
        raise DepthExceeded(f"clause {clause} has depth {clause.depth}, more than {depth}")
    return DnfClause(clause.literals, depth)


def clause_to_formula(clause: DnfClause, tags: Dict[str, VarTag]) -> Formula:
    parts = []
    for lit in clause.literals:
        atom = next_(var(lit.name, tags.get(lit.name, VarTag.INPUT)), lit.depth)
        parts.append(atom if lit.positive else not_(atom))
    return and_(*parts) if parts else TRUE


def dnf_to_formula(clauses: Sequence[DnfClause], tags: Dict[str, VarTag]) -> Formula:
    if not clauses:
        return FALSE
    return or_(*(clause_to_formula(c, tags) for c in clauses))


def evaluate_window(formula: Formula, window: Sequence[Dict[str, bool]], offset: int = 0) -> bool:
    """Evaluate a G/W-free formula against a window of valuations starting at `offset`."""
    op = formula.op
    if op is Op.VAR:
        return window[offset][formula.name]
    if op is Op.TRUE:
        return True
    if op is Op.FALSE:
        return False
    if op is Op.NOT:
        return not evaluate_window(formula.children[0], window, offset)
    if op is Op.X:
        return evaluate_window(formula.children[0], window, offset + 1)
    if op is Op.AND:
        return all(evaluate_window(c, window, offset) for c in formula.children)
    if op is Op.OR:
        return any(evaluate_window(c, window, offset) for c in formula.children)
    if op is Op.IMPLIES:
        a, b = formula.children
        return (not evaluate_window(a, window, offset)) or evaluate_window(b, window, offset)
    if op is Op.IFF:
        a, b = formula.children
        return evaluate_window(a, window, offset) == evaluate_window(b, window, offset)
    raise TemporalOperatorInPropositionalContext(f"cannot evaluate {op.value} over a window")


def formula_depth(formula: Formula) -> int:
    if formula.op is Op.X:
        return 1 + formula_depth(formula.children[0])
    return max((formula_depth(c) for c in formula.children), default=0)


def all_windows(names: Sequence[str], length: int):
    """Every assignment of `names` over `length` consecutive steps."""
    for bits in product((False, True), repeat=len(names) * length):
        yield [dict(zip(names, bits[k * len(names):(k + 1) * len(names)])) for k in range(length)]
