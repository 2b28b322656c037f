from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple


class Op(Enum):
    VAR = "var"
    TRUE = "true"
    FALSE = "false"
    NOT = "not"
    AND = "and"
    OR = "or"
    IMPLIES = "implies"
    IFF = "iff"
    X = "X"
    G = "G"
    W = "W"


class VarTag(Enum):
    INPUT = "input"
    OUTPUT = "output"


class PatternId(Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"


@dataclass(frozen=True)
class Formula:
    op: Op
    children: Tuple['Formula', ...] = ()
    name: Optional[str] = None
    tag: Optional[VarTag] = None

    def __str__(self) -> str:
        if self.op is Op.VAR:
            return self.name
        if self.op in (Op.TRUE, Op.FALSE):
            return self.op.value
        if self.op is Op.NOT:
            return f"!{_wrap(self.children[0])}"
        if self.op in (Op.X, Op.G):
            return f"{self.op.value} {_wrap(self.children[0])}"
        symbol = {Op.AND: ' & ', Op.OR: ' | ', Op.IMPLIES: ' -> ', Op.IFF: ' <-> ', Op.W: ' W '}[self.op]
        return symbol.join(_wrap(c) for c in self.children)

    def variables(self) -> Dict[str, VarTag]:
        found: Dict[str, VarTag] = {}
        stack = [self]
        while stack:
            node = stack.pop()
            if node.op is Op.VAR:
                found[node.name] = node.tag
            stack.extend(node.children)
        return found

    def has_temporal(self, ops=(Op.G, Op.W)) -> bool:
        if self.op in ops:
            return True
        return any(c.has_temporal(ops) for c in self.children)


def _wrap(f: Formula) -> str:
    if f.op in (Op.VAR, Op.TRUE, Op.FALSE, Op.NOT):
        return str(f)
    return f"({f})"


TRUE = Formula(Op.TRUE)
FALSE = Formula(Op.FALSE)


def var(name: str, tag: VarTag) -> Formula:
    return Formula(Op.VAR, name=name, tag=tag)


def not_(f: Formula) -> Formula:
    return Formula(Op.NOT, (f,))


def and_(*fs: Formula) -> Formula:
    if not fs:
        return TRUE
    if len(fs) == 1:
        return fs[0]
    return Formula(Op.AND, tuple(fs))


def or_(*fs: Formula) -> Formula:
    if not fs:
        return FALSE
    if len(fs) == 1:
        return fs[0]
    return Formula(Op.OR, tuple(fs))


def implies(a: Formula, b: Formula) -> Formula:
    return Formula(Op.IMPLIES, (a, b))


def iff(a: Formula, b: Formula) -> Formula:
    return Formula(Op.IFF, (a, b))


def next_(f: Formula, n: int = 1) -> Formula:
    for _ in range(n):
        f = Formula(Op.X, (f,))
    return f


def globally(f: Formula) -> Formula:
    return Formula(Op.G, (f,))


def weak_until(a: Formula, b: Formula) -> Formula:
    return Formula(Op.W, (a, b))


@dataclass(frozen=True, order=True)
class Literal:
    """`X^depth name` or its negation."""
    depth: int
    name: str
    positive: bool = True

    def __str__(self) -> str:
        return ('' if self.positive else '!') + ('X ' * self.depth) + self.name

    def negated(self) -> 'Literal':
        return Literal(self.depth, self.name, not self.positive)


@dataclass(frozen=True)
class DnfClause:
    """Conjunction of literals; `depth` may exceed the deepest literal after padding."""
    literals: Tuple[Literal, ...]
    depth: int = -1

    def __post_init__(self):
        literals = tuple(sorted(set(self.literals)))
        object.__setattr__(self, 'literals', literals)
        deepest = max((lit.depth for lit in literals), default=0)
        if self.depth < 0:
            object.__setattr__(self, 'depth', deepest)
        elif self.depth < deepest:
            raise ValueError(f"clause depth {self.depth} below literal depth {deepest}")

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted({lit.name for lit in self.literals}))

    def is_contradictory(self) -> bool:
        keys = {(lit.depth, lit.name) for lit in self.literals}
        return len(keys) < len(self.literals)

    def sort_key(self) -> Tuple:
        return (tuple((lit.depth, lit.name, not lit.positive) for lit in self.literals), self.depth)

    def evaluate(self, window: List[Dict[str, Optional[bool]]]) -> Optional[bool]:
        """Three-valued evaluation; `window[j]` holds the values at offset j, None if unknown."""
        result: Optional[bool] = True
        for lit in self.literals:
            value = window[lit.depth].get(lit.name) if lit.depth < len(window) else None
            if value is None:
                result = None
            elif value != lit.positive:
                return False
        return result

    def __str__(self) -> str:
        if not self.literals:
            return 'true'
        return ' & '.join(str(lit) for lit in self.literals)


@dataclass(frozen=True)
class SubSpec:
    """One classified top-level conjunct with its projected parts."""
    index: int
    label: str
    pattern: PatternId
    source: Formula
    depth: int = 0
    trigger: Tuple[DnfClause, ...] = ()
    out: Optional[Literal] = None
    release_in: Tuple[DnfClause, ...] = ()
    release_out: Tuple[DnfClause, ...] = ()
    invariant: Optional[Formula] = None

    @property
    def release(self) -> Tuple[DnfClause, ...]:
        return self.release_in + self.release_out

    def max_depth(self) -> int:
        clauses = self.trigger + self.release
        return max((c.depth for c in clauses), default=0)


@dataclass(frozen=True)
class GxwSpec:
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    assumption: Formula = TRUE
    subspecs: Tuple[SubSpec, ...] = ()
    skipped: Tuple[str, ...] = field(default=(), compare=False)

    def of_pattern(self, *patterns: PatternId) -> List[SubSpec]:
        return [s for s in self.subspecs if s.pattern in patterns]

    def by_label(self, label: str) -> SubSpec:
        for s in self.subspecs:
            if s.label == label:
                return s
        raise KeyError(label)

    def tag(self, name: str) -> VarTag:
        return VarTag.INPUT if name in self.inputs else VarTag.OUTPUT
