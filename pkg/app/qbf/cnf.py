"""
Clause builder with Tseitin gate definitions over DIMACS-style integer literals.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class PortBits:
    """Two-bit port encoding; dash implies not val."""
    dash: int
    val: int


@dataclass(frozen=True)
class StateBits:
    """Two-bit state encoding; known is the constant true for 2-valued variables."""
    known: int
    val: int


class CnfBuilder:
    def __init__(self):
        self.num_vars = 0
        self.names: Dict[int, str] = {}
        self.clauses: List[List[int]] = []
        self._gates: Dict[Tuple, int] = {}
        self.true = self.new_var('$true')
        self.clauses.append([self.true])

    @property
    def false(self) -> int:
        return -self.true

    def new_var(self, name: Optional[str] = None) -> int:
        self.num_vars += 1
        if name is not None:
            self.names[self.num_vars] = name
        return self.num_vars

    def const(self, value: bool) -> int:
        return self.true if value else self.false

    def add(self, clause: Iterable[int]):
        clause = list(dict.fromkeys(clause))
        if self.true in clause:
            return
        clause = [lit for lit in clause if lit != self.false]
        if any(-lit in clause for lit in clause):
            return
        self.clauses.append(clause)

    def and_(self, lits: Sequence[int]) -> int:
        """Literal equivalent to the conjunction of `lits`."""
        lits = sorted(set(lit for lit in lits if lit != self.true))
        if self.false in lits or any(-lit in lits for lit in lits):
            return self.false
        if not lits:
            return self.true
        if len(lits) == 1:
            return lits[0]
        key = ('and',) + tuple(lits)
        gate = self._gates.get(key)
        if gate is None:
            gate = self.new_var()
            for lit in lits:
                self.clauses.append([-gate, lit])
            self.clauses.append([gate] + [-lit for lit in lits])
            self._gates[key] = gate
        return gate

    def or_(self, lits: Sequence[int]) -> int:
        return -self.and_([-lit for lit in lits])

    def iff_(self, a: int, b: int) -> int:
        if a == b:
            return self.true
        if a == -b:
            return self.false
        return self.or_([self.and_([a, b]), self.and_([-a, -b])])

    def xor_(self, a: int, b: int) -> int:
        return -self.iff_(a, b)

    def ite(self, cond: int, then: int, other: int) -> int:
        return self.or_([self.and_([cond, then]), self.and_([-cond, other])])

    def equal(self, a: int, b: int):
        """Constrain `a` and `b` to the same value."""
        if a == b:
            return
        self.add([-a, b])
        self.add([a, -b])

    def port(self, name: str) -> PortBits:
        return PortBits(self.new_var(f"{name}.d"), self.new_var(f"{name}.v"))

    def state(self, name: str, three_valued: bool) -> StateBits:
        val = self.new_var(f"{name}.v")
        if not three_valued:
            return StateBits(self.true, val)
        return StateBits(self.new_var(f"{name}.k"), val)

    def equal_port(self, a: PortBits, b: PortBits):
        self.equal(a.dash, b.dash)
        self.equal(a.val, b.val)

    def canonical_state(self, bits: StateBits):
        """Unknown three-valued state carries val = false."""
        self.add([bits.known, -bits.val])

    def formula(self, formula, lookup) -> int:
        """Tseitin literal of a G/W-free formula; `lookup(name, depth)` maps variables to literals."""
        from formula.models import Op

        def walk(node, depth):
            op = node.op
            if op is Op.VAR:
                return lookup(node.name, depth)
            if op is Op.TRUE:
                return self.true
            if op is Op.FALSE:
                return self.false
            if op is Op.NOT:
                return -walk(node.children[0], depth)
            if op is Op.X:
                return walk(node.children[0], depth + 1)
            if op is Op.AND:
                return self.and_([walk(c, depth) for c in node.children])
            if op is Op.OR:
                return self.or_([walk(c, depth) for c in node.children])
            if op is Op.IMPLIES:
                a, b = node.children
                return self.or_([-walk(a, depth), walk(b, depth)])
            if op is Op.IFF:
                a, b = node.children
                return self.iff_(walk(a, depth), walk(b, depth))
            raise ValueError(f"cannot encode {op.value}")

        return walk(formula, 0)

    def variables(self) -> List[int]:
        return list(range(1, self.num_vars + 1))
