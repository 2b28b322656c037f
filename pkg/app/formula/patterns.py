"""
Classification of top-level conjuncts into the supported patterns.

    P1  rho W phi
    P2  G(phi -> X^i (rho W (psi_in | psi_out)))
    P3  G(phi -> X^i rho)
    P4  G(phi <-> X^i rho)
    P5  G(phi_out)
    P6  G(phi_in)          the environment assumption
"""
import logging
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from errors import DepthExceeded, MixedClause, NoMatch, ParseError
from formula.dnf import dnf_to_formula, formula_depth, pad_clause, to_dnf
from formula.models import (
    TRUE, DnfClause, Formula, GxwSpec, Literal, Op, PatternId, SubSpec, VarTag,
    and_, globally, iff, implies, next_, not_, var, weak_until,
)
from formula.parser import ParsedFile, parse_text

logger = logging.getLogger(__name__)


def _tags_are(formula: Formula, tag: VarTag) -> bool:
    return all(t is tag for t in formula.variables().values())


def _propositional(formula: Formula) -> bool:
    return not formula.has_temporal()


def _output_literal(formula: Formula) -> Optional[Tuple[int, Literal]]:
    """Match `X^i rho` with rho an output literal; X and ! may interleave."""
    depth, positive, node = 0, True, formula
    while node.op in (Op.X, Op.NOT):
        if node.op is Op.X:
            depth += 1
        else:
            positive = not positive
        node = node.children[0]
    if node.op is Op.VAR and node.tag is VarTag.OUTPUT:
        return depth, Literal(0, node.name, positive)
    return None


def _strip_next(formula: Formula) -> Tuple[int, Formula]:
    depth = 0
    while formula.op is Op.X:
        depth += 1
        formula = formula.children[0]
    return depth, formula


def _input_part(formula: Formula) -> bool:
    return _propositional(formula) and _tags_are(formula, VarTag.INPUT)


def detect_pattern(formula: Formula) -> PatternId:
    """
    Classify one top-level conjunct.

    Shapes are tried in the order P6, P5, P4, P2, P3, P1.

    Raises:
        NoMatch: if the conjunct has none of the supported shapes
    """
    if formula.op is Op.G:
        body = formula.children[0]
        if _propositional(body) and formula_depth(body) == 0:
            if _tags_are(body, VarTag.INPUT):
                return PatternId.P6
            if _tags_are(body, VarTag.OUTPUT):
                return PatternId.P5
        if body.op is Op.IFF:
            left, right = body.children
            if (_input_part(left) and _output_literal(right)) or (_input_part(right) and _output_literal(left)):
                return PatternId.P4
        if body.op is Op.IMPLIES:
            left, right = body.children
            if _input_part(left):
                _, inner = _strip_next(right)
                if inner.op is Op.W:
                    rho, release = inner.children
                    found = _output_literal(rho)
                    if found and found[0] == 0 and _propositional(release):
                        return PatternId.P2
                if _output_literal(right):
                    return PatternId.P3
            elif _propositional(left):
                raise NoMatch(f"output variables in a trigger are not supported: {formula}")
    elif formula.op is Op.W:
        rho, event = formula.children
        found = _output_literal(rho)
        if found and found[0] == 0 and _input_part(event):
            return PatternId.P1
    raise NoMatch(f"no pattern matches {formula}")


def project_parts(formula: Formula, pattern: PatternId) -> SubSpec:
    """
    Bind the parts of a classified conjunct.

    Trigger clauses of P2, P3 and P4 are padded to the conjunct depth i; P1
    event clauses and release clauses keep their own depth.

    Raises:
        MixedClause: if a release clause mixes input and output variables
        DepthExceeded: if a trigger is deeper than the X prefix of its consequent
    """
    if pattern is PatternId.P1:
        rho, event = formula.children
        _, out = _output_literal(rho)
        trigger = tuple(to_dnf(event))
        depth = max((c.depth for c in trigger), default=0)
        return SubSpec(0, '', pattern, formula, depth, trigger, out)
    body = formula.children[0]
    if pattern in (PatternId.P5, PatternId.P6):
        return SubSpec(0, '', pattern, formula, 0, invariant=body)
    left, right = body.children
    if pattern is PatternId.P4 and not _input_part(left):
        left, right = right, left
    depth, consequent = _strip_next(right)
    release_in: Tuple[DnfClause, ...] = ()
    release_out: Tuple[DnfClause, ...] = ()
    if pattern is PatternId.P2:
        rho, release = consequent.children
        _, out = _output_literal(rho)
        release_in, release_out = _split_release(release)
    else:
        depth, out = _output_literal(right)
    trigger = tuple(pad_clause(c, depth) for c in to_dnf(left))
    return SubSpec(0, '', pattern, formula, depth, trigger, out, release_in, release_out)


def _split_release(release: Formula) -> Tuple[Tuple[DnfClause, ...], Tuple[DnfClause, ...]]:
    tags = release.variables()
    release_in: List[DnfClause] = []
    release_out: List[DnfClause] = []
    for clause in to_dnf(release):
        kinds = {tags[name] for name in clause.variables}
        if len(kinds) > 1:
            raise MixedClause(f"release clause {clause} mixes input and output variables")
        if kinds == {VarTag.OUTPUT}:
            if clause.depth > 0:
                raise DepthExceeded(f"output release clause {clause} must not use X")
            release_out.append(clause)
        else:
            release_in.append(clause)
    return tuple(release_in), tuple(release_out)


def reassemble(parts: SubSpec, tags: Dict[str, VarTag]) -> Formula:
    """Rebuild a formula from projected parts; inverse of project_parts up to DNF."""
    if parts.pattern in (PatternId.P5, PatternId.P6):
        return globally(parts.invariant)
    rho = var(parts.out.name, VarTag.OUTPUT)
    if not parts.out.positive:
        rho = not_(rho)
    trigger = dnf_to_formula(parts.trigger, tags)
    if parts.pattern is PatternId.P1:
        return weak_until(rho, trigger)
    if parts.pattern is PatternId.P2:
        release = dnf_to_formula(parts.release, tags)
        return globally(implies(trigger, next_(weak_until(rho, release), parts.depth)))
    if parts.pattern is PatternId.P3:
        return globally(implies(trigger, next_(rho, parts.depth)))
    return globally(iff(trigger, next_(rho, parts.depth)))


def build_spec(parsed: ParsedFile) -> GxwSpec:
    """
    Classify every formula of a parsed file and assemble the specification.

    Raises:
        NoMatch, MixedClause, DepthExceeded: on conjuncts outside the fragment
        ParseError: on duplicate labels
    """
    assumptions: List[Formula] = []
    for formula in parsed.assumptions:
        assumptions.append(_check_assumption(formula))
    subspecs: List[SubSpec] = []
    skipped: List[str] = []
    labels = set()
    index = 0
    for label, formula in parsed.formulas:
        pattern = detect_pattern(formula)
        if pattern is PatternId.P6:
            assumptions.append(_check_assumption(formula.children[0]))
            continue
        index += 1
        label = label or f"#{index}"
        if label in labels:
            raise ParseError(f"duplicate label {label!r}")
        labels.add(label)
        parts = replace(project_parts(formula, pattern), index=index, label=label)
        if pattern in (PatternId.P1, PatternId.P2, PatternId.P3, PatternId.P4) and not parts.trigger:
            if pattern in (PatternId.P2, PatternId.P3):
                logger.warning("%s: trigger is unsatisfiable, conjunct holds vacuously", label)
                skipped.append(label)
                continue
            raise NoMatch(f"{label}: unsatisfiable input part in {formula}")
        logger.debug("%s classified as %s (depth %d)", label, pattern.value, parts.depth)
        subspecs.append(parts)
    assumption = and_(*assumptions) if assumptions else TRUE
    return GxwSpec(tuple(parsed.inputs), tuple(parsed.outputs), assumption, tuple(subspecs), tuple(skipped))


def _check_assumption(formula: Formula) -> Formula:
    if formula.has_temporal() or formula_depth(formula) > 0:
        raise DepthExceeded(f"assumptions are restricted to depth 0 without temporal operators: {formula}")
    if not _tags_are(formula, VarTag.INPUT):
        raise NoMatch(f"assumptions may only mention input variables: {formula}")
    return formula


def load_spec(text: str) -> GxwSpec:
    """Parse and classify spec text."""
    return build_spec(parse_text(text))
