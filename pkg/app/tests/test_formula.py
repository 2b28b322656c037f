import pytest

from errors import DepthExceeded, MixedClause, NoMatch, ParseError, TemporalOperatorInPropositionalContext
from formula.dnf import all_windows, evaluate_window, pad_clause, to_dnf
from formula.models import DnfClause, Literal, PatternId, VarTag, var, weak_until
from formula.omega import compute_omega, unroll_complete
from formula.parser import parse_formula, parse_text
from formula.patterns import detect_pattern, load_spec, project_parts, reassemble


def clause(*literals):
    return DnfClause(tuple(Literal(d, n, p) for d, n, p in literals))


def test_door_classification(door_spec):
    patterns = {s.label: s.pattern for s in door_spec.subspecs}
    assert patterns == {
        'S1': PatternId.P2, 'S2': PatternId.P2, 'S3': PatternId.P1, 'S4': PatternId.P3,
        'S5': PatternId.P4, 'S6': PatternId.P3, 'S7': PatternId.P5,
    }
    assert door_spec.inputs == ('in0', 'in1', 'in2', 't0expire')
    assert door_spec.outputs == ('out0', 'out1', 't0start')


def test_door_parts(door_spec):
    s1 = door_spec.by_label('S1')
    assert s1.depth == 1
    assert s1.trigger == (clause((0, 'in0', False), (1, 'in0', True)),)
    assert s1.out == Literal(0, 'out0', True)
    assert s1.release_in == (clause((0, 'in2', True)),)
    assert s1.release_out == ()

    s2 = door_spec.by_label('S2')
    assert s2.release_in == (clause((0, 'in0', True)), clause((0, 'in1', True)))
    assert s2.release_out == (clause((0, 'out0', True)),)

    s3 = door_spec.by_label('S3')
    assert s3.out == Literal(0, 'out0', False)
    assert s3.trigger[0].depth == 1

    s4 = door_spec.by_label('S4')
    assert s4.depth == 0
    assert s4.out == Literal(0, 'out0', False)


def test_trigger_padding():
    spec = load_spec("input a, b; output o; P: G(a -> X[2] o);")
    (sub,) = spec.subspecs
    assert sub.depth == 2
    assert sub.trigger == (DnfClause((Literal(0, 'a'),), 2),)
    with pytest.raises(DepthExceeded):
        pad_clause(clause((2, 'a', True)), 1)
    with pytest.raises(DepthExceeded):
        load_spec("input a; output o; G(X a -> o);")


def test_contradictory_clause_dropped():
    formula = parse_formula("(a & !a) | b", inputs=('a', 'b'))
    assert to_dnf(formula) == [clause((0, 'b', True))]


def test_dnf_equivalence():
    formula = parse_formula("!(a -> X b) | (a <-> X !b)", inputs=('a', 'b'))
    clauses = to_dnf(formula)
    for window in all_windows(('a', 'b'), 2):
        expected = evaluate_window(formula, window)
        assert any(c.evaluate(window) is True for c in clauses) == expected


def test_dnf_rejects_temporal():
    formula = weak_until(var('a', VarTag.INPUT), var('b', VarTag.INPUT))
    with pytest.raises(TemporalOperatorInPropositionalContext):
        to_dnf(formula)


def test_clause_evaluation_is_three_valued():
    c = clause((0, 'a', False), (1, 'a', True))
    assert c.evaluate([{'a': False}, {'a': True}]) is True
    assert c.evaluate([{'a': True}, {}]) is False
    assert c.evaluate([{'a': False}, {}]) is None


def test_rejections():
    with pytest.raises(NoMatch):
        load_spec("input a; output o; G(o -> X a);")
    with pytest.raises(MixedClause):
        load_spec("input a; output o, p; G(a -> (o W (a & p)));")
    with pytest.raises(DepthExceeded):
        load_spec("input a; output o, p; G(a -> (o W X p));")
    with pytest.raises(ParseError):
        load_spec("input a; output o; G(a -> (o U a));")


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_text("input a;\noutput o;\nG(a -> o\n")
    assert info.value.line == 4
    with pytest.raises(ParseError) as info:
        parse_text("input a;\noutput o;\nG(a -> q);\n")
    assert (info.value.line, info.value.column) == (3, 8)


def test_macros_and_assumptions():
    spec = load_spec("""
        input a, b;
        output o;
        let rise = !a & X a;
        assume !(a & b);
        G(rise -> X o);
    """)
    assert spec.assumption.variables() == {'a': VarTag.INPUT, 'b': VarTag.INPUT}
    assert spec.subspecs[0].pattern is PatternId.P3
    with pytest.raises(DepthExceeded):
        load_spec("input a; output o; assume X a; G(a -> o);")


def test_vacuous_conjunct_skipped():
    spec = load_spec("input a; output o; V: G((a & !a) -> o); P: G(a -> o);")
    assert spec.skipped == ('V',)
    assert [s.label for s in spec.subspecs] == ['P']


def test_project_reassemble(door_spec):
    tags = {n: door_spec.tag(n) for n in door_spec.inputs + door_spec.outputs}
    for sub in door_spec.subspecs:
        again = project_parts(reassemble(sub, tags), sub.pattern)
        assert detect_pattern(reassemble(sub, tags)) is sub.pattern
        assert (again.depth, again.trigger, again.out, again.release_in, again.release_out) == \
            (sub.depth, sub.trigger, sub.out, sub.release_in, sub.release_out)


def test_omega(door_spec, read_fixture):
    assert compute_omega(door_spec) == 10
    assert compute_omega(load_spec(read_fixture('door_s1_s5.gxw'))) == 9
    assert compute_omega(load_spec("input a; output o; G(!(o));")) == 1
    assert not unroll_complete(door_spec)


def test_omega_monotone():
    base = load_spec("input a; output o; G(a -> o);")
    deeper = load_spec("input a; output o; G(a -> X o);")
    more = load_spec("input a; output o, p; G(a -> o); G(a -> p);")
    assert compute_omega(base) < compute_omega(deeper)
    assert compute_omega(base) < compute_omega(more)


def test_unroll_complete(eq3_spec, read_fixture):
    assert unroll_complete(eq3_spec)
    assert compute_omega(eq3_spec) == 2
    assert not unroll_complete(load_spec(read_fixture('fig8.gxw')))
