import random
import shutil
import subprocess
from itertools import product

import pytest

from errors import GxwError, ParseError, UnknownWitnessVariable
from formula.patterns import load_spec
from qbf.cnf import CnfBuilder
from qbf.encode import encode_static, encode_unrolled, parameter_names
from qbf.invariants import state_invariants
from qbf.models import QbfProblem, SatWitness, Unsat
from qbf.qdimacs import apply_witness, export_qdimacs, parse_qdimacs, parse_witness, witness_text
from qbf.sat import solve_cnf
from qbf.solver import solve_2qbf
from sdf.models import ActorKind
from synthesis.builder import synthesize_structure


def random_problem(seed, n_exists=3, n_universals=4, n_dependent=0):
    """Random instance; dependents are AND/OR definitions over earlier variables."""
    rng = random.Random(seed)
    exists = list(range(1, n_exists + 1))
    universals = list(range(n_exists + 1, n_exists + n_universals + 1))
    dependent = list(range(n_exists + n_universals + 1, n_exists + n_universals + n_dependent + 1))
    pool = exists + universals

    def clause(variables):
        chosen = rng.sample(variables, rng.randint(1, 3))
        return [v if rng.random() < 0.5 else -v for v in chosen]

    definitions = []
    for d in dependent:
        a, b = [v if rng.random() < 0.5 else -v for v in rng.sample(pool, 2)]
        if rng.random() < 0.5:
            definitions += [[-d, a], [-d, b], [d, -a, -b]]
        else:
            definitions += [[d, -a], [d, -b], [-d, a, b]]
        pool = pool + [d]
    assumptions = definitions + [clause(universals) for _ in range(rng.randint(0, 2))]
    guarantees = [clause(pool) for _ in range(rng.randint(1, 6))]
    return QbfProblem(
        exists=exists,
        universals=universals,
        dependent=dependent,
        assumptions=assumptions,
        guarantees=guarantees,
        num_vars=len(pool),
        parameters={f"o{k}": v for k, v in enumerate(exists)},
    )


def holds(clauses, model):
    return all(any(model[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses)


def smallest_valid(problem):
    for bits in product((False, True), repeat=len(problem.exists)):
        chosen = dict(zip(problem.exists, bits))
        valid = True
        inner = problem.universals + problem.dependent
        for ys in product((False, True), repeat=len(inner)):
            model = {**chosen, **dict(zip(inner, ys))}
            if holds(problem.assumptions, model) and not holds(problem.guarantees, model):
                valid = False
                break
        if valid:
            return {f"o{k}": chosen[v] for k, v in enumerate(problem.exists)}
    return None


@pytest.mark.parametrize("seed", range(100))
def test_cegar_agrees_with_enumeration(seed):
    problem = random_problem(seed, n_dependent=seed % 4)
    expected = smallest_valid(problem)
    for method in ('cegar', 'enumerate'):
        result = solve_2qbf(problem, method)
        if expected is None:
            assert isinstance(result, Unsat), method
        else:
            assert isinstance(result, SatWitness), method
            assert result.values == expected, method


def test_unknown_method():
    with pytest.raises(ValueError):
        solve_2qbf(random_problem(0), 'guess')


def test_trivially_valid_problem():
    problem = QbfProblem([1], [], [], [], [], 1, parameters={'o': 1})
    assert solve_2qbf(problem) == SatWitness({'o': False})
    assert export_qdimacs(problem) == "p cnf 0 0\n"


def test_door_static_check(door_structure, door_spec):
    problem = encode_static(door_structure, door_spec)
    assert [name for name, _ in parameter_names(problem)] == ['out0', 'out1', 't0start']
    result = solve_2qbf(problem)
    assert isinstance(result, SatWitness)
    assert result.values['out0'] is False
    assert set(result.values) == {'out0', 'out1', 't0start'}


def test_door_needs_state_invariants(door_structure, door_spec):
    assert not solve_2qbf(encode_static(door_structure, door_spec, invariants=False))


def test_invariants_exclude_joint_locks(door_structure, door_spec):
    sys = door_structure.system()
    cnf = CnfBuilder()
    bits = {}
    for actor in sys.actors.values():
        if actor.behavior.stateful:
            bits[actor.id] = [cnf.state(f"{actor.id}.{v.name}", v.three_valued) for v in actor.behavior.state_vars]
    assert state_invariants(sys, door_spec, cnf, bits)
    trub, inub = bits['TrUB_S1'][0], bits['InUB_S3'][0]
    assert solve_cnf(cnf.clauses, [trub.val, inub.val]) is None
    assert solve_cnf(cnf.clauses, [trub.val, -inub.val]) is not None


def test_conflict_is_unsat(read_fixture):
    spec = load_spec(read_fixture('conflict.gxw'))
    ps = synthesize_structure(spec)
    assert isinstance(solve_2qbf(encode_static(ps, spec)), Unsat)
    assert isinstance(solve_2qbf(encode_unrolled(ps, spec, 1)), Unsat)
    assert isinstance(solve_2qbf(encode_unrolled(ps, spec, 1), 'enumerate'), Unsat)


def test_assumption_rescues_conflict():
    spec = load_spec("input a; output out; assume !a; C1: G(a -> out); C2: G(a -> !out);")
    ps = synthesize_structure(spec)
    assert solve_2qbf(encode_static(ps, spec)) == SatWitness({'out': False})


def test_eq3_unrolled(eq3_spec):
    ps = synthesize_structure(eq3_spec)
    problem = encode_unrolled(ps, eq3_spec, 2)
    assert problem.depth == 2
    assert len(problem.universals) == 2 * len(eq3_spec.inputs)
    assert isinstance(solve_2qbf(problem), SatWitness)
    with pytest.raises(ValueError):
        encode_unrolled(ps, eq3_spec, 0)


def test_invariant_on_outputs():
    spec = load_spec("input a; output o, p; G(a -> o); G(a -> p); N: G(!(o & p));")
    ps = synthesize_structure(spec)
    assert not solve_2qbf(encode_static(ps, spec))
    relaxed = load_spec("input a; output o, p; G(a -> o); N: G(!(o & p));")
    assert solve_2qbf(encode_static(synthesize_structure(relaxed), relaxed)) == SatWitness({'o': False})


def test_qdimacs_layout(door_structure, door_spec):
    problem = encode_static(door_structure, door_spec)
    num_vars, prefix, clauses = parse_qdimacs(export_qdimacs(problem))
    assert [q for q, _ in prefix] == ['e', 'a', 'e']
    assert prefix[0][1] == [1, 2, 3]
    quantified = [v for _, block in prefix for v in block]
    assert sorted(quantified) == list(range(1, num_vars + 1))
    assert len(clauses) == 1 + sum(len(c) for c in problem.assumptions) + len(problem.guarantees)
    assert all(abs(lit) <= num_vars for clause in clauses for lit in clause)


@pytest.mark.parametrize("text", ["e 1 2 0\n1 2 0\n", "p cnf 2 1\n1 2\n", "p cnf x 1\n"])
def test_qdimacs_parse_errors(text):
    with pytest.raises(ParseError):
        parse_qdimacs(text)


@pytest.mark.parametrize("fixture", ['door.gxw', 'conflict.gxw', 'door_s1_s5.gxw'])
def test_external_solver_agrees(read_fixture, fixture, tmp_path):
    depqbf = shutil.which('depqbf')
    if depqbf is None:
        pytest.skip("depqbf not installed")
    spec = load_spec(read_fixture(fixture))
    problem = encode_static(synthesize_structure(spec), spec)
    path = tmp_path / 'problem.qdimacs'
    path.write_text(export_qdimacs(problem))
    completed = subprocess.run([depqbf, str(path)], capture_output=True, text=True)
    assert completed.returncode in (10, 20)
    assert (completed.returncode == 10) == bool(solve_2qbf(problem))


def test_witness_text_round_trip():
    witness = SatWitness({'out0': False, 'out1': True})
    text = witness_text(witness)
    assert text == "A_out0=0\nA_out1=1\n"
    assert parse_witness(text + "\n") == witness
    with pytest.raises(ParseError):
        parse_witness("out0=1\n")


def test_apply_witness(door_structure):
    sys = apply_witness(door_structure, SatWitness({'out0': False, 'out1': True, 't0start': False}))
    params = {a.id: a.behavior.a for a in sys.actors_of(ActorKind.RES)}
    assert params == {'Res_out0': False, 'Res_out1': True, 'Res_t0start': False}
    assert all(a.behavior.a is None for a in door_structure.system().actors_of(ActorKind.RES))


def test_apply_witness_errors(door_structure):
    with pytest.raises(UnknownWitnessVariable):
        apply_witness(door_structure, {'out0': False, 'out1': False, 't0start': False, 'in0': True})
    with pytest.raises(GxwError):
        apply_witness(door_structure, {'out0': False})


def expanded_matrix(problem):
    """Universal expansion of a problem without dependent variables."""
    clauses = []
    for ys in product((False, True), repeat=len(problem.universals)):
        fixed = dict(zip(problem.universals, ys))
        if not holds(problem.assumptions, fixed):
            continue
        for clause in problem.guarantees:
            if any(abs(lit) in fixed and fixed[abs(lit)] == (lit > 0) for lit in clause):
                continue
            clauses.append([lit for lit in clause if abs(lit) not in fixed])
    return clauses


@pytest.mark.parametrize("seed", range(20))
def test_verdict_agrees_with_pysat_expansion(seed):
    solvers = pytest.importorskip("pysat.solvers")
    problem = random_problem(300 + seed)
    clauses = expanded_matrix(problem)
    if any(not clause for clause in clauses):
        expected = False
    else:
        with solvers.Solver(name='m22', bootstrap_with=clauses) as reference:
            expected = reference.solve()
    assert bool(solve_2qbf(problem)) == expected
