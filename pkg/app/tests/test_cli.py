import json
import time

import pytest

from cli.bench import COLUMNS, bench_row, bench_spec_text
from cli.router import dispatch
import cli.synth
from cli.synth import SynthOptions, run_pipeline, write_artifacts
from errors import EXIT_INTERNAL, EXIT_USAGE, ParseError
from formula.omega import compute_omega
from formula.patterns import load_spec
from qbf.models import SatWitness
from sdf.netlist import import_json

OVERLAP = "input a; output o, p; G(a -> o); G(a -> p); N: G(!(o & p));\n"


def test_door_synthesized(read_fixture):
    outcome = run_pipeline(read_fixture('door.gxw'), 'door.gxw')
    report = outcome.report
    assert (report.verdict, report.exit_code) == ('synthesized', 0)
    assert report.witness['out0'] is False
    assert report.omega == 10
    assert report.unroll_depth is None
    assert report.actors['TrUB'] == 2
    assert set(report.timings) >= {'parse', 'build', 'encode', 'solve'}
    assert outcome.system is not None


def test_conflict_unrealizable(read_fixture):
    text = read_fixture('conflict.gxw')
    report = run_pipeline(text).report
    assert (report.verdict, report.exit_code) == ('unrealizable', 3)
    assert report.unroll_depth == compute_omega(load_spec(text)) == 2
    assert report.witness is None


def test_feedback_rejected(read_fixture):
    report = run_pipeline(read_fixture('fig8.gxw')).report
    assert (report.verdict, report.exit_code) == ('rejected-cycle', 4)
    assert 'TrUB_F1' in report.detail


def test_pattern_rejected():
    report = run_pipeline("input a; output o; G(o -> X a);").report
    assert (report.verdict, report.exit_code) == ('rejected-pattern', 4)


def test_parse_error_propagates():
    with pytest.raises(ParseError):
        run_pipeline("input a; output o; G(a -> o")


def test_unknown_when_unroll_is_not_conclusive():
    report = run_pipeline(OVERLAP).report
    assert (report.verdict, report.exit_code) == ('unknown', 2)
    assert not report.unroll_complete
    forced = run_pipeline(OVERLAP, options=SynthOptions(unroll='2')).report
    assert forced.verdict == 'unknown'
    assert forced.unroll_depth == 2


@pytest.mark.parametrize("unroll,verdict", [('off', 'unknown'), ('1', 'unrealizable'), ('3', 'unrealizable')])
def test_unroll_option(read_fixture, unroll, verdict):
    report = run_pipeline(read_fixture('conflict.gxw'), options=SynthOptions(unroll=unroll)).report
    assert report.verdict == verdict


def test_fuzz_summary(read_fixture):
    report = run_pipeline(read_fixture('eq3.gxw'), options=SynthOptions(fuzz=10, seed=5)).report
    assert report.verdict == 'synthesized'
    assert report.fuzz.traces == 10
    assert report.fuzz.conflicts == 0
    assert report.fuzz.violations == []
    assert 'validate' in report.timings


EXCLUSIVE = "input a, b; output o, p; assume !(a & b); G(a -> o); G(b -> p); N: G(!(o & p));\n"


def test_fuzz_failure_is_reported(monkeypatch):
    assert run_pipeline(EXCLUSIVE, options=SynthOptions(fuzz=5)).report.verdict == 'synthesized'
    monkeypatch.setattr(cli.synth, 'solve_2qbf',
                        lambda problem, method='cegar': SatWitness({'o': True, 'p': True}))
    report = run_pipeline(EXCLUSIVE, options=SynthOptions(fuzz=5)).report
    assert (report.verdict, report.exit_code) == ('validation-failed', EXIT_INTERNAL)
    assert report.fuzz.violations[0].startswith('N')
    assert '5 traces' in report.detail


def test_artifacts(read_fixture, tmp_path):
    outcome = run_pipeline(read_fixture('door.gxw'), 'door.gxw')
    qdimacs = tmp_path / 'door.qdimacs'
    report = write_artifacts(outcome, str(tmp_path), 'door', dot=True, qdimacs=str(qdimacs))
    assert set(report.artifacts) == {'netlist', 'dot', 'witness', 'qdimacs', 'report'}
    assert import_json((tmp_path / 'door.json').read_text()) == outcome.system
    assert (tmp_path / 'door.witness').read_text() == "A_out0=0\nA_out1=0\nA_t0start=0\n"
    assert qdimacs.read_text().startswith('p cnf ')
    saved = json.loads((tmp_path / 'door.report.json').read_text())
    assert saved['verdict'] == 'synthesized'
    assert saved['artifacts']['report'].endswith('door.report.json')


def test_artifacts_of_rejected_run(read_fixture, tmp_path):
    outcome = run_pipeline(read_fixture('fig8.gxw'))
    report = write_artifacts(outcome, str(tmp_path), 'fig8', json_report=str(tmp_path / 'out.json'))
    assert set(report.artifacts) == {'report'}
    assert sorted(p.name for p in tmp_path.iterdir()) == ['out.json']


def test_dispatch_synth(fixture_file, tmp_path, capsys):
    assert dispatch(['synth', fixture_file('door.gxw'), '-o', str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith('synthesized: ')
    assert 'A_out0=0' in out
    assert (tmp_path / 'door.json').exists()
    assert not (tmp_path / 'door.dot').exists()
    assert dispatch(['synth', fixture_file('door.gxw'), '-o', str(tmp_path), '--dot']) == 0
    assert (tmp_path / 'door.dot').read_text().startswith('digraph controller {')
    assert dispatch(['synth', fixture_file('conflict.gxw'), '-o', str(tmp_path)]) == 3
    assert dispatch(['synth', fixture_file('fig8.gxw'), '-o', str(tmp_path)]) == 4


def test_dispatch_errors(fixture_file, tmp_path, capsys):
    assert dispatch(['omega', str(tmp_path / 'missing.gxw')]) == 1
    assert 'missing.gxw' in capsys.readouterr().err
    broken = tmp_path / 'broken.gxw'
    broken.write_text("input a;\noutput o;\nG(a -> o\n")
    assert dispatch(['synth', str(broken), '-o', str(tmp_path)]) == 1
    assert 'error: 4:' in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        dispatch(['synth', fixture_file('door.gxw'), '--unroll', '0'])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        dispatch(['frobnicate'])
    assert info.value.code == EXIT_USAGE


def test_dispatch_omega(fixture_file, capsys):
    assert dispatch(['omega', fixture_file('door.gxw')]) == 0
    assert capsys.readouterr().out == "10\n"


def test_dispatch_simulate_check_export(fixture_file, tmp_path, capsys):
    assert dispatch(['synth', fixture_file('door.gxw'), '-o', str(tmp_path)]) == 0
    netlist = str(tmp_path / 'door.json')
    inputs = tmp_path / 'inputs.csv'
    inputs.write_text("in0,in1,in2,t0expire\n0,0,0,0\n1,0,0,0\n1,0,0,0\n1,0,1,0\n")
    capsys.readouterr()

    joint = tmp_path / 'joint.csv'
    assert dispatch(['simulate', netlist, str(inputs), '-o', str(joint)]) == 0
    lines = joint.read_text().splitlines()
    assert lines[0] == 'in0,in1,in2,t0expire,out0,out1,t0start'
    assert [line.split(',')[4] for line in lines[1:]] == ['0', '1', '1', '0']

    assert dispatch(['check', fixture_file('door.gxw'), str(joint)]) == 0
    bad = tmp_path / 'bad.csv'
    bad.write_text(joint.read_text().replace('1,0,0,0,1,', '1,0,0,0,0,', 1))
    assert dispatch(['check', fixture_file('door.gxw'), str(bad)]) == 1
    assert 'S1@1: output deviated while locked' in capsys.readouterr().out

    assert dispatch(['export', netlist, '--dot']) == 0
    assert capsys.readouterr().out.startswith('digraph controller {')
    assert dispatch(['export', netlist]) == 1
    assert dispatch(['export', netlist, '--qdimacs', str(tmp_path / 'x.qdimacs')]) == 1
    qdimacs = tmp_path / 'door.qdimacs'
    assert dispatch(['export', netlist, '--qdimacs', str(qdimacs), '--spec', fixture_file('door.gxw')]) == 0
    assert qdimacs.read_text().startswith('p cnf ')


def test_bench_spec_is_realizable():
    text = bench_spec_text(4, 2, 3, seed=1)
    spec = load_spec(text)
    assert (len(spec.inputs), len(spec.outputs), len(spec.subspecs)) == (4, 2, 3)
    assert run_pipeline(text).report.verdict == 'synthesized'


def test_dispatch_bench(capsys):
    assert dispatch(['bench', '--n-in', '4', '--n-out', '2', '-k', '2', '3']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ','.join(COLUMNS)
    assert len(lines) == 3
    assert all(line.endswith(',synthesized') for line in lines[1:])


@pytest.mark.slow
def test_bench_default_size():
    started = time.perf_counter()
    row = bench_row(20, 16, 16)
    assert row['verdict'] == 'synthesized'
    assert time.perf_counter() - started < 10
