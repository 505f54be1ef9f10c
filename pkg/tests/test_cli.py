# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

import io as stdio
import json
import pytest

import tdrefine
import tdrefine.utils as u
import tdrefine.config_manager as cm
import tdrefine.decomp_manager as dm
import tdrefine.io_manager as io
import tdrefine.__main__ as cli


@pytest.fixture
def cycle_files(tmp_path, cycle_td):
    grfile = str(tmp_path / 'c10.gr')
    tdfile = str(tmp_path / 'c10.td')
    io.write_gr(cycle_td.graph, grfile)
    io.write_td(cycle_td, tdfile)
    return grfile, tdfile


def test_cli_version(capsys, mock_init):
    with pytest.raises(SystemExit):
        cli.main(['--version'])
    captured = capsys.readouterr()
    assert captured.out == f"tdrefine version {tdrefine.__version__}\n"


def test_cli_help(capsys, mock_init):
    assert cli.main([]) == 0
    captured = capsys.readouterr()
    assert 'These are the tdrefine commands' in captured.out
    assert 'refine      Build a refined tree-decomposition' in captured.out


def test_cli_gen_stdout(capsys, mock_init):
    assert cli.main(['gen', 'path', '--n', '4']) == 0
    captured = capsys.readouterr()
    assert captured.out == 'p tw 4 3\n1 2\n2 3\n3 4\n'


def test_cli_gen_seed(capsys, mock_init, tmp_path):
    argv = ['gen', 'random_ktree_partial', '--n', '20', '--k', '2',
            '--p', '0.7', '--seed', '5']
    outputs = []
    for i in range(2):
        grfile = str(tmp_path / f'rand{i}.gr')
        assert cli.main(argv + ['-o', grfile]) == 0
        with open(grfile) as f:
            outputs.append(f.read())
    assert outputs[0] == outputs[1]


def test_cli_gen_missing_param(capsys, mock_init):
    assert cli.main(['gen', 'cycle']) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith('\nError: ')


def test_cli_refine_verify(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'grid5.gr')
    tdfile = str(tmp_path / 'grid5.td')
    statsfile = str(tmp_path / 'stats.jsonl')
    assert cli.main(['gen', 'grid', '--n', '5', '-o', grfile]) == 0
    status = cli.main([
        'refine', grfile, '--mode', 'slick', '-o', tdfile,
        '--stats', statsfile])
    assert status == 0
    with open(statsfile) as f:
        record = json.loads(f.readline())
    assert record['mode'] == 'slick'
    assert record['n'] == 25
    capsys.readouterr()

    assert cli.main(['verify', '--slick', '1', grfile, tdfile]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith('valid\n')
    assert 'max spread' in captured.out


def test_cli_refine_stdin(capsys, mock_init, monkeypatch):
    gr_text = io.write_gr(dm.cycle_decomposition(30).graph)
    monkeypatch.setattr('sys.stdin', stdio.StringIO(gr_text))
    assert cli.main(['refine', '--mode', 'small']) == 0
    captured = capsys.readouterr()
    g = io.parse_gr(text=gr_text)
    td = io.parse_td(text=captured.out, graph=g)
    assert dm.validate(td) == []
    assert dm.width(td) <= 5
    # Default stats file:
    with open(u.TD_STATS()) as f:
        assert json.loads(f.readline())['graph'] == '-'


def test_cli_refine_given_td(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['refine', grfile, '--td', tdfile, '--mode', 'partition']) == 0
    captured = capsys.readouterr()
    td = io.parse_td(text=captured.out, kind='partition')
    assert dm.max_spread(td) == 1


def test_cli_refine_timing(capsys, mock_init, cycle_files, tmp_path):
    grfile, tdfile = cycle_files
    statsfile = str(tmp_path / 'timing.jsonl')
    for extra in ([], [], ['--timing']):
        argv = ['refine', grfile, '--td', tdfile, '--stats', statsfile]
        assert cli.main(argv + extra) == 0
    capsys.readouterr()
    with open(statsfile) as f:
        lines = f.readlines()
    assert lines[0] == lines[1]
    assert 'time' not in json.loads(lines[0])
    assert json.loads(lines[2])['time'] >= 0


def test_cli_refine_invalid_parameters(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    status = cli.main(['refine', grfile, '--td', tdfile, '--mode', 'small',
        '--d', '3'])
    assert status == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: Parameter d only applies to the weak mode.\n"


def test_cli_refine_certificate_failure(capsys, mock_init, monkeypatch,
        cycle_files):
    def broken(*args, **kwargs):
        u.certify(False, 'refine slick width', '50 > 41')
    monkeypatch.setattr(io, 'refine', broken)
    grfile, tdfile = cycle_files
    assert cli.main(['refine', grfile]) == 2
    captured = capsys.readouterr()
    assert captured.out == "Certificate failure: refine slick width: 50 > 41\n"


def test_cli_verify_not_partition(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['verify', '--kind', 'partition', grfile, tdfile]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith('partition-overlap')


def test_cli_verify_not_slick(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['verify', '--slick', '1', grfile, tdfile]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith('not-slick (0, 1, 0): vertex 0 gains fewer')


def test_cli_verify_json(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['verify', '--json', grfile, tdfile]) == 0
    captured = capsys.readouterr()
    assert 'valid' in captured.out


def test_cli_verify_missing_file(capsys, mock_init, tmp_path, cycle_files):
    grfile, tdfile = cycle_files
    missing = str(tmp_path / 'missing.td')
    assert cli.main(['verify', grfile, missing]) == 1
    captured = capsys.readouterr()
    assert captured.out.startswith('\nError: ')
    assert 'missing.td' in captured.out


def test_cli_verify_malformed(capsys, mock_init, tmp_path, cycle_files):
    grfile, tdfile = cycle_files
    bad = tmp_path / 'bad.td'
    bad.write_text('s td 2 2 10\nb 1 1 2\n')
    assert cli.main(['verify', grfile, str(bad)]) == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: Missing bag lines for bags [2].\n"


def test_cli_separate_q(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'p9.gr')
    cli.main(['gen', 'path', '--n', '9', '-o', grfile])
    assert cli.main(['separate', '--q', '2', grfile]) == 0
    captured = capsys.readouterr()
    assert 'separator' in captured.out


def test_cli_separate_beta_weights(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'grid4.gr')
    weights = tmp_path / 'weights.txt'
    weights.write_text('c half weights\n1 1/2\n2 1/2\n16 3\n')
    cli.main(['gen', 'grid', '--n', '4', '-o', grfile])
    status = cli.main([
        'separate', '--beta', '1/3', '--weights', str(weights), grfile])
    assert status == 0
    captured = capsys.readouterr()
    assert 'parts' in captured.out


def test_cli_separate_bad_weights(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'p4.gr')
    weights = tmp_path / 'weights.txt'
    weights.write_text('9 1\n')
    cli.main(['gen', 'path', '--n', '4', '-o', grfile])
    assert cli.main(
        ['separate', '--q', '1', '--weights', str(weights), grfile]) == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: Weight given for unknown vertex 9.\n"


def test_cli_separate_both_options(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['separate', '--q', '1', '--beta', '1/2', grfile]) == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: Exactly one of --beta or --q must be given.\n"


def test_cli_oracle_tw(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'grid3.gr')
    tdfile = str(tmp_path / 'grid3.td')
    cli.main(['gen', 'grid', '--n', '3', '-o', grfile])
    assert cli.main(['oracle', 'tw', grfile, '-o', tdfile]) == 0
    captured = capsys.readouterr()
    assert captured.out == 'treewidth: 3\n'
    assert dm.width(io.parse_td(tdfile)) == 3


def test_cli_oracle_tw_budget(capsys, mock_init, tmp_path):
    grfile = str(tmp_path / 'c20.gr')
    cli.main(['gen', 'cycle', '--n', '20', '-o', grfile])
    assert cli.main(['oracle', 'tw', grfile]) == 1
    captured = capsys.readouterr()
    assert 'above the oracle budget of 18' in captured.out


def test_cli_oracle_verify(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['oracle', 'verify', grfile, tdfile]) == 0
    assert capsys.readouterr().out == 'valid\n'
    assert cli.main(
        ['oracle', 'verify', '--kind', 'partition', grfile, tdfile]) == 1
    assert capsys.readouterr().out.startswith('invalid: bags ')


def test_cli_oracle_verify_missing_td(capsys, mock_init, cycle_files):
    grfile, tdfile = cycle_files
    assert cli.main(['oracle', 'verify', grfile]) == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: The 'oracle verify' task needs a .td file.\n"


def test_cli_bench(capsys, mock_init, tmp_path):
    statsfile = str(tmp_path / 'cycle.jsonl')
    assert cli.main(['bench', '--suite', 'cycle', '-o', statsfile]) == 0
    captured = capsys.readouterr()
    assert captured.out == "Ran 30 jobs of the 'cycle' suite.\n"
    with open(statsfile) as f:
        assert len(f.readlines()) == 30


def test_cli_config_display(capsys, mock_init):
    assert cli.main(['config']) == 0
    captured = capsys.readouterr()
    assert 'tdrefine configuration file:' in captured.out


def test_cli_config_set(capsys, mock_init):
    assert cli.main(['config', 'workers', '2']) == 0
    captured = capsys.readouterr()
    assert captured.out == "workers updated to: 2.\n"
    assert cm.get('workers') == '2'


def test_cli_config_invalid(capsys, mock_init):
    assert cli.main(['config', 'workers', 'zero']) == 1
    captured = capsys.readouterr()
    assert captured.out == "\nError: The workers value must be an integer >= 1.\n"
