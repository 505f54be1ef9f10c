# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

import argparse
import sys
from datetime import date

from pygments.token import Token

from . import graph_manager as gm
from . import decomp_manager as dm
from . import separator_manager as sm
from . import oracle_manager as om
from . import io_manager as io
from . import config_manager as cm
from . import utils as u
from .version import __version__


# Parser Main Documentation:
main_description = f"""
Graphs and Decompositions:
--------------------------
  gen         Generate a graph of a standard family in .gr format.
  refine      Build a refined tree-decomposition of a graph.
  verify      Check a tree-decomposition against a graph.
  separate    Compute a balanced separator of a weighted graph.

Oracles and Benchmarks:
-----------------------
  oracle      Exact treewidth and brute-force verification.
  bench       Run a benchmark suite and collect its stats.

Configuration:
--------------
  config      Manage the tdrefine configuration parameters.

For additional details on a specific command, see 'tdrefine command -h'.

Copyright (c) 2024-{date.today().year} The tdrefine developers.
tdrefine is open-source software under the MIT license.
"""


def _read_text(path):
    """Content of a file, or of the standard input if path is '-'."""
    if path == '-':
        return sys.stdin.read()
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def _write_text(text, path):
    if path is None or path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)


def _read_graph(path):
    return io.parse_gr(text=_read_text(path))


def _read_weights(path, g):
    """
    Vertex weights from lines '<v> <weight>' (1-indexed vertices,
    rational weights), comment lines start with 'c'.
    """
    weights = {}
    for line in _read_text(path).splitlines():
        fields = line.split()
        if len(fields) == 0 or fields[0] == 'c':
            continue
        if len(fields) != 2 or not fields[0].isdigit():
            raise ValueError(f"Malformed weight line: '{line}'.")
        v = int(fields[0]) - 1
        if v not in g:
            raise ValueError(f"Weight given for unknown vertex {v+1}.")
        weights[v] = fields[1]
    return gm.Weighting(weights)


def _metric_tokens(td):
    tokens = []
    tokens += u.tokenizer('kind', td.kind)
    tokens += u.tokenizer('width', dm.width(td), Token.Literal.Number)
    tokens += u.tokenizer('order', dm.order(td), Token.Literal.Number)
    tokens += u.tokenizer('degree', dm.degree(td), Token.Literal.Number)
    tokens += u.tokenizer('max spread', dm.max_spread(td), Token.Literal.Number)
    return tokens


def cli_gen(args):
    """Command-line interface for gen call."""
    params = {
        key: getattr(args, key)
        for key in ('n', 'm', 'k', 'p')
        if getattr(args, key) is not None}
    g = gm.generate(args.family, seed=u.get_seed(args.seed), **params)
    _write_text(io.write_gr(g), args.output)


def cli_refine(args):
    """Command-line interface for refine call."""
    g = _read_graph(args.grfile)
    td = None
    if args.td is not None:
        td = io.parse_td(text=_read_text(args.td), graph=g)
    out, record = io.refine(
        g, td, mode=args.mode, k=args.k, d=args.d, ell=args.ell, t=args.t,
        verify=not args.no_verify, graph_id=args.grfile, timing=args.timing)

    _write_text(io.write_td(out), args.output)
    io.append_stats(record, args.stats)
    if args.output is not None and args.output != '-':
        u.display_json(record, header=f'refine --mode {args.mode}')


def cli_verify(args):
    """Command-line interface for verify call."""
    g = _read_graph(args.grfile)
    td = io.parse_td(text=_read_text(args.tdfile), graph=g, kind=args.kind)
    violations = dm.validate(td)
    if args.slick is not None and len(violations) == 0:
        slick, witness = dm.is_slick(td, args.slick)
        if not slick:
            x, y, v = witness
            violations.append(dm.Violation(
                'not-slick', witness,
                f'vertex {v} gains fewer than {args.slick} neighbors '
                f'from bag {x} to bag {y}'))
    if args.json:
        u.display_json(dm.report_json(violations))
    else:
        print(dm.report_text(violations), end='')
    if len(violations) > 0:
        return 1
    if not args.json:
        u.display_tokens(_metric_tokens(td))
    return 0


def cli_separate(args):
    """Command-line interface for separate call."""
    if (args.beta is None) == (args.q is None):
        raise ValueError("Exactly one of --beta or --q must be given.")
    g = _read_graph(args.grfile)
    if args.td is not None:
        td = io.parse_td(text=_read_text(args.td), graph=g)
    else:
        td = om.width_witness(
            g, om.OracleBudget.from_config(), cm.get('heuristic'))
    if args.weights is None:
        gamma = gm.Weighting.unit(g)
    else:
        gamma = _read_weights(args.weights, g)

    if args.q is not None:
        x_set = sm.treewidth_sep(g, gamma, td, args.q)
        content = {'q': args.q, 'separator': [v+1 for v in sorted(x_set)]}
    else:
        sep = sm.gen_separation(g, gamma, td, args.beta)
        content = {
            'beta': str(u.to_fraction(args.beta)),
            'separator': [v+1 for v in sorted(sep.x_set)],
            'parts': [[v+1 for v in sorted(core)] for core in sep.cores],
        }
    u.display_json(content)


def cli_oracle(args):
    """Command-line interface for oracle call."""
    budget = om.OracleBudget.from_config()
    g = _read_graph(args.grfile)
    if args.task == 'tw':
        tw, witness = om.exact_treewidth(g, budget, cm.get('heuristic'))
        print(f'treewidth: {tw}')
        if args.output is not None:
            _write_text(io.write_td(witness), args.output)
        return 0

    if args.tdfile is None:
        raise ValueError("The 'oracle verify' task needs a .td file.")
    budget.check_vertices(g.number_of_nodes())
    td = io.parse_td(text=_read_text(args.tdfile), graph=g, kind=args.kind)
    ok, witness = om.verify_decomposition_bruteforce(g, td)
    if ok:
        print('valid')
        return 0
    print(f'invalid: {witness}')
    return 1


def cli_bench(args):
    """Command-line interface for bench call."""
    workers = int(cm.get('workers')) if args.workers is None else args.workers
    records = io.bench(
        args.suite, workers=workers, seed=args.seed, statsfile=args.output,
        timing=args.timing)
    print(f"Ran {len(records)} jobs of the '{args.suite}' suite.")


def cli_config(args):
    """Command-line interface for config call."""
    if args.param is None:
        cm.display()
    elif args.value is None:
        cm.help(args.param)
    else:
        cm.set(args.param, args.value)


def main(argv=None):
    """
    tdrefine command-line interface.

    Returns
    -------
    status: Integer
        0 on success, 1 on user errors (or failed verifications), 2 on
        internal certificate failures.
    """
    # Initialization check:
    cm.init()

    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument(
        '-v', '--version',
        action='version',
        help="Show tdrefine's version.",
        version=f'tdrefine version {__version__}',
    )

    # And now the sub-commands:
    sp = parser.add_subparsers(
        title="These are the tdrefine commands",
        description=main_description,
        metavar='command',
    )

    gen_description = f"""
{u.BOLD}Generate a graph of a standard family in .gr format.{u.END}

Description
  This command writes a graph of one of the families below to the
  standard output (or to the file given by -o).  The random families
  use the --seed argument, which the TDREFINE_SEED environment
  variable overrides (default: the 'seed' config parameter).

  Families and parameters:
  - path, cycle, grid, fan, complete, tree_random: --n
  - random_gnm: --n --m
  - random_ktree_partial: --n --k --p

Examples
  # A 5x5 grid:
  tdrefine gen grid --n 5 -o grid5.gr

  # A seeded random partial 3-tree:
  tdrefine gen random_ktree_partial --n 60 --k 3 --p 0.7 --seed 7"""
    gen = sp.add_parser('gen', description=gen_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    gen.add_argument('family', action='store', choices=list(gm.families),
        help='Graph family.')
    gen.add_argument('--n', type=int, help='Number of vertices (or grid side).')
    gen.add_argument('--m', type=int, help='Number of edges (random_gnm).')
    gen.add_argument('--k', type=int,
        help='Clique size minus one (random_ktree_partial).')
    gen.add_argument('--p', type=float,
        help='Edge keep probability (random_ktree_partial).')
    gen.add_argument('--seed', type=int, help='Random seed.')
    gen.add_argument('-o', '--output', action='store',
        help='Output .gr file (default: standard output).')
    gen.set_defaults(func=cli_gen)


    refine_description = f"""
{u.BOLD}Build a refined tree-decomposition of a graph.{u.END}

Description
  This command reads a graph (a .gr file, or '-' for the standard
  input) and writes a tree-decomposition in .td format.  The input
  decomposition is taken from --td, otherwise it is computed (exact
  treewidth under the oracle budget, the configured elimination
  heuristic above it).

  Modes:
  - slick        slick decomposition, width <= 14k+13, degree <= 6
                 (--ell and --t select the general construction).
  - small        width <= 3k-1 and order <= max(n/k - 1, 1).
  - slick-small  slick, width <= 56k+58, order <= max(n/(14k+14), 1).
  - weak         weak decomposition, width <= 18kd, degree <= 6d.
  - combined     slick, width <= 72k+1, degree <= 12, order <= max(n/2k, 1).
  - partition    tree-partition, width <= 18k(D+2), D the max degree.

  For slick, small and slick-small, k bounds the input width.  For
  weak, combined and partition, the input width must be at most k-1.
  Every output is re-validated against its bounds unless --no-verify.
  A stats record is appended (JSON lines) to the --stats file, or to
  the stats.jsonl file in the tdrefine home folder.  Records are
  identical across identical runs; --timing adds the wall time.

Examples
  # Slick decomposition of a grid read from a pipe:
  tdrefine gen grid --n 5 | tdrefine refine --mode slick --k 5

  # Tree-partition of a cycle, from a given decomposition:
  tdrefine refine --mode partition --td c20.td c20.gr -o c20_tp.td"""
    refine = sp.add_parser('refine', description=refine_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    refine.add_argument('grfile', action='store', nargs='?', default='-',
        help="Input .gr file ('-' for the standard input).")
    refine.add_argument('--mode', action='store', default='slick',
        choices=list(io.MODES), help='Construction (default: slick).')
    refine.add_argument('--k', type=int, help='Width parameter.')
    refine.add_argument('--d', type=int,
        help='Slickness parameter of the weak mode (default: 2).')
    refine.add_argument('--ell', type=int,
        help='Separator budget of the general slick construction.')
    refine.add_argument('--t', type=int,
        help='Part cap of the general slick construction.')
    refine.add_argument('--td', action='store',
        help='Input .td decomposition of the graph.')
    refine.add_argument('-o', '--output', action='store',
        help='Output .td file (default: standard output).')
    refine.add_argument('--stats', action='store',
        help='JSON-lines stats file to append to.')
    refine.add_argument('--no-verify', action='store_true', default=False,
        help='Skip the final re-validation (for benchmarking).')
    refine.add_argument('--timing', action='store_true', default=False,
        help='Add the wall time to the stats record.')
    refine.set_defaults(func=cli_refine)


    verify_description = f"""
{u.BOLD}Check a tree-decomposition against a graph.{u.END}

Description
  This command checks that a .td file is a valid decomposition of
  the kind given by --kind (strong, weak, or partition) of a .gr
  graph, and optionally that it is s-slick.  It prints one line per
  violated clause (or 'valid' followed by the decomposition metrics)
  and exits with status 1 if the decomposition is not valid.

Examples
  tdrefine verify --kind partition c20.gr c20_tp.td
  tdrefine verify --slick 1 grid5.gr grid5_slick.td"""
    verify = sp.add_parser('verify', description=verify_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    verify.add_argument('grfile', action='store', help='Input .gr file.')
    verify.add_argument('tdfile', action='store', help='Input .td file.')
    verify.add_argument('--kind', action='store', default='strong',
        choices=list(dm.KINDS), help='Decomposition kind (default: strong).')
    verify.add_argument('--slick', type=int,
        help='Also check s-slickness for this s.')
    verify.add_argument('--json', action='store_true', default=False,
        help='Display the report as JSON.')
    verify.set_defaults(func=cli_verify)


    separate_description = f"""
{u.BOLD}Compute a balanced separator of a weighted graph.{u.END}

Description
  With --q Q, find a set X of at most Q(k+1) vertices such that every
  component of G - X weighs at most a 1/(Q+1) share of the total.
  With --beta B, also group the components into parts weighing at
  most B times the total.  Weights are read from --weights (lines
  '<v> <weight>', rationals allowed), default weight 1 per vertex.

Examples
  tdrefine separate --q 2 grid5.gr
  tdrefine separate --beta 1/3 --weights w.txt grid5.gr"""
    separate = sp.add_parser('separate', description=separate_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    separate.add_argument('grfile', action='store', help='Input .gr file.')
    separate.add_argument('--beta', action='store',
        help='Balance parameter (e.g., 1/3).')
    separate.add_argument('--q', type=int, help='Number of separator bags.')
    separate.add_argument('--weights', action='store',
        help='Vertex weights file.')
    separate.add_argument('--td', action='store',
        help='Input .td decomposition of the graph.')
    separate.set_defaults(func=cli_separate)


    oracle_description = f"""
{u.BOLD}Exact treewidth and brute-force verification.{u.END}

Description
  'oracle tw' computes the exact treewidth of a small graph (within
  the oracle_max_vertices and oracle_max_subsets config budgets) and
  optionally writes an optimal decomposition.  'oracle verify' checks
  a decomposition straight from the definitions.

Examples
  tdrefine oracle tw grid3.gr -o grid3.td
  tdrefine oracle verify --kind weak c8.gr c8_weak.td"""
    oracle = sp.add_parser('oracle', description=oracle_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    oracle.add_argument('task', action='store', choices=['tw', 'verify'],
        help='Oracle task.')
    oracle.add_argument('grfile', action='store', help='Input .gr file.')
    oracle.add_argument('tdfile', action='store', nargs='?',
        help='Input .td file (verify task).')
    oracle.add_argument('--kind', action='store', default='strong',
        choices=list(dm.KINDS), help='Decomposition kind (default: strong).')
    oracle.add_argument('-o', '--output', action='store',
        help='Output .td file for the optimal decomposition (tw task).')
    oracle.set_defaults(func=cli_oracle)


    bench_description = f"""
{u.BOLD}Run a benchmark suite and collect its stats.{u.END}

Description
  This command runs every (graph, mode) job of a suite and writes one
  JSON-lines stats record per job (default file: bench/<suite>.jsonl
  in the tdrefine home folder).  Jobs are distributed over --workers
  processes (default: the 'workers' config parameter).  With a fixed
  seed the output file is identical across runs, unless --timing adds
  wall times to the records.

  Suites: {', '.join(io.suites)}.

Examples
  tdrefine bench --suite smoke
  tdrefine bench --suite random --workers 4 --seed 3"""
    bench = sp.add_parser('bench', description=bench_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    bench.add_argument('--suite', action='store', default='smoke',
        choices=list(io.suites), help='Benchmark suite (default: smoke).')
    bench.add_argument('--workers', type=int, help='Number of processes.')
    bench.add_argument('--seed', type=int, help='Random seed.')
    bench.add_argument('-o', '--output', action='store',
        help='Output JSON-lines file.')
    bench.add_argument('--timing', action='store_true', default=False,
        help='Add wall times to the stats records.')
    bench.set_defaults(func=cli_bench)


    config_description = f"""
{u.BOLD}Manage the tdrefine configuration parameters.{u.END}

Description
  This command displays or sets the value of tdrefine config parameters.
  These are the parameters that can be set by the user:
  - seed                default seed of the random graph families.
  - oracle_max_vertices vertex cap of the exact routines.
  - oracle_max_subsets  subset cap of the exact routines.
  - heuristic           elimination heuristic for width witnesses.
  - style               color-syntax style of displayed reports.
  - workers             number of processes for 'tdrefine bench'.
  - home                tdrefine home directory (stats, benchmarks).

  The number of arguments determines the action of this command (see
  examples below):
  - with no arguments, display all available parameters and values.
  - with the 'param' argument, display detailed info on the specified
    parameter and its current value.
  - with both 'param' and 'value' arguments, set the value of the parameter.

Examples
  # Display all config parameters and values:
  tdrefine config
  # Display value and help for the heuristic parameter:
  tdrefine config heuristic
  # Set the number of benchmark workers:
  tdrefine config workers 4"""
    config = sp.add_parser('config', description=config_description,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    config.add_argument('param', action='store', nargs='?',
        help='A tdrefine config parameter.')
    config.add_argument('value', action='store', nargs='?',
        help='Value for a tdrefine config parameter.')
    config.set_defaults(func=cli_config)


    # Parse command-line args:
    args = parser.parse_args(argv)

    # Version check:
    try:
        cm.check_version()
    except ValueError as e:
        print(f"\nError: {str(e)}")
        return 1

    if not hasattr(args, 'func'):
        parser.print_help()
        return 0
    # Make tdrefine calls:
    try:
        status = args.func(args)
    except u.CertificateError as e:
        print(f"Certificate failure: {str(e)}")
        return 2
    except (ValueError, OSError) as e:
        print(f"\nError: {str(e)}")
        return 1
    return 0 if status is None else status


if __name__ == "__main__":
    sys.exit(main())
