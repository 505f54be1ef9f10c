# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'MODES',
    'suites',
    'mode_bounds',
    'refine',
    'stats_record',
    'append_stats',
    'bench_jobs',
    'bench',
]

import os
import json
import time
import pathlib
from collections import Counter
from fractions import Fraction
from multiprocessing import Pool

from .. import graph_manager as gm
from .. import decomp_manager as dm
from .. import slick_manager as sl
from .. import division_manager as dv
from .. import weak_manager as wm
from .. import oracle_manager as om
from .. import config_manager as cm
from .. import utils as u
from ..version import __version__


MODES = ('slick', 'small', 'slick-small', 'weak', 'combined', 'partition')

# Benchmark suites as (family, parameters) lists, and the modes they run:
suites = {
    'smoke': (
        [('grid', {'n': n}) for n in range(3, 7)]
        + [('cycle', {'n': n}) for n in (8, 20, 50)]
        + [('fan', {'n': n}) for n in (10, 30)]
        + [('path', {'n': n}) for n in (10, 40)],
        MODES),
    'grid': (
        [('grid', {'n': n}) for n in range(3, 11)],
        ('slick', 'small', 'slick-small', 'combined')),
    'cycle': (
        [('cycle', {'n': n}) for n in (10, 25, 50, 100, 200)],
        MODES),
    'random': (
        [('random_ktree_partial', {'n': n, 'k': k, 'p': 0.7})
         for n in (30, 60, 120) for k in (2, 3)]
        + [('tree_random', {'n': n}) for n in (50, 200)],
        ('slick', 'small', 'combined', 'partition')),
}


def _number(value):
    """JSON-friendly form of an exact bound."""
    if value is None:
        return None
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return round(float(value), 6)


def _resolve(mode, td, k, d, g):
    """Resolve the default k and d of a mode."""
    width = dm.width(td)
    if mode in ('slick', 'slick-small'):
        k = max(width, 0) if k is None else k
    elif mode == 'small':
        k = max(width, 1) if k is None else k
    else:
        k = max(width+1, 1) if k is None else k
    if mode == 'weak':
        d = 2 if d is None else d
    elif mode == 'combined':
        d = 2
    elif mode == 'partition':
        d = gm.max_degree(g) + 2
    else:
        d = None
    return k, d


def mode_bounds(mode, n, max_degree, k, d=None, ell=None, t=None):
    """
    Proven bounds of a mode's output.

    Parameters
    ----------
    mode: String
        One of MODES.
    n: Integer
        Number of vertices.
    max_degree: Integer
        Maximum degree of the graph.
    k: Integer
        The resolved width parameter of the mode.
    d: Integer
        Slickness parameter (weak, combined, and partition modes).
    ell, t: Integer
        General alpha_beta parameters (slick mode only).

    Returns
    -------
    bounds: Dict with width, order, degree, and max_spread bounds
        (None where the mode guarantees nothing).

    Examples
    --------
    >>> import tdrefine.io_manager as io
    >>> io.mode_bounds('slick', n=25, max_degree=4, k=5)
    {'width': 83, 'order': None, 'degree': 6, 'max_spread': 5}
    >>> io.mode_bounds('combined', n=20, max_degree=2, k=3)['width']
    217
    """
    if mode not in MODES:
        raise ValueError(
            f"Invalid mode '{mode}'.  Available modes are: {list(MODES)}")
    slick_spread = max_degree + 1
    bounds = dict(width=None, order=None, degree=None, max_spread=None)
    if mode == 'slick':
        if ell is None and t is None:
            bounds.update(width=14*k+13, degree=6, max_spread=slick_spread)
        else:
            limits = sl.alpha_beta_bounds(ell, t)
            bounds.update(
                width=limits['bag_size']-1, degree=limits['degree'],
                max_spread=slick_spread)
    elif mode == 'small':
        bounds.update(
            width=3*k-1, order=max(Fraction(n, k)-1, 1))
    elif mode == 'slick-small':
        bounds.update(
            width=56*k+58, order=max(Fraction(n, 14*k+14), 1),
            max_spread=slick_spread)
    elif mode == 'weak':
        bounds.update(
            width=18*k*d, degree=6*d, order=max(Fraction(n, 2*k), 1),
            max_spread=max_degree//(d-1) + 1)
    elif mode == 'combined':
        bounds.update(
            width=72*k+1, degree=12, order=max(Fraction(n, 2*k), 1),
            max_spread=slick_spread)
    elif mode == 'partition':
        bounds.update(
            width=18*k*d, degree=6*d, order=max(Fraction(n, 2*k), 1),
            max_spread=1)
    return bounds


def _build(g, td, mode, k, d, ell, t, counters):
    if mode == 'slick':
        if ell is None and t is None:
            return sl.slick_main(g, td, k, counters=counters)
        return sl.alpha_beta(g, td, ell, t, counters=counters)
    if mode == 'small':
        return dv.small_tree_decomp(g, td, k)
    if mode == 'slick-small':
        return dv.slick_and_small(g, td, k, counters=counters)
    if mode == 'weak':
        return wm.weak_tree_decomp_gen(g, td, k, d, counters=counters)
    if mode == 'combined':
        return wm.spread_small_degree(g, td, k, counters=counters)
    return wm.tree_partition(g, td, k, counters=counters)


def _verify(mode, out, bounds):
    """Re-check an output against its definition and proven bounds."""
    violations = dm.validate(out)
    u.certify(
        len(violations) == 0, f'refine {mode} validity',
        dm.report_text(violations).strip())
    if mode in ('slick', 'slick-small', 'combined'):
        slick, witness = dm.is_slick(out, 1)
        u.certify(slick, f'refine {mode} slickness', f'failing at {witness}')
    achieved = {
        'width': dm.width(out),
        'order': dm.order(out),
        'degree': dm.degree(out),
        'max_spread': dm.max_spread(out),
    }
    for key, bound in bounds.items():
        if bound is not None:
            u.certify(
                achieved[key] <= bound, f'refine {mode} {key}',
                f'{achieved[key]} > {bound}')


def refine(
        g, td=None, mode='slick', k=None, d=None, ell=None, t=None,
        verify=True, graph_id='graph', budget=None, heuristic=None,
        timing=False,
    ):
    """
    Run one construction on a graph and collect its stats record.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        Input strong decomposition of g.  If None, compute a width
        witness (exact under the oracle budget, heuristic otherwise).
    mode: String
        One of: slick, small, slick-small, weak, combined, partition.
    k: Integer
        Width parameter of the mode (defaults from the input width).
    d: Integer
        Slickness parameter of the weak mode (default 2).
    ell, t: Integer
        General alpha_beta parameters for the slick mode.  Missing ones
        default to ell = 2(k+1) and t = 2*ell.
    verify: Bool
        Re-validate the output and its bounds before returning.
    graph_id: String
        Name of the graph in the stats record.
    budget: oracle_manager.OracleBudget
        Budget for the width witness (default from the config).
    heuristic: String
        Elimination heuristic for the width witness (default from the
        config).
    timing: Bool
        Add the wall time of the construction to the record.  Off by
        default, since it makes records differ between identical runs.

    Returns
    -------
    out: TreeDecomposition
    record: Dict, see stats_record().
    """
    if mode not in MODES:
        raise ValueError(
            f"Invalid mode '{mode}'.  Available modes are: {list(MODES)}")
    if mode != 'slick' and (ell is not None or t is not None):
        raise ValueError("Parameters ell and t only apply to the slick mode.")
    if mode != 'weak' and d is not None:
        raise ValueError("Parameter d only applies to the weak mode.")
    if td is None:
        if budget is None:
            budget = om.OracleBudget.from_config()
        if heuristic is None:
            heuristic = cm.get('heuristic')
        td = om.width_witness(g, budget, heuristic)

    k, d = _resolve(mode, td, k, d, g)
    if mode == 'slick' and (ell is not None or t is not None):
        ell = 2*(k+1) if ell is None else ell
        t = 2*ell if t is None else t
        if ell < 1 or t < 1:
            raise ValueError(
                f"Parameters ell and t must be positive, got {ell} and {t}.")

    counters = Counter()
    start = time.perf_counter()
    out = _build(g, td, mode, k, d, ell, t, counters)
    elapsed = time.perf_counter() - start

    bounds = mode_bounds(
        mode, g.number_of_nodes(), gm.max_degree(g), k, d, ell, t)
    if verify:
        _verify(mode, out, bounds)
    record = stats_record(
        graph_id, g, mode, out, bounds, k, d, counters, ell, t)
    if timing:
        record['time'] = round(elapsed, 4)
    return out, record


def stats_record(
        graph_id, g, mode, out, bounds, k, d=None, counters=None, ell=None,
        t=None,
    ):
    """
    Stats of one (graph, mode) run: graph size, parameters, achieved
    width/order/degree/max-spread next to their bounds, and case
    counters.  Records hold no wall time, so identical runs give
    identical records.
    """
    counters = {} if counters is None else counters
    return {
        'graph': graph_id,
        'n': g.number_of_nodes(),
        'm': g.number_of_edges(),
        'mode': mode,
        'k': k,
        'd': d,
        'ell': ell,
        't': t,
        'width': dm.width(out),
        'order': dm.order(out),
        'degree': dm.degree(out),
        'max_spread': dm.max_spread(out),
        'average_spread': _number(dm.average_spread(out)),
        'bounds': {key: _number(value) for key, value in bounds.items()},
        'counters': dict(sorted(counters.items())),
        'version': __version__,
    }


def append_stats(record, statsfile=None):
    """
    Append a stats record as one JSON line.

    Parameters
    ----------
    record: Dict
    statsfile: String
        Output file, defaults to the stats.jsonl file in the tdrefine
        home folder.
    """
    if statsfile is None:
        statsfile = u.TD_STATS()
    with open(statsfile, 'a', encoding='utf-8') as f:
        f.write(json.dumps(record) + '\n')


def bench_jobs(suite, seed=0):
    """
    The (graph id, family, parameters, seed, mode) jobs of a suite.
    """
    if suite not in suites:
        raise ValueError(
            f"Invalid benchmark suite '{suite}'.  Available suites are: "
            f"{list(suites)}")
    graphs, modes = suites[suite]
    jobs = []
    for family, params in graphs:
        tag = '_'.join(f'{key}{value}' for key, value in params.items())
        graph_id = f'{family}_{tag}'
        for mode in modes:
            jobs.append((graph_id, family, params, seed, mode))
    return jobs


def _run_job(job):
    """Run a single benchmark job (top-level for the worker pool)."""
    graph_id, family, params, seed, mode, budget, heuristic, timing = job
    g = gm.generate(family, seed=seed, **params)
    _, record = refine(
        g, mode=mode, graph_id=graph_id, budget=budget, heuristic=heuristic,
        timing=timing)
    return record


def bench(suite, workers=1, seed=None, statsfile=None, timing=False):
    """
    Run a benchmark suite and write its stats records (JSON lines, in
    job order).

    Parameters
    ----------
    suite: String
        One of: smoke, grid, cycle, random.
    workers: Integer
        Number of worker processes; 1 runs in the current process.
    seed: Integer
        Seed for the random families (see utils.get_seed()).
    statsfile: String
        Output file, defaults to <home>/bench/<suite>.jsonl.
    timing: Bool
        Add wall times to the records (see refine()).

    Returns
    -------
    records: List of stats records.
    """
    seed = u.get_seed(seed)
    if int(workers) != workers or workers < 1:
        raise ValueError(f"The number of workers must be >= 1, got {workers}.")
    budget = om.OracleBudget.from_config()
    heuristic = cm.get('heuristic')
    jobs = [
        job + (budget, heuristic, timing)
        for job in bench_jobs(suite, seed)]

    if workers == 1:
        records = [_run_job(job) for job in jobs]
    else:
        with Pool(workers) as pool:
            records = pool.map(_run_job, jobs)

    if statsfile is None:
        pathlib.Path(u.TD_BENCH()).mkdir(parents=True, exist_ok=True)
        statsfile = os.path.join(u.TD_BENCH(), f'{suite}.jsonl')
    with open(statsfile, 'w', encoding='utf-8') as f:
        for record in records:
            f.write(json.dumps(record) + '\n')
    return records
