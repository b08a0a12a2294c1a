"""
Algebroidpy Command Line Module
Content: Subcommands that front the module operations
"""

import argparse
import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from .continuation import (solve_fiber, track, monodromy, puiseux_expand,
                           branch_order)
from .covering import build_covering, check_esti, covering_report
from .curvature import (KappaProfile, VolumeProfile,
                        comparison_table, K_factor, H_factors, green_band)
from .datadict import DataDict, _atomic_write, _json_text
from .defining import critical_data
from .experiment import Experiment
from .nevanlinna import (QuadratureSettings, characteristic_series,
                         fmt_check, bran_bound_check)
from .paths import PathSpec
from .problem import ProblemFile, RunManifest
from .smt import SMTConfig, smt_margin, defects
from .targets import _format
from .tools import AlgebroidError, parse_complex
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2


class CheckFailed(Exception):
    """ A numerical assertion of a command did not hold. """


# Problem setup ----------------------------------------------------------- #

def _load_targets(spec):
    """ Targets from a JSON file or a comma separated list. """
    if spec is None:
        return None
    if spec.endswith('.json'):
        with open(spec, 'r') as fp:
            data = json.load(fp)
        return data['targets'] if isinstance(data, dict) else data
    return [s.strip() for s in spec.split(',') if s.strip()]


def _problem(args):
    """ Reads the problem file and applies flag overrides. """
    problem = ProblemFile.load(args.problem) if args.problem \
        else ProblemFile()
    data = problem.to_dict()
    for key in ('rmin', 'rmax', 'steps'):
        value = getattr(args, key, None)
        if value is not None:
            data['grid'][key] = value
    if getattr(args, 'targets', None):
        data['targets'] = _load_targets(args.targets)
    if getattr(args, 'target', None):
        data['targets'] = [args.target]
    if getattr(args, 'delta', None) is not None:
        data['delta'] = args.delta
    if getattr(args, 'seed', None) is not None:
        data['seed'] = args.seed
    if getattr(args, 'tol', None) is not None:
        data['tolerances']['quadrature'] = args.tol
    if getattr(args, 'radius_disk', None) is not None:
        data['disk_radius'] = args.radius_disk
    return ProblemFile(data)


def _settings(problem):
    return QuadratureSettings(rtol=problem.tolerances.quadrature,
                              seed=problem.seed)


def _model(problem, curve=None):
    curve = curve or problem.build_curve()
    return build_covering(curve, problem.radius(),
                          base_point=problem.base_point)


def _fmt_point(zv):
    return _format(complex(zv))


# Output ------------------------------------------------------------------ #

def _emit(report, args):
    """ Writes a report to the output directory, if one is given. """
    if not args.out_dir:
        return None
    if args.format == 'json':
        os.makedirs(args.out_dir, exist_ok=True)
        data = {k: (v.to_dict(orient='list') if isinstance(v, pd.DataFrame)
                    else v) for k, v in report.items()}
        path = os.path.join(args.out_dir, f"{report.info['command']}.json")
        _atomic_write(path, _json_text(data))
        return path
    return report.save(path=args.out_dir, display=False)


def _report(command, problem, **entries):
    report = DataDict(entries)
    report.info = RunManifest(command, problem)
    return report


# Commands ---------------------------------------------------------------- #

def cmd_define(args):
    problem = _problem(args)
    curve = problem.build_curve()
    crit = critical_data(curve, problem.radius())
    print(f"{curve}")
    for P in curve.components:
        print(f"  {P.var}: {P.as_expr()} = 0")
    print(f"critical points: "
          f"{', '.join(_fmt_point(p) for p in crit.critical_points)}")
    report = _report('define', problem, curve=curve.to_dict(), critical={
        'critical_points': [[p.real, p.imag] for p in crit.critical_points],
        'multiple_points': [[p.real, p.imag] for p in crit.multiple_points],
        'leading_coeff_zeros': [[p.real, p.imag]
                                for p in crit.leading_coeff_zeros]})
    report.info.finish()
    _emit(report, args)


def cmd_fiber(args):
    problem = _problem(args)
    curve = problem.build_curve()
    fiber = solve_fiber(curve, parse_complex(args.at),
                        problem.tolerances.separation,
                        problem.tolerances.residual)
    for row in fiber:
        print(', '.join(_fmt_point(w) for w in row))
    report = _report('fiber', problem, fiber=fiber.to_dict())
    report.info.finish()
    _emit(report, args)


def cmd_track(args):
    problem = _problem(args)
    curve = problem.build_curve()
    if args.path:
        with open(args.path, 'r') as fp:
            path = PathSpec.from_dict(json.load(fp))
    else:
        path = PathSpec.straight(parse_complex(args.start),
                                 parse_complex(args.end))
    start = solve_fiber(curve, path.start)
    end = track(curve, path, start)
    for row in end:
        print(', '.join(_fmt_point(w) for w in row))
    report = _report('track', problem, path=path.to_dict(),
                     start=start.to_dict(), end=end.to_dict())
    report.info.finish()
    _emit(report, args)


def cmd_monodromy(args):
    problem = _problem(args)
    curve = problem.build_curve()
    perm = monodromy(curve, parse_complex(args.around), args.radius)
    print(f"cycle type: ({', '.join(str(k) for k in perm.cycle_lengths)})")
    print(f"permutation: {list(perm.permutation)}")
    report = _report('monodromy', problem, monodromy={
        'branch_point': [perm.branch_point.real, perm.branch_point.imag],
        'permutation': list(perm.permutation),
        'cycle_lengths': list(perm.cycle_lengths),
        'loop_radius': perm.loop_radius})
    report.info.finish()
    _emit(report, args)


def cmd_puiseux(args):
    problem = _problem(args)
    curve = problem.build_curve()
    series = puiseux_expand(curve, parse_complex(args.at), args.terms)
    rows = []
    for s in series:
        terms = ' + '.join(f"({_fmt_point(b)}) t^{e}"
                           for e, b in zip(s.exponents, s.coefficients))
        print(f"W{s.component + 1}, λ={s.ramification}: {terms}")
        rows += [{'component': s.component + 1, 'ramification': s.ramification,
                  'exponent': str(e), 'real': b.real, 'imag': b.imag}
                 for e, b in zip(s.exponents, s.coefficients)]
    report = _report('puiseux', problem, table=pd.DataFrame(rows))
    report.info.finish()
    _emit(report, args)


def cmd_branch(args):
    problem = _problem(args)
    model = _model(problem)
    if args.at is not None:
        l, lengths = branch_order(model.curve, parse_complex(args.at),
                                  model.critical)
        print(f"cycles: {l}, cycle type: {tuple(lengths)}")
    esti = check_esti(model)
    for rec in model.branch_records:
        print(f"{_fmt_point(rec.point)}: cycle type "
              f"{tuple(rec.cycle_lengths)}, order {rec.order}")
    report = _report('branch', problem, covering=covering_report(model),
                     esti=esti.table.astype({'point': str}))
    report.info.finish(model.warnings)
    _emit(report, args)
    if not esti.passed:
        raise CheckFailed("Branch divisor exceeds the discriminant divisor")


def cmd_nevanlinna(args):
    problem = _problem(args)
    model = _model(problem)
    exp = Experiment(model, problem.build_targets(model.curve.d),
                     problem.build_grid(), _settings(problem), problem)
    report = exp.run(display=args.verbose)
    print(report.table.to_string(index=False))
    _emit(report, args)


def cmd_fmt(args):
    problem = _problem(args)
    model = _model(problem)
    settings = _settings(problem)
    grid = list(problem.build_grid())
    table = characteristic_series(model, grid, settings)
    results = [fmt_check(model, t, grid, problem.tolerances.fmt, settings,
                         table) for t in problem.build_targets(model.curve.d)]
    bran = bran_bound_check(model, grid, problem.tolerances.bran,
                            characteristic_table=table)
    summary = {r.target: {'median': r.median,
                          'max_deviation': r.max_deviation,
                          'passed': r.passed} for r in results}
    summary['bran_bound'] = {'max_growth': bran.max_growth,
                             'passed': bran.passed}
    out = table[['r', 'T']].copy()
    for r in results:
        out[f'm_{r.target}'] = r.table['m'].to_numpy()
        out[f'N_{r.target}'] = r.table['N'].to_numpy()
        out[f'fmt_residual_{r.target}'] = r.table['residual'].to_numpy()
        print(f"{r.target}: max deviation {r.max_deviation:.3g} "
              f"({'passed' if r.passed else 'failed'})")
    out['N_bran'] = bran.table['N_bran'].to_numpy()
    report = _report('fmt', problem, table=out, summary=summary)
    report.info.finish(model.warnings)
    _emit(report, args)
    if not all(r.passed for r in results) or not bran.passed:
        raise CheckFailed("First main theorem residual is not bounded")


def cmd_smt(args):
    problem = _problem(args)
    model = _model(problem)
    settings = _settings(problem)
    grid = list(problem.build_grid())
    table = characteristic_series(model, grid, settings)
    config = SMTConfig(problem.build_targets(model.curve.d), grid,
                       problem.delta, problem.tolerances.smt_margin,
                       volume=args.volume, n=model.curve.d)
    result = smt_margin(model, config, settings, table)
    report = _report('smt', problem, table=result.table,
                     summary=result.summary)
    if args.defects:
        d = defects(model, config.targets, grid, settings, table)
        report['defects'] = d.table
        report.summary.update(defect_total=d.total, defect_bound=d.bound,
                              omitted=d.omitted.omitted,
                              defects_passed=d.passed)
    s = result.summary
    print(f"q={s['q']}, coefficient {s['coefficient']}, min normalized "
          f"slack on top decile {s['top_decile_min_normalized_slack']:.4g} "
          f"({'passed' if s['passed'] else 'failed'})")
    report.info.finish(model.warnings)
    _emit(report, args)
    if not s['passed'] or not report.summary.get('defects_passed', True):
        raise CheckFailed("Second main theorem slack check failed")


def cmd_curvature(args):
    with open(args.profile, 'r') as fp:
        profile = json.load(fp)
    problem = _problem(args)
    delta = profile.get('delta', problem.delta)
    if args.op == 'jacobi':
        kappa = KappaProfile(profile['kappa'])
        ts = profile.get('t', np.linspace(0, 10, 51).tolist())
        table = comparison_table(kappa, ts)
    elif args.op == 'kfactor':
        kappa = KappaProfile(profile.get('kappa', 0))
        rs = profile.get('r', [2, 10, 100])
        table = pd.DataFrame({'r': rs, 'K': [K_factor(
            r, delta, kappa, profile.get('m', 1)) for r in rs]})
    else:
        volume = VolumeProfile(profile['volume'])
        rs = profile.get('r', [2, 10, 100])
        H = [H_factors(volume, r, delta) for r in rs]
        band = [green_band(volume, r) for r in rs]
        table = pd.DataFrame({'r': rs, 'H': [h[0] for h in H],
                              'H_delta': [h[1] for h in H],
                              'green_tail': [b[0] for b in band]})
    print(table.to_string(index=False))
    report = _report('curvature', problem, table=table,
                     profile=profile)
    report.info.finish()
    _emit(report, args)


# Parser ------------------------------------------------------------------ #

def _common(p, grid=False, targets=False):
    p.add_argument('--problem', help="problem file (JSON)")
    p.add_argument('--seed', type=int)
    p.add_argument('--tol', type=float, help="quadrature tolerance")
    p.add_argument('--out-dir', dest='out_dir', help="output directory")
    p.add_argument('--format', choices=['csv', 'json'], default='csv')
    p.add_argument('--verbose', '-v', action='store_true')
    if grid:
        p.add_argument('--rmin', type=float)
        p.add_argument('--rmax', type=float)
        p.add_argument('--steps', type=int)
        p.add_argument('--disk-radius', dest='radius_disk', type=float)
    if targets:
        p.add_argument('--targets', help="targets file or list")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='algebroid',
        description="Numerical value distribution of algebroid curves")
    parser.add_argument('--version', action='version',
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('define', help="parse a curve, list critical points")
    _common(p, grid=True)
    p.set_defaults(func=cmd_define)

    p = sub.add_parser('fiber', help="sheets above a point")
    _common(p)
    p.add_argument('--at', required=True)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser('track', help="continue a fiber along a path")
    _common(p)
    p.add_argument('--path', help="path file (JSON)")
    p.add_argument('--from', dest='start', default='1')
    p.add_argument('--to', dest='end', default='2')
    p.set_defaults(func=cmd_track)

    p = sub.add_parser('monodromy', help="monodromy around a point")
    _common(p)
    p.add_argument('--around', required=True)
    p.add_argument('--radius', type=float)
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser('puiseux', help="Puiseux expansions at a point")
    _common(p)
    p.add_argument('--at', required=True)
    p.add_argument('--terms', type=int, default=3)
    p.set_defaults(func=cmd_puiseux)

    p = sub.add_parser('branch', help="branch divisor and its estimate")
    _common(p, grid=True)
    p.add_argument('--at')
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser('nevanlinna', help="Nevanlinna functionals on a grid")
    _common(p, grid=True, targets=True)
    p.set_defaults(func=cmd_nevanlinna)

    p = sub.add_parser('fmt', help="first main theorem residuals")
    _common(p, grid=True, targets=True)
    p.add_argument('--target')
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser('smt', help="second main theorem slack")
    _common(p, grid=True, targets=True)
    p.add_argument('--delta', type=float)
    p.add_argument('--volume', help="volume profile for the log H column")
    p.add_argument('--defects', action='store_true')
    p.set_defaults(func=cmd_smt)

    p = sub.add_parser('curvature', help="curvature model evaluators")
    _common(p)
    p.add_argument('--op', choices=['jacobi', 'kfactor', 'hfactor'],
                   required=True)
    p.add_argument('--profile', required=True)
    p.add_argument('--delta', type=float)
    p.set_defaults(func=cmd_curvature)

    return parser


def main(argv=None):
    """ Runs a subcommand. Returns 0 on success, 2 if a numerical check
    fails, and 1 on errors. """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose
                        else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        args.func(args)
    except CheckFailed as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except AlgebroidError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK
