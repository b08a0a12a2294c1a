"""
Algebroidpy - Numerical value distribution of algebroid curves in Python

Algebroid curves are multi-valued maps into projective space whose
coordinates are roots of polynomial equations with meromorphic
coefficients. The package builds their ramified coverings and evaluates
the functionals of Nevanlinna theory on them.
"""

__all__ = [
    '__version__',
    'RationalFunction', 'AnalyticExpr', 'parse_coefficient',
    'DefiningPolynomial', 'AlgebroidCurve', 'curve',
    'sylvester_matrix', 'resultant', 'discriminant', 'square_free_part',
    'alg_op', 'alg_negate', 'alg_reciprocal',
    'CriticalData', 'critical_data',
    'PathSpec', 'Segment',
    'Fiber', 'solve_fiber', 'track',
    'MonodromyPermutation', 'path_monodromy', 'monodromy', 'branch_order',
    'lasso_path', 'lasso_monodromy', 'monodromy_generators',
    'compose', 'sheet_orbits', 'is_irreducible',
    'PuiseuxSeries', 'puiseux_expand',
    'CoveringModel', 'BranchRecord', 'ValueDivisor', 'BranchDivisor',
    'build_covering', 'lift_evaluate', 'value_divisor',
    'jk_orders', 'jk_divisor', 'check_esti', 'covering_report',
    'HyperplaneTarget', 'GreenKernel', 'as_targets',
    'QuadratureSettings', 'fiber_values', 'fs_density',
    'characteristic', 'characteristic_series', 'green_characteristic',
    'proximity', 'counting', 'branch_counting', 'shift_origin',
    'fmt_check', 'first_main_identity', 'bran_bound_check',
    'Experiment',
    'SMTConfig', 'general_position_check', 'smt_margin', 'defects',
    'omitted_values', 'shared_values',
    'KappaProfile', 'VolumeProfile', 'chi', 'jacobi_G',
    'comparison_table', 'comparison_check', 'K_factor',
    'logK_bound_check', 'H_factors', 'green_band',
    'ProblemFile', 'RunManifest', 'RadiusGrid', 'DataDict',
    'reportplot', 'coveringplot',
    'batch_roots', 'zeros_in_disk', 'aberth',
    'AttrDict', 'AlgebroidError', 'examples',
]

from .version import __version__

from .field import RationalFunction, AnalyticExpr, parse_coefficient
from .defining import DefiningPolynomial, AlgebroidCurve, curve
from .defining import (sylvester_matrix, resultant, discriminant,
                       square_free_part, alg_op, alg_negate, alg_reciprocal)
from .defining import CriticalData, critical_data
from .paths import PathSpec, Segment
from .continuation import Fiber, solve_fiber, track
from .continuation import (MonodromyPermutation, path_monodromy, monodromy,
                           branch_order, lasso_path, lasso_monodromy,
                           monodromy_generators, compose, sheet_orbits,
                           is_irreducible)
from .continuation import PuiseuxSeries, puiseux_expand
from .covering import CoveringModel, BranchRecord, ValueDivisor, BranchDivisor
from .covering import (build_covering, lift_evaluate, value_divisor,
                       jk_orders, jk_divisor, check_esti, covering_report)
from .targets import HyperplaneTarget, GreenKernel, as_targets
from .nevanlinna import QuadratureSettings, fiber_values, fs_density
from .nevanlinna import (characteristic, characteristic_series,
                         green_characteristic, proximity, counting,
                         branch_counting, shift_origin, fmt_check,
                         first_main_identity, bran_bound_check)
from .experiment import Experiment
from .smt import (SMTConfig, general_position_check, smt_margin, defects,
                  omitted_values, shared_values)
from .curvature import (KappaProfile, VolumeProfile, chi, jacobi_G,
                        comparison_table, comparison_check, K_factor,
                        logK_bound_check, H_factors, green_band)
from .problem import ProblemFile, RunManifest
from .sample import RadiusGrid
from .datadict import DataDict
from .visualization import reportplot, coveringplot
from .roots import batch_roots, zeros_in_disk, aberth
from .tools import AttrDict, AlgebroidError
from .tools import (
    Pole, Indeterminate, DivisionByZeroFunction, ParseError,
    BackendUnsupported, DegreeTooLow, ZeroFunction, NotInvertible,
    RootFindingFailure, NearCritical, PoleAtBase, StepCollapse,
    SheetCollision, LoopContainsOtherBranchPoints, ExpansionDiverged,
    Inconclusive, PathCrossesBranchSet, TargetDegenerate,
    QuadratureBudgetExceeded, BoundaryHitsDivisor, DivisorPointAtOrigin,
    DegenerateTargets, NotTranscendentalEnough, SolverFailure,
    NonParabolicityViolated, ProblemFileError)
from . import examples
