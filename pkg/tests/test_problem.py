import pytest
import json
import numpy as np
import algebroidpy as ag

from algebroidpy.tools import ProblemFileError

curve = {'backend': 'exact', 'components': [['1-z', 0, 1]]}


def test_defaults():

    problem = ag.ProblemFile({'curve': curve})
    assert problem.tolerances.fmt == 0.05
    assert problem.tolerances.separation == 1e-8
    assert problem.grid.steps == 40
    assert problem.seed == 0
    assert problem.radius() == pytest.approx(105)
    assert ag.ProblemFile({'disk_radius': 7}).radius() == 7

    # Nested fields are merged with the defaults
    problem = ag.ProblemFile({'tolerances': {'fmt': 0.1}})
    assert problem.tolerances.fmt == 0.1
    assert problem.tolerances.bran == 0.1


def test_validation():

    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'colour': 'red'})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'tolerances': {'fmt': 0}})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'tolerances': {'fmt': -1e-3}})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'seed': 1.5})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'grid': {'rmin': 10, 'rmax': 1}})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile({'disk_radius': -2})
    with pytest.raises(ProblemFileError):
        ag.ProblemFile().build_curve()


def test_loads():

    with pytest.raises(ProblemFileError) as e:
        ag.ProblemFile.loads('{\n  "seed": 1,\n  "grid": }')
    assert 'line 3' in str(e.value)
    with pytest.raises(ProblemFileError):
        ag.ProblemFile.loads('[1, 2]')

    problem = ag.ProblemFile.loads(json.dumps({'curve': curve, 'seed': 4}))
    assert problem.seed == 4
    assert problem.build_curve() == ag.examples.root(2, 1)


def test_round_trip(tmp_path):

    rng = np.random.default_rng(1)
    for i in range(100):
        data = {
            'curve': {'backend': 'exact',
                      'components': [[f'{rng.integers(-5, 5)}-z', 0, 1]]},
            'grid': {'rmin': float(rng.uniform(1, 5)),
                     'rmax': float(rng.uniform(10, 1000)),
                     'steps': int(rng.integers(1, 60)),
                     'method': str(rng.choice(['log', 'linear']))},
            'targets': [f'value:{v}' for v in rng.integers(-9, 9, size=3)],
            'tolerances': {'fmt': float(rng.uniform(0.01, 0.1))},
            'delta': float(rng.uniform(0.01, 0.5)),
            'seed': int(rng.integers(0, 2 ** 31)),
        }
        problem = ag.ProblemFile(data)
        again = ag.ProblemFile.loads(problem.dumps())
        assert again == problem
        assert again.dumps() == problem.dumps()
        assert again.hash == problem.hash

    path = tmp_path / 'problem.json'
    problem.save(path)
    assert ag.ProblemFile.load(path) == problem
    assert ag.ProblemFile(problem.to_dict()) == problem


def test_hash():
    a = ag.ProblemFile({'curve': curve})
    b = ag.ProblemFile({'curve': curve, 'seed': 1})
    assert a.hash == ag.ProblemFile({'curve': curve}).hash
    assert a.hash != b.hash
    assert len(a.hash) == 64


def test_derived_objects():

    problem = ag.ProblemFile({
        'curve': curve,
        'grid': {'rmin': 10, 'rmax': 1000, 'steps': 3},
        'targets': ['value:0', 'value:inf']})
    assert problem.build_grid() == ag.RadiusGrid(10, 1000, 3)
    assert [t.label for t in problem.build_targets()] == ['0', 'inf']
    assert problem.build_curve().total_sheets == 2

    listed = ag.ProblemFile({'curve': [['-z', 1]]})
    assert listed.build_curve() == ag.examples.identity()


def test_manifest():

    problem = ag.ProblemFile({'curve': curve, 'seed': 7})
    info = ag.RunManifest('fmt', problem, sheets=2)
    assert info.command == 'fmt'
    assert info.seed == 7
    assert info.input_hash == problem.hash
    assert info.sheets == 2
    assert info.algebroidpy_version == ag.__version__
    assert not info.completed
    assert '_t0' not in info

    info.finish(['radius moved', 'radius moved'])
    assert info.completed
    assert info.warnings == ['radius moved']
    assert info.run_time is not None

    info = ag.RunManifest('define')
    assert info.input_hash is None


def test_base_point():

    problem = ag.ProblemFile({'curve': curve, 'base_point': '1-1i'})
    assert problem.base_point == '1-1i'
    for base in ['x', 1e6]:
        with pytest.raises(ProblemFileError):
            ag.ProblemFile({'curve': curve, 'base_point': base})
