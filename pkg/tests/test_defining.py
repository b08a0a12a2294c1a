import pytest
import numpy as np
import sympy as sp
import algebroidpy as ag

from algebroidpy.field import z
from algebroidpy.roots import newton_polish
from algebroidpy.tools import (DegreeTooLow, BackendUnsupported,
                               NotInvertible, ZeroFunction, ProblemFileError)


def same(f, expr):
    return sp.simplify(f.as_expr() - expr) == 0


def test_defining_polynomial():

    P = ag.DefiningPolynomial(['-z', 0, 1])
    assert P.degree == 2
    assert P.__repr__() == "DefiningPolynomial(W**2 - z)"
    assert ag.DefiningPolynomial(['-z', 1, 0]).degree == 1
    assert P.to_dict() == {'var': 'W', 'coeffs': ['-z', '0', '1']}

    with pytest.raises(DegreeTooLow):
        ag.DefiningPolynomial(['z'])
    with pytest.raises(DegreeTooLow):
        ag.DefiningPolynomial(['z', 0])


def test_cleared():

    P = ag.DefiningPolynomial(['1/z', 0, '1/(z+1)'])
    numers, s = P.cleared()
    assert [n.as_expr() for n in numers] == [z + 1, 0, z]
    assert same(s, 1 / (z * (z + 1)))
    assert P.monic().leading == 1
    assert P.is_proportional(ag.DefiningPolynomial(['z+1', 0, 'z']))


def test_curve():

    C = ag.curve(['-z', 0, 1])
    assert C.__repr__() == "AlgebroidCurve (d=1, ν=2, exact)"
    C2 = ag.AlgebroidCurve([['-z', 0, 1], ['-z', 0, 0, 1]])
    assert C2.d == 2
    assert C2.degrees == (2, 3)
    assert C2.total_sheets == 6
    assert ag.AlgebroidCurve.from_dict(C2.to_dict()) == C2

    with pytest.raises(BackendUnsupported):
        ag.AlgebroidCurve([ag.DefiningPolynomial(['-z', 1]),
                           ag.DefiningPolynomial(['-exp(z)', 1],
                                                 backend='numeric')])
    with pytest.raises(ProblemFileError):
        ag.AlgebroidCurve.from_dict({})
    with pytest.raises(ProblemFileError):
        ag.AlgebroidCurve([{'var': 'W1'}])


def test_resultant_and_discriminant():

    P = ag.DefiningPolynomial(['-z', 0, 1])
    Q = ag.DefiningPolynomial([-1, 1])
    assert same(ag.resultant(P, Q), 1 - z)
    assert same(ag.resultant(P, Q, method='sylvester'), 1 - z)
    assert same(ag.discriminant(P), 4 * z)
    assert ag.sylvester_matrix(P, Q).shape == (3, 3)

    cusp = ag.examples.cusp()[0]
    assert same(ag.discriminant(cusp), 4 * z**3)

    with pytest.raises(DegreeTooLow):
        ag.discriminant(Q)
    with pytest.raises(ValueError):
        ag.resultant(P, Q, method='other')


def test_square_free_part():

    P = ag.DefiningPolynomial(['z**2', '-2*z', 1])  # (W - z)^2
    S = ag.square_free_part(P)
    assert S.degree == 1


def sorted_roots(P, zv):
    fiber = ag.solve_fiber(ag.AlgebroidCurve([P]), zv)
    return sorted(fiber.values[:, 0], key=lambda w: (w.real, w.imag))


def test_field_operations():

    P1 = ag.DefiningPolynomial(['-z', 1])
    P2 = ag.DefiningPolynomial([-1, 1])
    S = ag.alg_op(P1, P2, 'sum')
    assert S.degree == 1
    assert sorted_roots(S, 2)[0] == pytest.approx(3)
    D = ag.alg_op(P1, P2, 'difference')
    assert sorted_roots(D, 2)[0] == pytest.approx(1)
    Q = ag.alg_op(P1, ag.DefiningPolynomial([-2, 1]), 'quotient')
    assert sorted_roots(Q, 3)[0] == pytest.approx(1.5)

    root = ag.DefiningPolynomial(['-z', 0, 1])
    prod = ag.alg_op(root, root, 'product')
    assert prod.degree == 2
    assert sorted_roots(prod, 2) == pytest.approx([-2, 2])

    neg = ag.alg_negate(P1)
    assert sorted_roots(neg, 2)[0] == pytest.approx(-2)
    rec = ag.alg_reciprocal(P1)
    assert sorted_roots(rec, 4)[0] == pytest.approx(0.25)

    with pytest.raises(NotInvertible):
        ag.alg_reciprocal(ag.DefiningPolynomial([0, 1]))
    with pytest.raises(ZeroFunction):
        ag.alg_op(root, ag.DefiningPolynomial([0, 1]), 'product')
    with pytest.raises(ValueError):
        ag.alg_op(P1, P2, 'power')


def test_critical_data():

    crit = ag.critical_data(ag.curve(['-z', 0, 1]), 2)
    assert len(crit.critical_points) == 1
    assert abs(crit.critical_points[0]) < 1e-12

    crit = ag.critical_data(ag.examples.cusp(), 2)
    assert len(crit.multiple_points) == 1
    (p, order), = crit.multiple_orders[0]
    assert abs(p) < 1e-6
    assert order == 3

    crit = ag.critical_data(ag.examples.pole_curve(), 3)
    assert len(crit.critical_points) == 2
    assert crit.leading_coeff_zeros[0] == pytest.approx(2)
    assert crit.nearest(1) == pytest.approx(1)
    assert crit.nearest(0.1, exclude=0) == pytest.approx(1.9)

    # Numeric backend
    crit = ag.critical_data(ag.examples.exp_root(2), 3)
    assert crit.critical_points == ()


def random_polynomial(rng):
    nu = int(rng.integers(1, 4))
    a = [int(rng.choice([-3, -2, -1, 1, 2, 3]))]
    a += [int(x) for x in rng.integers(-3, 4, size=nu - 1)]
    b = [int(x) for x in rng.integers(-3, 4, size=nu)]
    coeffs = [f'({ai})+({bi})*z' for ai, bi in zip(a, b)]
    lead = int(rng.choice([-2, -1, 1, 2]))
    return ag.square_free_part(ag.DefiningPolynomial(coeffs + [lead]))


def root_set(P, zv):
    coeffs = P.coeff_values(zv)
    return newton_polish(coeffs, np.roots(coeffs[::-1]), steps=3)


def min_gap(points):
    if len(points) < 2:
        return np.inf
    d = np.abs(points[:, None] - points[None, :])
    return d[np.triu_indices(len(points), 1)].min()


def hausdorff(a, b):
    d = np.abs(a[:, None] - b[None, :]) / np.maximum(1, np.abs(a))[:, None]
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def test_field_operation_root_sets():

    ops = {'sum': np.add, 'difference': np.subtract,
           'product': np.multiply, 'quotient': np.divide}
    rng = np.random.default_rng(42)
    for i in range(200):
        op = list(ops)[i % 4]
        P1, P2 = random_polynomial(rng), random_polynomial(rng)
        result = ag.alg_op(P1, P2, op)
        checked = 0
        for _ in range(1000):
            if checked == 20:
                break
            zv = complex(*rng.uniform(-2, 2, size=2))
            r1, r2 = root_set(P1, zv), root_set(P2, zv)
            if min(min_gap(r1), min_gap(r2), np.abs(r2).min()) < 0.05:
                continue
            pairs = ops[op].outer(r1, r2).ravel()
            gaps = np.abs(pairs[:, None] - pairs[None, :])
            if ((gaps > 1e-9) & (gaps < 0.05)).any():
                continue
            coeffs = result.coeff_values(zv)
            if abs(coeffs[-1]) < 1e-3 * np.abs(coeffs).max():
                continue
            roots = root_set(result, zv)
            assert hausdorff(roots, pairs) < 1e-8, (op, P1, P2, zv)
            checked += 1
        assert checked == 20, (op, P1, P2)
