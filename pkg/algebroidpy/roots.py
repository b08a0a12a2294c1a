"""
Algebroidpy Roots Module
Content: Simultaneous polynomial root finding and argument-principle zero search
"""

import logging
import numpy as np

from .tools import RootFindingFailure, cluster_points

logger = logging.getLogger(__name__)

START_OFFSET = 0.4  # Angular offset of Aberth start values (radians)


def polyval_asc(coeffs, w):
    """ Evaluates polynomials with ascending coefficients `A_0..A_n`.
    `coeffs` has shape (n+1, ...) and broadcasts against `w`. """
    acc = np.zeros(np.broadcast(coeffs[0], w).shape, dtype=complex)
    for c in coeffs[::-1]:
        acc = acc * w + c
    return acc


def _derivative_asc(coeffs):
    n = len(coeffs) - 1
    return [coeffs[j] * j for j in range(1, n + 1)]


def newton_polish(coeffs, roots, steps=2):
    """ Refines roots with a few Newton steps on the given polynomial. """
    coeffs = [complex(c) for c in coeffs]
    dcoeffs = _derivative_asc(coeffs)
    roots = np.array(roots, dtype=complex)
    for _ in range(steps):
        with np.errstate(all='ignore'):
            p = polyval_asc(coeffs, roots)
            dp = polyval_asc(dcoeffs, roots)
            step = np.where(dp != 0, p / dp, 0)
        ok = np.isfinite(step)
        roots = np.where(ok, roots - step, roots)
    return roots


def aberth(coeffs, tol=1e-14, maxiter=500):
    """ Finds all roots of a polynomial simultaneously
    with the Aberth-Ehrlich iteration.

    Start values are roots of unity rotated by a fixed offset and scaled
    by the geometric mean of the root moduli. If the iteration does not
    converge, the companion-matrix eigenvalues are used instead.

    Arguments:
        coeffs (array_like): Ascending coefficients `A_0, ..., A_n`
            with `A_n != 0`.
        tol (float, optional): Relative correction size at which
            the iteration stops (default 1e-14).
        maxiter (int, optional): Iteration limit (default 500).

    Returns:
        numpy.ndarray: The `n` roots.
    """

    a = np.array(coeffs, dtype=complex)
    n = len(a) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if a[-1] == 0:
        raise RootFindingFailure("Leading coefficient vanishes",
                                 {'coeffs': a.tolist()})
    if n == 1:
        return np.array([-a[0] / a[1]])
    da = np.array(_derivative_asc(a))

    scale = abs(a[0] / a[-1]) ** (1. / n)
    if scale == 0 or not np.isfinite(scale):
        scale = max(abs(a[:-1] / a[-1]).max(), 1.) ** (1. / n)
    k = np.arange(n)
    roots = scale * np.exp(1j * (2 * np.pi * k / n + START_OFFSET))

    for _ in range(maxiter):
        with np.errstate(all='ignore'):
            ratio = polyval_asc(a, roots) / polyval_asc(da, roots)
            diff = roots[:, None] - roots[None, :]
            np.fill_diagonal(diff, np.inf)
            sums = (1. / diff).sum(axis=1)
            step = ratio / (1. - ratio * sums)
        if not np.all(np.isfinite(step)):
            break
        roots = roots - step
        if np.all(np.abs(step) <= tol * np.maximum(1., np.abs(roots))):
            return newton_polish(a, roots, steps=1)
    logger.debug("Aberth iteration did not converge, "
                 "using companion eigenvalues")
    return newton_polish(a, np.roots(a[::-1]), steps=2)


def batch_roots(coeffs):
    """ Roots of many polynomials of the same degree at once,
    from eigenvalues of stacked companion matrices.

    Arguments:
        coeffs (numpy.ndarray): Ascending coefficients, shape (n+1, m).

    Returns:
        numpy.ndarray: Roots with shape (m, n). Polynomials whose
        leading coefficient vanishes give non-finite rows.
    """

    coeffs = np.asarray(coeffs, dtype=complex)
    n, m = coeffs.shape[0] - 1, coeffs.shape[1]
    with np.errstate(all='ignore'):
        monic = coeffs[:-1] / coeffs[-1]  # shape (n, m)
    if n == 1:
        return (-monic[0])[:, None]
    bad = ~np.all(np.isfinite(monic), axis=0)
    monic = np.where(bad[None, :], 0, monic)
    comp = np.zeros((m, n, n), dtype=complex)
    comp[:, 1:, :-1] = np.eye(n - 1)
    comp[:, :, -1] = -monic.T
    roots = np.linalg.eigvals(comp)
    roots[bad] = np.nan
    # One Newton step against the original coefficients
    with np.errstate(all='ignore'):
        p = polyval_asc(coeffs[:, :, None], roots)
        dp = polyval_asc(np.array(_derivative_asc(coeffs))[:, :, None], roots)
        step = p / dp
    ok = np.isfinite(step) & (np.abs(step) < 1e-3 * np.maximum(1, np.abs(roots)))
    return np.where(ok, roots - step, roots)


def sylvester_det(p_coeffs, q_coeffs):
    """ Determinant of the Sylvester matrix of two polynomials
    whose ascending coefficients are given per evaluation point.

    Arguments:
        p_coeffs (numpy.ndarray): Shape (m+1, k).
        q_coeffs (numpy.ndarray): Shape (n+1, k).

    Returns:
        numpy.ndarray: The k resultants.
    """

    p = np.asarray(p_coeffs, dtype=complex)[::-1]
    q = np.asarray(q_coeffs, dtype=complex)[::-1]
    m, n = p.shape[0] - 1, q.shape[0] - 1
    k = p.shape[1]
    size = m + n
    mat = np.zeros((k, size, size), dtype=complex)
    for i in range(n):
        mat[:, i, i:i + m + 1] = p.T
    for i in range(m):
        mat[:, n + i, i:i + n + 1] = q.T
    return np.linalg.det(mat)


# Argument principle ------------------------------------------------------ #

class _EdgeHit(Exception):
    pass


def _edge_phase(func, a, b, n0=32, nmax=8192):
    """ Change of argument of `func` along the segment from a to b. """
    n = n0
    while True:
        pts = a + (b - a) * np.linspace(0, 1, n + 1)
        vals = np.asarray(func(pts), dtype=complex)
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            raise _EdgeHit
        d = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(d)) < np.pi / 4:
            return d.sum()
        if n >= nmax:
            raise _EdgeHit
        n *= 2


def _winding(func, box):
    x0, x1, y0, y1 = box
    corners = [complex(x0, y0), complex(x1, y0),
               complex(x1, y1), complex(x0, y1)]
    total = sum(_edge_phase(func, corners[i], corners[(i + 1) % 4])
                for i in range(4))
    w = total / (2 * np.pi)
    k = int(round(w))
    if abs(w - k) > 0.1:
        raise _EdgeHit
    return k


def _split(box, ratio):
    x0, x1, y0, y1 = box
    xm = x0 + ratio * (x1 - x0)
    ym = y0 + (1 - ratio) * (y1 - y0)
    return [(x0, xm, y0, ym), (xm, x1, y0, ym),
            (x0, xm, ym, y1), (xm, x1, ym, y1)]


def _newton_in_box(func, box, maxiter=60):
    x0, x1, y0, y1 = box
    zc = complex((x0 + x1) / 2, (y0 + y1) / 2)
    h = 1e-4 * max(x1 - x0, y1 - y0)
    for _ in range(maxiter):
        vals = func(np.array([zc, zc + h, zc - h, zc + 1j * h, zc - 1j * h]))
        f, df = vals[0], (vals[1] - vals[2] + (vals[4] - vals[3]) * 1j) / (4 * h)
        if f == 0:
            break
        if df == 0 or not np.isfinite(df):
            return None
        step = f / df
        zc -= step
        h = min(h, max(abs(step), 1e-12 * max(1., abs(zc))))
        if abs(step) <= 1e-15 * max(1., abs(zc)):
            break
    margin = 0.05 * (x1 - x0)
    if x0 - margin <= zc.real <= x1 + margin and \
            y0 - margin <= zc.imag <= y1 + margin:
        return zc
    return None


def zeros_in_box(func, box, min_width=1e-8, newton_width=1e-3,
                 max_boxes=200000):
    """ Locates the zeros of an analytic function inside a rectangle.

    The box is subdivided recursively; the number of zeros in each
    sub-box is the winding number of `func` along its boundary, computed
    from summed argument increments on adaptively refined edge samples.
    Boxes holding a single zero are finished with Newton's method,
    clusters are resolved down to `min_width` and reported
    with their total multiplicity.

    Arguments:
        func (callable): Vectorized analytic function of a complex array.
        box (tuple): Rectangle `(x0, x1, y0, y1)`.
        min_width (float, optional): Width at which subdivision
            stops (default 1e-8).
        newton_width (float, optional): Width below which a box with a
            single zero is finished by Newton's method (default 1e-3).
        max_boxes (int, optional): Budget of examined boxes.

    Returns:
        list of tuple: Pairs `(zero, multiplicity)`.
    """

    found = []
    try:
        total = _winding(func, box)
    except _EdgeHit:
        raise RootFindingFailure("Function vanishes on the search boundary",
                                 {'box': box})
    stack = [(box, total)]
    examined = 0
    while stack:
        box, k = stack.pop()
        if k <= 0:
            continue
        x0, x1, y0, y1 = box
        width = max(x1 - x0, y1 - y0)
        if k == 1 and width < newton_width:
            zero = _newton_in_box(func, box)
            if zero is not None:
                found.append((zero, 1))
                continue
        if width < min_width:
            found.append((complex((x0 + x1) / 2, (y0 + y1) / 2), k))
            continue
        for ratio in (0.5, 0.5 + 0.0271828, 0.5 - 0.0314159):
            children = _split(box, ratio)
            try:
                windings = [_winding(func, c) for c in children]
            except _EdgeHit:
                continue
            if sum(windings) == k:
                break
        else:
            raise RootFindingFailure("Cannot isolate zeros",
                                     {'box': box, 'count': k})
        examined += 4
        if examined > max_boxes:
            raise RootFindingFailure("Zero search budget exceeded",
                                     {'box': box, 'found': len(found)})
        stack.extend((c, w) for c, w in zip(children, windings) if w > 0)
    return found


def zeros_in_disk(func, radius, center=0j, tol=1e-9, **kwargs):
    """ Zeros of an analytic function inside the disk `|z - center| < radius`,
    merged within the relative tolerance `tol`.
    Further keyword arguments are passed to :func:`zeros_in_box`. """

    for stretch in (1.0, 1.013, 1.029):
        s = radius * stretch
        box = (center.real - 1.0123 * s, center.real + 1.0087 * s,
               center.imag - 1.0101 * s, center.imag + 1.0071 * s)
        try:
            zeros = zeros_in_box(func, box, **kwargs)
            break
        except RootFindingFailure as e:
            if 'boundary' not in str(e):
                raise
    else:
        raise RootFindingFailure("Function vanishes on every search boundary",
                                 {'radius': radius})
    points = [p for p, _ in zeros]
    weights = [m for _, m in zeros]
    return [(p, m) for p, m in cluster_points(points, tol, weights)
            if abs(p - center) < radius]
