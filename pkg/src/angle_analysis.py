"""Angles between the intermediate subfactors of a forked system, the
dimension arithmetic of supertransitive bimodules, and braid group
representations built from the Jones projections.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import math
import cmath
import warnings
import fractions
import collections
from src import util
from src import util_tl
from src import graph_catalog
from src import path_algebras as pa
from src import forked_tl
from src import verification
from src.util_tl import AngleError, TowerError, ToolkitError

CLOSED_FORM = 'closed_form'
GHJ_FORMULA = 'ghj_formula'
NUMERIC = 'numeric'

AngleResult = collections.namedtuple(
    'AngleResult', 'method index tau lam angle degenerate residuals'
)
AngleResult.__doc__ = """
An angle value between two intermediate subfactors.

Attributes:
    method (str): ``'closed_form'``, ``'ghj_formula'`` or ``'numeric'``.
    index (float): [P:N].
    tau (float): 1/index.
    lam (float): lambda, the squared cosine of the angle, in [0, 1].
    angle (float): arccos(sqrt(lam)) in radians.
    degenerate (bool): True when index <= 2 and there is no nontrivial angle.
    residuals (OrderedDict): named residuals of the numeric pipeline.
"""

FusionDims = collections.namedtuple('FusionDims', 'index dims')
FusionDims.__doc__ = """
Dimensions dim_N V_k, k = 0..K, of the irreducible N-N bimodules of a
supertransitive subfactor with the given index.
"""


def _result(method, index, lam, degenerate=False, residuals=None):
    lam = min(max(lam, 0.), 1.)
    return AngleResult(method=method, index=index, tau=1. / index, lam=lam,
        angle=math.acos(math.sqrt(lam)), degenerate=degenerate,
        residuals=residuals if residuals is not None else collections.OrderedDict())

def result_to_json(res):
    return collections.OrderedDict([
        ('method', res.method), ('index', res.index), ('tau', res.tau),
        ('lambda', res.lam), ('angle_rad', res.angle),
        ('angle_deg', math.degrees(res.angle)), ('degenerate', res.degenerate),
        ('residuals', res.residuals)
    ])

def pi_fraction(angle, max_denominator=12, tol=1e-9):
    """Render `angle` as a fraction of pi (eg. ``'π/3'``) if it is one with a
    small denominator, else None.
    """
    frac = fractions.Fraction(angle / math.pi).limit_denominator(max_denominator)
    if frac == 0 or abs(float(frac) * math.pi - angle) > tol:
        return None
    num = '' if frac.numerator == 1 else str(frac.numerator)
    return 'π' if frac.denominator == 1 else '{}π/{}'.format(num, frac.denominator)

def describe_angle(res):
    """One-line text rendering, eg. ``'π/3 ≈ 1.0471975512 rad (60 deg)'``."""
    value = '{} rad ({} deg)'.format(util.format_number(res.angle),
        util.format_number(math.degrees(res.angle)))
    name = pi_fraction(res.angle)
    text = '{} ≈ {}'.format(name, value) if name else value
    if res.degenerate:
        text += ' [degenerate]'
    return text

# ------------------------------------

def chebyshev_T(k, x):
    """T_0 = 0, T_1 = 1, T_{k+2}(x) = T_{k+1}(x) - x T_k(x)."""
    if k < 0:
        raise AngleError("T_k needs k >= 0, got {}".format(k))
    prev, cur = 0., 1.
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, cur - x * prev
    return cur

def fusion_dims(index, K, k=None):
    """dim_N V_j = index^j T_{2j+1}(1/index) for j = 0..K.

    If the index is 4cos^2(pi/k) and `k` is passed, the list stops at the
    last bimodule V_l, l = floor((k-2)/2).
    """
    if not index > 1:
        raise AngleError("index must exceed 1, got {}".format(index))
    if k is not None:
        K = min(K, (k - 2) // 2)
    return FusionDims(index=index, dims=[
        index**j * chebyshev_T(2*j + 1, 1. / index) for j in range(K + 1)
    ])

def fusion_rules(i, j, k=None):
    """Labels m of the summands V_m of V_i (x) V_j. Without `k` (index >= 4)
    m runs over |i-j| .. i+j; at index 4cos^2(pi/k) the upper end is
    min(i+j, k-2-(i+j)).
    """
    if i < 0 or j < 0:
        raise AngleError("labels must be >= 0, got {}, {}".format(i, j))
    upper = i + j
    if k is not None:
        last = (k - 2) // 2
        if i > last or j > last:
            raise AngleError("labels {}, {} beyond V_{} for k={}".format(i, j, last, k))
        upper = min(upper, k - 2 - (i + j))
    return list(range(abs(i - j), upper + 1))

def pq_module_dim(index):
    """dim_N L^2(PQ) = 1 + 2 dim V_1 + dim V_2 = index (index - 1).

    Raises: :class:`~util_tl.AngleError` unless 1 < index < 4.
    """
    if not 1. < index < 4.:
        raise AngleError("index must lie in (1, 4), got {}".format(index))
    return index * (index - 1.)

def lambda_from_module_dim(index, dim_pq):
    """lambda = (index^2/dim_pq - 1)/(index - 1)."""
    return (index**2 / dim_pq - 1.) / (index - 1.)

def angle_closed_form(index):
    """The unique nontrivial angle arccos(1/(index - 1)).

    For index <= 2 there is no noncommuting quadrilateral: the result is
    flagged degenerate with lambda = 1 and angle 0.

    Raises: :class:`~util_tl.AngleError` unless 1 < index < 4.
    """
    if not 1. < index < 4.:
        raise AngleError("index must lie in (1, 4), got {}".format(index))
    if index <= 2.:
        warnings.warn("index {} <= 2 has no nontrivial angle.".format(index))
        return _result(CLOSED_FORM, index, 1., degenerate=True)
    return _result(CLOSED_FORM, index, (index - 1.)**-2)

def angle_ghj(n):
    """Angle of the GHJ pair for D_n at the trivalent vertex,
    arccos(1/(4cos^2(pi/(2n-2)) - 1)).
    """
    if n < 4:
        raise AngleError("D_n needs n >= 4, got {}".format(n))
    index = graph_catalog.jones_index(2*n - 2)
    return _result(GHJ_FORMULA, index, (index - 1.)**-2)

def angle_spectrum_set(K):
    """arccos(1/(4cos^2(pi/2k) - 1)) for k = 3..K."""
    if K < 3:
        raise AngleError("K must be >= 3, got {}".format(K))
    return [math.acos(1. / (graph_catalog.jones_index(2*k) - 1.)) for k in range(3, K + 1)]

# ------------------------------------

def _norm2(x):
    return math.sqrt(abs(pa.trace_inner(x, x)))

def angle_numeric(fs, level=None, cap=None, verbose=0):
    """Angle of a forked system from conditional expectations.

    At `level` (default: the system's working level) builds
    P = alg(p, e_1, ...) and Q = alg(q, e_1, ...), x = (p - tau)/(1 - tau),
    y = (q - tau)/(1 - tau), and takes lambda as the Rayleigh quotient
    <E_P E_Q E_P x, x>/<x, x>.

    Raises: :class:`~util_tl.TowerError` for a level outside 2..depth,
        :class:`~util_tl.SubalgebraOverflowError` from subalgebra generation.
    """
    tower = fs.tower
    level = fs.level if level is None else level
    if not 2 <= level <= tower.depth:
        raise TowerError("angle needs a level in 2..{}, got {}".format(tower.depth, level))
    tau = fs.tau
    p, q = forked_tl.fork_projections(tower, level)
    jones = pa.jones_projections(tower, level - 1, level)
    one = pa.identity(tower, level)
    x = (p - tau * one) / (1. - tau)
    y = (q - tau * one) / (1. - tau)
    basis_p = pa.generated_subalgebra([p] + jones, cap=cap, verbose=verbose)
    basis_q = pa.generated_subalgebra([q] + jones, cap=cap, verbose=verbose)
    util.debug_print(verbose, "level {}: dim P = {}, dim Q = {}, dim A = {}",
        level, len(basis_p), len(basis_q), tower.dimension(level))

    c0 = tau / (1. - tau)
    eq_x = pa.conditional_expectation(basis_q, x)
    ep_y = pa.conditional_expectation(basis_p, y)
    c = pa.trace_inner(eq_x, y) / pa.trace_inner(y, y)
    chain = pa.conditional_expectation(basis_p,
        pa.conditional_expectation(basis_q, pa.conditional_expectation(basis_p, x)))
    lam = pa.trace_inner(chain, x) / pa.trace_inner(x, x)

    residuals = collections.OrderedDict([
        ('E_Q(x) + c0 y', _norm2(eq_x + c0 * y)),
        ('E_P(y) + c0 x', _norm2(ep_y + c0 * x)),
        ('E_Q(x) - c y', _norm2(eq_x - c * y)),
        ('c + c0', abs(c + c0)),
        ('norm(x) - 1', abs(x.norm() - 1.)),
        ('norm(y) - 1', abs(y.norm() - 1.)),
        ('tr(x*x) - c0', abs(pa.trace_inner(x, x) - c0)),
        ('tr(y*y) - c0', abs(pa.trace_inner(y, y) - c0)),
        ('E_P E_Q E_P x - lambda x', _norm2(chain - lam * x)),
        ('lambda - c0^2', abs(lam - c0**2)),
    ])
    return _result(NUMERIC, 1. / tau, lam, residuals=residuals)

def verify_angle_numeric(fs, level=None, tol=None, cap=None, verbose=0):
    """Report of the numeric angle pipeline's residuals, plus agreement with
    the closed form for D_n.
    """
    tol = util_tl.setting('tolerance', tol)
    res = angle_numeric(fs, level, cap=cap, verbose=verbose)
    report = verification.VerificationReport()
    for name, r in res.residuals.items():
        report.add(name, r, tol)
    report.add('angle - ghj angle', res.angle - angle_ghj(fs.n).angle, tol)
    return report, res

# ------------------------------------

def braid_generators(fs, extension='none', count=None):
    """Unitary braid generators g_i = (t+1) e_i - 1, t = exp(2 pi i/h) with h
    the Coxeter number of the tower's graph, for i = 1..`count`. With
    `extension` ``'p'`` or ``'q'`` the list starts with g_0 = (t+1) p - 1
    (resp. q).

    Raises: :class:`~util_tl.TowerError` if `count` exceeds the available
        projections.
    """
    count = len(fs.jones) if count is None else count
    if count > len(fs.jones):
        raise TowerError("{} generators requested, {} projections available".format(
            count, len(fs.jones)))
    h = graph_catalog.coxeter_number(fs.tower.graph)
    t = cmath.exp(2j * math.pi / h)
    one = pa.identity(fs.tower, fs.level).astype(complex)
    if extension == 'none':
        projections = []
    elif extension in ('p', 'q'):
        projections = [getattr(fs, extension)]
    else:
        raise ToolkitError("extension must be 'p', 'q' or 'none', got {!r}".format(extension))
    projections = projections + fs.jones[:count]
    return [(t + 1.) * e.astype(complex) - one for e in projections]

def braid_residuals(gens):
    """Max residuals of unitarity, the braid relation for neighbours and
    commutation for generators two or more apart.
    """
    if not gens:
        return 0., 0., 0.
    one = pa.identity(gens[0].tower, gens[0].level)
    unitary = max((g.dot(g.adjoint()) - one).norm() for g in gens)
    braid = far = 0.
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i+1]
        braid = max(braid, (a.dot(b).dot(a) - b.dot(a).dot(b)).norm())
        for j in range(i + 2, len(gens)):
            c = gens[j]
            far = max(far, (a.dot(c) - c.dot(a)).norm())
    return unitary, braid, far

def verify_braid(fs, count=None, tol=None, parallel=True):
    """Unitarity, braid relation and far commutation for both the p- and the
    q-extended generator lists.
    """
    tol = util_tl.setting('tolerance', tol)
    report = verification.VerificationReport()
    checks = []
    for ext in ('p', 'q'):
        gens = braid_generators(fs, ext, count)
        checks.append(('{}-extension residuals'.format(ext),
            (lambda gens=gens: braid_residuals(gens))))
    if parallel:
        threads = [util.ExceptionPropagatingThread(target=fn) for _, fn in checks]
        for th in threads:
            th.start()
        results = [th.join() for th in threads]
    else:
        results = [fn() for _, fn in checks]
    for ext, (unitary, braid, far) in zip(('p', 'q'), results):
        report.add('{}-extension unitary'.format(ext), unitary, tol)
        report.add('{}-extension braid relation'.format(ext), braid, tol)
        report.add('{}-extension far commutation'.format(ext), far, tol)
    return report
