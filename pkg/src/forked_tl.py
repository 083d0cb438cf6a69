"""Fork projections at the trivalent vertex of D_n and the relation suites
for forked Temperley-Lieb systems.

With the star at the trivalent vertex, p (resp. q) projects onto the paths
whose first step goes to the fork tip ``f1`` (resp. ``f2``). Both extend the
Jones projections e_1, e_2, ... as an extra e_0, and they are orthogonal.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
from src import util
from src import util_tl
from src import graph_catalog
from src import path_algebras as pa
from src import verification
from src.util_tl import TowerError, GraphError


class ForkedSystem(object):
    """Fork projections and Jones projections of a D_n tower, all at the
    working level.

    Attributes:
        tower (:class:`~path_algebras.Tower`): tower over D_n at the
            trivalent vertex.
        n (int): the D_n rank.
        p, q (:class:`~path_algebras.MultiMatrix`): fork projections.
        jones (list): e_1 .. e_{level-1}.
        tau (float): beta**-2 of D_n.
        level (int): working level.
    """
    def __init__(self, tower, n, p, q, jones, level):
        self.tower = tower
        self.n = n
        self.p = p
        self.q = q
        self.jones = list(jones)
        self.tau = tower.tau
        self.level = level

    def __repr__(self):
        return 'ForkedSystem(D{}, level={})'.format(self.n, self.level)

    def system_json(self):
        return verification.system_json(self.tower, self.level)


def _fork_tips(g):
    kind = graph_catalog.ade_type(g)
    if kind is None or kind[0] != 'D':
        raise TowerError("fork projections need a D_n graph, got {}".format(g.name))
    if g.degree(g.star) != 3:
        raise TowerError("{} must be pointed at its trivalent vertex, not {}".format(
            g.name, g.star))
    tips = [w for w in g.neighbors(g.star) if g.degree(w) == 1]
    return kind[1], tips[-2], tips[-1]

def fork_projections(tower, level=None):
    """Fork projections p, q of a D_n tower pointed at the trivalent vertex,
    embedded to `level` (default: the tower depth).

    Raises: :class:`~util_tl.TowerError` if the tower isn't over D_n at the
        trivalent vertex or has depth < 2.
    """
    _, f1, f2 = _fork_tips(tower.graph)
    if tower.depth < 2:
        raise TowerError("fork projections need depth >= 2, got {}".format(tower.depth))
    level = tower.depth if level is None else level
    if level < 1:
        raise TowerError("fork projections live at level >= 1, got {}".format(level))
    p = pa.diagonal_projection(tower, 1, lambda path: path[1] == f1)
    q = pa.diagonal_projection(tower, 1, lambda path: path[1] == f2)
    return pa.embed(p, level), pa.embed(q, level)

def forked_system(tower, level=None):
    level = tower.depth if level is None else level
    tower.check_level(level)
    n, _, _ = _fork_tips(tower.graph)
    p, q = fork_projections(tower, level)
    jones = pa.jones_projections(tower, level - 1, level)
    return ForkedSystem(tower, n, p, q, jones, level)

def build_forked_system(n, depth, verbose=0):
    """Build D_n at its trivalent vertex, the tower to `depth`, and the
    forked system at level `depth`.
    """
    g = graph_catalog.build_graph('D{}'.format(n), star=graph_catalog.TRIVALENT)
    tower = pa.build_tower(g, depth, verbose=verbose)
    util.debug_print(verbose, "built forked system on {} with tau={}", g.name, tower.tau)
    return forked_system(tower)

def swap(fs):
    """The same system with p and q exchanged."""
    return ForkedSystem(fs.tower, fs.n, fs.q, fs.p, fs.jones, fs.level)

# ------------------------------------

def _orthogonality_residual(p, q):
    pq = p.dot(q)
    return abs(pa.trace_inner(pq, pq))

def verify_forked(fs, depth=None, tol=None, max_len=3):
    """Forked Temperley-Lieb axioms at the working level: orthogonality of
    p and q (measured as tr((pq)* pq)), the TL relations for (p, e_1, ...)
    and for (q, e_1, ...), the traces of p and q and the Markov property
    ``tr(p w) = tau tr(w)`` for words w in e_1, ....

    Args:
        depth (int, optional): use e_1 .. e_{depth-1}; defaults to all.

    Raises: :class:`~util_tl.TowerError` if `depth` exceeds the working
        level.
    """
    tol = util_tl.setting('tolerance', tol)
    depth = fs.level if depth is None else depth
    if depth > fs.level:
        raise TowerError("depth {} beyond working level {}".format(depth, fs.level))
    jones = fs.jones[:max(depth - 1, 0)]
    labels = ['e{}'.format(i) for i in range(1, len(jones) + 1)]
    report = verification.VerificationReport()
    report.add('p q = 0', _orthogonality_residual(fs.p, fs.q), tol)
    for name, x in (('p', fs.p), ('q', fs.q)):
        sub = verification.tl_relation_checks(
            verification.VerificationReport(), [x] + jones, [name] + labels,
            fs.tau, tol)
        report.extend(sub, prefix='{}-sequence: '.format(name))
    for name, x in (('p', fs.p), ('q', fs.q)):
        report.add('tr({}) = tau'.format(name), pa.markov_trace(x) - fs.tau, tol)
    for name, x in (('p', fs.p), ('q', fs.q)):
        report.add('Markov {}'.format(name),
            verification.markov_residual(x, jones, fs.tau, max_len), tol)
    return report

def verify_evans_gould(fs, tol=None):
    """Evans-Gould relations for k = 2 with p in the role of the first
    projection and q attached to e_1:

    - (i) p, e_1, e_2, ... satisfy the TL relations;
    - (ii) q commutes with e_j for j >= 2, ``q e_1 q = tau q`` and
      ``e_1 q e_1 = tau e_1`` (the join of e_1 .. e_{k-2} is empty at k = 2,
      recorded as a vacuous entry);
    - (iii) ``q p = 0``.
    """
    tol = util_tl.setting('tolerance', tol)
    p, q, tau = fs.p, fs.q, fs.tau
    labels = ['e{}'.format(i) for i in range(1, len(fs.jones) + 1)]
    report = verification.VerificationReport()
    sub = verification.tl_relation_checks(verification.VerificationReport(),
        [p] + fs.jones, ['p'] + labels, tau, tol)
    report.extend(sub, prefix='(i) ')
    if fs.jones:
        e1 = fs.jones[0]
        report.add('(ii) q e1 q = tau q', (q.dot(e1).dot(q) - tau * q).norm(), tol)
        report.add('(ii) e1 q e1 = tau e1', (e1.dot(q).dot(e1) - tau * e1).norm(), tol)
    report.add('(ii) join e1 v ... v e(k-2)', 0., tol, note=verification.VACUOUS)
    for j, e in enumerate(fs.jones[1:], start=2):
        report.add('(ii) q e{} commute'.format(j), (q.dot(e) - e.dot(q)).norm(), tol)
    report.add('(iii) q p = 0', q.dot(p).norm(), tol)
    return report

def verify_principal_graph(fs, tol=None):
    """tr(p) against 1/(4cos^2(pi/(2n-2))), the principal graph A_{2n-3} of
    the Temperley-Lieb sequence with that parameter, and the Evans-Gould
    classification T_{2,n-1} = D_n.
    """
    tol = util_tl.setting('tolerance', tol)
    report = verification.VerificationReport()
    trp = pa.markov_trace(fs.p)
    h = 2 * fs.n - 2
    report.add('tr(p) = 1/(4cos^2(pi/{}))'.format(h), trp - graph_catalog.jones_tau(h), tol)
    expected = 'A{}'.format(h - 1)
    try:
        found = graph_catalog.principal_graph(trp, tol)
    except GraphError as exc:
        found = str(exc)
    report.add('principal graph {}'.format(expected), 0. if found == expected else 1.,
        tol, note=found)
    cls = graph_catalog.classify_tau(trp, 2, tol)
    ok = cls.verdict == graph_catalog.ADMISSIBLE and cls.n == fs.n - 1
    report.add('classify_tau(tr(p), 2) = T2,{}'.format(fs.n - 1), 0. if ok else 1.,
        tol, note=cls.verdict)
    return report
