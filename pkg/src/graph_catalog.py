"""Catalog of the pointed bipartite graphs used to build string algebras: the
simply-laced Coxeter-Dynkin graphs A, D, E and the T-shaped graphs T_{k,n},
together with their Perron-Frobenius data, Coxeter numbers and the
admissibility classification of a Temperley-Lieb parameter against T-graph
norms.

Vertex ids are canonical so that path bases are reproducible:

- ``A<n>``: chain ``a1 - a2 - ... - an``; default star ``a1``.
- ``D<n>``: chain ``c1 - ... - c(n-2)`` plus fork tips ``f1``, ``f2`` both
  adjacent to ``c(n-2)``, the trivalent vertex; default star ``c1``.
- ``T<k>,<n>``: chain ``a1 - ... - an`` plus ``b`` adjacent to ``ak``;
  default star ``a1``.
- ``E6``, ``E7``, ``E8``: laid out as ``T3,5``, ``T3,6``, ``T3,7``.

The star designator ``trivalent`` selects the unique degree-3 vertex.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import re
import math
import warnings
import collections
import six
import numpy as np
import networkx as nx
from scipy.optimize import brentq
from src import util
from src import util_tl
from src.util_tl import GraphError

TRIVALENT = 'trivalent'
EVEN = 'even'
ODD = 'odd'

_name_regex = re.compile(r"""
    ^(?:
        (?P<A>A(?P<a_n>\d+))
        |(?P<D>D(?P<d_n>\d+))
        |(?P<E>E(?P<e_n>[678]))
        |(?P<T>T(?P<t_k>\d+),(?P<t_n>\d+))
    )$
""", re.VERBOSE)

GraphName = collections.namedtuple('GraphName', 'family params')
GraphName.__doc__ = """
Parsed graph identifier.

Attributes:
    family (str): one of ``'A'``, ``'D'``, ``'E'``, ``'T'``.
    params (tuple of int): ``(n,)`` for A, D, E and ``(k, n)`` for T.
"""

SpectralData = collections.namedtuple(
    'SpectralData', 'norm weights tau residual'
)
SpectralData.__doc__ = """
Perron-Frobenius data of a graph.

Attributes:
    norm (float): beta, the largest adjacency eigenvalue.
    weights (OrderedDict): vertex -> mu(vertex), normalized so mu(star) = 1.
    tau (float): beta**-2, or None for the edgeless graph A1 where beta = 0.
    residual (float): max-norm of A.mu - beta.mu.
"""

Classification = collections.namedtuple('Classification', 'verdict n graph')
Classification.__doc__ = """
Result of :func:`classify_tau`.

Attributes:
    verdict (str): ``'admissible'``, ``'inadmissible'`` or ``'unconstrained'``.
    n (int or None): the T_{k,n} chain length for admissible results.
    graph (str or None): name of the matching ``T<k>,<n>`` graph.
"""
ADMISSIBLE = 'admissible'
INADMISSIBLE = 'inadmissible'
UNCONSTRAINED = 'unconstrained'


def parse_graph_name(name):
    """Parse a graph identifier ``A<n>``, ``D<n>``, ``E6|E7|E8`` or
    ``T<k>,<n>``.

    Raises: :class:`~util_tl.GraphError` on unknown names or parameters out
        of range.
    """
    if not isinstance(name, six.string_types):
        raise GraphError("graph name must be a string, got {!r}".format(name))
    match = _name_regex.match(name.strip())
    if not match:
        raise GraphError("unknown graph name '{}'".format(name))
    if match.group('A'):
        n = int(match.group('a_n'))
        if n < 1:
            raise GraphError("A_n needs n >= 1, got {}".format(n))
        return GraphName('A', (n,))
    elif match.group('D'):
        n = int(match.group('d_n'))
        if n < 4:
            raise GraphError("D_n needs n >= 4, got {}".format(n))
        return GraphName('D', (n,))
    elif match.group('E'):
        return GraphName('E', (int(match.group('e_n')),))
    k, n = int(match.group('t_k')), int(match.group('t_n'))
    if not (2 <= k <= n):
        raise GraphError("T_{{k,n}} needs 2 <= k <= n, got k={}, n={}".format(k, n))
    return GraphName('T', (k, n))


class BipartiteGraph(object):
    """A connected, bipartite, simply-laced graph with a distinguished star
    vertex. Instances are immutable after construction.

    Attributes:
        name (str): graph identifier, eg. ``'D5'``.
        vertices (tuple of str): canonical vertex order; path bases are
            ordered lexicographically with respect to it.
        edges (frozenset of frozenset): undirected edges.
        star (str): the distinguished vertex.
        coloring (dict): vertex -> ``'even'`` or ``'odd'``, with the star even.
    """
    def __init__(self, name, vertices, edges, star):
        self.name = name
        self.vertices = tuple(vertices)
        self.edges = frozenset(frozenset(e) for e in edges)
        self.star = star
        self._nx = nx.Graph()
        self._nx.add_nodes_from(self.vertices)
        self._nx.add_edges_from(tuple(e) for e in self.edges)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._validate()
        dist = nx.single_source_shortest_path_length(self._nx, self.star)
        self.coloring = {v: (EVEN if dist[v] % 2 == 0 else ODD) \
            for v in self.vertices}
        self._neighbors = {
            v: tuple(sorted(self._nx.neighbors(v), key=self._index.get)) \
                for v in self.vertices
        }

    def _validate(self):
        if len(self._index) != len(self.vertices):
            raise GraphError("duplicate vertex ids in {}".format(self.name))
        for e in self.edges:
            if len(e) != 2:
                raise GraphError("self-loop in {}".format(self.name))
            if not e.issubset(self._index):
                raise GraphError("edge {} of {} has unknown endpoints".format(
                    sorted(e), self.name))
        if self.star not in self._index:
            raise GraphError("star {} is not a vertex of {}".format(
                self.star, self.name))
        if not nx.is_connected(self._nx):
            raise GraphError("{} is not connected".format(self.name))
        if not nx.is_bipartite(self._nx):
            raise GraphError("{} is not bipartite".format(self.name))

    def __repr__(self):
        return "BipartiteGraph({}, star={})".format(self.name, self.star)

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return False
        return (self.vertices, self.edges, self.star) == \
            (other.vertices, other.edges, other.star)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.vertices, self.edges, self.star))

    @property
    def nx_graph(self):
        """A copy of the underlying :py:class:`networkx.Graph`."""
        return self._nx.copy()

    def index(self, vertex):
        return self._index[vertex]

    def neighbors(self, vertex):
        """Neighbors of `vertex` in canonical vertex order."""
        return self._neighbors[vertex]

    def degree(self, vertex):
        return len(self._neighbors[vertex])

    def adjacency_matrix(self):
        """Symmetric 0/1 adjacency matrix in canonical vertex order."""
        return nx.to_numpy_array(self._nx, nodelist=list(self.vertices), dtype=float)

    def with_star(self, star):
        """Same graph re-pointed at another vertex (or ``'trivalent'``)."""
        return BipartiteGraph(self.name, self.vertices,
            [tuple(e) for e in self.edges], _resolve_star(self, star))

    def to_dot(self):
        return graph_to_dot(self)


def _chain(prefix, n):
    return ['{}{}'.format(prefix, i) for i in range(1, n+1)]

def _chain_edges(names):
    return list(zip(names[:-1], names[1:]))

def _layout(parsed):
    """Canonical (vertices, edges, default star) for a parsed name."""
    family, params = parsed
    if family == 'A':
        verts = _chain('a', params[0])
        return verts, _chain_edges(verts), verts[0]
    elif family == 'D':
        chain = _chain('c', params[0] - 2)
        verts = chain + ['f1', 'f2']
        edges = _chain_edges(chain) + [(chain[-1], 'f1'), (chain[-1], 'f2')]
        return verts, edges, chain[0]
    elif family == 'E':
        return _layout(GraphName('T', (3, params[0] - 1)))
    k, n = params
    chain = _chain('a', n)
    return chain + ['b'], _chain_edges(chain) + [(chain[k-1], 'b')], chain[0]

def _resolve_star(g, star):
    if star is None:
        return g.star
    if star == TRIVALENT:
        tri = [v for v in g.vertices if g.degree(v) == 3]
        if len(tri) != 1:
            raise GraphError("{} has no unique trivalent vertex".format(g.name))
        return tri[0]
    if star not in g.vertices:
        raise GraphError("star designator '{}' is not a vertex of {}".format(
            star, g.name))
    return star

def build_graph(name, star=None):
    """Build a catalog graph with canonical vertex ids.

    Args:
        name (str): ``A<n>`` (n >= 1), ``D<n>`` (n >= 4), ``E6``, ``E7``,
            ``E8`` or ``T<k>,<n>`` (2 <= k <= n).
        star (str, optional): ``'trivalent'`` or a vertex id. Defaults to the
            endpoint of the long chain.

    Returns: :class:`BipartiteGraph`.

    Raises: :class:`~util_tl.GraphError` on unknown names, parameters out of
        range, or a star designator that isn't in the graph.
    """
    parsed = parse_graph_name(name)
    verts, edges, default_star = _layout(parsed)
    g = BipartiteGraph(name.strip(), verts, edges, default_star)
    if star is not None and star != g.star:
        g = g.with_star(star)
    return g

def catalog_names(max_rank=8):
    """ADE graph names up to rank `max_rank`, in catalog order."""
    names = ['A{}'.format(n) for n in range(1, max_rank+1)]
    names.extend('D{}'.format(n) for n in range(4, max_rank+1))
    names.extend('E{}'.format(n) for n in (6, 7, 8) if n <= max_rank)
    return names

# ------------------------------------

def spectral_data(g, max_iter=None, verbose=0):
    """Perron-Frobenius norm and weights of `g`.

    Uses power iteration on the shifted matrix A + 1, which has a simple
    dominant eigenvalue beta + 1 for any connected bipartite graph, starting
    from the all-ones vector. If the iteration doesn't settle within
    `max_iter` steps we warn and fall back to :func:`numpy.linalg.eigh`.

    Returns: :class:`SpectralData` with weights normalized at the star.
    """
    max_iter = util_tl.setting('power_iteration_max_iter', max_iter)
    adj = g.adjacency_matrix()
    shifted = adj + np.eye(len(g.vertices))
    vec = np.ones(len(g.vertices)) / math.sqrt(len(g.vertices))
    converged = False
    for it in range(max_iter):
        new = shifted.dot(vec)
        new /= np.linalg.norm(new)
        if np.max(np.abs(new - vec)) < 1e-14:
            vec = new
            converged = True
            break
        vec = new
    if converged:
        util.debug_print(verbose, "power iteration on {} settled after {} steps",
            g.name, it + 1)
    else:
        warnings.warn(("Power iteration on {} didn't converge in {} steps; "
            "using dense eigensolver.").format(g.name, max_iter))
        vals, vecs = np.linalg.eigh(adj)
        vec = np.abs(vecs[:, np.argmax(vals)])
    beta = float(vec.dot(adj.dot(vec)) / vec.dot(vec))
    mu = vec / vec[g.index(g.star)]
    residual = float(np.max(np.abs(adj.dot(mu) - beta * mu)))
    weights = collections.OrderedDict(
        (v, float(mu[i])) for i, v in enumerate(g.vertices)
    )
    tau = beta**-2 if beta > 0. else None
    return SpectralData(norm=beta, weights=weights, tau=tau, residual=residual)

def graph_norm(g):
    return spectral_data(g).norm

def ade_type(g):
    """Identify `g` as a simply-laced Dynkin diagram from its arm structure.

    Returns: ``('A', n)``, ``('D', n)``, ``('E', n)`` or None if `g` isn't
        of finite type.
    """
    n_verts = len(g.vertices)
    if len(g.edges) != n_verts - 1:
        return None # not a tree
    degrees = [g.degree(v) for v in g.vertices]
    if max(degrees) <= 2:
        return ('A', n_verts)
    branch = [v for v, d in zip(g.vertices, degrees) if d >= 3]
    if len(branch) != 1 or g.degree(branch[0]) != 3:
        return None
    arms = sorted(_arm_length(g, branch[0], w) for w in g.neighbors(branch[0]))
    if arms[0] != 1:
        return None
    if arms[1] == 1:
        return ('D', n_verts)
    if arms[1] == 2 and arms[2] in (2, 3, 4):
        return ('E', n_verts)
    return None

def _arm_length(g, center, start):
    length, prev, cur = 1, center, start
    while g.degree(cur) == 2:
        prev, cur = cur, [w for w in g.neighbors(cur) if w != prev][0]
        length += 1
    return length

def coxeter_number(g):
    """Coxeter number h of an ADE graph: A_n -> n+1, D_n -> 2n-2, E6 -> 12,
    E7 -> 18, E8 -> 30. Works for T-graph names that happen to be ADE.

    Raises: :class:`~util_tl.GraphError` if `g` isn't of type A, D or E.
    """
    kind = ade_type(g)
    if kind is None:
        raise GraphError("{} is not an ADE graph".format(g.name))
    family, n = kind
    if family == 'A':
        return n + 1
    elif family == 'D':
        return 2*n - 2
    return {6: 12, 7: 18, 8: 30}[n]

# ------------------------------------

def _arm_ratio(p, beta):
    # mu(neighbor of center)/mu(center) along an arm of p vertices, for
    # beta above the arm's own norm; p=None is an infinite arm (beta >= 2).
    x = beta / 2.
    if x < 1.:
        theta = math.acos(x)
        return math.sin(p*theta) / math.sin((p+1)*theta)
    if x == 1.:
        return 1. if p is None else p / (p + 1.)
    theta = math.acosh(x)
    if p is None:
        return math.exp(-theta)
    return math.exp(-theta) * math.expm1(-2*p*theta) / math.expm1(-2*(p+1)*theta)

def _star_norm(arms):
    """Largest root of beta = sum of arm ratios, for a star-shaped tree with
    arms of the given vertex counts (None for an infinite arm).
    """
    arms = [a for a in arms if a != 0]
    finite = [a for a in arms if a is not None]
    lo = max([2.*math.cos(math.pi/(a+1)) for a in finite] + [0.])
    if None in arms:
        lo = max(lo, 2.)
    def f(beta):
        return sum(_arm_ratio(a, beta) for a in arms) - beta
    start = lo if (None in arms and lo == 2.) else lo + 1e-13
    if start == lo and f(lo) <= 0.:
        return lo
    return brentq(f, start, 3., xtol=1e-15, rtol=1e-15, maxiter=500)

def t_graph_norm(k, n=None):
    """Norm of T_{k,n}: an A_n chain with one extra vertex joined to the
    k-th chain vertex. ``n=None`` gives the infinite graph T_{k,infinity}.

    Computed without building the graph from the arm equation at ``a_k``, so
    it stays cheap for the long chains searched by :func:`classify_tau`.
    """
    if k < 2 or (n is not None and n < k):
        raise GraphError("T_{{k,n}} needs 2 <= k <= n, got k={}, n={}".format(k, n))
    right = None if n is None else n - k
    return _star_norm([k - 1, right, 1])

def classify_tau(tau, k=2, tol=None, bound=None):
    """Evans-Gould admissibility of a parameter `tau` for a projection
    attached at position `k` of a Temperley-Lieb sequence.

    If ``tau <= 1/||T_{k,inf}||**2`` the theorem says nothing and the result
    is ``unconstrained``. Otherwise `tau` must equal ``1/||T_{k,n}||**2`` for
    some finite n; the sequence is strictly decreasing in n, so the search up
    to `bound` is a bisection.

    Returns: :class:`Classification`.

    Raises: :class:`~util_tl.GraphError` for non-positive `tau` or k < 2.
    """
    tol = util_tl.setting('tolerance', tol)
    bound = util_tl.setting('classify_search_bound', bound)
    if not tau > 0:
        raise GraphError("tau must be positive, got {}".format(tau))
    if k < 2:
        raise GraphError("k must be >= 2, got {}".format(k))
    threshold = t_graph_norm(k, None) ** -2
    if tau <= threshold:
        return Classification(UNCONSTRAINED, None, None)

    def param(n):
        return t_graph_norm(k, n) ** -2

    lo, hi = k, max(k, bound)
    if tau > param(lo) + tol or tau < param(hi) - tol:
        return Classification(INADMISSIBLE, None, None)
    # invariant: param(lo) >= tau - tol, find the last such n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if param(mid) >= tau:
            lo = mid
        else:
            hi = mid
    for n in (lo, hi):
        if abs(param(n) - tau) < tol:
            return Classification(ADMISSIBLE, n, 'T{},{}'.format(k, n))
    return Classification(INADMISSIBLE, None, None)

def principal_graph(tau, tol=None):
    """Principal graph ``A<k-1>`` of the subfactor generated by a
    Temperley-Lieb sequence with ``tau = 1/(4cos^2(pi/k))``.

    Raises: :class:`~util_tl.GraphError` if `tau` has no such form.
    """
    tol = util_tl.setting('tolerance', tol)
    arg = 1. / (2. * math.sqrt(tau)) if tau > 0 else float('inf')
    if arg >= 1.:
        raise GraphError("tau = {} is not above 1/4".format(tau))
    k = int(round(math.pi / math.acos(arg)))
    if k < 3 or abs(jones_tau(k) - tau) >= tol:
        raise GraphError("tau = {} is not of the form 1/(4cos^2(pi/k))".format(tau))
    return 'A{}'.format(k - 1)

def jones_tau(k):
    return 1. / jones_index(k)

def jones_index(k):
    """4cos^2(pi/k)."""
    return 4. * math.cos(math.pi / k)**2

def jones_admissible_indices(bound=4., max_k=None):
    """Index values ``4cos^2(pi/k)``, k = 3, 4, ..., below `bound`, ascending.
    For ``bound == 4`` the list is truncated at k = `max_k`.

    Note: k = 3 gives index 1; callers interested in proper subfactors start
    at k = 4.
    """
    max_k = util_tl.setting('jones_max_k', max_k)
    if bound > 4.:
        raise GraphError("bound must be <= 4, got {}".format(bound))
    values = []
    for k in range(3, max_k + 1):
        val = jones_index(k)
        if val >= bound:
            break
        values.append(val)
    return values

_DOT_COLORS = {'even': 'black', 'odd': 'gray50'}

# ------------------------------------

def graph_to_dot(g):
    """Undirected DOT rendering; the star vertex carries ``star=true`` and a
    double circle. Bipartite classes are in the ``parity`` attribute and drawn in black
    (even) or gray (odd).
    """
    lines = ['graph "{}" {{'.format(g.name)]
    for v in g.vertices:
        attrs = 'parity={}, color={}'.format(g.coloring[v], _DOT_COLORS[g.coloring[v]])
        if v == g.star:
            attrs += ', shape=doublecircle, star=true'
        lines.append('  "{}" [{}];'.format(v, attrs))
    edges = sorted(
        (tuple(sorted(e, key=g.index)) for e in g.edges),
        key=lambda e: (g.index(e[0]), g.index(e[1]))
    )
    for v, w in edges:
        lines.append('  "{}" -- "{}";'.format(v, w))
    lines.append('}')
    return '\n'.join(lines) + '\n'
