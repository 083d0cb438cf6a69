"""String algebras on a pointed bipartite graph.

Level m of a :class:`Tower` is the direct sum over vertices v of full matrix
algebras indexed by the length-m paths from the star to v. Elements are
:class:`MultiMatrix` objects holding one square block per vertex. Paths are
ordered lexicographically with respect to the graph's canonical vertex order,
which fixes the matrix indexing.

The Markov trace weights a block at vertex v by ``mu(v)/beta**m`` with the
Perron-Frobenius vector mu normalized to 1 at the star.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import collections
import numpy as np
from src import util
from src import util_tl
from src import graph_catalog
from src.util_tl import TowerError, SubalgebraOverflowError, BasisError


class Tower(object):
    """Path bases of the string algebras over `graph` up to `depth`.
    Immutable after construction; build with :func:`build_tower`.

    Attributes:
        graph (:class:`~graph_catalog.BipartiteGraph`): the pointed graph.
        spectral (:class:`~graph_catalog.SpectralData`): its PF data.
        depth (int): last level.
        levels (list of OrderedDict): ``levels[m][v]`` is the ordered list of
            level-m paths (vertex tuples starting at the star) ending at v.
            Only vertices with at least one path appear.
    """
    def __init__(self, graph, spectral, depth, levels):
        self.graph = graph
        self.spectral = spectral
        self.depth = depth
        self.levels = levels
        self._extensions = [None]
        for m in range(1, depth + 1):
            self._extensions.append(self._extension_map(m))

    def _extension_map(self, m):
        # for each block w at level m: [(v, rows at m, prefix rows at m-1)]
        position = {}
        for v, paths in self.levels[m-1].items():
            for i, path in enumerate(paths):
                position[path] = i
        ext = collections.OrderedDict()
        for w, paths in self.levels[m].items():
            by_prefix_end = collections.OrderedDict()
            for i, path in enumerate(paths):
                v = path[-2]
                rows, prefix_rows = by_prefix_end.setdefault(v, ([], []))
                rows.append(i)
                prefix_rows.append(position[path[:-1]])
            ext[w] = [(v, np.array(r, dtype=int), np.array(p, dtype=int)) \
                for v, (r, p) in by_prefix_end.items()]
        return ext

    def __repr__(self):
        return 'Tower({}, star={}, depth={})'.format(
            self.graph.name, self.graph.star, self.depth)

    @property
    def beta(self):
        return self.spectral.norm

    @property
    def tau(self):
        return self.spectral.tau

    def mu(self, vertex):
        return self.spectral.weights[vertex]

    def check_level(self, level):
        if not (0 <= level <= self.depth):
            raise TowerError("level {} outside 0..{} of {!r}".format(
                level, self.depth, self))

    def paths(self, level, vertex):
        self.check_level(level)
        return self.levels[level].get(vertex, [])

    def block_sizes(self, level):
        """OrderedDict vertex -> number of level-`level` paths ending there."""
        self.check_level(level)
        return collections.OrderedDict(
            (v, len(paths)) for v, paths in self.levels[level].items()
        )

    def dimension(self, level):
        return sum(n**2 for n in self.block_sizes(level).values())

    def trace_weight(self, level, vertex):
        return self.mu(vertex) / self.beta**level

    def extensions(self, level):
        return self._extensions[level]


def _path_counts(g, depth):
    counts = [collections.OrderedDict([(g.star, 1)])]
    for _ in range(depth):
        nxt = collections.OrderedDict()
        for w in g.vertices:
            n = sum(counts[-1].get(v, 0) for v in g.neighbors(w))
            if n:
                nxt[w] = n
        counts.append(nxt)
    return counts

def build_tower(g, depth, max_entries=None, verbose=0):
    """Enumerate path bases for levels 0..`depth`.

    Args:
        g (:class:`~graph_catalog.BipartiteGraph`): pointed graph.
        depth (int): last level, at least 1.
        max_entries (int, optional): bound on the total number of block
            entries summed over levels. Defaults to the configured
            ``max_block_entries``.

    Raises: :class:`~util_tl.TowerError` if depth < 1, the bound is
        exceeded or `g` has no edges.
    """
    max_entries = util_tl.setting('max_block_entries', max_entries)
    if depth < 1:
        raise TowerError("depth must be >= 1, got {}".format(depth))
    if not g.edges:
        raise TowerError("{} has no edges, so no paths leave the star".format(g.name))
    counts = _path_counts(g, depth)
    total = sum(n**2 for level in counts for n in level.values())
    if total > max_entries:
        raise TowerError(("{} at depth {} needs {} block entries, over the "
            "bound of {}").format(g.name, depth, total, max_entries))

    spectral = graph_catalog.spectral_data(g, verbose=verbose)
    order = lambda path: tuple(g.index(v) for v in path)
    levels = [collections.OrderedDict([(g.star, [(g.star,)])])]
    for m in range(1, depth + 1):
        new_paths = []
        for paths in levels[-1].values():
            for path in paths:
                new_paths.extend(path + (w,) for w in g.neighbors(path[-1]))
        level = collections.OrderedDict((v, []) for v in g.vertices)
        for path in sorted(new_paths, key=order):
            level[path[-1]].append(path)
        levels.append(collections.OrderedDict(
            (v, paths) for v, paths in level.items() if paths
        ))
        util.debug_print(verbose, "{} level {}: blocks {}", g.name, m,
            dict((v, len(p)) for v, p in levels[-1].items()))
    return Tower(g, spectral, depth, levels)

# ------------------------------------

class MultiMatrix(object):
    """Element of level `level` of a tower: one square block per vertex.

    Supports ``+``, ``-``, scalar ``*``, :meth:`dot` (also ``@``) and
    :meth:`adjoint`. Operands must come from the same tower object and level.
    """
    __array_ufunc__ = None # numpy scalars defer to __rmul__

    def __init__(self, tower, level, blocks):
        tower.check_level(level)
        self.tower = tower
        self.level = level
        sizes = tower.block_sizes(level)
        self.blocks = collections.OrderedDict()
        for v, n in sizes.items():
            b = np.asarray(blocks[v])
            if b.shape != (n, n):
                raise TowerError("block {} has shape {}, expected {}".format(
                    v, b.shape, (n, n)))
            self.blocks[v] = b

    def _check(self, other):
        if not isinstance(other, MultiMatrix):
            raise TypeError("expected a MultiMatrix, got {!r}".format(other))
        if other.tower is not self.tower:
            raise TowerError("elements of different towers")
        if other.level != self.level:
            raise TowerError("levels {} and {} differ; embed first".format(
                self.level, other.level))

    def _map(self, fn):
        return MultiMatrix(self.tower, self.level,
            dict((v, fn(b)) for v, b in self.blocks.items()))

    def _zip(self, other, fn):
        self._check(other)
        return MultiMatrix(self.tower, self.level,
            dict((v, fn(b, other.blocks[v])) for v, b in self.blocks.items()))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self._map(lambda a: -a)

    def __mul__(self, scalar):
        if isinstance(scalar, MultiMatrix):
            raise TypeError("use dot() for products of MultiMatrix elements")
        return self._map(lambda a: scalar * a)
    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._map(lambda a: a / scalar)
    __div__ = __truediv__

    def dot(self, other):
        return self._zip(other, np.dot)
    __matmul__ = dot

    def adjoint(self):
        return self._map(lambda a: a.conj().T)

    def norm(self):
        """Operator norm: the largest block spectral norm."""
        return max([np.linalg.norm(b, 2) for b in self.blocks.values() if b.size] + [0.])

    def max_entry(self):
        return max([np.max(np.abs(b)) for b in self.blocks.values() if b.size] + [0.])

    def astype(self, dtype):
        return self._map(lambda a: a.astype(dtype))

    def vectorize(self):
        """Concatenated blocks scaled by ``sqrt(trace weight)``, so that
        ``vdot(y.vectorize(), x.vectorize()) == tr(y* x)``.
        """
        return np.concatenate([
            np.sqrt(self.tower.trace_weight(self.level, v)) * b.ravel() \
                for v, b in self.blocks.items()
        ])

    @classmethod
    def from_vector(cls, tower, level, vec):
        blocks, start = {}, 0
        for v, n in tower.block_sizes(level).items():
            w = np.sqrt(tower.trace_weight(level, v))
            blocks[v] = vec[start:start + n*n].reshape(n, n) / w
            start += n*n
        return cls(tower, level, blocks)

    def __repr__(self):
        return 'MultiMatrix({}, level={}, blocks={})'.format(
            self.tower.graph.name, self.level,
            dict((v, b.shape[0]) for v, b in self.blocks.items()))


def identity(tower, level):
    return MultiMatrix(tower, level, dict(
        (v, np.eye(n)) for v, n in tower.block_sizes(level).items()))

def zero(tower, level):
    return MultiMatrix(tower, level, dict(
        (v, np.zeros((n, n))) for v, n in tower.block_sizes(level).items()))

def diagonal_projection(tower, level, predicate):
    """Diagonal projection onto the level-`level` paths for which
    ``predicate(path)`` is true.
    """
    return MultiMatrix(tower, level, dict(
        (v, np.diag([1. if predicate(path) else 0. for path in paths])) \
            for v, paths in tower.levels[level].items()
    ))

def random_element(tower, level, rng, self_adjoint=False):
    """Element with standard normal entries drawn from `rng`."""
    blocks = {}
    for v, n in tower.block_sizes(level).items():
        b = rng.standard_normal((n, n))
        blocks[v] = (b + b.T) / 2. if self_adjoint else b
    return MultiMatrix(tower, level, blocks)

def embed(x, target):
    """Bratteli inclusion of `x` into level `target` of its tower. Each step
    sends the matrix unit E(xi, eta) to the sum over one-step extensions c of
    E(xi c, eta c).

    Raises: :class:`~util_tl.TowerError` if `target` is below x's level or
        beyond the tower depth.
    """
    tower = x.tower
    if target < x.level:
        raise TowerError("can't embed level {} into level {}".format(x.level, target))
    tower.check_level(target)
    for m in range(x.level + 1, target + 1):
        blocks = {}
        for w, parts in tower.extensions(m).items():
            n = len(tower.levels[m][w])
            dtype = np.result_type(*[b.dtype for b in x.blocks.values()])
            block = np.zeros((n, n), dtype=dtype)
            for v, rows, prefix_rows in parts:
                block[np.ix_(rows, rows)] = x.blocks[v][np.ix_(prefix_rows, prefix_rows)]
            blocks[w] = block
        x = MultiMatrix(tower, m, blocks)
    return x

def embed_all(elements, target):
    return [embed(x, target) for x in elements]

def markov_trace(x):
    """tr(x) = sum over v of mu(v)/beta^m * Tr(x_v); tr(1) = 1."""
    total = sum(x.tower.trace_weight(x.level, v) * np.trace(b) \
        for v, b in x.blocks.items())
    if np.iscomplexobj(total) and abs(np.imag(total)) > 0:
        return complex(total)
    return float(np.real(total))

def trace_inner(x, y):
    """<x, y> = tr(y* x)."""
    x._check(y)
    val = np.vdot(y.vectorize(), x.vectorize())
    return complex(val) if np.iscomplexobj(val) and np.imag(val) != 0 else float(np.real(val))

def jones_projection_matrix(tower, i, level=None):
    """Jones projection e_i in the path model, built at level i+1 and embedded
    to `level` if given.

    e_i only mixes paths that agree outside edges i, i+1 and make a round trip
    v -> w -> v there, with entry ``sqrt(mu(w) mu(w'))/(beta mu(v))`` between
    the trips through w and w'.

    Raises: :class:`~util_tl.TowerError` unless 1 <= i and i+1 <= depth.
    """
    if i < 1 or i + 1 > tower.depth:
        raise TowerError("e_{} needs level {} but {!r} stops at {}".format(
            i, i + 1, tower, tower.depth))
    m = i + 1
    beta = tower.beta
    blocks = {}
    for v_end, paths in tower.levels[m].items():
        n = len(paths)
        block = np.zeros((n, n))
        groups = collections.defaultdict(list)
        for row, path in enumerate(paths):
            if path[i-1] == path[i+1]:
                groups[path[:i]].append(row)
        for rows in groups.values():
            v = paths[rows[0]][i-1]
            psi = np.array([
                np.sqrt(tower.mu(paths[r][i]) / (beta * tower.mu(v))) for r in rows
            ])
            block[np.ix_(rows, rows)] = np.outer(psi, psi)
        blocks[v_end] = block
    e = MultiMatrix(tower, m, blocks)
    if level is not None:
        e = embed(e, level)
    return e

def jones_projections(tower, count, level):
    """e_1 .. e_count, all embedded to `level`."""
    return [jones_projection_matrix(tower, i, level) for i in range(1, count + 1)]

def word_matrix(tower, word, level):
    """Product e_{w_1} e_{w_2} ... at `level`; the empty word is the identity."""
    result = identity(tower, level)
    for i in word:
        result = result.dot(jones_projection_matrix(tower, i, level))
    return result

# ------------------------------------

def generated_subalgebra(gens, level=None, tower=None, cap=None, tol=None, verbose=0):
    """Trace-orthonormal basis of the unital *-algebra generated by `gens`.

    The identity is always included. Starting from it, the span is closed
    under right multiplication by the generators and their adjoints; new
    products are kept if their component orthogonal to the current span has
    norm above `tol` (two-pass Gram-Schmidt in the trace inner product).

    Args:
        gens (list of :class:`MultiMatrix`): generators at a common level.
        level, tower: only needed when `gens` is empty.
        cap (int, optional): dimension limit, default ``subalgebra_cap``.
        tol (float, optional): rank tolerance, default ``rank_tolerance``.

    Returns: list of :class:`MultiMatrix`, the first being the identity.

    Raises: :class:`~util_tl.SubalgebraOverflowError` if the span grows past
        `cap`.
    """
    cap = util_tl.setting('subalgebra_cap', cap)
    tol = util_tl.setting('rank_tolerance', tol)
    gens = list(gens)
    if gens:
        tower, level = gens[0].tower, gens[0].level
        for g in gens[1:]:
            gens[0]._check(g)
    elif tower is None or level is None:
        raise TowerError("need a tower and level when no generators are given")
    closed = []
    for g in gens:
        closed.append(g)
        if (g - g.adjoint()).max_entry() > tol:
            closed.append(g.adjoint())

    one = identity(tower, level)
    mat = np.array([one.vectorize() / np.sqrt(abs(trace_inner(one, one)))])
    basis = [MultiMatrix.from_vector(tower, level, mat[0])]
    queue = collections.deque(basis)
    while queue:
        b = queue.popleft()
        for g in closed:
            cand = b.dot(g).vectorize()
            scale = max(1., np.linalg.norm(cand))
            for _ in range(2):
                cand = cand - mat.T.dot(mat.conj().dot(cand))
            resid = np.linalg.norm(cand)
            if resid <= tol * scale:
                continue
            vec = cand / resid
            mat = np.vstack([mat, vec])
            new = MultiMatrix.from_vector(tower, level, vec)
            basis.append(new)
            queue.append(new)
            if len(basis) > cap:
                raise SubalgebraOverflowError(
                    "generated subalgebra exceeds dimension {}".format(cap))
    util.debug_print(verbose, "subalgebra of level {} generated by {} elements "
        "has dimension {}", level, len(gens), len(basis))
    return basis

def _basis_matrix(basis, tol):
    mat = np.array([b.vectorize() for b in basis])
    gram = mat.conj().dot(mat.T)
    err = np.max(np.abs(gram - np.eye(len(basis)))) if len(basis) else 0.
    if err > tol:
        raise BasisError("Gram matrix deviates from identity by {:.3g}".format(err))
    return mat

def conditional_expectation(basis, x, tol=None):
    """E_B(x) = sum over b of <x, b> b, the trace-preserving projection onto
    the span of the orthonormal `basis`.

    Raises: :class:`~util_tl.BasisError` if the basis is not orthonormal
        within `tol` (default ``basis_tolerance``), :class:`~util_tl.TowerError`
        if levels differ.
    """
    tol = util_tl.setting('basis_tolerance', tol)
    if not basis:
        raise BasisError("empty basis")
    basis[0]._check(x)
    mat = _basis_matrix(basis, tol)
    vec = mat.T.dot(mat.conj().dot(x.vectorize()))
    if not np.iscomplexobj(x.blocks[next(iter(x.blocks))]):
        vec = np.real(vec)
    return MultiMatrix.from_vector(x.tower, x.level, vec)

# ------------------------------------

def level_dimensions(tower):
    """Per-level block sizes and algebra dimensions."""
    return [collections.OrderedDict([
        ('m', m),
        ('blocks', [collections.OrderedDict([('vertex', v), ('size', n)]) \
            for v, n in tower.block_sizes(m).items()]),
        ('dim', tower.dimension(m))
    ]) for m in range(tower.depth + 1)]

def tower_to_json(tower):
    return collections.OrderedDict([
        ('graph', tower.graph.name),
        ('star', tower.graph.star),
        ('levels', level_dimensions(tower))
    ])

def bratteli_to_dot(tower):
    """Bratteli diagram of the tower in DOT: one rank per level, nodes
    labelled with block sizes, an edge for each one-step inclusion.
    """
    node = lambda m, v: '"{}:{}"'.format(m, v)
    lines = ['digraph "{} bratteli" {{'.format(tower.graph.name),
        '  rankdir=TB;']
    for m in range(tower.depth + 1):
        sizes = tower.block_sizes(m)
        lines.append('  {{ rank=same; {} }}'.format(
            ' '.join(node(m, v) + ';' for v in sizes)))
        for v, n in sizes.items():
            lines.append('  {} [label="{} ({})"];'.format(node(m, v), v, n))
    for m in range(1, tower.depth + 1):
        for w, parts in tower.extensions(m).items():
            for v, _, _ in parts:
                lines.append('  {} -> {};'.format(node(m - 1, v), node(m, w)))
    lines.append('}')
    return '\n'.join(lines) + '\n'
