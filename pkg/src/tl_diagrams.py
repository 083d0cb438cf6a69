"""The diagrammatic Temperley-Lieb algebra TL_n(delta): planar pairings of
2n boundary points, stacking with closed loops replaced by delta, Jones
projections and the Markov trace. Used as an independent oracle for the
path-model matrices in :mod:`path_algebras`.

Boundary points are stored 0-based: bottom points ``0..n-1`` and top points
``n..2n-1``, both numbered left to right. Planarity is tested in circular
order (bottom left to right, then top right to left).
:func:`multiply` ``(a, b, delta)`` stacks `b` on top of `a`.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import collections
import functools
from src import util_tl
from src.util_tl import DiagramError


class _UnionFind(object):
    """Disjoint sets over ``0..size-1`` with path compression and union by
    rank.
    """
    def __init__(self, size):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        if self.rank[ri] == self.rank[rj]:
            self.rank[ri] += 1
        return True

    def roots(self):
        return set(self.find(i) for i in range(len(self.parent)))


def _circular_position(point, n):
    return point if point < n else 3*n - 1 - point

def _point_at(pos, n):
    return pos if pos < n else 3*n - 1 - pos


@functools.total_ordering
class TLDiagram(object):
    """A Temperley-Lieb diagram on `n` strands: a planar perfect matching of
    the 2n boundary points. Diagrams carry no parameter; delta only enters at
    multiplication and trace time.

    Attributes:
        n (int): strand count.
        pairing (tuple of int): ``pairing[a]`` is the point matched with `a`.
    """
    __slots__ = ('n', 'pairing')

    def __init__(self, n, pairing):
        pairing = tuple(int(x) for x in pairing)
        if len(pairing) != 2*n:
            raise DiagramError("pairing of length {} for n={}".format(len(pairing), n))
        for a, b in enumerate(pairing):
            if not (0 <= b < 2*n) or b == a or pairing[b] != a:
                raise DiagramError("{} is not a fixed-point-free involution".format(pairing))
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'pairing', pairing)
        if not self.is_planar():
            raise DiagramError("{} is not planar".format(pairing))

    def __setattr__(self, key, value):
        raise AttributeError('TLDiagram is immutable')

    def arcs(self):
        """Pairs ``(a, b)`` with ``a < b``, sorted."""
        return [(a, b) for a, b in enumerate(self.pairing) if a < b]

    def is_planar(self):
        chords = sorted(
            tuple(sorted((_circular_position(a, self.n), _circular_position(b, self.n)))) \
                for a, b in self.arcs()
        )
        for i, (x1, y1) in enumerate(chords):
            for x2, y2 in chords[i+1:]:
                if x1 < x2 < y1 < y2:
                    return False
        return True

    def through_strands(self):
        return sum(1 for a, b in self.arcs() if a < self.n <= b)

    def adjoint(self):
        """Reflection exchanging top and bottom."""
        n = self.n
        flip = lambda p: p + n if p < n else p - n
        return TLDiagram(n, [flip(self.pairing[flip(a)]) for a in range(2*n)])

    def to_brackets(self):
        """Bracket sequence read in circular order."""
        chars = []
        for pos in range(2*self.n):
            partner = _circular_position(self.pairing[_point_at(pos, self.n)], self.n)
            chars.append('(' if partner > pos else ')')
        return ''.join(chars)

    def __eq__(self, other):
        return isinstance(other, TLDiagram) and \
            (self.n, self.pairing) == (other.n, other.pairing)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        return (self.n, self.pairing) < (other.n, other.pairing)

    def __hash__(self):
        return hash((self.n, self.pairing))

    def __repr__(self):
        return 'TLDiagram({}, {})'.format(self.n, self.to_brackets())


def identity_diagram(n):
    return TLDiagram(n, [a + n for a in range(n)] + [a for a in range(n)])

def cup_cap_diagram(i, n):
    """U_i: cup-cap joining strands i and i+1 (1-based), others through."""
    if not (1 <= i <= n - 1):
        raise DiagramError("index {} out of range 1..{}".format(i, n - 1))
    pairing = list(identity_diagram(n).pairing)
    b0, b1 = i - 1, i
    pairing[b0], pairing[b1] = b1, b0
    pairing[n + b0], pairing[n + b1] = n + b1, n + b0
    return TLDiagram(n, pairing)

def catalan(n):
    """Catalan numbers from the convolution recurrence."""
    c = [1]
    for m in range(n):
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return c[n]

def enumerate_diagrams(n, max_n=None):
    """All TL_n diagrams, sorted by pairing; there are Catalan(n) of them.

    Raises: :class:`~util_tl.DiagramError` if n exceeds the configured
        maximum.
    """
    max_n = util_tl.setting('max_diagram_strands', max_n)
    if n < 0 or n > max_n:
        raise DiagramError("n={} outside 0..{}".format(n, max_n))

    def _matchings(lo, hi):
        # non-crossing matchings of circular positions lo..hi-1
        if lo >= hi:
            yield []
            return
        for j in range(lo + 1, hi, 2):
            for inner in _matchings(lo + 1, j):
                for outer in _matchings(j + 1, hi):
                    yield [(lo, j)] + inner + outer

    diagrams = []
    for chords in _matchings(0, 2*n):
        pairing = [None] * (2*n)
        for x, y in chords:
            a, b = _point_at(x, n), _point_at(y, n)
            pairing[a], pairing[b] = b, a
        diagrams.append(TLDiagram(n, pairing))
    return sorted(diagrams)

def compose_diagrams(lower, upper):
    """Stack `upper` on top of `lower`.

    Returns: (:class:`TLDiagram`, int) the resulting diagram and the number
        of closed loops removed. Exact: no delta is involved.
    """
    n = lower.n
    if upper.n != n:
        raise DiagramError("strand counts {} and {} differ".format(n, upper.n))
    # points 0..2n-1 belong to lower, 2n..4n-1 to upper
    uf = _UnionFind(4*n)
    for a, b in lower.arcs():
        uf.union(a, b)
    for a, b in upper.arcs():
        uf.union(2*n + a, 2*n + b)
    for j in range(n):
        uf.union(n + j, 2*n + j) # lower top j meets upper bottom j
    outer = list(range(n)) + list(range(3*n, 4*n))
    components = collections.defaultdict(list)
    for p in outer:
        components[uf.find(p)].append(p)
    to_new = lambda p: p if p < n else p - 2*n
    pairing = [None] * (2*n)
    for pts in components.values():
        a, b = to_new(pts[0]), to_new(pts[1])
        pairing[a], pairing[b] = b, a
    loops = len(uf.roots()) - len(components)
    return TLDiagram(n, pairing), loops

def closure_loops(d):
    """Loops in the Markov closure of `d` (top j joined to bottom j)."""
    uf = _UnionFind(2*d.n)
    for a, b in d.arcs():
        uf.union(a, b)
    for j in range(d.n):
        uf.union(j, d.n + j)
    return len(uf.roots())

# ------------------------------------

class TLElement(object):
    """Formal linear combination of TL_n diagrams with real coefficients.
    Zero coefficients are pruned and terms are kept sorted by diagram.
    """
    def __init__(self, n, terms=None):
        self.n = n
        acc = collections.defaultdict(float)
        for d, c in (terms.items() if isinstance(terms, dict) else (terms or [])):
            if d.n != n:
                raise DiagramError("diagram on {} strands in TL_{}".format(d.n, n))
            acc[d] += c
        self.terms = collections.OrderedDict(
            (d, acc[d]) for d in sorted(acc) if acc[d] != 0
        )

    @classmethod
    def from_diagram(cls, d, coeff=1.):
        return cls(d.n, [(d, coeff)])

    def coefficient(self, d):
        return self.terms.get(d, 0.)

    def _check(self, other):
        if not isinstance(other, TLElement) or other.n != self.n:
            raise DiagramError("can't combine TL_{} with {!r}".format(self.n, other))

    def __add__(self, other):
        self._check(other)
        return TLElement(self.n, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + (-1.) * other

    def __rmul__(self, scalar):
        return TLElement(self.n, [(d, scalar * c) for d, c in self.terms.items()])

    def adjoint(self):
        return TLElement(self.n, [(d.adjoint(), c) for d, c in self.terms.items()])

    def max_coefficient(self):
        return max([abs(c) for c in self.terms.values()] + [0.])

    def __repr__(self):
        return 'TLElement({}, {})'.format(self.n,
            ', '.join('{:g}*{}'.format(c, d.to_brackets()) for d, c in self.terms.items()))


def identity_element(n):
    return TLElement.from_diagram(identity_diagram(n))

def multiply(a, b, delta):
    """Bilinear extension of stacking `b` on top of `a`, each closed loop
    contributing a factor `delta`.

    Raises: :class:`~util_tl.DiagramError` on strand-count mismatch.
    """
    if a.n != b.n:
        raise DiagramError("strand counts {} and {} differ".format(a.n, b.n))
    terms = []
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            d, loops = compose_diagrams(da, db)
            terms.append((d, ca * cb * delta**loops))
    return TLElement(a.n, terms)

def jones_projection_diagram(i, n, delta):
    """e_i = delta^-1 U_i, a self-adjoint idempotent for 1 <= i <= n-1."""
    return TLElement.from_diagram(cup_cap_diagram(i, n), 1. / delta)

def word_element(word, n, delta):
    """The product e_{w_1} e_{w_2} ... of Jones projections (empty word gives
    the identity).
    """
    d, loops = identity_diagram(n), 0
    for i in word:
        d, new_loops = compose_diagrams(d, cup_cap_diagram(i, n))
        loops += new_loops
    return TLElement.from_diagram(d, delta**(loops - len(word)))

def markov_trace_diagram(a, delta):
    """tr(d) = delta^(loops(closure(d)) - n), extended linearly; tr(1) = 1."""
    return sum(c * delta**(closure_loops(d) - a.n) for d, c in a.terms.items())

# ------------------------------------

def element_to_json(a):
    return collections.OrderedDict([
        ('n', a.n),
        ('terms', [collections.OrderedDict([
            ('pairing', list(d.pairing)), ('coeff', c)
        ]) for d, c in a.terms.items()])
    ])

def element_from_json(obj):
    n = int(obj['n'])
    return TLElement(n, [
        (TLDiagram(n, t['pairing']), float(t['coeff'])) for t in obj['terms']
    ])
