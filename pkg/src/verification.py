"""Residual-based checks of algebraic relations and the report object that
collects them. Relation failures never raise; they show up as report entries
with ``pass`` false.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import itertools
import collections
import numpy as np
from src import util
from src import util_tl
from src import path_algebras as pa
from src import tl_diagrams

VACUOUS = 'vacuous'


class VerificationReport(object):
    """Ordered list of named residual checks.

    Each entry is a :class:`~util.NameSpace` with ``name``, ``residual``,
    ``tolerance``, ``pass`` and ``note``. A check passes when its residual is
    strictly below its tolerance.
    """
    def __init__(self):
        self.checks = []

    def add(self, name, residual, tolerance, note=''):
        residual = float(abs(residual))
        entry = util.NameSpace(name=name, residual=residual,
            tolerance=float(tolerance), note=note)
        entry['pass'] = bool(residual < tolerance)
        self.checks.append(entry)
        return entry

    def extend(self, other, prefix=''):
        for c in other.checks:
            self.add(prefix + c.name, c.residual, c.tolerance, c.note)
        return self

    def evaluate(self, checks, parallel=False):
        """Run `checks`, a list of ``(name, fn, tolerance)`` or ``(name, fn,
        tolerance, note)`` tuples where ``fn()`` returns the residual, and add
        the results in list order. With `parallel` each residual is computed
        in its own :class:`~util.ExceptionPropagatingThread`; an exception in
        any check is re-raised here.
        """
        if parallel:
            threads = [util.ExceptionPropagatingThread(target=c[1]) for c in checks]
            for t in threads:
                t.start()
            residuals = [t.join() for t in threads]
        else:
            residuals = [c[1]() for c in checks]
        for c, r in zip(checks, residuals):
            note = c[3] if len(c) > 3 else ''
            self.add(c[0], r, c[2], note)
        return self

    @property
    def overall(self):
        return all(c['pass'] for c in self.checks)

    def failed(self):
        return [c.name for c in self.checks if not c['pass']]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, system=None):
        return collections.OrderedDict([
            ('system', system if system is not None else collections.OrderedDict()),
            ('checks', [collections.OrderedDict([
                ('name', c.name), ('residual', c.residual),
                ('tolerance', c.tolerance), ('pass', c['pass'])
            ] + ([('note', c.note)] if c.note else [])) for c in self.checks]),
            ('overall', self.overall)
        ])

    def to_text(self):
        lines = []
        for c in self.checks:
            line = '{:<4} {:<40} residual={} tol={}'.format(
                'ok' if c['pass'] else 'FAIL', c.name,
                util.format_number(c.residual, 3), util.format_number(c.tolerance, 3))
            if c.note:
                line += ' ({})'.format(c.note)
            lines.append(line)
        lines.append('overall: {}'.format('PASS' if self.overall else 'FAIL'))
        return '\n'.join(lines)

# ------------------------------------

def _residual(fn):
    return lambda: fn().norm()

def tl_relation_checks(report, projections, labels, tau, tol=None, parallel=True):
    """Add the Temperley-Lieb relations for the sequence `projections`
    (consecutive entries are neighbours) to `report`: idempotent,
    self-adjoint, ``x y x = tau x`` for neighbours and commutation for
    entries two or more apart. Residuals are operator norms.
    """
    tol = util_tl.setting('tolerance', tol)
    checks = []
    for x, lbl in zip(projections, labels):
        checks.append(('{} idempotent'.format(lbl),
            _residual(lambda x=x: x.dot(x) - x), tol))
        checks.append(('{} self-adjoint'.format(lbl),
            _residual(lambda x=x: x.adjoint() - x), tol))
    n = len(projections)
    for i in range(n - 1):
        x, y = projections[i], projections[i+1]
        checks.append(('{0} {1} {0} = tau {0}'.format(labels[i], labels[i+1]),
            _residual(lambda x=x, y=y: x.dot(y).dot(x) - tau * x), tol))
        checks.append(('{0} {1} {0} = tau {0}'.format(labels[i+1], labels[i]),
            _residual(lambda x=x, y=y: y.dot(x).dot(y) - tau * y), tol))
    for i in range(n):
        for j in range(i + 2, n):
            x, y = projections[i], projections[j]
            checks.append(('{} {} commute'.format(labels[i], labels[j]),
                _residual(lambda x=x, y=y: x.dot(y) - y.dot(x)), tol))
    return report.evaluate(checks, parallel=parallel)

def words(alphabet_size, max_len):
    """All words over ``1..alphabet_size`` of length <= `max_len`, shortest
    first, each length in lexicographic order.
    """
    for length in range(max_len + 1):
        for w in itertools.product(range(1, alphabet_size + 1), repeat=length):
            yield w

def markov_residual(first, rest, tau, max_len):
    """max over words w in `rest` of |tr(first w) - tau tr(w)|."""
    worst = 0.
    one = pa.identity(first.tower, first.level)
    for w in words(len(rest), max_len):
        word = one
        for idx in w:
            word = word.dot(rest[idx - 1])
        worst = max(worst,
            abs(pa.markov_trace(first.dot(word)) - tau * pa.markov_trace(word)))
    return worst

def markov_checks(report, projections, labels, tau, tol=None, max_len=3):
    """Markov property ``tr(e_i w) = tau tr(w)`` for every w in the words of
    length <= `max_len` over the projections before e_i.
    """
    tol = util_tl.setting('tolerance', tol)
    return report.evaluate([
        ('Markov {}'.format(labels[i]),
            (lambda i=i: markov_residual(projections[i], projections[:i], tau, max_len)),
            tol) for i in range(len(projections))
    ])

def oracle_checks(report, tower, count, max_len, tol=None, level=None):
    """Markov traces of all words over e_1..e_count (length <= `max_len`) in
    the path model against the diagrammatic algebra with delta = beta.
    """
    tol = util_tl.setting('tolerance', tol)
    level = count + 1 if level is None else level
    jones = pa.jones_projections(tower, count, level)
    one = pa.identity(tower, level)
    delta = tower.beta
    worst = 0.
    cache = {(): one}
    for w in words(count, max_len):
        if w not in cache:
            cache[w] = cache[w[:-1]].dot(jones[w[-1] - 1])
        diagram = tl_diagrams.word_element(w, count + 1, delta)
        worst = max(worst, abs(pa.markov_trace(cache[w]) \
            - tl_diagrams.markov_trace_diagram(diagram, delta)))
    report.add('diagram oracle traces, words <= {}'.format(max_len), worst, tol)
    return report

def embed_checks(report, tower, rng, tol=None, samples=2):
    """Sampled checks that embedding is a unital trace-preserving
    *-homomorphism between consecutive levels.
    """
    tol = util_tl.setting('tolerance', tol)
    unital = trace = mult = adj = 0.
    for m in range(tower.depth):
        unital = max(unital, (pa.embed(pa.identity(tower, m), m + 1) \
            - pa.identity(tower, m + 1)).norm())
        for _ in range(samples):
            x = pa.random_element(tower, m, rng)
            y = pa.random_element(tower, m, rng)
            ex, ey = pa.embed(x, m + 1), pa.embed(y, m + 1)
            trace = max(trace, abs(pa.markov_trace(ex) - pa.markov_trace(x)))
            mult = max(mult, (pa.embed(x.dot(y), m + 1) - ex.dot(ey)).norm())
            adj = max(adj, (pa.embed(x.adjoint(), m + 1) - ex.adjoint()).norm())
    report.add('embed unital', unital, tol)
    report.add('embed preserves trace', trace, tol)
    report.add('embed multiplicative', mult, tol)
    report.add('embed preserves adjoint', adj, tol)
    return report

def verify_tl(tower, tol=None, seed=0, max_len=3, verbose=0):
    """Relation suite for the path-model Jones projections of `tower`:
    TL relations and traces of e_1..e_{depth-1} at the top level, the Markov
    property, agreement with the diagrammatic trace and sampled embedding
    checks seeded by `seed`.
    """
    tol = util_tl.setting('tolerance', tol)
    level = tower.depth
    count = level - 1
    report = VerificationReport()
    if count < 1:
        report.add('e_1 exists', 0., tol, note=VACUOUS)
    else:
        jones = pa.jones_projections(tower, count, level)
        labels = ['e{}'.format(i) for i in range(1, count + 1)]
        util.debug_print(verbose, "verifying {} projections at level {}", count, level)
        tl_relation_checks(report, jones, labels, tower.tau, tol)
        report.add('tr(e_i) = tau', max(abs(pa.markov_trace(e) - tower.tau) for e in jones), tol)
        markov_checks(report, jones, labels, tower.tau, tol, max_len)
        oracle_checks(report, tower, count, max_len, tol, level)
    embed_checks(report, tower, np.random.default_rng(seed), tol)
    return report

def system_json(tower, level, **extra):
    d = collections.OrderedDict([
        ('graph', tower.graph.name), ('star', tower.graph.star),
        ('tau', tower.tau), ('level', level)
    ])
    d.update(sorted(extra.items()))
    return d
