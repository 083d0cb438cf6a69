#!/usr/bin/env python

# ======================================================================
# forkedtl: Temperley-Lieb string algebras and forked subfactor toolkit
#
# Command-line driver. Subcommands and flags are defined in src/cli.jsonc.
# Exit status: 0 on success, 1 if a verification suite fails, 2 on
# argument or input errors.
# ======================================================================

from __future__ import absolute_import, division, print_function, unicode_literals
import sys
# do version check before importing other stuff
if sys.version_info[0] == 2 and sys.version_info[1] < 7:
    print(("ERROR: forkedtl only supports python >= 2.7. Please check "
    "which version is on your $PATH (e.g. with `which python`.)"))
    print("Attempted to run with following python version:\n{}".format(sys.version))
    exit()
# passed; continue with imports
import os
if __name__ == '__main__' and not __package__:
    # run as a script: import the package from the repo root, not src/
    sys.path[0] = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
import math
import collections
from src import cli
from src import util
from src import util_tl
from src import graph_catalog
from src import path_algebras
from src import verification
from src import forked_tl
from src import angle_analysis
from src.util_tl import ToolkitError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_code_root = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
_cli_rel_path = os.path.join('src', 'cli.jsonc')


class ForkedTLFramework(object):
    """Parses a command line into a run configuration and dispatches it to the
    ``cmd_<command>`` method, which returns an exit status.
    """
    def __init__(self, code_root=None, cli_rel_path=None, stdout=None):
        self.code_root = code_root or _code_root
        self.cli_obj = cli.CLIHandler(self.code_root, cli_rel_path or _cli_rel_path)
        self.stdout = stdout if stdout is not None else sys.stdout
        self.config = util.NameSpace()

    def parse(self, argv):
        config = util.NameSpace.fromDict(self.cli_obj.parse_cli(argv))
        if config.get('tol', 1.) <= 0:
            raise ToolkitError("--tol must be positive, got {}".format(config.tol))
        if config.get('depth', 1) < 1:
            raise ToolkitError("--depth must be >= 1, got {}".format(config.depth))
        self.config = config
        # an explicit --tol replaces the configured tolerance for this run;
        # otherwise the library default applies
        explicit = sorted(k for k, v in self.cli_obj.is_default.items() if not v)
        self.debug("options set on the command line: {}", explicit)
        util_tl.ConfigManager._reset()
        util_tl.ConfigManager(tolerance=config.tol if 'tol' in explicit else None)
        return config

    def emit(self, text, struct):
        if self.config.get('json', False):
            print(util.dumps_json(struct), file=self.stdout)
        else:
            print(text, file=self.stdout)

    def debug(self, msg, *args):
        util.debug_print(self.config.get('verbose', 0), msg, *args)

    def run(self, argv=None):
        try:
            config = self.parse(argv)
        except SystemExit as exc:
            # argparse: --help exits 0, malformed input 2
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        except ToolkitError as exc:
            print('ERROR: {}'.format(exc), file=sys.stderr)
            return EXIT_USAGE
        self.debug("command line: {}", dict(config))
        method = getattr(self, 'cmd_' + config.command)
        try:
            return method(config)
        except ToolkitError as exc:
            print('ERROR: {}'.format(exc), file=sys.stderr)
            return EXIT_USAGE
        except (ValueError, ArithmeticError) as exc:
            # numerical failure inside numpy/scipy on out-of-domain input
            print('ERROR: {}: {}'.format(type(exc).__name__, exc), file=sys.stderr)
            return EXIT_USAGE

    # --------------------------------------------------------------------

    def _graph(self, config, star=None):
        if not config.get('graph', None):
            raise ToolkitError("--graph is required")
        return graph_catalog.build_graph(config.graph, star or config.get('star', None))

    def _d_rank(self, config):
        parsed = graph_catalog.parse_graph_name(config.graph)
        if parsed.family != 'D':
            raise ToolkitError("this command needs a D<n> graph, got {}".format(config.graph))
        return parsed.params[0]

    def _graph_summary(self, g):
        sd = graph_catalog.spectral_data(g, verbose=self.config.get('verbose', 0))
        d = collections.OrderedDict([
            ('graph', g.name), ('star', g.star), ('vertices', list(g.vertices)),
            ('norm', sd.norm), ('tau', sd.tau)
        ])
        if graph_catalog.ade_type(g) is not None:
            d['coxeter'] = graph_catalog.coxeter_number(g)
        d['weights'] = sd.weights
        d['residual'] = sd.residual
        return d

    def cmd_graphs(self, config):
        if config.action == 'list':
            rows = [self._graph_summary(graph_catalog.build_graph(nm)) \
                for nm in graph_catalog.catalog_names(config.max_rank)]
            text = '\n'.join('{:<4} norm={} h={}'.format(
                r['graph'], util.format_number(r['norm']), r['coxeter']) for r in rows)
            self.emit(text, [collections.OrderedDict(
                (k, r[k]) for k in ('graph', 'vertices', 'norm', 'coxeter')) for r in rows])
            return EXIT_OK
        g = self._graph(config)
        if config.action == 'norm':
            d = self._graph_summary(g)
            tau = 'undefined' if d['tau'] is None else util.format_number(d['tau'])
            text = '{} norm={} tau={}\n{}'.format(g.name,
                util.format_number(d['norm']), tau,
                '\n'.join('  mu({})={}'.format(v, util.format_number(w)) \
                    for v, w in d['weights'].items()))
            self.emit(text, d)
        elif config.action == 'coxeter':
            h = graph_catalog.coxeter_number(g)
            norm = graph_catalog.graph_norm(g)
            d = collections.OrderedDict([('graph', g.name), ('coxeter', h),
                ('norm', norm), ('2cos(pi/h)', 2. * math.cos(math.pi / h))])
            self.emit('{} h={} norm={}'.format(g.name, h, util.format_number(norm)), d)
        else:
            dot = graph_catalog.graph_to_dot(g)
            if config.get('dot', None):
                util.write_file(config.dot, dot)
                self.emit('wrote {}'.format(config.dot),
                    collections.OrderedDict([('graph', g.name), ('dot', config.dot)]))
            else:
                print(dot, end='', file=self.stdout)
        return EXIT_OK

    def cmd_tower(self, config):
        g = self._graph(config)
        tower = path_algebras.build_tower(g, config.depth, verbose=config.verbose)
        d = path_algebras.tower_to_json(tower)
        lines = ['{} star={} depth={}'.format(g.name, g.star, tower.depth)]
        for lvl in d['levels']:
            lines.append('  level {}: dim={} blocks {}'.format(lvl['m'], lvl['dim'],
                ', '.join('{}:{}'.format(b['vertex'], b['size']) for b in lvl['blocks'])))
        if config.get('dot', None):
            util.write_file(config.dot, path_algebras.bratteli_to_dot(tower))
            lines.append('wrote {}'.format(config.dot))
        self.emit('\n'.join(lines), d)
        return EXIT_OK

    def cmd_verify(self, config):
        tol = util_tl.setting('tolerance')
        if config.suite == 'tl':
            tower = path_algebras.build_tower(self._graph(config), config.depth,
                verbose=config.verbose)
            report = verification.verify_tl(tower, tol, seed=config.seed,
                verbose=config.verbose)
            system = verification.system_json(tower, tower.depth)
        else:
            n = self._d_rank(config)
            fs = forked_tl.build_forked_system(n, config.depth, verbose=config.verbose)
            system = fs.system_json()
            if config.suite == 'forked':
                report = forked_tl.verify_forked(fs, tol=tol)
            elif config.suite == 'evans-gould':
                report = forked_tl.verify_evans_gould(fs, tol)
            elif config.suite == 'braid':
                report = angle_analysis.verify_braid(fs, tol=tol)
            elif config.suite == 'principal':
                report = forked_tl.verify_principal_graph(fs, tol)
            else:
                report, _ = angle_analysis.verify_angle_numeric(fs,
                    config.get('level', None), tol, verbose=config.verbose)
        self.emit(report.to_text(), report.to_json(system))
        return EXIT_OK if report.overall else EXIT_FAILED

    def cmd_angle(self, config):
        chosen = [k for k in ('graph', 'index', 'ghj') if config.get(k, None) is not None]
        if len(chosen) != 1:
            raise ToolkitError("give exactly one of --graph, --index, --ghj")
        if config.get('numeric', False) and chosen != ['graph']:
            raise ToolkitError("--numeric needs --graph")
        if config.get('index', None) is not None:
            res = angle_analysis.angle_closed_form(config.index)
        elif config.get('ghj', None) is not None:
            res = angle_analysis.angle_ghj(config.ghj)
        elif config.numeric:
            n = self._d_rank(config)
            level = config.get('level', None)
            depth = max(config.depth, level or 0)
            fs = forked_tl.build_forked_system(n, depth, verbose=config.verbose)
            res = angle_analysis.angle_numeric(fs, level, verbose=config.verbose)
        else:
            res = angle_analysis.angle_ghj(self._d_rank(config))
        self.emit(angle_analysis.describe_angle(res), angle_analysis.result_to_json(res))
        return EXIT_OK

    def cmd_fusion(self, config):
        if config.get('index', None) is None:
            raise ToolkitError("--index is required")
        fd = angle_analysis.fusion_dims(config.index, config.max_k, config.get('k', None))
        d = collections.OrderedDict([('index', fd.index), ('dims', fd.dims)])
        lines = ['dim V_{} = {}'.format(j, util.format_number(x)) for j, x in enumerate(fd.dims)]
        if 1. < fd.index < 4.:
            d['pq_module_dim'] = angle_analysis.pq_module_dim(fd.index)
            lines.append('dim L2(PQ) = {}'.format(util.format_number(d['pq_module_dim'])))
        self.emit('\n'.join(lines), d)
        return EXIT_OK

    def cmd_classify(self, config):
        if config.get('tau', None) is None:
            raise ToolkitError("--tau is required")
        cls = graph_catalog.classify_tau(config.tau, config.k)
        d = collections.OrderedDict([('tau', config.tau), ('k', config.k),
            ('verdict', cls.verdict), ('n', cls.n), ('graph', cls.graph)])
        text = cls.verdict if cls.graph is None else '{} ({})'.format(cls.verdict, cls.graph)
        self.emit(text, d)
        return EXIT_OK

    def cmd_angleset(self, config):
        angles = angle_analysis.angle_spectrum_set(config.max_k)
        rows = [collections.OrderedDict([('k', k), ('angle_rad', a),
            ('angle_deg', math.degrees(a))]) for k, a in enumerate(angles, start=3)]
        text = '\n'.join('k={} {} rad ({} deg)'.format(r['k'],
            util.format_number(r['angle_rad']), util.format_number(r['angle_deg'])) for r in rows)
        self.emit(text, rows)
        return EXIT_OK


def run(argv=None, stdout=None):
    """Run one command line; returns the exit status."""
    return ForkedTLFramework(stdout=stdout).run(argv)

def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
