"""Numerical defaults and the exception hierarchy shared by the toolkit
modules.
"""
from __future__ import absolute_import, division, print_function, unicode_literals
import six
from src import util


class ConfigManager(util.Singleton):
    """:class:`~util.Singleton` holding the numerical defaults used when a
    library call doesn't pass an explicit value.

    Attributes:
        tolerance (:py:obj:`float`): residual tolerance for relation checks.
        rank_tolerance (:py:obj:`float`): Gram-Schmidt rank detection cutoff.
        basis_tolerance (:py:obj:`float`): orthonormality check on bases passed
            to :func:`~path_algebras.conditional_expectation`.
        max_diagram_strands (:py:obj:`int`): largest n accepted by
            :func:`~tl_diagrams.enumerate_diagrams`.
        classify_search_bound (:py:obj:`int`): largest n searched by
            :func:`~graph_catalog.classify_tau`.
        jones_max_k (:py:obj:`int`): last k enumerated by
            :func:`~graph_catalog.jones_admissible_indices`.
        subalgebra_cap (:py:obj:`int`): dimension at which subalgebra
            generation gives up.
        max_block_entries (:py:obj:`int`): memory bound for towers, counted
            as the sum over levels of squared block sizes.
        power_iteration_max_iter (:py:obj:`int`): iteration cap before
            :func:`~graph_catalog.spectral_data` falls back to a dense solver.
    """
    _defaults = {
        'tolerance': 1e-9,
        'rank_tolerance': 1e-10,
        'basis_tolerance': 1e-8,
        'max_diagram_strands': 12,
        'classify_search_bound': 1000,
        'jones_max_k': 64,
        'subalgebra_cap': 5000,
        'max_block_entries': 4000000,
        'power_iteration_max_iter': 200000
    }

    def __init__(self, **kwargs):
        unknown = set(kwargs).difference(self._defaults)
        if unknown:
            raise KeyError('Unknown settings: {}'.format(sorted(unknown)))
        self.config = util.NameSpace(self._defaults)
        self.config.update(
            {k: v for k, v in kwargs.items() if v is not None}
        )

    def get(self, key, override=None):
        """Return `override` if it was given, otherwise the configured value."""
        if override is not None:
            return override
        return self.config[key]


def setting(key, override=None):
    """Shorthand for ``ConfigManager().get(key, override)``."""
    return ConfigManager().get(key, override)

# ------------------------------------

@six.python_2_unicode_compatible
class ToolkitError(ValueError):
    """Base class for errors raised on invalid input to toolkit operations.
    """
    label = 'Error'

    def __init__(self, msg=None):
        super(ToolkitError, self).__init__(msg)
        self.msg = msg

    def __str__(self):
        if self.msg is not None:
            return '{}: {}.'.format(self.label, self.msg)
        return '{}.'.format(self.label)

class GraphError(ToolkitError):
    """Unknown graph name, parameter out of range or bad star designator."""
    label = 'Graph error'

class DiagramError(ToolkitError):
    """Strand-count mismatch, projection index out of range or size limit."""
    label = 'Diagram error'

class TowerError(ToolkitError):
    """Depth or level out of range, mismatched levels or towers."""
    label = 'Tower error'

class SubalgebraOverflowError(ToolkitError):
    """Subalgebra generation exceeded its dimension cap."""
    label = 'Subalgebra overflow'

class BasisError(ToolkitError):
    """A basis passed to a conditional expectation isn't orthonormal."""
    label = 'Basis error'

class AngleError(ToolkitError):
    """Index outside the range where the angle formulas hold."""
    label = 'Angle error'
