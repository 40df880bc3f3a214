"""Exact computation of the Orchard relation on point configurations and
its relatives (function families, spheres, projective space, pseudolines)."""

from .core import (OrchardPartition, OrchardTree, orchard_partition, orchard_related,
                   orchard_tree, separating_count, separating_subsets)
from .errors import (ConsistencyError, DiagramError, FlipError, InputError, NonGenericError,
                     OrchardError, ParityGateError, RetryBudgetExceeded)
from .geometry import Configuration, chirotope, is_generic, random_generic

__version__ = "0.1.0"
