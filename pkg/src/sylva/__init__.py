"""Certifying toolkit for tree packing, matroid union, arborescence
packing, graph/hypergraph orientation and the Shannon switching game.

Every decision procedure returns a constructive witness or a dual
certificate, and both sides can be re-verified independently of the
algorithm that produced them.
"""

from .core import (
    CutCertificate,
    Digraph,
    Graph,
    MixedGraph,
    Partition,
    contract,
    min_in_cut,
    partition_stats,
)
from .errors import (
    InputError,
    InstanceTooLargeError,
    InternalCertificateError,
    MatroidInconsistencyError,
    SylvaError,
)

__all__ = [
    "CutCertificate",
    "Digraph",
    "Graph",
    "MixedGraph",
    "Partition",
    "contract",
    "min_in_cut",
    "partition_stats",
    "InputError",
    "InstanceTooLargeError",
    "InternalCertificateError",
    "MatroidInconsistencyError",
    "SylvaError",
]

__version__ = "0.1.0"
