"""Decremental all-pairs shortest paths on unweighted digraphs.

Three structures share one interface (``query``, ``matrix``, ``on_delete``,
``metrics``): :class:`ExactApsp`, :class:`ApproxDetApsp` and
:class:`RandApsp`, plus the :class:`EsBaseline` reference.  Each subscribes to
a :class:`DecrementalGraph` and updates itself on every ``delete_edge``.
"""
from __future__ import annotations

from .approx import ApproxDetApsp
from .baseline import EsBaseline
from .errors import (
    BadParams,
    DecApspError,
    NoEdgesLeft,
    OracleContractViolation,
    VerificationFailure,
)
from .exact import ExactApsp
from .graph import DecrementalGraph
from .randomized import RandApsp
from .trace import DeletionTrace

__all__ = [
    "ApproxDetApsp",
    "BadParams",
    "DecApspError",
    "DecrementalGraph",
    "DeletionTrace",
    "EsBaseline",
    "ExactApsp",
    "NoEdgesLeft",
    "OracleContractViolation",
    "RandApsp",
    "VerificationFailure",
]
