"""Stable marriage with ties and restricted edges.

Thin re-export of the compiled module. Instances, matchings and formulas are
passed as text in the CLI file formats; see the README for the grammar.
"""

try:
    from ._smtr import *  # noqa: F401,F403
    from ._smtr import __doc__ as _doc
except ImportError:  # pragma: no cover - build-tree layout
    from _smtr import *  # type: ignore # noqa: F401,F403
    from _smtr import __doc__ as _doc

__all__ = [
    "ValidationError",
    "solve",
    "verify",
    "oracle",
    "brute_1in3",
    "reduce_forbidden1",
    "reduce_dense",
    "reduce_sat_free",
    "complete_free",
    "gen_smti",
    "gen_1in3",
    "bench",
]
