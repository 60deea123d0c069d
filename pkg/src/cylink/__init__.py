"""Cylinder braids and an exact Kauffman-type invariant of solid-torus links.

The package models the type-B braid group on n strands (braids that may
wind around a fixed axis), unoriented framed tangle diagrams in the
cylinder with axis-attached points, and evaluates closed diagrams to exact
Laurent polynomials via a terminating skein rewrite system.  A matrix
harness checks candidate tensor representations against every axiom, and
a small formal-word calculus covers the underlying action-pair syntax.
"""

from .braid import (
    ArtinWord,
    BraidWord,
    abelianize,
    defining_relations,
    embed,
    equivalent,
    format_word,
    free_reduce,
    is_trivial,
    parse_word,
)
from .diagram import (
    TangleWord,
    closure,
    compose,
    format_diagram,
    from_braid,
    parse_diagram,
    simplify,
    validate,
)
from .ring import (
    LaurentPoly,
    ParamTable,
    derive_params,
    parse_elem,
    reduced_table,
    verify_identities,
)
from .skein import Budget, Evaluator, evaluate, invariant, rule_set

__all__ = [
    "ArtinWord", "BraidWord", "abelianize", "defining_relations", "embed",
    "equivalent", "format_word", "free_reduce", "is_trivial", "parse_word",
    "TangleWord", "closure", "compose", "format_diagram", "from_braid",
    "parse_diagram", "simplify", "validate",
    "LaurentPoly", "ParamTable", "derive_params", "parse_elem",
    "reduced_table", "verify_identities",
    "Budget", "Evaluator", "evaluate", "invariant", "rule_set",
]

__version__ = "0.1.0"
