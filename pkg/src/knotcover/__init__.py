"""Periodic knot diagrams, two-bridge link component exchange, and torus knot covers."""

from __future__ import annotations

from .bracket import jones, kauffman_bracket
from .diagram import DiagramError, PlanarDiagram, validate
from .exchange import NormalFormLink, exchange_components
from .periodic import (
    AxisClosureDiagram,
    PeriodicDiagram,
    QuotientNormalForm,
    TangleDiagram,
    build_periodic,
    detect_period,
    normalize_unknot_quotient,
    quotient,
)
from .torus import TorusKnot, cover_signature, recover_torus_knot

__version__ = "0.1.0"

__all__ = [
    "AxisClosureDiagram",
    "DiagramError",
    "NormalFormLink",
    "PeriodicDiagram",
    "PlanarDiagram",
    "QuotientNormalForm",
    "TangleDiagram",
    "TorusKnot",
    "build_periodic",
    "cover_signature",
    "detect_period",
    "exchange_components",
    "jones",
    "kauffman_bracket",
    "normalize_unknot_quotient",
    "quotient",
    "recover_torus_knot",
    "validate",
]
