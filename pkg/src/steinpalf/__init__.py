"""Lefschetz fibrations from Stein handle diagrams.

Typical use::

    from steinpalf import parse_diagram, build, cross_check

    d = parse_diagram("trefoil.json")
    result = build(d)
    cross_check(result.palf, d)
"""

from .diagram import HandleDiagram, GridFront, convert_std_to_dotted, parse_diagram, tb
from .errors import (
    CrossCheckFailure,
    FramingMismatch,
    OrderViolation,
    ParseError,
    SteinPalfError,
    ValidationError,
)
from .invariants import cross_check, report_kirby, report_palf
from .kernels import BACKEND
from .palf import Palf, build, stabilize_palf
from .rectangulation import Attachment, decompose

__version__ = "0.1.0"

__all__ = [
    "Attachment",
    "BACKEND",
    "CrossCheckFailure",
    "FramingMismatch",
    "GridFront",
    "HandleDiagram",
    "OrderViolation",
    "Palf",
    "ParseError",
    "SteinPalfError",
    "ValidationError",
    "build",
    "convert_std_to_dotted",
    "cross_check",
    "decompose",
    "parse_diagram",
    "report_kirby",
    "report_palf",
    "stabilize_palf",
    "tb",
]
