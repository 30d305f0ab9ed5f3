"""Exact computer algebra for twists, gauge transformations and twisted
automorphisms of truncated enveloping algebras U(g)[h]/(h^{N+1})."""

from .algebra import TensorElem, UEAElem
from .errors import HopfTwistError
from .lie import LieAlgebraData, builtin, heisenberg, invariant_skew2, validate_lie
from .scalars import HSeries, Rational, format_rational, parse_rational
from .twist import (TwistedEndo, apply_gauge, compose, gauge_twist, normalize_invariant_twist,
                    separate, verify_twist)
from .uea import UEA

__all__ = [
    "HSeries", "HopfTwistError", "LieAlgebraData", "Rational", "TensorElem", "TwistedEndo",
    "UEA", "UEAElem", "apply_gauge", "builtin", "compose", "format_rational", "gauge_twist",
    "heisenberg", "invariant_skew2", "normalize_invariant_twist", "parse_rational",
    "separate", "validate_lie", "verify_twist",
]
__version__ = "0.1.0"
