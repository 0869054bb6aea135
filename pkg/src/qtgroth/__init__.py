"""Exact (q,t)-characters of type B quantum affine algebras, quantum cluster
mutations on twisted AR quivers, and the simple-module dictionary between
type A_{2n-1} and type B_n."""

from .cartan import CartanData, build_cartan, closed_form_B, inverse_qcartan
from .errors import ConsistencyError, DepthError, IdentityViolation, QtGrothError, ValidationError
from .io import parse_monomial
from .quivers import QuiverSpec, ar_quiver, twist, window
from .torus import QuantumTorus, TLaurent, TorusElement, YMonomial, torus_for

__version__ = "0.1.0"

__all__ = [
    "CartanData",
    "build_cartan",
    "closed_form_B",
    "inverse_qcartan",
    "ConsistencyError",
    "DepthError",
    "IdentityViolation",
    "QtGrothError",
    "ValidationError",
    "parse_monomial",
    "QuiverSpec",
    "ar_quiver",
    "twist",
    "window",
    "QuantumTorus",
    "TLaurent",
    "TorusElement",
    "YMonomial",
    "torus_for",
]
