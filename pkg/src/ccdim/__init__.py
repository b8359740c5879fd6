"""Covering dimension of linear codes over finite fields."""
from .caps import Caps, CapExceeded, get_caps, set_caps
from .algebra import FieldSpec, FieldElem, MatrixGF, field_make, field_from_order

__version__ = "0.1.0"
