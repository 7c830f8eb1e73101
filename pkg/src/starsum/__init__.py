"""Exact and numeric verification engine for nested harmonic sum identities.

The package is organized around one data model (signed compositions and
integer-coefficient formal sums of them, in ``index_core``), an exact
rational evaluation layer (``exact_eval``), identity-family builders and
sweep drivers (``families``), the quasi-shuffle algebra (``stuffle``),
tolerance-controlled numeric limits (``zeta_numeric``) and a command line
front end (``cli``).
"""

from starsum.index_core import FormalSum, SignedIndex, oplus, parse_index
from starsum.exact_eval import mhs, mhs_star, mollified_big, mollified_small
from starsum.families import FamilySpec, enumerate_specs, verify_instance, verify_sweep
from starsum.stuffle import stuffle, stuffle_product
from starsum.zeta_numeric import NumericValue, zeta, zeta_star

__all__ = [
    "SignedIndex",
    "FormalSum",
    "oplus",
    "parse_index",
    "mhs",
    "mhs_star",
    "mollified_big",
    "mollified_small",
    "FamilySpec",
    "enumerate_specs",
    "verify_instance",
    "verify_sweep",
    "stuffle",
    "stuffle_product",
    "NumericValue",
    "zeta",
    "zeta_star",
]

__version__ = "0.1.0"
