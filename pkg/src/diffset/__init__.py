"""Difference sets, almost difference sets and modular Golomb rulers.

Construction, classification and exhaustive search in finite abelian
groups: residue and Singer families, single-element extension theorems,
MGR spectra with affine canonicity pruning, fixed-density necklace ADS
searches, and the order-8 cyclotomy classification of octic ADS.
"""

from .diffcore import (
    AdsParams,
    Classification,
    DiffProfile,
    classify,
    complement,
    difference_profile,
    sumset,
    t_hat,
    verify_relative_ds,
)
from .groups import GroupSpec, units
from .report import SearchReport

__version__ = "0.1.0"

__all__ = [
    "AdsParams",
    "Classification",
    "DiffProfile",
    "GroupSpec",
    "SearchReport",
    "classify",
    "complement",
    "difference_profile",
    "sumset",
    "t_hat",
    "units",
    "verify_relative_ds",
    "__version__",
]
