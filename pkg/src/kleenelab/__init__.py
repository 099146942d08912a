"""Finite Kleene algebras, their rough-set representation, the 3-valued logic
of Kleene negation, and compatibility-frame semantics."""

from importlib.resources import files

from .algebra import (
    FiniteBooleanAlgebra,
    FiniteKleeneAlgebra,
    FiniteLattice,
    canonical_iso_3I,
    check_kleene_axioms,
    embed_into_interval,
    extend_iso,
    interval_algebra,
    power_algebra,
    powerset_algebra,
    star,
    three,
)
from .perp import CompatibilityFrame, check_condition_kleene, countermodel_search, frame_valid, is_kleene_frame
from .represent import represent
from .roughsets import ApproximationSpace, approximations, rough_set_algebra, saturate_space
from .semantics import decide, entails_algebra, entails_f, entails_t, entails_tf
from .syntax import check_derivation, parse, parse_consequent, parse_derivation

__version__ = "0.1.0"


def data_path(*parts: str):
    """Path to a file shipped in the package's data directory."""
    return files(__name__).joinpath("data", *parts)
