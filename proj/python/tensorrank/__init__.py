"""Tensor rank functions, full-rank subtensors and Tucker approximation.

Arrays are NumPy ``float64`` arrays in C order (last index fastest). Mode
numbers and index lists are 1-based, matching the command-line tool.
"""

from ._core import (
    ArgumentError,
    CapacityError,
    FormatError,
    InvariantError,
    NumericError,
    SelectionError,
    TensorRankError,
    axiom_report,
    closure,
    extract_brute_force,
    extract_max_tucker,
    fold,
    identity_tensor,
    is_full_rank,
    mode_product,
    n_rank,
    planted_tucker,
    prop36,
    rank,
    read_tns,
    submax,
    subtensor,
    sweep,
    thm34,
    tucker,
    unfold,
    write_tns,
)

__all__ = [name for name in dir() if not name.startswith("_")]
