"""Doubly normalised tensors, joint measurability and permutation decompositions.

Matrices are complex numpy arrays; a DNT grid is a list of rows of matrices and
a POVM is a list of matrices.
"""

from ._dntkit import (
    Error,
    affine_decompose,
    bvn_decompose,
    columns,
    decide_permutation_decomposable,
    dnt_from_trivial_mother,
    dnt_is_extremal,
    jm_check,
    mother_of_trivial_pair,
    povm_is_extremal,
    pseudo_mother,
    random_dnt,
    random_povm,
    rows,
    run_cli,
    synthesize,
    trine_dnt,
    trine_povm,
    validate_dnt,
)

__all__ = [
    "Error",
    "affine_decompose",
    "bvn_decompose",
    "columns",
    "decide_permutation_decomposable",
    "dnt_from_trivial_mother",
    "dnt_is_extremal",
    "jm_check",
    "mother_of_trivial_pair",
    "povm_is_extremal",
    "pseudo_mother",
    "random_dnt",
    "random_povm",
    "rows",
    "run_cli",
    "synthesize",
    "trine_dnt",
    "trine_povm",
    "validate_dnt",
]

__version__ = "0.1.0"
