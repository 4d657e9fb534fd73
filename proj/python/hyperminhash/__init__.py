"""HyperMinHash sketches: streaming cardinality and set-similarity estimation.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._hyperminhash import (
    CardinalityRangeError,
    Correction,
    EmptySketchError,
    FormatError,
    IncompatibleParamsError,
    IoError,
    JaccardResult,
    ParamError,
    SaturatedSketchError,
    Sketch,
    SketchParams,
    collision_bound,
    derive_words,
    estimate_cardinality,
    expected_collisions_approx,
    expected_collisions_exact,
    gamma_bound,
    intersection,
    jaccard,
    recommend_params,
    union_of,
    variance_bound,
)

__all__ = [
    "CardinalityRangeError",
    "Correction",
    "EmptySketchError",
    "FormatError",
    "IncompatibleParamsError",
    "IoError",
    "JaccardResult",
    "ParamError",
    "SaturatedSketchError",
    "Sketch",
    "SketchParams",
    "collision_bound",
    "derive_words",
    "estimate_cardinality",
    "expected_collisions_approx",
    "expected_collisions_exact",
    "gamma_bound",
    "intersection",
    "jaccard",
    "recommend_params",
    "union_of",
    "variance_bound",
]

__version__ = "1.0.0"
