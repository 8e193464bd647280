"""Exact constellation-semantics reasoning for probabilistic argumentation
frameworks, with a tree-decomposition based dynamic programming solver."""

from .core import (
    AF,
    IN,
    OUT,
    PAF,
    UND,
    Labeling,
    Subframework,
    defends,
    extensions,
    grounded_extension,
    is_certain_respecting,
    is_conflict_free,
    labeling_of_set,
    labelings,
    set_of_labeling,
    subframework_probability,
)
from .errors import BudgetExceeded, CapacityError, InputError, PaftdError
from .generator import GridSpec, generate_grid, generate_grid_document, grid_elimination_order
from .oracle import (
    count_acc,
    count_ext,
    enumerate_subframeworks,
    p_acc_oracle,
    p_ext_oracle,
)
from .paffile import PafDocument, PafFormatError, parse_paf, serialize_paf
from .preprocess import (
    ExtSimplification,
    ForcedLabeling,
    forced_labeling,
    simplify_for_acc,
    simplify_for_ext,
)
from .solver import SolveResult, p_ext, solve, solve_with_trace
from .treedecomp import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose,
    elimination_order,
    make_nice,
    parse_td,
)

__version__ = "0.1.0"

__all__ = [
    "AF",
    "PAF",
    "IN",
    "OUT",
    "UND",
    "Labeling",
    "Subframework",
    "PaftdError",
    "InputError",
    "CapacityError",
    "BudgetExceeded",
    "defends",
    "extensions",
    "grounded_extension",
    "is_certain_respecting",
    "is_conflict_free",
    "labeling_of_set",
    "labelings",
    "set_of_labeling",
    "subframework_probability",
    "GridSpec",
    "generate_grid",
    "generate_grid_document",
    "grid_elimination_order",
    "count_acc",
    "count_ext",
    "enumerate_subframeworks",
    "p_acc_oracle",
    "p_ext_oracle",
    "PafDocument",
    "PafFormatError",
    "parse_paf",
    "serialize_paf",
    "ExtSimplification",
    "ForcedLabeling",
    "forced_labeling",
    "simplify_for_acc",
    "simplify_for_ext",
    "SolveResult",
    "p_ext",
    "solve",
    "solve_with_trace",
    "NiceTreeDecomposition",
    "TreeDecomposition",
    "decompose",
    "elimination_order",
    "make_nice",
    "parse_td",
]
