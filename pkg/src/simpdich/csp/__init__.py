from .indicator import IndicatorInstance, indicator_instance
from .pp import And, Atom, Bottom, Eq, Exists, PPFormula, Top, eval_pp, eval_pp_formula, pp_substitute
from .solver import Mode, solve, solve_projected
from .structure import FaceRelation, RelStructure, SignatureMismatch, TableRelation, tuple_set

__all__ = [
    "And", "Atom", "Bottom", "Eq", "Exists", "FaceRelation", "IndicatorInstance", "Mode",
    "PPFormula", "RelStructure", "SignatureMismatch", "TableRelation", "Top", "eval_pp", "eval_pp_formula",
    "indicator_instance", "pp_substitute", "solve", "solve_projected", "tuple_set",
]
