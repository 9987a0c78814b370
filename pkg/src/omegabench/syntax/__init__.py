from . import ast, classes, coding, descriptors, parser  # noqa: F401
from .ast import (And, App, Eq, Exists, Falsum, Forall, Imp, Num, Succ, Term,
                  Formula, Var, Zero, free_vars, iff, neg, num, sb, sb_term,
                  succ)
from .classes import (FormulaClass, NormalForm, bounded_exists,
                       bounded_forall, classify, eval_true, lt_formula,
                       normal_form, term_value)
from .coding import decode, decode_formula, decode_term, encode, nm
from .descriptors import (DEFAULT_SIGNATURE, Program, Signature, arity,
                          eval_pr, is_pr, register_native)
from .parser import parse_formula, parse_term, print_formula, print_term

__all__ = [n for n in dir() if not n.startswith("_")]
