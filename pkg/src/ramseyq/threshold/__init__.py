"""Threshold functions f(n): parsing, exact evaluation and classification."""

from .classify import (
    Certainty,
    FunctionCase,
    FunctionClass,
    Reason,
    ThresholdValidationError,
    Verdict,
    classify,
    dichotomy_verdict,
    doubling_schedule,
    inverse_threshold,
    monotone_by_construction,
    validate_threshold,
)
from .expr import (
    Add,
    ArithmeticCapacityError,
    Const,
    Expr,
    Log2,
    LogQuotient,
    Max,
    Min,
    Mul,
    Opaque,
    Scale,
    Sqrt,
    Sub,
    ThresholdExpr,
    Var,
    ceil_log2,
    ceil_sqrt,
    eval_threshold,
)
from .parser import ThresholdSemanticError, ThresholdSyntaxError, parse_threshold

__all__ = [name for name in dir() if not name.startswith("_")]
