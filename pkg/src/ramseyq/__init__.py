"""Model checking for Ramsey quantifiers R_f and the tractability dichotomy of f."""

from .evaluator import EvalConfig, Strategy, choose_strategy, eval_ramsey
from .reductions import (
    PreconditionError,
    ReductionOutput,
    embed_kclique_linear,
    embed_kclique_sublinear,
    pad_instance,
    probe_function,
    ramsey_membership,
)
from .solvers import (
    Certificate,
    clique_by_branch_and_bound,
    clique_by_enumeration,
    clique_by_vertex_cover,
    clique_oracle,
    verify_certificate,
)
from .structures import Graph, Model, add_vertices, model_to_graph
from .threshold import classify, dichotomy_verdict, eval_threshold, inverse_threshold, parse_threshold

__all__ = [name for name in dir() if not name.startswith("_")]
