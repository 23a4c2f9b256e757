"""Coupled multibrace algebra over exact rationals."""

__version__ = "0.1.0"

from .scalars import Element, GradedSpace
from .cochains import Cochain
from .engine import Environment, brace, brace_fold, compose, evaluate, infer_degrees
from .dsl import parse, to_text

__all__ = ["Element", "GradedSpace", "Cochain", "Environment", "brace", "brace_fold", "compose",
           "evaluate", "infer_degrees", "parse", "to_text"]
