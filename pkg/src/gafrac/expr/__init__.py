"""Expression DSL: parsing, ASTs, differentiation, compiled programs."""

from .derivative import differentiate
from .nodes import (
    X,
    BinOp,
    Func,
    Neg,
    Node,
    Num,
    Var,
    eval_ast,
    substitute,
    to_string,
)
from .parser import parse
from .program import Program, compile_ast

__all__ = [
    "X", "BinOp", "Func", "Neg", "Node", "Num", "Var",
    "eval_ast", "substitute", "to_string",
    "parse", "differentiate", "Program", "compile_ast",
]
