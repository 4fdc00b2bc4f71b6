"""Function specifications: a value expression plus a derivative route.

FunctionSpec is how verifiers receive their f, g, h inputs.  The value
is always an expression AST; the derivative is either another AST
(supplied, or produced symbolically at construction) or a central
finite-difference rule on the value, selected by derivative_mode.

Scalar calls go through the tree evaluator for precise domain faults;
array calls go through compiled programs on the active backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .expr import nodes as en
from .expr.derivative import differentiate
from .expr.nodes import Func, Node, eval_ast, to_string
from .expr.parser import parse
from .expr.program import Program, compile_ast

__all__ = ["FunctionSpec", "value_function", "as_function_spec"]

_FD_EPS_CUBE_ROOT = float(np.finfo(np.float64).eps) ** (1.0 / 3.0)


@dataclass(frozen=True)
class FunctionSpec:
    """A scalar function of x with an evaluable first derivative.

    derivative_mode is 'symbolic' (derivative is an AST) or
    'finite_difference' (central differences on the value expression,
    step h = eps^(1/3)*max(1, |x|)).
    """

    value: Node
    derivative: Node | None = None
    derivative_mode: str = "symbolic"

    def __post_init__(self):
        if not isinstance(self.value, Node):
            raise TypeError("value must be an expression AST")
        if self.derivative_mode not in ("symbolic", "finite_difference"):
            raise ValueError(
                "derivative_mode must be 'symbolic' or 'finite_difference', "
                f"got {self.derivative_mode!r}"
            )
        if self.derivative_mode == "symbolic" and self.derivative is None:
            object.__setattr__(self, "derivative", differentiate(self.value))
        if self.derivative_mode == "finite_difference" and (
            self.derivative is not None
        ):
            raise ValueError(
                "finite_difference mode does not take a derivative expression"
            )

    @classmethod
    def from_text(cls, text, derivative_text=None,
                  derivative_mode="symbolic"):
        value = parse(text)
        derivative = parse(derivative_text) if derivative_text else None
        return cls(value, derivative, derivative_mode)

    @property
    def value_text(self):
        return to_string(self.value)

    @property
    def derivative_text(self):
        if self.derivative is None:
            return None
        return to_string(self.derivative)

    @cached_property
    def value_program(self) -> Program:
        return compile_ast(self.value)

    @cached_property
    def derivative_program(self) -> Program | None:
        if self.derivative is None:
            return None
        return compile_ast(self.derivative)

    @property
    def derivative_kinked(self):
        """True when the symbolic derivative contains an abs factor (its
        sign expression faults exactly at the kink)."""
        if self.derivative is None:
            return False
        return en.contains(self.derivative,
                           lambda n: isinstance(n, Func) and n.name == "abs")

    def __call__(self, x):
        if np.ndim(x) == 0:
            return eval_ast(self.value, float(x))
        return self.value_program.eval(np.asarray(x, dtype=np.float64))

    def deriv(self, x):
        if self.derivative_mode == "finite_difference":
            return self._fd_deriv(x)
        if np.ndim(x) == 0:
            return eval_ast(self.derivative, float(x))
        return self.derivative_program.eval(np.asarray(x, dtype=np.float64))

    def _fd_deriv(self, x):
        scalar = np.ndim(x) == 0
        xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
        h = _FD_EPS_CUBE_ROOT * np.maximum(1.0, np.abs(xv))
        upper = self.value_program.eval(xv + h)
        lower = self.value_program.eval(xv - h)
        out = (upper - lower) / (2.0 * h)
        return float(out[0]) if scalar else out.reshape(np.shape(x))


class _CallableValue:
    """Adapter giving a plain callable the small value-only surface the
    verifiers need (scalar call, vectorised call, no AST)."""

    def __init__(self, fn):
        self.fn = fn
        self.ast = None

    def at(self, x):
        return float(self.fn(float(x)))

    def vec(self, xs):
        xs = np.asarray(xs, dtype=np.float64)
        with np.errstate(all="ignore"):
            try:
                out = np.asarray(self.fn(xs), dtype=np.float64)
                if out.shape == xs.shape:
                    return out
            except (TypeError, ValueError):
                pass
            return np.array([float(self.fn(float(x))) for x in xs])


class _AstValue:
    def __init__(self, ast):
        self.ast = ast
        self._program = compile_ast(ast)

    def at(self, x):
        return eval_ast(self.ast, float(x))

    def vec(self, xs):
        return self._program.eval(np.asarray(xs, dtype=np.float64))


def value_function(obj):
    """Coerce an input to a value-only adapter with .ast/.at/.vec.

    Accepts FunctionSpec, expression text, AST nodes, Programs, plain
    callables, or numeric constants.
    """
    if isinstance(obj, FunctionSpec):
        return _AstValue(obj.value)
    if isinstance(obj, str):
        return _AstValue(parse(obj))
    if isinstance(obj, Node):
        return _AstValue(obj)
    if isinstance(obj, Program):
        return _AstValue(obj.source)
    if isinstance(obj, (int, float)):
        return _AstValue(en.Num(float(obj)))
    if callable(obj):
        return _CallableValue(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a function")


def as_function_spec(obj, derivative_mode="symbolic"):
    """Coerce text or AST inputs to a FunctionSpec (symbolic derivative)."""
    if isinstance(obj, FunctionSpec):
        return obj
    if isinstance(obj, str):
        return FunctionSpec.from_text(obj, derivative_mode=derivative_mode)
    if isinstance(obj, Node):
        return FunctionSpec(obj, derivative_mode=derivative_mode)
    raise TypeError(
        "need a FunctionSpec, expression text, or AST with a derivative "
        f"route, not {type(obj).__name__}"
    )
