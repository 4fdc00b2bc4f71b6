"""Compilation of expression trees to flat stack programs.

A Program is the unit both kernel backends execute: parallel int32
``ops``/``args`` arrays in postorder, a float64 constant pool, and the
worst-case operand-stack depth.  Program.eval dispatches to the active
backend and converts silent nan/inf results back into precise
DomainFault diagnostics by re-walking the tree at the first offending
point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from .._kernels import opcodes as oc
from ..errors import DomainFault
from . import nodes
from .nodes import BinOp, Func, Neg, Node, Num, Var, eval_ast

__all__ = ["Program", "compile_ast"]

_BINOP_CODE = {
    "+": oc.OP_ADD,
    "-": oc.OP_SUB,
    "*": oc.OP_MUL,
    "/": oc.OP_DIV,
    "^": oc.OP_POW,
}

_FUNC_CODE = {
    "exp": oc.OP_EXP,
    "ln": oc.OP_LN,
    "sqrt": oc.OP_SQRT,
    "sin": oc.OP_SIN,
    "cos": oc.OP_COS,
    "abs": oc.OP_ABS,
}


@dataclass(frozen=True, eq=False)
class Program:
    ops: np.ndarray
    args: np.ndarray
    consts: np.ndarray
    stack_need: int
    source: Node = field(repr=False)

    def eval(self, xs, check=True):
        """Evaluate at a float array (any shape); returns a float64 array.

        With check=True (default) non-finite outputs raise DomainFault at
        the first offending input; check=False returns nan/inf as-is.
        """
        xs = np.asarray(xs, dtype=np.float64)
        flat = np.ascontiguousarray(xs.reshape(-1))
        kern = _kernels.kernels()
        with np.errstate(all="ignore"):
            out = kern.eval_program(
                self.ops, self.args, self.consts, self.stack_need, flat
            )
        if check and not np.all(np.isfinite(out)):
            bad = flat[~np.isfinite(out)][0]
            # Re-walk the tree for the precise subexpression and reason.
            eval_ast(self.source, bad)
            raise DomainFault("non-finite result", nodes.to_string(self.source),
                              bad)
        return out.reshape(xs.shape)

    def eval_scalar(self, x):
        """Evaluate at one point with tree-walking fault diagnostics."""
        return eval_ast(self.source, x)

    def __call__(self, xs):
        return self.eval(xs)


def compile_ast(node):
    """Flatten a tree into a Program for the kernel backends."""
    ops = []
    args = []
    consts = []
    const_index = {}

    def push_const(v):
        key = np.float64(v).tobytes()
        idx = const_index.get(key)
        if idx is None:
            idx = len(consts)
            consts.append(float(v))
            const_index[key] = idx
        ops.append(oc.OP_CONST)
        args.append(idx)

    def emit(n):
        if isinstance(n, Num):
            push_const(n.value)
        elif isinstance(n, Var):
            ops.append(oc.OP_X)
            args.append(-1)
        elif isinstance(n, Neg):
            emit(n.operand)
            ops.append(oc.OP_NEG)
            args.append(-1)
        elif isinstance(n, Func):
            emit(n.operand)
            ops.append(_FUNC_CODE[n.name])
            args.append(-1)
        elif isinstance(n, BinOp):
            emit(n.lhs)
            emit(n.rhs)
            ops.append(_BINOP_CODE[n.op])
            args.append(-1)
        else:
            raise TypeError(f"not an expression node: {n!r}")

    emit(node)

    # Simulate stack depth.
    depth = 0
    max_depth = 0
    for op in ops:
        if op in (oc.OP_CONST, oc.OP_X):
            depth += 1
        elif op in (oc.OP_ADD, oc.OP_SUB, oc.OP_MUL, oc.OP_DIV, oc.OP_POW):
            depth -= 1
        max_depth = max(max_depth, depth)
    if max_depth > oc.STACK_MAX:
        raise ValueError(
            f"expression needs stack depth {max_depth}, "
            f"limit is {oc.STACK_MAX}"
        )

    return Program(
        ops=np.array(ops, dtype=np.int32),
        args=np.array(args, dtype=np.int32),
        consts=np.array(consts, dtype=np.float64),
        stack_need=max_depth,
        source=node,
    )
