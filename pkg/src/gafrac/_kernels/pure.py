"""Numpy fallback backend for expression programs.

Implements the same two entry points as the compiled backend: vectorised
program evaluation and batched Gauss-Kronrod panel sums.  Invalid
operations (log of a negative, 0/0, ...) produce nan/inf silently here;
callers run under ``np.errstate`` and check finiteness afterwards so the
two backends fault identically.
"""

import numpy as np

from . import opcodes as oc
from .tables import WG15, WGK15, XGK15

NAME = "pure"


def eval_program(ops, args, consts, stack_need, xs):
    """Evaluate a compiled program at each point of the 1-D array xs."""
    xs = np.asarray(xs, dtype=np.float64)
    st = []
    for k in range(len(ops)):
        op = ops[k]
        if op == oc.OP_CONST:
            st.append(consts[args[k]])
        elif op == oc.OP_X:
            st.append(xs)
        elif op == oc.OP_NEG:
            st.append(-st.pop())
        elif op == oc.OP_ADD:
            r = st.pop()
            st.append(st.pop() + r)
        elif op == oc.OP_SUB:
            r = st.pop()
            st.append(st.pop() - r)
        elif op == oc.OP_MUL:
            r = st.pop()
            st.append(st.pop() * r)
        elif op == oc.OP_DIV:
            r = st.pop()
            st.append(st.pop() / r)
        elif op == oc.OP_POW:
            r = st.pop()
            st.append(np.power(st.pop(), r))
        elif op == oc.OP_EXP:
            st.append(np.exp(st.pop()))
        elif op == oc.OP_LN:
            st.append(np.log(st.pop()))
        elif op == oc.OP_SQRT:
            st.append(np.sqrt(st.pop()))
        elif op == oc.OP_SIN:
            st.append(np.sin(st.pop()))
        elif op == oc.OP_COS:
            st.append(np.cos(st.pop()))
        elif op == oc.OP_ABS:
            st.append(np.abs(st.pop()))
        else:
            raise ValueError(f"unknown opcode {op}")
    out = st[-1]
    if np.ndim(out) == 0:
        # Constant program: broadcast to the input shape.
        out = np.full(xs.shape, np.float64(out))
    return out


def panel_eval(ops, args, consts, stack_need, los, his):
    """Gauss-Kronrod 7-15 sums for a batch of panels.

    Returns (values, error_estimates) where values[i] is the K15 estimate
    on [los[i], his[i]] and the error estimate is |K15 - G7|.
    """
    los = np.asarray(los, dtype=np.float64)
    his = np.asarray(his, dtype=np.float64)
    half = 0.5 * (his - los)
    mid = 0.5 * (his + los)
    nodes = mid[:, None] + half[:, None] * XGK15[None, :]
    ys = eval_program(ops, args, consts, stack_need, nodes.ravel())
    ys = ys.reshape(nodes.shape)
    k15 = ys @ WGK15
    g7 = ys @ WG15
    return half * k15, np.abs(half * (k15 - g7))
