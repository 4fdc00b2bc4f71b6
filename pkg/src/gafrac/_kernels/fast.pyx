# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation core.

Mirrors gafrac._kernels.pure: a stack machine over the opcode numbering
in gafrac._kernels.opcodes (hardcoded here, part of the backend ABI) and
batched Gauss-Kronrod 7-15 panel sums.  Invalid operations follow IEEE
semantics (nan/inf) exactly like the numpy backend; callers detect and
diagnose them.
"""

import numpy as np

from libc.math cimport cos, exp, fabs, log, pow, sin, sqrt

NAME = "fast"

DEF STACK_CAP = 64

# Opcodes; keep in sync with gafrac/_kernels/opcodes.py.
DEF OP_CONST = 0
DEF OP_X = 1
DEF OP_ADD = 2
DEF OP_SUB = 3
DEF OP_MUL = 4
DEF OP_DIV = 5
DEF OP_POW = 6
DEF OP_NEG = 7
DEF OP_EXP = 8
DEF OP_LN = 9
DEF OP_SQRT = 10
DEF OP_SIN = 11
DEF OP_COS = 12
DEF OP_ABS = 13

# Gauss-Kronrod 7-15 nodes/weights, ascending; WG carries the Gauss
# weights at the Gauss nodes and zeros elsewhere (same layout as
# gafrac._kernels.tables).
cdef double[15] XGK = [
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
]

cdef double[15] WGK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
]

cdef double[15] WG = [
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0,
]


cdef inline double _eval_one(const int* ops, const int* args, int n_ops,
                             const double* consts, double x,
                             double* stack) noexcept:
    cdef int k, op, sp = 0
    for k in range(n_ops):
        op = ops[k]
        if op == OP_CONST:
            stack[sp] = consts[args[k]]
            sp += 1
        elif op == OP_X:
            stack[sp] = x
            sp += 1
        elif op == OP_ADD:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] + stack[sp]
        elif op == OP_SUB:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] - stack[sp]
        elif op == OP_MUL:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] * stack[sp]
        elif op == OP_DIV:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] / stack[sp]
        elif op == OP_POW:
            sp -= 1
            stack[sp - 1] = pow(stack[sp - 1], stack[sp])
        elif op == OP_NEG:
            stack[sp - 1] = -stack[sp - 1]
        elif op == OP_EXP:
            stack[sp - 1] = exp(stack[sp - 1])
        elif op == OP_LN:
            stack[sp - 1] = log(stack[sp - 1])
        elif op == OP_SQRT:
            stack[sp - 1] = sqrt(stack[sp - 1])
        elif op == OP_SIN:
            stack[sp - 1] = sin(stack[sp - 1])
        elif op == OP_COS:
            stack[sp - 1] = cos(stack[sp - 1])
        elif op == OP_ABS:
            stack[sp - 1] = fabs(stack[sp - 1])
    return stack[0]


def eval_program(int[::1] ops, int[::1] args, double[::1] consts,
                 int stack_need, xs):
    """Evaluate a compiled program at each point of the 1-D array xs."""
    if stack_need > STACK_CAP:
        raise ValueError(f"program stack depth {stack_need} exceeds "
                         f"{STACK_CAP}")
    xs_arr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] xv = xs_arr
    out_arr = np.empty(xs_arr.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[STACK_CAP] stack
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef int n_ops = ops.shape[0]
    cdef const int* ops_p = &ops[0] if n_ops else NULL
    cdef const int* args_p = &args[0] if n_ops else NULL
    cdef const double* consts_p = &consts[0] if consts.shape[0] else NULL
    for i in range(n):
        out[i] = _eval_one(ops_p, args_p, n_ops, consts_p, xv[i], stack)
    return out_arr


def panel_eval(int[::1] ops, int[::1] args, double[::1] consts,
               int stack_need, los, his):
    """Gauss-Kronrod 7-15 sums for a batch of panels; returns
    (values, |K15 - G7| error estimates)."""
    if stack_need > STACK_CAP:
        raise ValueError(f"program stack depth {stack_need} exceeds "
                         f"{STACK_CAP}")
    los_arr = np.ascontiguousarray(los, dtype=np.float64)
    his_arr = np.ascontiguousarray(his, dtype=np.float64)
    cdef double[::1] lov = los_arr
    cdef double[::1] hiv = his_arr
    cdef Py_ssize_t m = lov.shape[0]
    vals_arr = np.empty(m, dtype=np.float64)
    errs_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] vals = vals_arr
    cdef double[::1] errs = errs_arr
    cdef double[STACK_CAP] stack
    cdef double half, mid, k15, g7, v
    cdef Py_ssize_t i
    cdef int j
    cdef int n_ops = ops.shape[0]
    cdef const int* ops_p = &ops[0] if n_ops else NULL
    cdef const int* args_p = &args[0] if n_ops else NULL
    cdef const double* consts_p = &consts[0] if consts.shape[0] else NULL
    for i in range(m):
        half = 0.5 * (hiv[i] - lov[i])
        mid = 0.5 * (hiv[i] + lov[i])
        k15 = 0.0
        g7 = 0.0
        for j in range(15):
            v = _eval_one(ops_p, args_p, n_ops, consts_p,
                          mid + half * XGK[j], stack)
            k15 += WGK[j] * v
            g7 += WG[j] * v
        vals[i] = half * k15
        errs[i] = fabs(half * (k15 - g7))
    return vals_arr, errs_arr
