"""Opcode numbering for compiled expression programs.

Both backends (the Cython extension and the numpy fallback) execute the
same flat postorder programs: parallel int32 arrays ``ops``/``args`` plus
a float64 constant pool.  The numbers below are part of the backend ABI;
gafrac._kernels.fast hardcodes the same values.
"""

OP_CONST = 0   # push consts[args[k]]
OP_X = 1       # push the evaluation point
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_POW = 6
OP_NEG = 7
OP_EXP = 8
OP_LN = 9
OP_SQRT = 10
OP_SIN = 11
OP_COS = 12
OP_ABS = 13

# Maximum operand-stack depth a program may declare.  Compilation rejects
# deeper programs so the compiled backend can use a fixed C array.
STACK_MAX = 64
