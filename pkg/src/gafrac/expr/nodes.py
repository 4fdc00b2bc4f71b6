"""Expression AST over a single variable x.

Nodes are frozen dataclasses, so structural equality and hashing come for
free.  Trees are built through the smart constructors (add, sub, mul,
div, power, neg, func), which fold constants and elide arithmetic
identities; differentiation relies on that folding to keep its output
readable.

Scalar evaluation lives here as :func:`eval_ast` and reports domain
problems as DomainFault with the offending subexpression and input;
vectorised evaluation compiles trees to stack programs (see
gafrac.expr.program).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainFault

__all__ = [
    "Node", "Num", "Var", "BinOp", "Neg", "Func", "X",
    "add", "sub", "mul", "div", "power", "neg", "func",
    "eval_ast", "to_string", "substitute", "contains", "CONSTANTS",
    "FUNCTION_NAMES",
]

FUNCTION_NAMES = ("exp", "ln", "sqrt", "sin", "cos", "abs")

# Named constants folded to numbers at parse time.
CONSTANTS = {"pi": math.pi, "e": math.e}


class Node:
    """Base expression node; supports arithmetic operators for tree building."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __pow__(self, other):
        return power(self, _coerce(other))

    def __rpow__(self, other):
        return power(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return to_string(self)


@dataclass(frozen=True)
class Num(Node):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class BinOp(Node):
    op: str          # one of + - * / ^
    lhs: Node
    rhs: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Func(Node):
    name: str        # one of FUNCTION_NAMES
    operand: Node


X = Var()

_ZERO = Num(0.0)
_ONE = Num(1.0)


def _coerce(v):
    if isinstance(v, Node):
        return v
    if isinstance(v, (int, float)):
        return Num(float(v))
    raise TypeError(f"cannot use {type(v).__name__} as an expression operand")


def _fold2(op, a, b):
    """Fold a binary op on two constants; returns None when the result is
    not a finite real (the node is kept and faults at evaluation)."""
    try:
        if op == "+":
            v = a + b
        elif op == "-":
            v = a - b
        elif op == "*":
            v = a * b
        elif op == "/":
            if b == 0.0:
                return None
            v = a / b
        elif op == "^":
            v = _pow_scalar(a, b)
            if v is None:
                return None
        else:
            raise ValueError(op)
    except OverflowError:
        return None
    return Num(v) if math.isfinite(v) else None


def _pow_scalar(a, b):
    if a < 0.0 and b != int(b):
        return None
    if a == 0.0 and b < 0.0:
        return None
    try:
        return math.pow(a, b)
    except (OverflowError, ValueError):
        return None


def add(l, r):
    if isinstance(l, Num) and isinstance(r, Num):
        folded = _fold2("+", l.value, r.value)
        if folded is not None:
            return folded
    if isinstance(l, Num) and l.value == 0.0:
        return r
    if isinstance(r, Num) and r.value == 0.0:
        return l
    return BinOp("+", l, r)


def sub(l, r):
    if isinstance(l, Num) and isinstance(r, Num):
        folded = _fold2("-", l.value, r.value)
        if folded is not None:
            return folded
    if isinstance(r, Num) and r.value == 0.0:
        return l
    if isinstance(l, Num) and l.value == 0.0:
        return neg(r)
    return BinOp("-", l, r)


def mul(l, r):
    if isinstance(l, Num) and isinstance(r, Num):
        folded = _fold2("*", l.value, r.value)
        if folded is not None:
            return folded
    if isinstance(l, Num):
        if l.value == 0.0:
            return _ZERO
        if l.value == 1.0:
            return r
    if isinstance(r, Num):
        if r.value == 0.0:
            return _ZERO
        if r.value == 1.0:
            return l
    return BinOp("*", l, r)


def div(l, r):
    if isinstance(l, Num) and isinstance(r, Num):
        folded = _fold2("/", l.value, r.value)
        if folded is not None:
            return folded
    if isinstance(r, Num) and r.value == 1.0:
        return l
    if isinstance(l, Num) and l.value == 0.0 and not (
        isinstance(r, Num) and r.value == 0.0
    ):
        return _ZERO
    return BinOp("/", l, r)


def power(l, r):
    if isinstance(l, Num) and isinstance(r, Num):
        folded = _fold2("^", l.value, r.value)
        if folded is not None:
            return folded
    if isinstance(r, Num):
        if r.value == 1.0:
            return l
        if r.value == 0.0:
            return _ONE
    return BinOp("^", l, r)


def neg(n):
    if isinstance(n, Num):
        return Num(-n.value)
    if isinstance(n, Neg):
        return n.operand
    return Neg(n)


def func(name, arg):
    if name not in FUNCTION_NAMES:
        raise ValueError(f"unknown function {name!r}")
    if isinstance(arg, Num):
        v = _apply_func(name, arg.value)
        if v is not None and math.isfinite(v):
            return Num(v)
    return Func(name, arg)


def _apply_func(name, v):
    try:
        if name == "exp":
            return math.exp(v)
        if name == "ln":
            return math.log(v) if v > 0.0 else None
        if name == "sqrt":
            return math.sqrt(v) if v >= 0.0 else None
        if name == "sin":
            return math.sin(v)
        if name == "cos":
            return math.cos(v)
        if name == "abs":
            return abs(v)
    except OverflowError:
        return None
    raise ValueError(name)


def eval_ast(node, x):
    """Evaluate node at the scalar x; raises DomainFault on any domain
    violation or non-finite intermediate."""
    x = float(x)
    result = _eval(node, x)
    if not math.isfinite(result):
        raise DomainFault("non-finite result", to_string(node), x)
    return result


def _eval(node, x):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_eval(node.operand, x)
    if isinstance(node, Func):
        v = _eval(node.operand, x)
        if node.name == "ln" and v <= 0.0:
            raise DomainFault("ln of non-positive value", to_string(node), x)
        if node.name == "sqrt" and v < 0.0:
            raise DomainFault("sqrt of negative value", to_string(node), x)
        out = _apply_func(node.name, v)
        if out is None or not math.isfinite(out):
            raise DomainFault("non-finite result", to_string(node), x)
        return out
    if isinstance(node, BinOp):
        l = _eval(node.lhs, x)
        r = _eval(node.rhs, x)
        op = node.op
        if op == "+":
            v = l + r
        elif op == "-":
            v = l - r
        elif op == "*":
            v = l * r
        elif op == "/":
            if r == 0.0:
                raise DomainFault("division by zero", to_string(node), x)
            v = l / r
        elif op == "^":
            if l < 0.0 and r != int(r):
                raise DomainFault(
                    "negative base with non-integer exponent", to_string(node), x
                )
            if l == 0.0 and r < 0.0:
                raise DomainFault("zero base with negative exponent",
                                  to_string(node), x)
            try:
                v = math.pow(l, r)
            except OverflowError:
                raise DomainFault("overflow", to_string(node), x) from None
        else:
            raise ValueError(f"unknown operator {op!r}")
        if not math.isfinite(v):
            raise DomainFault("non-finite result", to_string(node), x)
        return v
    raise TypeError(f"not an expression node: {node!r}")


# Serialisation. Precedence levels: additive 1, multiplicative 2, unary
# minus 3, power 4, atoms 5. Power is right-associative; unary minus binds
# looser than power so -x^2 round-trips as -(x^2).

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


def _format_number(v):
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError("cannot serialise a non-finite constant")
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _render(node):
    """Returns (text, precedence of the outermost construct)."""
    if isinstance(node, Num):
        if node.value < 0.0:
            return _format_number(node.value), _PREC_NEG
        return _format_number(node.value), _PREC_ATOM
    if isinstance(node, Var):
        return "x", _PREC_ATOM
    if isinstance(node, Func):
        inner, _ = _render(node.operand)
        return f"{node.name}({inner})", _PREC_ATOM
    if isinstance(node, Neg):
        inner = _wrap(node.operand, _PREC_NEG)
        return f"-{inner}", _PREC_NEG
    if isinstance(node, BinOp):
        if node.op in "+-":
            lhs = _wrap(node.lhs, _PREC_ADD)
            # Right operand needs parens at equal precedence: a - (b + c).
            rhs = _wrap(node.rhs, _PREC_ADD + 1)
            return f"{lhs} {node.op} {rhs}", _PREC_ADD
        if node.op in "*/":
            lhs = _wrap(node.lhs, _PREC_MUL)
            rhs = _wrap(node.rhs, _PREC_MUL + 1)
            return f"{lhs}{node.op}{rhs}", _PREC_MUL
        if node.op == "^":
            lhs = _wrap(node.lhs, _PREC_POW + 1)
            rhs = _wrap(node.rhs, _PREC_POW)
            return f"{lhs}^{rhs}", _PREC_POW
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, min_prec):
    text, prec = _render(node)
    if prec < min_prec:
        return f"({text})"
    return text


def to_string(node):
    """Render a tree to text that parses back to the same tree."""
    return _render(node)[0]


def substitute(node, replacement):
    """Return node with every occurrence of the variable replaced by
    the given subtree (composition in the variable)."""
    if isinstance(node, Var):
        return replacement
    if isinstance(node, (Num,)):
        return node
    if isinstance(node, Neg):
        return neg(substitute(node.operand, replacement))
    if isinstance(node, Func):
        return func(node.name, substitute(node.operand, replacement))
    if isinstance(node, BinOp):
        l = substitute(node.lhs, replacement)
        r = substitute(node.rhs, replacement)
        return {"+": add, "-": sub, "*": mul, "/": div, "^": power}[node.op](l, r)
    raise TypeError(f"not an expression node: {node!r}")


def contains(node, predicate):
    """True if predicate holds for node or any descendant."""
    if predicate(node):
        return True
    if isinstance(node, (Neg, Func)):
        return contains(node.operand, predicate)
    if isinstance(node, BinOp):
        return contains(node.lhs, predicate) or contains(node.rhs, predicate)
    return False
