"""Symbolic differentiation of expression trees.

Standard recursive rules over the node algebra; results pass through the
smart constructors, so derivatives of polynomial-like inputs come out
folded (d/dx x^2 -> 2*x).

d|u|/dx is represented as (u/|u|)*u', which faults at u = 0; callers
that must integrate across such kinks either locate them as quadrature
breakpoints or fall back to finite differences (FunctionSpec handles
both).
"""

from __future__ import annotations

from . import nodes
from .nodes import BinOp, Func, Neg, Num, Var

__all__ = ["differentiate"]


def differentiate(node):
    if isinstance(node, Num):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0)
    if isinstance(node, Neg):
        return nodes.neg(differentiate(node.operand))
    if isinstance(node, BinOp):
        return _diff_binop(node)
    if isinstance(node, Func):
        return _diff_func(node)
    raise TypeError(f"not an expression node: {node!r}")


def _diff_binop(node):
    u, v = node.lhs, node.rhs
    du = differentiate(u)
    dv = differentiate(v)
    op = node.op
    if op == "+":
        return nodes.add(du, dv)
    if op == "-":
        return nodes.sub(du, dv)
    if op == "*":
        return nodes.add(nodes.mul(du, v), nodes.mul(u, dv))
    if op == "/":
        num = nodes.sub(nodes.mul(du, v), nodes.mul(u, dv))
        return nodes.div(num, nodes.power(v, Num(2.0)))
    if op == "^":
        if isinstance(v, Num):
            # Power rule: v*u^(v-1)*u'.
            return nodes.mul(
                nodes.mul(v, nodes.power(u, Num(v.value - 1.0))), du
            )
        if isinstance(u, Num):
            # Exponential rule: u^v*ln(u)*v'.
            return nodes.mul(
                nodes.mul(nodes.power(u, v), nodes.func("ln", u)), dv
            )
        # General case: u^v*(v'*ln(u) + v*u'/u).
        bracket = nodes.add(
            nodes.mul(dv, nodes.func("ln", u)),
            nodes.div(nodes.mul(v, du), u),
        )
        return nodes.mul(nodes.power(u, v), bracket)
    raise ValueError(f"unknown operator {op!r}")


def _diff_func(node):
    u = node.operand
    du = differentiate(u)
    name = node.name
    if name == "exp":
        return nodes.mul(nodes.func("exp", u), du)
    if name == "ln":
        return nodes.div(du, u)
    if name == "sqrt":
        return nodes.div(du, nodes.mul(Num(2.0), nodes.func("sqrt", u)))
    if name == "sin":
        return nodes.mul(nodes.func("cos", u), du)
    if name == "cos":
        return nodes.neg(nodes.mul(nodes.func("sin", u), du))
    if name == "abs":
        # Sign factor; evaluation faults at the kink u = 0 (0/0).
        return nodes.mul(nodes.div(u, nodes.func("abs", u)), du)
    raise ValueError(f"unknown function {name!r}")
