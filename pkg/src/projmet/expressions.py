"""Symbolic expressions in the plane coordinates x and y.

Provides a small closed expression language — rational literals, x, y, the
four ring operations, integer powers, unary minus, and the elementary
functions exp/log/sin/cos/sqrt — together with a parser, a canonical printer
(`parse_expr(to_string(t)) == t`), exact symbolic differentiation, and two
independent evaluators: `eval_jet` (truncated Taylor arithmetic) and
`eval_scalar` (plain floating/rational point evaluation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import jets
from .jets import Jet, SingularEvaluationError, to_scalar

FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")


class ExprError(ValueError):
    """Problem with an input expression; `offset` points into the source."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = "%s (at offset %d)" % (message, offset)
        super().__init__(message)
        self.offset = offset


class ExprSyntaxError(ExprError):
    pass


class UnknownIdentifierError(ExprError):
    pass


class NonIntegerExponentError(ExprError):
    pass


class ExactModeError(ExprError):
    """Exact evaluation was requested for a tree containing a
    transcendental function."""

    def __init__(self, message):
        super().__init__(message, None)


# ---------------- syntax trees ----------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


Expr = Num | Var | BinOp | Pow | Neg | Call


# ---------------- tokenizer / parser ----------------


def _tokenize(src):
    toks = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            start = i
            seen_dot = False
            while i < n and (src[i].isdigit() or (src[i] == "." and not seen_dot)):
                if src[i] == ".":
                    seen_dot = True
                i += 1
            toks.append(("num", src[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            toks.append(("name", src[start:i], start))
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError("unexpected character %r" % ch, i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    """Recursive descent over:

        expr   := term (('+' | '-') term)*
        term   := factor (('*' | '/') factor)*
        factor := '-' factor | power
        power  := atom ('^' exponent)?
        atom   := NUMBER | 'x' | 'y' | FUNC '(' expr ')' | '(' expr ')'

    An exponent must reduce to an integer literal (so "x^-2" and "x^(6/3)"
    are fine but "x^y" and "x^(1/2)" are rejected).
    """

    def __init__(self, src):
        self.toks = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ExprSyntaxError("expected %r" % kind, tok[2])
        self.pos += 1
        return tok

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError("unexpected trailing input", tok[2])
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            e = _fold_binop(op, e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            e = _fold_binop(op, e, self.factor())
        return e

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return _fold_neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            caret = self.take()
            e = self.factor()
            if isinstance(e, Num) and e.value.denominator == 1:
                return Pow(base, int(e.value))
            raise NonIntegerExponentError(
                "exponent must be an integer literal", caret[2]
            )
        return base

    def atom(self):
        kind, text, off = self.peek()
        if kind == "num":
            self.take()
            return Num(Fraction(text))
        if kind == "name":
            self.take()
            if text in ("x", "y"):
                return Var(text)
            if text in FUNCTIONS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(text, arg)
            raise UnknownIdentifierError("unknown identifier %r" % text, off)
        if kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        raise ExprSyntaxError(
            "expected a number, x, y, a function call, or '('", off
        )


def _fold_neg(e):
    if isinstance(e, Num):
        return Num(-e.value)
    return Neg(e)


def _fold_binop(op, a, b):
    # Fold literal quotients so "2/3" parses to the exact rational it denotes.
    if (
        op == "/"
        and isinstance(a, Num)
        and isinstance(b, Num)
        and b.value != 0
    ):
        return Num(a.value / b.value)
    return BinOp(op, a, b)


def parse_expr(src):
    return _Parser(src).parse()


def as_expr(obj):
    """Accept either source text or an already-built tree."""
    if isinstance(obj, str):
        return parse_expr(obj)
    if isinstance(obj, (Num, Var, BinOp, Pow, Neg, Call)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Num(Fraction(obj))
    raise TypeError("cannot interpret %r as an expression" % (obj,))


# ---------------- printer ----------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e):
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 2
    if isinstance(e, Pow):
        return 3
    if isinstance(e, Num):
        # "p/q" reparses as a quotient and "-p" as a negation, so such
        # literals must be parenthesised exactly where those forms would be
        if e.value.denominator != 1 or e.value < 0:
            return 2
    return 9


def _atom_like(e):
    return (
        isinstance(e, Var)
        or isinstance(e, Call)
        or (isinstance(e, Num) and e.value >= 0
            and e.value.denominator == 1)
    )


def to_string(e):
    """Canonical rendering; `parse_expr` inverts it."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_string(e.arg)
        if _prec(e.arg) <= 2 and not _atom_like(e.arg):
            inner = "(%s)" % inner
        return "-%s" % inner
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        ls = to_string(e.left)
        if _prec(e.left) < p:
            ls = "(%s)" % ls
        rs = to_string(e.right)
        if _prec(e.right) <= p:
            rs = "(%s)" % rs
        return "%s%s%s" % (ls, e.op, rs)
    if isinstance(e, Pow):
        bs = to_string(e.base)
        if not _atom_like(e.base):
            bs = "(%s)" % bs
        if e.exponent < 0:
            return "%s^(%d)" % (bs, e.exponent)
        return "%s^%d" % (bs, e.exponent)
    if isinstance(e, Call):
        return "%s(%s)" % (e.func, to_string(e.arg))
    raise TypeError("not an expression: %r" % (e,))


# ---------------- smart constructors ----------------

ZERO = Num(Fraction(0))
ONE = Num(Fraction(1))


def num(v):
    return Num(Fraction(v))


def _is_zero(e):
    return isinstance(e, Num) and e.value == 0


def add(a, b):
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value + b.value)
    return BinOp("+", a, b)


def sub(a, b):
    if _is_zero(b):
        return a
    if _is_zero(a):
        return neg(b)
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value - b.value)
    return BinOp("-", a, b)


def neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def mul(a, b):
    if _is_zero(a) or _is_zero(b):
        return ZERO
    if isinstance(a, Num):
        if a.value == 1:
            return b
        if a.value == -1:
            return neg(b)
        if isinstance(b, Num):
            return Num(a.value * b.value)
    if isinstance(b, Num):
        if b.value == 1:
            return a
        if b.value == -1:
            return neg(a)
    return BinOp("*", a, b)


def div(a, b):
    if isinstance(b, Num) and b.value == 1:
        return a
    if _is_zero(a) and not _is_zero(b):
        return ZERO
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0:
        return Num(a.value / b.value)
    return BinOp("/", a, b)


def powi(a, k):
    if k == 0:
        return ONE
    if k == 1:
        return a
    if isinstance(a, Num) and (a.value != 0 or k > 0):
        return Num(a.value**k)
    return Pow(a, k)


def call(func, a):
    if func not in FUNCTIONS:
        raise UnknownIdentifierError("unknown function %r" % func, None)
    return Call(func, a)


# ---------------- differentiation ----------------


def differentiate(e, var):
    """Exact partial derivative of a tree with respect to 'x' or 'y'."""
    if var not in ("x", "y"):
        raise ValueError("differentiation variable must be 'x' or 'y'")
    if isinstance(e, Num):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Neg):
        return neg(differentiate(e.arg, var))
    if isinstance(e, BinOp):
        da = differentiate(e.left, var)
        db = differentiate(e.right, var)
        if e.op == "+":
            return add(da, db)
        if e.op == "-":
            return sub(da, db)
        if e.op == "*":
            return add(mul(da, e.right), mul(e.left, db))
        # quotient rule, kept as two terms to avoid inflating numerators
        return sub(div(da, e.right), div(mul(e.left, db), powi(e.right, 2)))
    if isinstance(e, Pow):
        du = differentiate(e.base, var)
        return mul(mul(num(e.exponent), powi(e.base, e.exponent - 1)), du)
    if isinstance(e, Call):
        u = e.arg
        du = differentiate(u, var)
        if e.func == "exp":
            return mul(Call("exp", u), du)
        if e.func == "log":
            return div(du, u)
        if e.func == "sin":
            return mul(Call("cos", u), du)
        if e.func == "cos":
            return neg(mul(Call("sin", u), du))
        if e.func == "sqrt":
            return div(du, mul(num(2), Call("sqrt", u)))
    raise TypeError("not an expression: %r" % (e,))


# ---------------- evaluation ----------------


def has_transcendental(e):
    if isinstance(e, Call):
        return True
    if isinstance(e, BinOp):
        return has_transcendental(e.left) or has_transcendental(e.right)
    if isinstance(e, (Neg, Pow)):
        arg = e.arg if isinstance(e, Neg) else e.base
        return has_transcendental(arg)
    return False


_JET_FUNCS = {
    "exp": jets.exp,
    "log": jets.log,
    "sin": jets.sin,
    "cos": jets.cos,
    "sqrt": jets.sqrt,
}


def eval_jet(e, base, order, mode="auto"):
    """Evaluate a tree to a Jet at `base`.

    mode "rational" insists on exact arithmetic and rejects trees with
    transcendental calls; "float" converts everything to float up front;
    "auto" stays exact as long as the operations allow.
    """
    if mode not in ("auto", "rational", "float"):
        raise ValueError("mode must be 'auto', 'rational', or 'float'")
    if mode == "rational" and has_transcendental(e):
        raise ExactModeError(
            "exact evaluation requested for a tree with transcendental calls"
        )
    want_float = mode == "float"

    def rec(t):
        if isinstance(t, Num):
            v = float(t.value) if want_float else t.value
            return Jet.constant(v, base, order)
        if isinstance(t, Var):
            j = Jet.variable(t.name, base, order)
            return j.to_float() if want_float else j
        if isinstance(t, Neg):
            return -rec(t.arg)
        if isinstance(t, BinOp):
            a = rec(t.left)
            b = rec(t.right)
            if t.op == "+":
                return a + b
            if t.op == "-":
                return a - b
            if t.op == "*":
                return a * b
            return a / b
        if isinstance(t, Pow):
            return rec(t.base) ** t.exponent
        if isinstance(t, Call):
            return _JET_FUNCS[t.func](rec(t.arg))
        raise TypeError("not an expression: %r" % (t,))

    return rec(e)


def eval_scalar(e, x, y):
    """Plain point evaluation, independent of the jet machinery.

    Rational inputs and a transcendental-free tree give an exact Fraction;
    otherwise the result is a float.
    """
    xv = to_scalar(x)
    yv = to_scalar(y)

    def rec(t):
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Var):
            return xv if t.name == "x" else yv
        if isinstance(t, Neg):
            return -rec(t.arg)
        if isinstance(t, BinOp):
            a = rec(t.left)
            b = rec(t.right)
            if t.op == "+":
                return a + b
            if t.op == "-":
                return a - b
            if t.op == "*":
                return a * b
            if b == 0:
                raise SingularEvaluationError("division by zero", (xv, yv))
            return a / b
        if isinstance(t, Pow):
            v = rec(t.base)
            if v == 0 and t.exponent < 0:
                raise SingularEvaluationError(
                    "zero raised to a negative power", (xv, yv)
                )
            return v**t.exponent
        if isinstance(t, Call):
            v = float(rec(t.arg))
            if t.func == "log":
                if v <= 0:
                    raise SingularEvaluationError(
                        "log of a non-positive value", (xv, yv)
                    )
                return math.log(v)
            if t.func == "sqrt":
                if v < 0:
                    raise SingularEvaluationError(
                        "sqrt of a negative value", (xv, yv)
                    )
                return math.sqrt(v)
            return getattr(math, t.func)(v)
        raise TypeError("not an expression: %r" % (t,))

    return rec(e)
