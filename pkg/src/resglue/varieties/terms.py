"""Term language over the residuated-lattice signature.

Grammar, by example:

    x * y            fusion
    x | y            join
    x & y            meet
    x \\ y            left division (y under x); -> is an accepted synonym
    x / y            right division (x over y)
    x^3              fusion power, sugar for x*x*x (x^0 is 1)
    0, 1             constants; 0 is only evaluable on bounded algebras

Variables are single lowercase letters.  Chains of one associative
operator associate to the left (``x * y * z``); anything mixed, and any
chain of the division symbols, must be parenthesised explicitly.  The
printer emits those parentheses, so ``parse_term(str(t)) == t``.

Terms compile to the postfix programs run by the table-evaluation kernel,
which scans all assignments at once; variable order is alphabetical and
the first variable varies slowest.
"""

from dataclasses import dataclass

import numpy as np

from .._backend import OP_CONST, OP_POW, OP_TABLE, OP_VAR, eval_term_all

__all__ = [
    "Equation", "EquationReport", "Term", "TermError",
    "check_equation", "eval_equation", "parse_equation",
    "parse_equation_file", "parse_term",
    "commutativity", "divisibility", "gl2_law", "integrality_law",
    "n_potency", "prelinearity", "semilinearity",
]

_SYM = {"join": "|", "meet": "&", "mul": "*", "ldiv": "\\", "rdiv": "/"}
_OP_OF = {v: k for k, v in _SYM.items()}
_TABLE_ARG = {"join": 0, "meet": 1, "mul": 2, "ldiv": 3, "rdiv": 4}
_ASSOCIATIVE = ("*", "|", "&")


class TermError(ValueError):
    """Malformed term text; carries the 0-based offending column."""

    def __init__(self, pos, message):
        super().__init__("column %d: %s" % (pos, message))
        self.pos = pos


@dataclass(frozen=True)
class Term:
    """Syntax tree node.

    op is one of var/const/pow or a binary operation name (join, meet,
    mul, ldiv, rdiv).  payload holds the variable name, the constant
    (0 or 1), or the exponent.
    """

    op: str
    args: tuple = ()
    payload: object = None

    def variables(self):
        if self.op == "var":
            return (self.payload,)
        seen = []
        for sub in self.args:
            for v in sub.variables():
                if v not in seen:
                    seen.append(v)
        return tuple(sorted(seen))

    def __str__(self):
        if self.op == "var":
            return self.payload
        if self.op == "const":
            return str(self.payload)
        if self.op == "pow":
            return "%s^%d" % (_wrap(self.args[0]), self.payload)
        return "%s %s %s" % (_wrap(self.args[0]), _SYM[self.op],
                             _wrap(self.args[1]))


def _wrap(t):
    text = str(t)
    return "(%s)" % text if t.op in _SYM else text


# -- parsing ---------------------------------------------------------------


def _tokens(text):
    """(kind, value, pos) triples; kinds op lparen rparen var const pow."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "*|&\\/":
            out.append(("op", ch, i))
            i += 1
        elif ch == "-":
            if text[i:i + 2] != "->":
                raise TermError(i, "stray '-', did you mean '->'?")
            out.append(("op", "\\", i))
            i += 2
        elif ch == "(":
            out.append(("lparen", ch, i))
            i += 1
        elif ch == ")":
            out.append(("rparen", ch, i))
            i += 1
        elif ch == "^":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise TermError(i, "'^' needs an integer exponent")
            out.append(("pow", int(text[i + 1:j]), i))
            i = j
        elif ch in "01":
            out.append(("const", int(ch), i))
            i += 1
        elif ch.isalpha() and ch.islower() and ch.isascii():
            out.append(("var", ch, i))
            i += 1
        else:
            raise TermError(i, "unexpected character %r" % ch)
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.end = len(text)
        self.i = 0

    def peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("end", None, self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        t = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise TermError(pos, "unexpected %r after a complete term"
                            % str(value))
        return t

    def expr(self):
        items = [self.atom()]
        ops = []
        while self.peek()[0] == "op":
            _, sym, pos = self.take()
            ops.append((sym, pos))
            items.append(self.atom())
        if not ops:
            return items[0]
        if len({sym for sym, _ in ops}) > 1:
            raise TermError(ops[1][1], "mixed operators need parentheses")
        sym = ops[0][0]
        if sym not in _ASSOCIATIVE and len(ops) > 1:
            raise TermError(
                ops[1][1],
                "'%s' chains are ambiguous; add parentheses" % sym)
        out = items[0]
        for nxt in items[1:]:
            out = Term(_OP_OF[sym], (out, nxt))
        return out

    def atom(self):
        kind, value, pos = self.take()
        if kind == "lparen":
            t = self.expr()
            kind2, _, pos2 = self.take()
            if kind2 != "rparen":
                raise TermError(pos2, "expected ')'")
        elif kind == "var":
            t = Term("var", payload=value)
        elif kind == "const":
            t = Term("const", payload=value)
        elif kind == "end":
            raise TermError(pos, "unexpected end of input")
        else:
            raise TermError(pos, "expected a variable, constant or '('")
        while self.peek()[0] == "pow":
            _, exp, _ = self.take()
            t = Term("pow", (t,), payload=exp)
        return t


def parse_term(text):
    return _Parser(text).parse()


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def variables(self):
        seen = set(self.lhs.variables()) | set(self.rhs.variables())
        return tuple(sorted(seen))

    def __str__(self):
        return "%s = %s" % (self.lhs, self.rhs)


def parse_equation(text):
    parts = text.split("=")
    if len(parts) != 2:
        raise TermError(text.find("="), "an equation is 'lhs = rhs'")
    lhs = parse_term(parts[0])
    # reparse the right side with positions shifted past the '='
    try:
        rhs = parse_term(parts[1])
    except TermError as err:
        raise TermError(err.pos + len(parts[0]) + 1, str(err).split(": ", 1)[1])
    return Equation(lhs, rhs)


def parse_equation_file(text):
    """One equation per line; blank lines and # comments are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_equation(line))
        except TermError as err:
            raise ValueError("line %d: %s" % (lineno, err)) from err
    return out


# -- evaluation ------------------------------------------------------------


def compile_term(t, a, var_order):
    """Postfix (codes, args) for the kernel, constants resolved against a."""
    index = {v: i for i, v in enumerate(var_order)}
    codes, args = [], []

    def walk(u):
        if u.op == "var":
            codes.append(OP_VAR)
            args.append(index[u.payload])
        elif u.op == "const":
            if u.payload == 1:
                codes.append(OP_CONST)
                args.append(a.unit)
            else:
                if not a.has_zero:
                    raise ValueError(
                        "constant 0 needs a bounded algebra")
                codes.append(OP_CONST)
                args.append(a.zero)
        elif u.op == "pow":
            walk(u.args[0])
            codes.append(OP_POW)
            args.append(u.payload)
        else:
            walk(u.args[0])
            walk(u.args[1])
            codes.append(OP_TABLE)
            args.append(_TABLE_ARG[u.op])

    walk(t)
    return (np.asarray(codes, dtype=np.int64),
            np.asarray(args, dtype=np.int64))


def term_values(a, t, var_order=None):
    """Values of t over all assignments, first variable slowest."""
    if var_order is None:
        var_order = t.variables()
    codes, args = compile_term(t, a, var_order)
    return eval_term_all(codes, args, a.op_tables(), len(var_order), a.n,
                         a.unit)


@dataclass(frozen=True)
class EquationReport:
    holds: bool
    variables: tuple
    assignment: object = None   # dict variable -> element on failure
    lhs_value: object = None
    rhs_value: object = None

    def witness_text(self, a):
        parts = ["%s=%s" % (v, a.label(self.assignment[v]))
                 for v in self.variables]
        return "%s gives %s != %s" % (
            ", ".join(parts), a.label(self.lhs_value),
            a.label(self.rhs_value))


def eval_equation(a, lhs, rhs):
    """Exhaustive check; reports the lexicographically first failure."""
    names = tuple(sorted(set(lhs.variables()) | set(rhs.variables())))
    lv = term_values(a, lhs, names)
    rv = term_values(a, rhs, names)
    bad = np.flatnonzero(lv != rv)
    if not bad.size:
        return EquationReport(True, names)
    k = int(bad[0])
    assign = {}
    for i, name in enumerate(names):
        assign[name] = (k // a.n ** (len(names) - 1 - i)) % a.n
    return EquationReport(False, names, assign, int(lv[k]), int(rv[k]))


def check_equation(a, eq):
    if isinstance(eq, str):
        eq = parse_equation(eq)
    return eval_equation(a, eq.lhs, eq.rhs)


# -- stock equations -------------------------------------------------------


def commutativity():
    return parse_equation("x * y = y * x")


def prelinearity():
    return parse_equation(r"(x \ y) | (y \ x) = 1")


def semilinearity():
    return parse_equation(r"(u \ ((y \ x) * u)) | ((v * (x \ y)) / v) = 1")


def divisibility():
    """Both halves of the divisibility law, as a pair of equations."""
    return (parse_equation(r"x & y = x * (x \ y)"),
            parse_equation(r"x & y = (y / x) * x"))


def integrality_law():
    return parse_equation("x | 1 = 1")


def n_potency(n):
    return parse_equation("x^%d = x^%d" % (n, n + 1))


def gl2_law():
    return parse_equation(r"x | ((x * (x & y)) \ (x & y)^2) = 1")
