"""Plain-text exchange format for total and partial algebras.

The layout is line oriented and fully explicit so that save/load round
trips are bit exact:

    resglue 1
    kind rl            # or: kind partial
    n 3
    unit 2
    zero 0             # omitted when absent
    labels 0 a 1       # omitted when absent
    leq
    111
    011
    001
    join
    0 1 2
    ...
    meet / mul / ldiv / rdiv blocks in the same shape
    end

Table cells are indices; -1 marks an undefined cell and -2 a strongly
undefined division.  Labels may not contain whitespace.
"""

import io as _io

from .core import FiniteRL
from .partial import PartialRL

__all__ = ["ParseError", "dump", "dumps", "load", "loads"]

_TABLES = ("join", "meet", "mul", "ldiv", "rdiv")


class ParseError(ValueError):
    """Malformed input; carries the 1-based line number."""

    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


def dumps(alg):
    out = []
    kind = "rl" if isinstance(alg, FiniteRL) else "partial"
    out.append("resglue 1")
    out.append("kind " + kind)
    out.append("n %d" % alg.n)
    out.append("unit %d" % alg.unit)
    if alg.zero is not None:
        out.append("zero %d" % alg.zero)
    if alg.labels is not None:
        for lab in alg.labels:
            if not lab or any(ch.isspace() for ch in lab):
                raise ValueError("label %r not representable" % lab)
        out.append("labels " + " ".join(alg.labels))
    out.append("leq")
    for row in alg.leq:
        out.append("".join("1" if v else "0" for v in row))
    for name in _TABLES:
        out.append(name)
        for row in getattr(alg, name):
            out.append(" ".join(str(int(v)) for v in row))
    out.append("end")
    return "\n".join(out) + "\n"


def dump(alg, target):
    if hasattr(target, "write"):
        target.write(dumps(alg))
    else:
        with open(target, "w", encoding="ascii") as fh:
            fh.write(dumps(alg))


class _Lines:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self):
        while self.pos < len(self.lines):
            raw = self.lines[self.pos]
            self.pos += 1
            line = raw.split("#", 1)[0].strip()
            if line:
                return line, self.pos
        raise ParseError(self.pos, "unexpected end of input")


def loads(text):
    src = _Lines(text)
    line, no = src.next()
    if line != "resglue 1":
        raise ParseError(no, "expected header 'resglue 1'")
    line, no = src.next()
    if not line.startswith("kind "):
        raise ParseError(no, "expected 'kind'")
    kind = line.split()[1]
    if kind not in ("rl", "partial"):
        raise ParseError(no, "unknown kind %r" % kind)
    line, no = src.next()
    if not line.startswith("n "):
        raise ParseError(no, "expected 'n'")
    try:
        n = int(line.split()[1])
    except ValueError:
        raise ParseError(no, "bad carrier size") from None
    if n <= 0:
        raise ParseError(no, "carrier size must be positive")
    line, no = src.next()
    if not line.startswith("unit "):
        raise ParseError(no, "expected 'unit'")
    unit = int(line.split()[1])
    zero = None
    labels = None
    line, no = src.next()
    if line.startswith("zero "):
        zero = int(line.split()[1])
        line, no = src.next()
    if line.startswith("labels"):
        labels = line.split()[1:]
        if len(labels) != n:
            raise ParseError(no, "expected %d labels" % n)
        line, no = src.next()
    if line != "leq":
        raise ParseError(no, "expected 'leq'")
    leq = []
    for _ in range(n):
        line, no = src.next()
        if len(line) != n or set(line) - {"0", "1"}:
            raise ParseError(no, "bad leq row")
        leq.append([c == "1" for c in line])
    tables = {}
    for name in _TABLES:
        line, no = src.next()
        if line != name:
            raise ParseError(no, "expected %r" % name)
        rows = []
        for _ in range(n):
            line, no = src.next()
            try:
                row = [int(v) for v in line.split()]
            except ValueError:
                raise ParseError(no, "bad table row") from None
            if len(row) != n:
                raise ParseError(no, "expected %d entries" % n)
            for v in row:
                if v >= n or v < -2 or (v < 0 and kind == "rl"):
                    raise ParseError(no, "entry %d out of range" % v)
            rows.append(row)
        tables[name] = rows
    line, no = src.next()
    if line != "end":
        raise ParseError(no, "expected 'end'")
    if not 0 <= unit < n:
        raise ParseError(no, "unit out of range")
    if zero is not None and not 0 <= zero < n:
        raise ParseError(no, "zero out of range")
    cls = FiniteRL if kind == "rl" else PartialRL
    return cls(leq, tables["join"], tables["meet"], tables["mul"],
               tables["ldiv"], tables["rdiv"], unit=unit, zero=zero,
               labels=labels)


def load(source):
    if hasattr(source, "read"):
        return loads(source.read())
    with open(source, "r", encoding="ascii") as fh:
        return loads(fh.read())
