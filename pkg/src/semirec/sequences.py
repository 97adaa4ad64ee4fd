"""Sequences N -> T, declarative sequence specs, and discrete convolution."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import (
    DimensionMismatchError,
    InjectionError,
    InputError,
    RangeError,
    SemiringMismatchError,
    SeqSpecError,
)
from .linalg import Mat, Vec, plus, times
from .semiring import Semiring, parse_literal


class Seq:
    """A memoized total function from the naturals to carrier values,
    matrices or vectors.

    ``components`` is set for vector sequences assembled from scalar
    sequences, ``entries`` (row-major list of lists) for matrix sequences
    assembled the same way, and ``spec`` for scalar sequences built from a
    ``SeqSpec``. They let files and automata be rebuilt from a sequence.
    """

    def __init__(self, fn: Callable[[int], Any], semiring: Semiring, description="",
                 *, spec: "SeqSpec | None" = None, components=None, entries=None,
                 zero: bool = False):
        self._fn = fn
        self._memo: dict[int, Any] = {}
        self.semiring = semiring
        self.description = description
        self.spec = spec
        self.components = components
        self.entries = entries
        self._known_zero = zero

    def __call__(self, n: int):
        try:
            return self._memo[n]
        except KeyError:
            pass
        if n < 0:
            raise RangeError(f"sequence evaluated at negative index {n}")
        # computed outside any lock; racing writers store equal values
        return self._memo.setdefault(n, self._fn(n))

    def clear_memo(self):
        self._memo.clear()

    def take(self, count: int) -> list:
        return [self(n) for n in range(count)]

    def is_zero(self) -> bool:
        """True when the sequence is known to be identically zero."""
        if self._known_zero:
            return True
        if self.spec is not None:
            return self.spec.is_zero(self.semiring)
        if self.components is not None:
            return all(c.is_zero() for c in self.components)
        if self.entries is not None:
            return all(e.is_zero() for row in self.entries for e in row)
        return False

    def __repr__(self):
        return f"Seq({self.description or self._fn!r})"


def constant_seq(value, s: Semiring, description="") -> Seq:
    if isinstance(value, (Mat, Vec)):
        zero = all(x == s.zero for x in value.entries)
    else:
        zero = value == s.zero
    return Seq(lambda n: value, s, description or f"const {value!r}", zero=zero)


def delta(s: Semiring, unit=None) -> Seq:
    """1 at index 0 and 0 afterwards; ``unit`` replaces the 1 (e.g. an identity matrix)."""
    from .linalg import zero_like

    one = s.one if unit is None else unit
    zero = zero_like(s, one)
    return Seq(lambda n: one if n == 0 else zero, s, "delta")


def vec_seq(components: list[Seq], description="") -> Seq:
    if not components:
        raise DimensionMismatchError("vector sequence needs at least one component")
    s = components[0].semiring
    for c in components:
        if c.semiring is not s:
            raise SemiringMismatchError("components over different semirings")
    comps = list(components)
    return Seq(lambda n: Vec(tuple(c(n) for c in comps), s), s,
               description or "vector sequence", components=comps)


def mat_seq(entries: list[list[Seq]], description="") -> Seq:
    rows = [list(r) for r in entries]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DimensionMismatchError("matrix sequence must be square")
    s = rows[0][0].semiring
    for r in rows:
        for e in r:
            if e.semiring is not s:
                raise SemiringMismatchError("entries over different semirings")
    k = len(rows)
    flat = [e for r in rows for e in r]
    return Seq(lambda n: Mat(k, k, tuple(e(n) for e in flat), s), s,
               description or "matrix sequence", entries=rows)


def component(seq: Seq, i: int) -> Seq:
    """The i-th scalar component of a vector sequence."""
    if seq.components is not None:
        return seq.components[i]
    return Seq(lambda n: seq(n)[i], seq.semiring, f"{seq.description}[{i}]")


def entry(seq: Seq, i: int, j: int) -> Seq:
    """The (i, j) scalar entry of a matrix sequence."""
    if seq.entries is not None:
        return seq.entries[i][j]
    return Seq(lambda n: seq(n)[i, j], seq.semiring, f"{seq.description}[{i},{j}]")


# ---------------------------------------------------------------------------
# polynomial expressions in n
#
#   expression := term (("+"|"-") term)*
#   term       := factor ("*" factor)*
#   factor     := integer | "n" | "(" expression ")"

_TOKEN = re.compile(r"\s*(?:(\d+)|(n)|([-+*()]))")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SeqSpecError(f"unexpected character in {text!r} at offset {pos}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise SeqSpecError("empty expression")
        node = self.expression()
        if self.peek() is not None:
            raise SeqSpecError(f"trailing {self.peek()!r} in {self.text!r}")
        return node

    def expression(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "*":
            self.take()
            node = ("*", node, self.factor())
        return node

    def factor(self):
        tok = self.take()
        if tok is None:
            raise SeqSpecError(f"unexpected end of {self.text!r}")
        if tok == "n":
            return "n"
        if tok == "(":
            node = self.expression()
            if self.take() != ")":
                raise SeqSpecError(f"unbalanced parentheses in {self.text!r}")
            return node
        if tok.isdigit():
            return int(tok)
        raise SeqSpecError(f"unexpected {tok!r} in {self.text!r}")


def _evaluate(node, n: int) -> int:
    if node == "n":
        return n
    if isinstance(node, int):
        return node
    op, a, b = node
    x, y = _evaluate(a, n), _evaluate(b, n)
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    return x * y


def parse_polynomial(text: str):
    """Parse an integer expression in ``n``; returns a function int -> int."""
    tree = _Parser(text).parse()
    return lambda n: _evaluate(tree, n)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeqSpec:
    form: str  # "constant" | "polynomial" | "table"
    value: str | None = None  # constant literal
    expr: str | None = None  # polynomial text
    table: tuple = ()  # ((n, literal), ...)
    tail: str = "repeat"
    raw: Any = field(default=None, compare=False)

    def __post_init__(self):
        if self.form not in ("constant", "polynomial", "table"):
            raise SeqSpecError(f"unknown sequence form {self.form!r}")
        if self.form == "table":
            idx = [i for i, _ in self.table]
            if not idx:
                raise SeqSpecError("table sequence needs at least one entry")
            if len(set(idx)) != len(idx):
                raise SeqSpecError("table indices must be distinct")
            if any((not isinstance(i, int)) or isinstance(i, bool) or i < 0 for i in idx):
                raise SeqSpecError("table indices must be natural numbers")
            if self.tail not in ("repeat", "zero"):
                raise SeqSpecError(f"tail rule must be 'repeat' or 'zero', got {self.tail!r}")
        if self.form == "polynomial":
            parse_polynomial(self.expr)

    def is_zero(self, s: Semiring) -> bool:
        try:
            if self.form == "constant":
                return parse_literal(s, self.value) == s.zero
            if self.form == "table":
                return self.tail == "zero" and all(
                    parse_literal(s, v) == s.zero for _, v in self.table)
            if self.form == "polynomial" and "n" not in self.expr:
                return parse_literal(s, parse_polynomial(self.expr)(0)) == s.zero
        except InputError:
            return False
        return False

    def to_json(self):
        if self.raw is not None:
            return self.raw
        if self.form == "constant":
            return {"constant": self.value}
        if self.form == "polynomial":
            return self.expr
        return {"table": [[i, v] for i, v in self.table], "tail": self.tail}


def constant_spec(literal: str) -> SeqSpec:
    return SeqSpec("constant", value=literal)


def parse_seq_spec(obj) -> SeqSpec:
    """Read a sequence spec from its JSON form.

    Accepted forms:

    * ``"n+1"``: a polynomial; a bare string that is not a polynomial (such
      as ``"inf"`` or ``"true"``) is taken as a constant literal
    * a JSON integer or boolean: a constant literal
    * ``{"constant": literal}``
    * ``{"poly": "expr"}`` (alias ``"polynomial"``)
    * ``{"table": [[n, literal], ...], "tail": "repeat" | "zero"}``
    """
    if isinstance(obj, bool):
        return SeqSpec("constant", value="true" if obj else "false", raw=obj)
    if isinstance(obj, int):
        return SeqSpec("constant", value=str(obj), raw=obj)
    if isinstance(obj, str):
        try:
            return SeqSpec("polynomial", expr=obj, raw=obj)
        except SeqSpecError:
            return SeqSpec("constant", value=obj, raw=obj)
    if isinstance(obj, dict):
        keys = set(obj)
        if keys == {"constant"}:
            v = obj["constant"]
            if isinstance(v, bool):
                v = "true" if v else "false"
            return SeqSpec("constant", value=str(v), raw=obj)
        for key in ("poly", "polynomial"):
            if keys == {key}:
                if not isinstance(obj[key], str):
                    raise SeqSpecError(f"{key} must be a string expression")
                return SeqSpec("polynomial", expr=obj[key], raw=obj)
        if "table" in keys and keys <= {"table", "tail"}:
            rows = obj["table"]
            if not isinstance(rows, list) or not all(
                    isinstance(r, list) and len(r) == 2 for r in rows):
                raise SeqSpecError("table must be a list of [n, literal] pairs")
            table = tuple(sorted(((r[0], _lit_text(r[1])) for r in rows),
                                 key=lambda p: p[0] if isinstance(p[0], int) else -1))
            return SeqSpec("table", table=table, tail=obj.get("tail", "repeat"), raw=obj)
    raise SeqSpecError(f"unrecognised sequence spec {obj!r}")


def _lit_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def seq_from_spec(spec: SeqSpec, s: Semiring) -> Seq:
    """Build a scalar sequence from its declarative spec.

    Polynomials are evaluated in ordinary integer arithmetic and the result
    is pushed through the semiring's literal parser, so over min-plus
    ``n+1`` means the number n+1. Table gaps below the last index are zero;
    beyond it the tail rule applies.
    """
    if spec.form == "constant":
        value = parse_literal(s, spec.value)
        return Seq(lambda n: value, s, f"const {spec.value}", spec=spec)

    if spec.form == "polynomial":
        poly = parse_polynomial(spec.expr)

        def fn(n):
            v = poly(n)
            try:
                return s.from_int(v)
            except InputError:
                raise InjectionError(n, v, s.name) from None

        return Seq(fn, s, spec.expr, spec=spec)

    values = {i: parse_literal(s, lit) for i, lit in spec.table}
    last = max(values)
    tail_value = values[last] if spec.tail == "repeat" else s.zero

    def lookup(n):
        if n > last:
            return tail_value
        return values.get(n, s.zero)

    return Seq(lookup, s, f"table({len(values)}, tail={spec.tail})", spec=spec)


# ---------------------------------------------------------------------------


def _check_pair(alpha: Seq, beta: Seq) -> Semiring:
    if alpha.semiring is not beta.semiring:
        raise SemiringMismatchError(
            f"convolution of sequences over {alpha.semiring.name} and {beta.semiring.name}")
    return alpha.semiring


def convolve(alpha: Seq, beta: Seq, n: int):
    """(alpha * beta)(n) = sum_{i=0..n} alpha(n-i) beta(i), i ascending."""
    s = _check_pair(alpha, beta)
    acc = times(s, alpha(n), beta(0))
    for i in range(1, n + 1):
        acc = plus(s, acc, times(s, alpha(n - i), beta(i)))
    return acc


def convolution_seq(alpha: Seq, beta: Seq) -> Seq:
    return Seq(lambda m: convolve(alpha, beta, m), _check_pair(alpha, beta),
               f"({alpha.description} * {beta.description})")


def convolve_fixed(kernel: Callable[[int, int], Any], beta: Seq, n: int, t: int):
    """Convolution over the first kernel argument with the second held at ``t``.

    Returns sum_{i=0..n} kernel(n-i, t) beta(i): the bracket form
    [K^(n)(t) * beta(n)] expanded first and then evaluated at the given t.
    """
    s = beta.semiring
    acc = times(s, kernel(n, t), beta(0))
    for i in range(1, n + 1):
        acc = plus(s, acc, times(s, kernel(n - i, t), beta(i)))
    return acc
