"""Semiring descriptors, builtin instances, literal parsing and a law checker."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Sequence

from .errors import MalformedLiteralError, OutOfCarrierError, UnknownSemiringError


class _Infinity:
    """Signed infinity adjoined to the integers for the tropical carriers.

    Only two instances exist (``INF`` and ``NEG_INF``), so identity and
    equality coincide. They order correctly against ints, which lets the
    builtin ``min``/``max`` serve as the tropical additions.
    """

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(("semirec-inf", self.sign))

    def __lt__(self, other):
        if self is other:
            return False
        return self.sign < 0

    def __gt__(self, other):
        if self is other:
            return False
        return self.sign > 0

    def __le__(self, other):
        return self is other or self.sign < 0

    def __ge__(self, other):
        return self is other or self.sign > 0

    def __reduce__(self):
        return (_infinity, (self.sign,))


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def _infinity(sign):
    return INF if sign > 0 else NEG_INF


@dataclass(frozen=True, eq=False)
class Semiring:
    """A carrier with two operations and their identities.

    Instances compare by identity; builtin descriptors are cached so every
    lookup by name returns the same object.
    """

    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    is_commutative_mul: bool
    parse_literal: Callable[[str], Any] = field(repr=False)
    render: Callable[[Any], str] = field(repr=False, default=str)

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values):
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def from_int(self, value: int):
        """Inject an ordinary integer through the literal parser."""
        return self.parse_literal(str(value))


_INT_RE = re.compile(r"[+-]?\d+\Z")


def _parse_int(token, name):
    token = token.strip()
    if not _INT_RE.match(token):
        raise MalformedLiteralError(token, name)
    return int(token)


def _natural_literal(token):
    value = _parse_int(token, "natural")
    if value < 0:
        raise OutOfCarrierError(token.strip(), "natural")
    return value


def _integer_literal(token):
    return _parse_int(token, "integer")


def _boolean_literal(token):
    t = token.strip().lower()
    if t in ("1", "true"):
        return True
    if t in ("0", "false"):
        return False
    if _INT_RE.match(t):
        raise OutOfCarrierError(token.strip(), "boolean")
    raise MalformedLiteralError(token.strip(), "boolean")


def _tropical_literal(token, name, infinity):
    t = token.strip().lower()
    if t in ("inf", "+inf"):
        if infinity is INF:
            return INF
        raise OutOfCarrierError(token.strip(), name)
    if t == "-inf":
        if infinity is NEG_INF:
            return NEG_INF
        raise OutOfCarrierError(token.strip(), name)
    return _parse_int(t, name)


def _min_plus_mul(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def _max_plus_mul(a, b):
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


def _render_bool(b):
    return "1" if b else "0"


def _add_int(a, b):
    return a + b


def _mul_int(a, b):
    return a * b


BUILTIN_NAMES = ("natural", "boolean", "tropical_min_plus", "max_plus", "integer")


@lru_cache(maxsize=None)
def builtin_semiring(name: str) -> Semiring:
    if name == "natural":
        return Semiring("natural", _add_int, _mul_int, 0, 1, True, _natural_literal)
    if name == "integer":
        return Semiring("integer", _add_int, _mul_int, 0, 1, True, _integer_literal)
    if name == "boolean":
        return Semiring(
            "boolean",
            lambda a, b: a or b,
            lambda a, b: a and b,
            False,
            True,
            True,
            _boolean_literal,
            _render_bool,
        )
    if name == "tropical_min_plus":
        return Semiring(
            "tropical_min_plus",
            min,
            _min_plus_mul,
            INF,
            0,
            True,
            lambda t: _tropical_literal(t, "tropical_min_plus", INF),
            repr,
        )
    if name == "max_plus":
        return Semiring(
            "max_plus",
            max,
            _max_plus_mul,
            NEG_INF,
            0,
            True,
            lambda t: _tropical_literal(t, "max_plus", NEG_INF),
            repr,
        )
    raise UnknownSemiringError(name, BUILTIN_NAMES)


def parse_literal(s: Semiring, text) -> Any:
    """Parse ``text`` into the carrier of ``s``.

    JSON scalars are accepted as well as strings: ints are formatted in
    decimal and booleans as ``true``/``false``.
    """
    if isinstance(text, bool):
        text = "true" if text else "false"
    elif isinstance(text, int):
        text = str(text)
    elif not isinstance(text, str):
        raise MalformedLiteralError(repr(text), s.name)
    return s.parse_literal(text)


# small sample pools, 8 elements each, used by the law suite and the CLI
DEFAULT_SAMPLES = {
    "natural": ["0", "1", "2", "3", "5", "7", "12", "100"],
    "integer": ["0", "1", "-1", "2", "-3", "5", "-8", "13"],
    "boolean": ["0", "1", "0", "1", "1", "0", "1", "0"],
    "tropical_min_plus": ["inf", "0", "1", "7", "-2", "3", "inf", "-5"],
    "max_plus": ["-inf", "0", "1", "7", "-2", "3", "-inf", "-5"],
}


def default_samples(s: Semiring) -> list:
    return [s.parse_literal(t) for t in DEFAULT_SAMPLES[s.name]]


@dataclass
class LawResult:
    law: str
    passed: bool
    counterexample: tuple | None = None
    # every failing instance, in enumeration order
    counterexamples: list = field(default_factory=list)


@dataclass
class LawReport:
    semiring: str
    results: list[LawResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            if r.passed:
                out.append(f"PASS {r.law}")
            else:
                out.append(f"FAIL {r.law} counterexample={r.counterexample!r}")
        return out


def check_semiring_laws(s: Semiring, samples: Sequence) -> LawReport:
    """Check every semiring axiom on all tuples drawn from ``samples``.

    Failures are recorded in the report, never raised.
    """
    if not samples:
        raise ValueError("samples must be nonempty")
    xs = list(dict.fromkeys(samples)) if _hashable(samples) else list(samples)
    add, mul, zero, one = s.add, s.mul, s.zero, s.one

    laws: list[tuple[str, int, Callable[..., bool]]] = [
        ("add_associative", 3, lambda a, b, c: add(add(a, b), c) == add(a, add(b, c))),
        ("add_commutative", 2, lambda a, b: add(a, b) == add(b, a)),
        ("add_identity", 1, lambda a: add(a, zero) == a and add(zero, a) == a),
        ("mul_associative", 3, lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c))),
        ("mul_identity", 1, lambda a: mul(a, one) == a and mul(one, a) == a),
        ("annihilation", 1, lambda a: mul(a, zero) == zero and mul(zero, a) == zero),
        (
            "left_distributive",
            3,
            lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        ),
        (
            "right_distributive",
            3,
            lambda a, b, c: mul(add(b, c), a) == add(mul(b, a), mul(c, a)),
        ),
    ]
    if s.is_commutative_mul:
        laws.append(("mul_commutative", 2, lambda a, b: mul(a, b) == mul(b, a)))

    results = []
    for law, arity, holds in laws:
        bad = [t for t in itertools.product(xs, repeat=arity) if not holds(*t)]
        results.append(LawResult(law, not bad, bad[0] if bad else None, bad))
    return LawReport(s.name, results)


def _hashable(values) -> bool:
    try:
        for v in values:
            hash(v)
    except TypeError:
        return False
    return True
