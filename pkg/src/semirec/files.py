"""JSON documents for systems, compositions and automata.

All documents carry ``"format": 1`` and a ``"semiring"`` name. Literals may
be JSON numbers or strings (strings allow arbitrarily large integers and
``"inf"``). Sequence specs follow ``sequences.parse_seq_spec``.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path as FsPath
from typing import Any, Union

from .automata import Edge, WeightedAutomaton
from .errors import InputError, SemirecError
from .linalg import Mat, Vec
from .recurrence import ComposedSystem, RecurrenceSystem
from .semiring import Semiring, builtin_semiring, parse_literal
from .sequences import Seq, mat_seq, parse_seq_spec, seq_from_spec, vec_seq

FORMAT_VERSION = 1

Document = Union[RecurrenceSystem, ComposedSystem, WeightedAutomaton]


class FileFormatError(InputError):
    """A document problem, located by the field path that led to it."""

    def __init__(self, message, path=()):
        self.message = str(message)
        self.path = tuple(path)
        super().__init__(f"{self.where}: {self.message}" if self.path else self.message)

    @property
    def where(self) -> str:
        out = ""
        for p in self.path:
            out += p if (p.startswith("[") or not out) else "." + p
        return out


@contextmanager
def _field(name: str):
    try:
        yield
    except FileFormatError as exc:
        raise FileFormatError(exc.message, (name,) + exc.path) from None
    except (SemirecError, ValueError, TypeError) as exc:
        raise FileFormatError(exc, (name,)) from None


def _require(doc: dict, key: str):
    if key not in doc:
        raise FileFormatError("missing field", (key,))
    return doc[key]


def _list_of(value, what, length=None):
    if not isinstance(value, list):
        raise FileFormatError(f"{what} must be a list")
    if length is not None and len(value) != length:
        raise FileFormatError(f"{what} must have length {length}, got {len(value)}")
    return value


def read_json(path) -> dict:
    text = FsPath(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return doc


def document_kind(doc: dict) -> str:
    if "states" in doc or "edges" in doc:
        return "automaton"
    if "outer" in doc or "inner" in doc:
        return "composition"
    return "system"


def _semiring(doc: dict, override: str | None) -> Semiring:
    if override:
        return builtin_semiring(override)
    name = _require(doc, "semiring")
    with _field("semiring"):
        if not isinstance(name, str):
            raise FileFormatError("must be a string")
        return builtin_semiring(name)


def _check_format(doc: dict):
    fmt = doc.get("format", FORMAT_VERSION)
    if fmt != FORMAT_VERSION:
        raise FileFormatError(f"unsupported version {fmt!r} (expected {FORMAT_VERSION})", ("format",))


def _dim(doc: dict) -> int:
    k = _require(doc, "k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise FileFormatError(f"must be a positive integer, got {k!r}", ("k",))
    return k


def _coefficients(obj, k: int, s: Semiring, where: str):
    with _field(where):
        if not isinstance(obj, dict) or len(obj) != 1 or not set(obj) <= {"constant", "variable"}:
            raise FileFormatError("must be {\"constant\": [[...]]} or {\"variable\": [[...]]}")
        (form, rows), = obj.items()
        with _field(form):
            _list_of(rows, "matrix", k)
        for i, r in enumerate(rows):
            with _field(f"{form}[{i}]"):
                _list_of(r, "row", k)
        if form == "constant":
            values = []
            for i, r in enumerate(rows):
                row = []
                for j, lit in enumerate(r):
                    with _field(f"{form}[{i}][{j}]"):
                        row.append(parse_literal(s, lit))
                values.append(row)
            return Mat.from_rows(values, s)
        seqs = []
        for i, r in enumerate(rows):
            row = []
            for j, spec in enumerate(r):
                with _field(f"{form}[{i}][{j}]"):
                    row.append(_seq(spec, s))
            seqs.append(row)
        return mat_seq(seqs, "A(n)")


def _seq(obj, s: Semiring) -> Seq:
    seq = seq_from_spec(parse_seq_spec(obj), s)
    if seq.spec.form != "polynomial":
        seq(0)  # surfaces literal errors at load time
    return seq


def _input(obj, k: int, s: Semiring, where: str) -> Seq:
    with _field(where):
        _list_of(obj, where, k)
        comps = []
        for i, spec in enumerate(obj):
            with _field(f"[{i}]"):
                comps.append(_seq(spec, s))
        return vec_seq(comps, where)


def _vector(obj, k: int, s: Semiring, where: str) -> Vec:
    with _field(where):
        _list_of(obj, where, k)
        vals = []
        for i, lit in enumerate(obj):
            with _field(f"[{i}]"):
                vals.append(parse_literal(s, lit))
        return Vec(tuple(vals), s)


def system_from_json(doc: dict, semiring: str | None = None) -> RecurrenceSystem:
    _check_format(doc)
    s = _semiring(doc, semiring)
    k = _dim(doc)
    A = _coefficients(_require(doc, "coefficients"), k, s, "coefficients")
    g = _input(_require(doc, "input"), k, s, "input")
    init = _vector(doc.get("initial", [s.render(s.zero)] * k), k, s, "initial")
    return RecurrenceSystem(A, g, init)


def composition_from_json(doc: dict, semiring: str | None = None) -> ComposedSystem:
    _check_format(doc)
    s = _semiring(doc, semiring)
    k = _dim(doc)
    zero = [s.render(s.zero)] * k
    A = _coefficients(_require(doc, "outer"), k, s, "outer")
    B = _coefficients(_require(doc, "inner"), k, s, "inner")
    h = _input(_require(doc, "input_h"), k, s, "input_h")
    f0 = _vector(doc.get("initial_f", zero), k, s, "initial_f")
    g0 = _vector(doc.get("initial_g", zero), k, s, "initial_g")
    return ComposedSystem(A, B, h, f0, g0)


def automaton_from_json(doc: dict, semiring: str | None = None) -> WeightedAutomaton:
    _check_format(doc)
    s = _semiring(doc, semiring)
    states = _require(doc, "states")
    with _field("states"):
        _list_of(states, "states")
        if not states or not all(isinstance(x, str) for x in states):
            raise FileFormatError("must be a nonempty list of names")
    inputs = doc.get("inputs", [])
    signals_doc = doc.get("signals", {})
    with _field("inputs"):
        _list_of(inputs, "inputs")
        if not all(isinstance(x, str) for x in inputs):
            raise FileFormatError("must be a list of names")
    signals = {}
    with _field("signals"):
        if not isinstance(signals_doc, dict):
            raise FileFormatError("must map input names to sequence specs")
        for name in inputs:
            if name not in signals_doc:
                raise FileFormatError("input state has no signal", (name,))
            with _field(name):
                signals[name] = _seq(signals_doc[name], s)
    edges = []
    edge_docs = _require(doc, "edges")
    with _field("edges"):
        for i, e in enumerate(_list_of(edge_docs, "edges")):
            with _field(f"[{i}]"):
                if not isinstance(e, dict):
                    raise FileFormatError("edge must be an object")
                wdoc = _require(e, "weight")
                with _field("weight"):
                    w = _seq(wdoc, s)
                edges.append(Edge(_require(e, "from"), _require(e, "to"), w))
    return WeightedAutomaton(tuple(states), tuple(edges), s, tuple(inputs), signals)


def load_document(source, semiring: str | None = None) -> Document:
    """Load a system, composition or automaton from a path or a parsed dict."""
    doc = source if isinstance(source, dict) else read_json(source)
    kind = document_kind(doc)
    if kind == "automaton":
        return automaton_from_json(doc, semiring)
    if kind == "composition":
        return composition_from_json(doc, semiring)
    return system_from_json(doc, semiring)


# ---------------------------------------------------------------------------
# writing


def _spec_json(seq: Seq) -> Any:
    if seq.spec is None:
        raise InputError(f"sequence {seq.description!r} has no declarative form to write")
    return seq.spec.to_json()


def coefficients_to_json(coefficients) -> dict:
    if isinstance(coefficients, Mat):
        r = coefficients.semiring.render
        return {"constant": [[r(x) for x in row] for row in coefficients.tolist()]}
    if coefficients.entries is None:
        raise InputError("coefficient sequence has no per-entry form to write")
    return {"variable": [[_spec_json(e) for e in row] for row in coefficients.entries]}


def _input_json(seq: Seq) -> list:
    if seq.components is None:
        raise InputError("input sequence has no per-component form to write")
    return [_spec_json(c) for c in seq.components]


def _vec_json(v: Vec) -> list:
    return [v.semiring.render(x) for x in v.entries]


def system_to_json(sys: RecurrenceSystem) -> dict:
    return {
        "format": FORMAT_VERSION,
        "semiring": sys.semiring.name,
        "k": sys.dim,
        "coefficients": coefficients_to_json(sys.coefficients),
        "input": _input_json(sys.input),
        "initial": _vec_json(sys.initial),
    }


def composition_to_json(comp: ComposedSystem) -> dict:
    return {
        "format": FORMAT_VERSION,
        "semiring": comp.semiring.name,
        "k": comp.dim,
        "outer": coefficients_to_json(comp.outer_coefficients),
        "inner": coefficients_to_json(comp.inner_coefficients),
        "input_h": _input_json(comp.input_h),
        "initial_f": _vec_json(comp.initial_f),
        "initial_g": _vec_json(comp.initial_g),
    }


def automaton_to_json(aut: WeightedAutomaton) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "semiring": aut.semiring.name,
        "states": list(aut.states),
        "edges": [{"from": e.src, "to": e.dst, "weight": _spec_json(e.weight)}
                  for e in aut.edges],
    }
    if aut.inputs:
        doc["inputs"] = list(aut.inputs)
        doc["signals"] = {g: _spec_json(aut.signals[g]) for g in aut.inputs}
    return doc


def document_to_json(obj: Document) -> dict:
    if isinstance(obj, WeightedAutomaton):
        return automaton_to_json(obj)
    if isinstance(obj, ComposedSystem):
        return composition_to_json(obj)
    return system_to_json(obj)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
