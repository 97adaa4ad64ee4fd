"""Weighted automata over the one-letter alphabet {z}.

An edge ``Edge(src, dst, w)`` between output states is the transition
src -> dst; for the system it generates, it means that the value of ``dst``
at time n, weighted by w(n), flows into ``src`` at time n+1. So the
coefficient a_ij becomes the edge f_i -> f_j, and a path of length n
starting at p_i collects the products that make up row i of A^n.

Input states g_i carry an input signal and have a single weight-one edge
g_i -> f_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BoundExceededError, InputError, KindMismatchError, StructureError
from .linalg import Mat, Vec, zero_vec
from .recurrence import RecurrenceSystem
from .semiring import Semiring
from .sequences import Seq, component, constant_seq, entry, mat_seq, vec_seq

DEFAULT_LENGTH_BOUND = 10
MAX_PATHS = 10**6


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    weight: Seq


@dataclass(frozen=True)
class WeightedAutomaton:
    states: tuple  # output states f_1..f_k, in order
    edges: tuple
    semiring: Semiring
    inputs: tuple = ()  # input state names
    signals: dict = field(default_factory=dict)  # input state -> Seq of carrier values

    def __post_init__(self):
        names = list(self.states) + list(self.inputs)
        if len(set(names)) != len(names):
            raise StructureError(_first_dup(names), "declared more than once")
        declared = set(names)
        for e in self.edges:
            for end in (e.src, e.dst):
                if end not in declared:
                    raise StructureError(end, "edge endpoint is not a declared state")
            if e.weight.semiring is not self.semiring:
                raise StructureError(e.src, "edge weight over a different semiring")
        for g in self.inputs:
            out = [e for e in self.edges if e.src == g]
            if len(out) != 1:
                raise StructureError(g, f"input state needs exactly one outgoing edge, has {len(out)}")
            if out[0].dst in self.inputs:
                raise StructureError(g, "input state must feed an output state")
            if not _is_constant_one(out[0].weight, self.semiring):
                raise StructureError(g, "input edge must have constant weight one")
            if any(e.dst == g for e in self.edges):
                raise StructureError(g, "input state has incoming edges")
            if g not in self.signals:
                raise StructureError(g, "input state has no signal")
        targets = [self.input_edge(g).dst for g in self.inputs]
        if len(set(targets)) != len(targets):
            raise StructureError(_first_dup(targets), "fed by more than one input state")

    @property
    def kind(self) -> str:
        return "nonhomogeneous" if self.inputs else "homogeneous"

    def input_edge(self, g: str) -> Edge:
        return next(e for e in self.edges if e.src == g)

    def out_edges(self, state: str) -> list[Edge]:
        return [e for e in self.edges if e.src == state and e.dst in self.states]


def _first_dup(names):
    seen = set()
    for n in names:
        if n in seen:
            return n
        seen.add(n)
    return None


def _is_constant_one(w: Seq, s: Semiring) -> bool:
    if w.spec is not None:
        if w.spec.form == "constant":
            return w(0) == s.one
        if w.spec.form == "table":
            return w.spec.tail == "repeat" and all(w(i) == s.one for i, _ in w.spec.table)
        return False
    # opaque sequence: probe a window
    return all(w(n) == s.one for n in range(16))


@dataclass(frozen=True)
class Path:
    start: str
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def states(self) -> list[str]:
        return [self.start] + [e.dst for e in self.edges]


def _output_names(k):
    return tuple(f"f_{i + 1}" for i in range(k))


def _input_names(k):
    return tuple(f"g_{i + 1}" for i in range(k))


def system_to_automaton(sys: RecurrenceSystem) -> WeightedAutomaton:
    s = sys.semiring
    k = sys.dim
    f = _output_names(k)
    edges = []
    if isinstance(sys.coefficients, Mat):
        A = sys.coefficients
        for i in range(k):
            for j in range(k):
                a = A[i, j]
                if a != s.zero:
                    edges.append(Edge(f[i], f[j], _constant_weight(a, s)))
    else:
        for i in range(k):
            for j in range(k):
                w = entry(sys.coefficients, i, j)
                if not w.is_zero():
                    edges.append(Edge(f[i], f[j], w))
    inputs: tuple = ()
    signals = {}
    if not sys.input.is_zero():
        inputs = _input_names(k)
        one = _constant_weight(s.one, s)
        for i in range(k):
            edges.append(Edge(inputs[i], f[i], one))
            signals[inputs[i]] = component(sys.input, i)
    return WeightedAutomaton(f, tuple(edges), s, inputs, signals)


def _constant_weight(value, s: Semiring) -> Seq:
    from .sequences import constant_spec

    spec = constant_spec(s.render(value))
    return Seq(lambda n: value, s, f"const {spec.value}", spec=spec)


def automaton_to_system(aut: WeightedAutomaton) -> RecurrenceSystem:
    """The system generated by ``aut``, with zero initial vector.

    Parallel edges add up. Coefficients are a constant matrix when every
    edge weight is declared constant, and a matrix sequence otherwise.
    """
    s = aut.semiring
    k = len(aut.states)
    if k == 0:
        raise StructureError(None, "automaton has no output states")
    index = {name: i for i, name in enumerate(aut.states)}
    cells: dict[tuple[int, int], list[Seq]] = {}
    for e in aut.edges:
        if e.src in index:
            cells.setdefault((index[e.src], index[e.dst]), []).append(e.weight)

    def cell(i, j) -> Seq:
        ws = cells.get((i, j))
        if not ws:
            return constant_seq(s.zero, s, "0")
        if len(ws) == 1:
            return ws[0]
        return Seq(lambda n, ws=ws: s.sum(w(n) for w in ws), s, "parallel edges")

    all_constant = all(w.spec is not None and w.spec.form == "constant"
                       for ws in cells.values() for w in ws)
    if all_constant:
        coefficients = Mat.from_rows([[cell(i, j)(0) for j in range(k)] for i in range(k)], s)
    else:
        coefficients = mat_seq([[cell(i, j) for j in range(k)] for i in range(k)])

    comps = [constant_seq(s.zero, s, "0") for _ in range(k)]
    for g in aut.inputs:
        comps[index[aut.input_edge(g).dst]] = aut.signals[g]
    return RecurrenceSystem(coefficients, vec_seq(comps, "input"), zero_vec(k, s))


def enumerate_paths(aut: WeightedAutomaton, start: str, n: int,
                    bound: int = DEFAULT_LENGTH_BOUND) -> list[Path]:
    """Every length-n path from ``start`` through output states, depth first
    in declared edge order."""
    if start not in aut.states:
        if start in aut.inputs:
            raise InputError(f"{start!r} is an input state; paths run over output states")
        raise InputError(f"unknown state {start!r}")
    if n < 0:
        raise InputError("path length must be nonnegative")
    if n > bound:
        raise BoundExceededError(f"path length {n} exceeds the bound {bound}")
    out_edges = {q: aut.out_edges(q) for q in aut.states}
    paths: list[Path] = []

    def walk(state, prefix):
        if len(prefix) == n:
            if len(paths) >= MAX_PATHS:
                raise BoundExceededError(f"more than {MAX_PATHS} paths")
            paths.append(Path(start, tuple(prefix)))
            return
        for e in out_edges[state]:
            prefix.append(e)
            walk(e.dst, prefix)
            prefix.pop()

    walk(start, [])
    return paths


def path_weight(aut: WeightedAutomaton, path: Path):
    """Product of edge weights; the i-th edge (0-based) is read at time n-1-i."""
    s = aut.semiring
    n = path.length
    return s.product(e.weight(n - 1 - i) for i, e in enumerate(path.edges))


def path_weight_sum(aut: WeightedAutomaton, start: str, n: int,
                    bound: int = DEFAULT_LENGTH_BOUND):
    """The sum over all length-n paths from ``start`` of their weights."""
    if aut.kind != "homogeneous":
        raise KindMismatchError(
            "path sums are defined for homogeneous automata; iterate the system instead")
    s = aut.semiring
    return s.sum(path_weight(aut, p) for p in enumerate_paths(aut, start, n, bound))


def ones_vector(k: int, s: Semiring) -> Vec:
    return Vec((s.one,) * k, s)
