"""Nonhomogeneous first-order systems f(n+1) = A(n) f(n) + g(n) over a semiring.

``iterate`` unrolls a system directly and accepts any initial vector; it is
the oracle. The ``solve_*`` functions evaluate the closed-form convolution
solutions, which hold only for zero initial conditions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Union

from .errors import DimensionMismatchError, NonzeroInitialError, SemiringMismatchError
from .linalg import FallingProducts, Mat, PowerCache, Vec, mat_vec, vec_add, zero_vec
from .semiring import Semiring
from .sequences import Seq, constant_seq, convolve, convolve_fixed

Coefficients = Union[Mat, Seq]


def as_matrix_seq(coefficients: Coefficients) -> Seq:
    if isinstance(coefficients, Mat):
        return constant_seq(coefficients, coefficients.semiring, "constant A")
    return coefficients


def power_seq(A: Mat) -> Seq:
    """m -> A^m, memoized, built by the same repeated product as ``mat_pow``."""
    cache = PowerCache(A)
    return Seq(cache, A.semiring, "powers")


def _dim_of(coefficients: Coefficients):
    if isinstance(coefficients, Mat):
        if not coefficients.is_square:
            raise DimensionMismatchError("coefficient matrix must be square")
        return coefficients.rows
    if coefficients.entries is not None:
        return len(coefficients.entries)
    return None


@dataclass(frozen=True)
class RecurrenceSystem:
    """f(n+1) = A(n) f(n) + g(n) with f(0) = ``initial``.

    ``coefficients`` is a ``Mat`` for constant coefficients or a ``Seq`` of
    matrices for variable ones; ``input`` is a ``Seq`` of vectors.
    """

    coefficients: Coefficients
    input: Seq
    initial: Vec

    def __post_init__(self):
        s = self.initial.semiring
        if self.coefficients.semiring is not s or self.input.semiring is not s:
            raise SemiringMismatchError("system parts over different semirings")
        k = self.initial.dim
        d = _dim_of(self.coefficients)
        if d is not None and d != k:
            raise DimensionMismatchError(f"{d}x{d} coefficients with initial vector of dim {k}")
        if self.input.components is not None and len(self.input.components) != k:
            raise DimensionMismatchError(
                f"input has {len(self.input.components)} components, expected {k}")

    @property
    def dim(self) -> int:
        return self.initial.dim

    @property
    def semiring(self) -> Semiring:
        return self.initial.semiring

    @property
    def is_constant(self) -> bool:
        return isinstance(self.coefficients, Mat)

    def A(self, n: int) -> Mat:
        if isinstance(self.coefficients, Mat):
            return self.coefficients
        return self.coefficients(n)

    @property
    def has_zero_initial(self) -> bool:
        s = self.semiring
        return all(x == s.zero for x in self.initial.entries)


@dataclass(frozen=True)
class ComposedSystem:
    """f(n+1) = A(n) f(n) + g(n) where g(n+1) = B(n) g(n) + h(n)."""

    outer_coefficients: Coefficients
    inner_coefficients: Coefficients
    input_h: Seq
    initial_f: Vec
    initial_g: Vec

    def __post_init__(self):
        if self.initial_f.dim != self.initial_g.dim:
            raise DimensionMismatchError("outer and inner systems differ in dimension")
        # validates the inner half eagerly
        self.inner

    @property
    def inner(self) -> RecurrenceSystem:
        return RecurrenceSystem(self.inner_coefficients, self.input_h, self.initial_g)

    @property
    def outer(self) -> RecurrenceSystem:
        """The outer system, fed by the iterated solution of the inner one."""
        return RecurrenceSystem(self.outer_coefficients, iteration_seq(self.inner),
                                self.initial_f)

    @property
    def dim(self) -> int:
        return self.initial_f.dim

    @property
    def semiring(self) -> Semiring:
        return self.initial_f.semiring

    @property
    def is_constant(self) -> bool:
        return (isinstance(self.outer_coefficients, Mat)
                and isinstance(self.inner_coefficients, Mat))

    @property
    def has_zero_initial(self) -> bool:
        z = self.semiring.zero
        return all(x == z for x in self.initial_f.entries + self.initial_g.entries)


# ---------------------------------------------------------------------------
# direct iteration (oracle)


def _step(sys: RecurrenceSystem, n: int, f: Vec) -> Vec:
    return vec_add(mat_vec(sys.A(n), f), sys.input(n))


def iterate(sys: RecurrenceSystem, N: int) -> list[Vec]:
    """[f(0), ..., f(N)] by unrolling the recurrence."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    out = [sys.initial]
    for n in range(N):
        out.append(_step(sys, n, out[-1]))
    return out


def iteration_seq(sys: RecurrenceSystem) -> Seq:
    """The iterated solution as a lazily extended sequence."""
    values = [sys.initial]
    lock = threading.Lock()

    def fn(n):
        with lock:
            while len(values) <= n:
                values.append(_step(sys, len(values) - 1, values[-1]))
            return values[n]

    return Seq(fn, sys.semiring, "iterated solution")


def iterate_composed(comp: ComposedSystem, N: int) -> tuple[list[Vec], list[Vec]]:
    """(f(0..N), g(0..N)): iterate the inner system, then the outer one on its output."""
    g = iterate(comp.inner, N)
    g_seq = Seq(lambda n: g[n], comp.semiring, "inner solution")
    outer = RecurrenceSystem(comp.outer_coefficients, g_seq, comp.initial_f)
    return iterate(outer, N), g


# ---------------------------------------------------------------------------
# closed forms (zero initial conditions)


def solve_constant(A: Mat, g: Seq, n: int, powers: Seq | None = None) -> Vec:
    """f(n+1) = (A^n * g)(n) = sum_{i=0..n} A^(n-i) g(i)."""
    return convolve(powers or power_seq(A), g, n)


def solve_variable(Aseq: Seq, g: Seq, n: int, falling: FallingProducts | None = None) -> Vec:
    """f(n+1) = [A^(n)(t) * g(n)] at t = n, i.e. A(n)...A(1) g(0) + ... + A(n) g(n-1) + g(n)."""
    fall = falling or FallingProducts(Aseq)
    return convolve_fixed(lambda m, t: fall(t, m), g, n, n)


def _inner_constant(B: Mat, h: Seq, powers: Seq | None = None) -> Seq:
    Bp = powers or power_seq(B)
    return Seq(lambda m: convolve(Bp, h, m), h.semiring, "B^n * h")


def solve_composed_constant(A: Mat, B: Mat, h: Seq, n: int,
                            powers_a: Seq | None = None, inner: Seq | None = None) -> Vec:
    """f(n+2) = A^n * [B^n * h(n)]: the outer convolution runs over the
    sequence m -> (B^m * h)(m)."""
    inner = inner or _inner_constant(B, h)
    return convolve(powers_a or power_seq(A), inner, n)


def _inner_variable(Bseq: Seq, h: Seq, falling: FallingProducts | None = None) -> Seq:
    fall = falling or FallingProducts(Bseq)
    return Seq(lambda m: convolve_fixed(lambda j, s_: fall(s_, j), h, m, m),
               h.semiring, "[B^(n)(s) * h(n)] at s=n")


def solve_composed_variable(Aseq: Seq, Bseq: Seq, h: Seq, n: int,
                            falling_a: FallingProducts | None = None,
                            inner: Seq | None = None) -> Vec:
    """f(n+2) = [A^(n)(t) * [B^(n)(s) * h(n)] at s=n] at t=n+1."""
    fall = falling_a or FallingProducts(Aseq)
    inner = inner or _inner_variable(Bseq, h)
    return convolve_fixed(lambda m, t: fall(t, m), inner, n, n + 1)


class ClosedForm:
    """Closed-form evaluator for one system or composition with shared memo tables.

    ``value(n)`` is f(n). Construction fails with ``NonzeroInitialError``
    unless every initial condition is zero.
    """

    def __init__(self, system: RecurrenceSystem | ComposedSystem):
        if not system.has_zero_initial:
            what = "f(0) = g(0)" if isinstance(system, ComposedSystem) else "f(0)"
            raise NonzeroInitialError(what)
        self.system = system
        self.composed = isinstance(system, ComposedSystem)
        self._zero = zero_vec(system.dim, system.semiring)
        if not self.composed:
            if system.is_constant:
                powers = power_seq(system.coefficients)
                self._shifted = lambda n: solve_constant(
                    system.coefficients, system.input, n, powers)
            else:
                fall = FallingProducts(system.coefficients)
                self._shifted = lambda n: solve_variable(
                    system.coefficients, system.input, n, fall)
        elif system.is_constant:
            A, B, h = system.outer_coefficients, system.inner_coefficients, system.input_h
            pa, inner = power_seq(A), _inner_constant(B, h)
            self._shifted = lambda n: solve_composed_constant(A, B, h, n, pa, inner)
        else:
            Aseq = as_matrix_seq(system.outer_coefficients)
            Bseq = as_matrix_seq(system.inner_coefficients)
            h = system.input_h
            fa, inner = FallingProducts(Aseq), _inner_variable(Bseq, h)
            self._shifted = lambda n: solve_composed_variable(Aseq, Bseq, h, n, fa, inner)
        self._seq = Seq(self._value, system.semiring, "closed-form solution")

    def _value(self, n: int) -> Vec:
        offset = 2 if self.composed else 1
        if n < offset:
            return self._zero
        return self._shifted(n - offset)

    def __call__(self, n: int) -> Vec:
        return self._seq(n)

    def table(self, N: int) -> list[Vec]:
        return [self(n) for n in range(N + 1)]


def solve(system: RecurrenceSystem | ComposedSystem, n: int) -> Vec:
    """f(n) of a system or composition by the closed form."""
    return ClosedForm(system)(n)


def solution_table(system: RecurrenceSystem | ComposedSystem, N: int) -> list[Vec]:
    """[f(0), ..., f(N)] by the closed form, sharing memoized products across n."""
    return ClosedForm(system).table(N)
