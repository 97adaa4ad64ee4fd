"""Truncated formal series in 1/z and the z-transform of solutions.

A ``TruncatedSeries`` holds the exact coefficients c_0..c_N of
sum c_m / z^m. ``z_direct`` reads the coefficients off the closed-form
solution; ``z_theorem`` assembles them from an S-series applied to the
input sequence. ``verify_theorem`` compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .errors import DimensionMismatchError, KindMismatchError, NonzeroInitialError
from .linalg import (
    FallingProducts,
    Mat,
    PowerCache,
    Vec,
    identity,
    plus,
    render_value,
    times,
    zero_vec,
)
from .recurrence import ClosedForm, ComposedSystem, RecurrenceSystem, as_matrix_seq
from .semiring import Semiring
from .sequences import Seq


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    semiring: Semiring

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least c_0")
        shape = _shape(self.coeffs[0])
        if any(_shape(c) != shape for c in self.coeffs):
            raise DimensionMismatchError("series coefficients differ in shape")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m):
        return self.coeffs[m]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, N: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: N + 1], self.semiring)

    def components(self) -> list["TruncatedSeries"]:
        """Per-component scalar series of a vector-coefficient series."""
        if not isinstance(self.coeffs[0], Vec):
            return [self]
        k = self.coeffs[0].dim
        return [TruncatedSeries(tuple(c[i] for c in self.coeffs), self.semiring)
                for i in range(k)]

    def render(self) -> str:
        return render_series(self)

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)


def _shape(x):
    if isinstance(x, Mat):
        return ("mat", x.rows, x.cols)
    if isinstance(x, Vec):
        return ("vec", x.dim)
    return ("scalar",)


def render_series(series: TruncatedSeries) -> str:
    """``c0 + c1/z + c2/z^2 + ... + cN/z^N``."""
    parts = []
    for m, c in enumerate(series.coeffs):
        text = render_value(series.semiring, c)
        if m == 0:
            parts.append(text)
        elif m == 1:
            parts.append(f"{text}/z")
        else:
            parts.append(f"{text}/z^{m}")
    return " + ".join(parts)


def series_of_sequence(f: Callable[[int], Any] | Seq, N: int, semiring: Semiring | None = None
                       ) -> TruncatedSeries:
    s = semiring or f.semiring
    return TruncatedSeries(tuple(f(n) for n in range(N + 1)), s)


def series_add(X: TruncatedSeries, Y: TruncatedSeries) -> TruncatedSeries:
    N = min(X.order, Y.order)
    s = X.semiring
    return TruncatedSeries(tuple(plus(s, X[m], Y[m]) for m in range(N + 1)), s)


def series_mul(X: TruncatedSeries, Y: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product (XY)_m = sum_{i=0..m} X_i Y_(m-i), X on the left."""
    N = min(X.order, Y.order)
    s = X.semiring
    out = []
    for m in range(N + 1):
        acc = times(s, X[0], Y[m])
        for i in range(1, m + 1):
            acc = plus(s, acc, times(s, X[i], Y[m - i]))
        out.append(acc)
    return TruncatedSeries(tuple(out), s)


# ---------------------------------------------------------------------------
# S-series


def s_constant(A: Mat, N: int) -> TruncatedSeries:
    """coeffs[m] = A^m."""
    powers = PowerCache(A)
    return TruncatedSeries(tuple(powers(m) for m in range(N + 1)), A.semiring)


def s_variable(Aseq: Seq, n: int, N: int, falling: FallingProducts | None = None
               ) -> TruncatedSeries:
    """coeffs[m] = A^(m)(m+n) = A(m+n) A(m+n-1) ... A(n+1)."""
    fall = falling or FallingProducts(Aseq)
    return TruncatedSeries(tuple(fall(m + n, m) for m in range(N + 1)), Aseq.semiring)


def _check_same_dim(A: Mat, B: Mat):
    if (A.rows, A.cols) != (B.rows, B.cols):
        raise DimensionMismatchError(
            f"S-series of {A.rows}x{A.cols} and {B.rows}x{B.cols} matrices")


def s_composed_constant(A: Mat, B: Mat, N: int) -> TruncatedSeries:
    """coeffs[m] = sum_{i=0..m} A^(m-i) B^i, a convolution over the exponent."""
    _check_same_dim(A, B)
    pa, pb = PowerCache(A), PowerCache(B)
    s = A.semiring
    out = []
    for m in range(N + 1):
        acc = times(s, pa(m), pb(0))
        for i in range(1, m + 1):
            acc = plus(s, acc, times(s, pa(m - i), pb(i)))
        out.append(acc)
    return TruncatedSeries(tuple(out), s)


def s_composed_variable(Aseq: Seq, Bseq: Seq, n: int, N: int,
                        falling_a: FallingProducts | None = None,
                        falling_b: FallingProducts | None = None) -> TruncatedSeries:
    """coeffs[m] = sum_{i=0..m} A^(m-i)(m+1+n) B^(i)(i+n).

    The A-family keeps its argument t fixed during the expansion over the
    exponent and only then takes t = m+1 (shifted by n).
    """
    _check_same_dim(Aseq(0), Bseq(0))
    fa = falling_a or FallingProducts(Aseq)
    fb = falling_b or FallingProducts(Bseq)
    s = Aseq.semiring
    out = []
    for m in range(N + 1):
        t = m + 1 + n
        acc = times(s, fa(t, m), fb(n, 0))
        for i in range(1, m + 1):
            acc = plus(s, acc, times(s, fa(t, m - i), fb(i + n, i)))
        out.append(acc)
    return TruncatedSeries(tuple(out), s)


# ---------------------------------------------------------------------------
# the two forms of z(f)


def _require_zero_initial(system):
    if not system.has_zero_initial:
        what = "f(0) = g(0)" if isinstance(system, ComposedSystem) else "f(0)"
        raise NonzeroInitialError(what)


def z_direct(system: RecurrenceSystem | ComposedSystem, N: int) -> TruncatedSeries:
    """sum_n f(n)/z^n with f(n) from the closed-form solution.

    The leading coefficient (two leading coefficients for a composition) is
    the zero initial condition.
    """
    _require_zero_initial(system)
    return TruncatedSeries(tuple(ClosedForm(system).table(N)), system.semiring)


def z_theorem(system: RecurrenceSystem | ComposedSystem, N: int, *, _offset: int = 0
              ) -> TruncatedSeries:
    """z(f) assembled from an S-series acting on the input.

    The coefficient of 1/z^K is the finite sum over m + n + 1 = K (single
    system) or m + n + 2 = K (composition) of S-coefficient m applied to
    the input at n. ``_offset`` shifts that bookkeeping and exists only to
    build negative controls.
    """
    _require_zero_initial(system)
    s = system.semiring
    k = system.dim
    composed = isinstance(system, ComposedSystem)
    lag = (2 if composed else 1) + _offset
    u = system.input_h if composed else system.input

    if composed and system.is_constant:
        S = s_composed_constant(system.outer_coefficients, system.inner_coefficients,
                                max(N - lag, 0))
        coeff = lambda n, m: S[m]  # noqa: E731
    elif composed:
        Aseq = as_matrix_seq(system.outer_coefficients)
        Bseq = as_matrix_seq(system.inner_coefficients)
        fa, fb = FallingProducts(Aseq), FallingProducts(Bseq)
        per_n: dict[int, TruncatedSeries] = {}

        def coeff(n, m):
            if n not in per_n:
                per_n[n] = s_composed_variable(Aseq, Bseq, n, max(N - lag - n, 0), fa, fb)
            return per_n[n][m]
    elif system.is_constant:
        S = s_constant(system.coefficients, max(N - lag, 0))
        coeff = lambda n, m: S[m]  # noqa: E731
    else:
        Aseq = system.coefficients
        fa = FallingProducts(Aseq)
        per_n = {}

        def coeff(n, m):
            if n not in per_n:
                per_n[n] = s_variable(Aseq, n, max(N - lag - n, 0), fa)
            return per_n[n][m]

    out = []
    for K in range(N + 1):
        acc = zero_vec(k, s)
        for n in range(K - lag + 1):
            m = K - lag - n
            acc = plus(s, acc, times(s, coeff(n, m), u(n)))
        out.append(acc)
    return TruncatedSeries(tuple(out), s)


THEOREM_KINDS = {
    1: "constant single system",
    2: "variable single system",
    3: "constant composition",
    4: "variable composition",
}


def theorem_kind(system: RecurrenceSystem | ComposedSystem) -> int:
    if isinstance(system, ComposedSystem):
        return 3 if system.is_constant else 4
    return 1 if system.is_constant else 2


@dataclass
class VerificationReport:
    theorem: int
    order: int
    passed: bool
    mismatch_order: int | None = None
    direct_value: Any = None
    theorem_value: Any = None
    semiring: Semiring | None = None

    def describe(self) -> str:
        if self.passed:
            return f"PASS theorem {self.theorem} to order {self.order}"
        s = self.semiring
        return (f"FAIL theorem {self.theorem}: first mismatch at order {self.mismatch_order}: "
                f"direct={render_value(s, self.direct_value)} "
                f"theorem={render_value(s, self.theorem_value)}")


def compare_series(direct: TruncatedSeries, assembled: TruncatedSeries, which: int
                   ) -> VerificationReport:
    N = min(direct.order, assembled.order)
    for m in range(N + 1):
        if direct[m] != assembled[m]:
            return VerificationReport(which, N, False, m, direct[m], assembled[m],
                                      direct.semiring)
    return VerificationReport(which, N, True, semiring=direct.semiring)


def verify_theorem(system: RecurrenceSystem | ComposedSystem, which: int, N: int
                   ) -> VerificationReport:
    """Compare ``z_direct`` and ``z_theorem`` coefficientwise, exactly."""
    if which not in THEOREM_KINDS:
        raise KindMismatchError(f"theorem must be 1, 2, 3 or 4, got {which}")
    kind = theorem_kind(system)
    if kind != which:
        raise KindMismatchError(
            f"theorem {which} applies to a {THEOREM_KINDS[which]}, "
            f"but the input is a {THEOREM_KINDS[kind]}")
    return compare_series(z_direct(system, N), z_theorem(system, N), which)


def identity_series(k: int, s: Semiring, N: int) -> TruncatedSeries:
    """The multiplicative unit series I + 0/z + ..."""
    I = identity(k, s)
    Z = Mat(k, k, (s.zero,) * (k * k), s)
    return TruncatedSeries((I,) + (Z,) * N, s)
