"""Matrices and vectors over a semiring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import DimensionMismatchError, RangeError, SemiringMismatchError
from .semiring import Semiring

MAX_DIM = 64


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple  # row-major
    semiring: Semiring

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatchError("matrix dimensions must be positive")
        if self.rows > MAX_DIM or self.cols > MAX_DIM:
            raise DimensionMismatchError(f"matrix dimension exceeds {MAX_DIM}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], s: Semiring) -> "Mat":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatchError("ragged or empty matrix")
        return cls(len(rows), len(rows[0]), tuple(x for r in rows for x in r), s)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def render(self) -> str:
        r = self.semiring.render
        return "[" + ", ".join("[" + ", ".join(r(x) for x in self.row(i)) + "]"
                               for i in range(self.rows)) + "]"

    def __matmul__(self, other):
        if isinstance(other, Vec):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def __add__(self, other):
        return mat_add(self, other)


@dataclass(frozen=True)
class Vec:
    entries: tuple
    semiring: Semiring

    def __post_init__(self):
        if not 1 <= len(self.entries) <= MAX_DIM:
            raise DimensionMismatchError(f"vector dimension must be in 1..{MAX_DIM}")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def render(self) -> str:
        r = self.semiring.render
        return "[" + ", ".join(r(x) for x in self.entries) + "]"

    def __add__(self, other):
        return vec_add(self, other)


def _same_semiring(x, y):
    if x.semiring is not y.semiring:
        raise SemiringMismatchError(
            f"operands over {x.semiring.name} and {y.semiring.name}"
        )


def mat_add(X: Mat, Y: Mat) -> Mat:
    _same_semiring(X, Y)
    if (X.rows, X.cols) != (Y.rows, Y.cols):
        raise DimensionMismatchError(
            f"cannot add {X.rows}x{X.cols} and {Y.rows}x{Y.cols}"
        )
    add = X.semiring.add
    return Mat(X.rows, X.cols, tuple(map(add, X.entries, Y.entries)), X.semiring)


def vec_add(u: Vec, v: Vec) -> Vec:
    _same_semiring(u, v)
    if u.dim != v.dim:
        raise DimensionMismatchError(f"cannot add vectors of dim {u.dim} and {v.dim}")
    return Vec(tuple(map(u.semiring.add, u.entries, v.entries)), u.semiring)


def mat_mul(X: Mat, Y: Mat) -> Mat:
    """(XY)_ij = sum over l of X_il * Y_lj, accumulated for l = 0, 1, ... in order."""
    _same_semiring(X, Y)
    if X.cols != Y.rows:
        raise DimensionMismatchError(
            f"cannot multiply {X.rows}x{X.cols} by {Y.rows}x{Y.cols}"
        )
    s = X.semiring
    add, mul, zero = s.add, s.mul, s.zero
    n, p = X.cols, Y.cols
    ye = Y.entries
    out = []
    for i in range(X.rows):
        xrow = X.entries[i * n : (i + 1) * n]
        for j in range(p):
            acc = zero
            for l in range(n):
                acc = add(acc, mul(xrow[l], ye[l * p + j]))
            out.append(acc)
    return Mat(X.rows, p, tuple(out), s)


def mat_vec(X: Mat, v: Vec) -> Vec:
    _same_semiring(X, v)
    if X.cols != v.dim:
        raise DimensionMismatchError(
            f"cannot apply {X.rows}x{X.cols} matrix to vector of dim {v.dim}"
        )
    s = X.semiring
    add, mul = s.add, s.mul
    n = X.cols
    out = []
    for i in range(X.rows):
        acc = s.zero
        for l in range(n):
            acc = add(acc, mul(X.entries[i * n + l], v.entries[l]))
        out.append(acc)
    return Vec(tuple(out), s)


def identity(k: int, s: Semiring) -> Mat:
    return Mat(k, k, tuple(s.one if i == j else s.zero for i in range(k) for j in range(k)), s)


def zero_mat(k: int, s: Semiring) -> Mat:
    return Mat(k, k, (s.zero,) * (k * k), s)


def zero_vec(k: int, s: Semiring) -> Vec:
    return Vec((s.zero,) * k, s)


def mat_pow(X: Mat, m: int) -> Mat:
    """X^m by plain repeated multiplication, X^m = X * X^(m-1)."""
    if not X.is_square:
        raise DimensionMismatchError(f"power of non-square {X.rows}x{X.cols} matrix")
    if m < 0:
        raise RangeError(f"negative exponent {m}")
    acc = identity(X.rows, X.semiring)
    for _ in range(m):
        acc = mat_mul(X, acc)
    return acc


def falling_product(Aseq: Callable[[int], Mat], n: int, m: int) -> Mat:
    """The ordered product A(n) A(n-1) ... A(n-m+1); the identity when m == 0.

    ``Aseq`` is any callable from naturals to square matrices (usually a
    ``Seq``). Factors are multiplied strictly left to right in that order.
    """
    if n < 0 or m < 0 or m > n + 1:
        raise RangeError(f"falling product needs 0 <= m <= n+1, got n={n}, m={m}")
    acc = Aseq(n)
    if m == 0:
        return identity(acc.rows, acc.semiring)
    for t in range(n - 1, n - m, -1):
        acc = mat_mul(acc, Aseq(t))
    return acc


class FallingProducts:
    """Memo table for falling products of one matrix sequence.

    ``get(n, m)`` builds A(n)...A(n-m+1) from the cached A(n)...A(n-m+2),
    multiplying the new factor on the right so the order matches
    ``falling_product`` exactly.
    """

    def __init__(self, Aseq: Callable[[int], Mat]):
        self.Aseq = Aseq
        self._cache: dict[tuple[int, int], Mat] = {}

    def get(self, n: int, m: int) -> Mat:
        if n < 0 or m < 0 or m > n + 1:
            raise RangeError(f"falling product needs 0 <= m <= n+1, got n={n}, m={m}")
        key = (n, m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if m == 0:
            A = self.Aseq(n)
            value = identity(A.rows, A.semiring)
        else:
            # longest cached prefix for this n
            j = m - 1
            while j > 0 and (n, j) not in self._cache:
                j -= 1
            acc = self._cache[(n, j)] if j > 0 else None
            for q in range(j + 1, m + 1):
                factor = self.Aseq(n - q + 1)
                acc = factor if acc is None else mat_mul(acc, factor)
                self._cache.setdefault((n, q), acc)
            value = acc
        return self._cache.setdefault(key, value)

    __call__ = get


class PowerCache:
    """Memo table of X^0, X^1, ... built by the same recurrence as ``mat_pow``."""

    def __init__(self, X: Mat):
        if not X.is_square:
            raise DimensionMismatchError(f"power of non-square {X.rows}x{X.cols} matrix")
        self.X = X
        self._powers = [identity(X.rows, X.semiring)]

    def __call__(self, m: int) -> Mat:
        while len(self._powers) <= m:
            self._powers.append(mat_mul(self.X, self._powers[-1]))
        return self._powers[m]


# generic operations on scalars, matrices and vectors


def times(s: Semiring, x: Any, y: Any) -> Any:
    if isinstance(x, Mat):
        if isinstance(y, Vec):
            return mat_vec(x, y)
        if isinstance(y, Mat):
            return mat_mul(x, y)
        raise DimensionMismatchError("matrix times scalar is not a supported product")
    if isinstance(x, Vec) or isinstance(y, (Mat, Vec)):
        raise DimensionMismatchError(
            f"nonconformable product {type(x).__name__} * {type(y).__name__}"
        )
    return s.mul(x, y)


def plus(s: Semiring, x: Any, y: Any) -> Any:
    if isinstance(x, Mat):
        return mat_add(x, y)
    if isinstance(x, Vec):
        return vec_add(x, y)
    if isinstance(y, (Mat, Vec)):
        raise DimensionMismatchError(f"cannot add scalar and {type(y).__name__}")
    return s.add(x, y)


def zero_like(s: Semiring, x: Any) -> Any:
    if isinstance(x, Mat):
        return Mat(x.rows, x.cols, (s.zero,) * (x.rows * x.cols), s)
    if isinstance(x, Vec):
        return zero_vec(x.dim, s)
    return s.zero


def render_value(s: Semiring, x: Any) -> str:
    if isinstance(x, (Mat, Vec)):
        return x.render()
    return s.render(x)
