"""Exact rational linear algebra: dense matrices, Kronecker products, and the
canonical ordering of the binary support {0,1}^m.

Everything here is exact. Scalars are fractions.Fraction throughout; no floats
enter or leave this module.

Support ordering convention used across the whole package: index j in
0..2^m-1 corresponds to the point x with x_i = bit (i-1) of j, so coordinate 1
is the fastest-toggling (least significant) bit and j runs ascending.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

SUPPORT_CAP = 30

RationalLike = Fraction | int | str


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or an exact decimal string ("0.3" -> 3/10)."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Inverse of parse_rational: parse_rational(format_rational(x)) == x."""
    return str(x)


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("data", "rows", "cols")

    def __init__(self, data: Iterable[Iterable[RationalLike]]):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in data)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ValueError("matrix rows must be non-empty and equal length")
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[RationalLike]) -> "Matrix":
        d = [as_fraction(v) for v in diag]
        n = len(d)
        return cls([[d[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.data))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.transpose().data
        return Matrix([[_dot(r, c) for c in cols] for r in self.data])

    def matvec(self, vec: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        v = [as_fraction(x) for x in vec]
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != {self.cols} columns")
        return tuple(_dot(r, v) for r in self.data)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, self as the slow (leading) factor."""
        out = []
        for ra in self.data:
            for rb in other.data:
                out.append([a * b for a in ra for b in rb])
        return Matrix(out)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def kron_power(a: Matrix, n: int) -> Matrix:
    if n < 1:
        raise ValueError("kron_power needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = out.kron(a)
    return out


def kron_apply(factors: Sequence[Matrix], vec: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Apply the tensor product of 2x2 factors to a 2^m vector without forming it.

    factors[i] acts on coordinate i+1, i.e. on bit i of the support index, so
    the result equals (factors[m-1] kron ... kron factors[0]) @ vec under the
    canonical least-significant-bit-first ordering.
    """
    m = len(factors)
    v = [as_fraction(x) for x in vec]
    if len(v) != 1 << m:
        raise ValueError(f"vector length {len(v)} != 2^{m}")
    for axis, t in enumerate(factors):
        if t.rows != 2 or t.cols != 2:
            raise ValueError("kron_apply factors must be 2x2")
        a, b = t.data[0]
        c, d = t.data[1]
        step = 1 << axis
        for base in range(0, len(v), step << 1):
            for j in range(base, base + step):
                lo, hi = v[j], v[j + step]
                v[j] = a * lo + b * hi
                v[j + step] = c * lo + d * hi
    return tuple(v)


def enumerate_support(m: int) -> list[tuple[int, ...]]:
    """All points of {0,1}^m in canonical ascending-index order."""
    if not 1 <= m <= SUPPORT_CAP:
        raise ValueError(f"m must be in 1..{SUPPORT_CAP}, got {m}")
    return [tuple((j >> i) & 1 for i in range(m)) for j in range(1 << m)]


def support_index(x: Sequence[int]) -> int:
    """Inverse of enumerate_support: index of a point."""
    j = 0
    for i, bit in enumerate(x):
        if bit not in (0, 1):
            raise ValueError(f"support points are 0/1 vectors, got {x!r}")
        j |= bit << i
    return j


# First differences along one margin and the running-sum moment stencil;
# tensored over coordinates they convert CDF <-> density <-> raw moments.
DIFF_2 = Matrix([[1, 0], [-1, 1]])
MOMENT_2 = Matrix([[1, 1], [0, 1]])
