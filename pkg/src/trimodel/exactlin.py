"""Exact linear algebra over a small prime field F_p.

Every Hom-space question elsewhere in the package reduces to rank / solve /
kernel computations done here.  Matrices are dense int64 numpy arrays with
entries kept reduced to [0, p); arithmetic is exact, so every downstream
equality is an honest equality (no tolerances anywhere).

Two layers are provided: array-level functions (``array_rref``,
``array_rank``, ...) that carry the characteristic explicitly and are used on
hot paths, and the small ``Mat`` wrapper bundling a ``PrimeField`` for code
that wants self-describing values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_CHAR = 97


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p.  p is capped so exhaustive enumeration stays feasible."""

    p: int = 2

    def __post_init__(self) -> None:
        if not (2 <= self.p <= MAX_CHAR) or not _is_prime(self.p):
            raise ValueError(
                f"characteristic must be a prime in [2, {MAX_CHAR}], got {self.p}"
            )

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(x, -1, self.p)


def _as_matrix(a, p: int) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    return m % p


def array_rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Pivots are chosen leftmost-column first, lowest row index first, so the
    result (and everything derived from it) is deterministic.
    """
    m = _as_matrix(a, p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def array_rank(a, p: int) -> int:
    return len(array_rref(a, p)[1])


def array_solve(a, b, p: int):
    """One solution of A x = b over F_p, or None if inconsistent.

    Free variables are pinned to 0 under lowest-index pivoting, which makes
    the returned solution canonical.
    """
    m = _as_matrix(a, p)
    rhs = np.array(b, dtype=np.int64) % p
    if rhs.ndim != 1 or rhs.shape[0] != m.shape[0]:
        raise ValueError(
            f"dimension mismatch: A has {m.shape[0]} rows, b has shape {rhs.shape}"
        )
    aug = np.concatenate([m, rhs[:, None]], axis=1)
    red, pivots = array_rref(aug, p)
    n = m.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = red[row, n]
    return x


def array_kernel(a, p: int) -> list[np.ndarray]:
    """Basis of the null space, ordered by free-column index."""
    m = _as_matrix(a, p)
    red, pivots = array_rref(m, p)
    n = m.shape[1]
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[j] = 1
        for row, c in enumerate(pivots):
            v[c] = (-red[row, j]) % p
        basis.append(v)
    return basis


def array_in_span(v, cols: list, p: int):
    """Whether v lies in the span of the given columns; coefficients if so."""
    vv = np.array(v, dtype=np.int64) % p
    if not cols:
        if np.any(vv):
            return False, None
        return True, np.zeros(0, dtype=np.int64)
    m = np.stack([np.array(c, dtype=np.int64) % p for c in cols], axis=1)
    if m.shape[0] != vv.shape[0]:
        raise ValueError("incompatible column lengths")
    x = array_solve(m, vv, p)
    if x is None:
        return False, None
    return True, x


def array_inverse(a, p: int):
    """Inverse of a square matrix over F_p, or None if singular."""
    m = _as_matrix(a, p)
    n = m.shape[0]
    if m.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = array_rref(aug, p)
    if pivots != list(range(n)):
        return None
    return red[:, n:]


_POW2_CACHE: dict[int, np.ndarray] = {}


def fast_rank(a, p: int) -> int:
    """Rank of a small matrix, tuned for the hot loops of the oracle suites.

    For p = 2 rows are packed into Python ints and eliminated by xor; for odd
    p a plain list-based elimination avoids numpy call overhead.  Agrees with
    array_rank everywhere (property-tested).
    """
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows_n, cols = m.shape
    if rows_n == 0 or cols == 0:
        return 0
    if p == 2:
        if cols <= 62:
            pows = _POW2_CACHE.get(cols)
            if pows is None:
                pows = _POW2_CACHE[cols] = 1 << np.arange(cols, dtype=np.int64)
            words = ((m & 1) @ pows).tolist()
        else:
            pows = [1 << k for k in range(cols)]
            words = [sum(pw for pw, x in zip(pows, row) if x & 1)
                     for row in m.tolist()]
        pivots: dict[int, int] = {}
        for word in words:
            word = int(word)
            while word:
                lead = word.bit_length()
                piv = pivots.get(lead)
                if piv is None:
                    pivots[lead] = word
                    break
                word ^= piv
        return len(pivots)
    rows = [[int(x) % p for x in row] for row in m]
    rows = [r for r in rows if any(r)]
    rank = 0
    for c in range(cols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        prow = [(x * inv) % p for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


class Mat:
    """Dense matrix over F_p; entries stored reduced in row-major order."""

    __slots__ = ("field", "a")

    def __init__(self, field: PrimeField, entries) -> None:
        self.field = field
        self.a = _as_matrix(entries, field.p)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def entries(self) -> list[int]:
        return [int(x) for x in self.a.reshape(-1)]

    def transpose(self) -> "Mat":
        return Mat(self.field, self.a.T)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        return Mat(self.field, (self.a @ other.a) % self.field.p)

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(self.field, self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(self.field, self.a - other.a)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __repr__(self) -> str:
        return f"Mat(p={self.field.p}, {self.a.tolist()})"


def rank(m: Mat) -> int:
    """Row rank of m over F_p."""
    return array_rank(m.a, m.field.p)


def solve(a: Mat, b) -> np.ndarray | None:
    """One solution x of a @ x = b, free variables set to 0, or None."""
    return array_solve(a.a, b, a.field.p)


def kernel_basis(m: Mat) -> list[np.ndarray]:
    """Basis of the null space of m; size is cols - rank."""
    return array_kernel(m.a, m.field.p)


def in_span(v, s: list, p: int):
    """True (with coefficients) iff v lies in span(s) over F_p."""
    return array_in_span(v, s, p)
