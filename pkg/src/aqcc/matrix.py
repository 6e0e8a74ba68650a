"""Dense matrices over a small finite field.

Entries are packed field indices (see gf).  MatrixGF instances are
immutable; every operation returns a new matrix.  Row reduction, rank,
kernels and left-division all run on the field's lookup tables, so results
are exact.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch
from .gf import FiniteField


def field_from_order(q: int) -> FiniteField:
    """The canonical GF(q) for a prime power q."""
    p = 2
    while q % p:
        p += 1
    l = 0
    m = q
    while m > 1 and m % p == 0:
        m //= p
        l += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return FiniteField.get(p, l)


class MatrixGF:
    __slots__ = ("field", "a")

    def __init__(self, field: FiniteField, rows):
        arr = np.asarray(rows, dtype=np.int32)
        if arr.ndim != 2:
            raise ValueError("need a 2d array of field indices")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError("entry out of range for the field")
        arr = arr.copy()
        arr.setflags(write=False)
        self.field = field
        self.a = arr

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int32))

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int32))

    # --- shape and access ---------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, key):
        return self.a[key]

    def row(self, i: int) -> np.ndarray:
        return self.a[i]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self):
        return hash((self.field, self.a.tobytes(), self.a.shape))

    def __repr__(self):
        return f"MatrixGF({self.field!r}, {self.a.tolist()!r})"

    def is_zero(self) -> bool:
        return not np.any(self.a)

    # --- algebra ---------------------------------------------------------

    def _check_field(self, other: "MatrixGF"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._check_field(other)
        return MatrixGF(self.field, self.field._ADD[self.a, other.a])

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        self._check_field(other)
        f = self.field
        return MatrixGF(f, f._ADD[self.a, f._NEG[other.a]])

    def __neg__(self) -> "MatrixGF":
        return MatrixGF(self.field, self.field._NEG[self.a])

    def scale(self, c: int) -> "MatrixGF":
        return MatrixGF(self.field, self.field._MUL[self.a, c])

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        acc = np.zeros((self.rows, other.cols), dtype=np.int32)
        for s in range(self.cols):
            acc = f._ADD[acc, f._MUL[self.a[:, s, None], other.a[None, s, :]]]
        return MatrixGF(f, acc)

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.field, self.a.T)

    # --- reduction -------------------------------------------------------

    def rref(self) -> tuple["MatrixGF", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        m, piv = _rref(self.field, self.a)
        return MatrixGF(self.field, m), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "MatrixGF":
        """Rows span the right null space {x : self @ x = 0}."""
        f = self.field
        red, piv = _rref(f, self.a)
        n = self.cols
        free = [c for c in range(n) if c not in piv]
        out = np.zeros((len(free), n), dtype=np.int32)
        for r, j in enumerate(free):
            out[r, j] = 1
            for i, pc in enumerate(piv):
                out[r, pc] = f._NEG[red[i, j]]
        return MatrixGF(f, out)

    def independent_row_indices(self) -> tuple[int, ...]:
        """First maximal set of linearly independent rows, in order."""
        return self.T.rref()[1]

    def remove_dependent_rows(self) -> "MatrixGF":
        keep = self.independent_row_indices()
        if len(keep) == self.rows:
            return self
        return MatrixGF(self.field, self.a[list(keep)])

    # --- serialization -------------------------------------------------------

    def to_text(self) -> str:
        head = f"{self.field.q} {self.rows} {self.cols}"
        body = [" ".join(str(int(v)) for v in row) for row in self.a]
        return "\n".join([head, *body]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MatrixGF":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        q, rows, cols = (int(t) for t in lines[0].split())
        field = field_from_order(q)
        data = [[int(t) for t in ln.split()] for ln in lines[1:]]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix body does not match the declared shape")
        arr = np.array(data, dtype=np.int32) if data else np.zeros((0, cols), np.int32)
        return cls(field, arr)


def _rref(field: FiniteField, a: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    m = np.array(a, dtype=np.int32)
    rows, cols = m.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p0 = r + int(nz[0])
        if p0 != r:
            m[[r, p0]] = m[[p0, r]]
        m[r] = field._MUL[m[r], field._INV[m[r, c]]]
        f = m[:, c].copy()
        f[r] = 0
        if np.any(f):
            m = field._ADD[m, field._MUL[f[:, None], field._NEG[m[r]][None, :]]]
        piv.append(c)
        r += 1
    return m, tuple(piv)


def vstack(mats: list[MatrixGF]) -> MatrixGF:
    field = mats[0].field
    return MatrixGF(field, np.concatenate([m.a for m in mats], axis=0))


def hstack(mats: list[MatrixGF]) -> MatrixGF:
    field = mats[0].field
    return MatrixGF(field, np.concatenate([m.a for m in mats], axis=1))


def solve_left(a: MatrixGF, b: MatrixGF) -> MatrixGF | None:
    """X with X @ a == b, or None when b's rows leave a's row space.

    Free variables are set to zero, so the witness is deterministic.
    """
    a._check_field(b)
    if a.cols != b.cols:
        raise ValueError("column counts differ")
    f = a.field
    aug = np.concatenate([a.a.T, b.a.T], axis=1)
    red, piv = _rref(f, aug)
    x = np.zeros((a.rows, b.rows), dtype=np.int32)
    for i, pc in enumerate(piv):
        if pc >= a.rows:
            return None
        x[pc] = red[i, a.rows:]
    return MatrixGF(f, x.T)
