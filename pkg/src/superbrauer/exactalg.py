"""Exact sparse linear algebra over the rationals.

Matrices are stored as a dict of rows, each row a dict ``col -> coefficient``
with no explicit zeros.  Coefficients are Python ints or
:class:`fractions.Fraction`; integral fractions are collapsed to ints so that
the common case (integer sign matrices) never touches ``Fraction``.

Elimination is fraction-free: every row is scaled to a primitive integer
vector before it enters the echelon basis, and reduction steps are
``a*row - b*pivot_row`` followed by division by the content.  Rationals only
appear when a null-space basis is read off.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

Rational = Union[int, Fraction]
SparseVector = dict  # col -> Rational, no zeros


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not match."""


def as_rational(x) -> Rational:
    """Normalise ``x`` to an int when integral, else a Fraction.

    Strings such as ``"3/2"`` are accepted (the JSON wire format).
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational coefficient")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def rational_to_str(x: Rational) -> str:
    return str(as_rational(x))


def sparse_from_sequence(values: Sequence) -> SparseVector:
    return {i: as_rational(v) for i, v in enumerate(values) if v != 0}


def _primitive(row: Mapping[int, Rational]) -> dict[int, int]:
    """Scale a nonzero sparse row to a primitive integer row with positive lead."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    if g != 1:
        ints = {k: v // g for k, v in ints.items()}
    return ints


def _eliminate(row: dict[int, int], pivot_row: dict[int, int], col: int) -> dict[int, int]:
    """Return a primitive multiple of ``a*row - b*pivot_row`` with ``col`` cleared."""
    a = pivot_row[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
    for k, v in pivot_row.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    if not out:
        return out
    return _primitive(out)


class SpanTracker:
    """Incrementally maintained echelon basis of a subspace of Q^ambient_dim.

    Basis vectors are primitive integer rows keyed by their pivot (leading)
    column, so pivots are distinct by construction.
    """

    def __init__(self, ambient_dim: int):
        if ambient_dim < 0:
            raise ValueError("ambient_dim must be non-negative")
        self.ambient_dim = ambient_dim
        self._pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def basis(self) -> list[dict[int, int]]:
        return [dict(self._pivots[c]) for c in sorted(self._pivots)]

    def _coerce(self, v) -> dict:
        if isinstance(v, Mapping):
            out = {}
            for k, x in v.items():
                if not 0 <= k < self.ambient_dim:
                    raise DimensionError(f"index {k} outside ambient dimension {self.ambient_dim}")
                if x:
                    out[k] = as_rational(x)
            return out
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return sparse_from_sequence(v)

    def reduce(self, v) -> dict[int, int]:
        """Reduce ``v`` against the basis; the result is empty iff ``v`` is in the span."""
        row = self._coerce(v)
        if not row:
            return row
        row = _primitive(row)
        pivots = self._pivots
        while row:
            lead = min(row)
            if lead not in pivots:
                break
            row = _eliminate(row, pivots[lead], lead)
        return row

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def span_add(self, v) -> bool:
        """Add ``v``; return True iff it enlarged the span."""
        row = self.reduce(v)
        if not row:
            return False
        self._pivots[min(row)] = row
        return True

    def extend(self, vectors: Iterable) -> int:
        """Add many vectors, returning how many were new."""
        return sum(1 for v in vectors if self.span_add(v))


class SparseRationalMatrix:
    """Immutable sparse matrix over Q."""

    __slots__ = ("n_rows", "n_cols", "_rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Mapping[int, Mapping[int, Rational]] | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        clean: dict[int, dict[int, Rational]] = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < n_rows:
                raise DimensionError(f"row index {i} out of range")
            r = {}
            for j, v in row.items():
                if not 0 <= j < n_cols:
                    raise DimensionError(f"column index {j} out of range")
                if v:
                    r[j] = as_rational(v)
            if r:
                clean[i] = r
        self._rows = clean

    # construction -----------------------------------------------------

    @classmethod
    def _trusted(cls, n_rows: int, n_cols: int, rows: dict[int, dict[int, Rational]]) -> "SparseRationalMatrix":
        obj = cls.__new__(cls)
        obj.n_rows = n_rows
        obj.n_cols = n_cols
        obj._rows = rows
        return obj

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseRationalMatrix":
        n_rows = len(data)
        n_cols = len(data[0]) if n_rows else 0
        return cls(n_rows, n_cols, {i: sparse_from_sequence(r) for i, r in enumerate(data)})

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int, entries: Mapping[tuple[int, int], Rational]) -> "SparseRationalMatrix":
        rows: dict[int, dict[int, Rational]] = {}
        for (i, j), v in entries.items():
            rows.setdefault(i, {})[j] = v
        return cls(n_rows, n_cols, rows)

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[Mapping[int, Rational]]) -> "SparseRationalMatrix":
        rows: dict[int, dict[int, Rational]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(n_rows, len(columns), rows)

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        return cls._trusted(n, n, {i: {i: 1} for i in range(n)})

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def entries(self) -> dict[tuple[int, int], Rational]:
        return {(i, j): v for i, row in self._rows.items() for j, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> dict[int, Rational]:
        return dict(self._rows.get(i, {}))

    def rows(self) -> Iterator[tuple[int, dict[int, Rational]]]:
        for i in sorted(self._rows):
            yield i, self._rows[i]

    def columns(self) -> list[dict[int, Rational]]:
        cols: list[dict[int, Rational]] = [{} for _ in range(self.n_cols)]
        for i, row in self._rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def __getitem__(self, ij: tuple[int, int]) -> Rational:
        i, j = ij
        return self._rows.get(i, {}).get(j, 0)

    def to_dense(self) -> list[list[Rational]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    # arithmetic -------------------------------------------------------

    def transpose(self) -> "SparseRationalMatrix":
        rows: dict[int, dict[int, Rational]] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return SparseRationalMatrix._trusted(self.n_cols, self.n_rows, rows)

    @property
    def T(self) -> "SparseRationalMatrix":
        return self.transpose()

    def matvec(self, x) -> dict[int, Rational]:
        """Sparse product M @ x; ``x`` may be a sequence or a sparse dict."""
        if not isinstance(x, Mapping):
            if len(x) != self.n_cols:
                raise DimensionError("vector length does not match column count")
            x = sparse_from_sequence(x)
        out = {}
        for i, row in self._rows.items():
            s = 0
            if len(row) < len(x):
                for j, v in row.items():
                    xv = x.get(j)
                    if xv:
                        s += v * xv
            else:
                for j, xv in x.items():
                    v = row.get(j)
                    if v:
                        s += v * xv
            if s:
                out[i] = as_rational(s)
        return out

    def vecmat(self, y: Mapping[int, Rational]) -> dict[int, Rational]:
        """Row-vector product y @ M."""
        out: dict[int, Rational] = {}
        for i, yv in y.items():
            if not yv:
                continue
            for j, v in self._rows.get(i, {}).items():
                out[j] = out.get(j, 0) + yv * v
        return {j: as_rational(v) for j, v in out.items() if v}

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows = {}
        for i, row in self._rows.items():
            acc: dict[int, Rational] = {}
            for k, v in row.items():
                for j, w in orows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: as_rational(x) for j, x in acc.items() if x}
            if acc:
                rows[i] = acc
        return SparseRationalMatrix._trusted(self.n_rows, other.n_cols, rows)

    def _combine(self, other: "SparseRationalMatrix", sign: int) -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            target = rows.setdefault(i, {})
            for j, v in row.items():
                nv = target.get(j, 0) + sign * v
                if nv:
                    target[j] = as_rational(nv)
                else:
                    target.pop(j, None)
            if not target:
                del rows[i]
        return SparseRationalMatrix._trusted(self.n_rows, self.n_cols, rows)

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        return self._combine(other, -1)

    def scale(self, c: Rational) -> "SparseRationalMatrix":
        c = as_rational(c)
        if not c:
            return SparseRationalMatrix._trusted(self.n_rows, self.n_cols, {})
        rows = {i: {j: as_rational(c * v) for j, v in r.items()} for i, r in self._rows.items()}
        return SparseRationalMatrix._trusted(self.n_rows, self.n_cols, rows)

    def __neg__(self) -> "SparseRationalMatrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, frozenset((i, frozenset(r.items())) for i, r in self._rows.items())))

    def is_zero(self) -> bool:
        return not self._rows

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"

    # serialisation ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols": self.n_cols,
            "entries": [[i, j, rational_to_str(v)] for i, row in self.rows() for j, v in sorted(row.items())],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SparseRationalMatrix":
        entries = {(int(i), int(j)): as_rational(v) for i, j, v in obj["entries"]}
        return cls.from_entries(int(obj["n_rows"]), int(obj["n_cols"]), entries)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _row_space_tracker(M: SparseRationalMatrix) -> SpanTracker:
    tracker = SpanTracker(M.n_cols)
    # minimum-fill heuristic: sparse rows first
    for _, row in sorted(M.rows(), key=lambda ir: (len(ir[1]), ir[0])):
        tracker.span_add(row)
    return tracker


def rank(M: SparseRationalMatrix) -> int:
    """Exact rank over Q."""
    if M.n_rows == 0 or M.n_cols == 0:
        return 0
    # eliminate along the shorter side; rank(M) = rank(M^T)
    if M.n_rows > M.n_cols:
        M = M.transpose()
    return _row_space_tracker(M).rank


def nullspace_basis(M: SparseRationalMatrix) -> list[list[Rational]]:
    """Basis of {x : Mx = 0} as dense primitive integer vectors.

    Each vector is primitive with a positive first nonzero entry; vectors are
    ordered by their free column.
    """
    n = M.n_cols
    tracker = _row_space_tracker(M)
    pivots = {c: {k: Fraction(v) for k, v in row.items()} for c, row in tracker._pivots.items()}
    # back-substitute to reduced row echelon form
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        lead = prow[c]
        prow = {k: v / lead for k, v in prow.items()}
        pivots[c] = prow
        for c2 in pivots:
            if c2 < c:
                other = pivots[c2]
                f = other.get(c)
                if f:
                    for k, v in prow.items():
                        nv = other.get(k, 0) - f * v
                        if nv:
                            other[k] = nv
                        else:
                            other.pop(k, None)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for c, prow in pivots.items():
            x = prow.get(f)
            if x:
                vec[c] = -x
        ints = _primitive(vec)
        if ints[min(ints)] < 0:
            ints = {k: -v for k, v in ints.items()}
        dense = [0] * n
        for k, v in ints.items():
            dense[k] = v
        basis.append(dense)
    return basis


def is_in_nullspace(M: SparseRationalMatrix, x) -> bool:
    return not M.matvec(x)


# modular fast path -----------------------------------------------------------

DEFAULT_PRIME = 2_147_483_629  # largest prime below 2**31


class ModularSpanTracker:
    """Span tracker over GF(p) with dense numpy rows.

    Rank computed modulo a prime never exceeds the rational rank, so a modular
    rank that reaches a proven upper bound certifies the rational rank.  Only
    rank information is produced; no vectors leave this class.
    """

    def __init__(self, ambient_dim: int, prime: int = DEFAULT_PRIME):
        if prime >= 2**31:
            raise ValueError("prime must be below 2**31 so products fit in int64")
        self.ambient_dim = ambient_dim
        self.prime = prime
        self._rows = np.zeros((0, ambient_dim), dtype=np.int64)
        self._pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivot_cols)

    def _coerce(self, v) -> np.ndarray:
        p = self.prime
        out = np.zeros(self.ambient_dim, dtype=np.int64)
        items = v.items() if isinstance(v, Mapping) else enumerate(v)
        for k, x in items:
            if x:
                x = as_rational(x)
                if isinstance(x, Fraction):
                    out[k] = (x.numerator % p) * pow(x.denominator, -1, p) % p
                else:
                    out[k] = x % p
        return out

    def reduce(self, v) -> np.ndarray:
        p = self.prime
        row = self._coerce(v)
        if self._pivot_cols:
            # rows are kept fully reduced with unit pivots
            coeffs = row[self._pivot_cols]
            nz = np.nonzero(coeffs)[0]
            for t in nz:
                c = row[self._pivot_cols[t]]
                if c:
                    row = (row - c * self._rows[t]) % p
        return row

    def span_add(self, v) -> bool:
        p = self.prime
        row = self.reduce(v)
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        row = row * pow(int(row[c]), -1, p) % p
        if self.rank:
            col = self._rows[:, c].copy()
            hit = np.nonzero(col)[0]
            if hit.size:
                self._rows[hit] = (self._rows[hit] - np.outer(col[hit], row)) % p
        self._rows = np.vstack([self._rows, row])
        self._pivot_cols.append(c)
        return True

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))
