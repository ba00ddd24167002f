"""Exact integer linear algebra backend.

Smith normal form with optional transformation certificates, integer
linear solving, kernel lattices and sublattice comparison.  The
elimination inner loop is provided either by the compiled extension
``_elim`` (built by setup.py when Cython and a C compiler are present)
or by the pure-Python reference ``elim_py``; both implement the same
contract and the choice is made once at import time.
"""

from fractions import Fraction

try:  # pragma: no cover - depends on build environment
    from geotits._kernel._elim import eliminate as _eliminate

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from geotits._kernel.elim_py import eliminate as _eliminate

    BACKEND = "python"

from geotits._kernel.elim_py import eliminate as eliminate_python

__all__ = [
    "BACKEND",
    "IntMatrix",
    "SnfResult",
    "smith_normal_form",
    "integer_rank",
    "kernel_basis",
    "solve_int",
    "lattice_contains",
    "lattices_equal",
]


class IntMatrix:
    """Sparse integer matrix: ``entries`` maps (row, col) to nonzero int."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                if v:
                    if not (0 <= i < rows and 0 <= j < cols):
                        raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                    self.entries[(i, j)] = int(v)

    @classmethod
    def from_columns(cls, rows, columns):
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    m.entries[(i, j)] = int(v)
        return m

    def column(self, j):
        out = [0] * self.rows
        for (i, jj), v in self.entries.items():
            if jj == j:
                out[i] = v
        return out

    def columns(self):
        cols = [[0] * self.rows for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def transpose(self):
        t = IntMatrix(self.cols, self.rows)
        t.entries = {(j, i): v for (i, j), v in self.entries.items()}
        return t

    def mul_vec(self, vec):
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            c = vec[j]
            if c:
                out[i] += v * c
        return out

    def compose(self, other):
        """Matrix product self @ other."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out = IntMatrix(self.rows, other.cols)
        acc = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        out.entries = {k: v for k, v in acc.items() if v}
        return out

    def is_zero(self):
        return not self.entries

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class SnfResult:
    """Invariant factors d1 | d2 | ... | dr plus optional certificates.

    When transforms are requested, ``u_rows`` (rows of U, m x m) and
    ``v_rows`` (rows of V, n x n) are dense row-major lists with
    U @ M @ V = diag(invariant_factors) up to the recorded pivot
    positions having been permuted to the leading diagonal.
    """

    __slots__ = ("invariant_factors", "rank", "shape", "u_rows", "v_rows")

    def __init__(self, invariant_factors, shape, u_rows=None, v_rows=None):
        self.invariant_factors = tuple(invariant_factors)
        self.rank = len(self.invariant_factors)
        self.shape = shape
        self.u_rows = u_rows
        self.v_rows = v_rows

    @property
    def torsion(self):
        return tuple(d for d in self.invariant_factors if d > 1)


def _run(matrix, want_transforms, backend=None):
    rows = matrix.row_dicts()
    fn = _eliminate if backend is None else backend
    pivots, prow, pcol, urows, vcols = fn(rows, matrix.rows, matrix.cols, want_transforms)
    return pivots, prow, pcol, urows, vcols


def smith_normal_form(matrix, want_transforms=False, backend=None):
    """SNF of an IntMatrix; deterministic for a fixed input."""
    m, n = matrix.rows, matrix.cols
    pivots, prow, pcol, urows, vcols = _run(matrix, want_transforms, backend)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    factors = [pivots[k] for k in order]
    if not want_transforms:
        return SnfResult(factors, (m, n))
    # Permute so pivot k sits at position (k, k): rows prow[order],
    # then the rest; same for columns.
    row_perm = [prow[k] for k in order] + sorted(set(range(m)) - set(prow))
    col_perm = [pcol[k] for k in order] + sorted(set(range(n)) - set(pcol))
    u_dense = [[urows[i].get(j, 0) for j in range(m)] for i in row_perm]
    v_dense = [[vcols[col_perm[j]].get(i, 0) for j in range(n)] for i in range(n)]
    return SnfResult(factors, (m, n), u_rows=u_dense, v_rows=v_dense)


def integer_rank(matrix):
    return smith_normal_form(matrix).rank


def kernel_basis(matrix):
    """Basis of the lattice {x in Z^n : M x = 0}, as a list of columns."""
    snf = smith_normal_form(matrix, want_transforms=True)
    r = snf.rank
    n = matrix.cols
    return [[snf.v_rows[i][j] for i in range(n)] for j in range(r, n)]


def solve_int(matrix, b, snf=None):
    """One integer solution x of M x = b, or None."""
    if snf is None:
        snf = smith_normal_form(matrix, want_transforms=True)
    m, n = snf.shape
    y = [sum(snf.u_rows[i][j] * b[j] for j in range(m) if b[j]) for i in range(m)]
    z = [0] * n
    for i in range(m):
        if i < snf.rank:
            d = snf.invariant_factors[i]
            if y[i] % d:
                return None
            if i < n:
                z[i] = y[i] // d
        elif y[i]:
            return None
    return [sum(snf.v_rows[i][j] * z[j] for j in range(n) if z[j]) for i in range(n)]


def solve_rational(matrix, b, snf=None):
    """One rational solution x of M x = b, or None."""
    if snf is None:
        snf = smith_normal_form(matrix, want_transforms=True)
    m, n = snf.shape
    y = [sum(snf.u_rows[i][j] * b[j] for j in range(m) if b[j]) for i in range(m)]
    z = [Fraction(0)] * n
    for i in range(m):
        if i < snf.rank:
            if i < n:
                z[i] = Fraction(y[i], snf.invariant_factors[i])
        elif y[i]:
            return None
    return [sum((snf.v_rows[i][j] * z[j] for j in range(n) if z[j]), Fraction(0)) for i in range(n)]


def lattice_contains(matrix, vectors, snf=None):
    """True iff every vector lies in the lattice spanned by M's columns."""
    if snf is None:
        snf = smith_normal_form(matrix, want_transforms=True)
    return all(solve_int(matrix, v, snf=snf) is not None for v in vectors)


def lattices_equal(cols_a, cols_b, length):
    """Equality of the sublattices of Z^length spanned by two column sets."""
    a = IntMatrix.from_columns(length, cols_a)
    b = IntMatrix.from_columns(length, cols_b)
    return lattice_contains(a, cols_b) and lattice_contains(b, cols_a)
