"""Sparse CSR and dense matrix types, file ingestion, and symmetric permutation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class FormatError(ValueError):
    """A text input could not be parsed.  Carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantError(AssertionError):
    """An internal consistency check failed (bug or corrupted state, not bad input)."""


@dataclass(frozen=True)
class SparseCsr:
    """Compressed sparse row matrix with float64 values.

    row_ptr has num_rows+1 entries; column indices within each row are stored
    in ascending order with no duplicates.
    """

    num_rows: int
    num_cols: int
    row_ptr: np.ndarray
    col_idx: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.row_ptr[-1])

    def validate(self) -> None:
        """Raise ValueError on any structural violation."""
        if self.num_rows < 0 or self.num_cols < 0:
            raise ValueError("negative dimensions")
        if self.row_ptr.shape != (self.num_rows + 1,):
            raise ValueError("row_ptr length must be num_rows+1")
        if self.row_ptr[0] != 0:
            raise ValueError("row_ptr must start at 0")
        if np.any(np.diff(self.row_ptr) < 0):
            raise ValueError("row_ptr must be non-decreasing")
        nnz = int(self.row_ptr[-1])
        if self.col_idx.shape != (nnz,) or self.values.shape != (nnz,):
            raise ValueError("col_idx/values length must equal row_ptr[-1]")
        if nnz:
            if self.col_idx.min() < 0 or self.col_idx.max() >= self.num_cols:
                raise ValueError("column index out of range")
        for i in range(self.num_rows):
            lo, hi = int(self.row_ptr[i]), int(self.row_ptr[i + 1])
            row = self.col_idx[lo:hi]
            if row.size > 1 and np.any(np.diff(row) <= 0):
                raise ValueError(f"row {i}: column indices not strictly ascending")

    @classmethod
    def from_coo(
        cls,
        num_rows: int,
        num_cols: int,
        rows: np.ndarray,
        cols: np.ndarray,
        vals: np.ndarray,
    ) -> "SparseCsr":
        """Build from coordinate triples.  Duplicate (row, col) entries are summed."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.float64)
        if not (rows.shape == cols.shape == vals.shape):
            raise ValueError("coordinate arrays must have equal length")
        if rows.size:
            if rows.min() < 0 or rows.max() >= num_rows:
                raise ValueError("row index out of range")
            if cols.min() < 0 or cols.max() >= num_cols:
                raise ValueError("column index out of range")
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        if rows.size:
            head = np.empty(rows.size, dtype=bool)
            head[0] = True
            head[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            group = np.cumsum(head) - 1
            summed = np.zeros(int(group[-1]) + 1, dtype=np.float64)
            np.add.at(summed, group, vals)
            rows, cols, vals = rows[head], cols[head], summed
        counts = np.bincount(rows, minlength=num_rows) if num_rows else np.zeros(0, np.int64)
        row_ptr = np.zeros(num_rows + 1, dtype=np.int64)
        np.cumsum(counts, out=row_ptr[1:])
        return cls(num_rows, num_cols, row_ptr, cols, vals)

    def to_coo(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        rows = np.repeat(np.arange(self.num_rows, dtype=np.int64), np.diff(self.row_ptr))
        return rows, self.col_idx.copy(), self.values.copy()

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.num_rows, self.num_cols), dtype=np.float64)
        rows, cols, vals = self.to_coo()
        dense[rows, cols] = vals
        return dense

    def row_slice(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Column ids and values of row i."""
        lo, hi = int(self.row_ptr[i]), int(self.row_ptr[i + 1])
        return self.col_idx[lo:hi], self.values[lo:hi]

    def is_symmetric(self) -> bool:
        if self.num_rows != self.num_cols:
            return False
        rows, cols, vals = self.to_coo()
        mirrored = SparseCsr.from_coo(self.num_rows, self.num_cols, cols, rows, vals)
        return (
            np.array_equal(mirrored.row_ptr, self.row_ptr)
            and np.array_equal(mirrored.col_idx, self.col_idx)
            and np.array_equal(mirrored.values, self.values)
        )


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major float dense matrix."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data)
        if arr.ndim != 2:
            raise ValueError("dense matrix must be 2-dimensional")
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    @classmethod
    def random(cls, rows: int, dim: int, seed: int, low: float = -1.0, high: float = 1.0) -> "DenseMatrix":
        rng = np.random.default_rng(seed)
        return cls(rng.uniform(low, high, size=(rows, dim)))


@dataclass(frozen=True)
class Graph:
    """Adjacency wrapper.  For undirected graphs the CSR must be symmetric."""

    num_vertices: int
    adjacency: SparseCsr
    undirected: bool

    def validate(self) -> None:
        self.adjacency.validate()
        if self.adjacency.num_rows != self.num_vertices or self.adjacency.num_cols != self.num_vertices:
            raise ValueError("adjacency must be num_vertices x num_vertices")
        if self.undirected and not self.adjacency.is_symmetric():
            raise ValueError("undirected graph requires a symmetric adjacency")

    def neighbors(self, v: int) -> np.ndarray:
        cols, _ = self.adjacency.row_slice(v)
        return cols

    def degree(self, v: int) -> int:
        return int(self.adjacency.row_ptr[v + 1] - self.adjacency.row_ptr[v])


def load_matrix_market(path: str) -> SparseCsr:
    """Parse a Matrix Market coordinate file (real/integer/pattern, general/symmetric)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    if not lines:
        raise FormatError("empty file", line=1)
    header = lines[0].strip().split()
    if len(header) < 5 or header[0] != "%%MatrixMarket":
        raise FormatError("missing %%MatrixMarket header", line=1)
    obj, fmt, field, symmetry = (t.lower() for t in header[1:5])
    if obj != "matrix" or fmt != "coordinate":
        raise FormatError(f"unsupported object/format '{obj} {fmt}'", line=1)
    if field not in ("real", "integer", "pattern"):
        raise FormatError(f"unsupported field type '{field}'", line=1)
    if symmetry not in ("general", "symmetric"):
        raise FormatError(f"unsupported symmetry '{symmetry}'", line=1)
    pattern = field == "pattern"

    lineno = 1
    size: tuple[int, int, int] | None = None
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    seen = 0
    for raw in lines[1:]:
        lineno += 1
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        tokens = text.split()
        if size is None:
            if len(tokens) != 3:
                raise FormatError("size line must be 'rows cols nnz'", line=lineno)
            try:
                m, n, k = (int(t) for t in tokens)
            except ValueError:
                raise FormatError("non-integer token in size line", line=lineno) from None
            if m < 0 or n < 0 or k < 0:
                raise FormatError("negative dimension in size line", line=lineno)
            size = (m, n, k)
            continue
        expected = 2 if pattern else 3
        if len(tokens) != expected:
            raise FormatError(f"expected {expected} tokens per entry", line=lineno)
        try:
            i = int(tokens[0])
            j = int(tokens[1])
            v = 1.0 if pattern else float(tokens[2])
        except ValueError:
            raise FormatError("non-numeric token in entry", line=lineno) from None
        m, n, k = size
        if not (1 <= i <= m and 1 <= j <= n):
            raise FormatError(f"entry ({i}, {j}) outside declared {m}x{n} bounds", line=lineno)
        seen += 1
        if seen > k:
            raise FormatError(f"more than the declared {k} entries", line=lineno)
        rows.append(i - 1)
        cols.append(j - 1)
        vals.append(v)
        if symmetry == "symmetric" and i != j:
            rows.append(j - 1)
            cols.append(i - 1)
            vals.append(v)
    if size is None:
        raise FormatError("missing size line", line=lineno)
    if seen < size[2]:
        raise FormatError(f"declared {size[2]} entries but found {seen}", line=lineno)
    return SparseCsr.from_coo(size[0], size[1], np.array(rows), np.array(cols), np.array(vals))


def write_matrix_market(csr: SparseCsr, path: str) -> None:
    """Write in a normal form: general symmetry, entries sorted by (row, col)."""
    rows, cols, vals = csr.to_coo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{csr.num_rows} {csr.num_cols} {csr.nnz}\n")
        for i, j, v in zip(rows, cols, vals):
            fh.write(f"{i + 1} {j + 1} {float(v)!r}\n")


def parse_edge_list(path: str) -> tuple[list[tuple[int, int]], bool]:
    """Read 'src dst' pairs.  Returns (edges, one_based).

    Indexing is auto-detected: if every id is >= 1 the file is treated as
    1-based and shifted down.  Lines starting with '#' or '%' are comments.
    """
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#") or text.startswith("%"):
                continue
            tokens = text.replace(",", " ").split()
            if len(tokens) != 2:
                raise FormatError("expected two integer ids per line", line=lineno)
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise FormatError("non-integer token", line=lineno) from None
            if u < 0 or v < 0:
                raise FormatError("negative vertex id", line=lineno)
            edges.append((u, v))
    if not edges:
        raise FormatError("empty edge list", line=1)
    one_based = min(min(e) for e in edges) >= 1
    if one_based:
        edges = [(u - 1, v - 1) for u, v in edges]
    return edges, one_based


def load_edge_list(path: str, undirected: bool = True) -> Graph:
    """Build a Graph from an edge-list file.  Duplicate edges collapse to one entry."""
    edges, _ = parse_edge_list(path)
    num_vertices = max(max(e) for e in edges) + 1
    return graph_from_edges(num_vertices, edges, undirected=undirected)


def graph_from_edges(num_vertices: int, edges: list[tuple[int, int]], undirected: bool = True) -> Graph:
    """Assemble a Graph from (u, v) pairs with unit values, deduplicated."""
    pairs = set()
    for u, v in edges:
        if u >= num_vertices or v >= num_vertices:
            raise ValueError(f"edge ({u}, {v}) exceeds num_vertices={num_vertices}")
        pairs.add((u, v))
        if undirected:
            pairs.add((v, u))
    if pairs:
        rows, cols = (np.array(a, dtype=np.int64) for a in zip(*sorted(pairs)))
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    vals = np.ones(rows.size, dtype=np.float64)
    adj = SparseCsr.from_coo(num_vertices, num_vertices, rows, cols, vals)
    return Graph(num_vertices, adj, undirected)


def permute_symmetric(csr: SparseCsr, perm: np.ndarray) -> SparseCsr:
    """Apply P A P^T for a square matrix: entry (i, j) moves to (perm[i], perm[j])."""
    if csr.num_rows != csr.num_cols:
        raise ValueError("symmetric permutation requires a square matrix")
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (csr.num_rows,) or not np.array_equal(np.sort(perm), np.arange(csr.num_rows)):
        raise ValueError("perm must be a bijection on 0..n-1")
    rows, cols, vals = csr.to_coo()
    return SparseCsr.from_coo(csr.num_rows, csr.num_cols, perm[rows], perm[cols], vals)


def spmm_dense_oracle(csr: SparseCsr, x: DenseMatrix) -> DenseMatrix:
    """Reference product Z = A X via densification.  Test oracle, not a fast path."""
    if csr.num_cols != x.rows:
        raise ValueError(f"dimension mismatch: matrix has {csr.num_cols} cols, X has {x.rows} rows")
    return DenseMatrix(csr.to_dense() @ x.data)
