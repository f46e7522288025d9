"""Dense exact linear algebra over a cyclotomic field Q(zeta_m).

A :class:`Matrix` over K = Q(z) is stored as phi rational layers, A = sum_k A_k z^k,
each layer a ``flint.fmpq_mat``.  Products convolve the layers and fold powers
z^k with k >= phi back through the minimal polynomial.  Rank over K is the
rational rank of the restriction of scalars of A divided by phi.

Echelon forms, kernels, images and intersections are computed by plain
Gauss-Jordan elimination over :class:`Scalar` with the first nonzero entry
of each column as pivot, which keeps every output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import flint

from .errors import DimensionMismatch, FieldMismatch, NotInvariant
from .scalars import FieldSpec, Scalar


def _fmpq(c: Fraction) -> flint.fmpq:
    return flint.fmpq(c.numerator, c.denominator)


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _zero_layer(rows: int, cols: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(rows, cols)


class Matrix:
    """Immutable rows x cols matrix over a cyclotomic field."""

    __slots__ = ("field", "rows", "cols", "layers")

    def __init__(self, fld: FieldSpec, rows: int, cols: int, layers: Sequence[flint.fmpq_mat]):
        if len(layers) != fld.degree:
            raise ValueError("one layer per power basis element is required")
        self.field = fld
        self.rows = rows
        self.cols = cols
        self.layers = tuple(layers)

    # -- construction ------------------------------------------------------------

    @classmethod
    def zeros(cls, fld: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(fld, rows, cols, [_zero_layer(rows, cols) for _ in range(fld.degree)])

    @classmethod
    def identity(cls, fld: FieldSpec, n: int) -> "Matrix":
        return cls.diagonal(fld, [fld.one()] * n)

    @classmethod
    def from_rows(cls, fld: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = [[] for _ in range(fld.degree)]
        for row in rows:
            if len(row) != nc:
                raise DimensionMismatch("ragged rows")
            for v in row:
                v = fld(v)
                for k, c in enumerate(v.coeffs):
                    flat[k].append(_fmpq(c) if c else 0)
        return cls(fld, nr, nc, [flint.fmpq_mat(nr, nc, f) if nr and nc else _zero_layer(nr, nc) for f in flat])

    @classmethod
    def from_entries(cls, fld: FieldSpec, rows: int, cols: int, entries: dict) -> "Matrix":
        """Sparse constructor: ``entries`` maps (i, j) to a Scalar or number."""
        flat = [[0] * (rows * cols) for _ in range(fld.degree)]
        for (i, j), v in entries.items():
            v = fld(v)
            for k, c in enumerate(v.coeffs):
                if c:
                    flat[k][i * cols + j] = _fmpq(c)
        return cls(fld, rows, cols, [flint.fmpq_mat(rows, cols, f) if rows and cols else _zero_layer(rows, cols)
                                     for f in flat])

    @classmethod
    def diagonal(cls, fld: FieldSpec, values: Sequence) -> "Matrix":
        n = len(values)
        return cls.from_entries(fld, n, n, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def jordan_block(cls, fld: FieldSpec, n: int, eigenvalue) -> "Matrix":
        """J_n(u): u on the diagonal and 1 on the subdiagonal."""
        entries = {(i, i): eigenvalue for i in range(n)}
        entries.update({(i + 1, i): 1 for i in range(n - 1)})
        return cls.from_entries(fld, n, n, entries)

    @classmethod
    def block_diagonal(cls, fld: FieldSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        entries = {}
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.to_rows()):
                for j, v in enumerate(row):
                    if not v.is_zero():
                        entries[(r0 + i, c0 + j)] = v
            r0 += b.rows
            c0 += b.cols
        return cls.from_entries(fld, n, m, entries)

    # -- access ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, tuple(_frac(layer[i, j]) for layer in self.layers))

    def to_rows(self) -> list[list[Scalar]]:
        flats = [layer.entries() for layer in self.layers]
        fld = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                idx = i * self.cols + j
                row.append(Scalar(fld, tuple(_frac(f[idx]) for f in flats)))
            out.append(row)
        return out

    def column(self, j: int) -> list[Scalar]:
        return [self[i, j] for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        layers = []
        for layer in self.layers:
            flat = layer.entries()
            sub = [flat[i * self.cols + j] for i in rows for j in cols]
            layers.append(flint.fmpq_mat(len(rows), len(cols), sub) if rows and cols
                          else _zero_layer(len(rows), len(cols)))
        return Matrix(self.field, len(rows), len(cols), layers)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [layer.transpose() for layer in self.layers])

    def is_zero(self) -> bool:
        return all(layer == _zero_layer(self.rows, self.cols) for layer in self.layers)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and all(a == b for a, b in zip(self.layers, other.layers)))

    def __hash__(self):
        return hash((self.field.conductor, self.shape))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over Q(zeta_{self.field.conductor}))"

    # -- arithmetic ----------------------------------------------------------------

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.rows, self.cols, [a + b for a, b in zip(self.layers, other.layers)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.rows, self.cols, [a - b for a, b in zip(self.layers, other.layers)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [-a for a in self.layers])

    def _fold(self, prods: list, rows: int, cols: int) -> "Matrix":
        """Reduce a list of layers indexed by powers of z (possibly >= phi) into the field."""
        deg = self.field.degree
        out = list(prods[:deg]) + [_zero_layer(rows, cols) for _ in range(deg - len(prods[:deg]))]
        for k in range(deg, len(prods)):
            layer = prods[k]
            if layer is None:
                continue
            for c, coef in enumerate(self.field._reduce[k]):
                if coef:
                    out[c] = out[c] + layer * _fmpq(coef)
        return Matrix(self.field, rows, cols, [o if o is not None else _zero_layer(rows, cols) for o in out])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        deg = self.field.degree
        if deg == 1:
            return Matrix(self.field, self.rows, other.cols, [self.layers[0] * other.layers[0]])
        zero_a = [a == _zero_layer(self.rows, self.cols) for a in self.layers]
        zero_b = [b == _zero_layer(other.rows, other.cols) for b in other.layers]
        prods: list = [None] * (2 * deg - 1)
        for i, a in enumerate(self.layers):
            if zero_a[i]:
                continue
            for j, b in enumerate(other.layers):
                if zero_b[j]:
                    continue
                p = a * b
                prods[i + j] = p if prods[i + j] is None else prods[i + j] + p
        prods = [p if p is not None else _zero_layer(self.rows, other.cols) for p in prods]
        return self._fold(prods, self.rows, other.cols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        deg = self.field.degree
        prods: list = [None] * (2 * deg - 1)
        for i, ci in enumerate(c.coeffs):
            if not ci:
                continue
            q = _fmpq(ci)
            for j, a in enumerate(self.layers):
                p = a * q
                prods[i + j] = p if prods[i + j] is None else prods[i + j] + p
        prods = [p if p is not None else _zero_layer(self.rows, self.cols) for p in prods]
        return self._fold(prods, self.rows, self.cols)

    def __pow__(self, n: int) -> "Matrix":
        return mat_pow(self, n)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, left index major: (A kron B)[(i,k),(j,l)] = A[i,j] B[k,l]."""
        self._check(other)
        a_rows = self.to_rows()
        b_rows = other.to_rows()
        entries = {}
        for i, arow in enumerate(a_rows):
            for j, a in enumerate(arow):
                if a.is_zero():
                    continue
                for k, brow in enumerate(b_rows):
                    for l, b in enumerate(brow):
                        if not b.is_zero():
                            entries[(i * other.rows + k, j * other.cols + l)] = a * b
        return Matrix.from_entries(self.field, self.rows * other.rows, self.cols * other.cols, entries)

    # -- rank ------------------------------------------------------------------------

    def restriction_of_scalars(self) -> flint.fmpq_mat:
        """The (rows*phi) x (cols*phi) rational matrix of A acting on K^cols = Q^(cols*phi).

        Rows and columns are ordered coordinate-major: block (p, c) is the matrix
        sum_k A_k * [coefficient of z^p in z^(k+c)].
        """
        deg = self.field.degree
        if deg == 1:
            return self.layers[0]
        # layers of A * z^c for each c, folded into the field
        shifted = []
        cur = self
        for c in range(deg):
            shifted.append([layer.entries() for layer in cur.layers])
            cur = cur.scale(self.field.gen()) if c + 1 < deg else cur
        r, n = self.rows, self.cols
        flat = []
        for p in range(deg):
            for i in range(r):
                lo, hi = i * n, (i + 1) * n
                for c in range(deg):
                    flat.extend(shifted[c][p][lo:hi])
        return flint.fmpq_mat(r * deg, n * deg, flat)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        big = self.restriction_of_scalars().rank()
        deg = self.field.degree
        assert big % deg == 0, "rank over Q of a K-linear map is a multiple of [K:Q]"
        return big // deg


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return A @ B


def mat_pow(A: Matrix, n: int) -> Matrix:
    if not A.is_square():
        raise DimensionMismatch("power of a non-square matrix")
    if n < 0:
        raise ValueError("negative matrix power")
    result = Matrix.identity(A.field, A.rows)
    base = A
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def rank(A: Matrix) -> int:
    return A.rank()


# -- echelon forms over Scalars ---------------------------------------------------------

def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and pivot columns, pivoting on the first nonzero entry."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        inv = m[top][col].inverse()
        m[top] = [v * inv for v in m[top]]
        for i in range(len(m)):
            if i != top and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[top])]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of K^ambient_dim given by independent row vectors in reduced echelon form."""

    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, fld: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        vecs = [[fld(v) for v in vec] for vec in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        reduced, _ = rref(vecs)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced))

    def as_matrix(self, fld: FieldSpec) -> Matrix:
        """Basis vectors as the columns of an ambient_dim x dim matrix."""
        if not self.basis:
            return Matrix.zeros(fld, self.ambient_dim, 0)
        return Matrix.from_rows(fld, [list(col) for col in zip(*self.basis)])

    def contains(self, fld: FieldSpec, v: Sequence) -> bool:
        return SubspaceBasis.span(fld, self.ambient_dim, list(self.basis) + [list(v)]).dim == self.dim


def kernel_basis(A: Matrix) -> SubspaceBasis:
    """Basis of {v : A v = 0}, one vector per free column of the RREF."""
    fld = A.field
    reduced, pivots = rref(A.to_rows())
    free = [j for j in range(A.cols) if j not in pivots]
    vectors = []
    for f in free:
        v = [fld.zero()] * A.cols
        v[f] = fld.one()
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return SubspaceBasis.span(fld, A.cols, vectors)


def image_basis(A: Matrix) -> SubspaceBasis:
    """Basis of the column space of A."""
    return SubspaceBasis.span(A.field, A.rows, A.transpose().to_rows())


def subspace_intersection(fld: FieldSpec, U: SubspaceBasis, W: SubspaceBasis) -> SubspaceBasis:
    if U.ambient_dim != W.ambient_dim:
        raise DimensionMismatch("subspaces of different ambient spaces")
    if not U.basis or not W.basis:
        return SubspaceBasis(U.ambient_dim, ())
    # solve sum a_i u_i = sum b_j w_j
    cols = [list(u) for u in U.basis] + [[-c for c in w] for w in W.basis]
    system = Matrix.from_rows(fld, [list(r) for r in zip(*cols)])
    ker = kernel_basis(system)
    vectors = []
    for coeffs in ker.basis:
        v = [fld.zero()] * U.ambient_dim
        for a, u in zip(coeffs[: U.dim], U.basis):
            if not a.is_zero():
                v = [x + a * y for x, y in zip(v, u)]
        vectors.append(v)
    return SubspaceBasis.span(fld, U.ambient_dim, vectors)


def restrict(A: Matrix, B: SubspaceBasis) -> Matrix:
    """Matrix of A on span(B), in the coordinates of B's basis.

    Raises :class:`NotInvariant` unless A maps span(B) into itself.
    """
    if not A.is_square() or A.rows != B.ambient_dim:
        raise DimensionMismatch("restriction needs a square matrix on the ambient space")
    fld = A.field
    k = B.dim
    if k == 0:
        return Matrix.zeros(fld, 0, 0)
    basis_cols = B.as_matrix(fld)
    images = (A @ basis_cols).transpose().to_rows()
    # express each image in the echelon basis: the pivot coordinates give the coefficients
    _, pivots = rref([list(b) for b in B.basis])
    coords = []
    for img in images:
        c = [img[p] for p in pivots]
        recon = [fld.zero()] * B.ambient_dim
        for a, b in zip(c, B.basis):
            if not a.is_zero():
                recon = [x + a * y for x, y in zip(recon, b)]
        if recon != list(img):
            raise NotInvariant("the subspace is not invariant under the matrix")
        coords.append(c)
    return Matrix.from_rows(fld, [list(r) for r in zip(*coords)])


def fitting_split(M: Matrix) -> tuple[SubspaceBasis, SubspaceBasis]:
    """(ker M^N, im M^N) with N = size of M: the nilpotent and invertible parts of M."""
    if not M.is_square():
        raise DimensionMismatch("fitting_split needs a square matrix")
    P = mat_pow(M, M.rows)
    return kernel_basis(P), image_basis(P)


def stable_rank(M: Matrix) -> int:
    """dim im M^N, the dimension of the invertible Fitting part, by rank alone."""
    if M.rows == 0:
        return 0
    return mat_pow(M, M.rows).rank()


def generalized_eigen_profile(M: Matrix, u, max_k: Optional[int] = None,
                              cap: Optional[int] = None) -> list[int]:
    """[dim ker (M - uI)^k for k = 1..max_k] (max_k defaults to the size of M).

    The sequence stops growing once two consecutive terms agree, or once it
    reaches ``cap``, a known upper bound on the generalized eigenspace.
    """
    if not M.is_square():
        raise DimensionMismatch("eigen profile needs a square matrix")
    n = M.rows
    max_k = n if max_k is None else max_k
    cap = n if cap is None else cap
    shifted = M - Matrix.identity(M.field, n).scale(u)
    out = []
    power = Matrix.identity(M.field, n)
    for _ in range(max_k):
        power = power @ shifted
        d = n - power.rank()
        out.append(d)
        if d >= cap or (len(out) >= 2 and out[-1] == out[-2]):
            out.extend([d] * (max_k - len(out)))
            break
    return out


def jordan_blocks_from_profile(profile: Sequence[int]) -> dict[int, int]:
    """Block size -> count, from d_k = dim ker (M - uI)^k (d_0 = 0)."""
    d = [0] + list(profile)
    d.append(d[-1])
    ge = [d[k] - d[k - 1] for k in range(1, len(d))]  # number of blocks of size >= k
    blocks = {}
    for k in range(1, len(ge)):
        c = ge[k - 1] - ge[k]
        if c:
            blocks[k] = c
    return blocks
