"""Dense linear algebra over F_{q^m}: echelon forms, kernels, subspace
sum and intersection, and the F_q-rank of extension-field vectors.

Matrices store packed-int entries (see fields) plus the owning spec.
Subspaces are always kept in reduced row echelon form, which makes
equality a plain list comparison and keeps every derived object
canonical regardless of the path that produced it.
"""

from __future__ import annotations

from .fields import FieldElement, FieldSpec, SpecMismatchError


class Matrix:
    __slots__ = ("spec", "rows", "nrows", "ncols")

    def __init__(self, spec: FieldSpec, rows: list[list[int]], ncols: int | None = None):
        self.spec = spec
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged matrix")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols mismatch")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs explicit ncols")
            self.ncols = ncols

    @classmethod
    def from_elements(cls, rows: list[list[FieldElement]]):
        if not rows or not rows[0]:
            raise ValueError("from_elements needs at least one entry")
        spec = rows[0][0].spec
        out = []
        for r in rows:
            for x in r:
                if x.spec is not spec:
                    raise SpecMismatchError("mixed specs in matrix")
            out.append([x.val for x in r])
        return cls(spec, out)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int):
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, spec: FieldSpec, nrows: int, ncols: int):
        return cls(spec, [[0] * ncols for _ in range(nrows)], ncols)

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.spec, self.rows[i][j])

    def copy(self) -> "Matrix":
        return Matrix(self.spec, self.rows, self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.spec,
                      [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      self.nrows)

    def stack(self, other: "Matrix") -> "Matrix":
        if other.spec is not self.spec or other.ncols != self.ncols:
            raise SpecMismatchError("stack shape/spec mismatch")
        return Matrix(self.spec, self.rows + other.rows, self.ncols)

    def mul(self, other: "Matrix") -> "Matrix":
        if other.spec is not self.spec:
            raise SpecMismatchError("matrix product across specs")
        if self.ncols != other.nrows:
            raise ValueError("matrix product shape mismatch")
        sp = self.spec
        bt = other.transpose().rows
        out = []
        for r in self.rows:
            out.append([_dot(sp, r, c) for c in bt])
        return Matrix(sp, out, other.ncols)

    def mul_vec(self, v: list[int]) -> list[int]:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        sp = self.spec
        return [_dot(sp, r, v) for r in self.rows]

    def frob_entrywise(self, i: int) -> "Matrix":
        f = self.spec.frob
        return Matrix(self.spec, [[f(x, i) for x in r] for r in self.rows], self.ncols)

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "Matrix | None":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = Matrix(self.spec,
                     [r + [1 if i == j else 0 for j in range(n)]
                      for i, r in enumerate(self.rows)], 2 * n)
        red, rank = rref(aug)
        if rank < n or any(red.rows[i][i] != 1 for i in range(n)):
            return None
        return Matrix(self.spec, [r[n:] for r in red.rows], n)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.spec is self.spec
                and other.rows == self.rows and other.ncols == self.ncols)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over q={self.spec.q}^{self.spec.m})"


def _dot(sp: FieldSpec, a: list[int], b: list[int]) -> int:
    acc = 0
    mul = sp.mul
    add = sp.add
    for x, y in zip(a, b):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


def vec_add(sp: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    return [sp.add(x, y) for x, y in zip(a, b)]

def vec_sub(sp: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    return [sp.sub(x, y) for x, y in zip(a, b)]

def vec_scale(sp: FieldSpec, c: int, a: list[int]) -> list[int]:
    return [sp.mul(c, x) for x in a]

def vec_frob(sp: FieldSpec, a: list[int], i: int) -> list[int]:
    return [sp.frob(x, i) for x in a]


def vec_times_fq_matrix(sp: FieldSpec, v: list[int], fqmat: list[list[int]]) -> list[int]:
    """Row vector over F_{q^m} times a matrix with entries in F_q.

    The F_q entries are the packed constants 0..q-1, which embed into the
    extension unchanged.
    """
    n = len(fqmat[0])
    out = [0] * n
    for i, x in enumerate(v):
        if not x:
            continue
        row = fqmat[i]
        for j in range(n):
            c = row[j]
            if c:
                out[j] = sp.add(out[j], x if c == 1 else sp.mul(x, c))
    return out


def rref(M: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank; deterministic pivot choice."""
    sp = M.spec
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    rank = 0
    for col in range(nc):
        pivot = None
        for r in range(rank, nr):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        lead = prow[col]
        if lead != 1:
            li = sp.inv(lead)
            rows[rank] = prow = [sp.mul(li, x) for x in prow]
        for r in range(nr):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                row = rows[r]
                if c == 1:
                    rows[r] = [sp.sub(x, y) for x, y in zip(row, prow)]
                else:
                    rows[r] = [sp.sub(x, sp.mul(c, y)) for x, y in zip(row, prow)]
        rank += 1
        if rank == nr:
            break
    return Matrix(sp, rows, nc), rank


def right_kernel(M: Matrix) -> "Subspace":
    """Canonical basis of {x : M x^T = 0}."""
    red, rank = rref(M)
    pivots = []
    for r in range(rank):
        row = red.rows[r]
        pivots.append(next(c for c in range(M.ncols) if row[c]))
    pivot_set = set(pivots)
    free = [c for c in range(M.ncols) if c not in pivot_set]
    sp = M.spec
    basis = []
    for f in free:
        v = [0] * M.ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = sp.neg(red.rows[r][f])
        basis.append(v)
    return Subspace.from_rows(sp, basis, M.ncols)


def solve(M: Matrix, b: list[int]):
    """One solution x of M x = b, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != M.nrows:
        raise ValueError("rhs length mismatch")
    aug = Matrix(M.spec, [r + [bv] for r, bv in zip(M.rows, b)], M.ncols + 1)
    red, rank = rref(aug)
    x = [0] * M.ncols
    for r in range(rank):
        row = red.rows[r]
        pivot = next((c for c in range(M.ncols + 1) if row[c]), None)
        if pivot is None:
            continue
        if pivot == M.ncols:
            return None
        x[pivot] = row[M.ncols]
    return x


class Subspace:
    """Row space in canonical (RREF) form over a fixed ambient dimension."""

    __slots__ = ("spec", "ambient", "basis")

    def __init__(self, spec: FieldSpec, basis: Matrix, ambient: int):
        self.spec = spec
        self.basis = basis
        self.ambient = ambient

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: list[list[int]], ambient: int) -> "Subspace":
        if any(len(r) != ambient for r in rows):
            raise ValueError("row length != ambient dimension")
        red, rank = rref(Matrix(spec, rows, ambient))
        return cls(spec, Matrix(spec, red.rows[:rank], ambient), ambient)

    @classmethod
    def zero(cls, spec: FieldSpec, ambient: int) -> "Subspace":
        return cls(spec, Matrix(spec, [], ambient), ambient)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, v: list[int]) -> bool:
        if self.dim == 0:
            return all(x == 0 for x in v)
        stacked = Matrix(self.spec, self.basis.rows + [list(v)], self.ambient)
        return rref(stacked)[1] == self.dim

    def frob(self, i: int) -> "Subspace":
        # Frobenius fixes 0 and 1, so an RREF basis stays RREF
        return Subspace(self.spec, self.basis.frob_entrywise(i), self.ambient)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.spec is self.spec
                and other.ambient == self.ambient
                and other.basis.rows == self.basis.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_compat(U, V)
    return Subspace.from_rows(U.spec, U.basis.rows + V.basis.rows, U.ambient)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    """U cap V via the kernel of the stacked-basis relation: coefficient
    vectors (x, y) with x*U = y*V give exactly the common elements."""
    _check_compat(U, V)
    du, dv = U.dim, V.dim
    if du == 0 or dv == 0:
        return Subspace.zero(U.spec, U.ambient)
    stacked = Matrix(U.spec, U.basis.rows + V.basis.rows, U.ambient)
    ker = right_kernel(stacked.transpose())
    sp = U.spec
    rows = []
    for coeff in ker.basis.rows:
        acc = [0] * U.ambient
        for c, urow in zip(coeff[:du], U.basis.rows):
            if c:
                acc = vec_add(sp, acc, vec_scale(sp, c, urow))
        rows.append(acc)
    return Subspace.from_rows(sp, rows, U.ambient)


def _check_compat(U: Subspace, V: Subspace):
    if U.spec is not V.spec:
        raise SpecMismatchError("subspaces over different specs")
    if U.ambient != V.ambient:
        raise ValueError("ambient dimension mismatch")


def fq_rank(sp: FieldSpec, v: list[int]) -> int:
    """Dimension over F_q of the span of the coordinates of v.

    Each coordinate is expanded into its length-m digit vector over F_q
    and the resulting matrix is row reduced with base-field arithmetic.
    """
    base = sp.base
    rows = [list(sp.digits(x)) for x in v if x]
    rank = 0
    ncols = sp.m
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        li = base.inv(prow[col])
        if li != 1:
            prow = rows[rank] = [base.mul(li, x) for x in prow]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [base.sub(x, base.mul(c, y)) for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank
