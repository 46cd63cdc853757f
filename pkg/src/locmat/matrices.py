"""Dense exact square matrices over a field.

Matrix units, trace, commutators, Kronecker (tensor) products and the unital
embeddings M_n -> M_{nk}, a |-> a (x) 1_k.  Matrices are immutable; entries
are stored row-major as raw field values.

Index conventions: the unit constructor ``matrix_unit(field, n, i, j)`` is
1-based to match the e_ij notation; elementwise access ``a[i, j]`` is plain
0-based Python indexing.

The Kronecker convention is "left factor indexes blocks":
``kron(a, b)[i*k + s, j*k + t] == a[i, j] * b[s, t]`` for b of size k, so a
unital copy of M_n sits inside M_{nk} as ``a |-> kron(a, identity(k))``.

Matrix literals cross the CLI boundary as JSON arrays of field-element
strings, e.g. ``[["2/3", "0"], ["1", "-1/2"]]`` over Q or ``[["4", "0"], ...]``
over F_p.
"""

from __future__ import annotations

from typing import List, Sequence

from .fields import Field, FieldElement


class Matrix:
    """An n-by-n matrix of exact field values."""

    __slots__ = ("field", "n", "_e")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        n = len(rows)
        flat = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for x in row:
                flat.append(field.coerce(x))
        self.field = field
        self.n = n
        self._e = tuple(flat)

    @classmethod
    def _from_flat(cls, field: Field, n: int, flat) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.n = n
        m._e = tuple(flat)
        return m

    @classmethod
    def zeros(cls, field: Field, n: int) -> "Matrix":
        return cls._from_flat(field, n, [field.zero] * (n * n))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._from_flat(field, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit e_ij (1-based indices)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"unit indices ({i},{j}) out of range for n={n}")
        flat = [field.zero] * (n * n)
        flat[(i - 1) * n + (j - 1)] = field.one
        return cls._from_flat(field, n, flat)

    @classmethod
    def from_json(cls, field: Field, rows: Sequence[Sequence[str]]) -> "Matrix":
        return cls(field, rows)

    @property
    def flat(self):
        """Row-major tuple of raw entry values."""
        return self._e

    def __getitem__(self, key) -> FieldElement:
        i, j = key
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"({i},{j}) out of range for n={self.n}")
        return FieldElement(self.field, self._e[i * self.n + j])

    def _check_peer(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check_peer(other)
        add = self.field.add
        return Matrix._from_flat(self.field, self.n, [add(a, b) for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        self._check_peer(other)
        sub = self.field.sub
        return Matrix._from_flat(self.field, self.n, [sub(a, b) for a, b in zip(self._e, other._e)])

    def __neg__(self):
        neg = self.field.neg
        return Matrix._from_flat(self.field, self.n, [neg(a) for a in self._e])

    def __mul__(self, scalar):
        """Scalar multiple (int or FieldElement); use ``@`` for matrix products."""
        c = self.field.coerce(scalar)
        mul = self.field.mul
        return Matrix._from_flat(self.field, self.n, [mul(c, a) for a in self._e])

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_peer(other)
        n = self.n
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        a, b = self._e, other._e
        out = [zero] * (n * n)
        for i in range(n):
            ai = i * n
            for k in range(n):
                aik = a[ai + k]
                if aik == zero:
                    continue
                bk = k * n
                for j in range(n):
                    bkj = b[bk + j]
                    if bkj != zero:
                        out[ai + j] = add(out[ai + j], mul(aik, bkj))
        return Matrix._from_flat(field, n, out)

    def trace(self) -> FieldElement:
        field = self.field
        acc = field.zero
        for i in range(self.n):
            acc = field.add(acc, self._e[i * self.n + i])
        return FieldElement(field, acc)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; ``self`` indexes the blocks."""
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        n, k = self.n, other.n
        nk = n * k
        field = self.field
        mul, zero = field.mul, field.zero
        a, b = self._e, other._e
        out = [zero] * (nk * nk)
        for i in range(n):
            for j in range(n):
                aij = a[i * n + j]
                if aij == zero:
                    continue
                base = (i * k) * nk + j * k
                for s in range(k):
                    row = base + s * nk
                    bs = s * k
                    for t in range(k):
                        bst = b[bs + t]
                        if bst != zero:
                            out[row + t] = mul(aij, bst)
        return Matrix._from_flat(field, nk, out)

    def embed(self, k: int) -> "Matrix":
        """Unital embedding into M_{n*k}: a |-> a (x) 1_k."""
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"embedding multiplicity must be >= 1, got {k!r}")
        return self.kron(Matrix.identity(self.field, k))

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for a in self._e)

    def is_scalar(self) -> bool:
        """True when the matrix lies on the scalar line F * 1."""
        n = self.n
        z = self.field.zero
        d = self._e[0]
        for i in range(n):
            for j in range(n):
                v = self._e[i * n + j]
                if i == j:
                    if v != d:
                        return False
                elif v != z:
                    return False
        return True

    def to_json(self) -> List[List[str]]:
        fmt = self.field.format
        n = self.n
        return [[fmt(self._e[i * n + j]) for j in range(n)] for i in range(n)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self._e == other._e

    def __hash__(self):
        return hash((self.field, self.n, self._e))

    def __str__(self):
        fmt = self.field.format
        n = self.n
        rows = [" ".join(fmt(self._e[i * n + j]) for j in range(n)) for i in range(n)]
        return "[" + "; ".join(rows) + "]"

    def __repr__(self):
        return f"Matrix({self.field.label}, n={self.n}, {self})"


def matrix_unit(field: Field, n: int, i: int, j: int) -> Matrix:
    """The matrix unit e_ij of M_n (1-based indices)."""
    return Matrix.unit(field, n, i, j)


def identity(field: Field, n: int) -> Matrix:
    return Matrix.identity(field, n)


def zeros(field: Field, n: int) -> Matrix:
    return Matrix.zeros(field, n)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """The Lie bracket [a, b] = ab - ba."""
    return (a @ b) - (b @ a)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def embed_unital(a: Matrix, k: int) -> Matrix:
    return a.embed(k)


def random_matrix(field: Field, n: int, rng, max_abs: int = 9) -> Matrix:
    """Matrix with small random entries drawn from the given PRNG."""
    draw = field.random
    return Matrix._from_flat(field, n, [draw(rng, max_abs) for _ in range(n * n)])
