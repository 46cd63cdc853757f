"""Linear subspaces of M_n with canonical echelon bases.

Covers the subspace arithmetic the simplicity checks run on: spans and sums,
the trace-zero subspace sl(n), the span of all commutators (proved equal to
sl(n) on the tested grid), the scalar line F*1, Lie ideal closures in gl(n),
and the centralizer of a unitally embedded M_n inside M_{nk}.

Quotients like pgl(n) = gl(n) / F*1 are never materialized; every statement
about them is phrased through subspaces of gl(n) containing the scalar line,
which keeps all checks exact.

Vectorization is row-major: the matrix entry (i, j) lands at coordinate
i*n + j, matching the Kronecker block convention in :mod:`locmat.matrices`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from .fields import Field
from .linalg import Echelon, Vec, kernel_basis
from .matrices import Matrix, commutator, identity, matrix_unit, random_matrix

DEFAULT_RNG_SEED = 0xC0FFEE


def vec(mat: Matrix) -> Vec:
    """Sparse row-major vectorization of a matrix."""
    z = mat.field.zero
    return {idx: v for idx, v in enumerate(mat.flat) if v != z}


def unvec(field: Field, n: int, row: Vec) -> Matrix:
    flat = [field.zero] * (n * n)
    for idx, v in row.items():
        flat[idx] = v
    return Matrix._from_flat(field, n, flat)


class MatSubspace:
    """A subspace of M_n represented by a reduced row echelon basis.

    Equality is structural equality of the echelon bases, which the canonical
    form makes coincide with equality of subspaces.
    """

    __slots__ = ("field", "n", "_ech")

    def __init__(self, field: Field, n: int, ech: Optional[Echelon] = None):
        self.field = field
        self.n = n
        self._ech = ech if ech is not None else Echelon(field, n * n)

    @classmethod
    def full(cls, field: Field, n: int) -> "MatSubspace":
        ech = Echelon(field, n * n)
        one = field.one
        for idx in range(n * n):
            ech.insert({idx: one})
        return cls(field, n, ech)

    @property
    def dim(self) -> int:
        return self._ech.dim

    def _check_ambient(self, other):
        if self.field != other.field or self.n != other.n:
            raise ValueError(
                f"ambient mismatch: M_{self.n}({self.field.label}) vs M_{other.n}({other.field.label})"
            )

    def _check_matrix(self, a: Matrix):
        if a.field != self.field or a.n != self.n:
            raise ValueError(
                f"ambient mismatch: M_{self.n}({self.field.label}) vs M_{a.n}({a.field.label})"
            )

    def contains(self, a: Matrix) -> bool:
        self._check_matrix(a)
        return self._ech.contains(vec(a))

    def __add__(self, other: "MatSubspace") -> "MatSubspace":
        self._check_ambient(other)
        ech = self._ech.copy()
        ech.insert_all(other._ech.vectors())
        return MatSubspace(self.field, self.n, ech)

    def spanned_with(self, mats: Iterable[Matrix]) -> "MatSubspace":
        """Span of this subspace together with extra matrices."""
        ech = self._ech.copy()
        for m in mats:
            self._check_matrix(m)
            ech.insert(vec(m))
        return MatSubspace(self.field, self.n, ech)

    def basis_matrices(self) -> List[Matrix]:
        return [unvec(self.field, self.n, row) for row in self._ech.vectors()]

    def is_subspace_of(self, other: "MatSubspace") -> bool:
        self._check_ambient(other)
        return all(other._ech.contains(row) for row in self._ech.vectors())

    def __eq__(self, other):
        if not isinstance(other, MatSubspace):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self._ech == other._ech

    def __hash__(self):
        return hash((self.field, self.n, self._ech))

    def __repr__(self):
        return f"MatSubspace(n={self.n}, field={self.field.label}, dim={self.dim})"


def span(mats: Sequence[Matrix], field: Optional[Field] = None, n: Optional[int] = None) -> MatSubspace:
    """Span of a list of matrices; field/n required only for an empty list."""
    if mats:
        field = mats[0].field if field is None else field
        n = mats[0].n if n is None else n
    if field is None or n is None:
        raise ValueError("empty span needs explicit field and ambient size")
    out = MatSubspace(field, n)
    for m in mats:
        out._check_matrix(m)
        out._ech.insert(vec(m))
    return out


def scalar_line(field: Field, n: int) -> MatSubspace:
    """The scalar line F * 1 inside M_n."""
    return span([identity(field, n)])


def sl(field: Field, n: int) -> MatSubspace:
    """Trace-zero matrices, computed as the kernel of the trace functional."""
    if n < 1:
        raise ValueError("ambient size must be >= 1")
    trace_row = {i * n + i: field.one for i in range(n)}
    ech = Echelon(field, n * n)
    for v in kernel_basis([trace_row], n * n, field):
        ech.insert(v)
    return MatSubspace(field, n, ech)


def commutator_subspace(field: Field, n: int) -> MatSubspace:
    """Span of all brackets [e_ij, e_kl] of matrix units."""
    if n < 1:
        raise ValueError("ambient size must be >= 1")
    units = [matrix_unit(field, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    ech = Echelon(field, n * n)
    for a in units:
        for b in units:
            c = commutator(a, b)
            if not c.is_zero():
                ech.insert(vec(c))
    return MatSubspace(field, n, ech)


def plus_scalars(space: MatSubspace) -> MatSubspace:
    """The sum S + F * 1."""
    return space.spanned_with([identity(space.field, space.n)])


def lie_ideal_closure(seeds: Sequence[Matrix], field: Optional[Field] = None, n: Optional[int] = None) -> MatSubspace:
    """Smallest subspace containing the seeds and closed under ad(e_ij).

    Since the matrix units span gl(n), the result is the Lie ideal of gl(n)
    generated by the seeds.  Worked as a worklist: every vector that enlarges
    the span gets bracketed against all n^2 units exactly once, so the loop
    terminates after at most n^2 insertions.
    """
    if seeds:
        field = seeds[0].field if field is None else field
        n = seeds[0].n if n is None else n
    if field is None or n is None:
        raise ValueError("empty closure needs explicit field and ambient size")
    units = [matrix_unit(field, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    ech = Echelon(field, n * n)
    queue: List[Matrix] = []
    for s in seeds:
        if s.field != field or s.n != n:
            raise ValueError("seed outside the ambient matrix algebra")
        if ech.insert(vec(s)):
            queue.append(s)
    while queue:
        m = queue.pop()
        for u in units:
            c = commutator(m, u)
            w = vec(c)
            if w and ech.insert(w):
                queue.append(c)
    return MatSubspace(field, n, ech)


def centralizer_of_embedded(field: Field, n: int, k: int) -> MatSubspace:
    """Matrices in M_{nk} commuting with the embedded copy of M_n.

    Solves the commutation system X (e_ij (x) 1_k) = (e_ij (x) 1_k) X for all
    units e_ij.  The result equals {1_n (x) c : c in M_k} and has dimension
    k^2.
    """
    if n < 1 or k < 1:
        raise ValueError("sizes must be >= 1")
    m = n * k
    width = m * m
    constraints: List[Vec] = []
    one = field.one
    neg_one = field.neg(one)
    for i in range(n):
        for j in range(n):
            u = matrix_unit(field, n, i + 1, j + 1).embed(k)
            su = vec(u)  # sparse {r*m + c: 1}
            ucols = {}  # column -> list of rows where u is nonzero
            urows = {}  # row -> list of cols
            for idx, val in su.items():
                r, c = divmod(idx, m)
                ucols.setdefault(c, []).append((r, val))
                urows.setdefault(r, []).append((c, val))
            for a in range(m):
                for b in range(m):
                    row: Vec = {}
                    # (X u)[a,b] = sum_c X[a,c] u[c,b]
                    for (c, val) in ucols.get(b, ()):
                        idx = a * m + c
                        row[idx] = field.add(row.get(idx, field.zero), val)
                    # -(u X)[a,b] = -sum_c u[a,c] X[c,b]
                    for (c, val) in urows.get(a, ()):
                        idx = c * m + b
                        cur = field.add(row.get(idx, field.zero), field.mul(neg_one, val))
                        if cur == field.zero:
                            row.pop(idx, None)
                        else:
                            row[idx] = cur
                    if row:
                        constraints.append(row)
    ech = Echelon(field, width)
    for v in kernel_basis(constraints, width, field):
        ech.insert(v)
    return MatSubspace(field, m, ech)


@dataclass
class SeedClosureRecord:
    seed: Matrix
    closure_dim: int
    generates: bool


@dataclass
class EvidenceReport:
    """Outcome of a seed-closure sweep over gl(n) modulo the scalar line.

    Evidence, not proof: it covers the unit seeds plus a seeded-PRNG sample.
    ``proper_ideal_dim`` is the dimension of the verified proper bracket-closed
    subspace containing F*1 (sl(n)) when the characteristic divides n, else
    None.
    """

    ambient_n: int
    field: Field
    seed_records: List[SeedClosureRecord]
    all_generate: bool
    proper_ideal_dim: Optional[int]

    @property
    def seed_count(self) -> int:
        return len(self.seed_records)

    def to_json(self) -> dict:
        return {
            "ambient_n": self.ambient_n,
            "field": self.field.label,
            "seed_count": self.seed_count,
            "all_generate": self.all_generate,
            "proper_ideal_dim": self.proper_ideal_dim,
        }


def default_evidence_seeds(field: Field, n: int, random_count: int = 25,
                           rng_seed: int = DEFAULT_RNG_SEED) -> List[Matrix]:
    """Off-diagonal units, e_11 - e_22, and a seeded sample of random matrices."""
    seeds = [matrix_unit(field, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    if n >= 2:
        seeds.append(matrix_unit(field, n, 1, 1) - matrix_unit(field, n, 2, 2))
    rng = random.Random(rng_seed)
    count = 0
    while count < random_count:
        m = random_matrix(field, n, rng)
        if not m.is_scalar():
            seeds.append(m)
            count += 1
    return seeds


def simplicity_evidence(field: Field, n: int, seeds: Optional[Sequence[Matrix]] = None,
                        random_count: int = 25, rng_seed: int = DEFAULT_RNG_SEED) -> EvidenceReport:
    """Test whether every seed generates all of M_n as a Lie ideal over F*1.

    Each seed must lie outside the scalar line.  The closure of
    {seed, identity} under bracketing with units is compared against M_n.
    When char F divides n, the trace-zero subspace is additionally verified to
    be a proper bracket-closed subspace of gl(n) containing F*1.
    """
    if n < 2:
        raise ValueError("evidence sweep needs n >= 2")
    if seeds is None:
        seeds = default_evidence_seeds(field, n, random_count, rng_seed)
    records = []
    full = MatSubspace.full(field, n)
    one = identity(field, n)
    for s in seeds:
        if s.is_scalar():
            raise ValueError("seed lies on the scalar line F*1")
        closure = lie_ideal_closure([s, one], field, n)
        records.append(SeedClosureRecord(s, closure.dim, closure == full))
    all_generate = all(r.generates for r in records)

    proper_ideal_dim = None
    if field.characteristic > 0 and n % field.characteristic == 0:
        candidate = sl(field, n)
        units = [matrix_unit(field, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        bracket_closed = all(
            candidate.contains(commutator(u, b))
            for b in candidate.basis_matrices()
            for u in units
        )
        contains_scalars = candidate.contains(one)
        proper = candidate.dim < n * n
        if bracket_closed and contains_scalars and proper:
            proper_ideal_dim = candidate.dim
    return EvidenceReport(n, field, records, all_generate, proper_ideal_dim)
