"""Derivations of M_n as the kernel of an exact linear system.

A derivation is a linear map d with d(ab) = d(a)b + a d(b).  On M_n this is a
finite homogeneous system: writing d as an n^2-by-n^2 coefficient grid D with
D[uv, kl] = coefficient of e_uv in d(e_kl), the Leibniz identity on the pair
(e_ij, e_kl), read off at the output coordinate (u, v), says

    [j == k] * D[uv, il]  -  [l == v] * D[uk, ij]  -  [u == i] * D[jv, kl]  =  0.

``derivation_space`` solves that system over all n^4 ordered pairs of units
(the redundancy is accepted; sizes stay at desk scale) and returns an
echelonized kernel basis.  ``inner_derivation_space`` spans the operators
ad(a): x -> [a, x]; on the tested grid the two spaces coincide.

``central_on_commutators`` computes the derivations sending every trace-zero
matrix into the scalar line; ``split_feasibility`` decides, over F_p, whether
a trace-nonzero witness a in M_{p^k} can be written as a (x) 1 = b + 1 (x) c
with b trace-zero in M_m, an affine solvability question settled by an exact
rank comparison (here: subspace membership).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .fields import Field, GF
from .linalg import Echelon, Vec, kernel_basis
from .matrices import Matrix, identity, matrix_unit
from .steinitz import is_prime
from .subspaces import MatSubspace, sl


class MatrixOperator:
    """A linear operator on M_n, stored as sparse images of the matrix units.

    ``cols[k*n + l]`` is the sparse vectorization of the image of e_kl; columns
    with zero image are absent.  The flattened coefficient vector (used by the
    echelon bases) places D[uv, kl] at index uv * n^2 + kl.
    """

    __slots__ = ("field", "n", "cols")

    def __init__(self, field: Field, n: int, cols: Dict[int, Vec]):
        self.field = field
        self.n = n
        self.cols = {kl: dict(img) for kl, img in cols.items() if img}

    @classmethod
    def zero(cls, field: Field, n: int) -> "MatrixOperator":
        return cls(field, n, {})

    @classmethod
    def from_vec(cls, field: Field, n: int, flat: Vec) -> "MatrixOperator":
        nn = n * n
        cols: Dict[int, Vec] = {}
        for idx, val in flat.items():
            uv, kl = divmod(idx, nn)
            cols.setdefault(kl, {})[uv] = val
        return cls(field, n, cols)

    @classmethod
    def ad(cls, a: Matrix) -> "MatrixOperator":
        """The inner derivation x -> [a, x]."""
        n = a.n
        field = a.field
        zero = field.zero
        flat = a.flat
        cols: Dict[int, Vec] = {}
        for k in range(n):
            for l in range(n):
                img: Vec = {}
                # (a e_kl)[r, l] = a[r, k]
                for r in range(n):
                    v = flat[r * n + k]
                    if v != zero:
                        img[r * n + l] = v
                # (e_kl a)[k, c] = a[l, c]
                for c in range(n):
                    v = flat[l * n + c]
                    if v != zero:
                        idx = k * n + c
                        nv = field.sub(img.get(idx, zero), v)
                        if nv == zero:
                            img.pop(idx, None)
                        else:
                            img[idx] = nv
                if img:
                    cols[k * n + l] = img
        return cls(field, n, cols)

    def vec(self) -> Vec:
        nn = self.n * self.n
        out: Vec = {}
        for kl, img in self.cols.items():
            for uv, val in img.items():
                out[uv * nn + kl] = val
        return out

    def _apply_vec(self, v: Vec) -> Vec:
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        out: Vec = {}
        for kl, coef in v.items():
            img = self.cols.get(kl)
            if img is None:
                continue
            for uv, val in img.items():
                nv = add(out.get(uv, zero), mul(coef, val))
                if nv == zero:
                    out.pop(uv, None)
                else:
                    out[uv] = nv
        return out

    def apply(self, a: Matrix) -> Matrix:
        if a.field != self.field or a.n != self.n:
            raise ValueError("operator and matrix live on different spaces")
        z = self.field.zero
        out = self._apply_vec({i: v for i, v in enumerate(a.flat) if v != z})
        flat = [z] * (self.n * self.n)
        for idx, v in out.items():
            flat[idx] = v
        return Matrix._from_flat(self.field, self.n, flat)

    def compose(self, other: "MatrixOperator") -> "MatrixOperator":
        if other.field != self.field or other.n != self.n:
            raise ValueError("operators live on different spaces")
        cols = {}
        for kl, img in other.cols.items():
            out = self._apply_vec(img)
            if out:
                cols[kl] = out
        return MatrixOperator(self.field, self.n, cols)

    def bracket(self, other: "MatrixOperator") -> "MatrixOperator":
        return self.compose(other) - other.compose(self)

    def __sub__(self, other: "MatrixOperator") -> "MatrixOperator":
        if other.field != self.field or other.n != self.n:
            raise ValueError("operators live on different spaces")
        field = self.field
        zero = field.zero
        cols: Dict[int, Vec] = {kl: dict(img) for kl, img in self.cols.items()}
        for kl, img in other.cols.items():
            tgt = cols.setdefault(kl, {})
            for uv, val in img.items():
                nv = field.sub(tgt.get(uv, zero), val)
                if nv == zero:
                    tgt.pop(uv, None)
                else:
                    tgt[uv] = nv
            if not tgt:
                del cols[kl]
        return MatrixOperator(field, self.n, cols)

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, MatrixOperator):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.cols == other.cols

    def __hash__(self):
        return hash((self.field, self.n, tuple(sorted((kl, tuple(sorted(img.items()))) for kl, img in self.cols.items()))))

    def __repr__(self):
        return f"MatrixOperator(n={self.n}, field={self.field.label}, support={len(self.cols)} columns)"


def ad(a: Matrix) -> MatrixOperator:
    return MatrixOperator.ad(a)


class DerivationSpace:
    """An echelonized space of matrix operators (width n^4 coefficient vectors)."""

    __slots__ = ("field", "n", "_ech")

    def __init__(self, field: Field, n: int, ech: Optional[Echelon] = None):
        self.field = field
        self.n = n
        self._ech = ech if ech is not None else Echelon(field, n ** 4)

    @property
    def dim(self) -> int:
        return self._ech.dim

    def contains(self, op: MatrixOperator) -> bool:
        if op.field != self.field or op.n != self.n:
            raise ValueError("operator lives on a different space")
        return self._ech.contains(op.vec())

    def basis_operators(self) -> List[MatrixOperator]:
        return [MatrixOperator.from_vec(self.field, self.n, row) for row in self._ech.vectors()]

    def __eq__(self, other):
        if not isinstance(other, DerivationSpace):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self._ech == other._ech

    def __repr__(self):
        return f"DerivationSpace(n={self.n}, field={self.field.label}, dim={self.dim})"


def _leibniz_constraints(field: Field, n: int):
    """Sparse constraint rows of the Leibniz system on all unit pairs."""
    nn = n * n
    one = field.one
    neg_one = field.neg(one)
    zero = field.zero
    seen = set()

    def flat(uv, kl):
        return uv * nn + kl

    def emit(entries):
        row: Vec = {}
        for idx, val in entries:
            nv = field.add(row.get(idx, zero), val)
            if nv == zero:
                row.pop(idx, None)
            else:
                row[idx] = nv
        if not row:
            return None
        key = tuple(sorted(row.items()))
        if key in seen:
            return None
        seen.add(key)
        return row

    rows: List[Vec] = []
    for i in range(n):
        for j in range(n):
            ij = i * n + j
            for k in range(n):
                jk = j == k
                for l in range(n):
                    kl = k * n + l
                    il = i * n + l
                    if jk:
                        # every output coordinate carries an equation
                        uv_range = ((u, v) for u in range(n) for v in range(n))
                    else:
                        # only coordinates hit by the two right-hand terms
                        uv_range = {(u, l) for u in range(n)} | {(i, v) for v in range(n)}
                    for (u, v) in uv_range:
                        entries = []
                        if jk:
                            entries.append((flat(u * n + v, il), one))
                        if l == v:
                            entries.append((flat(u * n + k, ij), neg_one))
                        if u == i:
                            entries.append((flat(j * n + v, kl), neg_one))
                        row = emit(entries)
                        if row is not None:
                            rows.append(row)
    return rows


def derivation_space(field: Field, n: int) -> DerivationSpace:
    """All derivations of M_n, solved from the Leibniz system on unit pairs."""
    if n < 1:
        raise ValueError("ambient size must be >= 1")
    width = n ** 4
    basis = kernel_basis(_leibniz_constraints(field, n), width, field)
    ech = Echelon(field, width)
    for v in basis:
        ech.insert(v)
    return DerivationSpace(field, n, ech)


def inner_derivation_space(field: Field, n: int) -> DerivationSpace:
    """Span of the inner derivations ad(e_ij)."""
    if n < 1:
        raise ValueError("ambient size must be >= 1")
    ech = Echelon(field, n ** 4)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            op = MatrixOperator.ad(matrix_unit(field, n, i, j))
            if not op.is_zero():
                ech.insert(op.vec())
    return DerivationSpace(field, n, ech)


def der_equals_inder(field: Field, n: int) -> bool:
    """True when the Leibniz kernel coincides with the inner derivations."""
    if n < 2:
        raise ValueError("comparison needs n >= 2")
    return derivation_space(field, n) == inner_derivation_space(field, n)


def central_on_commutators(field: Field, n: int) -> DerivationSpace:
    """Derivations sending every trace-zero matrix into the scalar line F*1.

    For n >= 4 this space is zero (asserted by the test suite); for n in
    {2, 3} it is computed and reported without assertion.
    """
    if n < 2:
        raise ValueError("kernel needs n >= 2")
    ders = derivation_space(field, n).basis_operators()
    d = len(ders)
    sl_basis = sl(field, n).basis_matrices()
    constraints: List[Vec] = []
    zero = field.zero
    for s in sl_basis:
        images = [op.apply(s) for op in ders]
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                row = {i: images[i].flat[u * n + v] for i in range(d)
                       if images[i].flat[u * n + v] != zero}
                if row:
                    constraints.append(row)
        for u in range(1, n):
            row = {}
            for i in range(d):
                val = field.sub(images[i].flat[u * n + u], images[i].flat[0])
                if val != zero:
                    row[i] = val
            if row:
                constraints.append(row)
    coeff_vectors = kernel_basis(constraints, d, field)
    der_vecs = [op.vec() for op in ders]
    ech = Echelon(field, n ** 4)
    for coeffs in coeff_vectors:
        combo: Vec = {}
        for i, c in coeffs.items():
            for idx, val in der_vecs[i].items():
                nv = field.add(combo.get(idx, zero), field.mul(c, val))
                if nv == zero:
                    combo.pop(idx, None)
                else:
                    combo[idx] = nv
        if combo:
            ech.insert(combo)
    return DerivationSpace(field, n, ech)


@dataclass
class SplitReport:
    """Outcome of the tensor-split solvability test over F_p.

    Decides whether a (x) 1_t = b + 1_{p^k} (x) c is solvable with b
    trace-zero in M_m and c in M_t, for a trace-nonzero witness a in M_{p^k}.
    """

    p: int
    k: int
    m: int
    t: int
    witness: Matrix
    witness_trace: str
    embedded_trace: str
    feasible: bool

    @property
    def verdict(self) -> str:
        return "FEASIBLE" if self.feasible else "INFEASIBLE"

    def to_json(self) -> dict:
        return {
            "check": "split_feasibility",
            "params": {"p": self.p, "k": self.k, "m": self.m},
            "witness": self.witness.to_json(),
            "witness_trace": self.witness_trace,
            "embedded_trace": self.embedded_trace,
            "feasible": self.feasible,
        }


def split_feasibility(p: int, k: int, m: int, witness: Optional[Matrix] = None) -> SplitReport:
    """Decide solvability of a (x) 1 = b + 1 (x) c over F_p (b trace-zero).

    Preconditions: p an odd prime, k >= 1, and m has p-adic valuation exactly
    k (so p^k divides m and m / p^k is coprime to p).  The witness defaults to
    e_11 and may be any trace-nonzero element of M_{p^k}(F_p); the verdict
    must not depend on that choice.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"exponent k must be an integer >= 1, got {k!r}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"ambient size m must be an integer >= 1, got {m!r}")
    pk = p ** k
    if m % pk != 0:
        raise ValueError(f"p^k = {pk} must divide m = {m}")
    nu = 0
    mm = m
    while mm % p == 0:
        mm //= p
        nu += 1
    if nu != k:
        raise ValueError(f"nu_{p}({m}) = {nu} != k = {k}; the split test needs valuation exactly k")
    t = m // pk
    field = GF(p)
    if witness is None:
        witness = matrix_unit(field, pk, 1, 1)
    else:
        if witness.field != field:
            raise ValueError(f"witness must live over {field.label}")
        if witness.n != pk:
            raise ValueError(f"witness must be {pk}x{pk}, got {witness.n}x{witness.n}")
    tr = witness.trace()
    if tr.is_zero():
        raise ValueError("witness must have nonzero trace")
    embedded = witness.embed(t)
    centralizer_mats = [
        identity(field, pk).kron(matrix_unit(field, t, s, u))
        for s in range(1, t + 1)
        for u in range(1, t + 1)
    ]
    space: MatSubspace = sl(field, m).spanned_with(centralizer_mats)
    feasible = space.contains(embedded)
    return SplitReport(
        p=p, k=k, m=m, t=t,
        witness=witness,
        witness_trace=str(tr),
        embedded_trace=str(embedded.trace()),
        feasible=feasible,
    )
