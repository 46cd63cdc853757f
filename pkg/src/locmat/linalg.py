"""Sparse exact row-echelon machinery.

This is the shared engine behind matrix subspaces, centralizer solves and the
derivation-space kernel.  Vectors are dicts mapping coordinate index to a
nonzero raw field value.  An ``Echelon`` keeps a reduced row echelon basis:
pivot entries are 1, every pivot column is zeroed in all other rows, and rows
are keyed by their pivot column, so two echelons are equal exactly when they
describe the same subspace.
"""

from __future__ import annotations

from typing import Dict, Iterable, List

from .fields import Field

Vec = Dict[int, object]


class Echelon:
    """A reduced row echelon basis over an exact field.

    Mutable while being built (via :meth:`insert`); treated as frozen
    afterwards by the higher-level wrappers.
    """

    __slots__ = ("field", "width", "rows", "_occ")

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        # pivot column -> row (dict col -> nonzero raw value, row[pivot] == 1)
        self.rows: Dict[int, Vec] = {}
        # column -> set of pivot columns whose rows touch it
        self._occ: Dict[int, set] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivot_cols(self) -> List[int]:
        return sorted(self.rows)

    def vectors(self) -> List[Vec]:
        """Basis rows in pivot order.  Treat the returned dicts as read-only."""
        return [self.rows[c] for c in sorted(self.rows)]

    def reduce(self, vec: Vec) -> Vec:
        """Residual of ``vec`` after subtracting its projection onto the basis.

        Single pass suffices: stored rows never contain another row's pivot
        column, so a subtraction cannot reintroduce an already-cleared pivot.
        """
        field = self.field
        sub, mul, zero = field.sub, field.mul, field.zero
        v = {c: val for c, val in vec.items() if val != zero}
        hits = [c for c in v if c in self.rows]
        for c in hits:
            coef = v.get(c)
            if coef is None:
                continue
            for col, val in self.rows[c].items():
                nv = sub(v.get(col, zero), mul(coef, val))
                if nv == zero:
                    v.pop(col, None)
                else:
                    v[col] = nv
        return v

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Vec) -> bool:
        """Add a vector to the span.  Returns True when the dimension grew."""
        field = self.field
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        if c < 0 or max(v) >= self.width:
            raise ValueError("vector coordinate out of range")
        pinv = field.inv(v[c])
        one = field.one
        row = {col: (one if col == c else field.mul(pinv, val)) for col, val in v.items()}
        # Clear the new pivot column from every stored row that touches it.
        for pc in list(self._occ.get(c, ())):
            self._axpy(self.rows[pc], pc, row, self.rows[pc][c])
        self.rows[c] = row
        occ = self._occ
        for col in row:
            occ.setdefault(col, set()).add(c)
        return True

    def _axpy(self, target: Vec, target_pivot: int, src: Vec, coef):
        # target -= coef * src, maintaining the occupancy index
        field = self.field
        sub, mul, zero = field.sub, field.mul, field.zero
        occ = self._occ
        for col, val in src.items():
            nv = sub(target.get(col, zero), mul(coef, val))
            if nv == zero:
                if col in target:
                    del target[col]
                    occ[col].discard(target_pivot)
            else:
                if col not in target:
                    occ.setdefault(col, set()).add(target_pivot)
                target[col] = nv

    def insert_all(self, vecs: Iterable[Vec]) -> int:
        grew = 0
        for v in vecs:
            if self.insert(v):
                grew += 1
        return grew

    def copy(self) -> "Echelon":
        dup = Echelon(self.field, self.width)
        dup.rows = {c: dict(r) for c, r in self.rows.items()}
        dup._occ = {col: set(s) for col, s in self._occ.items()}
        return dup

    def __eq__(self, other):
        if not isinstance(other, Echelon):
            return NotImplemented
        return (
            self.field == other.field
            and self.width == other.width
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.width, tuple(sorted(self.rows))))

    def __repr__(self):
        return f"Echelon(dim={self.dim}, width={self.width}, field={self.field.label})"


def kernel_basis(constraints: Iterable[Vec], width: int, field: Field) -> List[Vec]:
    """Basis of the solution space of a homogeneous sparse linear system.

    ``constraints`` are rows c with the meaning  sum_j c[j] * x[j] = 0.
    The result assigns 1 to each free column of the row-reduced system and
    back-substitutes the pivots.
    """
    ech = Echelon(field, width)
    for row in constraints:
        if row:
            ech.insert(row)
    neg = field.neg
    one = field.one
    pivots = ech.rows
    basis: List[Vec] = []
    for f in range(width):
        if f in pivots:
            continue
        v: Vec = {f: one}
        for p, row in pivots.items():
            coef = row.get(f)
            if coef is not None:
                v[p] = neg(coef)
        basis.append(v)
    return basis


def echelon_from(vecs: Iterable[Vec], width: int, field: Field) -> Echelon:
    ech = Echelon(field, width)
    ech.insert_all(vecs)
    return ech
