"""Finite divisibility chains of matrix algebras with unital embeddings.

A ``Tower`` is a chain n_1 | n_2 | ... | n_r of matrix sizes over one field;
each level embeds unitally into the next as a |-> a (x) 1.  Towers stand in
for locally matrix algebras at desk scale: the associated Steinitz number is
the lcm of the level sizes, and an intended infinite exponent is expressed by
the optional ``limit`` annotation (every level size must divide it).

Level indices are 0-based; reports speak in level sizes.

Tower configs cross the CLI boundary as JSON:
``{"field": "Q"|"Fp:3", "sizes": [3, 6, 12], "limit": "3*2^inf"}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Sequence

from .fields import Field, PrimeField, parse_field_label
from .matrices import Matrix, matrix_unit
from .steinitz import SteinitzNumber, is_prime, lcm_all
from .subspaces import MatSubspace, plus_scalars, sl


class Tower:
    """A validated divisibility chain of matrix sizes over one field."""

    __slots__ = ("field", "sizes", "limit")

    def __init__(self, field: Field, sizes: Sequence[int], limit: Optional[SteinitzNumber] = None):
        sizes = tuple(int(s) for s in sizes)
        if not sizes:
            raise ValueError("a tower needs at least one level")
        for s in sizes:
            if s < 1:
                raise ValueError(f"level sizes must be >= 1, got {s}")
        for a, b in zip(sizes, sizes[1:]):
            if not a < b:
                raise ValueError(f"sizes must be strictly increasing, got {a} before {b}")
            if b % a != 0:
                raise ValueError(f"broken divisibility chain: {a} does not divide {b}")
        if limit is not None:
            for s in sizes:
                if not SteinitzNumber.from_int(s).divides(limit):
                    raise ValueError(f"level size {s} does not divide the declared limit {limit}")
        self.field = field
        self.sizes = sizes
        self.limit = limit

    @property
    def levels(self) -> int:
        return len(self.sizes)

    def steinitz_number(self) -> SteinitzNumber:
        """lcm of the level sizes; for a chain this is the top size."""
        return lcm_all(SteinitzNumber.from_int(s) for s in self.sizes)

    def element(self, level: int, value: Matrix) -> "TowerElement":
        if not (0 <= level < self.levels):
            raise ValueError(f"level {level} out of range (tower has {self.levels} levels)")
        if value.field != self.field:
            raise ValueError(f"field mismatch: tower over {self.field.label}, matrix over {value.field.label}")
        if value.n != self.sizes[level]:
            raise ValueError(f"matrix size {value.n} does not match level size {self.sizes[level]}")
        return TowerElement(self, level, value)

    def lift(self, elem: "TowerElement", to_level: int) -> "TowerElement":
        """Lift along the chain by iterated unital embeddings a |-> a (x) 1."""
        if elem.tower is not self:
            raise ValueError("element belongs to a different tower")
        if not (0 <= to_level < self.levels):
            raise ValueError(f"level {to_level} out of range")
        if to_level < elem.level:
            raise ValueError(f"cannot lift backwards from level {elem.level} to {to_level}")
        value = elem.value
        for lv in range(elem.level, to_level):
            value = value.embed(self.sizes[lv + 1] // self.sizes[lv])
        return TowerElement(self, to_level, value)

    def to_json(self) -> dict:
        return {
            "field": self.field.label,
            "sizes": list(self.sizes),
            "limit": str(self.limit) if self.limit is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Tower":
        field = parse_field_label(data["field"])
        limit = data.get("limit")
        limit_sn = SteinitzNumber.parse(limit) if limit else None
        return cls(field, data["sizes"], limit_sn)

    def __repr__(self):
        lim = f", limit={self.limit}" if self.limit is not None else ""
        return f"Tower({self.field.label}, sizes={list(self.sizes)}{lim})"


@dataclass(frozen=True)
class TowerElement:
    tower: Tower
    level: int
    value: Matrix

    @property
    def size(self) -> int:
        return self.tower.sizes[self.level]

    def lift(self, to_level: int) -> "TowerElement":
        return self.tower.lift(self, to_level)


def in_commutator_plus_scalars(elem: TowerElement) -> bool:
    """Membership of the element in sl(n) + F*1 at its own level."""
    space = plus_scalars(sl(elem.tower.field, elem.size))
    return space.contains(elem.value)


@dataclass
class LevelExclusion:
    size: int
    ratio: int
    trace: str
    excluded: bool

    def to_json(self) -> dict:
        return {"size": self.size, "ratio": self.ratio, "trace": self.trace, "excluded": self.excluded}


@dataclass
class NonmembershipReport:
    """Per-level exclusion ledger for a trace-nonzero witness lifted up a tower.

    The witness sits in the level of size p^k; at every level of size m the
    lifted trace is tr(a) * (m / p^k) mod p, and exclusion from sl(m) + F*1 is
    asserted by exact subspace membership, not just the trace shortcut.
    """

    p: int
    k: int
    witness: Matrix
    levels: List[LevelExclusion] = dataclass_field(default_factory=list)

    @property
    def all_excluded(self) -> bool:
        return all(entry.excluded for entry in self.levels)

    def to_json(self) -> dict:
        return {
            "check": "nonmembership_witness",
            "params": {"p": self.p, "k": self.k},
            "witness": self.witness.to_json(),
            "levels": [entry.to_json() for entry in self.levels],
            "pass": self.all_excluded,
        }


def nonmembership_witness(tower: Tower, p: int, k: int, witness: Optional[Matrix] = None) -> NonmembershipReport:
    """Lift a trace-nonzero witness from the p^k level and verify exclusion.

    Preconditions: the tower lives over F_p with p an odd prime, one level has
    size exactly p^k, and every level of size >= p^k has p-adic valuation
    exactly k.  The witness defaults to e_11.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not isinstance(tower.field, PrimeField) or tower.field.p != p:
        raise ValueError(f"tower must live over Fp:{p}, got {tower.field.label}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"exponent k must be an integer >= 1, got {k!r}")
    pk = p ** k
    if pk not in tower.sizes:
        raise ValueError(f"no tower level has size p^k = {pk}")
    base_level = tower.sizes.index(pk)
    for m in tower.sizes:
        if m < pk:
            continue
        nu = 0
        mm = m
        while mm % p == 0:
            mm //= p
            nu += 1
        if nu != k:
            raise ValueError(f"tower inconsistent with nu_{p} = {k}: level size {m} has valuation {nu}")
    field = tower.field
    if witness is None:
        witness = matrix_unit(field, pk, 1, 1)
    else:
        if witness.field != field or witness.n != pk:
            raise ValueError(f"witness must be a {pk}x{pk} matrix over {field.label}")
    if witness.trace().is_zero():
        raise ValueError("witness must have nonzero trace")
    report = NonmembershipReport(p=p, k=k, witness=witness)
    base = tower.element(base_level, witness)
    for level in range(base_level, tower.levels):
        lifted = base.lift(level)
        excluded = not in_commutator_plus_scalars(lifted)
        report.levels.append(
            LevelExclusion(
                size=tower.sizes[level],
                ratio=tower.sizes[level] // pk,
                trace=str(lifted.value.trace()),
                excluded=excluded,
            )
        )
    return report


@dataclass
class AbsorptionReport:
    """Containment ledger: every unit of a low level lands in sl at a higher level."""

    p: int
    from_size: int
    to_size: int
    ratio: int
    units_checked: int
    failures: List[str]

    @property
    def all_contained(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": "absorption_witness",
            "params": {"p": self.p, "from_size": self.from_size, "to_size": self.to_size, "ratio": self.ratio},
            "units_checked": self.units_checked,
            "failures": list(self.failures),
            "pass": self.all_contained,
        }


def absorption_witness(tower: Tower, p: int, i: int, j: int) -> AbsorptionReport:
    """Verify that the level-i algebra lifts into the trace-zero part of level j.

    Requires p | (n_j / n_i) over F_p: then every lifted basis unit has trace
    tr(e_ab) * (n_j / n_i) = 0 mod p and is checked, one by one, for membership
    in sl(n_j).
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not isinstance(tower.field, PrimeField) or tower.field.p != p:
        raise ValueError(f"tower must live over Fp:{p}, got {tower.field.label}")
    if not (0 <= i < j < tower.levels):
        raise ValueError(f"need levels 0 <= i < j < {tower.levels}, got i={i}, j={j}")
    ni, nj = tower.sizes[i], tower.sizes[j]
    ratio = nj // ni
    if ratio % p != 0:
        raise ValueError(f"p = {p} does not divide the level ratio {nj}/{ni} = {ratio}")
    field = tower.field
    target: MatSubspace = sl(field, nj)
    failures = []
    count = 0
    for a in range(1, ni + 1):
        for b in range(1, ni + 1):
            unit = matrix_unit(field, ni, a, b)
            lifted = tower.lift(tower.element(i, unit), j).value
            count += 1
            if not lifted.trace().is_zero():
                failures.append(f"e_{a}{b}: lifted trace {lifted.trace()} != 0")
            elif not target.contains(lifted):
                failures.append(f"e_{a}{b}: lift escapes the trace-zero subspace")
    return AbsorptionReport(p=p, from_size=ni, to_size=nj, ratio=ratio,
                            units_checked=count, failures=failures)
