"""Exact scalar arithmetic for the ground field.

Two kinds of field are supported: the rationals (characteristic 0, values are
``fractions.Fraction`` in lowest terms) and prime fields F_p (characteristic p,
values are residues in ``range(p)``).  There is no floating point anywhere;
the simplicity criteria hinge on exact divisibility of traces and any rounding
would be meaningless.

The linear-algebra engines work on the unboxed representation values directly
through the ``Field`` methods (``add``, ``mul``, ``inv``, ...).  ``FieldElement``
is the boxed, operator-overloaded face used at the API surface.

Field labels ("Q", "Fp:3") are the stable wire format used by the CLI and the
catalog files.
"""

from __future__ import annotations

from fractions import Fraction

from .steinitz import is_prime


class Field:
    """A field specification together with raw operations on its values."""

    characteristic: int = 0
    zero = None
    one = None

    # raw arithmetic, implemented by subclasses
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def of_int(self, k: int):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def random(self, rng, max_abs: int = 9):
        """Draw a small representative value (used by seeded evidence sweeps)."""
        raise NotImplementedError

    @property
    def label(self) -> str:
        raise NotImplementedError

    def coerce(self, x):
        """Coerce an int, literal string, Fraction or FieldElement to a raw value."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError(f"field mismatch: {x.field} vs {self}")
            return x.value
        if isinstance(x, bool):
            raise ValueError("booleans are not field values")
        if isinstance(x, int):
            return self.of_int(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction) and self.characteristic == 0:
            return x
        raise ValueError(f"cannot coerce {x!r} into {self}")

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def element(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def __repr__(self):
        return self.label


class RationalField(Field):
    """The field of rational numbers, exact via arbitrary-precision Fractions."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def of_int(self, k):
        return Fraction(k)

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {text!r}") from exc

    def format(self, a):
        return str(a)

    def random(self, rng, max_abs=9):
        return Fraction(rng.randint(-max_abs, max_abs))

    @property
    def label(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """The prime field F_p; values are residues reduced into range(p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def of_int(self, k):
        return k % self.p

    def parse(self, text):
        t = text.strip()
        neg = t.startswith("-")
        if neg:
            t = t[1:]
        if not t.isdigit():
            raise ValueError(f"bad residue literal {text!r} for F_{self.p}")
        v = int(t) % self.p
        return (-v) % self.p if neg else v

    def format(self, a):
        return str(a % self.p)

    def random(self, rng, max_abs=9):
        return rng.randrange(self.p)

    @property
    def label(self):
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


Q = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field with p elements (instances are cached)."""
    field = _GF_CACHE.get(p)
    if field is None:
        field = _GF_CACHE[p] = PrimeField(p)
    return field


def parse_field_label(text: str) -> Field:
    """Parse the wire syntax "Q" or "Fp:<p>"."""
    t = text.strip()
    if t == "Q":
        return Q
    if t.startswith("Fp:"):
        body = t[3:]
        if not body.isdigit():
            raise ValueError(f"bad field label {text!r}")
        return GF(int(body))
    raise ValueError(f"bad field label {text!r} (expected 'Q' or 'Fp:<p>')")


def field_for_characteristic(char: int) -> Field:
    """The field this artifact uses for a given characteristic: Q or F_p."""
    if char == 0:
        return Q
    return GF(char)


class FieldElement:
    """A boxed field value with exact operator arithmetic."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerced(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.of_int(other)
        return None

    def __add__(self, other):
        v = self._coerced(other)
        return NotImplemented if v is None else FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerced(other)
        return NotImplemented if v is None else FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerced(other)
        return NotImplemented if v is None else FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerced(other)
        return NotImplemented if v is None else FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerced(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __rtruediv__(self, other):
        v = self._coerced(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(v, self.field.inv(self.value)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        acc = FieldElement(self.field, self.field.one)
        for _ in range(k):
            acc = acc * self
        return acc

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == self.field.zero

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.field.of_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field.label}({self.field.format(self.value)})"
