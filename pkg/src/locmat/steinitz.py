"""Arithmetic of Steinitz (supernatural) numbers.

A Steinitz number is a formal product  prod_p p^(r_p)  over primes p with
exponents r_p drawn from {0, 1, 2, ...} and the absorbing symbol ``INF``.
Only finitely many exponents may be nonzero in this representation, which is
enough for every number arising as the lcm of a divisibility chain of matrix
sizes.  Values are immutable and canonical: zero exponents are dropped at
construction time, so structural equality is semantic equality.

Text grammar (the stable wire format)::

    steinitz = "1" | factor ("*" factor)*
    factor   = prime ["^" (nat | "inf")]

An omitted exponent means 1; an explicit exponent 0 is accepted and dropped.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union


class _Infinity:
    """The absorbing exponent: larger than every natural, t + inf = inf."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    # Total order against ints and itself.
    def __lt__(self, other):
        if isinstance(other, (int, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, _Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, _Infinity)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__


INF = _Infinity()

Exponent = Union[int, _Infinity]


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (inputs stay small)."""
    if not isinstance(n, int) or n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_exponent(e) -> Exponent:
    if e is INF:
        return e
    if isinstance(e, int) and not isinstance(e, bool) and e >= 0:
        return e
    raise ValueError(f"exponent must be a natural number or INF, got {e!r}")


def _exp_add(a: Exponent, b: Exponent) -> Exponent:
    return INF if (a is INF or b is INF) else a + b


def _exp_max(a: Exponent, b: Exponent) -> Exponent:
    return INF if (a is INF or b is INF) else max(a, b)


def _exp_le(a: Exponent, b: Exponent) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return a <= b


class SteinitzNumber:
    """Immutable finite-support map from primes to exponents in N u {INF}."""

    __slots__ = ("_factors", "_key")

    def __init__(self, factors: Mapping[int, Exponent] = ()):
        canon = {}
        for p, e in dict(factors).items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            e = _check_exponent(e)
            if e == 0:
                continue
            canon[p] = e
        self._factors = canon
        self._key = tuple(sorted(canon.items(), key=lambda kv: kv[0]))

    @classmethod
    def parse(cls, text: str) -> "SteinitzNumber":
        """Parse the grammar ``"1" | prime["^"(nat|"inf")] ("*" ...)*``."""
        s = text.strip()
        if not s:
            raise ValueError("empty Steinitz literal")
        if s == "1":
            return ONE
        factors: dict[int, Exponent] = {}
        for part in s.split("*"):
            part = part.strip()
            base_text, sep, exp_text = part.partition("^")
            base_text = base_text.strip()
            if not base_text.isdigit():
                raise ValueError(f"bad factor {part!r} in {text!r}")
            p = int(base_text)
            if not is_prime(p):
                raise ValueError(f"{p} is not prime (in {text!r})")
            if not sep:
                e: Exponent = 1
            else:
                exp_text = exp_text.strip()
                if exp_text == "inf":
                    e = INF
                elif exp_text.isdigit():
                    e = int(exp_text)
                else:
                    raise ValueError(f"bad exponent {exp_text!r} in {text!r}")
            factors[p] = _exp_add(factors.get(p, 0), e)
        return cls(factors)

    @classmethod
    def from_int(cls, n: int) -> "SteinitzNumber":
        """Prime factorization of a natural number n >= 1."""
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"from_int requires an integer >= 1, got {n!r}")
        factors: dict[int, Exponent] = {}
        m = n
        d = 2
        while d * d <= m:
            while m % d == 0:
                factors[d] = factors.get(d, 0) + 1
                m //= d
            d += 1 if d == 2 else 2
        if m > 1:
            factors[m] = factors.get(m, 0) + 1
        return cls(factors)

    @property
    def factors(self) -> dict[int, Exponent]:
        """Copy of the prime-to-exponent map (canonical, no zero exponents)."""
        return dict(self._factors)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._key)

    def nu(self, p: int) -> Exponent:
        """Exponent of the prime p (0 when p does not occur)."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return self._factors.get(p, 0)

    def __mul__(self, other: "SteinitzNumber") -> "SteinitzNumber":
        if not isinstance(other, SteinitzNumber):
            return NotImplemented
        factors = dict(self._factors)
        for p, e in other._factors.items():
            factors[p] = _exp_add(factors.get(p, 0), e)
        return SteinitzNumber(factors)

    def lcm(self, other: "SteinitzNumber") -> "SteinitzNumber":
        factors = dict(self._factors)
        for p, e in other._factors.items():
            factors[p] = _exp_max(factors.get(p, 0), e)
        return SteinitzNumber(factors)

    def divides(self, other: "SteinitzNumber") -> bool:
        return all(_exp_le(e, other._factors.get(p, 0)) for p, e in self._factors.items())

    def is_one(self) -> bool:
        return not self._factors

    def __eq__(self, other):
        if not isinstance(other, SteinitzNumber):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if not self._key:
            return "1"
        parts = []
        for p, e in self._key:
            if e == 1:
                parts.append(str(p))
            elif e is INF:
                parts.append(f"{p}^inf")
            else:
                parts.append(f"{p}^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"SteinitzNumber.parse({str(self)!r})"


ONE = SteinitzNumber()


def lcm_all(values: Iterable[SteinitzNumber]) -> SteinitzNumber:
    """Fold lcm over an iterable of Steinitz numbers; empty fold gives 1."""
    acc = ONE
    for v in values:
        acc = acc.lcm(v)
    return acc
