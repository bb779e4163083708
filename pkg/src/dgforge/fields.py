"""Exact coefficient fields: the rationals and prime fields.

Scalars are plain Python objects -- `fractions.Fraction` over Q (always in
lowest terms with positive denominator) and ints in [0, p) over F_p.  The
field object supplies the operations that the raw scalar type cannot
(inverses mod p, parsing, normalisation), so matrices and algebras can stay
field-generic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; concrete fields are QQ and GF(p)."""

    char: int

    def parse(self, value):
        """Parse a JSON-friendly value (int, 'a/b' string, Fraction) into a
        normalised scalar of this field."""
        raise NotImplementedError

    def to_json(self, a):
        raise NotImplementedError


class RationalField(Field):
    char = 0

    def __repr__(self):
        return "QQ"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

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
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def parse(self, value):
        if isinstance(value, bool):
            raise ValueError(f"not a rational scalar: {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise ValueError(f"not a rational scalar: {value!r}")

    def to_json(self, a):
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.char = p

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, value):
        if isinstance(value, bool):
            raise ValueError(f"not a scalar mod {self.p}: {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            f = Fraction(value)
            den = f.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image mod {self.p}")
            return (f.numerator * pow(den, self.p - 2, self.p)) % self.p
        raise ValueError(f"not a scalar mod {self.p}: {value!r}")

    def to_json(self, a):
        return int(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatch(f"{a!r} vs {b!r}")
    return a


def field_from_json(tag) -> Field:
    """'Q' -> QQ, {'Fp': p} -> GF(p)."""
    if tag == "Q":
        return QQ
    if isinstance(tag, dict) and set(tag) == {"Fp"}:
        return GF(int(tag["Fp"]))
    raise ValueError(f"unknown field tag: {tag!r}")


def field_to_json(f: Field):
    if isinstance(f, RationalField):
        return "Q"
    if isinstance(f, PrimeField):
        return {"Fp": f.p}
    raise ValueError(f"unserialisable field: {f!r}")
