"""Prime-field arithmetic with verified power-of-two roots of unity.

Vectors throughout the package are plain lists of canonical ints in
``[0, p)``; :class:`FieldElement` is the scalar-level API.
"""

from __future__ import annotations

from typing import Sequence


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def _factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p.

    ``generator`` must generate the full multiplicative group; it is
    re-verified against the factorization of ``p - 1`` on construction.
    """

    def __init__(self, modulus: int, generator: int, name: str | None = None):
        if modulus <= 2 or not _is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not an odd prime")
        p = modulus
        k = 0
        while (p - 1) % (1 << (k + 1)) == 0:
            k += 1
        self.modulus = p
        self.two_adicity = k
        g = generator % p
        if g == 0 or pow(g, p - 1, p) != 1 or any(
            pow(g, (p - 1) // q, p) == 1 for q in _factor(p - 1)
        ):
            raise ValueError(f"{generator} does not generate F_{p}^*")
        self.generator = g
        self.name = name or f"F{p}"

    # -- element construction --

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("PrimeField", self.modulus))

    def __repr__(self):
        return f"PrimeField({self.modulus})"

    # -- int-level helpers used by the vector code --

    def inv_int(self, x: int) -> int:
        x %= self.modulus
        if x == 0:
            raise ZeroDivisionError("inversion of zero")
        return pow(x, self.modulus - 2, self.modulus)

    def batch_inv(self, xs: Sequence[int]) -> list[int]:
        """Invert every entry with one field inversion (prefix products)."""
        p = self.modulus
        n = len(xs)
        if n == 0:
            return []
        prefix = [0] * n
        acc = 1
        for i, x in enumerate(xs):
            if x % p == 0:
                raise ZeroDivisionError(f"batch_inverse: zero at index {i}")
            prefix[i] = acc
            acc = acc * x % p
        inv = pow(acc, p - 2, p)
        out = [0] * n
        for i in range(n - 1, -1, -1):
            out[i] = inv * prefix[i] % p
            inv = inv * xs[i] % p
        return out

    def root_of_unity_int(self, order: int) -> int:
        if order < 1 or order & (order - 1):
            raise ValueError(f"root order {order} is not a power of two")
        if order > (1 << self.two_adicity):
            raise ValueError(
                f"root order {order} exceeds 2^{self.two_adicity} for F_{self.modulus}"
            )
        return pow(self.generator, (self.modulus - 1) // order, self.modulus)

    def root_of_unity(self, order: int) -> FieldElement:
        """Primitive ``order``-th root of unity, ``g^((p-1)/order)``."""
        return FieldElement(self.root_of_unity_int(order), self)

    def random_vector(self, rng, length: int) -> list[int]:
        # rng: numpy Generator
        return [int(v) for v in rng.integers(0, self.modulus, size=length)]


class FieldElement:
    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = int(value) % field.modulus
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.modulus != self.field.modulus:
                raise FieldMismatchError(
                    f"F_{self.field.modulus} vs F_{other.field.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * self.field.inv_int(o))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        # pow(0, 0) == 1 by convention
        return self._new(pow(self.value, e, self.field.modulus))

    def inv(self) -> FieldElement:
        return self._new(self.field.inv_int(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.modulus == other.field.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.field.modulus, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.modulus})"


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inv()


def batch_inverse(xs: Sequence[FieldElement]) -> list[FieldElement]:
    """Element-wise inverses; raises ``ZeroDivisionError`` naming the zero's index."""
    if not xs:
        return []
    field = xs[0].field
    for x in xs:
        if x.field != field:
            raise FieldMismatchError("batch_inverse over mixed fields")
    return [field(v) for v in field.batch_inv([x.value for x in xs])]


# Generators found offline by exhaustive order check against p-1's factorization.
TEST17 = PrimeField(17, 3, name="test17")
DESK = PrimeField(2013265921, 31, name="desk")  # 15 * 2^27 + 1

FIELDS = {"test17": TEST17, "desk": DESK}


def field_by_modulus(p: int) -> PrimeField:
    for f in FIELDS.values():
        if f.modulus == p:
            return f
    raise ValueError(f"no built-in field with modulus {p}")
