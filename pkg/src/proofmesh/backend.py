"""Linearly homomorphic encodings with a pairing.

:class:`EncodingBackend` is the contract the pipeline codes against.
:class:`MockBackend` satisfies it with transparent field elements: it is
NOT hiding (an encoding reveals its scalar) and exists for testing and
for exercising the protocol without curve arithmetic.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Protocol

from .field import PrimeField

G1, G2, GT = 1, 2, 3


class EncodingBackend(Protocol):
    field: PrimeField

    def encode1(self, x: int): ...

    def encode2(self, x: int): ...

    def pair(self, a, b): ...

    def zero(self, group: int): ...

    def to_bytes(self, elem) -> bytes: ...

    def from_bytes(self, group: int, data: bytes): ...

    element_size: int


@dataclass(frozen=True)
class Enc:
    """An encoded scalar ``value`` in group ``group`` (additive notation, GT included)."""

    group: int
    value: int
    modulus: int

    def _check(self, other: Enc) -> None:
        if not isinstance(other, Enc) or other.group != self.group or other.modulus != self.modulus:
            raise TypeError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other: Enc) -> Enc:
        self._check(other)
        return Enc(self.group, (self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: Enc) -> Enc:
        self._check(other)
        return Enc(self.group, (self.value - other.value) % self.modulus, self.modulus)

    def __neg__(self) -> Enc:
        return Enc(self.group, -self.value % self.modulus, self.modulus)

    def __rmul__(self, k: int) -> Enc:
        if not isinstance(k, int):
            return NotImplemented
        return Enc(self.group, k * self.value % self.modulus, self.modulus)

    __mul__ = __rmul__

    def __repr__(self):
        return f"Enc{'12T'[self.group - 1]}({self.value})"


class MockBackend:
    """g1, g2 are the scalar 1; e(g1, g2) = 1 in GT."""

    element_size = 8

    def __init__(self, field: PrimeField):
        if field.modulus >= 1 << 64:
            raise ValueError("mock encodings serialize as 8-byte integers")
        self.field = field

    def _enc(self, group: int, x: int) -> Enc:
        return Enc(group, int(x) % self.field.modulus, self.field.modulus)

    def encode1(self, x: int) -> Enc:
        return self._enc(G1, x)

    def encode2(self, x: int) -> Enc:
        return self._enc(G2, x)

    def zero(self, group: int) -> Enc:
        return self._enc(group, 0)

    def pair(self, a: Enc, b: Enc) -> Enc:
        if a.group != G1 or b.group != G2:
            raise TypeError("pair expects (G1, G2)")
        return self._enc(GT, a.value * b.value)

    def to_bytes(self, elem: Enc) -> bytes:
        return struct.pack("<Q", elem.value)

    def from_bytes(self, group: int, data: bytes) -> Enc:
        (v,) = struct.unpack("<Q", data)
        if v >= self.field.modulus:
            raise ValueError("encoded value out of range")
        return self._enc(group, v)
