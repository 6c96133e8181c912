"""Exact coefficient rings: the integers, the rationals and Z/nZ.

Raw coefficient values are plain Python numbers (``int`` or ``Fraction``)
kept in canonical form by :class:`RingSpec`; the algebra code works on these
directly. :class:`RingElem` is the checked public wrapper.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import RingMismatchError, ScalarParseError

Scalar = Union[int, Fraction]

_SCALAR_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")

INTEGERS = "integers"
RATIONALS = "rationals"
INTEGERS_MOD_N = "integers-mod-n"


def _clean_sign(text: str) -> str:
    return text.strip().replace("−", "-")


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, INTEGERS_MOD_N):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == INTEGERS_MOD_N:
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/n needs a modulus n >= 2")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} takes no modulus")

    @classmethod
    def from_name(cls, name: str) -> RingSpec:
        """Accepts ``Z``, ``Q`` or ``Z/n``."""
        name = name.strip()
        if name == "Z":
            return ZZ
        if name == "Q":
            return QQ
        m = re.fullmatch(r"Z/(\d+)", name)
        if m:
            return cls(INTEGERS_MOD_N, int(m.group(1)))
        raise ValueError(f"unknown ring {name!r}; expected Z, Q or Z/n")

    @property
    def name(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        return f"Z/{self.modulus}"

    def __str__(self):
        return self.name

    # raw value arithmetic

    def normalize(self, v) -> Scalar:
        if self.kind == RATIONALS:
            v = Fraction(v)
            return v.numerator if v.denominator == 1 else v
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ScalarParseError(f"fraction {v} is not an element of {self.name}")
            v = v.numerator
        if not isinstance(v, int):
            raise TypeError(f"cannot coerce {v!r} into {self.name}")
        if self.kind == INTEGERS_MOD_N:
            return v % self.modulus
        return v

    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def add(self, x, y):
        return self.normalize(x + y)

    def sub(self, x, y):
        return self.normalize(x - y)

    def mul(self, x, y):
        return self.normalize(x * y)

    def neg(self, x):
        return self.normalize(-x)

    def is_zero(self, x) -> bool:
        return x == 0

    def parse(self, text: str) -> Scalar:
        m = _SCALAR_RE.match(_clean_sign(text))
        if not m:
            raise ScalarParseError(f"malformed scalar literal {text!r}")
        sign, num, den = m.groups()
        n = int(num)
        if sign == "-":
            n = -n
        if den is None:
            return self.normalize(n)
        if int(den) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        if self.kind != RATIONALS:
            raise ScalarParseError(f"fraction literal {text!r} not allowed over {self.name}")
        return self.normalize(Fraction(n, int(den)))

    def format(self, x) -> str:
        return str(x)

    def sample_nonzero(self, rng, size: int = 5) -> Scalar:
        """Random nonzero scalar with small numerator/denominator."""
        while True:
            if self.kind == RATIONALS:
                v = Fraction(rng.randint(-size, size), rng.randint(1, 3))
            else:
                v = rng.randint(-size, size)
            v = self.normalize(v)
            if v != 0:
                return v

    def elem(self, value) -> RingElem:
        if isinstance(value, str):
            return RingElem(self, self.parse(value))
        return RingElem(self, self.normalize(value))


ZZ = RingSpec(INTEGERS)
QQ = RingSpec(RATIONALS)


def zmod(n: int) -> RingSpec:
    return RingSpec(INTEGERS_MOD_N, n)


@dataclass(frozen=True)
class RingElem:
    spec: RingSpec
    value: Scalar

    def _check(self, other) -> RingElem:
        if not isinstance(other, RingElem):
            other = self.spec.elem(other)
        if other.spec != self.spec:
            raise RingMismatchError(f"cannot combine elements of {self.spec} and {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return RingElem(self.spec, self.spec.mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.spec, self.spec.neg(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.spec.format(self.value)


def ring_arith(op: str, x: RingElem, y: RingElem | None = None) -> RingElem:
    if op == "neg":
        if y is not None:
            raise ValueError("neg is unary")
        return -x
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if x.spec != y.spec:
        raise RingMismatchError(f"cannot combine elements of {x.spec} and {y.spec}")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown ring operation {op!r}")


def parse_scalar(text: str, spec: RingSpec) -> RingElem:
    return RingElem(spec, spec.parse(text))
