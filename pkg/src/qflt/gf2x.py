"""Binary-polynomial and GF(2^n) field arithmetic.

Polynomials over GF(2) are held as Python integers: bit i is the
coefficient of x^i, so hex literals read in the usual ECC convention
(x^8 + x^4 + x^3 + x + 1 == 0x11B).  Everything here is classical; the
quantum constructions elsewhere in the package are checked against
these routines.
"""

from __future__ import annotations

from dataclasses import dataclass


def _coerce(p) -> int:
    """Accept a BinaryPoly or a plain non-negative int, return the bit mask."""
    if isinstance(p, BinaryPoly):
        return p.bits
    if isinstance(p, int):
        if p < 0:
            raise ValueError("polynomial bit mask must be non-negative")
        return p
    raise TypeError(f"expected BinaryPoly or int, got {type(p).__name__}")


class BinaryPoly:
    """Immutable polynomial over GF(2), backed by an integer bit mask."""

    __slots__ = ("bits",)

    def __init__(self, bits=0):
        object.__setattr__(self, "bits", _coerce(bits))

    def __setattr__(self, name, value):
        raise AttributeError("BinaryPoly is immutable")

    @classmethod
    def from_exponents(cls, *exponents: int) -> "BinaryPoly":
        mask = 0
        for e in exponents:
            if e < 0:
                raise ValueError("exponent must be non-negative")
            mask |= 1 << e
        return cls(mask)

    @property
    def degree(self):
        """Degree of the polynomial, or None for the zero polynomial."""
        if self.bits == 0:
            return None
        return self.bits.bit_length() - 1

    def coefficient(self, i: int) -> int:
        return (self.bits >> i) & 1

    def exponents(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.bits.bit_length()) if (self.bits >> i) & 1)

    def __index__(self) -> int:
        return self.bits

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, BinaryPoly):
            return self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __xor__(self, other) -> "BinaryPoly":
        return BinaryPoly(self.bits ^ _coerce(other))

    __add__ = __xor__
    __sub__ = __xor__

    def __mul__(self, other) -> "BinaryPoly":
        """Carry-less product in GF(2)[x]; no modular reduction."""
        return BinaryPoly(_clmul(self.bits, _coerce(other)))

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            if e == 0:
                terms.append("1")
            elif e == 1:
                terms.append("x")
            else:
                terms.append(f"x^{e}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"BinaryPoly({hex(self.bits)})"


def _clmul(a: int, b: int) -> int:
    """Carry-less (XOR) multiplication of two bit masks."""
    result = 0
    while b:
        low = b & -b
        result ^= a << (low.bit_length() - 1)
        b ^= low
    return result


def _polydivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polymod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _polymod(_clmul(a, b), m)


def _inv_eea(a: int, m: int) -> int:
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1:
        q, r = _polydivmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 ^ _clmul(q, t1)
    if r0 != 1:
        raise ValueError("element is not invertible modulo the given polynomial")
    return t0


def _is_irreducible(m: int) -> bool:
    n = m.bit_length() - 1
    if n < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    # m of degree n is reducible iff it has an irreducible factor of
    # degree d <= n/2, which would divide x^(2^d) + x.
    r = 2  # the polynomial x
    for _ in range(n // 2):
        r = _mulmod(r, r, m)
        if _polygcd(r ^ 2, m) != 1:
            return False
    return True


def is_irreducible(m) -> bool:
    """True iff m has no nontrivial factor over GF(2).

    Decided by gcd tests against x^(2^i) + x for i up to deg(m)/2.
    """
    return _is_irreducible(_coerce(m))


@dataclass(frozen=True)
class FieldSpec:
    """Field GF(2^n) defined by an irreducible modulus of degree n."""

    n: int
    modulus: BinaryPoly
    name: str | None = None

    def __post_init__(self):
        if not isinstance(self.modulus, BinaryPoly):
            object.__setattr__(self, "modulus", BinaryPoly(self.modulus))
        if self.n < 2:
            raise ValueError("field degree must be at least 2")
        if self.modulus.degree != self.n:
            raise ValueError(
                f"modulus degree {self.modulus.degree} does not match n={self.n}"
            )
        if not _is_irreducible(self.modulus.bits):
            raise ValueError(f"modulus {self.modulus!r} is reducible")

    @property
    def mask(self) -> int:
        """Bit mask of all n element bits."""
        return (1 << self.n) - 1

    def __repr__(self) -> str:
        label = self.name or f"GF(2^{self.n})"
        return f"FieldSpec({label}, modulus={hex(self.modulus.bits)})"


def _check_element(a: int, spec: FieldSpec, what: str = "operand") -> int:
    if a.bit_length() > spec.n:
        raise ValueError(f"{what} degree exceeds field degree {spec.n}")
    return a


def mulmod(a, b, spec: FieldSpec) -> BinaryPoly:
    """Product a*b mod m(x): schoolbook multiplication followed by reduction."""
    av = _check_element(_coerce(a), spec)
    bv = _check_element(_coerce(b), spec)
    return BinaryPoly(_mulmod(av, bv, spec.modulus.bits))


def squaremod(a, spec: FieldSpec) -> BinaryPoly:
    """Square a^2 mod m(x); equals mulmod(a, a, spec)."""
    av = _check_element(_coerce(a), spec)
    return BinaryPoly(_mulmod(av, av, spec.modulus.bits))


def inv_eea(a, spec: FieldSpec) -> BinaryPoly:
    """Multiplicative inverse by the extended Euclidean algorithm."""
    av = _check_element(_coerce(a), spec)
    if av == 0:
        raise ValueError("zero has no inverse")
    return BinaryPoly(_inv_eea(av, spec.modulus.bits))


def inv_flt_classical(a, spec: FieldSpec) -> BinaryPoly:
    """Inverse a^(2^n - 2) computed as the product of a^(2^j) for j = 1..n-1."""
    av = _check_element(_coerce(a), spec)
    if av == 0:
        raise ValueError("zero has no inverse")
    m = spec.modulus.bits
    power = _mulmod(av, av, m)  # a^2
    acc = power
    for _ in range(2, spec.n):
        power = _mulmod(power, power, m)
        acc = _mulmod(acc, power, m)
    return BinaryPoly(acc)
