"""Exact modular arithmetic.

p-adic valuations, inverses modulo prime powers, and classification of the
closed subgroup of Z_2^* generated by a finite list of units, certified at a
finite 2-adic precision.  All integers are arbitrary precision; nothing here
wraps around silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import DomainError, NotAUnitError, NotPrimeError, ParseError, PrecisionError

INFINITY = math.inf


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for desk-scale moduli."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_valuation(n: int, p: int) -> Union[int, float]:
    """Largest h with p^h dividing n, or infinity for n = 0."""
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if n == 0:
        return INFINITY
    n = abs(n)
    h = 0
    while n % p == 0:
        n //= p
        h += 1
    return h


@dataclass(frozen=True)
class PrimePower:
    """A modulus p^k with p prime and k >= 1."""

    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrimeError(f"p = {self.p} is not prime")
        if self.k < 1:
            raise DomainError(f"exponent k = {self.k} must be >= 1")

    @property
    def value(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        return f"{self.p}^{self.k}"

    @classmethod
    def from_value(cls, m: int) -> "PrimePower":
        """Factor m as p^k; fails if m is not a prime power."""
        if m < 2:
            raise DomainError(f"{m} is not a prime power")
        p = 2
        while p * p <= m:
            if m % p == 0:
                break
            p += 1
        else:
            p = m
        k = 0
        rest = m
        while rest % p == 0:
            rest //= p
            k += 1
        if rest != 1:
            raise DomainError(f"{m} is not a prime power")
        return cls(p, k)

    @classmethod
    def parse(cls, text: str) -> "PrimePower":
        """Accept either "p^k" or the plain integer value."""
        text = text.strip()
        if "^" in text:
            base, _, exp = text.partition("^")
            try:
                return cls(int(base), int(exp))
            except ValueError as e:
                raise ParseError(f"bad prime power {text!r}") from e
        try:
            value = int(text)
        except ValueError as e:
            raise ParseError(f"bad prime power {text!r}") from e
        try:
            return cls.from_value(value)
        except DomainError:
            raise DomainError(f"{text!r} is not a prime power")


def inv_mod(a: int, m: Union[int, PrimePower]) -> int:
    """The unit b with a*b = 1 modulo m."""
    modulus = m.value if isinstance(m, PrimePower) else int(m)
    if modulus < 2:
        raise DomainError(f"modulus {modulus} must be >= 2")
    if math.gcd(a, modulus) != 1:
        raise NotAUnitError(f"{a} is not a unit mod {modulus}")
    return pow(a, -1, modulus)


# Kinds of closed subgroups of Z_2^* = {+-1} x (1 + 4 Z_2).
TRIVIAL = "trivial"
U_PAREN = "U_paren"  # <1 + 2^f>
U_BRACKET = "U_bracket"  # <-1 + 2^f>
PM1_TIMES_U_PAREN = "pm1_times_U_paren"  # {+-1} x <1 + 2^f>

_KINDS = (TRIVIAL, U_PAREN, U_BRACKET, PM1_TIMES_U_PAREN)


@dataclass(frozen=True)
class U2Descriptor:
    """A closed subgroup of Z_2^*.

    ``f`` is the defining exponent, an integer >= 2 or None for f = infinity
    under the convention 2^infinity = 0 (so U_paren(None) would be trivial and
    is canonicalized to kind "trivial", and pm1_times_U_paren(None) is {+-1}).
    """

    kind: str
    f: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == TRIVIAL and self.f is not None:
            raise DomainError("trivial subgroup carries no exponent")
        if self.kind in (U_PAREN, U_BRACKET) and self.f is None:
            raise DomainError(f"{self.kind} requires a finite exponent")
        if self.f is not None and self.f < 2:
            raise DomainError(f"exponent f = {self.f} must be >= 2")

    def __str__(self) -> str:
        if self.kind == TRIVIAL:
            return "1"
        if self.kind == U_PAREN:
            return f"U2^({self.f})"
        if self.kind == U_BRACKET:
            return f"U2^[{self.f}]"
        if self.f is None:
            return "{+-1}"
        return f"{{+-1}} x U2^({self.f})"

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "f": self.f}


def classify_z2_subgroup(gens: Iterable[int], k: int) -> U2Descriptor:
    """Classify the closed subgroup of Z_2^* generated by ``gens``.

    Generators are exact integers standing for 2-adic units; the integers
    1 and -1 denote exactly those elements.  The descriptor is certified at
    precision 2^k: any generator other than +-1 that is congruent to +-1
    mod 2^k, and any defining exponent >= k, raises ``PrecisionError``
    (raise k and retry).  Never extrapolates beyond the given precision.
    """
    if k < 4:
        raise DomainError(f"precision k = {k} must be >= 4")
    plus_exponents = []  # valuations f of generators in 1 + 4 Z_2
    minus = []  # generators with sign component -1, including -1 itself
    for g in gens:
        if g % 2 == 0:
            raise NotAUnitError(f"{g} is not a 2-adic unit")
        if g == 1:
            continue
        if g == -1:
            minus.append(g)
            continue
        sign = 1 if g % 4 == 1 else -1
        f = p_valuation(sign * g - 1, 2)
        if f >= k:
            raise PrecisionError(
                f"generator {g} is congruent to {sign} mod 2^{k}; "
                f"raise the precision to classify it"
            )
        if sign == 1:
            plus_exponents.append(f)
        else:
            minus.append(g)

    # Valuation a of the projection of the subgroup to 1 + 4 Z_2 = 2^a Z_2
    # (infinity for the trivial projection).  Sign -1 generators contribute
    # through pairwise products, which land in 1 + 4 Z_2.
    candidates = list(plus_exponents)
    for i in range(len(minus)):
        for j in range(i, len(minus)):
            candidates.append(p_valuation(minus[i] * minus[j] - 1, 2))
    a = min(candidates, default=INFINITY)
    if a != INFINITY and a >= k:
        raise PrecisionError(
            f"the subgroup's 1+4Z_2 part has exponent {a} >= precision {k}"
        )

    if not minus:
        if a == INFINITY:
            return U2Descriptor(TRIVIAL)
        return U2Descriptor(U_PAREN, int(a))

    # Some generator has sign -1.  If its 1+4Z_2 coordinate already lies in
    # the projection, the sign splits off as a direct {+-1} factor; otherwise
    # the subgroup is the procyclic <-1 + 2^f0>.
    g0 = minus[0]
    f0 = p_valuation(-g0 - 1, 2)
    if f0 >= a:
        return U2Descriptor(PM1_TIMES_U_PAREN, None if a == INFINITY else int(a))
    assert a == f0 + 1, "squares of a sign--1 generator bound the projection"
    return U2Descriptor(U_BRACKET, int(f0))
