"""Exact fields: the rationals and finite fields of odd characteristic.

Elements are plain Python values owned by a field object: ``Fraction`` for
the rationals, and ``int`` codes in ``range(q)`` for ``GF(p**k)``.  The code
of an extension-field element is ``c0 + c1*p + ... + c_{k-1}*p**(k-1)`` where
``c0 + c1*x + ...`` is its residue modulo the defining polynomial.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .errors import FieldError

# Extension fields up to this order get log/exp and addition tables.
_TABLE_LIMIT = 1 << 16
_ADD_TABLE_LIMIT = 729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- tiny polynomial helpers over GF(p), coefficient lists low -> high ------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over the prime field GF(p)."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
    for d in primes:
        h = _psub(_ppowmod(x, p ** (n // d), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return not _psub(_ppowmod(x, p ** n, f, p), x, p)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """Common interface.  Subclasses implement the arithmetic."""

    is_finite = False
    characteristic = 0

    def __call__(self, value: Any) -> Any:
        return self.coerce(value)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int):
        return self.coerce(n)

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc


class Rationals(Field):
    """The field of rational numbers with ``Fraction`` elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self) -> str:
        return "Rationals()"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational literal {value!r}") from exc
        raise FieldError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def key(self, a):
        return a

    def random_element(self, rng: random.Random, bound: int = 5):
        return Fraction(rng.randint(-bound, bound))

    def to_json(self, a) -> str:
        return str(a)

    def from_json(self, value):
        return self.coerce(value)

    def spec_json(self) -> dict:
        return {"kind": "Q"}

    def format(self, a) -> str:
        return str(a)


class FiniteField(Field):
    """``GF(p**k)`` for an odd prime ``p`` given an irreducible modulus.

    >>> F = FiniteField(5)
    >>> F.mul(2, 3)
    1
    """

    is_finite = True

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None, allow_even: bool = False):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if p == 2 and not allow_even:
            # forms and pencils need 1/2; raw enumeration (oracles) may opt in
            raise FieldError("characteristic 2 is not supported")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            if k != 1:
                raise FieldError("extension fields need an explicit modulus")
            modulus = [0, 1]
        mod = _trim([int(c) % p for c in modulus])
        if len(mod) - 1 != k:
            raise FieldError(f"modulus has degree {len(mod) - 1}, expected {k}")
        if not is_irreducible_mod_p(mod, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        lead_inv = pow(mod[-1], -1, p)
        self.p = p
        self.k = k
        self.modulus = tuple(c * lead_inv % p for c in mod)
        self.order = p ** k
        self.characteristic = p
        self.zero = 0
        self.one = 1
        self._log = self._exp = None
        self._add_table = None
        if k > 1 and self.order <= _TABLE_LIMIT:
            self._build_tables()

    @classmethod
    def with_default_modulus(cls, p: int, k: int) -> "FiniteField":
        """Field built on the lexicographically first monic irreducible."""
        if k == 1:
            return cls(p)
        for code in range(p ** k):
            low = [(code // p ** i) % p for i in range(k)]
            if is_irreducible_mod_p(low + [1], p):
                return cls(p, k, low + [1])
        raise FieldError("no irreducible polynomial found")  # pragma: no cover

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.k}, {list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.modulus))

    # -- encoding ----------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.k)]

    def from_digits(self, digits: Sequence[int]) -> int:
        p = self.p
        low = [int(d) % p for d in digits]
        if len(low) > self.k:
            low = _pmod(low, list(self.modulus), p)
        return sum(c * p ** i for i, c in enumerate(low))

    def _poly_mul_code(self, a: int, b: int) -> int:
        prod = _pmod(_pmul(_trim(self.digits(a)), _trim(self.digits(b)), self.p),
                     list(self.modulus), self.p)
        return self.from_digits(prod)

    def _build_tables(self) -> None:
        q = self.order
        group = q - 1
        factors = _prime_factors(group)
        for g in range(2, q):
            if all(self._slow_pow(g, group // f) != 1 for f in factors):
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element")
        exp = [0] * (2 * group)
        log = [0] * q
        x = 1
        for i in range(group):
            exp[i] = x
            log[x] = i
            x = self._poly_mul_code(x, g)
        for i in range(group, 2 * group):
            exp[i] = exp[i - group]
        self._exp, self._log = exp, log
        if q <= _ADD_TABLE_LIMIT:
            self._add_table = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._poly_mul_code(result, a)
            a = self._poly_mul_code(a, a)
            e >>= 1
        return result

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.k):
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.k):
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    # -- arithmetic ----------------------------------------------------------
    def coerce(self, value):
        if isinstance(value, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(value, int):
            if self.k == 1:
                return value % self.p
            return value % self.p
        if isinstance(value, (list, tuple)):
            return self.from_digits(list(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has denominator divisible by {self.p}")
            return self.div(self.coerce(value.numerator), self.coerce(value.denominator))
        if isinstance(value, str):
            try:
                return self.coerce(Fraction(value.strip()))
            except ValueError as exc:
                raise FieldError(f"bad literal {value!r}") from exc
        raise FieldError(f"cannot coerce {value!r} into {self!r}")

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._digit_add(a, b)

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self._digit_neg(a)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mul_code(a, b)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._slow_pow(a, self.order - 2)

    def power(self, a, e: int):
        if self.k == 1:
            if e < 0:
                return pow(pow(a, -1, self.p), -e, self.p)
            return pow(a, e, self.p)
        return super().power(a, e)

    def from_int(self, n: int):
        return self.from_digits([n % self.p])

    def key(self, a):
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def random_element(self, rng: random.Random, bound: int = 0):
        return rng.randrange(self.order)

    def to_json(self, a) -> list[int]:
        return self.digits(a)

    def from_json(self, value):
        return self.coerce(value)

    def spec_json(self) -> dict:
        return {"kind": "Fp", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def format(self, a) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits(a)):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*z" if i == 1 else f"{c}*z^{i}"))
        return "+".join(terms) or "0"


Q = Rationals()


def field_from_json(obj: dict) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FieldError(f"malformed field spec {obj!r}")
    kind = obj["kind"]
    if kind == "Q":
        return Q
    if kind == "Fp":
        p = obj.get("p")
        k = obj.get("k", 1)
        modulus = obj.get("modulus")
        return FiniteField(p, k, modulus)
    raise FieldError(f"unknown field kind {kind!r}")
