"""Finite fields GF(p^a) in a polynomial basis.

Elements are stored as coefficient tuples ``(c_0, ..., c_{a-1})`` meaning
``c_0 + c_1 x + ... + c_{a-1} x^{a-1}`` modulo the field's defining
polynomial.  The integer index of an element is the radix-p reading of its
coefficients, ``sum(c_i * p**i)``; this index is the canonical label used for
points and serialization everywhere else in the package.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

MAX_ORDER = 2 ** 20
_GENERATOR_CHECK_LIMIT = 2 ** 16


class FieldError(ValueError):
    pass


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


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, a)`` with ``q == p**a``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    a, rest = 0, q
    while rest % p == 0:
        rest //= p
        a += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, a


# -- polynomials over GF(p), low-degree-first coefficient lists ----------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num, den, p):
    num = _trim(num)
    den = _trim(den)
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) >= len(den):
        factor = num[-1] * inv_lead % p
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        num = _trim(num)
    return num


def _monic_polys(p, degree):
    """All monic polynomials of the given degree, in increasing radix-p order."""
    for low in product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p, a):
    """Smallest monic irreducible of degree a.

    Polynomials are compared by ``sum(c_i * p**i)``, i.e. reading the
    coefficient list from the leading term down.
    """
    for poly in _monic_polys(p, a):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """GF(p^a) with a fixed modulus; instances are cached per (p, a)."""

    _cache: dict = {}

    def __new__(cls, p: int, a: int = 1):
        key = (p, a)
        if key in cls._cache:
            return cls._cache[key]
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if not isinstance(a, int) or a < 1:
            raise FieldError(f"exponent must be a positive integer, got {a!r}")
        if p ** a > MAX_ORDER:
            raise FieldError(f"field order {p}^{a} exceeds supported bound {MAX_ORDER}")
        self = super().__new__(cls)
        self.p = p
        self.a = a
        self.order = p ** a
        self.modulus = smallest_irreducible(p, a)
        self._mul_cache = {}
        self._elements = None
        cls._cache[key] = self
        if self.order <= _GENERATOR_CHECK_LIMIT:
            self.generator  # fails loudly if the multiplicative group is not cyclic
        return self

    def __reduce__(self):
        return (Field, (self.p, self.a))

    def __repr__(self):
        return f"GF({self.p}^{self.a})" if self.a > 1 else f"GF({self.p})"

    # -- element construction ------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Coerce an int index, a coefficient sequence, or an element."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return self.element(value)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.a:
            raise FieldError("too many coefficients")
        return FieldElement(self, coeffs + (0,) * (self.a - len(coeffs)))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.order:
            raise FieldError(f"index {index} out of range for {self}")
        return self.elements[index]

    @property
    def elements(self) -> list:
        """All elements ordered by index."""
        if self._elements is None:
            out = []
            for i in range(self.order):
                coeffs, n = [], i
                for _ in range(self.a):
                    coeffs.append(n % self.p)
                    n //= self.p
                out.append(FieldElement(self, tuple(coeffs), i))
            self._elements = out
        return self._elements

    @property
    def zero(self) -> "FieldElement":
        return self.elements[0]

    @property
    def one(self) -> "FieldElement":
        return self.elements[1]

    def prime_element(self, n: int) -> "FieldElement":
        """The image of the integer n in the prime subfield."""
        return self.elements[n % self.p]

    @cached_property
    def generator(self) -> "FieldElement":
        """Smallest-index element of multiplicative order p^a - 1."""
        n = self.order - 1
        primes = [d for d in range(2, n + 1) if n % d == 0 and is_prime(d)]
        for x in self.elements[1:]:
            if all(x ** (n // r) != self.one for r in primes):
                return x
        raise FieldError(f"{self}: multiplicative group is not cyclic")

    # -- arithmetic on coefficient tuples --------------------------------------

    def _add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def _neg(self, x):
        p = self.p
        return tuple((-a) % p for a in x)

    def _mul(self, x, y):
        p, a = self.p, self.a
        prod = [0] * (2 * a - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] = (prod[i + j] + xi * yj) % p
        # reduce by the monic modulus, top degree down
        mod = self.modulus
        for d in range(2 * a - 2, a - 1, -1):
            c = prod[d]
            if c:
                shift = d - a
                for i in range(a):
                    prod[shift + i] = (prod[shift + i] - c * mod[i]) % p
                prod[d] = 0
        return tuple(prod[:a])

    def is_square_order(self) -> bool:
        return self.a % 2 == 0

    @property
    def subfield_order(self) -> int:
        """q for a field of order q^2."""
        if not self.is_square_order():
            raise FieldError(f"{self} has no quadratic subfield structure GF(q) < GF(q^2)")
        return self.p ** (self.a // 2)

    def conjugate(self, x: "FieldElement") -> "FieldElement":
        """x -> x^q in GF(q^2)."""
        return self(x) ** self.subfield_order

    def trace(self, x: "FieldElement") -> "FieldElement":
        """Relative trace GF(q^2) -> GF(q): x + x^q."""
        return x + self.conjugate(x)

    def norm(self, x: "FieldElement") -> "FieldElement":
        """Relative norm GF(q^2) -> GF(q): x^(q+1)."""
        return x * self.conjugate(x)

    def subfield_elements(self) -> list:
        """Elements fixed by conjugation, i.e. the subfield GF(q)."""
        return [x for x in self.elements if self.conjugate(x) == x]

    def basis(self) -> list:
        """The polynomial basis 1, x, ..., x^(a-1) over GF(p)."""
        return [self(tuple(int(i == j) for j in range(self.a))) for i in range(self.a)]


def make_field(p: int, a: int = 1) -> Field:
    return Field(p, a)


def gf(q: int) -> Field:
    """The field of order q (q a prime power)."""
    p, a = prime_power(q)
    return Field(p, a)


class FieldElement:
    __slots__ = ("field", "coeffs", "_index", "__weakref__")

    def __init__(self, field: Field, coeffs: tuple, index: int | None = None):
        self.field = field
        self.coeffs = coeffs
        self._index = index

    @property
    def index(self) -> int:
        if self._index is None:
            n = 0
            for c in reversed(self.coeffs):
                n = n * self.field.p + c
            self._index = n
        return self._index

    def _other(self, y):
        if isinstance(y, FieldElement):
            if y.field is not self.field:
                raise FieldError(f"mixed-field operands: {self.field} and {y.field}")
            return y
        if isinstance(y, int):
            return self.field.prime_element(y)
        return NotImplemented

    def _wrap(self, coeffs):
        return self.field.elements[_index_of(coeffs, self.field.p)]

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self._wrap(self.field._add(self.coeffs, y.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field._neg(self.coeffs))

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        f = self.field
        key = (self.index, y.index) if self.index <= y.index else (y.index, self.index)
        hit = f._mul_cache.get(key)
        if hit is None:
            hit = self._wrap(f._mul(self.coeffs, y.coeffs))
            f._mul_cache[key] = hit
        return hit

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        return self ** (self.field.order - 2)

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, y):
        return self.inverse() * y

    def conjugate(self):
        return self.field.conjugate(self)

    def multiplicative_order(self) -> int:
        if not self:
            raise FieldError("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for d in range(1, n + 1):
            if n % d == 0 and self ** d == self.field.one:
                order = d
                break
        return order

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.prime_element(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.a, self.coeffs))

    def __int__(self):
        return self.index

    def __repr__(self):
        f = self.field
        if f.a == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}{mono}"))
        return " + ".join(reversed(terms)) if terms else "0"


def _index_of(coeffs, p):
    n = 0
    for c in reversed(coeffs):
        n = n * p + c
    return n


def arith(f: Field, op: str, x, y=None):
    """Dispatch one of add, mul, inv, pow, neg on elements of f."""
    x = f(x)
    if op == "add":
        return x + f(y)
    if op == "mul":
        return x * f(y)
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        if not isinstance(y, int) or y < 0:
            raise FieldError("pow requires a nonnegative integer exponent")
        return x ** y
    raise FieldError(f"unknown operation {op!r}")


def conjugate(f: Field, x) -> FieldElement:
    return f.conjugate(f(x))
