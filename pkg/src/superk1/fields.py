"""Exact arithmetic in prime fields, finite extensions and cyclotomic fields.

Every field works on *raw* values:

* prime field F_p: ``int`` in ``range(p)``
* rationals: :class:`fractions.Fraction`
* simple extensions ``base[u]/(modulus)``: tuple of base raws of length
  ``degree`` (power basis, lowest power first)

Polynomial and curve code calls the raw methods directly; :class:`FieldElement`
is the operator-overloaded wrapper for user-facing code and tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime, n_order, totient

from . import dense


class FieldError(ValueError):
    pass


class Field:
    """Abstract field descriptor.  Concrete fields are immutable and cached."""

    kind: str
    characteristic: int
    degree: int = 1
    modulus: tuple | None = None
    base: "Field | None" = None

    # raw interface ----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a):
        return a == self.zero

    # descriptors --------------------------------------------------------
    @property
    def is_finite(self):
        return self.characteristic > 0

    @property
    def order(self):
        if not self.is_finite:
            return None
        return self.characteristic ** self.absolute_degree

    @property
    def absolute_degree(self):
        d = self.degree
        if self.base is not None:
            d *= self.base.absolute_degree
        return d

    def key(self):
        return (self.kind, self.characteristic, self.modulus,
                self.base.key() if self.base is not None else None)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # element helpers ------------------------------------------------------
    def __call__(self, value):
        return FieldElement(self, self.coerce(value))

    def coerce(self, value):
        """Turn an int, Fraction, FieldElement or raw value into a raw value."""
        if isinstance(value, FieldElement):
            if value.owner != self:
                raise FieldError(f"element of {value.owner} used in {self}")
            return value.raw
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        return self.from_raw(value)

    def from_fraction(self, q):
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def from_raw(self, raw):
        return raw

    def frobenius(self, a):
        if not self.is_finite:
            raise FieldError("Frobenius needs positive characteristic")
        return self.pow(a, self.characteristic)

    def elements(self):
        raise FieldError(f"{self} is infinite")

    def fmt(self, a):
        return str(a)


class PrimeField(Field):
    kind = "prime-finite"

    def __init__(self, p):
        self.characteristic = p
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        if q.denominator % self.p == 0:
            raise FieldError(f"{q} is not {self.p}-integral")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def from_raw(self, raw):
        return int(raw) % self.p

    def frobenius(self, a):
        return a

    def elements(self):
        return iter(range(self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField(Field):
    kind = "rational"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

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
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def from_raw(self, raw):
        return Fraction(raw)

    def __repr__(self):
        return "QQ"


class ExtensionField(Field):
    """``base[u]/(modulus)`` for a monic irreducible modulus over ``base``."""

    def __init__(self, base, modulus, kind, name, conductor=None):
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.kind = kind
        self.name = name
        self.conductor = conductor
        k = self.degree
        self.zero = (base.zero,) * k
        self.one = (base.one,) + (base.zero,) * (k - 1)
        self._mod = list(self.modulus)
        self._zeta_powers = None

    def _pad(self, lst):
        return tuple(lst) + (self.base.zero,) * (self.degree - len(lst))

    def _reduce(self, lst):
        B = self.base
        k = self.degree
        mod = self._mod
        r = list(lst)
        for i in range(len(r) - 1, k - 1, -1):
            c = r[i]
            if c == B.zero:
                continue
            for j in range(k):
                if mod[j] != B.zero:
                    r[i - k + j] = B.sub(r[i - k + j], B.mul(c, mod[j]))
        return self._pad(dense.trim(B, r[:k]))

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        return self._reduce(dense.mul(B, dense.trim(B, list(a)), dense.trim(B, list(b))))

    def inv(self, a):
        B = self.base
        al = dense.trim(B, list(a))
        if not al:
            raise ZeroDivisionError(f"division by zero in {self}")
        g, s, _ = dense.xgcd(B, al, self._mod)
        if g != [B.one]:
            raise FieldError("modulus is not irreducible")
        return self._pad(s)

    def from_int(self, n):
        return self._pad(dense.trim(self.base, [self.base.from_int(n)]))

    def from_fraction(self, q):
        return self._pad(dense.trim(self.base, [self.base.from_fraction(q)]))

    def from_base(self, c):
        return self._pad(dense.trim(self.base, [c]))

    def from_raw(self, raw):
        if isinstance(raw, (list, tuple)):
            lst = [self.base.coerce(c) for c in raw]
            return self._reduce(dense.trim(self.base, lst))
        raise FieldError(f"cannot coerce {raw!r} into {self}")

    def gen_raw(self):
        if self.degree == 1:
            return self._pad([self.base.neg(self._mod[0])])
        return self._pad([self.base.zero, self.base.one])

    def gen(self):
        return FieldElement(self, self.gen_raw())

    def in_base(self, a):
        """Return the base raw if ``a`` lies in the base field, else ``None``."""
        if all(c == self.base.zero for c in a[1:]):
            return a[0]
        return None

    def elements(self):
        if not self.is_finite:
            raise FieldError(f"{self} is infinite")
        for combo in itertools.product(list(self.base.elements()), repeat=self.degree):
            yield tuple(combo)

    # cyclotomic Galois action -------------------------------------------
    def zeta_power(self, e):
        N = self.conductor
        if self._zeta_powers is None:
            z = self.gen_raw()
            pw = [self.one]
            for _ in range(N - 1):
                pw.append(self.mul(pw[-1], z))
            self._zeta_powers = pw
        return self._zeta_powers[e % N]

    def galois(self, a, k):
        """Apply the automorphism zeta -> zeta^k (k a unit mod the conductor)."""
        if self.conductor is None:
            raise FieldError("Galois action is defined for cyclotomic fields only")
        if self.degree == 1:
            return a
        acc = self.zero
        for i, c in enumerate(a):
            if c != self.base.zero:
                acc = self.add(acc, tuple(self.base.mul(c, x) for x in self.zeta_power(i * k)))
        return acc

    def galois_group(self):
        N = self.conductor
        return [k for k in range(1, N) if _gcd(k, N) == 1] or [1]

    def fmt(self, a):
        B = self.base
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c == B.zero:
                continue
            neg = isinstance(c, Fraction) and c < 0
            if neg:
                c = -c
            mon = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
            if not mon:
                body = str(c)
            elif c == B.one:
                body = mon
            else:
                body = f"{c}*{mon}"
            parts.append(("-" if neg else "+", body))
        if not parts:
            return "0"
        text = " ".join(f"{s} {b}" for s, b in parts)
        return text[2:] if text.startswith("+") else "-" + text[2:]

    def __repr__(self):
        if self.conductor is not None:
            return f"QQ(zeta_{self.conductor})"
        return f"GF({self.characteristic}^{self.degree})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class FieldElement:
    """An immutable element of a :class:`Field`."""

    __slots__ = ("owner", "raw")

    def __init__(self, owner, raw):
        self.owner = owner
        self.raw = raw

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.owner != self.owner:
                raise FieldError(f"owner mismatch: {self.owner} vs {b.owner}")
            return b.raw
        return self.owner.coerce(b)

    def __add__(self, b):
        return FieldElement(self.owner, self.owner.add(self.raw, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.owner, self.owner.sub(self.raw, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.owner, self.owner.sub(self._other(b), self.raw))

    def __mul__(self, b):
        return FieldElement(self.owner, self.owner.mul(self.raw, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElement(self.owner, self.owner.div(self.raw, self._other(b)))

    def __rtruediv__(self, b):
        return FieldElement(self.owner, self.owner.div(self._other(b), self.raw))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.raw))

    def __pow__(self, e):
        return FieldElement(self.owner, self.owner.pow(self.raw, e))

    def inverse(self):
        return FieldElement(self.owner, self.owner.inv(self.raw))

    def frobenius(self):
        return FieldElement(self.owner, self.owner.frobenius(self.raw))

    def is_zero(self):
        return self.raw == self.owner.zero

    def __eq__(self, b):
        try:
            return self.raw == self._other(b)
        except FieldError:
            return False

    def __hash__(self):
        return hash((self.owner, self.raw))

    def __repr__(self):
        return self.owner.fmt(self.raw)


# ---------------------------------------------------------------------------
# constructors


QQ = RationalField()


@lru_cache(maxsize=None)
def prime_field(p):
    if not isprime(p):
        raise FieldError(f"characteristic {p} is not prime")
    return PrimeField(p)


def cyclotomic_polynomial(m):
    """Integer coefficients of the m-th cyclotomic polynomial, lowest first."""
    if m < 1:
        raise FieldError("conductor must be >= 1")
    return list(_cyclotomic(m))


@lru_cache(maxsize=None)
def _cyclotomic(m):
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            q, r = dense.divmod_(QQ, num, [Fraction(c) for c in _cyclotomic(d)])
            assert not r
            num = q
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def cyclotomic_field(m):
    """QQ(zeta_m) in the power basis of zeta mod the cyclotomic polynomial."""
    phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
    F = ExtensionField(QQ, phi, "cyclotomic", "z", conductor=m)
    assert F.degree == totient(m)
    return F


@lru_cache(maxsize=None)
def finite_field(p, k=1, modulus=None):
    """F_{p^k}.  Without a modulus the lexicographically first monic
    irreducible polynomial of degree k is used."""
    Fp = prime_field(p)
    if modulus is None and k == 1:
        return Fp
    from .polynomials import is_irreducible_dense

    if modulus is not None:
        mod = dense.trim(Fp, [Fp.coerce(c) for c in modulus])
        if not mod or mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible_dense(Fp, mod):
            raise FieldError("reducible modulus supplied")
        return ExtensionField(Fp, mod, "extension-finite", "u")
    for combo in itertools.product(range(p), repeat=k):
        mod = list(reversed(combo)) + [1]
        if mod[0] != 0 and is_irreducible_dense(Fp, mod):
            return ExtensionField(Fp, mod, "extension-finite", "u")
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


def make_field(kind, value=None, modulus=None):
    """Build a field from a short description.

    ``kind`` is one of ``"prime"``, ``"rational"``, ``"cyclotomic"`` or
    ``"extension"`` (the latter takes the characteristic as ``value`` and a
    list of integer coefficients, lowest first, as ``modulus``).
    """
    if kind == "prime":
        return prime_field(value)
    if kind == "rational":
        return QQ
    if kind == "cyclotomic":
        return cyclotomic_field(value)
    if kind == "extension":
        if modulus is None:
            raise FieldError("extension needs a modulus")
        return finite_field(value, len(modulus) - 1, tuple(modulus))
    raise FieldError(f"unknown field kind {kind!r}")


def multiplicative_order(F, a):
    """Exact multiplicative order of a nonzero element of a finite field."""
    q = F.order
    n = q - 1
    for r, e in factorint(n).items():
        for _ in range(e):
            if F.pow(a, n // r) == F.one:
                n //= r
            else:
                break
    return n


def primitive_element(F):
    """Deterministic generator of the multiplicative group of a finite field."""
    q = F.order
    primes = list(factorint(q - 1))
    for a in F.elements():
        if a == F.zero:
            continue
        if all(F.pow(a, (q - 1) // r) != F.one for r in primes):
            return a
    raise FieldError("no primitive element")  # pragma: no cover


def root_of_unity_field(p, m):
    """Smallest extension kappa of F_p containing a primitive m-th root of
    unity, together with a deterministic choice of that root."""
    if m % p == 0:
        raise FieldError(f"p={p} divides m={m}")
    k = 1 if m == 1 else int(n_order(p, m))
    kappa = finite_field(p, k)
    q = kappa.order
    primes = list(factorint(m))
    for a in kappa.elements():
        if a == kappa.zero:
            continue
        xi = kappa.pow(a, (q - 1) // m)
        if all(kappa.pow(xi, m // r) != kappa.one for r in primes):
            return kappa, FieldElement(kappa, xi)
    raise FieldError("no primitive root of unity found")  # pragma: no cover


def frobenius_map(a):
    return a.frobenius()
