"""Prime fields F_p and extension fields F_{p^m}.

Elements are stored as single int64 encodings: a residue for F_p, and the
base-p integer ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` of the coefficient
vector in the basis {1, g, ..., g^{m-1}} for F_{p^m}.  All arithmetic is
vectorized over numpy arrays; scalars work too.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy

from .errors import (
    DimensionMismatch,
    DivideByZero,
    FactorizationBudgetExceeded,
    FieldMismatch,
    InvalidParameters,
    NoIrreducibleFound,
    NotPrime,
    OrderOverflow,
)

I64 = np.int64

# p < 2^31 keeps products of two residues inside int64
MAX_CHARACTERISTIC = 1 << 31
MAX_ORDER_BITS = 62
TABLE_LIMIT = 1 << 16
SEARCH_BUDGET = 20000
NTT_TWO_ADICITY = 12


def _two_adicity(x):
    t = 0
    while x and x % 2 == 0:
        x //= 2
        t += 1
    return t


# --- small helpers for polynomials over F_p as python int lists ----------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod_list(a, f, p):
    a = _trim(list(a))
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod_list(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod_list(out, f, p)


def _ppowmod_list(base, e, f, p):
    result = [1]
    base = _pmod_list(base, f, p)
    while e:
        if e & 1:
            result = _pmulmod_list(result, base, f, p)
        base = _pmulmod_list(base, base, f, p)
        e >>= 1
    return result


def _pgcd_list(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod_list(a, b, p)
    return a


def _psub_list(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible(modulus, p):
    """Rabin-style check: gcd(X^{p^i} - X, f) = 1 for i < m and f | X^{p^m} - X."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p == 0:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = x
    for i in range(1, m + 1):
        xp = _ppowmod_list(xp, p, modulus, p)
        diff = _psub_list(xp, x, p)
        if i < m:
            g = _pgcd_list(modulus, diff, p)
            if len(g) > 1:
                return False
        elif diff:
            return False
    return True


def _search_modulus(p, m, seed):
    """Seeded deterministic search over monic degree-m candidates."""
    if p ** m <= SEARCH_BUDGET:
        # small spaces are scanned in increasing encoding order
        for code in range(p ** m):
            low = [(code // p ** i) % p for i in range(m)]
            cand = low + [1]
            if is_irreducible(cand, p):
                return tuple(cand)
    else:
        rng = random.Random(f"modulus:{p}:{m}:{seed}")
        for _ in range(SEARCH_BUDGET):
            cand = [rng.randrange(p) for _ in range(m)] + [1]
            if is_irreducible(cand, p):
                return tuple(cand)
    raise NoIrreducibleFound(f"no irreducible degree-{m} polynomial over F_{p} within budget")


# --- fields -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Field:
    """Finite field F_q with q = p^m.  Build with :func:`make_field`."""

    p: int
    m: int
    modulus: tuple | None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    # identity
    @property
    def characteristic(self):
        return self.p

    @property
    def extension_degree(self):
        return self.m

    @property
    def order(self):
        return self.p ** self.m

    q = order

    @property
    def is_prime(self):
        return self.m == 1

    @property
    def two_adicity(self):
        return _two_adicity(self.order - 1)

    @property
    def ntt_friendly(self):
        return self.is_prime and self.two_adicity >= NTT_TWO_ADICITY

    def key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_prime:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def check(self, other):
        if other != self:
            raise FieldMismatch(f"{self!r} vs {other!r}")

    # conversion
    def __call__(self, value):
        return FieldElement(self, self.reduce_scalar(value))

    def reduce_scalar(self, value):
        if isinstance(value, FieldElement):
            self.check(value.field)
            return value.value
        if isinstance(value, (list, tuple)):
            return int(self.from_digits(np.array(value, dtype=I64)))
        v = int(value)
        if self.is_prime:
            return v % self.p
        if not 0 <= v < self.order:
            raise InvalidParameters(f"encoding {v} outside [0, {self.order})")
        return v

    def asarray(self, values):
        """Validate and convert to an int64 array of encodings."""
        a = np.asarray(values, dtype=I64)
        if self.is_prime:
            return a % self.p
        if a.size and (a.min() < 0 or a.max() >= self.order):
            raise InvalidParameters("element encoding out of range")
        return a

    def embed(self, values):
        """Map prime-subfield residues to encodings (identity on the encoding)."""
        return np.asarray(values, dtype=I64) % self.p

    def to_digits(self, a):
        a = np.asarray(a, dtype=I64)
        if self.is_prime:
            return a[..., None]
        pw = self.p ** np.arange(self.m, dtype=I64)
        return (a[..., None] // pw) % self.p

    def from_digits(self, d):
        d = np.asarray(d, dtype=I64) % self.p
        if d.shape[-1] != self.m:
            raise DimensionMismatch(f"expected {self.m} residues, got {d.shape[-1]}")
        if self.is_prime:
            return d[..., 0]
        pw = self.p ** np.arange(self.m, dtype=I64)
        return (d * pw).sum(axis=-1)

    # arithmetic
    def add(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=I64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=I64), b)
        return self.from_digits(self.to_digits(a) + self.to_digits(b))

    def sub(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=I64) - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=I64), b)
        return self.from_digits(self.to_digits(a) - self.to_digits(b))

    def neg(self, a):
        if self.is_prime:
            return (-np.asarray(a, dtype=I64)) % self.p
        if self.p == 2:
            return np.asarray(a, dtype=I64)
        return self.from_digits(-self.to_digits(a))

    def _tables(self):
        t = self._cache.get("log")
        if t is None:
            q = self.order
            g = find_generator(self).value
            exp = np.zeros(2 * q, dtype=I64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = int(self._mul_poly(np.array(x, I64), np.array(g, I64)))
            exp[q - 1:2 * q - 2] = exp[: q - 1]
            log = np.zeros(q, dtype=I64)
            log[exp[: q - 1]] = np.arange(q - 1, dtype=I64)
            t = (exp, log)
            self._cache["log"] = t
        return t

    def _mul_poly(self, a, b):
        m, p = self.m, self.p
        A = self.to_digits(a)
        B = self.to_digits(b)
        shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1])
        prod = np.zeros(shape + (2 * m - 1,), dtype=I64)
        for i in range(m):
            prod[..., i:i + m] = (prod[..., i:i + m] + A[..., i:i + 1] * B) % p
        low = np.array(self.modulus[:m], dtype=I64)
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[..., d:d + 1]
            prod[..., d - m:d] = (prod[..., d - m:d] - c * low) % p
        return self.from_digits(prod[..., :m])

    def mul(self, a, b):
        if self.is_prime:
            return (np.asarray(a, dtype=I64) * b) % self.p
        if self.order <= TABLE_LIMIT:
            exp, log = self._tables()
            a = np.asarray(a, dtype=I64)
            b = np.asarray(b, dtype=I64)
            r = exp[log[a] + log[b]]
            return np.where((a == 0) | (b == 0), 0, r)
        return self._mul_poly(a, b)

    def pow(self, a, e):
        a = np.asarray(a, dtype=I64)
        e = int(e)
        if e < 0:
            a = self.inv(a)
            e = -e
        if self.is_prime and a.ndim == 0:
            return np.int64(pow(int(a), e, self.p))
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        a = np.asarray(a, dtype=I64)
        if np.any(a == 0):
            raise DivideByZero("inverse of zero")
        if not self.is_prime and self.order <= TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(self.order - 1 - log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, a, b, axis=-1):
        """Sum of products along ``axis`` without int64 overflow."""
        prod = self.mul(a, b)
        return self.sum(prod, axis=axis)

    def sum(self, a, axis=-1):
        # residues are < 2^31, so int64 sums of fewer than 2^32 terms are exact
        a = np.asarray(a, dtype=I64)
        if self.is_prime:
            return a.sum(axis=axis) % self.p
        return self.from_digits(self.to_digits(a).sum(axis=axis - 1 if axis < 0 else axis))

    def random(self, rng, size=None):
        return rng.integers(0, self.order, size=size, dtype=I64)

    def random_nonzero(self, rng, size=None):
        return rng.integers(1, self.order, size=size, dtype=I64)

    def scalar_mul(self, c: int, a):
        """Multiply by an integer (image of Z in the field)."""
        return self.mul(a, int(c) % self.p)

    def element_str(self, v):
        v = int(v)
        if self.is_prime:
            return str(v)
        return ":".join(str(int(d)) for d in self.to_digits(np.int64(v)))

    def parse_element(self, text):
        text = text.strip()
        parts = text.split(":")
        if len(parts) != self.m:
            raise ValueError(f"expected {self.m} residues in {text!r}")
        digits = [int(x) for x in parts]
        if any(d < 0 or d >= self.p for d in digits):
            raise ValueError(f"residue out of range in {text!r}")
        return int(self.from_digits(np.array(digits, I64)))

    def to_dict(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus) if self.modulus else None}


@dataclass(frozen=True)
class FieldElement:
    """Scalar wrapper with operator overloading; library code uses raw encodings."""

    field: Field
    value: int

    def _other(self, o):
        if isinstance(o, FieldElement):
            self.field.check(o.field)
            return o.value
        return self.field.reduce_scalar(o)

    def __add__(self, o):
        return FieldElement(self.field, int(self.field.add(self.value, self._other(o))))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, int(self.field.sub(self.value, self._other(o))))

    def __rsub__(self, o):
        return FieldElement(self.field, int(self.field.sub(self._other(o), self.value)))

    def __mul__(self, o):
        return FieldElement(self.field, int(self.field.mul(self.value, self._other(o))))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __truediv__(self, o):
        return FieldElement(self.field, int(self.field.div(self.value, self._other(o))))

    def __pow__(self, e):
        return FieldElement(self.field, int(self.field.pow(self.value, e)))

    def inv(self):
        return FieldElement(self.field, int(self.field.inv(self.value)))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.field == o.field and self.value == o.value
        if isinstance(o, (int, np.integer)):
            return self.value == self.field.reduce_scalar(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key(), self.value))

    def __int__(self):
        return self.value

    @property
    def coefficients(self):
        return tuple(int(d) for d in self.field.to_digits(np.int64(self.value)))

    def __repr__(self):
        return f"{self.field!r}({self.field.element_str(self.value)})"


@functools.lru_cache(maxsize=None)
def _make_field_cached(p, m, modulus):
    return Field(p, m, modulus)


def make_field(p: int, m: int = 1, modulus=None, seed: int = 0) -> Field:
    """Construct F_{p^m}; the modulus is found by a seeded search if absent."""
    p, m = int(p), int(m)
    if m < 1:
        raise InvalidParameters("extension degree must be >= 1")
    if p < 2 or not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= MAX_CHARACTERISTIC or m * math.log2(p) > MAX_ORDER_BITS:
        raise OrderOverflow(f"p^m = {p}^{m} exceeds the supported budget")
    if m == 1:
        if modulus is not None and len(modulus) not in (0, 2):
            raise InvalidParameters("prime field takes no modulus")
        return _make_field_cached(p, 1, None)
    if modulus is None:
        modulus = _search_modulus(p, m, seed)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InvalidParameters("modulus must be monic of degree m")
        if not is_irreducible(list(modulus), p):
            raise InvalidParameters("modulus is reducible")
    return _make_field_cached(p, m, tuple(modulus))


def field_from_dict(d) -> Field:
    return make_field(d["p"], d.get("m", 1), d.get("modulus"))


FACTOR_BUDGET_BITS = 62


@functools.lru_cache(maxsize=None)
def _prime_factors(n):
    if n.bit_length() > FACTOR_BUDGET_BITS + 1:
        raise FactorizationBudgetExceeded(f"refusing to factor {n}")
    return tuple(sorted(sympy.factorint(n)))


def find_generator(F: Field) -> FieldElement:
    """Smallest encoding of multiplicative order q - 1."""
    cached = F._cache.get("generator")
    if cached is not None:
        return FieldElement(F, cached)
    q = F.order
    if q == 2:
        F._cache["generator"] = 1
        return FieldElement(F, 1)
    exps = [(q - 1) // l for l in _prime_factors(q - 1)]
    for g in range(2 if F.is_prime else 1, q):
        if all(int(F._pow_raw(g, e)) != 1 for e in exps):
            F._cache["generator"] = g
            return FieldElement(F, g)
    raise AssertionError("no generator found")  # unreachable for a field


def _pow_raw(self, a, e):
    if self.is_prime:
        return pow(int(a), int(e), self.p)
    result = np.int64(1)
    base = np.int64(a)
    e = int(e)
    while e:
        if e & 1:
            result = self._mul_poly(result, base)
        base = self._mul_poly(base, base)
        e >>= 1
    return result


Field._pow_raw = _pow_raw


def element_order(F: Field, a) -> int:
    a = int(F.reduce_scalar(a))
    if a == 0:
        raise DivideByZero("zero has no multiplicative order")
    order = F.order - 1
    for l in _prime_factors(F.order - 1) if F.order > 2 else ():
        while order % l == 0 and int(F._pow_raw(a, order // l)) == 1:
            order //= l
    return order


# --- Appendix A style embedding ---------------------------------------------


def extension_generator(E: Field) -> FieldElement:
    """The class of X in F_p[X]/(modulus); spans E over F_p as a power basis."""
    if E.is_prime:
        raise InvalidParameters("extension field required")
    return FieldElement(E, E.p)


def _basis_matrix(E: Field, gamma):
    s = E.m
    g = E.reduce_scalar(gamma)
    powers = [1]
    for _ in range(s - 1):
        powers.append(int(E.mul(powers[-1], g)))
    return np.array([E.to_digits(np.int64(x)) for x in powers], dtype=I64)  # row i = digits of g^i


def _psi_inverse_matrix(E: Field, gamma):
    key = ("psi", E.reduce_scalar(gamma))
    M = E._cache.get(key)
    if M is None:
        from .linalg import inverse

        from_p = make_field(E.p)
        B = _basis_matrix(E, gamma)
        try:
            M = inverse(from_p, B)
        except Exception as exc:
            raise InvalidParameters("gamma does not generate a power basis") from exc
        E._cache[key] = M
    return M


def psi_embed(a, E: Field, gamma=None):
    """psi(a_1, ..., a_s) = a_1 + g a_2 + ... + g^{s-1} a_s.

    ``a`` has shape (..., s) with entries in the prime subfield F_p.
    """
    a = np.asarray(a, dtype=I64)
    if a.shape[-1] != E.m:
        raise DimensionMismatch(f"expected {E.m} components, got {a.shape[-1]}")
    if gamma is None:
        gamma = extension_generator(E)
    _psi_inverse_matrix(E, gamma)  # validates the basis
    B = _basis_matrix(E, gamma)
    digits = np.zeros(a.shape[:-1] + (E.m,), dtype=I64)
    for i in range(E.m):
        digits = (digits + (a[..., i:i + 1] % E.p) * B[i]) % E.p
    return E.from_digits(digits)


def psi_inverse(b, E: Field, gamma=None):
    if gamma is None:
        gamma = extension_generator(E)
    Minv = _psi_inverse_matrix(E, gamma)
    d = E.to_digits(np.asarray(b, dtype=I64))
    # digits = a B  =>  a = digits B^{-1}
    out = np.zeros(d.shape, dtype=I64)
    for i in range(E.m):
        out = (out + d[..., i:i + 1] * Minv[i]) % E.p
    return out
