"""Deterministic finite fields F_q with full discrete-log tables.

Fields are built reproducibly: for q = p the generator is the smallest
positive primitive root, for q = p^f (f >= 2) the modulus is the first monic
primitive polynomial in lexicographic order on the coefficient tuple
(a_{f-1}, ..., a_1, a_0) and the generator is the class of the variable.
Elements are coefficient vectors over Z/p in degree-ascending order.
Multiplicative characters are indexed by exponents m mod q-1 with
chi_m(g^k) = zeta_{q-1}^{mk}; the additive character is
psi(x) = zeta_p^{Tr(x)}.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .cyclotomic import CycNum

__all__ = [
    "FieldSpec",
    "FqElem",
    "MultCharacter",
    "AddCharacter",
    "build_field",
    "discrete_log",
    "char_eval",
    "addchar_eval",
]

DEFAULT_FIELD_BOUND = 2 ** 20


def _is_prime(n: int) -> bool:
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


class FqElem:
    """Element of a FieldSpec, a length-f coefficient vector over Z/p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FieldSpec", coeffs):
        if isinstance(coeffs, int):
            coeffs = field._int_to_coeffs(coeffs % field.q)
        coeffs = tuple(c % field.p for c in coeffs)
        if len(coeffs) != field.f:
            raise ValueError(f"need {field.f} coefficients, got {len(coeffs)}")
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FqElem):
            if isinstance(other, int):
                return FqElem(self.field, other)
            raise TypeError(f"cannot combine FqElem with {type(other).__name__}")
        if other.field is not self.field:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FqElem(self.field,
                      [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        return FqElem(self.field,
                      self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        k = self.field.dlog(self)
        return self.field.generator ** ((self.field.q - 1 - k) % (self.field.q - 1))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._check(other)
        return other * self.inv()

    def __pow__(self, n: int) -> "FqElem":
        if self.is_zero():
            if n == 0:
                return self.field.one
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return self
        n %= self.field.q - 1
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FqElem(self.field, other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def as_int(self) -> int:
        """Canonical integer index sum c_i p^i (the inverse of element(int))."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __repr__(self):
        if self.field.f == 1:
            return f"Fq({self.field.q}):{self.coeffs[0]}"
        return f"Fq({self.field.q}):{list(self.coeffs)}"


class FieldSpec:
    """A concrete finite field with a fixed primitive generator and a full
    discrete-log table.  Immutable after construction."""

    def __init__(self, p: int, f: int, modulus, generator_coeffs, dlog_table):
        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus = modulus  # tuple of f+1 ints, monic; None for f = 1
        self.generator = FqElem(self, generator_coeffs)
        self.dlog_table = dlog_table  # coeff tuple -> exponent mod q-1
        self.zero = FqElem(self, [0] * f)
        self.one = FqElem(self, [1] + [0] * (f - 1))
        self._gauss_cache = {}
        self._gauss_lock = threading.Lock()
        self._engine_cache = {}

    # -- element helpers -----------------------------------------------------

    def element(self, value) -> FqElem:
        return FqElem(self, value)

    def _int_to_coeffs(self, v: int):
        out = []
        for _ in range(self.f):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def elements(self):
        for v in range(self.q):
            yield FqElem(self, v)

    def units(self):
        g = self.generator
        x = self.one
        for _ in range(self.q - 1):
            yield x
            x = x * g

    def _mul(self, a, b):
        p, f = self.p, self.f
        if f == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(f + 1):
                    prod[k - f + i] -= c * m[i]
            prod[k] = 0
        return tuple(c % p for c in prod[:f])

    def dlog(self, x: FqElem) -> int:
        if x.is_zero():
            raise ZeroDivisionError("discrete log of zero")
        return self.dlog_table[x.coeffs]

    def trace(self, x: FqElem) -> int:
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        acc = self.zero
        y = x
        for _ in range(self.f):
            acc = acc + y
            y = y ** self.p
        if any(c for c in acc.coeffs[1:]):
            raise ArithmeticError("trace did not land in the prime field")
        return acc.coeffs[0]

    def __repr__(self):
        return f"FieldSpec(q={self.q})" if self.f > 1 else f"FieldSpec(p={self.p})"

    def __reduce__(self):
        # rebuild deterministically instead of pickling tables and locks
        return (build_field, (self.p, self.f))


def build_field(p: int, f: int, bound: int = DEFAULT_FIELD_BOUND) -> FieldSpec:
    """Construct F_{p^f} deterministically; see the module docstring for the
    generator/modulus conventions."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    q = p ** f
    if q > bound:
        raise ValueError(f"field size {q} exceeds bound {bound}")

    if f == 1:
        if p == 2:
            return FieldSpec(2, 1, None, (1,), {(1,): 0})
        for cand in range(2, p):
            table = _walk_order(p, None, (cand,), q)
            if table is not None:
                return FieldSpec(p, 1, None, (cand,), table)
        raise ArithmeticError(f"no primitive root modulo {p} found")

    # monic candidates ordered lexicographically on (a_{f-1}, ..., a_0)
    for idx in range(p ** f):
        digits = []
        v = idx
        for _ in range(f):
            digits.append(v % p)
            v //= p
        # digits = (a_0', ..., a_{f-1}') with a_{f-1}' most significant in idx;
        # read them as (a_{f-1}, ..., a_0) so idx enumerates that tuple in order
        modulus = tuple(digits) + (1,)  # ascending: (a_0, ..., a_{f-1}, 1)
        if modulus[0] == 0:
            continue  # t divides it, never primitive
        table = _walk_order(p, modulus, None, q)
        if table is not None:
            gen = (0, 1) + (0,) * (f - 2)
            return FieldSpec(p, f, modulus, gen, table)
    raise ArithmeticError(f"no primitive polynomial of degree {f} over F_{p}")


def _walk_order(p, modulus, gen1, q):
    """Order check by walking powers; returns {coeff tuple: k} on success."""
    if modulus is None:
        one = (1,)
        g = gen1

        def mul(a, b):
            return ((a[0] * b[0]) % p,)
    else:
        f = len(modulus) - 1
        one = (1,) + (0,) * (f - 1)
        g = (0, 1) + (0,) * (f - 2)

        def mul(a, b):
            prod = [0] * (2 * f - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        prod[i + j] += ai * bj
            for k in range(2 * f - 2, f - 1, -1):
                c = prod[k] % p
                if c:
                    for i in range(f + 1):
                        prod[k - f + i] -= c * modulus[i]
                prod[k] = 0
            return tuple(c % p for c in prod[:f])

    table = {one: 0}
    x = g
    for k in range(1, q):
        if x == one:
            return table if k == q - 1 else None
        if x in table:
            return None  # entered a cycle missing 1: not a unit of full order
        table[x] = k
        x = mul(x, g)
    return None


def discrete_log(field: FieldSpec, x: FqElem) -> int:
    """Exponent k with generator^k = x; domain error on x = 0."""
    return field.dlog(x)


class MultCharacter:
    """Multiplicative character chi_m of a field, m an exponent mod q-1."""

    __slots__ = ("field", "m")

    def __init__(self, field: FieldSpec, m: int):
        self.field = field
        self.m = m % (field.q - 1) if field.q > 1 else 0

    @property
    def order(self) -> int:
        n = self.field.q - 1
        return n // math.gcd(self.m, n) if self.m else 1

    def is_trivial(self) -> bool:
        return self.m == 0

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        if other.field is not self.field:
            raise ValueError("characters of different fields")
        return MultCharacter(self.field, self.m + other.m)

    def __pow__(self, n: int) -> "MultCharacter":
        return MultCharacter(self.field, self.m * n)

    def conj(self) -> "MultCharacter":
        return MultCharacter(self.field, -self.m)

    def __eq__(self, other):
        return (isinstance(other, MultCharacter)
                and other.field is self.field and other.m == self.m)

    def __hash__(self):
        return hash((id(self.field), self.m))

    def __call__(self, x: FqElem) -> CycNum:
        return char_eval(self, x)

    def sign_at_minus_one(self) -> int:
        """chi(-1) as +-1."""
        if self.field.q == 2 or self.field.p == 2:
            return 1
        k = self.field.dlog(-self.field.one)
        return -1 if (self.m * k) % (self.field.q - 1) else 1

    def __repr__(self):
        return f"chi_{self.m}[q={self.field.q}]"


class AddCharacter:
    """Additive character psi_c(x) = zeta_p^{Tr(c x)}; c defaults to 1."""

    __slots__ = ("field", "twist")

    def __init__(self, field: FieldSpec, twist: FqElem | None = None):
        if twist is not None:
            if twist.field is not field:
                raise ValueError("twist from a different field")
            if twist.is_zero():
                raise ValueError("twist must be nonzero (psi must be nontrivial)")
        self.field = field
        self.twist = twist

    def trace_arg(self, x: FqElem) -> int:
        y = x if self.twist is None else self.twist * x
        return self.field.trace(y)

    def __call__(self, x: FqElem) -> CycNum:
        return addchar_eval(self, x)

    def __repr__(self):
        t = "" if self.twist is None else f", c={self.twist!r}"
        return f"psi[q={self.field.q}{t}]"


def power_residue_character(field: FieldSpec, N: int, a: int = 1) -> MultCharacter:
    """phi_N^a, the order-N power residue character; requires N | q-1."""
    if N < 1 or (field.q - 1) % N != 0:
        raise ValueError(f"need N | q-1 (N={N}, q={field.q})")
    return MultCharacter(field, a * (field.q - 1) // N)


def char_eval(chi: MultCharacter, x: FqElem) -> CycNum:
    """chi_m(x) = zeta_{q-1}^{m dlog x}, with chi(0) = 0."""
    M = chi.field.q - 1
    if x.is_zero():
        return CycNum.zero(max(M, 1))
    k = chi.field.dlog(x)
    return CycNum.zeta_power(max(M, 1), (chi.m * k) % M if M else 0)


def addchar_eval(psi: AddCharacter, x: FqElem) -> CycNum:
    """psi(x) = zeta_p^{Tr(x)} (twisted: Tr(cx))."""
    t = psi.trace_arg(x)
    return CycNum.zeta_power(psi.field.p, t)
