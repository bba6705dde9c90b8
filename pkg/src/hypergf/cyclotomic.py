"""Exact arithmetic in cyclotomic fields Q(mu_L).

A CycNum is an element of Q(mu_L) stored in the power basis
{zeta_L^i : 0 <= i < phi(L)} modulo the L-th cyclotomic polynomial, with
Fraction coefficients.  Arithmetic is exact; equality across levels goes
through coercion to the lcm level.  Complex embedding (zeta_L -> e^{2 pi i/L})
is provided for float cross-checks only, never as the working representation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CycNum",
    "cyclotomic_polynomial",
    "galois_apply",
    "coerce_level",
    "embed_complex",
    "zeta",
]


# ---------------------------------------------------------------------------
# Integer / Fraction polynomial helpers (dense, ascending coefficients)
# ---------------------------------------------------------------------------

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod_exact(num, den):
    """Division of integer polynomials when den is monic."""
    num = list(num)
    q = [0] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        lead = num[-1]
        q[shift] = lead
        for i, d in enumerate(den):
            num[shift + i] -= lead * d
        _poly_trim(num)
        if len(num) >= len(den) and num[-1] == 0:
            _poly_trim(num)
    return _poly_trim(q), num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple:
    """The L-th cyclotomic polynomial as a tuple of integer coefficients
    (ascending degree).  Computed by dividing x^L - 1 by Phi_d for the
    proper divisors d of L."""
    if L < 1:
        raise ValueError("level must be >= 1")
    num = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            q, r = _poly_divmod_exact(num, list(cyclotomic_polynomial(d)))
            if r:
                raise ArithmeticError("cyclotomic division left a remainder")
            num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _phi(L: int) -> int:
    return len(cyclotomic_polynomial(L)) - 1


@lru_cache(maxsize=None)
def _power_reduction_rows(L: int) -> tuple:
    """Rows r_k (integer tuples of length phi(L)) with
    x^k = r_k modulo Phi_L, for 0 <= k < L."""
    phi = _phi(L)
    Phi = cyclotomic_polynomial(L)
    rows = []
    # x^phi = -(Phi - x^phi), iterate the companion recurrence
    cur = [0] * phi
    for k in range(L):
        if k < phi:
            cur = [0] * phi
            cur[k] = 1
        else:
            prev = rows[k - 1]
            shifted = [0] + list(prev[: phi - 1])
            lead = prev[phi - 1]
            cur = [shifted[i] - lead * Phi[i] for i in range(phi)]
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_mod_cyclo(coeffs, L):
    """Reduce a coefficient list (any length) modulo Phi_L, Fractions ok."""
    phi = _phi(L)
    out = [Fraction(0)] * phi
    rows = None
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k < phi:
            out[k] += c
        else:
            if rows is None:
                rows = _power_reduction_rows(L)
            row = rows[k % L]  # zeta_L^k = zeta_L^(k mod L)
            for i, ri in enumerate(row):
                if ri:
                    out[i] += c * ri
    return out


# ---------------------------------------------------------------------------
# CycNum
# ---------------------------------------------------------------------------

class CycNum:
    """An exact element of Q(mu_L) in the power basis modulo Phi_L."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        if level < 1:
            raise ValueError("level must be >= 1")
        phi = _phi(level)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_cyclo(cs, level)
        else:
            cs = cs + [Fraction(0)] * (phi - len(cs))
        self.level = level
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, level: int = 1) -> "CycNum":
        return cls(level, [])

    @classmethod
    def one(cls, level: int = 1) -> "CycNum":
        return cls(level, [1])

    @classmethod
    def from_rational(cls, r, level: int = 1) -> "CycNum":
        return cls(level, [Fraction(r)])

    @classmethod
    def zeta_power(cls, level: int, k: int = 1) -> "CycNum":
        """zeta_L^k."""
        k %= level
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(level, coeffs)

    # -- structural helpers -------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """All coefficients have denominator 1 (element of Z[mu_L])."""
        return all(c.denominator == 1 for c in self.coeffs)

    def _raise_to(self, L2: int) -> "CycNum":
        if L2 == self.level:
            return self
        if L2 % self.level != 0:
            raise ValueError(f"cannot raise level {self.level} to {L2}")
        t = L2 // self.level
        out = [Fraction(0)] * (self.level * t)
        for i, c in enumerate(self.coeffs):
            out[i * t] = c
        return CycNum(L2, out)

    @staticmethod
    def _common(a: "CycNum", b: "CycNum"):
        if a.level == b.level:
            return a, b
        L = math.lcm(a.level, b.level)
        return a._raise_to(L), b._raise_to(L)

    @staticmethod
    def _coerce_other(x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum(1, [Fraction(x)])
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        return CycNum(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.level, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return CycNum(a.level, _reduce_mod_cyclo(prod, a.level))

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse via the extended euclidean algorithm
        against Phi_L over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero cyclotomic number")
        Phi = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        r0, r1 = Phi, _poly_trim([Fraction(c) for c in self.coeffs])
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _frac_poly_divmod(r0, r1)
            if not r:
                break
            s0, s1 = s1, _frac_poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, r
        if len(r1) != 1:
            raise ArithmeticError("gcd with cyclotomic polynomial not constant")
        c = r1[0]
        inv_coeffs = [x / c for x in s1]
        return CycNum(self.level, _reduce_mod_cyclo(inv_coeffs, self.level))

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, CycNum) and other.is_rational():
            r = other.as_rational()
            if r == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum(self.level, [c / r for c in self.coeffs])
        a, b = self._common(self, other)
        return a * b.inv()

    def __rtruediv__(self, other):
        other = self._coerce_other(other)
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = CycNum.one(self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    # equality goes through level coercion, so a level-dependent hash would
    # break the hash/eq contract; CycNum is deliberately unhashable
    __hash__ = None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z{self.level}")
            else:
                terms.append(f"{c}*z{self.level}^{i}")
        return "CycNum(" + (" + ".join(terms) if terms else "0") + ")"

    # -- level coercion ------------------------------------------------------

    def coerce(self, new_level: int) -> "CycNum":
        """Rewrite the element at another cyclotomic level.

        Raising requires level | new_level.  Lowering requires the element to
        actually lie in Q(mu_new); otherwise a ValueError is raised.
        """
        if new_level == self.level:
            return self
        if new_level % self.level == 0:
            return self._raise_to(new_level)
        if self.level % new_level != 0:
            # go through the lcm, then lower
            return self._raise_to(math.lcm(self.level, new_level)).coerce(new_level)
        up, pivots, solver = _subfield_solver(self.level, new_level)
        target = list(self.coeffs)
        rhs = [target[i] for i in pivots]
        sol = [sum(solver[i][j] * rhs[j] for j in range(len(rhs)))
               for i in range(len(solver))]
        # verify: the candidate must reproduce every coordinate
        for i in range(len(target)):
            acc = sum(up[i][j] * sol[j] for j in range(len(sol)))
            if acc != target[i]:
                raise ValueError(
                    f"element of Q(mu_{self.level}) does not lie in Q(mu_{new_level})")
        return CycNum(new_level, sol)

    # -- galois action -------------------------------------------------------

    def galois(self, c: int) -> "CycNum":
        """Image under zeta_L -> zeta_L^c, for gcd(c, L) = 1."""
        L = self.level
        c %= L
        if math.gcd(c, L) != 1:
            raise ValueError(f"galois exponent {c} not coprime to level {L}")
        out = [Fraction(0)] * L
        for i, co in enumerate(self.coeffs):
            if co:
                out[(i * c) % L] += co
        return CycNum(L, _reduce_mod_cyclo(out, L))

    def conjugate(self) -> "CycNum":
        return self.galois(-1)

    # -- embedding / io ------------------------------------------------------

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.level),
                    math.sin(2 * math.pi / self.level))
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "CycNum":
        return cls(obj["level"],
                   [Fraction(n, d) for n, d in obj["coeffs"]])


def _frac_poly_divmod(num, den):
    num = list(num)
    dn = len(den)
    if dn == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(num) - dn + 1)
    lead = den[-1]
    while len(num) >= dn:
        c = num[-1] / lead
        shift = len(num) - dn
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        _poly_trim(num)
    return _poly_trim(q), num


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
           for i in range(n)]
    return _poly_trim(out)


@lru_cache(maxsize=None)
def _subfield_solver(L: int, M: int):
    """Solver data for lowering from level L to M | L.

    Returns (up, pivots, inv) where up is the phi(L) x phi(M) integer matrix
    whose columns are zeta_M^j written at level L, pivots selects phi(M)
    independent rows and inv is the Fraction inverse of that square block.
    """
    if L % M != 0:
        raise ValueError("lowering target must divide the level")
    t = L // M
    phiL, phiM = _phi(L), _phi(M)
    cols = []
    for j in range(phiM):
        vec = [Fraction(0)] * (j * t + 1)
        vec[j * t] = Fraction(1)
        cols.append(_reduce_mod_cyclo(vec, L))
    up = [[cols[j][i] for j in range(phiM)] for i in range(phiL)]
    # gaussian elimination to find pivot rows and invert the pivot block
    mat = [row[:] for row in up]
    pivots = []
    used = [False] * phiL
    col_order = []
    for j in range(phiM):
        pr = None
        for i in range(phiL):
            if not used[i] and mat[i][j] != 0:
                pr = i
                break
        if pr is None:
            raise ArithmeticError("subfield basis matrix is rank deficient")
        used[pr] = True
        pivots.append(pr)
        col_order.append(j)
        piv = mat[pr][j]
        for i in range(phiL):
            if i != pr and mat[i][j] != 0:
                f = mat[i][j] / piv
                for jj in range(phiM):
                    mat[i][jj] -= f * mat[pr][jj]
    # invert the pivot block by solving against identity
    block = [[up[pivots[i]][j] for j in range(phiM)] for i in range(phiM)]
    inv = _invert_fraction_matrix(block)
    return (tuple(tuple(r) for r in up), tuple(pivots),
            tuple(tuple(r) for r in inv))


def _invert_fraction_matrix(block):
    n = len(block)
    aug = [[Fraction(block[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pr = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pr] = aug[pr], aug[col]
        piv = aug[col][col]
        aug[col] = [x / piv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# Module-level operation wrappers
# ---------------------------------------------------------------------------

def zeta(level: int, k: int = 1) -> CycNum:
    return CycNum.zeta_power(level, k)


def galois_apply(c: int, a: CycNum) -> CycNum:
    return a.galois(c)


def coerce_level(a: CycNum, new_level: int) -> CycNum:
    return a.coerce(new_level)


def embed_complex(a: CycNum) -> complex:
    return a.to_complex()
