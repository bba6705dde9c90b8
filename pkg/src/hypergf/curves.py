"""Point counts and character-eigencomponent counts on the curves
(1-x^N)(1-y^N) = lambda x^N y^N and the hypersurfaces prod(1-x_i^N) = lambda,
plus prime-sweep trace tables.

Counting works in u-space (u = x^N) with N-th-root multiplicity factors, one
pass over the field per curve.  Eigencounts use indicator weights at zero
coordinates: w(0, 0) = 1 and w(0, a) = 0 for a != 0.  This deliberately
differs from the character convention chi(0) = 0; it is what averaging the
twisted fixed-point counts over the group forces, and it is confined to this
module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .cyclotomic import CycNum
from .finfield import FieldSpec, FqElem, MultCharacter, build_field, power_residue_character
from .hgf_finite import hgf2f1

__all__ = [
    "CurveSpec",
    "HypersurfaceSpec",
    "count_points",
    "eigencount",
    "frobenius_trace",
    "eigencount_hypersurface",
    "interpolation_table",
    "TraceRow",
    "TraceTable",
]

DEFAULT_ENUM_BOUND = 2 ** 22


@dataclass(frozen=True)
class CurveSpec:
    """(1-x^N)(1-y^N) = lambda x^N y^N over a fixed field, q = 1 mod N."""

    N: int
    field: FieldSpec
    lam: FqElem

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if (self.field.q - 1) % self.N != 0:
            raise ValueError(f"need q = 1 mod N (q={self.field.q}, N={self.N})")
        if self.lam.field is not self.field:
            raise ValueError("lambda from a different field")
        if self.lam.is_zero() or self.lam == self.field.one:
            raise ValueError("lambda must avoid 0 and 1")


@dataclass(frozen=True)
class HypersurfaceSpec:
    """prod_{i=0}^{d} (1 - x_i^N) = lambda in affine (d+1)-space."""

    d: int
    N: int
    field: FieldSpec
    lam: FqElem
    enum_bound: int = DEFAULT_ENUM_BOUND

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if (self.field.q - 1) % self.N != 0:
            raise ValueError(f"need q = 1 mod N (q={self.field.q}, N={self.N})")
        if self.lam.is_zero() or self.lam == self.field.one:
            raise ValueError("lambda must avoid 0 and 1")
        if self.field.q ** (self.d + 1) > self.enum_bound:
            raise ValueError(
                f"enumeration size q^(d+1) = {self.field.q ** (self.d + 1)} "
                f"exceeds bound {self.enum_bound}")


def _nth_root_count(field: FieldSpec, N: int, u: FqElem) -> int:
    """#{x in F_q : x^N = u} for N | q-1."""
    if u.is_zero():
        return 1
    return N if (field.dlog(u) % N) == 0 else 0


def _conic_points(field: FieldSpec, lam: FqElem):
    """All (u, v) in F_q^2 with (1-u)(1-v) = lambda u v.

    One solution v per u except at the unique u killing the denominator.
    """
    one = field.one
    for uv in range(field.q):
        u = field.element(uv)
        den = (one - u) + lam * u
        if den.is_zero():
            continue
        v = (one - u) / den
        yield u, v


def count_points(spec: CurveSpec, projective: bool = False) -> int:
    """Number of F_q-points, affine or projective (adding the 2N points at
    infinity when (1-lambda)^{-1} is an N-th power in F_q)."""
    field, N, lam = spec.field, spec.N, spec.lam
    total = 0
    for u, v in _conic_points(field, lam):
        total += _nth_root_count(field, N, u) * _nth_root_count(field, N, v)
    if projective:
        w = (field.one - lam).inv()
        total += 2 * _nth_root_count(field, N, w)
    return total


def count_points_bruteforce(spec: CurveSpec, projective: bool = False) -> int:
    """Independent O(q^2) oracle enumerating (x, y) pairs directly."""
    field, N, lam = spec.field, spec.N, spec.lam
    one = field.one
    powN = [field.element(v) ** N for v in range(field.q)]
    total = 0
    for xv in range(field.q):
        fx = one - powN[xv]
        gx = lam * powN[xv]
        for yv in range(field.q):
            if fx * (one - powN[yv]) == gx * powN[yv]:
                total += 1
    if projective:
        # (x, infinity): x^N = (1-lambda)^{-1}, and symmetrically
        w = (one - lam).inv()
        total += 2 * sum(1 for xv in range(field.q) if powN[xv] == w)
    return total


def eigencount(spec: CurveSpec, idx) -> CycNum:
    """N(X, chi^{a,b}): the chi^{a,b}-weighted fixed-point average.

    Zero coordinates carry indicator weights, and for (a, 0) / (0, b) the
    points at infinity contribute phi_N^a((1-lambda)^{-1}).
    """
    a, b = idx
    field, N, lam = spec.field, spec.N, spec.lam
    a %= N
    b %= N
    M = max(field.q - 1, 1)
    s = (field.q - 1) // N  # phi_N has exponent s
    counts = [0] * M

    def weight_exp(x: FqElem, c: int):
        # returns None to kill the term, else exponent of zeta_{q-1}
        if x.is_zero():
            return None if c % N else 0
        return (c * s * field.dlog(x)) % M

    for u, v in _conic_points(field, lam):
        eu = weight_exp(u, a)
        if eu is None:
            continue
        ev = weight_exp(v, b)
        if ev is None:
            continue
        counts[(eu + ev) % M] += 1
    w = (field.one - lam).inv()
    if b % N == 0:
        counts[(a * s * field.dlog(w)) % M] += 1
    if a % N == 0:
        counts[(b * s * field.dlog(w)) % M] += 1
    return CycNum(M, counts)


def eigencount_bruteforce(spec: CurveSpec, idx) -> CycNum:
    """Twisted fixed-point oracle: counts points of X over the degree-N
    extension with Fr(P) = g P, averaged against the character.  Exact and
    independent of the u-space shortcut; prime base fields only, test scale."""
    a, b = idx
    field, N = spec.field, spec.N
    if field.f != 1:
        raise ValueError("bruteforce oracle supports prime base fields only")
    q = field.q
    p = field.p
    big = build_field(p, N)
    oneb = big.one
    lamb = big.element(spec.lam.coeffs[0])  # prime subfield embeds canonically
    # mu_N(F_q) identified with mu_N(C) through the generator convention:
    # zeta_N corresponds to g^{(q-1)/N} in F_p, embedded into the extension
    zN = big.element(pow(field.generator.coeffs[0], (q - 1) // N, p))
    zpows = [oneb]
    for _ in range(N - 1):
        zpows.append(zpows[-1] * zN)

    def root_class(r):
        for k, z in enumerate(zpows):
            if r == z:
                return k
        return None

    elems = [big.element(v) for v in range(big.q)]
    powN = [x ** N for x in elems]
    powq = [x ** q for x in elems]
    fixed = [[0] * N for _ in range(N)]
    for xv in range(big.q):
        x = elems[xv]
        fx = oneb - powN[xv]
        gx = lamb * powN[xv]
        ii = None if x.is_zero() else root_class(powq[xv] / x)
        if not x.is_zero() and ii is None:
            continue
        for yv in range(big.q):
            if fx * (oneb - powN[yv]) != gx * powN[yv]:
                continue
            y = elems[yv]
            jj = None if y.is_zero() else root_class(powq[yv] / y)
            if not y.is_zero() and jj is None:
                continue
            for i in range(N) if ii is None else [ii]:
                for j in range(N) if jj is None else [jj]:
                    fixed[i][j] += 1
    # infinity points: (x, inf) with x^N = (1-lambda)^{-1} fixes j freely,
    # and symmetrically for (inf, y)
    w = (oneb - lamb).inv()
    for xv in range(big.q):
        if elems[xv].is_zero() or powN[xv] != w:
            continue
        i = root_class(powq[xv] / elems[xv])
        if i is None:
            continue
        for j in range(N):
            fixed[i][j] += 1  # (x, inf)
            fixed[j][i] += 1  # (inf, y)
    # average: (1/N^2) sum_{i,j} zeta_N^{ai+bj} fixed[i][j]
    M = max(q - 1, 1)
    sN = M // N
    counts = [Fraction(0)] * M
    for i in range(N):
        for j in range(N):
            counts[((a * i + b * j) % N) * sN % M] += Fraction(fixed[i][j], N * N)
    return CycNum(M, counts)


def frobenius_trace(spec: CurveSpec, idx) -> CycNum:
    """Trace of inverse Frobenius on the (a,b)-eigenspace of H^1; equals the
    negated eigencount for a, b != 0."""
    a, b = idx
    if a % spec.N == 0 or b % spec.N == 0:
        raise ValueError("trace needs a, b != 0; use eigencount for the rest")
    return -eigencount(spec, idx)


def eigencount_hypersurface(spec: HypersurfaceSpec, idx) -> CycNum:
    """Weighted count over prod(1-u_i) = lambda with weights w(u_i, a_i)."""
    avec = [a % spec.N for a in idx]
    if len(avec) != spec.d + 1:
        raise ValueError(f"index vector must have length d+1 = {spec.d + 1}")
    field, N, lam = spec.field, spec.N, spec.lam
    q = field.q
    M = max(q - 1, 1)
    s = (q - 1) // N
    counts = [0] * M
    one = field.one
    elements = list(field.elements())

    def rec(i, prod, acc_exp):
        if i == spec.d:
            # solve (1 - u_d) = lam / prod
            u = one - lam / prod
            a = avec[i]
            if u.is_zero():
                if a == 0:
                    counts[acc_exp] += 1
                return
            counts[(acc_exp + a * s * field.dlog(u)) % M] += 1
            return
        a = avec[i]
        for u in elements:
            t = one - u
            if t.is_zero():
                continue  # product becomes 0 != lambda
            if u.is_zero():
                if a == 0:
                    rec(i + 1, prod * t, acc_exp)
                continue
            rec(i + 1, prod * t, (acc_exp + a * s * field.dlog(u)) % M)

    rec(0, one, 0)
    return CycNum(M, counts)


def hypersurface_count_bruteforce(spec: HypersurfaceSpec) -> int:
    """#U(F_q) by direct enumeration of all coordinate tuples."""
    field, N, lam = spec.field, spec.N, spec.lam
    one = field.one
    factors = [one - field.element(v) ** N for v in range(field.q)]
    total = 0

    def rec(i, prod):
        nonlocal total
        if i == spec.d + 1:
            total += prod == lam
            return
        for t in factors:
            rec(i + 1, prod * t)

    rec(0, one)
    return total


# ---------------------------------------------------------------------------
# Prime sweeps
# ---------------------------------------------------------------------------

@dataclass
class TraceRow:
    p: int
    a: int
    b: int
    value: CycNum
    value_float: complex


@dataclass
class TraceTable:
    N: int
    lam: Fraction
    idx: tuple
    rows: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)  # (p, reason)


def _primes_in(rng) -> list:
    lo, hi = rng
    out = []
    for n in range(max(lo, 2), hi):
        if all(n % d for d in range(2, int(math.isqrt(n)) + 1)):
            out.append(n)
    return out


def interpolation_table(N: int, lam, primes, idx,
                        field_bound: int = 2 ** 20) -> TraceTable:
    """One row per good prime p = 1 mod N: the exact value
    F(phi_N^a, phi_N^b; eps; lambda mod p) with its complex embedding.

    lam is a rational number; p is good when it divides neither numerator nor
    denominator of lambda (1-lambda) N.  Bad primes are listed as skipped.
    """
    lam = Fraction(lam)
    if lam == 0 or lam == 1:
        raise ValueError("lambda must avoid 0 and 1")
    a, b = idx
    table = TraceTable(N=N, lam=lam, idx=(a, b))
    plist = _primes_in(primes) if isinstance(primes, tuple) else sorted(primes)
    crit = lam * (1 - lam) * N
    for p in plist:
        if (p - 1) % N != 0:
            table.skipped.append((p, f"p != 1 mod {N}"))
            continue
        if crit.numerator % p == 0 or crit.denominator % p == 0:
            table.skipped.append((p, "p divides numerator/denominator of lambda(1-lambda)N"))
            continue
        K = build_field(p, 1, bound=field_bound)
        lam_p = K.element(lam.numerator % p) / K.element(lam.denominator % p)
        alpha = power_residue_character(K, N, a)
        beta = power_residue_character(K, N, b)
        eps = MultCharacter(K, 0)
        val = hgf2f1(alpha, beta, eps, lam_p)
        table.rows.append(TraceRow(p=p, a=a % N, b=b % N, value=val,
                                   value_float=val.to_complex()))
    return table
