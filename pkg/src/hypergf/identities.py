"""Exact verification of the finite-field transformation and summation
formulas: Euler and Pfaff, the quadratic family, the cubic transformation, and
the Kummer evaluation at -1 in its general (Gauss-sum) and special
(Jacobi-sum) forms.

Translation dictionary: F_mu(s, t) becomes F(chi_s, chi_t; eps; mu) and the
Kummer-character factor K_mu^s becomes chi_s(mu), with chi_s the character of
exponent s (q-1).  A grid point is skipped, never failed, when either side's
argument lands in {0, 1} or a denominator vanishes; boundary character values
(2s = 0, s = 0, or a trivial square root in the Kummer sum) are excluded from
the generic grids and checked separately against their closed forms.

Every identity is checked with both sides computed independently; the batch
runners and the per-tuple reference checks share only the Gauss-sum tables.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum
from ._engine import get_engine, cyc_convolve, ExactValue
from .finfield import FieldSpec, FqElem, MultCharacter, build_field, char_eval
from .charsum import jacobi_sum
from .hgf_finite import hgf2f1

__all__ = [
    "DictionaryContext",
    "VerificationReport",
    "verify_euler_pfaff",
    "verify_quadratic",
    "verify_kummer",
    "run_euler_pfaff",
    "run_quadratic",
    "run_kummer",
    "run_boundary",
    "run_identity",
    "kummer_row_check",
    "canonical_fields",
    "QUADRATIC_IDS",
    "ALL_IDENTITIES",
]

#: acceptance field list; identity grids filter it by divisibility
CANONICAL_Q = (3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49)

QUADRATIC_IDS = ("e4.6", "e4.7", "e4.8", "e4.9", "e4.10",
                 "e4.11", "e4.12", "e4.13", "cubic")
ALL_IDENTITIES = ("euler", "pfaff") + QUADRATIC_IDS + ("kummer", "kummer-special")


def canonical_fields(q_max: int = 49):
    out = []
    for q in CANONICAL_Q:
        if q > q_max:
            continue
        p = min(d for d in range(2, q + 1) if q % d == 0)
        f = round(math.log(q, p))
        out.append(build_field(p, f))
    return out


class DictionaryContext:
    """A field together with a level N | q-1 and the map s -> chi_{s(q-1)}."""

    def __init__(self, field: FieldSpec, N: int | None = None):
        self.field = field
        self.N = N if N is not None else field.q - 1
        if self.N < 1 or (field.q - 1) % self.N != 0:
            raise ValueError(f"need N | q-1 (N={self.N}, q={field.q})")

    def char_for(self, s) -> MultCharacter:
        s = Fraction(s)
        m = s * (self.field.q - 1)
        if m.denominator != 1:
            raise ValueError(f"chi_s undefined: (q-1)s = {m} is not integral")
        return MultCharacter(self.field, int(m) % (self.field.q - 1))

    @property
    def eps(self) -> MultCharacter:
        return MultCharacter(self.field, 0)


@dataclass
class VerificationReport:
    identity: str
    q: int
    grid: int = 0
    verified: int = 0
    skipped: int = 0
    exceptional: list = dc_field(default_factory=list)
    skip_reasons: Counter = dc_field(default_factory=Counter)
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.exceptional

    def consistent(self) -> bool:
        return self.verified + self.skipped + len(self.exceptional) == self.grid

    def skip(self, n: int, reason: str):
        self.grid += n
        self.skipped += n
        self.skip_reasons[reason] += n

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "q": self.q,
            "grid": self.grid,
            "verified": self.verified,
            "skipped": self.skipped,
            "exceptional": len(self.exceptional),
            "exceptional_cases": [str(e) for e in self.exceptional[:32]],
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# Quadratic / cubic identity table
# ---------------------------------------------------------------------------
# Each entry: div | q-1 required; s-grid free or fixed; generic excludes the
# boundary exponents; per (m, lam) the two sides' character exponents,
# arguments, the K-factor (exponent, argument), and denominators to guard.

def _fq(field, n):
    return field.element(n % field.p) if field.f == 1 else field.element(n)


def _quad_table(field: FieldSpec):
    one = field.one
    two = one + one
    three = two + one

    def frac(den_val):
        # (1-lam)/den as a field element, None on zero division
        return None

    M = field.q - 1
    half = M // 2 if M % 2 == 0 else None
    quarter = M // 4 if M % 4 == 0 else None
    third = M // 3 if M % 3 == 0 else None

    def sq(x):
        return x * x

    table = {
        "e4.6": dict(
            div=2, sfree=True,
            boundary=lambda m: (2 * m) % M == 0,
            lhs=lambda m: ((2 * m) % M, (2 * m) % M),
            rhs=lambda m: (m, (m + half) % M),
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: lam,
            rhs_arg=lambda lam: one - sq((one - lam) / (one + lam)),
            k=lambda m: (2 * m) % M,
            k_arg=lambda lam: one + lam,
        ),
        "e4.7": dict(
            div=2, sfree=True,
            boundary=lambda m: (2 * m) % M == 0,
            lhs=lambda m: (m, (m + half) % M),
            rhs=lambda m: ((2 * m) % M, half),
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: sq(lam),
            rhs_arg=lambda lam: (two * lam) / (one + lam),
            k=lambda m: (2 * m) % M,
            k_arg=lambda lam: one + lam,
        ),
        "e4.8": dict(
            div=2, sfree=True,
            boundary=lambda m: (2 * m) % M == 0,
            lhs=lambda m: ((2 * m) % M, (M - 2 * m) % M),
            rhs=lambda m: (m, (half - m) % M),
            dens=lambda lam: [],
            lhs_arg=lambda lam: lam,
            rhs_arg=lambda lam: one - sq(one - two * lam),
            k=None,
            k_arg=None,
        ),
        "e4.9": dict(
            div=2, sfree=True,
            boundary=lambda m: (2 * m) % M == 0,
            lhs=lambda m: ((2 * m) % M, (2 * m) % M),
            rhs=lambda m: (m, (half - m) % M),
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: -lam,
            rhs_arg=lambda lam: one - sq((one - lam) / (one + lam)),
            k=lambda m: (2 * m) % M,
            k_arg=lambda lam: one + lam,
        ),
        "e4.10": dict(
            div=2, sfree=True,
            boundary=lambda m: m % M == 0,
            lhs=lambda m: (m, m),
            rhs=lambda m: (m, half),
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: sq(lam),
            rhs_arg=lambda lam: one - sq((one - lam) / (one + lam)),
            k=lambda m: (2 * m) % M,
            k_arg=lambda lam: one + lam,
        ),
        "e4.11": dict(
            div=4, sfree=False, fixed_s=(Fraction(1, 4),),
            boundary=lambda m: False,
            lhs=lambda m: (quarter, 3 * quarter) if quarter else None,
            rhs=lambda m: (quarter, 3 * quarter) if quarter else None,
            dens=lambda lam: [one + three * lam],
            lhs_arg=lambda lam: sq(lam),
            rhs_arg=lambda lam: one - sq((one - lam) / (one + three * lam)),
            k=lambda m: half,
            k_arg=lambda lam: one + three * lam,
        ),
        "e4.12": dict(
            div=2, sfree=False, fixed_s=(Fraction(1, 2),),
            boundary=lambda m: False,
            lhs=lambda m: (half, half),
            rhs=lambda m: (half, half),
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: sq(sq(lam)),
            rhs_arg=lambda lam: one - sq(sq((one - lam) / (one + lam))),
            k=None,
            k_arg=None,
        ),
        "e4.13": dict(
            div=4, sfree=False, fixed_s=(Fraction(1, 2),),
            boundary=lambda m: False,
            lhs=lambda m: (half, half),
            rhs=lambda m: (quarter, half) if quarter else None,
            dens=lambda lam: [one + lam],
            lhs_arg=lambda lam: -sq(lam),
            rhs_arg=lambda lam: one - sq(sq((one - lam) / (one + lam))),
            k=None,
            k_arg=None,
        ),
        "cubic": dict(
            div=3, sfree=False, fixed_s=(Fraction(1, 3),),
            boundary=lambda m: False,
            lhs=lambda m: (third, 2 * third) if third else None,
            rhs=lambda m: (third, 2 * third) if third else None,
            dens=lambda lam: [one + two * lam],
            lhs_arg=lambda lam: lam * lam * lam,
            rhs_arg=lambda lam: one - ((one - lam) / (one + two * lam)) ** 3,
            k=None,
            k_arg=None,
        ),
    }
    return table


# ---------------------------------------------------------------------------
# Per-tuple reference checks (slow path, used as the oracle in tests)
# ---------------------------------------------------------------------------

def _status_eq(lhs: CycNum, rhs: CycNum) -> str:
    return "verified" if lhs == rhs else "exceptional"


def verify_euler_pfaff(ctx: DictionaryContext, alpha: MultCharacter,
                       beta: MultCharacter, gamma: MultCharacter,
                       lam: FqElem) -> dict:
    """Check the Euler and Pfaff transformations at one grid point.

    Returns {'euler': status, 'pfaff': status} with status one of 'verified',
    'skipped:<reason>', 'exceptional'.
    """
    field = ctx.field
    out = {}
    if alpha.is_trivial() or beta.is_trivial() or alpha == gamma or beta == gamma:
        reason = "skipped:character precondition"
        return {"euler": reason, "pfaff": reason}
    if lam == field.one:
        return {"euler": "skipped:lambda = 1", "pfaff": "skipped:lambda = 1"}
    lhs = hgf2f1(alpha, beta, gamma, lam)
    fac = char_eval((alpha * beta).conj() * gamma, field.one - lam)
    rhs = fac * hgf2f1(alpha.conj() * gamma, beta.conj() * gamma, gamma, lam)
    out["euler"] = _status_eq(lhs, rhs)
    facp = char_eval(alpha.conj(), field.one - lam)
    if lam.is_zero():
        arg = lam  # 0/(0-1) = 0
    else:
        arg = lam / (lam - field.one)
    rhsp = facp * hgf2f1(alpha, beta.conj() * gamma, gamma, arg)
    out["pfaff"] = _status_eq(lhs, rhsp)
    return out


def verify_quadratic(ident: str, ctx: DictionaryContext, s, lam: FqElem) -> str:
    """Reference check of one quadratic/cubic grid point; s is the fractional
    index (character exponent s(q-1))."""
    field = ctx.field
    M = field.q - 1
    spec = _quad_table(field).get(ident)
    if spec is None:
        raise ValueError(f"unknown identity {ident!r}")
    if M % spec["div"] != 0:
        return f"skipped:requires {spec['div']} | q-1"
    s = Fraction(s)
    m = int(s * M) % M if (s * M).denominator == 1 else None
    if m is None:
        return "skipped:character index not realizable"
    if spec["boundary"](m):
        return "skipped:boundary character"
    for d in spec["dens"](lam):
        if d.is_zero():
            return "skipped:denominator zero"
    la = spec["lhs_arg"](lam)
    ra = spec["rhs_arg"](lam)
    if la.is_zero() or la == field.one or ra.is_zero() or ra == field.one:
        return "skipped:argument in {0,1}"
    m1, m2 = spec["lhs"](m)
    r1, r2 = spec["rhs"](m)
    eps = ctx.eps
    lhs = hgf2f1(MultCharacter(field, m1), MultCharacter(field, m2), eps, la)
    if spec["k"] is not None:
        lhs = char_eval(MultCharacter(field, spec["k"](m)), spec["k_arg"](lam)) * lhs
    rhs = hgf2f1(MultCharacter(field, r1), MultCharacter(field, r2), eps, ra)
    return _status_eq(lhs, rhs)


def verify_kummer(ctx: DictionaryContext, alpha: MultCharacter,
                  beta: MultCharacter) -> str:
    """General finite Kummer at -1:
    F(a^2, b; a^2 conj(b); -1) = sum over square roots a' of a^2 of
    g_var(a^2 conj(b)) g(a') / (g(a^2) g_var(a' conj(b))).  Odd q only."""
    field = ctx.field
    if field.p == 2:
        return "skipped:even characteristic"
    eng = get_engine(field)
    M = field.q - 1
    ma, mb = alpha.m, beta.m
    c = (2 * ma - mb) % M
    minus1 = -field.one
    lhs = eng.hgf_value((2 * ma) % M, mb, c, minus1)
    roots = [(ma + t) % M for t in (0, M // 2)]
    terms = []
    for r in roots:
        vec, e = _gauss_ratio(eng, c, r, (2 * ma) % M, (r - mb) % M)
        terms.append((vec, e))
    emax = max(e for _, e in terms)
    total = np.zeros(eng.L, dtype=object)
    for vec, e in terms:
        total = total + vec.astype(object) * (field.q ** (emax - e))
    rhs = ExactValue(total, field.q ** emax)
    return _status_eq(eng.value_to_cycnum(lhs, level=M),
                      eng.value_to_cycnum(rhs, level=M))


def _gauss_ratio(eng, c, r, d1, d2):
    """g_var(chi_c) g(chi_r) / (g(chi_d1) g_var(chi_d2)) as (vec, q_exponent)."""
    q = eng.q
    vec = eng.e0 * q if c == 0 else eng.G[c]
    vec = cyc_convolve(vec, eng.G[r])
    e = 0
    if d1 != 0:
        vec = cyc_convolve(vec, eng.INVG[d1])
        e += 1
    if d2 == 0:
        e += 1  # 1/g_var(eps) = 1/q
    else:
        vec = cyc_convolve(vec, eng.INVG[d2])
        e += 1
    return vec, e


def kummer_special_value(field: FieldSpec, m: int) -> tuple:
    """(lhs, rhs) of the special Kummer form for alpha = chi_m:
    F(a^2, a^2; eps; -1) vs sum over roots a' of a'(-1) j(a', a')."""
    M = field.q - 1
    a2 = MultCharacter(field, 2 * m)
    eps = MultCharacter(field, 0)
    lhs = hgf2f1(a2, a2, eps, -field.one)
    rhs = CycNum.zero(M)
    for r in ((m) % M, (m + M // 2) % M):
        chi = MultCharacter(field, r)
        rhs = rhs + char_eval(chi, -field.one) * jacobi_sum(chi, chi)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Batched grid runners
# ---------------------------------------------------------------------------

def _dlog_tables(field: FieldSpec):
    """dlog(1 - g^k) for k != 0, and the Pfaff argument map
    k -> dlog(g^k / (g^k - 1))."""
    M = field.q - 1
    one = field.one
    g = field.generator
    dlog1m = [None] * M
    pfk = [None] * M
    x = one
    for k in range(M):
        if k > 0:
            dlog1m[k] = field.dlog(one - x)
            pfk[k] = field.dlog(x / (x - one))
        x = x * g
    return dlog1m, pfk


def _roll_rows(rows: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Row i cyclically shifted by shifts[i] (multiplication by zeta^shift)."""
    L = rows.shape[1]
    idx = (np.arange(L)[None, :] - shifts[:, None]) % L
    return np.take_along_axis(rows, idx, axis=1)


def _pair_check(eng, rep, name, lvec, rvec, S_l, S_r, kl, kr, shifts,
                mult, info):
    """Assert lvec*S_l[kl] == roll(rvec*S_r[kr]) mod Phi for each grid row;
    each row stands for `mult` ordered grid tuples."""
    X = eng.cyc_matmul(lvec, S_l[kl])
    Y = eng.cyc_matmul(rvec, S_r[kr])
    D = X - _roll_rows(Y, shifts)
    mask = eng.zero_mask(D.T)
    good = int(mask.sum())
    n = len(kl)
    rep.grid += mult * n
    rep.verified += mult * good
    for i in np.nonzero(~mask)[0]:
        for _ in range(mult):
            rep.exceptional.append(dict(info, dlog_lambda=int(kl[i])))
    return mask


def run_euler_pfaff(field: FieldSpec):
    """Exhaustive Euler and Pfaff verification over all (alpha, beta, gamma)
    and all lambda; returns (euler_report, pfaff_report).

    Both checks work on the constant-cancelled cross-multiplied form
    P2[a',b'] * S_{a,b}(k)  ==  zeta-shift * P2[a,b] * S_{a',b'}(k'),
    an equivalent identity since multiplication by the nonzero Gauss sums and
    g_var(gamma) is injective in Q(mu_L).
    """
    eng = get_engine(field)
    M, q = eng.M, field.q
    rep_e = VerificationReport("euler", q)
    rep_p = VerificationReport("pfaff", q)
    dlog1m, pfk = _dlog_tables(field)
    eng._slab_cache.clear()
    P2 = eng.pair_table()
    sm = eng.sm
    ks = np.arange(1, M)

    for c in range(M):
        # ordered tuples with alpha or beta in {eps, gamma} are skips
        n_valid = (M - 1) if c == 0 else (M - 2)
        rep_e.skip((M * M - n_valid ** 2) * q, "character precondition")
        rep_p.skip((M * M - n_valid ** 2) * q, "character precondition")
        valid_idx = [x for x in range(M) if x != 0 and x != c]
        for a in valid_idx:
            ap = (c - a) % M
            if a > ap:
                continue
            for b in valid_idx:
                bp = (c - b) % M
                if (a, b) <= (ap, bp):
                    mult = 1 if (a, b) == (ap, bp) else 2
                    # lambda = 0 trivially verified, lambda = 1 skipped
                    rep_e.grid += mult
                    rep_e.verified += mult
                    rep_e.skip(mult, "lambda = 1")
                    t = (c - a - b) % M
                    shifts = np.array([(t * dlog1m[k] * sm) % eng.L
                                       for k in ks])
                    _pair_check(eng, rep_e, "euler", P2[ap, bp], P2[a, b],
                                eng.slab(a, b, c), eng.slab(ap, bp, c),
                                ks, ks, shifts, mult,
                                {"identity": "euler", "q": q, "alpha": a,
                                 "beta": b, "gamma": c})
            for row in ([a, ap] if a != ap else [a]):
                for b in valid_idx:
                    bp = (c - b) % M
                    if b > bp:
                        continue
                    mult = 1 if b == bp else 2
                    rep_p.grid += mult
                    rep_p.verified += mult  # lambda = 0
                    rep_p.skip(mult, "lambda = 1")
                    t = (-row) % M
                    shifts = np.array([(t * dlog1m[k] * sm) % eng.L
                                       for k in ks])
                    kr = np.array([pfk[k] for k in ks])
                    _pair_check(eng, rep_p, "pfaff", P2[row, bp], P2[row, b],
                                eng.slab(row, b, c), eng.slab(row, bp, c),
                                ks, kr, shifts, mult,
                                {"identity": "pfaff", "q": q, "alpha": row,
                                 "beta": b, "gamma": c})
    return rep_e, rep_p


def run_quadratic(ident: str, field: FieldSpec) -> VerificationReport:
    """Generic-grid verification of one quadratic/cubic identity over all
    realizable indices s and all lambda."""
    rep = VerificationReport(ident, field.q)
    M = field.q - 1
    spec = _quad_table(field).get(ident)
    if spec is None:
        raise ValueError(f"unknown identity {ident!r}")
    if M % spec["div"] != 0:
        rep.notes.append(f"field skipped: requires {spec['div']} | q-1")
        return rep
    eng = get_engine(field)
    P2 = eng.pair_table()
    sm = eng.sm
    if spec["sfree"]:
        ms = [m for m in range(M)]
    else:
        ms = [int(Fraction(s) * M) % M for s in spec["fixed_s"]]
    for m in ms:
        if spec["boundary"](m):
            rep.skip(field.q, "boundary character")
            continue
        # classify every lambda
        kl, kr, shifts = [], [], []
        for lv in range(field.q):
            lam = field.element(lv)
            rep.grid += 1
            if any(d.is_zero() for d in spec["dens"](lam)):
                rep.skipped += 1
                rep.skip_reasons["denominator zero"] += 1
                continue
            la = spec["lhs_arg"](lam)
            ra = spec["rhs_arg"](lam)
            if (la.is_zero() or la == field.one
                    or ra.is_zero() or ra == field.one):
                rep.skipped += 1
                rep.skip_reasons["argument in {0,1}"] += 1
                continue
            kl.append(field.dlog(la))
            kr.append(field.dlog(ra))
            if spec["k"] is not None:
                sh = (spec["k"](m) * field.dlog(spec["k_arg"](lam)) * sm) % eng.L
            else:
                sh = 0
            shifts.append(sh)
        if not kl:
            continue
        m1, m2 = spec["lhs"](m)
        r1, r2 = spec["rhs"](m)
        S_l = eng.slab(m1, m2, 0)
        S_r = eng.slab(r1, r2, 0)
        # K-factor multiplies the LHS: roll X rather than Y
        X = eng.cyc_matmul(P2[r1, r2], S_l[np.array(kl)])
        X = _roll_rows(X, np.array(shifts))
        Y = eng.cyc_matmul(P2[m1, m2], S_r[np.array(kr)])
        mask = eng.zero_mask((X - Y).T)
        rep.verified += int(mask.sum())
        for i in np.nonzero(~mask)[0]:
            rep.exceptional.append(
                {"identity": ident, "q": field.q, "m": m,
                 "dlog_lhs_arg": int(kl[i]), "dlog_rhs_arg": int(kr[i])})
    return rep


def run_kummer(field: FieldSpec, special: bool = False) -> VerificationReport:
    """General Kummer over all (alpha, beta); special form over the generic
    alpha (alpha^2 != eps).  Odd characteristic only."""
    name = "kummer-special" if special else "kummer"
    rep = VerificationReport(name, field.q)
    if field.p == 2:
        rep.notes.append("field skipped: even characteristic")
        return rep
    M = field.q - 1
    ctx = DictionaryContext(field)
    if special:
        for m in range(M):
            rep.grid += 1
            if (2 * m) % M == 0:
                rep.skipped += 1
                rep.skip_reasons["boundary character (alpha^2 = eps)"] += 1
                continue
            lhs, rhs = kummer_special_value(field, m)
            if lhs == rhs:
                rep.verified += 1
            else:
                rep.exceptional.append({"identity": name, "q": field.q, "m": m})
        return rep
    for ma in range(M):
        for mb in range(M):
            rep.grid += 1
            st = verify_kummer(ctx, MultCharacter(field, ma),
                               MultCharacter(field, mb))
            if st == "verified":
                rep.verified += 1
            elif st.startswith("skipped"):
                rep.skipped += 1
                rep.skip_reasons[st.split(":", 1)[1]] += 1
            else:
                rep.exceptional.append(
                    {"identity": name, "q": field.q, "ma": ma, "mb": mb})
    return rep


def run_boundary(ident: str, field: FieldSpec) -> VerificationReport:
    """Boundary character cases, checked against the closed forms
    F(alpha, eps; eps; mu) = 1 + q conj(alpha)(1 - mu) (and the beta-value
    realizations 1 and chi_{1/2}(-1) q for the special Kummer)."""
    rep = VerificationReport(f"{ident}:boundary", field.q)
    M = field.q - 1
    if ident == "kummer-special":
        if field.p == 2:
            rep.notes.append("field skipped: even characteristic")
            return rep
        eps = MultCharacter(field, 0)
        half = MultCharacter(field, M // 2)
        expected = (CycNum.from_rational(1)
                    + char_eval(half, -field.one) ** 2 * field.q)
        for m in (0, M // 2):
            rep.grid += 1
            lhs = hgf2f1(eps, eps, eps, -field.one)
            ok = lhs == expected
            if ok:
                rep.verified += 1
            else:
                rep.exceptional.append({"identity": rep.identity, "m": m})
        return rep
    spec = _quad_table(field).get(ident)
    if spec is None or not spec["sfree"]:
        rep.notes.append("identity has no boundary grid")
        return rep
    if M % spec["div"] != 0:
        rep.notes.append(f"field skipped: requires {spec['div']} | q-1")
        return rep
    eps = MultCharacter(field, 0)
    for m in range(M):
        if not spec["boundary"](m):
            continue
        for lv in range(field.q):
            lam = field.element(lv)
            rep.grid += 1
            if any(d.is_zero() for d in spec["dens"](lam)):
                rep.skipped += 1
                rep.skip_reasons["denominator zero"] += 1
                continue
            la = spec["lhs_arg"](lam)
            ra = spec["rhs_arg"](lam)
            if (la.is_zero() or la == field.one
                    or ra.is_zero() or ra == field.one):
                rep.skipped += 1
                rep.skip_reasons["argument in {0,1}"] += 1
                continue
            m1, m2 = spec["lhs"](m)
            r1, r2 = spec["rhs"](m)
            lhs = hgf2f1(MultCharacter(field, m1), MultCharacter(field, m2),
                         eps, la)
            if spec["k"] is not None:
                lhs = char_eval(MultCharacter(field, spec["k"](m)),
                                spec["k_arg"](lam)) * lhs
            rhs = hgf2f1(MultCharacter(field, r1), MultCharacter(field, r2),
                         eps, ra)
            ok = lhs == rhs
            # closed-form cross-checks on sides with a trivial upper index
            for (x1, x2, arg, val) in ((m1, m2, la, None), (r1, r2, ra, rhs)):
                if x1 == 0 or x2 == 0:
                    other = MultCharacter(field, x2 if x1 == 0 else x1)
                    closed = (CycNum.from_rational(1) + field.q *
                              char_eval(other.conj(), field.one - arg))
                    side = hgf2f1(MultCharacter(field, x1),
                                  MultCharacter(field, x2), eps, arg)
                    ok = ok and side == closed
            if ok:
                rep.verified += 1
            else:
                rep.exceptional.append(
                    {"identity": rep.identity, "q": field.q, "m": m,
                     "dlog_lambda": lv})
    return rep


def run_identity(name: str, q_max: int = 49, fields=None) -> list:
    """All reports for one identity over the canonical fields."""
    if fields is None:
        fields = canonical_fields(q_max)
    reports = []
    for field in fields:
        if name == "euler":
            reports.append(run_euler_pfaff(field)[0])
        elif name == "pfaff":
            reports.append(run_euler_pfaff(field)[1])
        elif name in QUADRATIC_IDS:
            reports.append(run_quadratic(name, field))
        elif name == "kummer":
            reports.append(run_kummer(field, special=False))
        elif name == "kummer-special":
            reports.append(run_kummer(field, special=True))
        else:
            raise ValueError(f"unknown identity {name!r}")
    return reports


def run_euler_pfaff_all(q_max: int = 49, fields=None):
    """Euler and Pfaff in one pass (they share slabs)."""
    if fields is None:
        fields = canonical_fields(q_max)
    out = []
    for field in fields:
        out.append(run_euler_pfaff(field))
    return out


# ---------------------------------------------------------------------------
# Trace-table row checks (Kummer decomposition at lambda = -1)
# ---------------------------------------------------------------------------

def kummer_row_check(field: FieldSpec) -> bool:
    """F(phi_2, phi_2; eps; -1) equals the sum over the square roots alpha'
    of phi_2 of alpha'(-1) j(alpha', alpha'); the root set is read inside the
    character group and may be empty (q = 3 mod 4), in which case the value
    must vanish."""
    M = field.q - 1
    if M % 2:
        raise ValueError("needs 2 | q-1")
    half = M // 2
    phi2 = MultCharacter(field, half)
    eps = MultCharacter(field, 0)
    lhs = hgf2f1(phi2, phi2, eps, -field.one)
    roots = [r for r in range(M) if (2 * r) % M == half]
    rhs = CycNum.zero(max(M, 1))
    for r in roots:
        chi = MultCharacter(field, r)
        rhs = rhs + char_eval(chi, -field.one) * jacobi_sum(chi, chi)
    return lhs == rhs
