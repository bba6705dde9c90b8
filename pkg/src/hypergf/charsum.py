"""Gauss sums, Jacobi sums and finite Pochhammer symbols.

All sums are computed by direct enumeration over the field and returned as
exact CycNum values: Gauss sums at level lcm(p, q-1), Jacobi sums at level
q-1.  Gauss sums are memoized per field (idempotent, lock-guarded).
"""

from __future__ import annotations

from .cyclotomic import CycNum
from ._engine import get_engine
from .finfield import AddCharacter, FieldSpec, MultCharacter

__all__ = [
    "gauss_sum",
    "gauss_sum_variant",
    "jacobi_sum",
    "pochhammer",
]


def gauss_sum(psi: AddCharacter, chi: MultCharacter) -> CycNum:
    """g(chi) = -sum_x psi(x) chi(x), exact in Q(mu_{lcm(p, q-1)})."""
    field = chi.field
    if psi.field is not field:
        raise ValueError("additive and multiplicative characters over different fields")
    key = (None if psi.twist is None else psi.twist.coeffs, chi.m, False)
    cached = field._gauss_cache.get(key)
    if cached is not None:
        return cached
    eng = get_engine(field, psi.twist)
    val = eng.vec_to_cycnum(eng.gauss_vec(chi.m))
    with field._gauss_lock:
        field._gauss_cache.setdefault(key, val)
    return val


def gauss_sum_variant(psi: AddCharacter, chi: MultCharacter) -> CycNum:
    """g_var(chi): equals q for the unit character, g(chi) otherwise."""
    if chi.is_trivial():
        return CycNum.from_rational(chi.field.q)
    return gauss_sum(psi, chi)


def _gauss_inverse(psi: AddCharacter, chi: MultCharacter) -> CycNum:
    # engine inverses are certified against the direct sums at build time
    field = chi.field
    key = (None if psi.twist is None else psi.twist.coeffs, chi.m, True)
    cached = field._gauss_cache.get(key)
    if cached is not None:
        return cached
    eng = get_engine(field, psi.twist)
    val = eng.vec_to_cycnum(eng.INVG[chi.m % eng.M], den=field.q)
    if chi.is_trivial():
        val = CycNum.one()  # g(eps) = 1
    with field._gauss_lock:
        field._gauss_cache.setdefault(key, val)
    return val


def jacobi_sum(chi1: MultCharacter, chi2: MultCharacter) -> CycNum:
    """j(chi1, chi2) = -sum_{x+y=1} chi1(x) chi2(y), exact in Q(mu_{q-1})."""
    field = chi1.field
    if chi2.field is not field:
        raise ValueError("characters over different fields")
    M = max(field.q - 1, 1)
    counts = [0] * M
    one = field.one
    for x in field.elements():
        y = one - x
        if x.is_zero() or y.is_zero():
            continue  # chi(0) = 0 kills the term
        e = (chi1.m * field.dlog(x) + chi2.m * field.dlog(y)) % M
        counts[e] -= 1
    return CycNum(M, counts)


def pochhammer(alpha: MultCharacter, nu: MultCharacter,
               variant: bool = False) -> CycNum:
    """(alpha)_nu = g(alpha nu)/g(alpha); the variant uses g_var on both."""
    field = alpha.field
    psi = AddCharacter(field)
    prod = alpha * nu
    if variant:
        num = gauss_sum_variant(psi, prod)
        if alpha.is_trivial():
            return num / field.q
        return num * _gauss_inverse(psi, alpha)
    return gauss_sum(psi, prod) * _gauss_inverse(psi, alpha)
