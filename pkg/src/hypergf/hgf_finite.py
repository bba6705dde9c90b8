"""Gaussian hypergeometric functions over finite fields.

F(alpha, beta; gamma; lambda) is the 1/(1-q)-weighted sum over all
multiplicative characters nu of Pochhammer ratios, evaluated exactly.  Values
live in Q(mu_{q-1}); the coercion down from the working level lcm(p, q-1) is
itself a consistency check and failure raises.  For gamma = eps the value is
additionally asserted to be integral (in Z[mu_{q-1}]).

The identities stated by euler_integral_rep and euler_gauss_value are not
hardwired anywhere: both sides are always computed independently, so tests
genuinely exercise them.
"""

from __future__ import annotations

from .cyclotomic import CycNum
from ._engine import get_engine
from .finfield import AddCharacter, FieldSpec, FqElem, MultCharacter
from .charsum import gauss_sum, gauss_sum_variant, jacobi_sum, _gauss_inverse

__all__ = [
    "hgf2f1",
    "hgf_general",
    "euler_integral_rep",
    "euler_gauss_value",
]


def _same_field(*chars):
    field = chars[0].field
    for ch in chars[1:]:
        if ch.field is not field:
            raise ValueError("characters over different fields")
    return field


def hgf2f1(alpha: MultCharacter, beta: MultCharacter, gamma: MultCharacter,
           lam: FqElem, twist: FqElem | None = None) -> CycNum:
    """F(alpha, beta; gamma; lambda), exact, at level q-1."""
    field = _same_field(alpha, beta, gamma)
    if lam.field is not field:
        raise ValueError("lambda from a different field")
    eng = get_engine(field, twist)
    val = eng.hgf_value(alpha.m, beta.m, gamma.m, lam)
    out = eng.value_to_cycnum(val, level=max(field.q - 1, 1))
    if gamma.is_trivial() and not out.is_integral():
        raise ArithmeticError(
            f"F(...; eps; {lam!r}) not integral over F_{field.q}: {out!r}")
    return out


def hgf_general(alphas, lam: FqElem) -> CycNum:
    """Generalized (d+1)F_d value with all lower parameters trivial.

    alphas is a list of d+1 characters (d >= 1).  Normalized so that d = 1
    coincides with hgf2f1(alpha_0, alpha_1; eps; lambda).
    """
    if len(alphas) < 2:
        raise ValueError("need at least two upper characters (d >= 1)")
    field = _same_field(*alphas)
    if lam.field is not field:
        raise ValueError("lambda from a different field")
    eng = get_engine(field)
    val = eng.hgf_general_value([a.m for a in alphas], lam)
    return eng.value_to_cycnum(val, level=max(field.q - 1, 1))


def euler_integral_rep(alpha: MultCharacter, beta: MultCharacter,
                       gamma: MultCharacter, lam: FqElem) -> CycNum:
    """The sum  sum_t  conj(alpha)(1 - lambda t) beta(t) (conj(beta)gamma)(1-t).

    For lambda != 0 it equals -j(beta, conj(beta)gamma) F(alpha,beta;gamma;lambda);
    callers check that equality.  Requires alpha, beta not in {eps, gamma}.
    """
    field = _same_field(alpha, beta, gamma)
    if alpha.is_trivial() or beta.is_trivial() or alpha == gamma or beta == gamma:
        raise ValueError("need alpha, beta outside {eps, gamma}")
    M = max(field.q - 1, 1)
    abar = alpha.conj()
    bbar_g = beta.conj() * gamma
    counts = [0] * M
    one = field.one
    for t in field.elements():
        if t.is_zero():
            continue  # beta(0) = 0
        u = one - lam * t
        v = one - t
        if u.is_zero() or v.is_zero():
            continue
        e = (abar.m * field.dlog(u) + beta.m * field.dlog(t)
             + bbar_g.m * field.dlog(v)) % M
        counts[e] += 1
    return CycNum(M, counts)


def euler_gauss_value(alpha: MultCharacter, beta: MultCharacter,
                      gamma: MultCharacter) -> CycNum:
    """g_var(gamma) g(conj(alpha beta) gamma) / (g(conj(alpha) gamma) g(conj(beta) gamma)).

    The summation value of F(alpha, beta; gamma; 1); computed from Gauss sums
    only, independent of the hypergeometric sum itself.
    """
    field = _same_field(alpha, beta, gamma)
    if alpha.is_trivial() or beta.is_trivial() or alpha == gamma or beta == gamma:
        raise ValueError("need alpha, beta outside {eps, gamma}")
    psi = AddCharacter(field)
    num = gauss_sum_variant(psi, gamma) * gauss_sum(psi, (alpha * beta).conj() * gamma)
    # alpha != gamma and beta != gamma make both denominators nontrivial
    val = num * _gauss_inverse(psi, alpha.conj() * gamma)
    val = val * _gauss_inverse(psi, beta.conj() * gamma)
    return val.coerce(max(field.q - 1, 1))
