"""Internal exact character-sum engine.

Values in Z[mu_L] (L = lcm(p, q-1)) are carried as integer vectors of length
L in the group-algebra representation sum_i v_i zeta_L^i, where ring
multiplication is cyclic convolution.  Everything stays in integers; the FFT
fast path is used only when an a-priori L1-norm bound certifies that rounding
back to integers is unambiguous, otherwise the plain int64 convolution path
runs.  Gauss-sum inverses come from the conjugation formula and are certified
per field by exact multiplication, so later uses never assume unproven
identities.

Nothing here is public API; hgf_finite, charsum, curves and identities build
on it.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum, _power_reduction_rows, _phi

_FLOAT_EXACT = 2.0 ** 53


def cyc_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact cyclic convolution of two int64 vectors of equal length."""
    L = a.shape[0]
    c = np.convolve(a, b)
    out = c[:L].copy()
    if c.shape[0] > L:
        out[: c.shape[0] - L] += c[L:]
    return out


class ExactValue:
    """vec / den, vec an integer vector in the cyclic representation."""

    __slots__ = ("vec", "den")

    def __init__(self, vec, den):
        self.vec = vec
        self.den = den  # python int, may be negative


class CharSumEngine:
    """Per-field tables for exact Gauss sums and hypergeometric sums."""

    def __init__(self, field, twist=None):
        self.field = field
        self.twist = twist
        p, q = field.p, field.q
        M = q - 1
        self.M = M
        self.L = math.lcm(p, M)
        L = self.L
        self.sp = L // p
        self.sm = L // M
        self.q = q

        # traces Tr(c g^k) along the unit cycle
        tr = np.empty(M, dtype=np.int64)
        x = field.one
        g = field.generator
        for k in range(M):
            tr[k] = field.trace(x if twist is None else twist * x)
            x = x * g
        self.dlog_neg1 = M // 2 if p != 2 else 0

        # g(chi_m) = -sum_k zeta_p^{tr[k]} zeta_M^{mk}
        G = np.zeros((M, L), dtype=np.int64)
        ms = np.arange(M, dtype=np.int64)
        for k in range(M):
            idx = (tr[k] * self.sp + ms * k * self.sm) % L
            G[ms, idx] -= 1
        self.G = G

        # reduction of the cyclic representation to power-basis coordinates
        rows = _power_reduction_rows(L)
        self.phiL = _phi(L)
        RED = np.zeros((self.phiL, L), dtype=np.int64)
        for k in range(L):
            RED[:, k] = rows[k]
        self.RED = RED
        self.REDf = RED.astype(np.float64)
        self.red_max = int(np.abs(RED).max())

        self._build_inverses()
        self._fft_ready = False
        self._pair_table = None
        self._slab_cache = {}

    # -- inverse tables -------------------------------------------------------

    def _build_inverses(self):
        """q * g(chi_m)^{-1} as integer vectors, certified by multiplication."""
        M, L, q = self.M, self.L, self.q
        e0 = np.zeros(L, dtype=np.int64)
        e0[0] = 1
        INVG = np.zeros((M, L), dtype=np.int64)
        INVG[0] = q * e0  # q * g(eps)^{-1} = q
        for m in range(1, M):
            shift = (m * self.dlog_neg1 * self.sm) % L
            INVG[m] = np.roll(self.G[(M - m) % M], shift)
        # IG[m]: the vector for q / g_var(chi_m); at m = 0 this is 1
        IG = INVG.copy()
        IG[0] = e0
        self.INVG = INVG
        self.IG = IG
        self.e0 = e0

        # certification: g(chi_m) * (q g^{-1}) == q for every m
        prods = np.empty((M, L), dtype=np.int64)
        for m in range(M):
            prods[m] = cyc_convolve(self.G[m], INVG[m])
        target = np.zeros(L, dtype=np.int64)
        target[0] = q
        diff = prods - target[None, :]
        if not self.all_zero_mod(diff.T):
            raise ArithmeticError(
                f"gauss-sum inverse certification failed over F_{self.q}")

    # -- exact reduction / zero tests ------------------------------------------

    def reduce_columns(self, V: np.ndarray) -> np.ndarray:
        """Power-basis coordinates of each column of V (shape (L, n))."""
        vmax = int(np.abs(V).max()) if V.size else 0
        if vmax == 0:
            return np.zeros((self.phiL,) + V.shape[1:], dtype=np.int64)
        if float(vmax) * self.red_max * self.L < _FLOAT_EXACT:
            out = self.REDf @ V.astype(np.float64)
            return np.rint(out).astype(np.int64)
        if math.log2(vmax) + math.log2(self.red_max + 1) + \
                math.log2(self.L) < 62:
            return self.RED @ V
        return self.RED.astype(object) @ V.astype(object)

    def all_zero_mod(self, V: np.ndarray) -> bool:
        r = self.reduce_columns(V)
        return not np.any(r)

    def zero_mask(self, V: np.ndarray) -> np.ndarray:
        """Per-column: True where the column is 0 mod Phi_L."""
        r = self.reduce_columns(V)
        return ~np.any(r, axis=0)

    # -- fft machinery ----------------------------------------------------------

    def _ensure_fft(self):
        if self._fft_ready:
            return
        L, M = self.L, self.M
        self.nb = L // 2 + 1
        self.GH = np.fft.rfft(self.G, axis=1)
        self.IGH = np.fft.rfft(self.IG, axis=1)
        self.l1G = np.abs(self.G).sum(axis=1)
        self.l1IG = np.abs(self.IG).sum(axis=1)
        t = np.arange(L)[:, None]
        j = np.arange(self.nb)[None, :]
        W = np.exp(-2j * np.pi * (t * j % L) / L)
        TK = (np.arange(M)[:, None] * np.arange(M)[None, :] * self.sm) % L
        self.WTK = W[TK]  # (n, k, bin)
        self._fft_ready = True

    def cyc_matmul(self, vec: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """Cyclic convolution of a fixed vector with every row of rows."""
        L = self.L
        if not hasattr(self, "_circ_idx"):
            # circ_idx[i, j] = (j - i) % L so that vec[circ_idx].T is the
            # circulant matrix of vec
            self._circ_idx = (np.arange(L)[None, :]
                              - np.arange(L)[:, None]) % L
        circ_t = vec[self._circ_idx]  # circ_t[i, j] = vec[(j - i) % L]
        vmax = int(np.abs(rows).max()) if rows.size else 0
        if vmax == 0:
            return np.zeros_like(rows)
        l1 = int(np.abs(vec).sum())
        if float(vmax) * l1 < _FLOAT_EXACT:
            out = rows.astype(np.float64) @ circ_t.astype(np.float64)
            return np.rint(out).astype(np.int64)
        if math.log2(vmax) + math.log2(max(l1, 1)) < 61:
            return rows @ circ_t
        return (rows.astype(object) @ circ_t.astype(object))

    # -- hypergeometric slabs ----------------------------------------------------

    def sigma_slab(self, a: int, b: int, c: int) -> np.ndarray:
        """S[k] = sum_n  g(chi_{a+n}) g(chi_{b+n}) IG[n] IG[c+n] shifted by
        nu(lambda) for lambda = g^k; an (M, L) int64 matrix.

        The true hypergeometric value is assembled from this by hgf_value.
        """
        M, L = self.M, self.L
        a %= M
        b %= M
        c %= M
        self._ensure_fft()
        n = np.arange(M)
        ia, ib, ic = (a + n) % M, (b + n) % M, (c + n) % M
        bound = int(np.sum(self.l1G[ia].astype(object) * self.l1G[ib] *
                           self.l1IG[n] * self.l1IG[ic]))
        if bound * 1e-13 < 0.25:
            P = self.GH[ia] * self.GH[ib] * self.IGH[n] * self.IGH[ic]
            RES = np.einsum("nj,nkj->kj", P, self.WTK)
            out = np.fft.irfft(RES, L, axis=1)
            oi = np.rint(out)
            if np.max(np.abs(out - oi)) < 0.25:
                return oi.astype(np.int64)
        # exact fallback
        S = np.zeros((M, L), dtype=np.int64)
        for nn in range(M):
            t = cyc_convolve(cyc_convolve(self.G[(a + nn) % M],
                                          self.G[(b + nn) % M]),
                             cyc_convolve(self.IG[nn], self.IG[(c + nn) % M]))
            for k in range(M):
                S[k] += np.roll(t, (nn * k * self.sm) % L)
        return S

    def slab(self, a: int, b: int, c: int) -> np.ndarray:
        key = (a % self.M, b % self.M, c % self.M)
        hit = self._slab_cache.get(key)
        if hit is None:
            hit = self.sigma_slab(*key)
            if len(self._slab_cache) > 128:
                self._slab_cache.clear()
            self._slab_cache[key] = hit
        return hit

    def pair_table(self) -> np.ndarray:
        """All products g(chi_i) g(chi_j) as an (M, M, L) int64 array."""
        if self._pair_table is None:
            self._ensure_fft()
            M, L = self.M, self.L
            P = np.empty((M, M, L), dtype=np.int64)
            bound = int(self.l1G.max()) ** 2
            if bound * 1e-13 >= 0.25:
                for i in range(M):
                    for j in range(M):
                        P[i, j] = cyc_convolve(self.G[i], self.G[j])
            else:
                for i in range(M):
                    spec = self.GH[i][None, :] * self.GH
                    rows = np.fft.irfft(spec, L, axis=1)
                    ri = np.rint(rows)
                    if np.max(np.abs(rows - ri)) >= 0.25:
                        raise ArithmeticError("pair table rounding uncertified")
                    P[i] = ri.astype(np.int64)
            self._pair_table = P
        return self._pair_table

    def hgf_constant(self, a: int, b: int, c: int):
        """(vec, den_exp) with F = vec * S[k] / (q^den_exp (1-q))."""
        M, q = self.M, self.q
        a %= M
        b %= M
        c %= M
        den = 1  # the sigma slab itself carries one factor 1/q
        if c == 0:
            vec = self.e0 * q
        else:
            vec = self.G[c]
        if a != 0:
            vec = cyc_convolve(vec, self.INVG[a])
            den += 1
        if b != 0:
            vec = cyc_convolve(vec, self.INVG[b])
            den += 1
        return vec, den

    def hgf_value(self, a: int, b: int, c: int, lam) -> ExactValue:
        """F(chi_a, chi_b; chi_c; lambda) as an ExactValue at level L."""
        if lam.is_zero():
            return ExactValue(np.zeros(self.L, dtype=np.int64), 1)
        k = self.field.dlog(lam)
        S = self.slab(a, b, c)
        cvec, den_exp = self.hgf_constant(a, b, c)
        vec = cyc_convolve(cvec, S[k])
        return ExactValue(vec, (self.q ** den_exp) * (1 - self.q))

    # -- generalized (d+1)F_d with unit lower parameters -------------------------

    def hgf_general_value(self, exps, lam) -> ExactValue:
        """F(chi_{e0}, ..., chi_{ed}; eps, ..., eps; lambda), d+1 upper
        characters, denominator ((eps)^o_nu)^{d+1}."""
        M, L, q = self.M, self.L, self.q
        if lam.is_zero():
            return ExactValue(np.zeros(L, dtype=np.int64), 1)
        k = self.field.dlog(lam)
        d1 = len(exps)
        acc = np.zeros(L, dtype=np.int64)
        for n in range(M):
            t = self.e0
            for e in exps:
                t = cyc_convolve(t, self.G[(e + n) % M])
            for _ in range(d1):
                t = cyc_convolve(t, self.IG[n])
            acc += np.roll(t, (n * k * self.sm) % L)
        # the IG factors carry q/g_var(nu) with no residual denominator;
        # each nontrivial upper character still contributes 1/g(chi_e) = INVG/q
        vec = acc
        den_exp = 0
        for e in exps:
            e %= M
            if e != 0:
                vec = cyc_convolve(self.INVG[e], vec)
                den_exp += 1
        return ExactValue(vec, (q ** den_exp) * (1 - q))

    # -- conversions --------------------------------------------------------------

    def gauss_vec(self, m: int) -> np.ndarray:
        return self.G[m % self.M]

    def vec_to_cycnum(self, vec, den=1) -> CycNum:
        coords = self.reduce_columns(np.asarray(vec).reshape(self.L, 1))[:, 0]
        fr = [Fraction(int(c), den) for c in coords]
        return CycNum(self.L, fr)

    def value_to_cycnum(self, val: ExactValue, level: int | None = None) -> CycNum:
        num = self.vec_to_cycnum(val.vec, val.den)
        if level is not None:
            num = num.coerce(level)
        return num


def get_engine(field, twist=None) -> CharSumEngine:
    key = None if twist is None else twist.coeffs
    eng = field._engine_cache.get(key)
    if eng is None:
        eng = CharSumEngine(field, twist)
        field._engine_cache[key] = eng
    return eng
