"""Closed-form tensor product decompositions of indecomposable weight modules.

Conventions used throughout: a direct sum over an empty index range is zero,
a summand with multiplicity 0 is dropped, and a module with subscript 0 is the
zero module.  A negative subscript would signal a bug and is asserted against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .characters import Character, Context
from .errors import InternalDimensionMismatch, RegimeMismatch, ZeroAlpha, ZeroBeta
from .labels import Decomposition, ModuleLabel, Nil, NonNil, canonicalize, dim_of
from .scalars import Scalar


@dataclass(frozen=True)
class EuclideanSplit:
    quotient: int
    remainder: int


def split(n: int, s: int) -> EuclideanSplit:
    u, r = divmod(n, s)
    return EuclideanSplit(u, r)


class _Terms:
    """Accumulates (t, character, beta, multiplicity) and canonicalizes at the end."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.items: list[tuple[ModuleLabel, int]] = []

    def nil(self, t: int, lam: Character, mult: int = 1):
        if t < 0:
            raise InternalDimensionMismatch(f"negative subscript {t}")
        if t and mult:
            self.items.append((Nil(t, lam), mult))

    def module(self, t: int, char: Character, beta: Scalar, mult: int = 1):
        if t < 0:
            raise InternalDimensionMismatch(f"negative subscript {t}")
        if t and mult:
            self.items.append((canonicalize(t, char, beta, self.ctx), mult))

    def build(self, expected_dim: int) -> Decomposition:
        dec = Decomposition.from_terms(self.items, self.ctx)
        if dec.total_dim != expected_dim:
            raise InternalDimensionMismatch(
                f"decomposition has dimension {dec.total_dim}, expected {expected_dim}")
        return dec


def _require_fin(ctx: Context) -> int:
    if ctx.s is None:
        raise RegimeMismatch("this rule needs |chi| = s finite")
    return ctx.s


# -- |chi| infinite ------------------------------------------------------------------

def decompose_inf_nil_nil(s: int, t: int, lam: Character, sig: Character, ctx: Context) -> Decomposition:
    """V_s(lam) (x) V_t(sig) = sum_{k=1}^{min(s,t)} V_{s+t+1-2k}(chi^(k-1) lam sig)."""
    if ctx.s is not None:
        raise RegimeMismatch("the infinite-order rule needs |chi| infinite")
    out = _Terms(ctx)
    base = lam * sig
    for k in range(1, min(s, t) + 1):
        out.nil(s + t + 1 - 2 * k, ctx.chi_power(k - 1) * base)
    return out.build(s * t)


# -- |chi| = s finite ------------------------------------------------------------------

def decompose_fin_nil_nonnil(p: int, lam: Character, t: int, sig: Character, beta: Scalar,
                             side: str, ctx: Context) -> Decomposition:
    """V_p(lam) (x) V_t(sig, beta) for side "left"; V_t(sig, beta) (x) V_p(lam) for "right".

    The right-hand order twists the eigenvalue to lam(a^s) * beta.
    """
    s = _require_fin(ctx)
    if beta.is_zero():
        raise ZeroBeta("beta must be nonzero")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    u, r = divmod(p, s)
    b = beta if side == "left" else lam(ctx.a_power(s)) * beta
    char = sig * lam
    out = _Terms(ctx)
    for i in range(1, min(t, u) + 1):
        out.module(2 * i - 1 + abs(t - u), char, b, s - r)
    for i in range(1, min(t, u + 1) + 1):
        out.module(2 * i - 1 + abs(t - u - 1), char, b, r)
    return out.build(p * t * s)


def decompose_fin_nonnil_nonnil(p: int, sig: Character, alpha: Scalar, t: int, lam: Character,
                                beta: Scalar, ctx: Context) -> Decomposition:
    """V_p(sig, alpha) (x) V_t(lam, beta), eigenvalue u = alpha * lam(a^s) + beta.

    The summands are V_{2j-1+|p-t|}(chi^i sig lam, u) for 0 <= i < s and
    1 <= j <= min(p, t).  When u = 0 these are the nilpotent modules
    V_{(2j-1+|p-t|)s}(chi^i sig lam), which stay distinct.
    """
    s = _require_fin(ctx)
    if alpha.is_zero():
        raise ZeroAlpha("alpha must be nonzero")
    if beta.is_zero():
        raise ZeroBeta("beta must be nonzero")
    u = alpha * lam(ctx.a_power(s)) + beta
    base = sig * lam
    out = _Terms(ctx)
    for i in range(s):
        char = ctx.chi_power(i) * base
        for j in range(1, min(p, t) + 1):
            out.module(2 * j - 1 + abs(p - t), char, u)
    return out.build(p * t * s * s)


def decompose_fin_nil_nil(n: int, lam: Character, t: int, sig: Character, ctx: Context) -> Decomposition:
    """V_n(lam) (x) V_t(sig) with n = r's + l', t = rs + l (factors swapped if n < t)."""
    s = _require_fin(ctx)
    if n < t:
        n, t, lam, sig = t, n, sig, lam
    rp, lp = divmod(n, s)
    r, l = divmod(t, s)
    base = lam * sig
    out = _Terms(ctx)

    def block(i_hi: int, j_lo: int, j_hi: int, size: Callable[[int, int], int]):
        for i in range(0, i_hi + 1):
            for j in range(j_lo, j_hi + 1):
                out.nil(size(i, j), ctx.chi_power(j) * base)

    def string(i, j):
        return n + t - 1 - 2 * i * s - 2 * j

    def flat(shift):
        return lambda i, j: (r + rp + shift - 2 * i) * s

    if l + lp <= s:
        if l <= lp:
            block(r, 0, l - 1, string)
            block(r - 1, l, lp - 1, flat(0))
        else:
            block(r, 0, lp - 1, string)
            block(r, lp, l - 1, flat(0))
        block(r - 1, max(l, lp), l + lp - 1, string)
        block(r - 1, l + lp, s - 1, flat(-1))
    else:
        m = l + lp - s - 1
        lo, hi = min(l, lp), max(l, lp)
        block(r, 0, m, flat(1))
        block(r, m + 1, lo - 1, string)
        block(r - 1 if l <= lp else r, lo, hi - 1, flat(0))
        block(r - 1, hi, s - 1, string)
    return out.build(n * t)


# -- dispatch ----------------------------------------------------------------------------

def tensor_decompose(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> Decomposition:
    """Decomposition of A (x) B, with A the left factor."""
    if ctx.s is None:
        if not (isinstance(A, Nil) and isinstance(B, Nil)):
            raise RegimeMismatch("non-nilpotent modules need |chi| finite")
        dec = decompose_inf_nil_nil(A.t, B.t, A.lam, B.lam, ctx)
    elif isinstance(A, Nil) and isinstance(B, Nil):
        dec = decompose_fin_nil_nil(A.t, A.lam, B.t, B.lam, ctx)
    elif isinstance(A, Nil):
        dec = decompose_fin_nil_nonnil(A.t, A.lam, B.t, B.sig, B.beta, "left", ctx)
    elif isinstance(B, Nil):
        dec = decompose_fin_nil_nonnil(B.t, B.lam, A.t, A.sig, A.beta, "right", ctx)
    else:
        dec = decompose_fin_nonnil_nonnil(A.t, A.sig, A.beta, B.t, B.sig, B.beta, ctx)
    expected = dim_of(A, ctx) * dim_of(B, ctx)
    if dec.total_dim != expected:
        raise InternalDimensionMismatch(f"dimension {dec.total_dim} != {expected}")
    return dec


# -- special cases, transcribed independently for cross-checking ------------------------------

class NotApplicable:
    """Returned by :func:`decompose_special` when no special case covers the pair."""

    def __repr__(self):
        return "NotApplicable"


NOT_APPLICABLE = NotApplicable()


def _nilnil_special(n: int, lam: Character, t: int, sig: Character, ctx: Context) -> dict[str, Decomposition]:
    """Special cases for V_n(lam) (x) V_t(sig), in this order of the factors."""
    s = ctx.s
    base = lam * sig
    chi = ctx.chi_power
    found: dict[str, Decomposition] = {}

    def emit(name, pieces):
        out = _Terms(ctx)
        for size, char in pieces:
            out.nil(size, char)
        found[name] = out.build(n * t)

    if n == 1:
        emit("V1", [(t, base)])
    if n == 2:
        if t % s:
            emit("V2", [(t + 1, base), (t - 1, chi(1) * base)])
        else:
            emit("V2", [(t, base), (t, chi(1) * base)])
    if 1 <= n <= s:
        r, l = divmod(t, s)
        if l == 0:
            emit("small", [(t, chi(i) * base) for i in range(n)])
        elif n + l <= s + 1:
            pieces = [(n + t - 1 - 2 * i, chi(i) * base) for i in range(min(n, l))]
            pieces += [(r * s, chi(i) * base) for i in range(l, n)]
            emit("small", pieces)
        else:
            m = n + l - s - 1
            pieces = [(r * s + s, chi(i) * base) for i in range(m + 1)]
            pieces += [(n + t - 1 - 2 * i, chi(i) * base) for i in range(m + 1, min(n, l))]
            pieces += [(r * s, chi(i) * base) for i in range(l, n)]
            emit("small", pieces)
    if n == s + 1:
        r, l = divmod(t, s)
        if l == 0:
            pieces = [(t - s, base), (t + s, base)]
            pieces += [(t, chi(i) * base) for i in range(1, s)]
            emit("s_plus_1", pieces)
        elif r == 0:
            pieces = [(s + l, base)] + [(s, chi(i) * base) for i in range(1, l)]
            emit("s_plus_1", pieces)
        else:
            pieces = [(t + s, base)]
            pieces += [((r + 1) * s, chi(i) * base) for i in range(1, l)]
            pieces += [(t + s - 2 * l, chi(l) * base)]
            pieces += [(r * s, chi(i) * base) for i in range(l + 1, s)]
            pieces += [(t - s, base)]
            emit("s_plus_1", pieces)
    if t % s == 0:
        r = t // s
        rp, l = divmod(n, s)
        pieces = []
        for i in range(0, min(rp, r - 1) + 1):
            pieces += [((r + rp - 2 * i) * s, chi(j) * base) for j in range(l)]
        for i in range(0, min(r, rp)):
            pieces += [((r + rp - 1 - 2 * i) * s, chi(j) * base) for j in range(l, s)]
        emit("multiple_of_s", pieces)
    if n % s and t % s == 1 % s:
        r = (t - 1) // s
        rp, l = divmod(n, s)
        pieces = [((r + rp - 2 * i) * s + l, base) for i in range(min(rp, r) + 1)]
        for i in range(0, min(rp, r - 1) + 1):
            pieces += [((r + rp - 2 * i) * s, chi(j) * base) for j in range(1, l)]
        pieces += [((r + rp - 2 * i) * s - l, chi(l) * base) for i in range(min(rp, r))]
        for i in range(min(rp, r)):
            pieces += [((r + rp - 1 - 2 * i) * s, chi(j) * base) for j in range(l + 1, s)]
        emit("one_mod_s", pieces)
    return found


def special_cases(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> dict[str, Decomposition]:
    """Every special-case formula that applies to A (x) B, keyed by a short name.

    The Nil (x) Nil formulas hold in both orders of the factors, so each is tried
    with the factors as given and swapped.
    """
    if ctx.s is None:
        return {}
    s = ctx.s
    found: dict[str, Decomposition] = {}
    if isinstance(A, NonNil) and isinstance(B, Nil):
        if B.t == 2 * s and B.lam.is_trivial():
            out = _Terms(ctx)
            out.module(A.t - 1, A.sig, A.beta, s)
            out.module(A.t + 1, A.sig, A.beta, s)
            found["times_V2s_trivial"] = out.build(dim_of(A, ctx) * B.t)
    if isinstance(A, Nil) and isinstance(B, Nil):
        for name, dec in _nilnil_special(A.t, A.lam, B.t, B.lam, ctx).items():
            found[name] = dec
        for name, dec in _nilnil_special(B.t, B.lam, A.t, A.lam, ctx).items():
            found.setdefault(name + "_swapped", dec)
    return found


def decompose_special(A: ModuleLabel, B: ModuleLabel, ctx: Context):
    """The first applicable special-case formula, or :data:`NOT_APPLICABLE`."""
    found = special_cases(A, B, ctx)
    if not found:
        return NOT_APPLICABLE
    return next(iter(found.values()))


def rule_for(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> str:
    """Short name of the closed-form rule :func:`tensor_decompose` uses for A (x) B."""
    if ctx.s is None:
        return "inf_nil_nil"
    if isinstance(A, Nil) and isinstance(B, Nil):
        return "fin_nil_nil"
    if isinstance(A, Nil):
        return "fin_nil_nonnil_left"
    if isinstance(B, Nil):
        return "fin_nil_nonnil_right"
    return "fin_nonnil_nonnil"
