"""Explicit matrix models of weight modules and of their tensor products.

A basis vector of a realized module is a weight vector, so the group acts
diagonally; only the action of x is stored as a matrix.  Tensor bases are
ordered left index major: m_i (x) v_j has index i * dim(N) + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .characters import Character, Context
from .errors import ContextMismatch, RegimeMismatch
from .labels import ModuleLabel, Nil
from .linalg import Matrix
from .scalars import format_scalar, q_binom, q_int


@dataclass(frozen=True, eq=False)
class WeightModule:
    dim: int
    weights: tuple[Character, ...]  # weight of each basis vector
    x_mat: Matrix
    ctx: Context

    def weight_of(self, i: int) -> Character:
        return self.weights[i]

    def group_matrix(self, g) -> Matrix:
        """Diagonal action of a group element, read off the weights."""
        return Matrix.diagonal(self.ctx.field, [w(g) for w in self.weights])

    def a_matrix(self) -> Matrix:
        return self.group_matrix(self.ctx.a)

    def weight_buckets(self) -> dict[Character, list[int]]:
        out: dict[Character, list[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def check_weight_shift(self) -> bool:
        """x maps the mu-weight space into the chi*mu-weight space."""
        chi = self.ctx.chi
        for j, row in enumerate(self.x_mat.transpose().to_rows()):
            target = self.weights[j] * chi
            for i, v in enumerate(row):
                if not v.is_zero() and self.weights[i] != target:
                    return False
        return True


@dataclass(frozen=True, eq=False)
class LinearMap:
    source: WeightModule
    target: WeightModule
    matrix: Matrix

    def intertwines_x(self) -> bool:
        return self.matrix @ self.source.x_mat == self.target.x_mat @ self.matrix

    def intertwines_group(self, g) -> bool:
        return self.matrix @ self.source.group_matrix(g) == self.target.group_matrix(g) @ self.matrix

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim


def nil_alphas(t: int, beta, ctx: Context) -> list:
    """alpha_j = (-1)^(t+1-j) C(t, j) beta^(t-j), so that y^t - sum alpha_j y^j = (y - beta)^t."""
    beta = ctx.field(beta)
    return [(-1) ** (t + 1 - j) * comb(t, j) * beta ** (t - j) for j in range(t)]


def realize(label: ModuleLabel, ctx: Context) -> WeightModule:
    fld = ctx.field
    if isinstance(label, Nil):
        t = label.t
        weights = tuple(ctx.chi_power(i) * label.lam for i in range(t))
        x = Matrix.from_entries(fld, t, t, {(i + 1, i): 1 for i in range(t - 1)})
        return WeightModule(t, weights, x, ctx)
    if ctx.s is None:
        raise RegimeMismatch("non-nilpotent modules need |chi| finite")
    s = ctx.s
    t = label.t
    n = t * s
    weights = tuple(ctx.chi_power(i) * label.sig for i in range(n))
    entries = {(i + 1, i): 1 for i in range(n - 1)}
    for j, a in enumerate(nil_alphas(t, label.beta, ctx)):
        if not a.is_zero():
            entries[(j * s, n - 1)] = a
    return WeightModule(n, weights, Matrix.from_entries(fld, n, n, entries), ctx)


def tensor_realize(M: WeightModule, N: WeightModule) -> WeightModule:
    """M (x) N with x acting as X_M (x) A_N + I (x) X_N."""
    if M.ctx != N.ctx:
        raise ContextMismatch("modules over different contexts")
    fld = M.ctx.field
    weights = tuple(u * v for u in M.weights for v in N.weights)
    x = M.x_mat.kron(N.a_matrix()) + Matrix.identity(fld, M.dim).kron(N.x_mat)
    return WeightModule(M.dim * N.dim, weights, x, M.ctx)


def realize_pair(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> WeightModule:
    return tensor_realize(realize(A, ctx), realize(B, ctx))


def delta_power_check(m: int, M: WeightModule, N: WeightModule) -> bool:
    """x^m on M (x) N equals sum_i C(m, i)_q X_M^i (x) A_N^i X_N^(m-i)."""
    ctx = M.ctx
    fld = ctx.field
    lhs = tensor_realize(M, N).x_mat ** m
    A = N.a_matrix()
    rhs = Matrix.zeros(fld, M.dim * N.dim, M.dim * N.dim)
    for i in range(m + 1):
        c = q_binom(m, i, ctx.q)
        if c.is_zero():
            continue
        term = (M.x_mat ** i).kron((A ** i) @ (N.x_mat ** (m - i)))
        rhs = rhs + term.scale(c)
    return lhs == rhs


def embedding_lemma32(s: int, t: int, lam: Character, sig: Character, ctx: Context) -> LinearMap:
    """The map V_{s-1}(chi lam) (x) V_{t-1}(sig) -> V_s(lam) (x) V_t(sig) given by

    y_i (x) z_j  |->  (s-i-1)_q m_i (x) v_{j+1} - q^(1-t) sig(a) (t-j-1)_q m_{i+1} (x) v_j.
    """
    if ctx.s is not None:
        raise RegimeMismatch("the embedding is stated for |chi| infinite")
    if s < 2 or t < 2:
        raise ValueError("the embedding needs s, t >= 2")
    q = ctx.q
    src = tensor_realize(realize(Nil(s - 1, ctx.chi * lam), ctx), realize(Nil(t - 1, sig), ctx))
    tgt = tensor_realize(realize(Nil(s, lam), ctx), realize(Nil(t, sig), ctx))
    coef = q ** (1 - t) * sig(ctx.a)
    entries = {}
    for i in range(s - 1):
        for j in range(t - 1):
            col = i * (t - 1) + j
            entries[(i * t + j + 1, col)] = q_int(s - i - 1, q)
            entries[((i + 1) * t + j, col)] = -coef * q_int(t - j - 1, q)
    f = Matrix.from_entries(ctx.field, s * t, (s - 1) * (t - 1), entries)
    return LinearMap(src, tgt, f)


def matrix_to_json(M: Matrix) -> list[list[str]]:
    """Row-major scalar literals."""
    return [[format_scalar(v) for v in row] for row in M.to_rows()]


def module_to_json(M: WeightModule) -> dict:
    return {
        "dim": M.dim,
        "weights": [[format_scalar(v) for v in w.values] for w in M.weights],
        "x": matrix_to_json(M.x_mat),
    }
