"""Brute-force decomposition of an explicit weight module, independent of the rules engine.

Nilpotent part (the whole module when |chi| is infinite): every summand is a
string m, xm, ..., x^(t-1)m of weight vectors.  Counting, for each weight nu and
k >= 0, the rank of x^k on the nu-weight space minus the dimension of the
invertible part there gives the number of string positions at nu with at least
k further steps; second differences of these counts give the number of strings
of each length with each top weight.

Invertible part (|chi| = s finite): phi = x^s preserves each weight space.  On
one weight space per chi-orbit the Jordan structure of phi at each candidate
eigenvalue u is read off dim ker (phi - u)^k; a block J_k(u) is one summand
V_k([nu], u).  Every eigenvalue must come from the candidate set; unexplained
dimension raises :class:`EigenvalueOutsideCandidates`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .characters import Character, Context, coset_canonical
from .errors import EigenvalueOutsideCandidates, InternalDimensionMismatch, NotInvariant
from .labels import Decomposition, ModuleLabel, Nil, NonNil, print_label
from .linalg import (
    Matrix,
    fitting_split,
    generalized_eigen_profile,
    jordan_blocks_from_profile,
    restrict,
    stable_rank,
)
from .realization import WeightModule, realize, realize_pair
from .rules import tensor_decompose
from .scalars import Scalar, format_scalar


def _orbit_key(nu: Character, ctx: Context):
    return coset_canonical(nu, ctx).sort_key()


def oracle_analyze(M: WeightModule, candidates: Iterable = ()) -> tuple[Decomposition, dict]:
    """Decompose M; returns the decomposition and a diagnostics dictionary."""
    ctx = M.ctx
    fld = ctx.field
    buckets = M.weight_buckets()
    weights = sorted(buckets, key=lambda w: w.sort_key())
    chi_inv = ctx.chi.inverse()
    X = M.x_mat

    inv_dim = {nu: 0 for nu in weights}
    phi_blocks: dict[Character, Matrix] = {}
    if ctx.s is not None:
        phi = X ** ctx.s
        for nu in weights:
            idx = buckets[nu]
            phi_blocks[nu] = phi.submatrix(idx, idx)
            inv_dim[nu] = stable_rank(phi_blocks[nu])
    else:
        if not (X ** M.dim).is_zero():
            raise InternalDimensionMismatch("x is not nilpotent although |chi| is infinite")

    # a[nu][k] = number of string positions at nu with at least k further steps
    a: dict[Character, list[int]] = {nu: [len(buckets[nu]) - inv_dim[nu]] for nu in weights}
    power = X
    k = 1
    while any(a[nu][-1] for nu in weights):
        chi_k = ctx.chi_power(k)
        for nu in weights:
            if a[nu][-1] == 0:
                a[nu].append(0)
                continue
            target = buckets.get(chi_k * nu)
            rk = power.submatrix(target, buckets[nu]).rank() if target else 0
            a[nu].append(rk - inv_dim[nu])
        power = power @ X
        k += 1
        if k > M.dim + 1:
            raise InternalDimensionMismatch("string lengths exceed the module dimension")

    def count(nu, j):
        seq = a.get(nu)
        if seq is None:
            return 0
        return seq[j] if j < len(seq) else 0

    def b(nu, j):
        return count(nu, j - 1) - count(nu, j)

    terms: list[tuple[ModuleLabel, int]] = []
    for nu in weights:
        for length in range(1, len(a[nu]) + 1):
            tops = b(nu, length) - b(chi_inv * nu, length + 1)
            if tops < 0:
                raise InternalDimensionMismatch(f"negative string count at length {length}")
            if tops:
                terms.append((Nil(length, nu), tops))

    eigen_table: dict[str, dict] = {}
    if ctx.s is not None:
        cands = []
        for u in candidates:
            u = fld(u)
            if not u.is_zero() and u not in cands:
                cands.append(u)
        orbits: dict = {}
        for nu in weights:
            if inv_dim[nu]:
                orbits.setdefault(_orbit_key(nu, ctx), []).append(nu)
        for key in sorted(orbits):
            members = orbits[key]
            rep = members[0]
            found, explained = _jordan_data(phi_blocks[rep], inv_dim[rep], cands)
            if explained != inv_dim[rep]:
                raise EigenvalueOutsideCandidates(
                    f"x^s on weight {[format_scalar(v) for v in rep.values]} has "
                    f"{inv_dim[rep] - explained} dimension(s) of eigenvalues outside "
                    f"{{{', '.join(format_scalar(u) for u in cands)}}}")
            for other in members[1:]:
                other_found, _ = _jordan_data(phi_blocks[other], inv_dim[other], list(found))
                if other_found != found:
                    raise InternalDimensionMismatch("x^s has different Jordan types within one chi-orbit")
            if len(members) != ctx.s:
                raise InternalDimensionMismatch("invertible part does not fill a whole chi-orbit")
            for u, blocks in found.items():
                for size, mult in blocks.items():
                    terms.append((NonNil(size, coset_canonical(rep, ctx), u), mult))
            eigen_table[",".join(format_scalar(v) for v in rep.values)] = {
                format_scalar(u): {str(k): m for k, m in sorted(blocks.items())} for u, blocks in found.items()
            }

    dec = Decomposition.from_terms(terms, ctx)
    if dec.total_dim != M.dim:
        raise InternalDimensionMismatch(f"oracle found dimension {dec.total_dim}, module has {M.dim}")
    diagnostics = {
        "weight_dims": {",".join(format_scalar(v) for v in nu.values): len(buckets[nu]) for nu in weights},
        "fitting": {"nil": M.dim - sum(inv_dim.values()), "inv": sum(inv_dim.values())},
        "eigen": eigen_table,
    }
    return dec, diagnostics


def _jordan_data(P: Matrix, inv: int, cands: list) -> tuple[dict, int]:
    found = {}
    explained = 0
    for u in cands:
        if explained == inv:
            break
        profile = generalized_eigen_profile(P, u, max_k=inv, cap=inv - explained)
        if profile and profile[-1]:
            found[u] = jordan_blocks_from_profile(profile)
            explained += profile[-1]
    return found, explained


def oracle_decompose(M: WeightModule, candidates: Iterable = ()) -> Decomposition:
    return oracle_analyze(M, candidates)[0]


def candidate_eigenvalues(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> list[Scalar]:
    """Eigenvalues of x^s that a tensor product of A and B can plausibly carry, plus 0."""
    fld = ctx.field
    out = [fld.zero()]

    def add(v):
        if v not in out:
            out.append(v)

    if ctx.s is None:
        return out
    a_s = ctx.a_power(ctx.s)

    def char(L):
        return L.lam if isinstance(L, Nil) else L.sig

    for X, Y in ((A, B), (B, A)):
        if isinstance(X, NonNil):
            add(X.beta)
            add(char(Y)(a_s) * X.beta)
    if isinstance(A, NonNil) and isinstance(B, NonNil):
        add(A.beta * B.sig(a_s) + B.beta)
        add(B.beta * A.sig(a_s) + A.beta)
    return out


def label_candidates(L: ModuleLabel, ctx: Context) -> list[Scalar]:
    out = [ctx.field.zero()]
    if isinstance(L, NonNil):
        out.append(L.beta)
    return out


@dataclass
class OracleReport:
    pair: tuple[ModuleLabel, ModuleLabel]
    rule_result: Optional[Decomposition]
    oracle_result: Optional[Decomposition]
    agree: bool
    diagnostics: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_json(self, ctx: Context) -> dict:
        out = {
            "pair": [print_label(L, ctx) for L in self.pair],
            "rule": self.rule_result.to_json(ctx) if self.rule_result else None,
            "oracle": self.oracle_result.to_json(ctx) if self.oracle_result else None,
            "agree": self.agree,
            "diagnostics": self.diagnostics,
        }
        if self.error:
            out["error"] = self.error
        return out

    def to_json_line(self, ctx: Context) -> str:
        return json.dumps(self.to_json(ctx), sort_keys=True)


def verify_pair(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> OracleReport:
    rule = tensor_decompose(A, B, ctx)
    try:
        found, diag = oracle_analyze(realize_pair(A, B, ctx), candidate_eigenvalues(A, B, ctx))
    except EigenvalueOutsideCandidates as exc:
        return OracleReport((A, B), rule, None, False, {}, f"EigenvalueOutsideCandidates: {exc}")
    return OracleReport((A, B), rule, found, rule == found, diag)


def self_consistent(L: ModuleLabel, ctx: Context) -> bool:
    """oracle(realize(L)) is exactly {L}."""
    found = oracle_decompose(realize(L, ctx), label_candidates(L, ctx))
    return found.summands == ((L, 1),)


def fitting_check(M: WeightModule) -> dict:
    """Explicit Fitting split of phi = x^s with submodule checks (small modules only).

    Returns the two dimensions; raises :class:`NotInvariant` if either part is not
    stable under x or under the group, which would contradict phi being a module map.
    """
    ctx = M.ctx
    if ctx.s is None:
        nil_dim = M.dim
        return {"nil": nil_dim, "inv": 0}
    phi = M.x_mat ** ctx.s
    nil_part, inv_part = fitting_split(phi)
    if nil_part.dim + inv_part.dim != M.dim:
        raise InternalDimensionMismatch("Fitting parts do not add up")
    for part in (nil_part, inv_part):
        restrict(M.x_mat, part)
        restrict(M.a_matrix(), part)
        if part.dim:
            P = restrict(phi, part)
            if part is inv_part and P.rank() != part.dim:
                raise NotInvariant("phi is singular on its stable image")
    return {"nil": nil_part.dim, "inv": inv_part.dim}
