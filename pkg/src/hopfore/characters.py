"""Finitely generated abelian groups, their characters, and the Hopf-Ore context (G, a, chi)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import (
    ChiAEqualsOne,
    FieldTooSmall,
    GroupMismatch,
    InfiniteRegime,
    InvalidCharacter,
    ParseError,
    SemanticError,
    UnsupportedRegime,
)
from .scalars import INFINITE, FieldSpec, Scalar, cyclotomic_field, order_of_unit, parse_scalar


@dataclass(frozen=True)
class GroupSpec:
    """Z/n_1 x ... x Z/n_k, with n_i = 0 standing for an infinite cyclic factor."""

    factor_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.factor_orders)
        object.__setattr__(self, "factor_orders", orders)
        if not orders:
            raise SemanticError("group: at least one cyclic factor is required")
        for i, n in enumerate(orders):
            if n != 0 and n < 2:
                raise SemanticError(f"group[{i}]: factor order must be 0 (infinite) or >= 2, got {n}")

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    def element(self, exps: Sequence[int]) -> "GroupElement":
        if len(exps) != self.rank:
            raise GroupMismatch(f"expected {self.rank} exponents, got {len(exps)}")
        return GroupElement(tuple(e % n if n else int(e) for e, n in zip(exps, self.factor_orders)))

    def finite_lcm(self) -> int:
        return math.lcm(*[n for n in self.factor_orders if n] or [1])


@dataclass(frozen=True)
class GroupElement:
    exps: tuple[int, ...]

    def power(self, k: int, group: GroupSpec) -> "GroupElement":
        return group.element([e * k for e in self.exps])


@dataclass(frozen=True)
class Character:
    """A character of G stored by its values on the cyclic generators."""

    values: tuple[Scalar, ...]

    @property
    def field(self) -> FieldSpec:
        return self.values[0].field

    def __mul__(self, other: "Character") -> "Character":
        if len(other.values) != len(self.values) or other.field != self.field:
            raise GroupMismatch("characters of different groups")
        return Character(tuple(a * b for a, b in zip(self.values, other.values)))

    def __pow__(self, k: int) -> "Character":
        return Character(tuple(v ** k for v in self.values))

    def inverse(self) -> "Character":
        return self ** -1

    def __call__(self, g: GroupElement) -> Scalar:
        if len(g.exps) != len(self.values):
            raise GroupMismatch("character and group element of different groups")
        out = self.field.one()
        for v, e in zip(self.values, g.exps):
            if e:
                out = out * v ** e
        return out

    def sort_key(self) -> tuple:
        return tuple(v.sort_key() for v in self.values)

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)

    def __lt__(self, other: "Character") -> bool:
        return self.sort_key() < other.sort_key()


def trivial_character(group: GroupSpec, fld: FieldSpec) -> Character:
    return Character(tuple(fld.one() for _ in group.factor_orders))


def char_order(lam: Character) -> Union[int, float]:
    """lcm of the orders of the generator values; ``INFINITE`` if any has infinite order."""
    out = 1
    for v in lam.values:
        o = order_of_unit(v)
        if o == INFINITE:
            return INFINITE
        out = math.lcm(out, o)
    return out


def validate_character(lam: Character, group: GroupSpec, name: str = "character") -> None:
    if len(lam.values) != group.rank:
        raise GroupMismatch(f"{name}: expected {group.rank} values, got {len(lam.values)}")
    for i, (v, n) in enumerate(zip(lam.values, group.factor_orders)):
        if v.is_zero():
            raise InvalidCharacter(f"{name}[{i}]: character value must be a unit")
        if n and not (v ** n).is_one():
            raise InvalidCharacter(f"{name}[{i}]: value {v} is not an {n}-th root of unity")


@dataclass(frozen=True)
class Context:
    """The data (G, a, chi) with q = chi(a)^-1 and the regime FIN(s) or INF."""

    group: GroupSpec
    a: GroupElement
    chi: Character
    field: FieldSpec
    q: Scalar
    s: Optional[int]  # None in the INF regime

    @property
    def regime(self) -> str:
        return "INF" if self.s is None else "FIN"

    @property
    def is_finite(self) -> bool:
        return self.s is not None

    def regime_label(self) -> str:
        return "INF" if self.s is None else f"FIN({self.s})"

    @property
    def epsilon(self) -> Character:
        return trivial_character(self.group, self.field)

    def a_power(self, k: int) -> GroupElement:
        return self.a.power(k, self.group)

    def chi_power(self, k: int) -> Character:
        return self.chi ** k

    def char(self, *values) -> Character:
        """Character from raw values (ints, Fractions, Scalars or literals)."""
        out = []
        for v in values:
            out.append(parse_scalar(v, self.field) if isinstance(v, str) else self.field(v))
        lam = Character(tuple(out))
        validate_character(lam, self.group)
        return lam

    def char_from_exponents(self, entries: Sequence) -> Character:
        """Exponent k on a finite factor Z/n means zeta_n^k; infinite factors take a value."""
        if len(entries) != self.group.rank:
            raise GroupMismatch(f"expected {self.group.rank} entries, got {len(entries)}")
        vals = []
        for e, n in zip(entries, self.group.factor_orders):
            if n:
                vals.append(self.field.root_of_unity(n) ** int(e))
            else:
                vals.append(parse_scalar(e, self.field) if isinstance(e, str) else self.field(e))
        lam = Character(tuple(vals))
        validate_character(lam, self.group)
        return lam

    def exponents_of(self, lam: Character) -> list:
        """Inverse of :meth:`char_from_exponents` (finite factors as ints, infinite as Scalars)."""
        out = []
        for v, n in zip(lam.values, self.group.factor_orders):
            if n:
                root = self.field.root_of_unity(n)
                power = self.field.one()
                for k in range(n):
                    if power == v:
                        out.append(k)
                        break
                    power = power * root
                else:
                    raise InvalidCharacter(f"value {v} is not a power of zeta_{n}")
            else:
                out.append(v)
        return out

    def __eq__(self, other):
        if not isinstance(other, Context):
            return NotImplemented
        return (self.group, self.a, self.field, self.chi.values) == (
            other.group, other.a, other.field, other.chi.values)

    def __hash__(self):
        return hash((self.group, self.a, self.field, self.chi.values))


def build_context(group: GroupSpec, a: GroupElement, chi: Character, fld: FieldSpec) -> Context:
    for n in group.factor_orders:
        if n and fld.unit_order % n:
            raise FieldTooSmall(f"field Q(zeta_{fld.conductor}) lacks primitive {n}-th roots of unity")
    if len(a.exps) != group.rank:
        raise GroupMismatch(f"a: expected {group.rank} exponents, got {len(a.exps)}")
    a = group.element(a.exps)
    for v in chi.values:
        if v.field != fld:
            raise FieldTooSmall(f"chi: value {v} does not live in Q(zeta_{fld.conductor})")
    validate_character(chi, group, "chi")
    chi_a = chi(a)
    if chi_a.is_one():
        raise ChiAEqualsOne("chi(a) = 1 is not allowed")
    order_chi = char_order(chi)
    order_chi_a = order_of_unit(chi_a)
    if order_chi != order_chi_a:
        raise UnsupportedRegime(
            f"|chi| = {order_chi} differs from |chi(a)| = {order_chi_a}; only |chi| = |chi(a)| is supported")
    s = None if order_chi == INFINITE else int(order_chi)
    return Context(group, a, chi, fld, chi_a.inverse(), s)


def make_context(group: Sequence[int], a: Sequence[int], chi: Sequence, conductor: Union[int, str] = "auto") -> Context:
    """Convenience constructor; chi entries are numbers or scalar literals."""
    g = GroupSpec(tuple(group))
    m = g.finite_lcm() if conductor == "auto" else int(conductor)
    fld = cyclotomic_field(m)
    vals = tuple(parse_scalar(v, fld) if isinstance(v, str) else fld(v) for v in chi)
    return build_context(g, g.element(a), Character(vals), fld)


def coset_canonical(sigma: Character, ctx: Context) -> Character:
    """Lexicographically least element of sigma<chi> (FIN regime only)."""
    if ctx.s is None:
        raise InfiniteRegime("coset labels only exist when |chi| is finite")
    best = sigma
    cur = sigma
    for _ in range(ctx.s - 1):
        cur = cur * ctx.chi
        if cur.sort_key() < best.sort_key():
            best = cur
    return best


# -- context file ---------------------------------------------------------------

def context_from_dict(data: dict) -> Context:
    for key in ("group", "a", "chi"):
        if key not in data:
            raise SemanticError(f"{key}: missing field")
    if not isinstance(data["group"], list) or not all(isinstance(n, int) for n in data["group"]):
        raise SemanticError("group: expected a list of integers")
    group = GroupSpec(tuple(data["group"]))
    conductor = data.get("conductor", "auto")
    if conductor == "auto":
        m = group.finite_lcm()
    elif isinstance(conductor, int) and conductor >= 1:
        m = conductor
    else:
        raise SemanticError(f"conductor: expected a positive integer or \"auto\", got {conductor!r}")
    fld = cyclotomic_field(m)
    a = data["a"]
    if not isinstance(a, list) or not all(isinstance(e, int) for e in a):
        raise SemanticError("a: expected a list of integers")
    if len(a) != group.rank:
        raise SemanticError(f"a: expected {group.rank} exponents, got {len(a)}")
    chi_raw = data["chi"]
    if not isinstance(chi_raw, list) or len(chi_raw) != group.rank:
        raise SemanticError(f"chi: expected a list of {group.rank} scalar literals")
    vals = []
    for i, lit in enumerate(chi_raw):
        try:
            vals.append(parse_scalar(str(lit), fld))
        except ParseError as exc:
            raise ParseError(f"chi[{i}]: {exc.message}", exc.text, exc.position) from None
    try:
        return build_context(group, group.element(a), Character(tuple(vals)), fld)
    except InvalidCharacter as exc:
        raise InvalidCharacter(str(exc)) from None


def context_to_dict(ctx: Context) -> dict:
    from .scalars import format_scalar

    return {
        "conductor": ctx.field.conductor,
        "group": list(ctx.group.factor_orders),
        "a": list(ctx.a.exps),
        "chi": [format_scalar(v) for v in ctx.chi.values],
    }


def load_context(path: Union[str, Path]) -> Context:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"context file is not valid JSON: {exc.msg}", exc.doc, exc.pos) from None
    if not isinstance(data, dict):
        raise SemanticError("context file must hold a JSON object")
    return context_from_dict(data)
