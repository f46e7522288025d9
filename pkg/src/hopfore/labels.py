"""Canonical names for the indecomposable weight modules and for decompositions.

``Nil(t, lam)`` is the t-dimensional module V_t(lam) on which x is nilpotent;
``NonNil(t, sig, beta)`` is V_t(sig, beta), of dimension t*s, with sig stored as
the canonical representative of its coset modulo <chi>.

Text form::

    N(3;[1])          nilpotent, t = 3, character zeta_n^1 on a Z/n factor
    P(2;[0];-1)       non-nilpotent, t = 2, trivial coset, beta = -1
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Union

from .characters import Character, Context, coset_canonical, validate_character
from .errors import (
    InternalDimensionMismatch,
    ParseError,
    RegimeMismatch,
    SemanticError,
    ZeroBeta,
)
from .scalars import Scalar, format_scalar, parse_scalar


@dataclass(frozen=True)
class Nil:
    t: int
    lam: Character

    def sort_key(self):
        return (0, self.t, self.lam.sort_key(), ())


@dataclass(frozen=True)
class NonNil:
    t: int
    sig: Character
    beta: Scalar

    def sort_key(self):
        return (1, self.t, self.sig.sort_key(), self.beta.sort_key())


ModuleLabel = Union[Nil, NonNil]


def dim_of(label: ModuleLabel, ctx: Context) -> int:
    if isinstance(label, Nil):
        return label.t
    if ctx.s is None:
        raise RegimeMismatch("non-nilpotent modules need |chi| finite")
    return label.t * ctx.s


def canonicalize(t: int, char: Character, beta, ctx: Context) -> ModuleLabel:
    """Canonical label of V_t(char, beta); beta = 0 gives V_{ts}(char)."""
    if t < 1:
        raise SemanticError(f"t must be >= 1, got {t}")
    if beta is None:
        return Nil(t, char)
    if ctx.s is None:
        raise RegimeMismatch("non-nilpotent modules need |chi| finite")
    beta = ctx.field(beta)
    if beta.is_zero():
        return Nil(t * ctx.s, char)
    return NonNil(t, coset_canonical(char, ctx), beta)


def nil(t: int, lam: Character) -> Nil:
    if t < 1:
        raise SemanticError(f"t must be >= 1, got {t}")
    return Nil(t, lam)


def nonnil(t: int, sig: Character, beta, ctx: Context) -> NonNil:
    beta = ctx.field(beta)
    if beta.is_zero():
        raise ZeroBeta("beta must be nonzero")
    label = canonicalize(t, sig, beta, ctx)
    assert isinstance(label, NonNil)
    return label


def validate_label(label: ModuleLabel, ctx: Context) -> None:
    if label.t < 1:
        raise SemanticError(f"t must be >= 1, got {label.t}")
    if isinstance(label, NonNil):
        if ctx.s is None:
            raise RegimeMismatch("non-nilpotent modules need |chi| finite")
        if label.beta.is_zero():
            raise ZeroBeta("beta must be nonzero")
        validate_character(label.sig, ctx.group)
        if coset_canonical(label.sig, ctx) != label.sig:
            raise SemanticError("non-nilpotent label must carry the canonical coset representative")
    else:
        validate_character(label.lam, ctx.group)


# -- text form -------------------------------------------------------------------

def format_character(lam: Character, ctx: Context) -> str:
    parts = []
    for e in ctx.exponents_of(lam):
        parts.append(str(e) if isinstance(e, int) else format_scalar(e))
    return "[" + ",".join(parts) + "]"


def print_label(label: ModuleLabel, ctx: Context) -> str:
    if isinstance(label, Nil):
        return f"N({label.t};{format_character(label.lam, ctx)})"
    return f"P({label.t};{format_character(label.sig, ctx)};{format_scalar(label.beta)})"


_INT = re.compile(r"\s*([+-]?\d+)\s*$")


def _strip_pos(text: str, start: int, end: int) -> tuple[str, int]:
    seg = text[start:end]
    lead = len(seg) - len(seg.lstrip())
    return seg.strip(), start + lead


def _expect(text: str, pos: int, token: str) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if not text.startswith(token, pos):
        raise ParseError(f"expected {token!r}", text, pos)
    return pos + len(token)


def _find(text: str, pos: int, chars: str) -> int:
    depth = 0
    for i in range(pos, len(text)):
        c = text[i]
        if c in "([":
            depth += 1
        elif c in ")]":
            if depth == 0 and c in chars:
                return i
            depth -= 1
        elif depth == 0 and c in chars:
            return i
    raise ParseError("expected " + " or ".join(repr(c) for c in chars), text, len(text))


def parse_label(text: str, ctx: Context) -> ModuleLabel:
    """Parse ``N(t;[..])`` or ``P(t;[..];beta)`` into a canonical label."""
    pos = 0
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if text.startswith("N", pos):
        kind = "N"
    elif text.startswith("P", pos):
        kind = "P"
    else:
        raise ParseError("label must start with 'N(' or 'P('", text, pos)
    pos = _expect(text, pos + 1, "(")
    semi = _find(text, pos, ";")
    t_text, t_pos = _strip_pos(text, pos, semi)
    if not re.fullmatch(r"\d+", t_text):
        raise ParseError("expected a positive decimal integer", text, t_pos)
    t = int(t_text)
    pos = _expect(text, semi + 1, "[")
    close = _find(text, pos, "]")
    entries = _parse_char_entries(text, pos, close, ctx)
    pos = close + 1
    beta = None
    if kind == "P":
        pos = _expect(text, pos, ";")
        end = _find(text, pos, ")")
        b_text, b_pos = _strip_pos(text, pos, end)
        try:
            beta = parse_scalar(b_text, ctx.field)
        except ParseError as exc:
            raise ParseError(exc.message, text, b_pos + exc.position) from None
        pos = end
    pos = _expect(text, pos, ")")
    if text[pos:].strip():
        raise ParseError("trailing input", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
    if t < 1:
        raise SemanticError("t must be >= 1")
    char = ctx.char_from_exponents(entries)
    if kind == "N":
        return Nil(t, char)
    if ctx.s is None:
        raise RegimeMismatch("'P(...)' labels need |chi| finite")
    if beta.is_zero():
        raise ZeroBeta("beta must be nonzero")
    return canonicalize(t, char, beta, ctx)


def _parse_char_entries(text: str, start: int, end: int, ctx: Context) -> list:
    entries = []
    pos = start
    orders = ctx.group.factor_orders
    while True:
        comma = text.find(",", pos, end)
        stop = end if comma < 0 else comma
        e_text, e_pos = _strip_pos(text, pos, stop)
        idx = len(entries)
        if idx >= len(orders):
            raise ParseError(f"character has more than {len(orders)} entries", text, e_pos)
        if orders[idx]:
            m = _INT.match(e_text)
            if not e_text or not m:
                raise ParseError("expected an integer exponent", text, e_pos)
            entries.append(int(e_text))
        else:
            try:
                entries.append(parse_scalar(e_text, ctx.field))
            except ParseError as exc:
                raise ParseError(exc.message, text, e_pos + exc.position) from None
        if comma < 0:
            break
        pos = comma + 1
    if len(entries) != len(orders):
        raise ParseError(f"character needs {len(orders)} entries", text, end)
    return entries


# -- decompositions ------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Canonical direct sum: sorted distinct labels with positive multiplicities."""

    summands: tuple[tuple[ModuleLabel, int], ...]
    total_dim: int

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[ModuleLabel, int]], ctx: Context) -> "Decomposition":
        counts: Counter = Counter()
        for label, mult in terms:
            if mult < 0:
                raise InternalDimensionMismatch(f"negative multiplicity for {label}")
            if mult:
                counts[label] += mult
        summands = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
        total = sum(m * dim_of(label, ctx) for label, m in summands)
        return cls(summands, total)

    @classmethod
    def from_labels(cls, labels: Iterable[ModuleLabel], ctx: Context) -> "Decomposition":
        return cls.from_terms(((label, 1) for label in labels), ctx)

    def as_counter(self) -> Counter:
        return Counter(dict(self.summands))

    def count(self) -> int:
        """Number of indecomposable summands, with multiplicity."""
        return sum(m for _, m in self.summands)

    def labels(self) -> list[ModuleLabel]:
        return [label for label, _ in self.summands]

    def to_json(self, ctx: Context) -> dict:
        return {
            "summands": [
                {"label": print_label(label, ctx), "mult": m, "dim": dim_of(label, ctx)}
                for label, m in self.summands
            ],
            "total_dim": self.total_dim,
        }

    def to_text(self, ctx: Context) -> str:
        if not self.summands:
            return "0"
        parts = []
        for label, m in self.summands:
            name = print_label(label, ctx)
            parts.append(name if m == 1 else f"{m}*{name}")
        return " + ".join(parts)


def decomposition_from_json(data: dict, ctx: Context) -> Decomposition:
    terms = [(parse_label(item["label"], ctx), int(item["mult"])) for item in data["summands"]]
    dec = Decomposition.from_terms(terms, ctx)
    if dec.total_dim != data.get("total_dim", dec.total_dim):
        raise SemanticError("total_dim does not match the summands")
    return dec
