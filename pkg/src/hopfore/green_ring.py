"""The Green ring: integer combinations of indecomposable labels, multiplied by tensor product."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .characters import Context
from .errors import ContextMismatch
from .labels import Decomposition, ModuleLabel, Nil, dim_of, print_label
from .rules import tensor_decompose


@lru_cache(maxsize=65536)
def _product(A: ModuleLabel, B: ModuleLabel, ctx: Context) -> Decomposition:
    return tensor_decompose(A, B, ctx)


@dataclass(frozen=True, eq=False)
class RingElement:
    """Finite sum of labels with nonzero integer coefficients; the order of multiplication matters."""

    ctx: Context
    terms: tuple[tuple[ModuleLabel, int], ...] = ()

    @classmethod
    def from_dict(cls, ctx: Context, coeffs: dict) -> "RingElement":
        items = [(label, c) for label, c in coeffs.items() if c]
        items.sort(key=lambda kv: kv[0].sort_key())
        return cls(ctx, tuple(items))

    @classmethod
    def of(cls, label: ModuleLabel, ctx: Context, coeff: int = 1) -> "RingElement":
        return cls.from_dict(ctx, {label: coeff})

    @classmethod
    def from_decomposition(cls, dec: Decomposition, ctx: Context) -> "RingElement":
        return cls.from_dict(ctx, dict(dec.summands))

    @classmethod
    def unit(cls, ctx: Context) -> "RingElement":
        return cls.of(Nil(1, ctx.epsilon), ctx)

    @classmethod
    def zero(cls, ctx: Context) -> "RingElement":
        return cls(ctx, ())

    def as_dict(self) -> dict:
        return dict(self.terms)

    def _same(self, other: "RingElement"):
        if other.ctx != self.ctx:
            raise ContextMismatch("ring elements over different contexts")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        out = self.as_dict()
        for label, c in other.terms:
            out[label] = out.get(label, 0) + c
        return RingElement.from_dict(self.ctx, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ctx, tuple((label, -c) for label, c in self.terms))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: Union["RingElement", int]) -> "RingElement":
        if isinstance(other, int):
            return RingElement.from_dict(self.ctx, {label: c * other for label, c in self.terms})
        self._same(other)
        out: dict = {}
        for A, a in self.terms:
            for B, b in other.terms:
                for label, m in _product(A, B, self.ctx).summands:
                    out[label] = out.get(label, 0) + a * b * m
        return RingElement.from_dict(self.ctx, out)

    def __rmul__(self, other: int) -> "RingElement":
        return self * other

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def dimension(self) -> int:
        """Virtual dimension sum c * dim(label)."""
        return sum(c * dim_of(label, self.ctx) for label, c in self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (label, c) in enumerate(self.terms):
            name = print_label(label, self.ctx)
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self) -> dict:
        return {"terms": [{"label": print_label(label, self.ctx), "coeff": c} for label, c in self.terms]}


def structure_table(generators: Iterable[ModuleLabel], ctx: Context) -> list[tuple[ModuleLabel, ModuleLabel, Decomposition]]:
    """All ordered products of the generators, row-major in the given order."""
    gens = list(generators)
    if not gens:
        raise ValueError("structure_table needs at least one generator")
    return [(A, B, _product(A, B, ctx)) for A in gens for B in gens]


def table_to_csv(table, ctx: Context) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["left", "right", "product", "total_dim"])
    for A, B, dec in table:
        writer.writerow([print_label(A, ctx), print_label(B, ctx), dec.to_text(ctx), dec.total_dim])
    return buf.getvalue()


def table_to_markdown(table, ctx: Context) -> str:
    gens = []
    for A, _, _ in table:
        if A not in gens:
            gens.append(A)
    names = [print_label(g, ctx) for g in gens]
    cells = {(A, B): dec for A, B, dec in table}
    lines = ["| (x) | " + " | ".join(f"`{n}`" for n in names) + " |",
             "|---" * (len(gens) + 1) + "|"]
    for A, name in zip(gens, names):
        row = [cells[(A, B)].to_text(ctx) for B in gens]
        lines.append(f"| `{name}` | " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def table_to_json(table, ctx: Context) -> str:
    rows = [{"left": print_label(A, ctx), "right": print_label(B, ctx), "product": dec.to_json(ctx)}
            for A, B, dec in table]
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"
