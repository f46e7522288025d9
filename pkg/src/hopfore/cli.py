"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 semantic error (and for
``verify``/``selftest``, 2 when any check fails).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from .characters import Character, Context, context_from_dict, context_to_dict, coset_canonical, load_context
from .errors import HopfOreError, ParseError
from .green_ring import RingElement, structure_table, table_to_csv, table_to_json, table_to_markdown
from .labels import ModuleLabel, Nil, NonNil, _find, canonicalize, parse_label, print_label
from .oracle import verify_pair
from .realization import module_to_json, realize_pair
from .rules import tensor_decompose
from .scalars import format_scalar, parse_scalar


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- green-ring expressions ----------------------------------------------------------

def parse_green_expr(text: str, ctx: Context) -> RingElement:
    """expr := term (('+'|'-') term)*;  term := int? label ('*' label)*"""
    pos = 0
    n = len(text)

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    def term(p) -> tuple[RingElement, int]:
        p = skip(p)
        coeff = 1
        start = p
        while p < n and text[p].isdigit():
            p += 1
        if p > start:
            coeff = int(text[start:p])
            p = skip(p)
            if p < n and text[p] == "*":
                p = skip(p + 1)
        value = None
        while True:
            if p >= n or text[p] not in "NP":
                raise ParseError("expected a label 'N(...)' or 'P(...)'", text, p)
            close = _find(text, text.index("(", p) + 1, ")") if "(" in text[p:] else -1
            if close < 0:
                raise ParseError("unterminated label", text, p)
            try:
                label = parse_label(text[p:close + 1], ctx)
            except ParseError as exc:
                raise ParseError(exc.message, text, p + exc.position) from None
            elem = RingElement.of(label, ctx)
            value = elem if value is None else value * elem
            p = skip(close + 1)
            if p < n and text[p] == "*":
                p = skip(p + 1)
                continue
            return value * coeff, p

    pos = skip(pos)
    sign = 1
    if pos < n and text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    value, pos = term(pos)
    total = value * sign
    while True:
        pos = skip(pos)
        if pos >= n:
            return total
        if text[pos] not in "+-":
            raise ParseError("expected '+' or '-'", text, pos)
        sign = -1 if text[pos] == "-" else 1
        value, pos = term(pos + 1)
        total = total + value * sign


# -- verification sweeps ---------------------------------------------------------------

@dataclass
class SweepConfig:
    max_nil_t: int = 6
    max_nonnil_t: int = 3
    beta_panel: list = field(default_factory=lambda: ["1", "-1"])
    include_degenerate: bool = True
    seed: int = 0
    parallelism: int = 1
    char_panel_size: int = 2

    def __post_init__(self):
        for name in ("max_nil_t", "max_nonnil_t", "parallelism", "char_panel_size"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be >= 1")


def character_panel(ctx: Context, size: int, rng: random.Random) -> list[Character]:
    """epsilon, chi, then seeded random characters, without repeats."""
    panel = [ctx.epsilon]

    def add(c):
        if c not in panel and len(panel) < size:
            panel.append(c)

    add(ctx.chi)
    orders = ctx.group.factor_orders
    for _ in range(50 * size):
        if len(panel) >= size:
            break
        entries = []
        for n in orders:
            if n:
                entries.append(rng.randrange(n))
            else:
                num = rng.choice([1, 2, 3]) * rng.choice([1, -1])
                den = rng.choice([1, 2, 3])
                entries.append(ctx.field(num) / den)
        add(ctx.char_from_exponents(entries))
    return panel


def sweep_pairs(ctx: Context, cfg: SweepConfig) -> Iterator[tuple[ModuleLabel, ModuleLabel]]:
    rng = random.Random(cfg.seed)
    chars = character_panel(ctx, cfg.char_panel_size, rng)
    for n, lam, t, sig in product(range(1, cfg.max_nil_t + 1), chars, range(1, cfg.max_nil_t + 1), chars):
        yield Nil(n, lam), Nil(t, sig)
    if ctx.s is None:
        return
    betas = [parse_scalar(b, ctx.field) for b in cfg.beta_panel]
    cosets = []
    for c in chars:
        rep = coset_canonical(c, ctx)
        if rep not in cosets:
            cosets.append(rep)
    nonnils = [canonicalize(t, sig, b, ctx) for t in range(1, cfg.max_nonnil_t + 1) for sig in cosets for b in betas]
    for p, lam in product(range(1, cfg.max_nil_t + 1), chars):
        for B in nonnils:
            yield Nil(p, lam), B
            yield B, Nil(p, lam)
    a_s = ctx.a_power(ctx.s)
    for A in nonnils:
        partners = list(nonnils)
        if cfg.include_degenerate:
            for t in range(1, cfg.max_nonnil_t + 1):
                for sig in cosets:
                    partners.append(canonicalize(t, sig, -A.beta * sig(a_s), ctx))
        seen = set()
        for B in partners:
            if B not in seen:
                seen.add(B)
                yield A, B


_WORKER_CTX: Optional[Context] = None


def _init_worker(ctx_dict):
    global _WORKER_CTX
    _WORKER_CTX = context_from_dict(ctx_dict)


def _verify_texts(texts: tuple[str, str]) -> str:
    ctx = _WORKER_CTX
    A, B = parse_label(texts[0], ctx), parse_label(texts[1], ctx)
    return verify_pair(A, B, ctx).to_json_line(ctx)


def run_sweep(ctx: Context, cfg: SweepConfig, out=sys.stdout) -> tuple[int, int]:
    header = {"sweep": {**asdict(cfg), "context": context_to_dict(ctx)}}
    print(json.dumps(header, sort_keys=True), file=out, flush=True)
    texts = [(print_label(A, ctx), print_label(B, ctx)) for A, B in sweep_pairs(ctx, cfg)]
    ctx_dict = context_to_dict(ctx)
    pairs = disagreements = 0
    if cfg.parallelism == 1:
        _init_worker(ctx_dict)
        lines = map(_verify_texts, texts)
        executor = None
    else:
        executor = ProcessPoolExecutor(cfg.parallelism, initializer=_init_worker, initargs=(ctx_dict,))
        lines = executor.map(_verify_texts, texts, chunksize=4)
    try:
        for line in lines:
            pairs += 1
            if not json.loads(line)["agree"]:
                disagreements += 1
            print(line, file=out, flush=True)
    finally:
        if executor is not None:
            executor.shutdown()
    print(json.dumps({"pairs": pairs, "disagreements": disagreements}), file=out, flush=True)
    return pairs, disagreements


# -- self test ------------------------------------------------------------------------------

def selftest(out=sys.stdout) -> bool:
    from .characters import make_context
    from .labels import nonnil

    checks = []
    fin2 = make_context([2], [1], [-1])
    e = fin2.epsilon
    inf = make_context([0], [1], ["1/2"])
    checks.append(("FIN(2) N(2) x N(2)", fin2, Nil(2, e), Nil(2, e)))
    checks.append(("FIN(2) N(3) x P(1)", fin2, Nil(3, e), nonnil(1, e, 1, fin2)))
    checks.append(("FIN(2) P(1) x P(1) degenerate", fin2, nonnil(1, e, 1, fin2), nonnil(1, e, -1, fin2)))
    checks.append(("INF N(3) x N(4)", inf, Nil(3, inf.epsilon), Nil(4, inf.epsilon)))
    ok = True
    for name, ctx, A, B in checks:
        agree = verify_pair(A, B, ctx).agree
        ok &= agree
        print(f"{'pass' if agree else 'FAIL'}  {name}", file=out)
    return ok


# -- argument handling ----------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--ctx", default=d, help="context JSON file")
    parser.add_argument("--format", default=d, choices=["json", "text", "csv", "md"])
    parser.add_argument("--seed", type=int, default=d)
    parser.add_argument("--jobs", type=int, default=d)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfore", description="Tensor products of weight modules over kG(chi^-1, a, 0).")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("ctx", help="context utilities")
    p.add_argument("action", choices=["validate"])
    p.add_argument("args", nargs="*", help="[CTX]")
    _common(p, suppress=True)

    p = sub.add_parser("tensor", help="decompose A (x) B")
    p.add_argument("args", nargs="+", help="[CTX] A B")
    p.add_argument("--dump-matrix", action="store_true", help="also print the realized x-matrix")
    _common(p, suppress=True)

    p = sub.add_parser("green", help="evaluate a Green ring expression")
    p.add_argument("args", nargs="+", help="[CTX] EXPR")
    _common(p, suppress=True)

    p = sub.add_parser("table", help="multiplication table of generators")
    p.add_argument("args", nargs="+", help="[CTX] LABEL...")
    _common(p, suppress=True)

    p = sub.add_parser("verify", help="compare the rules with the oracle on a sweep")
    p.add_argument("args", nargs="*", help="[CTX]")
    p.add_argument("--max-nil-t", type=int, default=6)
    p.add_argument("--max-nonnil-t", type=int, default=3)
    p.add_argument("--beta", action="append", help="beta literal (repeatable); default 1 and -1")
    p.add_argument("--no-degenerate", action="store_true")
    p.add_argument("--chars", type=int, default=2, help="size of the character panel")
    _common(p, suppress=True)

    p = sub.add_parser("selftest", help="run a few built-in checks")
    _common(p, suppress=True)
    return parser


def _split_ctx(ns, args: list, needed: int) -> tuple[Context, list]:
    """Take the context from --ctx or from the first positional argument."""
    if ns.ctx is not None and len(args) == needed:
        path = ns.ctx
    elif len(args) == needed + 1:
        path, args = args[0], args[1:]
    elif ns.ctx is None:
        raise UsageError("a context file is required (positional or --ctx)")
    else:
        raise UsageError(f"expected {needed} argument(s) after the context, got {len(args)}")
    try:
        return load_context(path), args
    except FileNotFoundError:
        raise UsageError(f"context file not found: {path}") from None


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        return _dispatch(ns, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc.message} at position {exc.position}", file=err)
        print(exc.caret(), file=err)
        return 1
    except HopfOreError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2


def _dispatch(ns, out) -> int:
    fmt = ns.format
    if ns.command is None:
        raise UsageError("a subcommand is required")
    if ns.command == "selftest":
        return 0 if selftest(out) else 2
    if ns.command == "ctx":
        ctx, _ = _split_ctx(ns, ns.args, 0)
        q = format_scalar(ctx.q)
        if fmt == "json":
            print(json.dumps({"regime": ctx.regime, "s": ctx.s, "q": q}), file=out)
        else:
            print(f"regime={ctx.regime_label()}, q={q}", file=out)
        return 0
    if ns.command == "tensor":
        ctx, (a, b) = _split_ctx(ns, ns.args, 2)
        A, B = parse_label(a, ctx), parse_label(b, ctx)
        dec = tensor_decompose(A, B, ctx)
        if fmt == "text":
            print(dec.to_text(ctx), file=out)
        else:
            data = dec.to_json(ctx)
            if ns.dump_matrix:
                data["module"] = module_to_json(realize_pair(A, B, ctx))
            print(json.dumps(data), file=out)
        return 0
    if ns.command == "green":
        ctx, (expr,) = _split_ctx(ns, ns.args, 1)
        value = parse_green_expr(expr, ctx)
        if fmt == "json":
            print(json.dumps(value.to_json()), file=out)
        else:
            print(value.to_text(), file=out)
        return 0
    if ns.command == "table":
        if ns.ctx is not None:
            ctx, labels = _split_ctx(ns, ns.args, len(ns.args))
        else:
            ctx, labels = _split_ctx(ns, ns.args, len(ns.args) - 1)
        if not labels:
            raise UsageError("table needs at least one generator label")
        gens = [parse_label(t, ctx) for t in labels]
        table = structure_table(gens, ctx)
        if fmt == "json":
            out.write(table_to_json(table, ctx))
        elif fmt == "md":
            out.write(table_to_markdown(table, ctx))
        else:
            out.write(table_to_csv(table, ctx))
        return 0
    if ns.command == "verify":
        ctx, _ = _split_ctx(ns, ns.args, 0)
        betas = ns.beta or ["1", "-1"]
        for b in betas:
            if parse_scalar(b, ctx.field).is_zero():
                raise UsageError("beta panel entries must be nonzero")
        cfg = SweepConfig(
            max_nil_t=ns.max_nil_t,
            max_nonnil_t=ns.max_nonnil_t,
            beta_panel=betas,
            include_degenerate=not ns.no_degenerate,
            seed=ns.seed if ns.seed is not None else 0,
            parallelism=ns.jobs if ns.jobs is not None else 1,
            char_panel_size=ns.chars,
        )
        _, bad = run_sweep(ctx, cfg, out)
        return 0 if bad == 0 else 2
    raise UsageError(f"unknown command {ns.command}")


if __name__ == "__main__":
    sys.exit(main())
