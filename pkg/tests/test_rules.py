import random
from collections import Counter

import pytest

from hopfore.characters import coset_canonical
from hopfore.errors import RegimeMismatch
from hopfore.labels import Decomposition, Nil, NonNil, dim_of
from hopfore.rules import (
    NOT_APPLICABLE,
    decompose_fin_nil_nil,
    decompose_fin_nil_nonnil,
    decompose_fin_nonnil_nonnil,
    decompose_inf_nil_nil,
    decompose_special,
    rule_for,
    special_cases,
    split,
    tensor_decompose,
)

from conftest import fin2_ctx, fin3_ctx, inf_ctx, square_ctx


def dec(ctx, *terms):
    """Decomposition from (label, mult) pairs or bare labels."""
    pairs = [t if isinstance(t, tuple) else (t, 1) for t in terms]
    return Decomposition.from_terms(pairs, ctx)


def random_label(ctx, rng, max_t=6):
    lam = ctx.char_from_exponents([rng.randrange(n) if n else rng.choice([1, 2, -3]) for n in ctx.group.factor_orders])
    t = rng.randint(1, max_t)
    if ctx.s is None or rng.random() < 0.5:
        return Nil(t, lam)
    beta = rng.choice([1, -1, 2]) * ctx.field.gen() ** rng.randrange(ctx.field.conductor)
    return NonNil(t, coset_canonical(lam, ctx), beta)


# -- worked examples ------------------------------------------------------------

def test_split():
    assert (split(7, 3).quotient, split(7, 3).remainder) == (2, 1)


def test_inf_examples(inf):
    lam, sig = inf.char("1/3"), inf.char(5)
    chi = inf.chi_power
    base = lam * sig
    assert tensor_decompose(Nil(2, lam), Nil(3, sig), inf) == dec(inf, Nil(4, base), Nil(2, chi(1) * base))
    assert decompose_inf_nil_nil(1, 4, lam, sig, inf) == dec(inf, Nil(4, base))
    assert decompose_inf_nil_nil(3, 3, lam, sig, inf) == dec(inf, Nil(5, base), Nil(3, chi(1) * base), Nil(1, chi(2) * base))
    assert decompose_inf_nil_nil(2, 2, lam, sig, inf) == dec(inf, Nil(3, base), Nil(1, chi(1) * base))


def test_inf_rejects_nonnil(inf):
    with pytest.raises(RegimeMismatch):
        tensor_decompose(Nil(1, inf.epsilon), NonNil(1, inf.epsilon, inf.field(1)), inf)


def test_fin2_examples(fin2):
    eps, chi = fin2.epsilon, fin2.chi
    beta = fin2.field(3)
    assert tensor_decompose(Nil(2, chi), Nil(2, eps), fin2) == dec(fin2, Nil(2, chi), Nil(2, eps))
    assert tensor_decompose(Nil(1, chi), NonNil(1, eps, beta), fin2) == dec(fin2, NonNil(1, eps, beta))


def test_fin_nil_nonnil_examples(z4):
    lam = z4.char_from_exponents([1])  # lam(a^2) = -1
    sig = z4.epsilon
    beta = z4.field.gen()
    canon = coset_canonical(lam * sig, z4)
    assert decompose_fin_nil_nonnil(1, lam, 3, sig, beta, "left", z4) == dec(z4, NonNil(3, canon, beta))
    assert decompose_fin_nil_nonnil(3, lam, 1, sig, beta, "left", z4) == dec(
        z4, NonNil(1, canon, beta), NonNil(2, canon, beta))
    assert decompose_fin_nil_nonnil(1, lam, 1, sig, beta, "right", z4) == dec(z4, NonNil(1, canon, -beta))


def test_fin_nonnil_nonnil_examples(fin2):
    one = fin2.field(1)
    eps, chi = fin2.epsilon, fin2.chi
    assert decompose_fin_nonnil_nonnil(1, eps, one, 1, eps, one, fin2) == dec(fin2, (NonNil(1, eps, fin2.field(2)), 2))
    assert decompose_fin_nonnil_nonnil(1, eps, one, 1, eps, -one, fin2) == dec(fin2, Nil(2, eps), Nil(2, chi))


def test_fin_nil_nil_examples(fin2):
    eps, chi = fin2.epsilon, fin2.chi
    assert decompose_fin_nil_nil(3, eps, 1, eps, fin2) == dec(fin2, Nil(3, eps))
    assert decompose_fin_nil_nil(3, eps, 3, eps, fin2) == dec(fin2, Nil(5, eps), Nil(3, chi), Nil(1, eps))
    assert decompose_fin_nil_nil(2, eps, 2, eps, fin2) == dec(fin2, Nil(2, eps), Nil(2, chi))


def test_special_examples(fin2):
    eps, chi = fin2.epsilon, fin2.chi
    beta = fin2.field(-1)
    assert decompose_special(NonNil(1, eps, beta), Nil(4, eps), fin2) == dec(fin2, (NonNil(2, eps, beta), 2))
    assert decompose_special(Nil(2, eps), Nil(3, eps), fin2) == dec(fin2, Nil(4, eps), Nil(2, chi))
    assert decompose_special(Nil(5, eps), NonNil(1, eps, beta), fin2) is NOT_APPLICABLE


def test_rule_for(fin2, inf):
    eps = fin2.epsilon
    beta = fin2.field(1)
    assert rule_for(Nil(1, inf.epsilon), Nil(1, inf.epsilon), inf) == "inf_nil_nil"
    assert rule_for(Nil(1, eps), Nil(1, eps), fin2) == "fin_nil_nil"
    assert rule_for(Nil(1, eps), NonNil(1, eps, beta), fin2) == "fin_nil_nonnil_left"
    assert rule_for(NonNil(1, eps, beta), Nil(1, eps), fin2) == "fin_nil_nonnil_right"
    assert rule_for(NonNil(1, eps, beta), NonNil(1, eps, beta), fin2) == "fin_nonnil_nonnil"


# -- invariants ---------------------------------------------------------------------

CONTEXTS = [fin2_ctx(), fin3_ctx(), inf_ctx(), square_ctx(2), square_ctx(3)]


@pytest.mark.parametrize("seed", range(10))
def test_dimension_conservation(seed):
    rng = random.Random(seed)
    for _ in range(100):
        ctx = rng.choice(CONTEXTS)
        A, B = random_label(ctx, rng), random_label(ctx, rng)
        assert tensor_decompose(A, B, ctx).total_dim == dim_of(A, ctx) * dim_of(B, ctx)


@pytest.mark.parametrize("ctx", [fin2_ctx(), fin3_ctx()], ids=["s=2", "s=3"])
def test_summand_count_is_min(ctx):
    limit = 12
    for lam in (ctx.epsilon, ctx.chi):
        for n in range(2, limit + 1):
            for t in range(2, limit + 1):
                d = tensor_decompose(Nil(n, lam), Nil(t, ctx.epsilon), ctx)
                assert all(isinstance(label, Nil) for label in d.labels())
                assert d.count() == min(n, t)


@pytest.mark.parametrize("ctx", [fin2_ctx(), fin3_ctx()], ids=["s=2", "s=3"])
def test_special_cases_agree(ctx):
    chars = [ctx.epsilon, ctx.chi]
    checked = Counter()
    for lam in chars:
        for sig in chars:
            for n in range(1, 13):
                for t in range(1, 13):
                    A, B = Nil(n, lam), Nil(t, sig)
                    master = tensor_decompose(A, B, ctx)
                    for name, d in special_cases(A, B, ctx).items():
                        assert d == master, (name, n, t)
                        checked[name.removesuffix("_swapped")] += 1
    for beta in (1, -1, 2):
        for t in range(1, 5):
            A = NonNil(t, ctx.epsilon, ctx.field(beta))
            B = Nil(2 * ctx.s, ctx.epsilon)
            assert special_cases(A, B, ctx)["times_V2s_trivial"] == tensor_decompose(A, B, ctx)
    assert set(checked) == {"V1", "V2", "small", "s_plus_1", "multiple_of_s", "one_mod_s"}


@pytest.mark.parametrize("ctx", CONTEXTS[:3], ids=["s=2", "s=3", "inf"])
def test_nil_nil_commutative(ctx):
    rng = random.Random(7)
    for _ in range(100):
        A = Nil(rng.randint(1, 10), rng.choice([ctx.epsilon, ctx.chi, ctx.chi_power(2)]))
        B = Nil(rng.randint(1, 10), rng.choice([ctx.epsilon, ctx.chi]))
        assert tensor_decompose(A, B, ctx) == tensor_decompose(B, A, ctx)


@pytest.mark.parametrize("s", [2, 3])
def test_mixed_order_twist(s):
    ctx = square_ctx(s)
    a_s = ctx.a_power(s)
    for k in range(s * s):
        lam = ctx.char_from_exponents([k])
        for p in range(1, 3 * s + 1):
            for t in range(1, 4):
                for beta in (ctx.field(1), ctx.field(-1), ctx.field.gen()):
                    B = NonNil(t, ctx.epsilon, beta)
                    left = tensor_decompose(Nil(p, lam), B, ctx)
                    right = tensor_decompose(B, Nil(p, lam), ctx)
                    twisted = Decomposition.from_terms(
                        [(NonNil(L.t, L.sig, L.beta * lam(a_s)), m) for L, m in left.summands], ctx)
                    assert right == twisted


def test_inf_symmetric_in_lengths(inf):
    lam, sig = inf.char(3), inf.char("1/5")
    for s in range(1, 9):
        for t in range(1, 9):
            assert decompose_inf_nil_nil(s, t, lam, sig, inf) == decompose_inf_nil_nil(t, s, lam, sig, inf)
