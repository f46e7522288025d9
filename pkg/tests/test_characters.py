import json
import random
from math import inf as INFINITE

import pytest
from hypothesis import given, settings, strategies as st

from hopfore.characters import (
    GroupSpec,
    build_context,
    char_order,
    context_from_dict,
    context_to_dict,
    coset_canonical,
    load_context,
    make_context,
)
from hopfore.errors import ChiAEqualsOne, GroupMismatch, InfiniteRegime, UnsupportedRegime
from hopfore.scalars import order_of_unit


def random_char(ctx, rng):
    return ctx.char_from_exponents([rng.randrange(n) for n in ctx.group.factor_orders])


def test_trivial_character_is_one(z4):
    g = z4.group.element([3])
    assert z4.epsilon(g).is_one()
    assert char_order(z4.epsilon) == 1


def test_evaluation_example(z4):
    lam = z4.char_from_exponents([1])
    assert lam(z4.group.element([2])) == z4.field(-1)


def test_char_order_examples(z4, inf):
    assert char_order(z4.chi) == 2
    assert char_order(inf.chi) == INFINITE


def test_char_order_infinite_value():
    ctx = make_context([0], [1], ["2"])
    assert char_order(ctx.chi) == INFINITE


@pytest.mark.parametrize("seed", range(100))
def test_evaluation_is_multiplicative(seed, z9):
    rng = random.Random(seed)
    lam, sig = random_char(z9, rng), random_char(z9, rng)
    g = z9.group.element([rng.randrange(9)])
    assert (lam * sig)(g) == lam(g) * sig(g)


@pytest.mark.parametrize("seed", range(200))
def test_characters_form_abelian_group(seed, z9):
    rng = random.Random(seed)
    lam, sig, tau = (random_char(z9, rng) for _ in range(3))
    assert (lam * sig) * tau == lam * (sig * tau)
    assert lam * z9.epsilon == lam
    assert lam * sig == sig * lam
    assert lam * lam.inverse() == z9.epsilon


def test_build_context_examples(fin2, inf):
    assert fin2.regime_label() == "FIN(2)" and fin2.q == fin2.field(-1)
    assert inf.regime_label() == "INF" and inf.q == inf.field(2)
    with pytest.raises(ChiAEqualsOne):
        make_context([2], [0], [-1])


def test_mixed_regime_rejected():
    # chi has order 4 but chi(a) = chi(2) = -1 has order 2
    with pytest.raises(UnsupportedRegime):
        make_context([4], [2], ["z"])


def test_group_mismatch(z4, fin2):
    with pytest.raises(GroupMismatch):
        z4.chi * fin2.chi


@pytest.mark.parametrize("ctx_name", ["fin2", "fin3", "z4", "z9"])
def test_q_is_primitive_root(ctx_name, request):
    ctx = request.getfixturevalue(ctx_name)
    assert order_of_unit(ctx.q) == ctx.s
    assert (ctx.q ** ctx.s).is_one()


def test_coset_canonical_example(fin2):
    assert coset_canonical(fin2.char(-1), fin2) == fin2.epsilon


def test_coset_canonical_needs_finite_regime(inf):
    with pytest.raises(InfiniteRegime):
        coset_canonical(inf.epsilon, inf)


@pytest.mark.parametrize("ctx_name", ["fin2", "fin3", "z4", "z9"])
def test_coset_classes(ctx_name, request):
    ctx = request.getfixturevalue(ctx_name)
    classes = {}
    for k in range(ctx.group.factor_orders[0]):
        sig = ctx.char_from_exponents([k])
        rep = coset_canonical(sig, ctx)
        assert coset_canonical(rep, ctx) == rep
        assert coset_canonical(ctx.chi * sig, ctx) == rep
        classes.setdefault(rep, []).append(sig)
    for rep, members in classes.items():
        assert rep in members
        assert ctx.s % len(members) == 0


def test_context_json_roundtrip(z9, tmp_path):
    data = context_to_dict(z9)
    assert context_from_dict(data) == z9
    path = tmp_path / "ctx.json"
    path.write_text(json.dumps(data))
    assert load_context(path) == z9


def test_context_conductor_auto():
    ctx = context_from_dict({"conductor": "auto", "group": [2], "a": [1], "chi": ["-1"]})
    assert ctx.regime_label() == "FIN(2)"


@settings(max_examples=30)
@given(st.sampled_from([2, 3, 4, 5, 6]))
def test_cyclic_contexts(n):
    ctx = make_context([n], [1], ["z"])
    assert ctx.s == n
    assert ctx.chi_power(n) == ctx.epsilon


def test_build_context_direct():
    from hopfore.scalars import cyclotomic_field

    fld = cyclotomic_field(2)
    group = GroupSpec((2,))
    ctx = build_context(group, group.element([1]), make_context([2], [1], [-1]).chi, fld)
    assert ctx.s == 2
