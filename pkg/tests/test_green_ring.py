import csv
import io
import json
import random

import pytest

from hopfore.characters import coset_canonical
from hopfore.errors import ContextMismatch
from hopfore.green_ring import RingElement, structure_table, table_to_csv, table_to_json, table_to_markdown
from hopfore.labels import Nil, NonNil

from conftest import fin2_ctx, fin3_ctx, inf_ctx, square_ctx


def random_element(ctx, rng, terms=2, max_t=4):
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        k = rng.randrange(ctx.s or 3)
        lam = ctx.chi_power(k) * (ctx.char_from_exponents([1]) if rng.random() < 0.3 and ctx.s else ctx.epsilon)
        t = rng.randint(1, max_t)
        if ctx.s and rng.random() < 0.4:
            beta = ctx.field(rng.choice([1, -1, 2]))
            label = NonNil(rng.randint(1, 2), coset_canonical(lam, ctx), beta)
        else:
            label = Nil(t, lam)
        coeffs[label] = coeffs.get(label, 0) + rng.choice([1, 1, 2, -1])
    return RingElement.from_dict(ctx, coeffs)


RING_CONTEXTS = [fin2_ctx(), fin3_ctx(), inf_ctx(), square_ctx(2)]
IDS = ["fin2", "fin3", "inf", "z4"]


def test_unit_and_characters(fin3):
    one = RingElement.unit(fin3)
    rng = random.Random(3)
    for _ in range(20):
        x = random_element(fin3, rng)
        assert one * x == x and x * one == x
    lam, sig = fin3.chi, fin3.chi_power(2)
    assert RingElement.of(Nil(1, lam), fin3) * RingElement.of(Nil(1, sig), fin3) == RingElement.of(Nil(1, lam * sig), fin3)


def test_fin2_triple_product(fin2):
    eps, chi = fin2.epsilon, fin2.chi
    a, b, c = (RingElement.of(Nil(2, x), fin2) for x in (chi, eps, eps))
    assert (a * b) * c == a * (b * c)
    assert (a * b * c).dimension() == 8


@pytest.mark.parametrize("ctx", RING_CONTEXTS, ids=IDS)
def test_associativity(ctx):
    rng = random.Random(11)
    for _ in range(100):
        x, y, z = (random_element(ctx, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("ctx", RING_CONTEXTS, ids=IDS)
def test_distributive_and_bilinear(ctx):
    rng = random.Random(5)
    for _ in range(40):
        x, y, z = (random_element(ctx, rng) for _ in range(3))
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z
        assert (x * 3) * y == 3 * (x * y)
        assert x - x == RingElement.zero(ctx)
        assert (x * y).dimension() == x.dimension() * y.dimension()


def test_noncommutative_witness(z4):
    lam = z4.char_from_exponents([1])
    x = RingElement.of(Nil(2, lam), z4)
    y = RingElement.of(NonNil(1, z4.epsilon, z4.field(1)), z4)
    assert x * y != y * x
    assert (x * y).dimension() == (y * x).dimension()


def test_context_mismatch(fin2, fin3):
    with pytest.raises(ContextMismatch):
        RingElement.unit(fin2) + RingElement.unit(fin3)


def test_text_form(fin2):
    x = RingElement.from_dict(fin2, {Nil(2, fin2.epsilon): 2, Nil(1, fin2.chi): -1})
    assert x.to_text() == "-N(1;[1]) + 2*N(2;[0])"
    assert RingElement.zero(fin2).to_text() == "0"
    assert x.to_json() == {"terms": [{"label": "N(1;[1])", "coeff": -1}, {"label": "N(2;[0])", "coeff": 2}]}


def test_one_generator_table(fin2):
    table = structure_table([Nil(1, fin2.epsilon)], fin2)
    assert len(table) == 1
    assert table[0][2].summands == ((Nil(1, fin2.epsilon), 1),)


def test_fin2_table(fin2):
    eps, chi = fin2.epsilon, fin2.chi
    table = structure_table([Nil(1, chi), Nil(2, eps)], fin2)
    cells = {(A, B): d for A, B, d in table}
    assert len(cells) == 4
    assert cells[(Nil(2, eps), Nil(2, eps))].as_counter() == {Nil(2, eps): 1, Nil(2, chi): 1}
    rows = list(csv.reader(io.StringIO(table_to_csv(table, fin2))))
    assert rows[0] == ["left", "right", "product", "total_dim"]
    assert rows[-1] == ["N(2;[0])", "N(2;[0])", "N(2;[0]) + N(2;[1])", "4"]
    md = table_to_markdown(table, fin2)
    assert md.count("\n") == 4
    assert json.loads(table_to_json(table, fin2))[3]["product"]["total_dim"] == 4


def test_table_reproducible(fin3):
    gens = [Nil(2, fin3.chi), NonNil(1, fin3.epsilon, fin3.field(2)), Nil(3, fin3.epsilon)]
    first = table_to_csv(structure_table(gens, fin3), fin3)
    second = table_to_csv(structure_table(gens, fin3), fin3)
    assert first == second


def test_empty_table_rejected(fin2):
    with pytest.raises(ValueError):
        structure_table([], fin2)
