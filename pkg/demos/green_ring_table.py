"""Print a small multiplication table of the Green ring for G = Z/3, chi(a) = zeta_3.

Run with ``python demos/green_ring_table.py``.
"""

from hopfore.characters import make_context
from hopfore.green_ring import RingElement, structure_table, table_to_markdown
from hopfore.labels import Nil, NonNil


def main():
    ctx = make_context([3], [1], ["z"])
    gens = [Nil(1, ctx.chi), Nil(2, ctx.epsilon), Nil(4, ctx.epsilon), NonNil(1, ctx.epsilon, ctx.field(2))]
    print(table_to_markdown(structure_table(gens, ctx), ctx))

    v2 = RingElement.of(Nil(2, ctx.epsilon), ctx)
    power = RingElement.unit(ctx)
    for k in range(1, 6):
        power = power * v2
        print(f"V_2^{k} = {power.to_text()}   (dim {power.dimension()})")


if __name__ == "__main__":
    main()
