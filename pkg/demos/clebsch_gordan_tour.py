"""A short tour: decompose a few tensor products and check each one by brute force.

Run with ``python demos/clebsch_gordan_tour.py``.
"""

from hopfore.characters import make_context
from hopfore.labels import Nil, NonNil, print_label
from hopfore.oracle import verify_pair


def show(title, A, B, ctx):
    report = verify_pair(A, B, ctx)
    verdict = "matches" if report.agree else "DIFFERS FROM"
    print(f"  {print_label(A, ctx)} (x) {print_label(B, ctx)}")
    print(f"      = {report.rule_result.to_text(ctx)}")
    print(f"      ({title}; closed form {verdict} the brute-force decomposition)")


def main():
    # |chi| infinite: G = Z, chi(a) = 1/2, so q = 2 is not a root of unity
    inf = make_context([0], [1], ["1/2"])
    print(f"G = Z, q = 2 ({inf.regime_label()})")
    show("strings of lengths 3 and 4", Nil(3, inf.epsilon), Nil(4, inf.char(5)), inf)

    # |chi| = 2: G = Z/2, chi = sign character, q = -1
    fin2 = make_context([2], [1], [-1])
    eps, chi = fin2.epsilon, fin2.chi
    print(f"\nG = Z/2, q = -1 ({fin2.regime_label()})")
    show("two strings of length 2", Nil(2, eps), Nil(2, chi), fin2)
    show("string times a module with invertible x", Nil(3, eps), NonNil(1, eps, fin2.field(-5)), fin2)
    one = fin2.field(1)
    show("eigenvalues cancel, so x becomes nilpotent", NonNil(1, eps, one), NonNil(1, eps, -one), fin2)

    # the order of the factors matters once lambda(a^s) != 1
    z4 = make_context([4], [1], ["z^2"])
    lam = z4.char_from_exponents([1])
    B = NonNil(1, z4.epsilon, z4.field(1))
    print(f"\nG = Z/4, chi(a) = -1, lambda(a^2) = {lam(z4.a_power(2))}")
    show("left order", Nil(2, lam), B, z4)
    show("right order, beta picks up lambda(a^2)", B, Nil(2, lam), z4)


if __name__ == "__main__":
    main()
