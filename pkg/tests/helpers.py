"""Shared random-object builders for the fuzz tests.

Everything takes an explicit ``random.Random`` so each test controls its
own seed; nothing here touches global randomness.
"""

from fractions import Fraction

from qdual.algebra import EVEN
from qdual.qfield import ONE, Q, q_power, scalar

COEFFS = (
    scalar(1),
    scalar(-1),
    scalar(2),
    scalar(Fraction(1, 2)),
    scalar(Fraction(-3, 2)),
    Q,
    q_power(-1),
    Q + ONE,
    Q * Q - ONE,
    (Q * Q + ONE) / Q,
)


def random_coeff(rng):
    return rng.choice(COEFFS)


def random_word(pres, rng, max_len=8):
    """A random well-formed (generator, exponent) word for ``pres``.

    Odd generators only ever get exponent 1 (higher powers are zero anyway
    and negative ones are illegal); invertible generators range over small
    exponents of both signs.
    """
    word = []
    for _ in range(rng.randrange(max_len + 1)):
        g = rng.randrange(len(pres.generators))
        spec = pres.generators[g]
        if spec.parity != EVEN:
            exp = 1
        elif spec.invertible:
            exp = rng.choice((-2, -1, 1, 2))
        else:
            exp = rng.choice((1, 2))
        word.append((g, exp))
    return word


def random_element(pres, rng, n_words=3, max_len=5):
    """A random normal-form element: a short sum of random words."""
    acc = pres.zero()
    for _ in range(rng.randrange(1, n_words + 1)):
        acc = acc + pres.normal_form(
            random_word(pres, rng, max_len), random_coeff(rng)
        )
    return acc
