"""Shared random-monomial helpers for the algebra-level tests."""

import random

from qdrcheck.galgebra import Element
from qdrcheck.scalars import Scalar


def rand_letter(rng, alph, span=2):
    if alph.kind == "drinfeld":
        fam = rng.choice(("X+", "X-"))
        node = rng.choice(alph.D.nodes)
        step = alph.D.dt[node]
        r = step * rng.randrange(-span, span + 1)
        return (fam, node, r)
    fam = rng.choice(("E", "F"))
    return (fam, rng.randrange(0, alph.n + 1), 0)


def rand_word(rng, alph, max_len=3, span=2):
    return tuple(rand_letter(rng, alph, span)
                 for _ in range(rng.randrange(0, max_len + 1)))


def rand_gl(rng, alph, span=1):
    return (rng.randrange(-span, span + 1),
            tuple(rng.randrange(-span, span + 1) for _ in range(alph.n)))


def rand_coeff(rng):
    base = Scalar.q_power(rng.randrange(-2, 3))
    return base * Scalar.from_int(rng.choice((1, 1, 1, -1, 2)))


def rand_monomial(rng, alph, max_len=3, span=2, with_gl=True):
    gl = rand_gl(rng, alph) if with_gl else (0, (0,) * alph.n)
    return Element.monomial(alph, gl, rand_word(rng, alph, max_len, span),
                            rand_coeff(rng))


def rand_qpower(rng, bound=4, nonzero_exp=False):
    e = rng.randrange(-bound, bound + 1)
    if nonzero_exp and e == 0:
        e = 1
    return Scalar.q_power(e)
