"""Formula spaces for exhaustive and randomized cross-checks."""
from __future__ import annotations

import random
from functools import lru_cache

from .formula import FALSUM, And, Atom, Formula, Iff, Imp, Neg, Or

BINARY_KINDS = (And, Or, Imp)


@lru_cache(maxsize=None)
def _exact(size: int, names: tuple[str, ...], binaries: tuple[type, ...]) -> tuple[Formula, ...]:
    if size == 0:
        return tuple(Atom(n) for n in names)
    out: list[Formula] = [Neg(g) for g in _exact(size - 1, names, binaries)]
    for kind in binaries:
        for left_size in range(size):
            for left in _exact(left_size, names, binaries):
                for right in _exact(size - 1 - left_size, names, binaries):
                    out.append(kind(left, right))
    return tuple(out)


def exhaustive(
    max_connectives: int = 4,
    names: tuple[str, ...] = ("p", "q"),
    binaries: tuple[type, ...] = BINARY_KINDS,
) -> list[Formula]:
    """Every formula over ``names`` with at most ``max_connectives`` connectives.

    Connectives are negation plus ``binaries``; formulas are listed by size.
    """
    out: list[Formula] = []
    for size in range(max_connectives + 1):
        out.extend(_exact(size, tuple(names), tuple(binaries)))
    return out


def random_formula(
    rng: random.Random,
    max_depth: int = 7,
    names: tuple[str, ...] = ("p", "q", "r", "s"),
    leaf_prob: float = 0.25,
    falsum_prob: float = 0.05,
) -> Formula:
    """Random formula of tree depth at most ``max_depth``."""
    if max_depth == 0 or rng.random() < leaf_prob:
        if rng.random() < falsum_prob:
            return FALSUM
        return Atom(rng.choice(names))
    kind = rng.choice((Neg, And, Or, Imp, Iff))
    if kind is Neg:
        return Neg(random_formula(rng, max_depth - 1, names, leaf_prob, falsum_prob))
    return kind(
        random_formula(rng, max_depth - 1, names, leaf_prob, falsum_prob),
        random_formula(rng, max_depth - 1, names, leaf_prob, falsum_prob),
    )


def random_formulas(count: int, seed: int = 0, **kwargs) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, **kwargs) for _ in range(count)]
