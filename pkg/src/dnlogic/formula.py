"""Formula syntax tree and structural helpers.

Formulas are immutable and hashable; the hash is computed once at
construction because the provers use formulas heavily as set and dict keys.
Nodes are hash-consed: building a node from the same parts returns the
existing object, so equality checks usually stop at the identity test.
"""
from __future__ import annotations

import enum
import weakref
from dataclasses import dataclass
from typing import Iterator

_INTERNED: weakref.WeakValueDictionary = weakref.WeakValueDictionary()


class Formula:
    """Base class for every formula node."""

    def __new__(cls, *args, **kwargs):
        if kwargs or (not args and cls.__dataclass_fields__):  # type: ignore[attr-defined]
            return super().__new__(cls)
        key = (cls, args)
        hit = _INTERNED.get(key)
        if hit is None:
            hit = super().__new__(cls)
            _INTERNED[key] = hit
        return hit

    def __reduce__(self):
        return type(self), tuple(getattr(self, n) for n in self.__dataclass_fields__)  # type: ignore[attr-defined]

    def __post_init__(self) -> None:
        if "_hash" in self.__dict__:  # re-initialised interned node
            return
        object.__setattr__(
            self, "_hash", hash((type(self).__name__, *self.__dict__.values()))
        )

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        if self._hash != other._hash:  # type: ignore[attr-defined]
            return False
        return all(getattr(self, n) == getattr(other, n) for n in self.__dataclass_fields__)  # type: ignore[attr-defined]

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __str__(self) -> str:
        # cached: provers sort formula sets by their rendering
        cached = self.__dict__.get("_str")
        if cached is None:
            from .syntax import render_formula

            cached = render_formula(self)
            object.__setattr__(self, "_str", cached)
        return cached


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class PredApp(Formula):
    pred: str
    var: str


@dataclass(frozen=True, eq=False)
class Falsum(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Box(Formula):
    body: Formula


@dataclass(frozen=True, eq=False)
class Dia(Formula):
    body: Formula


@dataclass(frozen=True, eq=False)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class Exists(Formula):
    var: str
    body: Formula


FALSUM = Falsum()

UNARY = (Neg, Box, Dia)
BINARY = (And, Or, Imp, Iff)
QUANTIFIERS = (Forall, Exists)
ATOMIC = (Atom, PredApp)


def negate(f: Formula) -> Formula:
    """Wrap ``f`` in one negation. No simplification is ever performed."""
    return Neg(f)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, UNARY + QUANTIFIERS):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas in post-order (children before parents)."""
    seen: dict[Formula, None] = {}

    def walk(g: Formula) -> None:
        if g in seen:
            return
        for c in children(g):
            walk(c)
        seen[g] = None

    walk(f)
    return list(seen)


def iter_nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def atoms(f: Formula) -> list[str]:
    return sorted({g.name for g in iter_nodes(f) if isinstance(g, Atom)})


def predicates(f: Formula) -> list[str]:
    return sorted({g.pred for g in iter_nodes(f) if isinstance(g, PredApp)})


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, PredApp):
        return {f.var}
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    out: set[str] = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def substitute(f: Formula, var: str, term: str) -> Formula:
    """Replace free occurrences of ``var`` by the individual name ``term``."""
    if isinstance(f, PredApp):
        return PredApp(f.pred, term) if f.var == var else f
    if isinstance(f, (Atom, Falsum)):
        return f
    if isinstance(f, QUANTIFIERS):
        if f.var == var:
            return f
        return type(f)(f.var, substitute(f.body, var, term))
    if isinstance(f, UNARY):
        return type(f)(substitute(f.body, var, term))
    return type(f)(substitute(f.left, var, term), substitute(f.right, var, term))


def universal_closure(f: Formula) -> Formula:
    for v in sorted(free_vars(f), reverse=True):
        f = Forall(v, f)
    return f


def has_modalities(f: Formula) -> bool:
    return any(isinstance(g, (Box, Dia)) for g in iter_nodes(f))


def has_quantifiers(f: Formula) -> bool:
    return any(isinstance(g, QUANTIFIERS) for g in iter_nodes(f))


def is_propositional(f: Formula) -> bool:
    """True when ``f`` has no quantifiers, modalities or predicate applications."""
    return not any(isinstance(g, (Box, Dia, Forall, Exists, PredApp)) for g in iter_nodes(f))


def connective_count(f: Formula) -> int:
    return sum(1 for g in iter_nodes(f) if not isinstance(g, ATOMIC + (Falsum,)))


def depth(f: Formula) -> int:
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def conjoin(parts: list[Formula]) -> Formula | None:
    """Left-nested conjunction of ``parts``; None for the empty list."""
    if not parts:
        return None
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


class NegationClass(enum.Enum):
    AFFIRMATIVE = "Affirmative"
    NEGATIVE = "Negative"
    DOUBLY_NEGATED = "DoublyNegated"


@dataclass(frozen=True)
class NegationProfile:
    cls: NegationClass
    raw_prefix_count: int


def outer_negations(f: Formula) -> tuple[int, Formula]:
    n = 0
    while isinstance(f, Neg):
        n += 1
        f = f.body
    return n, f


def classify_negation_profile(f: Formula) -> NegationProfile:
    """Collapse an n-fold outer negation prefix to one of three classes.

    Odd prefixes of three or more reduce to a single negation because
    ``~~~a`` and ``~a`` are intuitionistically equivalent; even prefixes
    reduce to ``~~`` by the same equivalence applied under one negation.
    """
    n, _ = outer_negations(f)
    if n == 0:
        cls = NegationClass.AFFIRMATIVE
    elif n % 2:
        cls = NegationClass.NEGATIVE
    else:
        cls = NegationClass.DOUBLY_NEGATED
    return NegationProfile(cls, n)


def collapsed_representative(f: Formula) -> Formula:
    """The formula with its outer negation prefix reduced to length 1 or 2."""
    n, core = outer_negations(f)
    if n < 3:
        return f
    keep = 1 if n % 2 else 2
    for _ in range(keep):
        core = Neg(core)
    return core


def is_dnp_formula(f: Formula) -> bool:
    """Doubly negated predicate: ``~~A`` (even prefix) or ``~exists x. ~A``."""
    if classify_negation_profile(f).cls is NegationClass.DOUBLY_NEGATED:
        return True
    return (
        isinstance(f, Neg)
        and isinstance(f.body, Exists)
        and isinstance(f.body.body, Neg)
    )
