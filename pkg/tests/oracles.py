"""Reference implementations used to cross-check the engines.

Written for obviousness rather than speed and sharing no code with the
package beyond the formula classes: tuple valuations for the classical
side, brute-force frame enumeration for the Kripke side.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from dnlogic.formula import And, Atom, Box, Dia, Falsum, Iff, Imp, Neg, Or


def atom_names(f) -> list[str]:
    out = set()

    def walk(g):
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, (Neg, Box, Dia)):
            walk(g.body)
        elif isinstance(g, (And, Or, Imp, Iff)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return sorted(out)


def tt_eval(f, v: dict) -> bool:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Neg):
        return not tt_eval(f.body, v)
    if isinstance(f, And):
        return tt_eval(f.left, v) and tt_eval(f.right, v)
    if isinstance(f, Or):
        return tt_eval(f.left, v) or tt_eval(f.right, v)
    if isinstance(f, Imp):
        return (not tt_eval(f.left, v)) or tt_eval(f.right, v)
    if isinstance(f, Iff):
        return tt_eval(f.left, v) == tt_eval(f.right, v)
    raise TypeError(f)


def tt_falsifier(f) -> dict | None:
    """First falsifying row, rows ordered lexicographically with False < True."""
    names = atom_names(f)
    for bits in itertools.product((False, True), repeat=len(names)):
        v = dict(zip(names, bits))
        if not tt_eval(f, v):
            return v
    return None


def tt_valid(f) -> bool:
    return tt_falsifier(f) is None


# --- Kripke ---------------------------------------------------------------

def _closure(k: int, pairs) -> frozenset:
    rel = {(i, i) for i in range(k)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


@lru_cache(maxsize=None)
def rooted_frames(k: int, partial_order: bool) -> tuple[frozenset, ...]:
    """Reflexive-transitive relations on 0..k-1 with every world above 0."""
    strict = [(i, j) for i in range(k) for j in range(k) if i != j]
    found = set()
    for n in range(len(strict) + 1):
        for chosen in itertools.combinations(strict, n):
            rel = _closure(k, chosen)
            if any((0, w) not in rel for w in range(k)):
                continue
            if partial_order and any((b, a) in rel for a, b in rel if a != b):
                continue
            found.add(rel)
    return tuple(sorted(found, key=sorted))


def _upsets(k: int, rel) -> list[frozenset]:
    out = []
    for bits in itertools.product((False, True), repeat=k):
        s = frozenset(w for w in range(k) if bits[w])
        if all(b in s for a, b in rel if a in s):
            out.append(s)
    return out


def kforce(rel, val: dict, w: int, f, modal: bool, bottom=frozenset()) -> bool:
    """Forcing at ``w``; ``modal`` selects S4 (classical connectives plus boxes)."""
    succ = [b for a, b in rel if a == w]
    if isinstance(f, Atom):
        return w in val[f.name]
    if isinstance(f, Falsum):
        return w in bottom
    if isinstance(f, And):
        return kforce(rel, val, w, f.left, modal, bottom) and kforce(rel, val, w, f.right, modal, bottom)
    if isinstance(f, Or):
        return kforce(rel, val, w, f.left, modal, bottom) or kforce(rel, val, w, f.right, modal, bottom)
    if isinstance(f, Box):
        return all(kforce(rel, val, u, f.body, modal, bottom) for u in succ)
    if isinstance(f, Dia):
        return any(kforce(rel, val, u, f.body, modal, bottom) for u in succ)
    if modal:
        if isinstance(f, Neg):
            return not kforce(rel, val, w, f.body, modal)
        a = kforce(rel, val, w, f.left, modal)
        b = kforce(rel, val, w, f.right, modal)
        return (not a or b) if isinstance(f, Imp) else a == b
    if isinstance(f, Neg):
        return all(not kforce(rel, val, u, f.body, modal, bottom) or u in bottom for u in succ)
    if isinstance(f, Imp):
        return all(
            not kforce(rel, val, u, f.left, modal, bottom) or kforce(rel, val, u, f.right, modal, bottom)
            for u in succ
        )
    if isinstance(f, Iff):
        return all(
            kforce(rel, val, u, f.left, modal, bottom) == kforce(rel, val, u, f.right, modal, bottom)
            for u in succ
        )
    raise TypeError(f)


def kripke_refutable(f, max_worlds: int, modal: bool = False, minimal: bool = False) -> bool:
    """Some rooted frame with at most ``max_worlds`` worlds fails ``f`` at its root."""
    names = atom_names(f)
    for k in range(1, max_worlds + 1):
        for rel in rooted_frames(k, not modal):
            if modal:
                choices = [frozenset(w for w in range(k) if bits[w])
                           for bits in itertools.product((False, True), repeat=k)]
            else:
                choices = _upsets(k, rel)
            bottoms = choices if minimal else [frozenset()]
            for bottom in bottoms:
                for sets in itertools.product(choices, repeat=len(names)):
                    if not kforce(rel, dict(zip(names, sets)), 0, f, modal, bottom):
                        return True
    return False
