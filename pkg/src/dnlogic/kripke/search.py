"""Bounded countermodel search.

Enumeration order (total, so the first countermodel is reproducible):

1. number of worlds, ascending;
2. frame bitmask, ascending.  Worlds are ``w0..w{k-1}`` with ``w0`` the root.
   IL/minimal frames are naturally labelled posets (``wi <= wj`` implies
   ``i <= j``); bit n of the mask is the n-th pair ``(i, j)``, ``0 < i < j``,
   in lexicographic order.  S4 frames are rooted preorders; bit n is the n-th
   pair ``(i, j)``, ``i > 0``, ``i != j``.  Root pairs are always present and
   only transitive relations are kept;
3. for first-order search, domain assignments: root domain ``d0..d{r-1}`` for
   r ascending, then each later world's individual bitmask ascending;
4. valuation bitmask, ascending.  Keys are ordered atoms, ``false`` (minimal
   logic only), then predicate instances; key 0 is least significant and each
   key contributes the bitmask of worlds where it holds.  Only hereditary
   valuations are enumerated for IL and minimal logic.

All valuations of one frame are evaluated at once: the truth of a formula at
world w is an integer whose v-th bit is its value under valuation v.

For propositional IL and minimal logic the enumeration is preceded by an
exact filtration check that decides whether any countermodel exists at all;
when none does the search returns immediately instead of exhausting frames.
"""
from __future__ import annotations

import itertools
from typing import Iterator

from ..errors import UnsupportedFragment
from ..formula import (
    And, Atom, Box, Dia, Exists, Falsum, FALSUM, Forall, Formula, Iff, Imp, Neg, Or,
    PredApp, atoms, has_modalities, has_quantifiers, predicates, subformulas,
    universal_closure,
)
from ..verdict import DEFAULT_BOUNDS, Logic, SearchBounds
from .model import FALSUM_KEY, KripkeModel, check_model, force, instance_key, make_model


def _transitive(up: list[int]) -> bool:
    for i, mask in enumerate(up):
        j = mask
        while j:
            low = j & -j
            if up[low.bit_length() - 1] & ~mask:
                return False
            j ^= low
    return True


def frames(k: int, logic: Logic) -> Iterator[tuple[int, list[int]]]:
    """Yield ``(bitmask, up)`` where ``up[w]`` is the successor set of world w."""
    if logic is Logic.S4:
        pairs = [(i, j) for i in range(1, k) for j in range(k) if i != j]
    else:
        pairs = [(i, j) for i in range(1, k) for j in range(i + 1, k)]
    full = (1 << k) - 1
    for bits in range(1 << len(pairs)):
        up = [1 << w for w in range(k)]
        up[0] = full
        for n, (i, j) in enumerate(pairs):
            if bits >> n & 1:
                up[i] |= 1 << j
        if _transitive(up):
            yield bits, up


def _domain_assignments(k: int, up: list[int], m: int) -> Iterator[list[int]]:
    universe = (1 << m) - 1

    def extend(doms: list[int]) -> Iterator[list[int]]:
        w = len(doms)
        if w == k:
            yield list(doms)
            return
        lower = 0
        for v in range(w):
            if up[v] >> w & 1:
                lower |= doms[v]
        for mask in range(1, universe + 1):
            if mask & lower == lower:
                doms.append(mask)
                yield from extend(doms)
                doms.pop()

    for r in range(1, m + 1):
        yield from extend([(1 << r) - 1])


def _up_sets(k: int, up: list[int], within: int) -> list[int]:
    out = []
    for s in range(1 << k):
        if s & ~within:
            continue
        ok = True
        j = s
        while j:
            low = j & -j
            if up[low.bit_length() - 1] & ~s:
                ok = False
                break
            j ^= low
        if ok:
            out.append(s)
    return out


class _FrameEvaluator:
    """Evaluate a formula at every world under every valuation of one frame."""

    def __init__(self, logic, k, up, keys, choices, domains, universe):
        self.logic = logic
        self.k = k
        self.up = [[u for u in range(k) if up[w] >> u & 1] for w in range(k)]
        self.keys = keys
        self.choices = choices
        self.domains = domains
        self.universe = universe
        total = 1
        strides = []
        for c in choices:
            strides.append(total)
            total *= len(c)
        self.strides = strides
        self.count = total
        self.all = (1 << total) - 1
        self.columns: dict = {}
        for key, ch, s in zip(keys, choices, strides):
            length = len(ch) * s
            rep = ((1 << (length * (total // length))) - 1) // ((1 << length) - 1)
            unit = (1 << s) - 1
            cols = []
            for w in range(k):
                block = 0
                for c, mask in enumerate(ch):
                    if mask >> w & 1:
                        block |= unit << (c * s)
                cols.append(block * rep)
            self.columns[key] = cols
        self.zero = [0] * k
        self.exists = [
            [self.all if domains[w] >> d & 1 else 0 for w in range(k)]
            for d in range(len(universe))
        ] if domains else []
        self.memo: dict = {}

    def _interior(self, bad: list[int]) -> list[int]:
        # worlds none of whose successors is "bad"
        return [self.all & ~_or(bad[u] for u in self.up[w]) for w in range(self.k)]

    def eval(self, f: Formula, env: tuple = ()) -> list[int]:
        key = (f, env)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        res = self._eval(f, env)
        self.memo[key] = res
        return res

    def _bottom(self) -> list[int]:
        if self.logic is Logic.MINIMAL:
            return self.columns[FALSUM_KEY]
        return self.zero

    def _eval(self, f: Formula, env: tuple) -> list[int]:
        k, full = self.k, self.all
        il = self.logic is not Logic.S4
        if isinstance(f, Atom):
            return self.columns[f.name]
        if isinstance(f, PredApp):
            d = dict(env)[f.var]
            return self.columns.get(instance_key(f.pred, self.universe[d]), self.zero)
        if isinstance(f, Falsum):
            return self._bottom()
        if isinstance(f, (Neg, Box, Dia, Forall, Exists)):
            if isinstance(f, (Forall, Exists)):
                per_d = [
                    self.eval(f.body, tuple(sorted({**dict(env), f.var: d}.items())))
                    for d in range(len(self.universe))
                ]
                if isinstance(f, Exists):
                    return [
                        _or(per_d[d][w] & self.exists[d][w] for d in range(len(per_d)))
                        for w in range(k)
                    ]
                bad = [
                    _or(full & ~per_d[d][u] & self.exists[d][u] for d in range(len(per_d)))
                    for u in range(k)
                ]
                return self._interior(bad)
            a = self.eval(f.body, env)
            if isinstance(f, Box):
                return [_and(a[u] for u in self.up[w]) & full for w in range(k)]
            if isinstance(f, Dia):
                return [_or(a[u] for u in self.up[w]) for w in range(k)]
            if not il:
                return [full & ~x for x in a]
            bot = self._bottom()
            return self._interior([a[u] & ~bot[u] for u in range(k)])
        a = self.eval(f.left, env)
        b = self.eval(f.right, env)
        if isinstance(f, And):
            return [x & y for x, y in zip(a, b)]
        if isinstance(f, Or):
            return [x | y for x, y in zip(a, b)]
        if isinstance(f, Imp):
            if il:
                return self._interior([x & ~y for x, y in zip(a, b)])
            return [(full & ~x) | y for x, y in zip(a, b)]
        if isinstance(f, Iff):
            if il:
                return self._interior([x ^ y for x, y in zip(a, b)])
            return [full & ~(x ^ y) for x, y in zip(a, b)]
        raise TypeError(f"not a formula: {f!r}")

    def decode(self, index: int) -> list[tuple[int, str]]:
        out = []
        for key, ch, s in zip(self.keys, self.choices, self.strides):
            mask = ch[(index // s) % len(ch)]
            out += [(w, key) for w in range(self.k) if mask >> w & 1]
        return out


def _or(values) -> int:
    out = 0
    for v in values:
        out |= v
    return out


def _and(values) -> int:
    out = -1
    for v in values:
        out &= v
    return out


def _check_fragment(f: Formula, logic: Logic) -> None:
    if logic not in (Logic.IL, Logic.MINIMAL, Logic.S4):
        raise UnsupportedFragment(f"no Kripke semantics for {logic.value}")
    if logic is Logic.S4 and (has_quantifiers(f) or predicates(f)):
        raise UnsupportedFragment("S4 search is propositional")
    if logic is not Logic.S4 and has_modalities(f):
        raise UnsupportedFragment("modal operators need the S4 flavor")


def _build_model(logic, k, up, val_pairs, domains, universe) -> KripkeModel:
    names = [f"w{i}" for i in range(k)]
    order = [(names[i], names[j]) for i in range(k) for j in range(k) if i != j and up[i] >> j & 1]
    val = [(names[w], key) for w, key in val_pairs]
    doms = None
    if domains:
        doms = {
            names[w]: [universe[d] for d in range(len(universe)) if domains[w] >> d & 1]
            for w in range(k)
        }
    return make_model(logic, names, order, val, doms)


def _enumerate(f: Formula, logic: Logic, bounds: SearchBounds, first_order: bool):
    names = atoms(f)
    preds = predicates(f)
    for k in range(1, bounds.max_worlds + 1):
        for _, up in frames(k, logic):
            if logic is Logic.S4:
                anyset = list(range(1 << k))
            else:
                anyset = _up_sets(k, up, (1 << k) - 1)
            domain_iter = _domain_assignments(k, up, bounds.max_domain) if first_order else [None]
            for domains in domain_iter:
                universe = [f"d{i}" for i in range(bounds.max_domain)] if first_order else []
                keys: list[str] = list(names)
                choices: list[list[int]] = [anyset] * len(names)
                if logic is Logic.MINIMAL:
                    keys.append(FALSUM_KEY)
                    choices.append(anyset)
                if first_order:
                    for p in preds:
                        for d, ind in enumerate(universe):
                            where = 0
                            for w in range(k):
                                if domains[w] >> d & 1:
                                    where |= 1 << w
                            if where:
                                keys.append(instance_key(p, ind))
                                choices.append(_up_sets(k, up, where))
                ev = _FrameEvaluator(logic, k, up, keys, choices, domains, universe)
                root = ev.eval(f)[0]
                missing = ev.all & ~root
                if missing:
                    index = (missing & -missing).bit_length() - 1
                    return _build_model(logic, k, up, ev.decode(index), domains, universe)
    return None


def search_countermodel(
    f: Formula, logic: Logic, bounds: SearchBounds = DEFAULT_BOUNDS
) -> KripkeModel | None:
    """First model in enumeration order whose root does not force ``f``.

    Free individual variables are read universally, so an open formula is
    searched through its universal closure.
    """
    _check_fragment(f, logic)
    first_order = has_quantifiers(f) or bool(predicates(f))
    target = universal_closure(f) if first_order else f
    if not first_order and logic is not Logic.S4 and filtration_countermodel(target, logic) is None:
        return None
    model = _enumerate(target, logic, bounds, first_order)
    if model is not None:
        assert check_model(model).ok and not force(model, model.root, target)
    return model


# --- exact existence checks -------------------------------------------------

def _il_types(f: Formula, logic: Logic) -> set[frozenset]:
    """Forced-subformula types realised by some finite IL/minimal model.

    A type is the set of subformulas (plus atomic keys) forced at a world.
    Filtering any model through its types, ordered by inclusion, yields a
    model of no more worlds whose worlds are exactly those types, so the set
    computed here is the closure of "put a new root under an up-closed set of
    known types".  A root's type depends on the up-set only through which
    implications fail somewhere in it and which atoms hold everywhere in it.
    """
    subs = subformulas(f)
    keys = [Atom(a) for a in atoms(f)]
    minimal = logic is Logic.MINIMAL
    if minimal:
        keys.append(FALSUM)
    all_keys = frozenset(keys)
    conditional = [s for s in subs if isinstance(s, (Imp, Neg, Iff))]

    def local(s: Formula, t) -> bool:
        if isinstance(s, Imp):
            return s.left not in t or s.right in t
        if isinstance(s, Neg):
            return s.body not in t or (minimal and FALSUM in t)
        return (s.left in t) == (s.right in t)

    def evaluate(v: frozenset, fails: frozenset) -> frozenset:
        t = set(v)
        for s in subs:
            if isinstance(s, Atom):
                continue
            if isinstance(s, Falsum):
                if minimal and FALSUM in v:
                    t.add(s)
                continue
            if isinstance(s, And):
                ok = s.left in t and s.right in t
            elif isinstance(s, Or):
                ok = s.left in t or s.right in t
            else:
                ok = s not in fails and local(s, t)
            if ok:
                t.add(s)
        return frozenset(t)

    def fail_set(t) -> frozenset:
        return frozenset(s for s in conditional if not local(s, t))

    types: set[frozenset] = set()
    while True:
        profiles = {(frozenset(), all_keys)}
        fails = {t: fail_set(t) for t in types}
        for x in types:
            fx = frozenset().union(*(fails[u] for u in types if x <= u))
            base = (fx, x & all_keys)
            profiles |= {(p[0] | base[0], p[1] & base[1]) for p in profiles}
        new = set()
        for fset, allowed in profiles:
            pool = sorted(allowed, key=str)
            for r in range(len(pool) + 1):
                for v in itertools.combinations(pool, r):
                    new.add(evaluate(frozenset(v), fset))
        if new <= types:
            return types
        types |= new


def _s4_types(f: Formula, limit: int = 1 << 12):
    """Hintikka-style type elimination for S4; returns (types, relation)."""
    subs = subformulas(f)
    modal = [s for s in subs if isinstance(s, (Box, Dia))]
    choice = [Atom(a) for a in atoms(f)] + modal
    if 1 << len(choice) > limit:
        return None
    candidates = []
    for bits in range(1 << len(choice)):
        chosen = {c for n, c in enumerate(choice) if bits >> n & 1}
        t: set[Formula] = set()
        ok = True
        for s in subs:
            if isinstance(s, Atom):
                val = s in chosen
            elif isinstance(s, Falsum):
                val = False
            elif isinstance(s, Box):
                val = s in chosen
                if val and s.body not in t:
                    ok = False
            elif isinstance(s, Dia):
                val = s in chosen
                if not val and s.body in t:
                    ok = False
            elif isinstance(s, Neg):
                val = s.body not in t
            elif isinstance(s, And):
                val = s.left in t and s.right in t
            elif isinstance(s, Or):
                val = s.left in t or s.right in t
            elif isinstance(s, Imp):
                val = s.left not in t or s.right in t
            else:
                val = (s.left in t) == (s.right in t)
            if not ok:
                break
            if val:
                t.add(s)
        if ok:
            candidates.append(frozenset(t))
    boxes = [s for s in modal if isinstance(s, Box)]
    dias = [s for s in modal if isinstance(s, Dia)]

    def rel(t, u) -> bool:
        return all(b in u for b in boxes if b in t) and all(d in t for d in dias if d in u)

    alive = set(candidates)
    succ = {t: [u for u in candidates if rel(t, u)] for t in candidates}
    changed = True
    while changed:
        changed = False
        for t in sorted(alive, key=lambda x: sorted(map(str, x))):
            live = [u for u in succ[t] if u in alive]
            good = all(any(b.body not in u for u in live) for b in boxes if b not in t) and all(
                any(d.body in u for u in live) for d in dias if d in t
            )
            if not good:
                alive.discard(t)
                changed = True
    return alive, rel


def _type_key(t) -> tuple:
    return (len(t), sorted(str(x) for x in t))


def filtration_countermodel(f: Formula, logic: Logic) -> KripkeModel | None:
    """A countermodel of unbounded size built from realisable types, or None.

    None means no countermodel exists at any size.  Propositional only;
    raises UnsupportedFragment when an S4 formula has too many types.
    """
    _check_fragment(f, logic)
    if has_quantifiers(f) or predicates(f):
        raise UnsupportedFragment("filtration needs a propositional formula")
    if logic is Logic.S4:
        found = _s4_types(f)
        if found is None:
            raise UnsupportedFragment("too many subformula types for S4 type elimination")
        alive, rel = found
        roots = [t for t in alive if f not in t]
        if not roots:
            return None
        best = None
        for t in roots:
            gen = [u for u in alive if rel(t, u)]
            if best is None or (len(gen), _type_key(t)) < (len(best[1]), _type_key(best[0])):
                best = (t, gen)
        t, gen = best
        ordered = [t] + sorted((u for u in gen if u != t), key=_type_key)
        related = lambda a, b: rel(a, b)  # noqa: E731
    else:
        types = _il_types(f, logic)
        roots = [t for t in types if f not in t]
        if not roots:
            return None
        best = None
        for t in roots:
            gen = [u for u in types if t <= u]
            if best is None or (len(gen), _type_key(t)) < (len(best[1]), _type_key(best[0])):
                best = (t, gen)
        t, gen = best
        ordered = [t] + sorted((u for u in gen if u != t), key=_type_key)
        related = lambda a, b: a <= b  # noqa: E731
    names = [f"w{i}" for i in range(len(ordered))]
    order = [
        (names[i], names[j])
        for i, a in enumerate(ordered)
        for j, b in enumerate(ordered)
        if i != j and related(a, b)
    ]
    val = []
    for i, u in enumerate(ordered):
        for x in u:
            if isinstance(x, Atom):
                val.append((names[i], x.name))
            elif isinstance(x, Falsum) and logic is Logic.MINIMAL:
                val.append((names[i], FALSUM_KEY))
    model = make_model(logic, names, order, val)
    if not check_model(model).ok or force(model, model.root, f):
        raise RuntimeError("filtration model failed verification")
    return model
