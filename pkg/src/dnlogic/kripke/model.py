"""Finite Kripke models: representation, well-formedness, forcing, file formats.

Valuation keys are strings: a propositional atom ``p``, a ground predicate
instance ``f(d0)``, or ``false`` for absurdity read as an ordinary atom in
minimal-logic models.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from ..errors import UnsupportedFragment
from ..formula import (
    And, Atom, Box, Dia, Exists, Falsum, Forall, Formula, Iff, Imp, Neg, Or, PredApp,
)
from ..verdict import Logic

FALSUM_KEY = "false"
KRIPKE_LOGICS = (Logic.IL, Logic.MINIMAL, Logic.S4)


def instance_key(pred: str, individual: str) -> str:
    return f"{pred}({individual})"


@dataclass(frozen=True)
class KripkeModel:
    logic: Logic
    worlds: tuple[str, ...]
    order: frozenset[tuple[str, str]]
    root: str
    valuation: frozenset[tuple[str, str]]
    domains: tuple[tuple[str, tuple[str, ...]], ...] = ()
    _succ: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        succ: dict[str, list[str]] = {w: [] for w in self.worlds}
        for a, b in sorted(self.order):
            if a in succ:
                succ[a].append(b)
        object.__setattr__(self, "_succ", succ)

    def successors(self, w: str) -> list[str]:
        """Worlds related to ``w`` (for IL: every w' with w <= w')."""
        return self._succ[w]

    def domain(self, w: str) -> tuple[str, ...]:
        return dict(self.domains).get(w, ())

    def true_at(self, w: str, key: str) -> bool:
        return (w, key) in self.valuation

    @property
    def is_first_order(self) -> bool:
        return bool(self.domains)

    def strict_pairs(self) -> list[tuple[str, str]]:
        return sorted((a, b) for a, b in self.order if a != b)

    def to_text(self) -> str:
        lines = [f"flavor {self.logic.value}"]
        lines += [f"world {w}" for w in self.worlds]
        lines += [f"le {a} {b}" for a, b in self.strict_pairs()]
        for w, dom in self.domains:
            lines += [f"dom {w} {d}" for d in dom]
        index = {w: i for i, w in enumerate(self.worlds)}
        for w, key in sorted(self.valuation, key=lambda p: (index.get(p[0], 0), p[1])):
            lines.append(f"val {w} {key}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        out = {
            "flavor": self.logic.value,
            "root": self.root,
            "worlds": list(self.worlds),
            "order": [list(p) for p in self.strict_pairs()],
            "valuation": {
                w: sorted(k for v, k in self.valuation if v == w) for w in self.worlds
            },
        }
        if self.domains:
            out["domains"] = {w: list(d) for w, d in self.domains}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def make_model(
    logic: Logic,
    worlds: list[str],
    strict_order: list[tuple[str, str]],
    valuation: Mapping[str, list[str]] | list[tuple[str, str]],
    domains: Mapping[str, list[str]] | None = None,
    root: str | None = None,
) -> KripkeModel:
    """Build a model; reflexive pairs are added, transitivity is not."""
    order = {(w, w) for w in worlds} | set(strict_order)
    if isinstance(valuation, Mapping):
        val = {(w, k) for w, keys in valuation.items() for k in keys}
    else:
        val = set(valuation)
    doms = tuple((w, tuple(domains[w])) for w in worlds if w in domains) if domains else ()
    return KripkeModel(
        logic, tuple(worlds), frozenset(order), root or worlds[0], frozenset(val), doms
    )


def model_from_text(text: str) -> KripkeModel:
    """Parse the line format (``world``/``le``/``val``/``dom``/``flavor``).

    The first declared world is the root; reflexive pairs are implicit.
    """
    logic = None
    worlds: list[str] = []
    order: list[tuple[str, str]] = []
    val: list[tuple[str, str]] = []
    doms: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        arity = {"flavor": 1, "world": 1, "le": 2, "val": 2, "dom": 2}
        if head not in arity or len(args) != arity[head]:
            raise ValueError(f"line {lineno}: cannot read {raw!r}")
        if head == "flavor":
            logic = Logic.parse(args[0])
        elif head == "world":
            worlds.append(args[0])
        elif head == "le":
            order.append((args[0], args[1]))
        elif head == "val":
            val.append((args[0], args[1]))
        else:
            doms.setdefault(args[0], []).append(args[1])
    if logic is None or logic not in KRIPKE_LOGICS:
        raise ValueError("model file needs 'flavor IL|Minimal|S4'")
    if not worlds:
        raise ValueError("model file declares no worlds")
    return make_model(logic, worlds, order, val, doms or None)


def model_from_dict(data: Mapping) -> KripkeModel:
    return make_model(
        Logic.parse(data["flavor"]),
        list(data["worlds"]),
        [tuple(p) for p in data.get("order", [])],
        {w: list(ks) for w, ks in data.get("valuation", {}).items()},
        {w: list(d) for w, d in data["domains"].items()} if data.get("domains") else None,
        data.get("root"),
    )


@dataclass
class WellFormednessReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _parse_key(key: str) -> tuple[str, str | None]:
    if key.endswith(")") and "(" in key:
        pred, ind = key[:-1].split("(", 1)
        return pred, ind
    return key, None


def check_model(m: KripkeModel) -> WellFormednessReport:
    """List every violation of the flavor's frame and valuation conditions."""
    v: list[str] = []
    ws = set(m.worlds)
    rel = m.order
    if len(ws) != len(m.worlds):
        v.append("duplicate world names")
    if m.root not in ws:
        v.append(f"root {m.root} is not a world")
    for a, b in sorted(rel):
        if a not in ws or b not in ws:
            v.append(f"order pair ({a}, {b}) mentions an undeclared world")
    for w in m.worlds:
        if (w, w) not in rel:
            v.append(f"not reflexive at {w}")
    for a, b in sorted(rel):
        for c, d in sorted(rel):
            if b == c and (a, d) not in rel:
                v.append(f"not transitive: {a} <= {b} <= {d} but not {a} <= {d}")
    if m.root in ws:
        for w in m.worlds:
            if (m.root, w) not in rel:
                v.append(f"world {w} is not above the root {m.root}")
    for w, key in sorted(m.valuation):
        if w not in ws:
            v.append(f"valuation mentions undeclared world {w}")

    if m.logic is Logic.S4:
        if m.domains:
            v.append("S4 models are propositional: no domains allowed")
        return WellFormednessReport(v)

    for a, b in sorted(rel):
        if a != b and (b, a) in rel and a < b:
            v.append(f"not antisymmetric: {a} and {b} are mutually related")
    if m.logic is Logic.IL:
        for w, key in sorted(m.valuation):
            if key == FALSUM_KEY:
                v.append(f"absurdity forced at {w} in an IL model")
    for w, key in sorted(m.valuation):
        for u in m.successors(w) if w in ws else ():
            if (u, key) not in m.valuation:
                v.append(f"heredity: {key} true at {w} but not at {u}")
    if m.domains:
        doms = dict(m.domains)
        for w in m.worlds:
            if not doms.get(w):
                v.append(f"empty domain at {w}")
        for a, b in sorted(rel):
            if not set(doms.get(a, ())) <= set(doms.get(b, ())):
                v.append(f"domains do not expand from {a} to {b}")
        for w, key in sorted(m.valuation):
            _, ind = _parse_key(key)
            if ind is not None and ind not in doms.get(w, ()):
                v.append(f"{key} valued at {w} whose domain lacks {ind}")
    return WellFormednessReport(v)


def force(m: KripkeModel, w: str, f: Formula, env: Mapping[str, str] | None = None) -> bool:
    """Reference forcing relation, evaluated clause by clause."""
    env = dict(env or {})
    il = m.logic in (Logic.IL, Logic.MINIMAL)
    if il and any(isinstance(f, t) for t in (Box, Dia)):
        raise UnsupportedFragment("modal operators in an intuitionistic model")
    if m.logic is Logic.S4 and isinstance(f, (Forall, Exists, PredApp)):
        raise UnsupportedFragment("quantifiers in an S4 model")

    def bottom(u: str) -> bool:
        return m.logic is Logic.MINIMAL and m.true_at(u, FALSUM_KEY)

    if isinstance(f, Atom):
        return m.true_at(w, f.name)
    if isinstance(f, PredApp):
        if f.var not in env:
            raise ValueError(f"free variable {f.var} has no value")
        return m.true_at(w, instance_key(f.pred, env[f.var]))
    if isinstance(f, Falsum):
        return bottom(w)
    if isinstance(f, And):
        return force(m, w, f.left, env) and force(m, w, f.right, env)
    if isinstance(f, Or):
        return force(m, w, f.left, env) or force(m, w, f.right, env)
    if isinstance(f, (Imp, Neg, Iff)) and not il:
        if isinstance(f, Neg):
            return not force(m, w, f.body, env)
        a, b = force(m, w, f.left, env), force(m, w, f.right, env)
        return (not a or b) if isinstance(f, Imp) else a == b
    if isinstance(f, Imp):
        return all(
            not force(m, u, f.left, env) or force(m, u, f.right, env)
            for u in m.successors(w)
        )
    if isinstance(f, Neg):
        return all(not force(m, u, f.body, env) or bottom(u) for u in m.successors(w))
    if isinstance(f, Iff):
        return all(
            force(m, u, f.left, env) == force(m, u, f.right, env) for u in m.successors(w)
        )
    if isinstance(f, Box):
        return all(force(m, u, f.body, env) for u in m.successors(w))
    if isinstance(f, Dia):
        return any(force(m, u, f.body, env) for u in m.successors(w))
    if isinstance(f, Forall):
        return all(
            force(m, u, f.body, {**env, f.var: d})
            for u in m.successors(w)
            for d in m.domain(u)
        )
    if isinstance(f, Exists):
        return any(force(m, w, f.body, {**env, f.var: d}) for d in m.domain(w))
    raise TypeError(f"not a formula: {f!r}")
