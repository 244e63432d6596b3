"""Independent proof checker.

Each rule is re-derived here from its conclusion, principal formula and term:
the checker recomputes the premises the rule demands and compares them with
the premises recorded in the tree.  Nothing in this module is shared with the
search procedures.
"""
from __future__ import annotations

from typing import Callable, Optional

from ..formula import (
    And, Atom, Box, Dia, Exists, Falsum, FALSUM, Forall, Formula, Iff, Imp, Neg, Or,
    PredApp, QUANTIFIERS, iter_nodes, substitute,
)
from ..verdict import Logic
from .sequent import Proof, ProofNode, Sequent

Premises = Optional[list[Sequent]]
Rule = Callable[[Sequent, Optional[Formula], Optional[str]], Premises]


def _seq(ante, succ) -> Sequent:
    return Sequent(frozenset(ante), frozenset(succ))


def _bound(f: Formula) -> set[str]:
    return {g.var for g in iter_nodes(f) if isinstance(g, QUANTIFIERS)}


def _fresh_ok(s: Sequent, a: str | None) -> bool:
    return a is not None and a not in s.names()


def _term_ok(p: Formula, t: str | None) -> bool:
    return t is not None and t not in _bound(p)


# --- single-succedent rules -------------------------------------------------

def _single(s: Sequent) -> Formula | None:
    return next(iter(s.succ)) if len(s.succ) == 1 else None


def _left(kind) -> Callable[[Sequent, Formula | None], tuple | None]:
    def get(s: Sequent, p):
        if isinstance(p, kind) and p in s.ante:
            return s.ante - {p}, p
        return None
    return get


def _right_goal(kind):
    def get(s: Sequent, p):
        c = _single(s)
        if isinstance(c, kind) and p == c:
            return c
        return None
    return get


def i_axiom(s, p, t):
    c = _single(s)
    if isinstance(p, (Atom, PredApp, Falsum)) and p == c and p in s.ante:
        return []
    return None


def i_id(s, p, t):
    return [] if p is not None and p in s.ante and s.succ == {p} else None


def i_falsum_l(s, p, t):
    return [] if p == FALSUM and FALSUM in s.ante and len(s.succ) == 1 else None


def i_and_r(s, p, t):
    c = _right_goal(And)(s, p)
    return None if c is None else [_seq(s.ante, [c.left]), _seq(s.ante, [c.right])]


def i_or_r1(s, p, t):
    c = _right_goal(Or)(s, p)
    return None if c is None else [_seq(s.ante, [c.left])]


def i_or_r2(s, p, t):
    c = _right_goal(Or)(s, p)
    return None if c is None else [_seq(s.ante, [c.right])]


def i_imp_r(s, p, t):
    c = _right_goal(Imp)(s, p)
    return None if c is None else [_seq(s.ante | {c.left}, [c.right])]


def i_neg_r(s, p, t):
    c = _right_goal(Neg)(s, p)
    return None if c is None else [_seq(s.ante | {c.body}, [FALSUM])]


def i_iff_r(s, p, t):
    c = _right_goal(Iff)(s, p)
    if c is None:
        return None
    return [_seq(s.ante, [Imp(c.left, c.right)]), _seq(s.ante, [Imp(c.right, c.left)])]


def i_forall_r(s, p, t):
    c = _right_goal(Forall)(s, p)
    if c is None or not _fresh_ok(s, t):
        return None
    return [_seq(s.ante, [substitute(c.body, c.var, t)])]


def i_exists_r(s, p, t):
    c = _right_goal(Exists)(s, p)
    if c is None or not _term_ok(c, t):
        return None
    return [_seq(s.ante, [substitute(c.body, c.var, t)])]


def i_and_l(s, p, t):
    got = _left(And)(s, p)
    if got is None:
        return None
    rest, p = got
    return [_seq(rest | {p.left, p.right}, s.succ)]


def i_or_l(s, p, t):
    got = _left(Or)(s, p)
    if got is None:
        return None
    rest, p = got
    return [_seq(rest | {p.left}, s.succ), _seq(rest | {p.right}, s.succ)]


def i_iff_l(s, p, t):
    got = _left(Iff)(s, p)
    if got is None:
        return None
    rest, p = got
    return [_seq(rest | {Imp(p.left, p.right), Imp(p.right, p.left)}, s.succ)]


def i_exists_l(s, p, t):
    got = _left(Exists)(s, p)
    if got is None or not _fresh_ok(s, t):
        return None
    rest, p = got
    return [_seq(rest | {substitute(p.body, p.var, t)}, s.succ)]


def i_forall_l(s, p, t):
    if not isinstance(p, Forall) or p not in s.ante or not _term_ok(p, t):
        return None
    return [_seq(s.ante | {substitute(p.body, p.var, t)}, s.succ)]


def i_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None:
        return None
    rest, p = got
    return [_seq(s.ante, [p.left]), _seq(rest | {p.right}, s.succ)]


def i_neg_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None:
        return None
    rest, p = got
    return [_seq(s.ante, [p.body]), _seq(rest | {FALSUM}, s.succ)]


def i_cut(s, p, t):
    if p is None or len(s.succ) != 1:
        return None
    return [_seq(s.ante, [p]), _seq(s.ante | {p}, s.succ)]


# contraction-free left rules

def _atomic(f) -> bool:
    return isinstance(f, (Atom, Falsum))


def g_imp_atom_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not _atomic(p.left) or p.left not in s.ante:
        return None
    rest, p = got
    return [_seq(rest | {p.right}, s.succ)]


def g_neg_atom_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not _atomic(p.body) or p.body not in s.ante:
        return None
    rest, _ = got
    return [_seq(rest | {FALSUM}, s.succ)]


def g_and_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not isinstance(p.left, And):
        return None
    rest, p = got
    a, b = p.left.left, p.left.right
    return [_seq(rest | {Imp(a, Imp(b, p.right))}, s.succ)]


def g_or_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not isinstance(p.left, Or):
        return None
    rest, p = got
    return [_seq(rest | {Imp(p.left.left, p.right), Imp(p.left.right, p.right)}, s.succ)]


def g_iff_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not isinstance(p.left, Iff):
        return None
    rest, p = got
    a, b = p.left.left, p.left.right
    return [_seq(rest | {Imp(And(Imp(a, b), Imp(b, a)), p.right)}, s.succ)]


def g_imp_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not isinstance(p.left, Imp):
        return None
    rest, p = got
    a, b, d = p.left.left, p.left.right, p.right
    return [_seq(rest | {Imp(b, d)}, [p.left]), _seq(rest | {d}, s.succ)]


def g_neg_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None or not isinstance(p.left, Neg):
        return None
    rest, p = got
    return [_seq(rest | {Imp(FALSUM, p.right)}, [p.left]), _seq(rest | {p.right}, s.succ)]


def g_neg_and_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not isinstance(p.body, And):
        return None
    rest, p = got
    return [_seq(rest | {Imp(p.body.left, Neg(p.body.right))}, s.succ)]


def g_neg_or_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not isinstance(p.body, Or):
        return None
    rest, p = got
    return [_seq(rest | {Neg(p.body.left), Neg(p.body.right)}, s.succ)]


def g_neg_iff_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not isinstance(p.body, Iff):
        return None
    rest, p = got
    a, b = p.body.left, p.body.right
    return [_seq(rest | {Neg(And(Imp(a, b), Imp(b, a)))}, s.succ)]


def g_neg_impl_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not isinstance(p.body, Imp):
        return None
    rest, p = got
    return [_seq(rest | {Neg(p.body.right)}, [p.body]), _seq(rest | {FALSUM}, s.succ)]


def g_neg_neg_l(s, p, t):
    got = _left(Neg)(s, p)
    if got is None or not isinstance(p.body, Neg):
        return None
    rest, p = got
    return [_seq(rest, [p.body]), _seq(rest | {FALSUM}, s.succ)]


# --- multi-succedent rules --------------------------------------------------

def _right(kind):
    def get(s: Sequent, p):
        if isinstance(p, kind) and p in s.succ:
            return s.succ - {p}, p
        return None
    return get


def c_axiom(s, p, t):
    if isinstance(p, (Atom, PredApp, Falsum)) and p in s.ante and p in s.succ:
        return []
    return None


def c_id(s, p, t):
    return [] if p is not None and p in s.ante and p in s.succ else None


def c_falsum_l(s, p, t):
    return [] if p == FALSUM and FALSUM in s.ante else None


def c_and_l(s, p, t):
    got = _left(And)(s, p)
    return None if got is None else [_seq(got[0] | {p.left, p.right}, s.succ)]


def c_or_l(s, p, t):
    got = _left(Or)(s, p)
    if got is None:
        return None
    return [_seq(got[0] | {p.left}, s.succ), _seq(got[0] | {p.right}, s.succ)]


def c_iff_l(s, p, t):
    got = _left(Iff)(s, p)
    if got is None:
        return None
    return [_seq(got[0] | {Imp(p.left, p.right), Imp(p.right, p.left)}, s.succ)]


def c_imp_l(s, p, t):
    got = _left(Imp)(s, p)
    if got is None:
        return None
    return [_seq(got[0], s.succ | {p.left}), _seq(got[0] | {p.right}, s.succ)]


def c_neg_l(s, p, t):
    got = _left(Neg)(s, p)
    return None if got is None else [_seq(got[0], s.succ | {p.body})]


def c_and_r(s, p, t):
    got = _right(And)(s, p)
    if got is None:
        return None
    return [_seq(s.ante, got[0] | {p.left}), _seq(s.ante, got[0] | {p.right})]


def c_or_r(s, p, t):
    got = _right(Or)(s, p)
    return None if got is None else [_seq(s.ante, got[0] | {p.left, p.right})]


def c_imp_r(s, p, t):
    got = _right(Imp)(s, p)
    return None if got is None else [_seq(s.ante | {p.left}, got[0] | {p.right})]


def c_neg_r(s, p, t):
    got = _right(Neg)(s, p)
    return None if got is None else [_seq(s.ante | {p.body}, got[0])]


def c_iff_r(s, p, t):
    got = _right(Iff)(s, p)
    if got is None:
        return None
    rest = got[0]
    return [
        _seq(s.ante, rest | {Imp(p.left, p.right)}),
        _seq(s.ante, rest | {Imp(p.right, p.left)}),
    ]


def c_forall_r(s, p, t):
    got = _right(Forall)(s, p)
    if got is None or not _fresh_ok(s, t):
        return None
    return [_seq(s.ante, got[0] | {substitute(p.body, p.var, t)})]


def c_exists_l(s, p, t):
    got = _left(Exists)(s, p)
    if got is None or not _fresh_ok(s, t):
        return None
    return [_seq(got[0] | {substitute(p.body, p.var, t)}, s.succ)]


def c_forall_l(s, p, t):
    if not isinstance(p, Forall) or p not in s.ante or not _term_ok(p, t):
        return None
    return [_seq(s.ante | {substitute(p.body, p.var, t)}, s.succ)]


def c_exists_r(s, p, t):
    if not isinstance(p, Exists) or p not in s.succ or not _term_ok(p, t):
        return None
    return [_seq(s.ante, s.succ | {substitute(p.body, p.var, t)})]


def m_box_l(s, p, t):
    if not isinstance(p, Box) or p not in s.ante:
        return None
    return [_seq(s.ante | {p.body}, s.succ)]


def m_dia_r(s, p, t):
    if not isinstance(p, Dia) or p not in s.succ:
        return None
    return [_seq(s.ante, s.succ | {p.body})]


def m_box_r(s, p, t):
    if not isinstance(p, Box) or p not in s.succ:
        return None
    boxes = {f for f in s.ante if isinstance(f, Box)}
    dias = {f for f in s.succ if isinstance(f, Dia)}
    return [_seq(boxes, dias | {p.body})]


def m_dia_l(s, p, t):
    if not isinstance(p, Dia) or p not in s.ante:
        return None
    boxes = {f for f in s.ante if isinstance(f, Box)}
    dias = {f for f in s.succ if isinstance(f, Dia)}
    return [_seq(boxes | {p.body}, dias)]


_INT_BASE: dict[str, Rule] = {
    "axiom": i_axiom, "falsum_L": i_falsum_l,
    "and_R": i_and_r, "or_R1": i_or_r1, "or_R2": i_or_r2, "imp_R": i_imp_r,
    "neg_R": i_neg_r, "iff_R": i_iff_r,
    "and_L": i_and_l, "or_L": i_or_l, "iff_L": i_iff_l,
}
G4IP_RULES: dict[str, Rule] = {
    **_INT_BASE,
    "imp_atom_L": g_imp_atom_l, "neg_atom_L": g_neg_atom_l,
    "and_imp_L": g_and_imp_l, "or_imp_L": g_or_imp_l, "iff_imp_L": g_iff_imp_l,
    "imp_imp_L": g_imp_imp_l, "neg_imp_L": g_neg_imp_l,
    "neg_and_L": g_neg_and_l, "neg_or_L": g_neg_or_l, "neg_iff_L": g_neg_iff_l,
    "neg_impl_L": g_neg_impl_l, "neg_neg_L": g_neg_neg_l,
    "cut": i_cut,
}
G3I_RULES: dict[str, Rule] = {
    **_INT_BASE,
    "id": i_id, "imp_L": i_imp_l, "neg_L": i_neg_l,
    "forall_R": i_forall_r, "exists_R": i_exists_r,
    "forall_L": i_forall_l, "exists_L": i_exists_l,
}
G3C_RULES: dict[str, Rule] = {
    "axiom": c_axiom, "id": c_id, "falsum_L": c_falsum_l,
    "and_L": c_and_l, "or_L": c_or_l, "iff_L": c_iff_l, "imp_L": c_imp_l, "neg_L": c_neg_l,
    "and_R": c_and_r, "or_R": c_or_r, "imp_R": c_imp_r, "neg_R": c_neg_r, "iff_R": c_iff_r,
    "forall_R": c_forall_r, "exists_L": c_exists_l,
    "forall_L": c_forall_l, "exists_R": c_exists_r,
}
G3S4_RULES: dict[str, Rule] = {
    name: rule for name, rule in G3C_RULES.items()
    if name not in ("id", "forall_R", "exists_L", "forall_L", "exists_R")
}
G3S4_RULES.update({"box_L": m_box_l, "dia_R": m_dia_r, "box_R": m_box_r, "dia_L": m_dia_l})

CALCULI: dict[str, tuple[dict[str, Rule], tuple[Logic, ...]]] = {
    "G4ip": (G4IP_RULES, (Logic.IL, Logic.MINIMAL)),
    "G3i": (G3I_RULES, (Logic.IL, Logic.MINIMAL)),
    "G3c": (G3C_RULES, (Logic.CL,)),
    "G3s4": (G3S4_RULES, (Logic.S4,)),
}


def rules_for(calculus: str, logic: Logic) -> dict[str, Rule]:
    table, logics = CALCULI[calculus]
    if logic not in logics:
        return {}
    if logic is Logic.MINIMAL:
        return {k: v for k, v in table.items() if k != "falsum_L"}
    return table


def find_bad_node(proof: Proof) -> tuple[ProofNode, str] | None:
    """First node (pre-order) whose rule instance does not check, with a reason."""
    if proof.calculus not in CALCULI:
        return proof.root, f"unknown calculus {proof.calculus}"
    table = rules_for(proof.calculus, proof.logic)
    if not table:
        return proof.root, f"{proof.calculus} is not a calculus for {proof.logic.value}"
    stack = [proof.root]
    seen: set[int] = set()  # search shares subproofs, so the tree may be a DAG
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        rule = table.get(node.rule)
        if rule is None:
            return node, f"rule {node.rule} is not available in {proof.calculus}/{proof.logic.value}"
        expected = rule(node.conclusion, node.principal, node.term)
        if expected is None:
            return node, f"rule {node.rule} does not apply to {node.conclusion}"
        got = [p.conclusion for p in node.premises]
        if got != expected:
            return node, (
                f"rule {node.rule} needs premises "
                f"[{'; '.join(map(str, expected))}] but has [{'; '.join(map(str, got))}]"
            )
        stack.extend(reversed(node.premises))
    return None


def check_proof(proof: Proof) -> bool:
    return find_bad_node(proof) is None
