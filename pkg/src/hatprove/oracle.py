"""Brute-force validity oracles for propositional formulas.

The here-and-there oracle enumerates all interpretations (H, T) with
H subseteq T over the formula's atoms: each atom is either absent,
true only at `there`, or true at both worlds, so n atoms make 3^n
interpretations.  Classical validity enumerates ordinary truth tables.
These are the ground truth every prover is tested against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .terms import And, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or

HERE = "here"
THERE = "there"


class QuantifierError(ValueError):
    """Raised when a quantified formula reaches a propositional oracle."""


@dataclass(frozen=True)
class HTInterpretation:
    here: frozenset
    there: frozenset

    def __post_init__(self):
        assert self.here <= self.there, "persistence requires H subseteq T"

    def __str__(self):
        return f"H={{{','.join(sorted(self.here))}}} T={{{','.join(sorted(self.there))}}}"


def eval_ht(f: Formula, interp: HTInterpretation, world: str = HERE) -> bool:
    """Kripke evaluation over the two-world frame h <= t.

    Conjunction and disjunction are pointwise; implication and negation
    at `here` quantify over both worlds, at `there` they are classical.
    """
    if isinstance(f, Atom):
        if f.args:
            raise QuantifierError("oracle handles propositional atoms only")
        w = interp.here if world == HERE else interp.there
        return f.pred in w
    if isinstance(f, And):
        return eval_ht(f.left, interp, world) and eval_ht(f.right, interp, world)
    if isinstance(f, Or):
        return eval_ht(f.left, interp, world) or eval_ht(f.right, interp, world)
    if isinstance(f, Imp):
        if world == THERE:
            return (not eval_ht(f.left, interp, THERE)) or eval_ht(f.right, interp, THERE)
        return ((not eval_ht(f.left, interp, HERE)) or eval_ht(f.right, interp, HERE)) and (
            (not eval_ht(f.left, interp, THERE)) or eval_ht(f.right, interp, THERE)
        )
    if isinstance(f, Iff):
        return eval_ht(Imp(f.left, f.right), interp, world) and eval_ht(
            Imp(f.right, f.left), interp, world
        )
    if isinstance(f, Neg):
        # ~G is G -> falsum: at `here` G must fail at both worlds
        if world == THERE:
            return not eval_ht(f.body, interp, THERE)
        return not eval_ht(f.body, interp, HERE) and not eval_ht(f.body, interp, THERE)
    if isinstance(f, (Forall, Exists)):
        raise QuantifierError("oracle handles propositional formulas only")
    raise TypeError(f"not a formula: {f!r}")


def _prop_atoms(f: Formula) -> list:
    out = set()

    def go(g):
        if isinstance(g, Atom):
            if g.args:
                raise QuantifierError("oracle handles propositional atoms only")
            out.add(g.pred)
        elif isinstance(g, Neg):
            go(g.body)
        elif isinstance(g, (And, Or, Imp, Iff)):
            go(g.left)
            go(g.right)
        else:
            raise QuantifierError("oracle handles propositional formulas only")

    go(f)
    return sorted(out)


def ht_interpretations(atom_names) -> "itertools.product":
    """All (H, T) pairs with H subseteq T, in enumeration order.

    Per atom: 0 = absent, 1 = there only, 2 = both worlds.
    """
    names = sorted(atom_names)
    for values in itertools.product((0, 1, 2), repeat=len(names)):
        here = frozenset(n for n, v in zip(names, values) if v == 2)
        there = frozenset(n for n, v in zip(names, values) if v >= 1)
        yield HTInterpretation(here, there)


def ht_countermodel(f: Formula) -> Optional[HTInterpretation]:
    """Smallest interpretation (in enumeration order) falsifying f at here."""
    for interp in ht_interpretations(_prop_atoms(f)):
        if not eval_ht(f, interp, HERE):
            return interp
    return None


def ht_valid_prop(f: Formula) -> bool:
    """Valid in propositional here-and-there: true at `here` in all models."""
    return ht_countermodel(f) is None


def classical_valid_prop(f: Formula) -> bool:
    """Two-valued truth-table validity."""
    names = _prop_atoms(f)
    for values in itertools.product((False, True), repeat=len(names)):
        assign = dict(zip(names, values))
        if not _eval_classical(f, assign):
            return False
    return True


def _eval_classical(f: Formula, assign: dict) -> bool:
    if isinstance(f, Atom):
        return assign[f.pred]
    if isinstance(f, And):
        return _eval_classical(f.left, assign) and _eval_classical(f.right, assign)
    if isinstance(f, Or):
        return _eval_classical(f.left, assign) or _eval_classical(f.right, assign)
    if isinstance(f, Imp):
        return (not _eval_classical(f.left, assign)) or _eval_classical(f.right, assign)
    if isinstance(f, Iff):
        return _eval_classical(f.left, assign) == _eval_classical(f.right, assign)
    if isinstance(f, Neg):
        return not _eval_classical(f.body, assign)
    raise QuantifierError("oracle handles propositional formulas only")
