"""Shared test helpers: formula corpora and independent oracles."""

from __future__ import annotations

import itertools
import random

from hatprove.terms import And, Atom, Imp, Neg, Or

# ============================================================
# Propositional formula corpora
# ============================================================


def enumerate_formulas(max_size, atom_names=("p", "q")):
    """Every formula over and/or/imp/neg with at most max_size nodes."""
    atoms = [Atom(a) for a in atom_names]

    def gen(size):
        if size == 1:
            yield from atoms
            return
        for f in gen(size - 1):
            yield Neg(f)
        for ls in range(1, size - 1):
            for left in gen(ls):
                for right in gen(size - 1 - ls):
                    yield And(left, right)
                    yield Or(left, right)
                    yield Imp(left, right)

    for size in range(1, max_size + 1):
        yield from gen(size)


def random_formula(rng: random.Random, size: int, atom_names=("p", "q", "r")):
    if size <= 1:
        return Atom(rng.choice(atom_names))
    if size == 2 or rng.random() < 0.25:
        return Neg(random_formula(rng, size - 1, atom_names))
    ls = rng.randint(1, size - 2)
    left = random_formula(rng, ls, atom_names)
    right = random_formula(rng, size - 1 - ls, atom_names)
    return rng.choice([And, Or, Imp])(left, right)


# ============================================================
# Brute-force prefix unification oracle
# ============================================================
#
# Independent of the production solver: strings are tuples whose
# elements are plain hashable symbols; a symbol in `variables` may take
# any (possibly empty) segment.  Enumerates aligned unifiers by
# splitting: equal heads cancel, a variable head absorbs a prefix of
# the other side.  Solutions are canonical dicts mapping bound
# variables to fully expanded tuples.


def _expand(s, sub):
    out = []
    for x in s:
        if x in sub:
            out.extend(_expand(sub[x], sub))
        else:
            out.append(x)
    return tuple(out)


def _occurs_b(v, seg, sub):
    return v in _expand(seg, sub)


def brute_solutions(pairs, variables):
    """All aligned unifiers of the constraint pairs, deduplicated."""
    solutions = []

    def solve(work, sub):
        if not work:
            canon = frozenset((v, _expand((v,), sub)) for v in sub)
            if canon not in seen:
                seen.add(canon)
                solutions.append(dict(sub))
            return
        (s, t), rest = work[0], work[1:]
        s, t = _expand(s, sub), _expand(t, sub)
        if not s and not t:
            solve(rest, sub)
            return
        if not s or not t:
            leftover = s or t
            if all(x in variables for x in leftover):
                new = dict(sub)
                for x in leftover:
                    if x not in new:
                        new[x] = ()
                solve(rest, new)
            return
        a, b = s[0], t[0]
        if a == b:
            solve([(s[1:], t[1:])] + rest, sub)
            return
        if a in variables:
            for k in range(len(t) + 1):
                seg = t[:k]
                if _occurs_b(a, seg, sub):
                    break
                solve([(s[1:], t[k:])] + rest, {**sub, a: seg})
        if b in variables:
            for k in range(len(s) + 1):
                seg = s[:k]
                if _occurs_b(b, seg, sub):
                    break
                solve([(s[k:], t[1:])] + rest, {**sub, b: seg})

    seen: set = set()
    solve(list(pairs), {})
    return solutions


def string_matches(pattern, target, variables, theta=None):
    """Can pattern become target by substituting its variables?"""
    theta = dict(theta or {})

    def go(p, t, th):
        p = _expand(p, th)
        if not p and not t:
            yield th
            return
        if not p:
            return
        a = p[0]
        if a in variables and a not in th:
            for k in range(len(t) + 1):
                yield from go(p[1:], t[k:], {**th, a: t[:k]})
            return
        if t and a == t[0]:
            yield from go(p[1:], t[1:], th)

    return next(go(tuple(pattern), tuple(target), theta), None) is not None


def solution_instance_of(general, specific, variables):
    """specific = theta composed with general, for some theta."""

    def go(items, theta):
        if not items:
            yield theta
            return
        v, rest = items[0], items[1:]
        gval = _expand(general.get(v, (v,)), general)
        sval = _expand(specific.get(v, (v,)), specific)

        def match(p, t, th):
            p = list(p)
            if not p and not t:
                yield th
                return
            if not p:
                return
            a = p[0]
            if a in variables:
                if a in th:
                    val = th[a]
                    if tuple(t[: len(val)]) == tuple(val):
                        yield from match(p[1:], t[len(val):], th)
                    return
                for k in range(len(t) + 1):
                    yield from match(p[1:], t[k:], {**th, a: tuple(t[:k])})
                return
            if t and a == t[0]:
                yield from match(p[1:], t[1:], th)

        for th in match(gval, sval, theta):
            yield from go(rest, th)

    domain = sorted(set(general) | set(specific))
    return next(go(domain, {}), None) is not None
