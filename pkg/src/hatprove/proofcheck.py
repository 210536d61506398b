"""Independent validation of sequent proofs.

Walks a frozen proof tree (closing substitution already applied) and
re-derives every node from its conclusion: leaves must satisfy one of
the two axioms, and each internal node's children must be exactly the
premises the named rule produces from the conclusion and the recorded
quantifier witness.  The walk shares no state with the search; it only
reuses the rule table's premise schemas.

Quantifier nodes are checked against the free-variable/skolemized rule
forms: the instance must be the principal's body with the binder
replaced by the recorded witness (modulo renaming of inner binders),
and skolem witnesses must come from the reserved symbol namespace.
"""

from __future__ import annotations

from .lht import (
    EIGEN,
    FREEVAR,
    ProofNode,
    RULES,
    _SHAPES,
    _propositional_premises,
    _quantifier_premise,
)
from .terms import (
    Atom,
    Formula,
    Fun,
    Neg,
    SKOLEM_PREFIX,
    alpha_equal,
    is_literal,
    substitute,
)

_RULES_BY_ID = {r.id: r for r in RULES}


class ProofError(AssertionError):
    pass


def _remove_one(items: list, target: Formula) -> list:
    for i, f in enumerate(items):
        if f == target:
            return items[:i] + items[i + 1 :]
    raise ProofError(f"principal formula {target} not in sequent side")


def _multiset_match(expected: list, actual: list) -> None:
    """Equal as multisets; leftovers may pair up modulo bound renaming."""
    if len(expected) != len(actual):
        raise ProofError(f"premise size mismatch: {len(expected)} vs {len(actual)}")
    rest = list(actual)
    loose = []
    for f in expected:
        if f in rest:
            rest.remove(f)
        else:
            loose.append(f)
    for f in loose:
        for i, g in enumerate(rest):
            if alpha_equal(f, g):
                del rest[i]
                break
        else:
            raise ProofError(f"premise formula {f} not found")


def check_proof(node: ProofNode) -> None:
    """Raises ProofError unless the tree is a valid derivation."""
    left, right = list(node.left), list(node.right)

    if node.rule in ("axiom1", "axiom2"):
        if node.closing is None:
            raise ProofError("axiom leaf without closing pair")
        a, b = node.closing
        if a != b:
            raise ProofError(f"axiom pair differs after substitution: {a} vs {b}")
        if a not in left:
            raise ProofError(f"axiom formula {a} not on the left")
        if node.rule == "axiom1":
            if b not in right:
                raise ProofError(f"axiom formula {b} not on the right")
        else:
            if Neg(b) not in left:
                raise ProofError(f"axiom complement ~{b} not on the left")
            if not (isinstance(a, Atom) or a == b):
                raise ProofError("axiom2 formula must be atomic")
        if not (is_literal(a) or a == b):
            raise ProofError("axiom1 formula must be a literal unless identical")
        return

    rule = _RULES_BY_ID.get(node.rule)
    if rule is None:
        raise ProofError(f"unknown rule {node.rule}")
    if node.principal is None:
        raise ProofError(f"{node.rule} node without principal formula")
    parts = _SHAPES[rule.shape](node.principal)
    if parts is None:
        raise ProofError(f"{node.rule} does not match principal {node.principal}")
    if rule.pol == 1:
        l0, r0 = _remove_one(left, node.principal), right
    else:
        l0, r0 = left, _remove_one(right, node.principal)

    if rule.kind in (EIGEN, FREEVAR):
        x, body = parts
        if node.witness is None or node.instance is None:
            raise ProofError(f"{node.rule} node lacks witness or instance")
        if rule.kind == EIGEN:
            if not (isinstance(node.witness, Fun) and node.witness.sym.startswith(SKOLEM_PREFIX)):
                raise ProofError(f"{node.rule} witness {node.witness} is not a skolem term")
        if not alpha_equal(node.instance, substitute(body, x, node.witness)):
            raise ProofError(
                f"{node.rule} instance {node.instance} is not the body at {node.witness}"
            )
        adds = _quantifier_premise(rule, node.principal, node.instance)
    else:
        adds = _propositional_premises(rule, parts)

    if len(adds) != len(node.children):
        raise ProofError(
            f"{node.rule} expects {len(adds)} premises, proof has {len(node.children)}"
        )
    for (la, ra), child in zip(adds, node.children):
        _multiset_match(la + l0, list(child.left))
        _multiset_match(ra + r0, list(child.right))
        check_proof(child)
