import random

from hatprove.terms import (
    And,
    Atom,
    Bindings,
    Exists,
    Forall,
    Fun,
    Imp,
    Neg,
    Or,
    Var,
    alpha_equal,
    con,
    formula_size,
    free_vars,
    fresh_copy,
    fresh_var,
    skolem_term,
    substitute,
    unify_occurs,
)

X = Var(1001, "X")
Y = Var(1002, "Y")
Z = Var(1003, "Z")
a, b = con("a"), con("b")


def pa(t):
    return Atom("p", (t,))


def test_substitute_direct():
    assert substitute(pa(X), X, a) == pa(a)


def test_substitute_bound_untouched():
    f = Forall(X, pa(X))
    assert substitute(f, X, a) == f


def test_substitute_compositional():
    f = And(pa(X), Exists(Y, Atom("q", (X, Y))))
    t = Fun("f", (Z,))
    assert substitute(f, X, t) == And(pa(t), Exists(Y, Atom("q", (t, Y))))


def test_unify_one_binding():
    bnd = Bindings()
    assert unify_occurs(Fun("f", (X,)), Fun("f", (a,)), bnd)
    assert bnd.resolve_term(X) == a


def test_unify_occurs_check():
    bnd = Bindings()
    assert not unify_occurs(X, Fun("f", (X,)), bnd)
    assert len(bnd) == 0


def test_unify_two_bindings():
    bnd = Bindings()
    assert unify_occurs(Fun("g", (X, b)), Fun("g", (a, Y)), bnd)
    assert bnd.resolve_term(X) == a
    assert bnd.resolve_term(Y) == b


def test_unify_symmetric_and_applies():
    rng = random.Random(7)

    def rand_term(depth):
        r = rng.random()
        if depth == 0 or r < 0.35:
            return rng.choice([X, Y, Z, a, b])
        return Fun(rng.choice("fg"), tuple(rand_term(depth - 1) for _ in range(rng.randint(1, 2))))

    for _ in range(500):
        t1, t2 = rand_term(3), rand_term(3)
        b1, b2 = Bindings(), Bindings()
        r12 = unify_occurs(t1, t2, b1)
        r21 = unify_occurs(t2, t1, b2)
        assert r12 == r21
        if r12:
            assert b1.resolve_term(t1) == b1.resolve_term(t2)
            assert b2.resolve_term(t1) == b2.resolve_term(t2)


def test_unify_failure_restores_bindings():
    bnd = Bindings()
    assert unify_occurs(X, a, bnd)
    before = bnd.mark()
    assert not unify_occurs(Fun("f", (X, Y)), Fun("f", (b, b)), bnd)
    assert bnd.mark() == before
    assert bnd.resolve_term(Y) == Y


def test_fresh_copy_full_rename():
    g = fresh_copy(pa(X), ())
    assert isinstance(g.args[0], Var) and g.args[0].id != X.id


def test_fresh_copy_frozen_preserved():
    g = fresh_copy(Atom("p", (X, Y)), (X,))
    assert g.args[0] == X
    assert isinstance(g.args[1], Var) and g.args[1].id != Y.id


def test_fresh_copy_ground_identity():
    assert fresh_copy(pa(a), ()) == pa(a)


def test_fresh_copy_unifies_with_original():
    f = Atom("q", (X, Fun("f", (Y,))))
    g = fresh_copy(f, ())
    bnd = Bindings()
    assert unify_occurs(Fun("w", f.args), Fun("w", g.args), bnd)


def test_fresh_copy_follows_bindings_of_frozen():
    # a frozen variable bound to a term keeps that term's variables intact
    bnd = Bindings()
    bnd.bind(X, Fun("f", (Z,)))
    g = fresh_copy(Atom("p", (X, Y)), (X,), bnd)
    assert g.args[0] == Fun("f", (Z,))
    assert g.args[1] != Y


def test_skolem_term_shape():
    t = skolem_term("s1", ())
    assert isinstance(t, Fun) and t.args == ()
    t2 = skolem_term("s2", (X,))
    assert t2.args == (X,)


def test_skolem_term_deterministic():
    assert skolem_term("s3", (X,)) == skolem_term("s3", (X,))
    assert skolem_term("s3", (X,)) != skolem_term("s4", (X,))


def test_formula_size():
    p, q = Atom("p"), Atom("q")
    assert formula_size(p) == 1
    assert formula_size(And(p, q)) == 3
    assert formula_size(Neg(Or(p, q))) == 4


def test_free_vars():
    assert free_vars(Forall(X, Atom("p", (X, Y)))) == {Y}
    assert free_vars(And(Atom("p"), Atom("q"))) == set()
    assert free_vars(Imp(Exists(X, pa(X)), pa(Y))) == {Y}


def test_substitute_removes_free_var():
    f = Imp(pa(X), Exists(Y, Atom("q", (X, Y))))
    assert X not in free_vars(substitute(f, X, a))


def test_alpha_equal():
    f = Forall(X, Imp(pa(X), pa(X)))
    g = Forall(Y, Imp(pa(Y), pa(Y)))
    assert alpha_equal(f, g)
    assert not alpha_equal(f, Forall(Y, Imp(pa(Y), pa(Z))))


def test_fresh_var_name_hint():
    v = fresh_var("W")
    assert v.name == "W"
