import random
from itertools import product

import pytest

from semigroup_lab import (BudgetExceededError, Identity, apply_identity,
                           factor_occurrences, format_rewrite_step,
                           is_isoterm_bounded, is_sparse, parse_identity,
                           parse_word, project, satisfies, substitute,
                           word_str)
from semigroup_lab.core import FiniteSemigroup
from semigroup_lab.nfb import build_instance
from semigroup_lab.words import alphabet, variable_order
from oracles import naive_is_sparse, naive_satisfies


def test_parse_word():
    assert parse_word("x y x") == ("x", "y", "x")
    assert parse_word("x^3") == ("x", "x", "x")
    assert parse_word("ab2 x^2 y") == ("ab2", "x", "x", "y")
    with pytest.raises(ValueError):
        parse_word("X y")
    with pytest.raises(ValueError):
        parse_word("x^")


def test_parse_identity():
    ident = parse_identity("x y == y x")
    assert ident.lhs == ("x", "y") and ident.rhs == ("y", "x")
    with pytest.raises(ValueError):
        parse_identity("x y = y x")
    with pytest.raises(ValueError):
        parse_identity("x ==")


def test_project_examples():
    assert project(parse_word("x y x"), {"x"}) == ("x", "x")
    w = parse_word("a b c a")
    assert project(w, alphabet(w)) == w
    inst = build_instance(1, 1, 1)
    assert project(inst.u, inst.x_vars) == parse_word(
        "x0 y1 x1 z0 y1 z1 x1 y1 x0 z1 y1 z0")


def test_project_idempotent_and_alphabet():
    for w in product("abc", repeat=4):
        for keep in ({"a"}, {"a", "b"}, {"c"}, set()):
            p = project(w, keep)
            assert project(p, keep) == p
            assert alphabet(p) == alphabet(w) & keep


def test_is_sparse_examples():
    assert is_sparse(parse_word("x y x"))
    assert not is_sparse(parse_word("x x"))
    assert is_sparse(parse_word("x y z x y"))


def test_is_sparse_matches_all_pairs_definition():
    for length in range(1, 7):
        for w in product("xyz", repeat=length):
            assert is_sparse(w) == naive_is_sparse(w), w


def test_factor_occurrences_examples():
    assert factor_occurrences(parse_word("a b"), parse_word("a b a b")) == 2
    assert factor_occurrences(parse_word("x x"), parse_word("x x x")) == 2
    assert factor_occurrences(parse_word("q"), parse_word("x y x")) == 0
    with pytest.raises(ValueError):
        factor_occurrences((), parse_word("x"))


def test_satisfies_commutativity_of_semilattice(sl2):
    ok, witness = satisfies(sl2, parse_identity("x y == y x"))
    assert ok and witness is None


def test_satisfies_ic4_power_identities(ic4):
    ok, _ = satisfies(ic4, parse_identity("x^4 == x^5"))
    assert ok
    ok, witness = satisfies(ic4, parse_identity("x^3 == x^4"))
    assert not ok
    x = witness["x"]
    assert ic4.power(x, 3) != ic4.power(x, 4)


def test_satisfies_ic4_not_commutative(ic4):
    ok, witness = satisfies(ic4, parse_identity("x y == y x"))
    assert not ok
    a, b = witness["x"], witness["y"]
    assert ic4.mul(a, b) != ic4.mul(b, a)


def test_satisfies_budget():
    s = FiniteSemigroup(["e"], [[0]])
    with pytest.raises(BudgetExceededError, match="search too large"):
        satisfies(s, parse_identity("x y z == z y x"), budget=0)


@pytest.mark.parametrize("identity", [
    "x y == y x", "x x == x", "x y x == x y", "x^2 y == y x^2",
])
def test_satisfies_matches_naive_enumeration(b2, sl3, c3, identity):
    ident = parse_identity(identity)
    for s in (b2, sl3, c3):
        table = [[int(v) for v in row] for row in s.table]
        variables = variable_order(ident.lhs, ident.rhs)
        expected = naive_satisfies(table, ident.lhs, ident.rhs, variables)
        ok, witness = satisfies(s, ident)
        assert ok == (expected is None)
        assert witness == expected  # least witness in odometer order


def test_satisfies_invariant_under_renaming(b2, c3):
    rng = random.Random(20240817)
    idents = ["x y x == x y", "x x == x", "x y z == x z y", "x^2 == x^3"]
    for text in idents:
        ident = parse_identity(text)
        names = sorted(alphabet(ident.lhs) | alphabet(ident.rhs))
        for s in (b2, c3):
            base, _ = satisfies(s, ident)
            for _ in range(3):
                fresh = rng.sample(["p", "q", "r", "s", "t", "u"], len(names))
                table = dict(zip(names, fresh))
                renamed = Identity(tuple(table[x] for x in ident.lhs),
                                   tuple(table[x] for x in ident.rhs))
                assert satisfies(s, renamed)[0] == base


def test_satisfies_deterministic_across_thread_counts(ic4):
    ident = parse_identity("x y x == x x y")
    results = [satisfies(ic4, ident, threads=t) for t in (1, 2, 4)]
    assert results[0] == results[1] == results[2]
    assert not results[0][0]


def test_isoterm_examples(ic4):
    assert is_isoterm_bounded(ic4, parse_word("x y x"), 5) == (True, None)
    ok, witness = is_isoterm_bounded(ic4, parse_word("x x x x"), 5)
    assert not ok
    assert witness == parse_word("x^5")
    trivial = FiniteSemigroup(["e"], [[0]])
    ok, witness = is_isoterm_bounded(trivial, parse_word("x"), 2)
    assert not ok
    assert witness == ("x", "x")


def test_isoterm_rejects_non_monoid(b2):
    with pytest.raises(ValueError, match="monoid"):
        is_isoterm_bounded(b2, parse_word("x"), 2)


def test_isoterm_rejects_short_bound(ic4):
    with pytest.raises(ValueError):
        is_isoterm_bounded(ic4, parse_word("x y x"), 2)


def test_sparse_words_are_bounded_isoterms_spot(ic4):
    for length in range(1, 4):
        for w in product("xy", repeat=length):
            if is_sparse(w):
                assert is_isoterm_bounded(ic4, w, length + 1)[0], w


def test_substitute():
    phi = {"x": ("a", "b"), "y": ("c",)}
    assert substitute(("x", "y", "x"), phi) == ("a", "b", "c", "a", "b")
    with pytest.raises(ValueError):
        substitute(("x",), {"x": ()})


def test_apply_identity_commutativity_step():
    w = parse_word("a b a b")
    rule = parse_identity("x y == y x")
    phi = {"x": ("b",), "y": ("a",)}
    out = apply_identity(w, rule, phi, prefix=("a",), suffix=("b",))
    assert out == parse_word("a a b b")


def test_apply_identity_trivial_and_growing():
    rule = parse_identity("x y == x y")
    w = parse_word("p q")
    assert apply_identity(w, rule, {"x": ("p",), "y": ("q",)}) == w

    grow = parse_identity("x == x x")
    out = apply_identity(parse_word("x x"), grow, {"x": ("x",)}, suffix=("x",))
    assert out == parse_word("x x x")


def test_apply_identity_mismatch():
    rule = parse_identity("x y == y x")
    with pytest.raises(ValueError, match="rule does not apply here"):
        apply_identity(parse_word("a b"), rule, {"x": ("b",), "y": ("a",)},
                       prefix=("a",))


def test_apply_identity_round_trip():
    rng = random.Random(99)
    rule = parse_identity("x y x == x x y")
    back = Identity(rule.rhs, rule.lhs)
    for _ in range(20):
        phi = {v: tuple(rng.choices("abc", k=rng.randint(1, 3)))
               for v in ("x", "y")}
        prefix = tuple(rng.choices("abc", k=rng.randint(0, 2)))
        suffix = tuple(rng.choices("abc", k=rng.randint(0, 2)))
        w = prefix + substitute(rule.lhs, phi) + suffix
        forward = apply_identity(w, rule, phi, prefix, suffix)
        assert apply_identity(forward, back, phi, prefix, suffix) == w


def test_format_rewrite_step_golden():
    w = parse_word("a b a b")
    rule = parse_identity("x y == y x")
    phi = {"x": ("b",), "y": ("a",)}
    trace = format_rewrite_step(w, rule, phi, prefix=("a",), suffix=("b",))
    with open("tests/golden/rewrite_trace.txt", "r", encoding="utf-8") as fh:
        assert trace == fh.read()


def test_word_str_round_trip():
    for text in ("x y x", "x0 y1 z0", "a"):
        assert word_str(parse_word(text)) == text
