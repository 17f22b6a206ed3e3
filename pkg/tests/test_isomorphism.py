import random

import pytest

from cl1play.formulas import Cand, Cor, children, parse_formula, surface_occurrences
from cl1play.isomorphism import (
    IsoWitness, NotIsomorphic, canonical_key, identity_witness, isomorphic,
    remap_move, witness,
)
from oracles import iso_by_permutation_search, random_formula, shuffled_commutative


def f(text):
    return parse_formula(text)


class TestCanonicalKey:
    def test_commuted_choice(self):
        assert canonical_key(f("p?&q")) == canonical_key(f("q?&p"))

    def test_impl_is_ordered(self):
        assert canonical_key(f("p->q")) != canonical_key(f("q->p"))

    def test_commuted_inside_context(self):
        assert canonical_key(f("((p?&q)&(p?&q))->p")) == \
            canonical_key(f("((p?&q)&(q?&p))->p"))

    def test_distinct_kinds(self):
        assert canonical_key(f("p&q")) != canonical_key(f("p?&q"))
        assert canonical_key(f("p|q")) != canonical_key(f("p?|q"))

    def test_constants(self):
        assert canonical_key(f("T")) != canonical_key(f("F"))
        assert canonical_key(f("T")) != canonical_key(f("t"))


class TestIsomorphic:
    def test_modes(self):
        assert isomorphic(f("p?&q"), f("q?&p"), "iso")
        assert not isomorphic(f("p?&q"), f("q?&p"), "strict")

    def test_reflexive_both_modes(self):
        g = f("((p?&q)&(q?&p))->p")
        assert isomorphic(g, g, "iso")
        assert isomorphic(g, g, "strict")

    def test_distinct_atoms(self):
        assert not isomorphic(f("p"), f("q"), "iso")

    def test_agrees_with_permutation_search(self):
        rng = random.Random(11)
        positives = negatives = 0
        for _ in range(400):
            a = random_formula(rng, depth=3)
            if rng.random() < 0.5:
                b = shuffled_commutative(rng, a)
            else:
                b = random_formula(rng, depth=3)
            expected = iso_by_permutation_search(a, b)
            assert isomorphic(a, b, "iso") == expected
            positives += expected
            negatives += not expected
        assert positives > 50 and negatives > 50

    def test_equivalence_relation(self):
        rng = random.Random(12)
        for _ in range(150):
            a = random_formula(rng, depth=3)
            b = shuffled_commutative(rng, a)
            c = shuffled_commutative(rng, b)
            assert isomorphic(a, a)
            assert isomorphic(a, b) == isomorphic(b, a)
            if isomorphic(a, b) and isomorphic(b, c):
                assert isomorphic(a, c)


class TestWitness:
    def test_root_swap(self):
        w = witness(f("p?&q"), f("q?&p"))
        assert w.perms[()] == (2, 1)
        assert w.verify()

    def test_identity(self):
        g = f("((p?&q)&(p?&q))->p")
        w = witness(g, g)
        assert all(perm == tuple(range(1, len(perm) + 1))
                   for perm in w.perms.values())
        assert w.verify()

    def test_single_swap_deep(self):
        w = witness(f("((p?&q)&(p?&q))->p"), f("((p?&q)&(q?&p))->p"))
        non_identity = {path: perm for path, perm in w.perms.items()
                        if perm != tuple(range(1, len(perm) + 1))}
        assert non_identity == {(1, 2): (2, 1)}
        assert w.verify()

    def test_not_isomorphic(self):
        with pytest.raises(NotIsomorphic):
            witness(f("p"), f("q"))

    def test_soundness_on_random_pairs(self):
        rng = random.Random(13)
        for _ in range(300):
            a = random_formula(rng, depth=4)
            b = shuffled_commutative(rng, a)
            w = witness(a, b)
            assert w.apply() == b

    def test_deterministic(self):
        rng = random.Random(14)
        for _ in range(100):
            a = random_formula(rng, depth=4)
            b = shuffled_commutative(rng, a)
            assert witness(a, b).perms == witness(a, b).perms


class TestRemap:
    def test_identity(self):
        g = f("(p?&q)->r")
        w = identity_witness(g)
        assert w.remap((1,), 2) == ((1,), 2)

    def test_root_swap(self):
        w = witness(f("p?&q"), f("q?&p"))
        assert remap_move(w, (), 1) == ((), 2)
        assert remap_move(w, (), 2) == ((), 1)

    def test_stored_machine_choice_remaps_back(self):
        # Proof side q?&p at path 1.2 vs play side p?&q: component 2 on the
        # proof side is the play side's component 1.
        play = f("((p?&q)&(p?&q))->p")
        proof = f("((p?&q)&(q?&p))->p")
        back = witness(play, proof).inverse()
        assert back.remap((1, 2), 2) == ((1, 2), 1)

    def test_out_of_domain(self):
        w = identity_witness(f("p?&q"))
        with pytest.raises(NotIsomorphic):
            w.remap((3,), 1)

    def test_legality_of_remapped_moves(self):
        rng = random.Random(15)
        checked = 0
        while checked < 200:
            a = random_formula(rng, depth=4)
            choices = [o for o in surface_occurrences(a)
                       if isinstance(o.subformula, (Cand, Cor))]
            if not choices:
                continue
            checked += 1
            b = shuffled_commutative(rng, a)
            w = witness(a, b)
            occ = rng.choice(choices)
            i = rng.randrange(1, len(children(occ.subformula)) + 1)
            tpath, ti = w.remap(occ.path, i)
            target_occs = {o.path: o for o in surface_occurrences(b)}
            target = target_occs[tpath]
            assert type(target.subformula) is type(occ.subformula)
            assert isomorphic(children(occ.subformula)[i - 1],
                              children(target.subformula)[ti - 1])


class TestComposeInverse:
    def test_compose_chain(self):
        rng = random.Random(16)
        for _ in range(150):
            a = random_formula(rng, depth=4)
            b = shuffled_commutative(rng, a)
            c = shuffled_commutative(rng, b)
            w = witness(a, b).compose(witness(b, c))
            assert w.source == a and w.target == c
            assert w.verify()

    def test_inverse_round_trip(self):
        rng = random.Random(17)
        for _ in range(150):
            a = random_formula(rng, depth=4)
            b = shuffled_commutative(rng, a)
            w = witness(a, b)
            back = w.inverse()
            assert back.source == b and back.target == a
            assert back.verify()
            both = w.compose(back)
            assert both.apply() == a
