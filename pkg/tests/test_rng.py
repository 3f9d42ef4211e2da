"""Determinism and labeled splitting of the random streams."""

from qclab.rng import Rng


def test_same_seed_same_sequence():
    a = Rng(123).random(16)
    b = Rng(123).random(16)
    assert (a == b).all()


def test_different_seeds_differ():
    assert not (Rng(1).random(16) == Rng(2).random(16)).all()


def test_children_independent_of_sibling_order():
    parent = Rng(7)
    first = parent.child("alpha").random(8)
    parent2 = Rng(7)
    _ = parent2.child("beta").random(8)  # spawn another sibling first
    second = parent2.child("alpha").random(8)
    assert (first == second).all()


def test_child_independent_of_parent_consumption():
    parent = Rng(7)
    _ = parent.random(100)
    assert (parent.child("x").random(4) == Rng(7).child("x").random(4)).all()


def test_label_paths_do_not_collide():
    parent = Rng(7)
    assert not (
        parent.child("ab").child("c").random(4) == parent.child("a").child("bc").random(4)
    ).all()


def test_bits_in_range():
    rng = Rng(5)
    values = [rng.bits(6) for _ in range(200)]
    assert all(0 <= v < 64 for v in values)
    assert len(set(values)) > 1
    assert rng.bits(0) == 0


def test_bits_wide_words():
    rng = Rng(5)
    v = rng.bits(128)
    assert 0 <= v < (1 << 128)


def test_bernoulli_extremes():
    rng = Rng(5)
    assert all(rng.bernoulli(1.0) for _ in range(10))
    assert not any(rng.bernoulli(0.0) for _ in range(10))
