"""Finite-range endomorphisms acting on points of every rank at once."""

import random
from fractions import Fraction

import pytest

import support
from grasskit import (
    DomainMismatch,
    FiniteRangeEndo,
    NonCanonicalRank,
    NotOdd,
    QPoint,
    RankMismatch,
    SuperDomainSpec,
    act,
    apply_hom,
    classes_equal,
    compose_hom,
    endo_compose,
    eval_superfunction,
    generator,
    include_rank,
    induced_point_map,
    monomial_basis,
    monomial_element,
    normalize_class,
    projection_endo,
    rank_reconstruction,
    scalar_element,
    zero,
)

F = Fraction


# ------------------------------------------------- endo basics

def test_as_hom_pads_with_zeros():
    endo = FiniteRangeEndo((generator(2, 2),), 2)
    hom = endo.as_hom(3)
    assert hom.images == (generator(2, 2), zero(2), zero(2))


def test_as_hom_restricts_below_support():
    endo = FiniteRangeEndo((generator(1, 1), generator(1, 1)), 1)
    hom = endo.as_hom(1)
    assert hom.images == (generator(1, 1),)


def test_endo_validation():
    with pytest.raises(NotOdd):
        FiniteRangeEndo((monomial_element(2, [1, 2]),), 2)
    with pytest.raises(RankMismatch):
        FiniteRangeEndo((generator(3, 1),), 2)
    with pytest.raises(NonCanonicalRank):
        FiniteRangeEndo((), -1)


def test_with_range_grows_only():
    endo = FiniteRangeEndo((generator(1, 1),), 1)
    grown = endo.with_range(3)
    assert grown.range_rank == 3
    assert grown.images == (generator(3, 1),)
    with pytest.raises(RankMismatch):
        grown.with_range(1)


def test_endo_compose_matches_hom_composition():
    rng = random.Random(501)
    for _ in range(50):
        inner = support.random_endo(rng, rng.randint(0, 3), rng.randint(0, 4))
        outer = support.random_endo(rng, rng.randint(0, 3), rng.randint(0, 4))
        both = endo_compose(outer, inner)
        source = rng.randint(0, 4)
        assert both.support == inner.support
        composed = compose_hom(
            outer.as_hom(inner.range_rank), inner.as_hom(source)
        )
        for m in monomial_basis(source):
            assert apply_hom(both.as_hom(source), m) == apply_hom(composed, m)


def test_projection_endo_fixes_low_generators():
    proj = projection_endo(2)
    assert proj.images == (generator(2, 1), generator(2, 2))
    hom = proj.as_hom(4)
    assert apply_hom(hom, generator(4, 2)) == generator(2, 2)
    assert apply_hom(hom, generator(4, 3)).is_zero


# ------------------------------------------------- classes

def test_normalize_strips_unused_generators():
    spec = SuperDomainSpec(1, 1)
    point = QPoint(
        3,
        (scalar_element(3, 2),),
        (generator(3, 1),),
    )
    cls = normalize_class(point)
    assert cls.representative.rank == 1
    assert cls.domain == spec
    assert cls.representative.odds == (generator(1, 1),)


def test_normalize_is_idempotent():
    rng = random.Random(502)
    for _ in range(50):
        spec = SuperDomainSpec(rng.randint(0, 2), rng.randint(0, 2))
        cls = support.random_limit_class(rng, spec)
        again = normalize_class(cls.representative, cls.domain)
        assert again == cls


def test_classes_equal_across_rank_presentations():
    spec = SuperDomainSpec(0, 1)
    low = QPoint(1, (), (generator(1, 1),))
    high = QPoint(4, (), (include_rank(generator(1, 1), 4),))
    assert classes_equal(normalize_class(low), normalize_class(high))
    other = QPoint(4, (), (generator(4, 2),))
    assert not classes_equal(normalize_class(low), normalize_class(other))


def test_classes_equal_rejects_mismatched_domains():
    a = normalize_class(QPoint(0, (scalar_element(0, 1),), ()))
    b = normalize_class(QPoint(0, (), (zero(0),)))
    with pytest.raises(DomainMismatch):
        classes_equal(a, b)


def test_limit_point_text_and_json():
    cls = normalize_class(QPoint(2, (), (generator(2, 2),)))
    assert cls.to_text() == "q=2: xi2"
    doc = cls.to_json()
    assert doc["domain"] == {"even_dim": 0, "odd_dim": 1}
    assert doc["representative"]["q"] == 2


# ------------------------------------------------- the action

def test_action_law():
    rng = random.Random(503)
    for _ in range(60):
        spec = SuperDomainSpec(rng.randint(0, 2), rng.randint(0, 2))
        g = support.random_endo(rng, rng.randint(0, 4), rng.randint(0, 5))
        h = support.random_endo(rng, rng.randint(0, 4), rng.randint(0, 5))
        cls = support.random_limit_class(rng, spec)
        assert classes_equal(
            act(endo_compose(g, h), cls), act(g, act(h, cls))
        )


def test_projection_retracts_low_rank_classes():
    rng = random.Random(504)
    for _ in range(40):
        spec = SuperDomainSpec(rng.randint(0, 2), rng.randint(0, 2))
        cls = support.random_limit_class(rng, spec, max_rank=4)
        n = cls.representative.rank + rng.randint(0, 2)
        assert classes_equal(act(projection_endo(n), cls), cls)


def test_action_ignores_range_padding():
    rng = random.Random(505)
    for _ in range(40):
        spec = SuperDomainSpec(rng.randint(0, 2), rng.randint(0, 2))
        g = support.random_endo(rng, rng.randint(0, 4), rng.randint(0, 4))
        cls = support.random_limit_class(rng, spec)
        padded = g.with_range(g.range_rank + rng.randint(1, 3))
        assert classes_equal(act(g, cls), act(padded, cls))


def test_action_example_projects_to_rank_zero():
    # the image lands on generators the projection kills, so the class
    # collapses to its body
    spec = SuperDomainSpec(1, 1)
    point = QPoint(
        2,
        (scalar_element(2, 2) + monomial_element(2, [1, 2]),),
        (generator(2, 1),),
    )
    killer = FiniteRangeEndo((zero(0), zero(0)), 0)
    result = act(killer, normalize_class(point))
    assert result.representative.rank == 0
    assert result.representative.evens == (scalar_element(0, 2),)
    assert result.representative.odds == (zero(0),)


def test_action_equivariant_with_evaluation():
    rng = random.Random(506)
    for _ in range(40):
        spec = SuperDomainSpec(rng.randint(0, 2), rng.randint(0, 2))
        f = support.random_superfunction(rng, spec)
        point = support.random_point(rng, spec, rng.randint(0, 4))
        g = support.random_endo(rng, rng.randint(0, 4), rng.randint(0, 4))
        hom = g.as_hom(point.rank)
        assert eval_superfunction(f, induced_point_map(hom, point)) == (
            apply_hom(hom, eval_superfunction(f, point))
        )


# ------------------------------------------------- reconstruction

def test_rank_reconstruction_passes_on_random_sample():
    rng = random.Random(507)
    spec = SuperDomainSpec(1, 1)
    classes = [support.random_limit_class(rng, spec) for _ in range(40)]
    for n in (0, 2, 5):
        report = rank_reconstruction(spec, n, classes)
        assert report.ok
        assert report.checked == len(classes)
        assert report.rank_violations == ()
        assert report.fixed_point_mismatches == ()


def test_rank_reconstruction_rejects_foreign_domain():
    spec = SuperDomainSpec(1, 1)
    stray = support.random_limit_class(random.Random(508), SuperDomainSpec(2, 0))
    with pytest.raises(DomainMismatch):
        rank_reconstruction(spec, 1, [stray])


def test_rank_reconstruction_rejects_negative_rank():
    with pytest.raises(NonCanonicalRank):
        rank_reconstruction(SuperDomainSpec(0, 1), -1, [])


def test_rank_reconstruction_json():
    spec = SuperDomainSpec(0, 1)
    report = rank_reconstruction(spec, 1, [])
    assert report.to_json() == {
        "n": 1,
        "checked": 0,
        "rank_violations": [],
        "fixed_point_mismatches": [],
        "ok": True,
    }


def test_endo_text_round_shape():
    endo = FiniteRangeEndo(
        (monomial_element(3, [1, 2, 3]), zero(3)), 3
    )
    assert endo.to_text() == "xi1=xi1*xi2*xi3; xi2=0"
    doc = endo.to_json()
    assert doc["range_rank"] == 3
    assert len(doc["images"]) == 2
