import random

import pytest

from scrollunproj import IdealPresentation, ideal_equal, krull_dimension
from scrollunproj.poly import GF
from scrollunproj.scroll import build_scroll
from scrollunproj.unprojection import (
    NOT_A_DOMAIN,
    NotADomainError,
    build_unprojection,
    classify_elementary,
    defining_ideal,
    f_from_divisor,
    family_scan,
    localization_witness,
    normalize_f,
    regular_sequence_check,
    target_scroll_table,
    hilbert_regression,
)
from scrollunproj.verify import random_lemma_pair


def test_example_one_one():
    sd = build_scroll(1, 1)
    u = build_unprojection(sd, "x11")
    assert u.k == 1
    assert u.ring.names[-1] == "T"
    assert [str(g) for g in u.Q2_minors.generators] == [
        "-x01*x10 + x00*x11",
        "-x01*x11 + x00*T",
        "-x11^2 + x10*T",
    ]
    assert u.presentations_equal()
    assert u.codimension() == 2


def test_weight_of_T_is_degree_of_f():
    sd = build_scroll(1, 2)
    u = build_unprojection(sd, "x12^2")
    assert u.ring.weights[u.ring.index("T")] == 2
    assert len(u.Q2_minors.generators) == 6
    assert all(g.is_homogeneous() for g in u.Q2_def.generators)


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_presentations_and_dimension(m, n, k):
    sd = build_scroll(m, n)
    for f in (sd.x0m**k, sd.x1n**k, (sd.x0m + sd.x1n) ** k):
        u = build_unprojection(sd, f)
        assert u.presentations_equal()
        assert krull_dimension(u.Q2_minors) == 3
        assert localization_witness(u)
        assert regular_sequence_check(sd, f)


@pytest.mark.parametrize("f", ["x00", "x10*x11", "x00 + x10"])
def test_f_in_I_is_not_a_domain(f):
    sd = build_scroll(1, 1)
    with pytest.raises(NotADomainError) as info:
        build_unprojection(sd, f)
    assert NOT_A_DOMAIN in str(info.value)
    assert normalize_f(sd, sd.ring.parse(f)).warning == NOT_A_DOMAIN


@pytest.mark.parametrize("f", ["0", "x11 + 1", "x00 + x11^2"])
def test_rejects_non_homogeneous_or_zero(f):
    with pytest.raises(ValueError):
        build_unprojection(build_scroll(1, 1), f)


def test_normalisation_substitution_direction():
    sd = build_scroll(2, 2)
    f = sd.ring.parse("x02^2 + x00*x11 + x12*x10")
    norm = normalize_f(sd, f)
    assert str(norm.f_prime) == "x02^2"
    R2 = build_unprojection(sd, f).ring
    moved = IdealPresentation(R2, [norm.subst(g) for g in defining_ideal(sd, norm.f_prime, R2).generators])
    assert ideal_equal(moved, defining_ideal(sd, f, R2))


def test_random_lemma_pairs_small():
    rng = random.Random(7)
    sd = build_scroll(1, 2)
    for k in (1, 2):
        for _ in range(3):
            fp, i = random_lemma_pair(sd, k, rng)
            u = build_unprojection(sd, fp + i)
            R2 = u.ring
            moved = IdealPresentation(R2, [u.normalization.subst(g) for g in defining_ideal(sd, fp, R2).generators])
            assert ideal_equal(moved, defining_ideal(sd, fp + i, R2))


def test_f_from_divisor():
    sd = build_scroll(1, 2)
    assert f_from_divisor(sd, [((0, 1), 1)]) == -sd.x1n
    assert f_from_divisor(sd, [((1, 0), 2)]) == sd.x0m**2
    assert f_from_divisor(sd, [((1, 1), 1), ((1, -1), 1)]) == sd.x0m**2 - sd.x1n**2
    with pytest.raises(ValueError):
        f_from_divisor(sd, [((1, 1), 1), ((2, 2), 1)])
    with pytest.raises(ValueError):
        f_from_divisor(sd, [((0, 0), 1)])


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)])
def test_classification(m, n):
    sd = build_scroll(m, n)
    rows = family_scan(sd, [(0, 1), (1, 0), (1, 1), (1, -1), (2, 1)])
    assert rows[0].target == (m, n + 1)
    assert all(r.target == (m + 1, n) for r in rows[1:])
    assert all(r.verified and r.determinant for r in rows)
    assert sum(1 for r in rows if r.signed_index == n - m + 1) == 1


def test_classification_tags():
    c = classify_elementary(build_scroll(1, 2), (0, 1))
    assert c.to_json()["tag"] == "F(1,3)"
    assert c.abstract == "F_2"
    c = classify_elementary(build_scroll(2, 2), (1, 1))
    assert c.tag == "F(3,2)" and c.abstract == "F_1"


def test_classification_over_prime_field():
    c = classify_elementary(build_scroll(1, 2, GF(32003)), (2, 1))
    assert c.verified and c.target == (2, 2)


def test_k1_hilbert_matches_target_scroll():
    sd = build_scroll(1, 2)
    u = build_unprojection(sd, sd.x0m + sd.x1n)
    assert hilbert_regression(u, 5) == target_scroll_table(u, 5)
    with pytest.raises(ValueError):
        target_scroll_table(build_unprojection(sd, "x12^2"), 3)


def test_normalise_linear_example():
    sd = build_scroll(1, 2)
    norm = normalize_f(sd, sd.ring.parse("x01 + x00"))
    assert str(norm.f_prime) == "x01"
    assert str(norm.subst.image("T")) == "-x01 + T"
    assert normalize_f(sd, sd.x1n).i.is_zero()
