import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrollunproj.lattice import (
    LatticeError,
    SingularityRecord,
    elementary_transformation,
    hirzebruch,
    horikawa_L,
    horikawa_numerology,
    intersect,
    lattice_tag_for_point,
    unprojection_chain,
)
from scrollunproj.scroll import build_scroll
from scrollunproj.unprojection import classify_elementary


def test_hirzebruch_form():
    for d in range(5):
        X = hirzebruch(d)
        assert X.delta0.square() == -d
        assert X.gamma.square() == 0
        assert intersect(X.delta0, X.gamma) == 1
        assert (X.delta0 + d * X.gamma).square() == d
    with pytest.raises(LatticeError):
        hirzebruch(-1)


@pytest.mark.parametrize("d", range(5))
def test_canonical_class(d):
    X = hirzebruch(d)
    K = X.canonical()
    assert K.square() == 8
    assert intersect(X.gamma, X.gamma + K) == -2
    assert intersect(X.delta0, X.delta0 + K) == -2


coeffs = st.lists(st.integers(-6, 6), min_size=4, max_size=4)


@given(coeffs, coeffs, coeffs, st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_bilinear_and_symmetric(a, b, c, t):
    X = hirzebruch(2).blow_up("E1").blow_up("E2", parent=0)
    A, B, C = X.cls(a), X.cls(b), X.cls(c)
    assert intersect(A, B) == intersect(B, A)
    assert intersect(A + t * B, C) == intersect(A, C) + t * intersect(B, C)


def test_blown_up_classes():
    X = hirzebruch(1).blow_up("Ex").blow_up("Ey", parent=0)
    assert X.E(0).square() == -1
    assert intersect(X.E(0), X.E(1)) == 0
    assert (X.E(0) - X.E(1)).square() == -2  # strict transform of the first curve
    K = X.canonical()
    assert K.square() == 6
    with pytest.raises(LatticeError):
        intersect(X.gamma, hirzebruch(1).gamma)


@pytest.mark.parametrize("k", range(1, 6))
def test_gamma_hat_square(k):
    assert unprojection_chain(hirzebruch(0), [k]).gamma_hat_sq == -k
    assert unprojection_chain(hirzebruch(3), [1] * k).gamma_hat_sq == -k


@pytest.mark.parametrize(
    "D,expected",
    [
        ([1], {"gamma_hat_sq": -1, "chains": [], "singularities": []}),
        ([2], {"gamma_hat_sq": -2, "chains": [[-2, -1]], "singularities": ["1/2(1,1)", "A1"]}),
        ([1, 1], {"gamma_hat_sq": -2, "chains": [], "singularities": ["1/2(1,1)"]}),
        ([3, 1], {"gamma_hat_sq": -4, "chains": [[-2, -2, -1]], "singularities": ["1/4(1,1)", "A2"]}),
    ],
)
def test_chain_recipe(D, expected):
    assert unprojection_chain(hirzebruch(1), D).to_json() == expected


def test_chain_bookkeeping():
    for D in ([1], [2, 1], [3, 2, 2], [1, 1, 1]):
        out = unprojection_chain(hirzebruch(2), D)
        assert out.blowups == sum(D)
        assert sum(1 for s in out.singularities if s.kind == "A") == sum(1 for k in D if k >= 2)
        for key, c in out.curves.items():
            if key.startswith("C"):
                assert intersect(c, out.gamma_hat) == 0


def test_chain_errors():
    with pytest.raises(LatticeError):
        unprojection_chain(hirzebruch(1), [])
    with pytest.raises(LatticeError):
        unprojection_chain(hirzebruch(1), [(1, True), (1, True)])
    with pytest.raises(LatticeError):
        unprojection_chain(hirzebruch(1), [0])


def test_singularity_types():
    a1 = SingularityRecord("A", 1)
    half = SingularityRecord("cyclic", 2)
    assert half.name == "1/2(1,1)" and a1.name == "A1"
    assert half.same_type(a1)
    assert not SingularityRecord("cyclic", 3).same_type(SingularityRecord("A", 2))


def test_elementary_transformation():
    assert elementary_transformation(2, True) == 3
    assert elementary_transformation(2, False) == 1
    assert elementary_transformation(1, False) == 0
    assert elementary_transformation(0, False) == 1
    for d in range(1, 6):
        assert elementary_transformation(elementary_transformation(d, True), False) == d
        assert elementary_transformation(elementary_transformation(d, False), True) == d


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)])
def test_lattice_matches_algebraic_classifier(m, n):
    sd = build_scroll(m, n)
    for p in [(0, 1), (1, 0), (1, 1), (2, 1)]:
        assert lattice_tag_for_point(m, n, p) == abs(classify_elementary(sd, p).signed_index)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (2, 4)])
def test_horikawa(m, n):
    rep = horikawa_numerology(m, n)
    assert rep.pg == m + n + 2
    assert rep.Ksq == 2 * rep.pg - 3 == rep.Ksq_from_degree
    for case in rep.cases:
        assert case.gamma_hat_sq == -2
        assert case.L_sq == m + n - 16
        assert case.K_dot_gamma_hat == 0


def test_horikawa_pairing_by_hand():
    # (D0 + (n-4)G - 2Ex - 2Ey).(G - Ex - Ey) = 1 + 0 + 2Ex^2 + 2Ey^2 = 1 - 2 - 2
    X = hirzebruch(1).blow_up("Ex").blow_up("Ey")
    L = horikawa_L(X, 3)
    gh = X.gamma - X.E(0) - X.E(1)
    assert intersect(L, gh) == -3
    assert horikawa_numerology(2, 3).cases[0].L_dot_gamma_hat == -3
    with pytest.raises(LatticeError):
        horikawa_numerology(3, 2)
