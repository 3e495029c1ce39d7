import pytest

from scrollunproj import (
    GroebnerBudgetExceeded,
    IdealPresentation,
    contains,
    eliminate,
    groebner,
    hilbert_function,
    ideal_equal,
    krull_dimension,
    normal_form,
    polynomial_ring,
)
from scrollunproj.ideal import (
    UnitIdealError,
    contains_ideal,
    hilbert_function_linear_algebra,
)
from scrollunproj.linalg import determinant, nullspace, rank
from scrollunproj.poly import GF, QQ, LEX

R = polynomial_ring(["x", "y", "z", "w"])


def ideal(*texts, ring=R):
    return IdealPresentation(ring, [ring.parse(t) for t in texts])


def twisted_cubic():
    return ideal("x*z - y^2", "y*w - z^2", "x*w - y*z")


def test_reduced_basis_is_checked():
    gb = twisted_cubic().groebner()
    assert gb.check()
    assert len(gb) == 3


def test_lex_basis_of_a_point():
    S = polynomial_ring(["x", "y"], order=LEX)
    gb = groebner(ideal("x^2 - y", "y^2 - 1", ring=S))
    assert gb.check()
    assert [str(g) for g in gb.basis] == ["y^2 - 1", "x^2 - y"]


def test_membership_and_normal_form():
    I = twisted_cubic()
    gb = I.groebner()
    assert contains(gb, R.parse("x*(x*z - y^2) + w*(y*w - z^2)"))
    assert not contains(gb, R.parse("x*y"))
    assert normal_form(R.parse("y^2"), gb) == R.parse("x*z")


def test_ideal_equality_and_containment():
    I = twisted_cubic()
    J = ideal("x*z - y^2 + (x*w - y*z)", "y*w - z^2", "x*w - y*z")
    assert ideal_equal(I, J)
    assert contains_ideal(I, ideal("x*z - y^2"))
    assert not contains_ideal(ideal("x*z - y^2"), I)


def test_elimination_gives_implicit_equation():
    S = polynomial_ring(["t", "x", "y"])
    I = IdealPresentation(S, [S.parse("x - t^2"), S.parse("y - t^3")])
    E = eliminate(I, ["t"])
    assert E.ring.names == ("x", "y")
    assert ideal_equal(E, IdealPresentation(E.ring, [E.ring.parse("x^3 - y^2")]))


def test_krull_dimension():
    assert krull_dimension(twisted_cubic()) == 2
    assert krull_dimension(ideal("x", "y")) == 2
    assert krull_dimension(IdealPresentation(R, [])) == 4
    with pytest.raises(UnitIdealError):
        krull_dimension(ideal("x", "x - 1"))


def test_hilbert_function_matches_rank_oracle():
    I = twisted_cubic()
    assert list(hilbert_function(I, 6)) == [3 * d + 1 for d in range(7)]
    assert hilbert_function(I, 6) == hilbert_function_linear_algebra(I, 6)


def test_weighted_hilbert_function():
    S = polynomial_ring([("x", 1), ("y", 1), ("T", 2)])
    I = IdealPresentation(S, [S.parse("T*x - y^3")])
    assert hilbert_function(I, 5) == hilbert_function_linear_algebra(I, 5)


def test_hilbert_needs_homogeneous_generators():
    with pytest.raises(ValueError):
        hilbert_function(ideal("x - 1"), 2)


def test_step_budget_raises(monkeypatch):
    I = ideal("x^3 - y*z*w", "y^3 - x*z*w", "z^3 - x*y*w", "x*y - z*w")
    with pytest.raises(GroebnerBudgetExceeded):
        groebner(I, max_steps=2)
    monkeypatch.setenv("SCROLLUNPROJ_GB_MAX_STEPS", "2")
    with pytest.raises(GroebnerBudgetExceeded):
        groebner(I)


def test_results_agree_across_fields():
    Ip = twisted_cubic().change_ring(R.with_field(GF(32003)))
    assert krull_dimension(Ip) == 2
    assert hilbert_function(Ip, 4) == hilbert_function(twisted_cubic(), 4)


def test_linear_algebra_helpers():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 1}], QQ) == 2
    assert determinant([[1, 2], [3, 4]], QQ) == -2
    kernel = nullspace([{0: 1}, {0: 2}, {1: 1}], QQ)
    assert len(kernel) == 1
    assert determinant([[1, 2], [3, 4]], GF(5)) == 3
