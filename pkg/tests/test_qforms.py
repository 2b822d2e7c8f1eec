from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from huberkit.numerics import DomainError, fixed
from huberkit.qforms import (
    Matrix2, PellSolution, QuadForm, cycle, form_to_matrix, fundamental_unit,
    is_discriminant, is_reduced, matrix_norm, narrow_class_number, pell4,
    reduced_forms, rho,
)

from oracles import brute_class_number, brute_pell, brute_pell_minus

DISCS = [d for d in range(5, 500) if is_discriminant(d)]


def test_is_discriminant():
    assert is_discriminant(5)
    assert not is_discriminant(4)
    assert not is_discriminant(7)
    assert not is_discriminant(0) and not is_discriminant(-3)
    assert [d for d in range(1, 30) if is_discriminant(d)] == [5, 8, 12, 13, 17, 20, 21, 24, 28, 29]


def test_pell_examples():
    assert pell4(5) == PellSolution(5, 3, 1)
    assert pell4(12) == PellSolution(12, 4, 1)
    assert pell4(8) == PellSolution(8, 6, 2)


@pytest.mark.parametrize("d", [4, 7, 9, 0, -5])
def test_pell_rejects_non_discriminants(d):
    with pytest.raises(DomainError):
        pell4(d)
    with pytest.raises(DomainError):
        fundamental_unit(d)


def test_pell_agrees_with_linear_search():
    missing = 0
    for d in DISCS:
        ref = brute_pell(d, cap=200_000)
        p = pell4(d)
        assert p.t * p.t - d * p.u * p.u == 4
        if ref is None:
            # the search gave up, so the true u is past the cap
            assert p.u >= 200_000
            missing += 1
        else:
            assert (p.t, p.u) == ref
    assert missing < len(DISCS) // 5


def test_pell_bound_cutoff():
    eps5 = (3 + 5 ** 0.5) / 2
    assert pell4(5, eps_bound=eps5 + 1e-9) == PellSolution(5, 3, 1)
    assert pell4(5, eps_bound=eps5 - 1e-9) is None
    # d = 409 has a large unit; a small bound stops early
    assert pell4(409, eps_bound=1000) is None
    assert pell4(409, eps_bound=10 ** 60) is not None


def test_fundamental_unit_examples():
    u5, u12, u8 = fundamental_unit(5), fundamental_unit(12), fundamental_unit(8)
    assert (u5.t, u5.u, u5.unit_norm) == (3, 1, -1)
    assert (u12.t, u12.u, u12.unit_norm) == (4, 1, 1)
    assert (u8.t, u8.u, u8.unit_norm) == (6, 2, -1)
    assert fixed(u5.norm(), 2) == "6.85"
    assert fixed(u12.norm(), 2) == "13.93"
    assert fixed(u8.norm(), 2) == "33.97"


def test_unit_norm_agrees_with_search():
    # a norm -1 solution, if any, has u below that of the norm +1 one
    for d in DISCS:
        fu = fundamental_unit(d)
        if fu.u <= 20_000:
            assert (fu.unit_norm == -1) == brute_pell_minus(d, fu.u)


def test_is_reduced_examples():
    assert is_reduced(QuadForm(1, 1, -1))
    assert is_reduced(QuadForm(1, 2, -2))
    assert is_reduced(QuadForm(-1, 1, 1))
    assert not is_reduced(QuadForm(1, -1, -1))


def test_rho_cycle_d5():
    forms = reduced_forms(5)
    assert QuadForm(1, 1, -1) in forms
    cyc = cycle(QuadForm(1, 1, -1))
    assert len(cyc) in (1, 2)
    assert set(cyc) <= set(forms)
    assert rho(rho(QuadForm(1, 1, -1))) == QuadForm(1, 1, -1)


def test_rho_rejects_degenerate():
    with pytest.raises(DomainError):
        rho(QuadForm(1, 1, 0))


@pytest.mark.parametrize("d,h", [(5, 1), (12, 2), (396, 8), (8, 1), (21, 2), (60, 4)])
def test_narrow_class_number_examples(d, h):
    assert narrow_class_number(d)[0] == h


def test_class_number_agrees_with_union_find_oracle():
    for d in DISCS:
        assert narrow_class_number(d)[0] == brute_class_number(d), d


def test_wide_class_number_relation():
    # h+ = h when a unit of norm -1 exists, and 2h otherwise
    for d in DISCS[:80]:
        h_plus = narrow_class_number(d)[0]
        h = brute_class_number(d, wide=True)
        assert h_plus == h * (1 if fundamental_unit(d).unit_norm == -1 else 2)


def test_reduced_forms_are_reduced_and_primitive():
    for d in DISCS[:100]:
        for f in reduced_forms(d):
            assert f.discriminant == d and f.is_primitive and is_reduced(f)
            g = rho(f)
            assert g.discriminant == d and is_reduced(g)


def test_representatives_are_cycle_minima():
    h, reps = narrow_class_number(396)
    assert reps == sorted(reps)
    for r in reps:
        assert r == min(cycle(r))


def test_form_to_matrix_example():
    m = form_to_matrix(QuadForm(1, 1, -1), PellSolution(5, 3, 1))
    assert m == Matrix2(1, 1, 1, 2)
    assert fixed(matrix_norm(m), 3) == "6.854"


def test_form_to_matrix_is_an_automorph():
    for d in DISCS[:120]:
        p = pell4(d)
        for f in narrow_class_number(d)[1]:
            m = form_to_matrix(f, p)
            assert m.det == 1 and m.trace == p.t
            assert f.act(m) == f


def test_form_to_matrix_rejects_mismatch():
    with pytest.raises(DomainError):
        form_to_matrix(QuadForm(1, 1, -1), PellSolution(12, 4, 1))


def test_matrix_norm_errors():
    with pytest.raises(DomainError):
        matrix_norm(Matrix2(1, 1, 0, 1))
    with pytest.raises(DomainError):
        matrix_norm(Matrix2(0, -1, 1, 0))
    assert matrix_norm(Matrix2(-1, -1, -1, -2)) == matrix_norm(Matrix2(1, 1, 1, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_matrix_arithmetic(a, b, c):
    if a == 0 or (1 + b * c) % a:
        return
    m = Matrix2(a, b, c, (1 + b * c) // a)
    assert m.det == 1
    assert m @ m.inverse() == Matrix2(1, 0, 0, 1)
    assert (m ** 3) == m @ m @ m
    f = QuadForm(1, 1, -1)
    assert f.act(m).discriminant == 5


def test_norm_is_eps_squared_via_trace():
    # the automorph of trace t has norm ((t + sqrt(t^2 - 4))/2)^2 = eps^2
    for d in (5, 13, 21, 96, 396):
        fu = fundamental_unit(d)
        m = form_to_matrix(narrow_class_number(d)[1][0], pell4(d))
        assert abs(matrix_norm(m) - fu.norm()) < 1e-30 * fu.norm()
        assert isqrt(fu.t * fu.t - 4) ** 2 <= fu.t * fu.t - 4
