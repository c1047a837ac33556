import pytest

from liecyclic.lie import abelian, aff1, heisenberg, modular_character, sl2
from liecyclic.linalg import Matrix
from liecyclic.registry import module_from_words, stable_weil
from liecyclic.sayd import (
    ActionMatrices,
    CoactionMatrices,
    SaydModule,
    ShapeError,
    adjoint_module,
    all_verdicts,
    check_ayd,
    check_comodule,
    check_module,
    coadjoint_module,
    combine,
    delta_twist,
    direct_sum,
    nilpotency_index,
    sl2_simple2,
    solve_ayd_linear,
    tensor_ayd,
    tilde_action,
    transport_basis,
    trivial_module,
    with_zero_coaction,
)
from liecyclic.weil import build_truncated_weil

import oracles


@pytest.mark.parametrize("lie", [sl2(), heisenberg(), aff1(), abelian(3)], ids=lambda l: l.name)
def test_standard_modules(lie):
    for action in (trivial_module(lie, 2), coadjoint_module(lie), adjoint_module(lie)):
        assert check_module(action).ok


def test_simple2_is_module_and_literal_transposes_are_not():
    assert check_module(sl2_simple2()).ok
    e = Matrix.from_rows([[0, 1], [0, 0]])
    f = Matrix.from_rows([[0, 0], [1, 0]])
    h = Matrix.from_rows([[1, 0], [0, -1]])
    literal = ActionMatrices(sl2(), (e.T, f.T, h.T), 2)
    assert not check_module(literal).ok
    # either sign, no nonzero coaction survives
    assert solve_ayd_linear(literal).dimension == 0


def test_weil_action_matches_reference_matrices():
    weil = build_truncated_weil(sl2(), 1)
    shown = [Matrix.from_rows(r) for r in oracles.reference_weil_action()]
    assert list(weil.B) == shown


def test_weil_is_sayd_on_unimodular_algebras():
    for lie in (sl2(), heisenberg(), abelian(3)):
        for degree in (0, 1, 2):
            assert all_verdicts(build_truncated_weil(lie, degree)).sayd


def test_weil_over_aff1_needs_a_twist():
    raw = build_truncated_weil(aff1(), 1)
    v = all_verdicts(raw)
    assert v.module and v.comodule and v.ayd and v.unimodular_stability
    assert not v.stability
    assert all_verdicts(stable_weil(aff1(), 2)).sayd


def test_shape_errors():
    lie = sl2()
    with pytest.raises(ShapeError):
        ActionMatrices(lie, (Matrix.zeros(2),) * 2, 2)
    with pytest.raises(ShapeError):
        SaydModule(trivial_module(lie, 2), CoactionMatrices(lie, (Matrix.zeros(3),) * 3, 3))


def test_comodule_checks():
    lie = abelian(2)
    a = Matrix.from_rows([[0, 1], [0, 0]])
    b = Matrix.from_rows([[0, 0], [1, 0]])
    rep = check_comodule(CoactionMatrices(lie, (a, b), 2))
    assert not rep.commuting
    assert nilpotency_index([a, a], 2) == 2
    assert nilpotency_index([Matrix.identity(2)], 2) is None


def test_tilde_action_is_module_iff_ayd_and_comodule():
    weil = build_truncated_weil(sl2(), 1)
    assert check_module(tilde_action(weil)).ok
    broken = SaydModule(weil.action, CoactionMatrices(sl2(), (weil.A[1], weil.A[0], weil.A[2]), 4))
    assert not check_ayd(broken).ok
    assert not check_module(tilde_action(broken)).ok


def test_solutions_all_satisfy_linear_conditions():
    weil = build_truncated_weil(sl2(), 1)
    sol = solve_ayd_linear(weil.action)
    for coeffs in ((1, 0), (0, 1), (2, -1)):
        mod = SaydModule(weil.action, CoactionMatrices(sl2(), combine(sol.basis, coeffs), 4))
        v = all_verdicts(mod)
        assert v.ayd and v.stability
        assert v.comodule == (coeffs[0] * coeffs[1] == 0)


def test_delta_twist_swaps_stability_flavours():
    raw = build_truncated_weil(aff1(), 1)
    twisted = delta_twist(raw, 1)
    v = all_verdicts(twisted)
    assert v.stability and not v.unimodular_stability
    assert delta_twist(twisted, -1).B == raw.B
    with pytest.raises(ValueError):
        delta_twist(raw, 2)


def test_tensor_and_direct_sum():
    lie = sl2()
    weil = build_truncated_weil(lie, 1)
    triv = with_zero_coaction(trivial_module(lie, 2))
    assert all_verdicts(tensor_ayd(weil, triv)).sayd
    assert check_module(direct_sum(sl2_simple2(), coadjoint_module(lie))).ok


def test_basis_change_preserves_verdicts():
    gamma = Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    for mod in (build_truncated_weil(sl2(), 1), build_truncated_weil(heisenberg(), 1)):
        moved = transport_basis(mod, gamma)
        assert all_verdicts(moved) == all_verdicts(mod)
    assert modular_character(transport_basis(stable_weil(aff1(), 2), Matrix.from_rows([[2, 0], [1, 1]])).lie)


def test_registry_names():
    lie = sl2()
    assert module_from_words(lie, ["weil", "--cap", "2"]).dim == 4
    assert module_from_words(lie, ["weil", "4"]).dim == 10
    with pytest.raises(KeyError):
        module_from_words(heisenberg(), ["simple2"])
    with pytest.raises(KeyError):
        module_from_words(lie, ["bogus"])
