import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecyclic.cocyclic import (
    ChainTensor,
    CocyclicModule,
    LevelCapError,
    NotConilpotentError,
    antisym_chain_map,
    bB_relations,
    check_coassociative,
    check_counital,
    check_ug_ayd_generators,
    check_ug_stability,
    cocyclic_relations,
    extend_coaction,
    regular_coaction_restriction,
    restrict_coaction,
)
from liecyclic.lie import abelian, aff1, heisenberg, sl2
from liecyclic.linalg import Matrix
from liecyclic.pbw import PBW, tensor_mul
from liecyclic.registry import module_from_words, stable_weil
from liecyclic.sayd import ActionMatrices, CoactionMatrices, SaydModule, sl2_simple2, with_zero_coaction
from liecyclic.weil import build_truncated_weil

words = st.lists(st.integers(0, 2), max_size=5)


@settings(max_examples=80, deadline=None, derandomize=True)
@given(words, words)
def test_multiplication_is_associative_on_words(w1, w2):
    pbw = PBW(sl2())
    a, b = pbw.normalize(w1), pbw.normalize(w2)
    assert pbw.mul(a, b) == pbw.normalize(list(w1) + list(w2))


def test_pbw_relations_hold():
    for lie in (sl2(), heisenberg(), aff1()):
        pbw = PBW(lie)
        for i in range(lie.dim):
            for j in range(lie.dim):
                br = {pbw.unit_exp(k): Fraction(v) for k, v in lie.bracket(i, j).items()}
                assert pbw.bracket(pbw.gen(i), pbw.gen(j)) == br


def test_confluence_on_heisenberg():
    pbw = PBW(heisenberg())
    rng = random.Random(1)
    for _ in range(50):
        w = pbw.random_word(rng, 6)
        assert pbw.normalize(w) == pbw.rewrite_word(w, rng)


def test_coproduct_is_algebra_map():
    pbw = PBW(sl2())
    a, b = pbw.normalize([1, 0]), pbw.normalize([2, 1])
    lhs = pbw.coproduct(pbw.mul(a, b))
    rhs = tensor_mul(pbw, pbw.coproduct(a), pbw.coproduct(b))
    assert lhs == rhs


def test_antipode_is_antimultiplicative():
    pbw = PBW(sl2())
    a, b = pbw.normalize([0, 2]), pbw.normalize([1])
    assert pbw.antipode(pbw.mul(a, b)) == pbw.mul(pbw.antipode(b), pbw.antipode(a))


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_extension_properties(degree):
    mod = build_truncated_weil(sl2(), degree)
    pbw = PBW(sl2())
    ug = extend_coaction(mod.coaction, pbw)
    assert check_counital(ug, pbw)
    assert check_coassociative(ug, pbw)
    assert check_ug_ayd_generators(mod, ug, pbw)
    assert check_ug_stability(mod, ug, pbw)
    assert restrict_coaction(ug, sl2(), pbw=pbw).mats == mod.coaction.mats


def test_pbw_projection_is_not_a_left_inverse():
    mod = build_truncated_weil(sl2(), 2)
    pbw = PBW(sl2())
    ug = extend_coaction(mod.coaction, pbw)
    assert restrict_coaction(ug, sl2(), projection="pbw", pbw=pbw).mats != mod.coaction.mats


def test_symmetric_projection_of_regular_coaction():
    pbw = PBW(sl2())
    terms = regular_coaction_restriction(pbw, {(1, 1, 1): Fraction(1)}, projection="symmetric")
    assert len(terms) == 3
    assert any(len(u) > 1 for _, u in terms)


def test_non_conilpotent_coaction_refused():
    lie = abelian(1)
    mod = SaydModule(ActionMatrices(lie, (Matrix.zeros(1),), 1), CoactionMatrices(lie, (Matrix.identity(1),), 1))
    with pytest.raises(NotConilpotentError):
        CocyclicModule(mod)


def test_level_cap():
    cm = CocyclicModule(build_truncated_weil(sl2(), 1), max_level=1)
    x = cm.random_tensor(2, random.Random(0))
    with pytest.raises(LevelCapError):
        cm.b(cm.b(x))


def test_chain_tensor_arithmetic():
    x = ChainTensor(1, {(0, ((1, 0, 0),)): Fraction(2)})
    assert (x - x).is_zero()
    assert x.scale(Fraction(1, 2)) + x.scale(Fraction(1, 2)) == x


@pytest.mark.parametrize(
    "mod",
    [
        build_truncated_weil(heisenberg(), 1),
        stable_weil(aff1(), 2),
        with_zero_coaction(sl2_simple2()),
    ],
    ids=["heisenberg-weil2", "aff1-weil2-delta", "sl2-simple2"],
)
def test_cocyclic_relations_other_coefficients(mod):
    cm = CocyclicModule(mod, max_level=3)
    rng = random.Random(5)
    for q in (1, 2):
        for _ in range(4):
            x = cm.random_tensor(q, rng)
            assert all(cocyclic_relations(cm, x).values())
            assert all(bB_relations(cm, x).values())


def test_literal_boundary_without_projection_fails_on_unnormalized_tensors():
    cm = CocyclicModule(build_truncated_weil(sl2(), 1), max_level=4)
    rng = random.Random(3)
    failures = 0
    for _ in range(5):
        x = cm.random_tensor(3, rng)
        if not cm.B(cm.B(x, normalized_form=True), normalized_form=True).is_zero():
            failures += 1
        assert cm.B(cm.B(x)).is_zero()
    assert failures > 0


def test_antisymmetrization_trivial_modules():
    for mod in (module_from_words(sl2(), ["trivial", "2"]), module_from_words(heisenberg(), ["coadjoint"])):
        rep = antisym_chain_map(CocyclicModule(mod, max_level=4))
        assert rep.ok
        assert all(rep.unnormalized_factor.values())


def test_antisymmetrization_is_not_a_chain_map_with_koszul_coaction():
    rep = antisym_chain_map(CocyclicModule(build_truncated_weil(sl2(), 1), max_level=4))
    assert not rep.ok
