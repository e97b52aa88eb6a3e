import pytest

from leibcoh.algebra import (
    AlgebraPresentation,
    adjoint_module,
    dual_module,
    trivial_module,
)
from leibcoh.catalog import catalog
from leibcoh.cochain import (
    Cochain,
    CochainSpace,
    Theory,
    admissible_positions,
    ce_coboundary,
    coboundary,
    coboundary_of,
    is_alternating,
    is_cocycle,
    leibniz_coboundary,
    permutation_sign,
    skew_embedding,
)
from leibcoh.exceptions import ContractViolation, UnsupportedKindError

from .test_catalog import WINDOWED


def _leibniz_l2():
    return AlgebraPresentation.from_labels(
        "l2", "leibniz", ["x", "y"], {("y", "y"): {"x": 1}}
    )


def _modules(g):
    yield trivial_module(g)
    # adjoint and dual have the same size; larger algebras only run the dual
    if g.dim <= 4:
        yield adjoint_module(g)
    if g.is_lie:
        yield dual_module(g)


def test_theory_parse():
    assert Theory.parse("lie") is Theory.CHEVALLEY_EILENBERG
    assert Theory.parse("ce") is Theory.CHEVALLEY_EILENBERG
    assert Theory.parse("leibniz") is Theory.LEIBNIZ
    with pytest.raises(ContractViolation):
        Theory.parse("hochschild")


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1
    assert permutation_sign((0, 0, 1)) == 0


@pytest.mark.parametrize(
    "name, params",
    [
        ("sl2", {}),
        ("sl3", {}),
        ("abelian", {"dim": 3}),
        ("heisenberg3", {}),
        ("affine1", {}),
    ],
)
def test_square_zero_lie(name, params):
    g = catalog(name, **params)
    for module in _modules(g):
        for theory in Theory:
            for n in range(3):
                d0 = coboundary(theory, g, module, n)
                d1 = coboundary(theory, g, module, n + 1)
                assert (d1 @ d0).is_zero(), (theory, module.name, n)


def test_square_zero_leibniz():
    g = _leibniz_l2()
    for module in (trivial_module(g), adjoint_module(g)):
        for n in range(3):
            d0 = leibniz_coboundary(g, module, n)
            d1 = leibniz_coboundary(g, module, n + 1)
            assert (d1 @ d0).is_zero()


@pytest.mark.parametrize("name, params", WINDOWED + [("witt", {"window": 4})])
def test_square_zero_windowed(name, params):
    g = catalog(name, **params)
    theories = list(Theory) if g.is_lie else [Theory.LEIBNIZ]
    for theory in theories:
        for n in range(3):
            d0 = coboundary(theory, g, n=n)
            d1 = coboundary(theory, g, n=n + 1)
            assert (d1 @ d0).is_zero()


def test_windowed_admissibility():
    g = catalog("witt", window=2)
    space = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))
    admissible = admissible_positions(space)
    assert admissible is not None
    l1, l2 = g.index("L[1]"), g.index("L[2]")
    assert space.positions[(l1, l2)] not in admissible
    assert space.positions[(l1, l1)] in admissible
    assert admissible_positions(CochainSpace(Theory.LEIBNIZ, 2, catalog("sl2"), trivial_module(catalog("sl2")))) is None


@pytest.mark.parametrize("name", ["sl2", "heisenberg3"])
def test_skew_embedding_is_chain_map(name):
    g = catalog(name)
    for module in (trivial_module(g), adjoint_module(g)):
        for n in (1, 2):
            lhs = skew_embedding(g, module, n + 1) @ ce_coboundary(g, module, n)
            rhs = leibniz_coboundary(g, module, n) @ skew_embedding(g, module, n)
            assert lhs == rhs


def test_ce_needs_lie():
    g = _leibniz_l2()
    with pytest.raises(UnsupportedKindError):
        ce_coboundary(g, n=1)
    with pytest.raises(UnsupportedKindError):
        CochainSpace(Theory.CHEVALLEY_EILENBERG, 2, g, trivial_module(g))


def test_ce_cochain_value_is_signed():
    g = catalog("sl2")
    space = CochainSpace(Theory.CHEVALLEY_EILENBERG, 2, g, trivial_module(g))
    e, f = g.index("e"), g.index("f")
    a = Cochain(space, {space.index((e, f)): 3})
    assert a.value((e, f)) == 3
    assert a.value((f, e)) == -3
    assert a.value((e, e)) == 0


def test_from_function_and_cocycle():
    g = catalog("sl2")
    space = CochainSpace(Theory.LEIBNIZ, 1, g, trivial_module(g))
    # the zero 1-cochain is a cocycle, a nonzero one is not (sl2 is perfect)
    assert is_cocycle(Cochain(space))
    h = g.index("h")
    a = Cochain.from_function(space, lambda t: 1 if t == (h,) else 0)
    assert not is_cocycle(a)
    da = coboundary_of(a)
    assert da.degree == 2
    e, f = g.index("e"), g.index("f")
    # (da)(e, f) = -a([e, f]) = -a(h)
    assert da.value((e, f)) == -1


def test_is_alternating():
    g = catalog("abelian", dim=2)
    space = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))
    skew = Cochain(space, {space.index((0, 1)): 1, space.index((1, 0)): -1})
    sym = Cochain(space, {space.index((0, 1)): 1, space.index((1, 0)): 1})
    assert is_alternating(skew)
    assert not is_alternating(sym)


def test_weight_restriction():
    g = catalog("witt", window=2)
    full = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))
    block = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g), weight=(0,))
    assert block.dim == 5
    assert all(g.weight(t) == (0,) for t in block.tuples)
    l1, lm1, l2 = g.index("L[1]"), g.index("L[-1]"), g.index("L[2]")
    a = Cochain(full, {full.index((l1, lm1)): 1})
    assert a.project_to(block).value((l1, lm1)) == 1
    b = Cochain(full, {full.index((l1, l2)): 1})
    with pytest.raises(ContractViolation):
        b.project_to(block)
    with pytest.raises(ContractViolation):
        CochainSpace(Theory.LEIBNIZ, 2, catalog("sl2"), trivial_module(catalog("sl2")), weight=(0,))
