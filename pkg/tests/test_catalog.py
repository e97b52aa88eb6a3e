import dataclasses
from fractions import Fraction

import pytest

from leibcoh.algebra import validate
from leibcoh.catalog import (
    CATALOG_NAMES,
    block_form,
    build,
    catalog,
    hvir_cocycles,
    loop_cocycle,
    named_cocycle,
    trace_form,
    virasoro_cocycle,
    w1inf_psi,
)
from leibcoh.cochain import is_alternating, is_cocycle
from leibcoh.cohomology import (
    cartan_koszul_h,
    central_extension,
    cohomology,
    invariant_forms,
    is_coboundary,
    map_g,
    rank_modulo_coboundaries,
)
from leibcoh.exceptions import CatalogError

WINDOWED = [
    ("witt", {"window": 3}),
    ("virasoro", {"window": 2}),
    ("hvir_base", {"window": 2}),
    ("hvir", {"window": 2}),
    ("diffops", {"window": 2, "order": 2}),
    ("block", {"window": 2}),
    ("virasoro_like", {"window": 2}),
    ("q_virasoro_like", {"window": 1, "q": "2"}),
    ("loop", {"window": 2, "simple": "sl2"}),
]


@pytest.mark.parametrize("name", ["sl2", "sl3", "abelian", "heisenberg3", "affine1"])
def test_finite_algebras_validate(name):
    g = catalog(name)
    report = validate(g)
    assert report.valid
    assert report.skipped == 0
    assert not g.windowed


@pytest.mark.parametrize("name, params", WINDOWED)
def test_windowed_algebras_validate(name, params):
    entry = build(name, **params)
    g = entry.algebra
    assert g.windowed
    assert g.grading is not None
    report = validate(g)
    assert report.valid
    assert report.window_relative
    assert entry.params == params


def test_catalog_names():
    assert "witt" in CATALOG_NAMES
    assert catalog("witt_window", window=1).dim == 3


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog("kac_moody")
    with pytest.raises(CatalogError):
        catalog("witt")
    with pytest.raises(CatalogError):
        catalog("abelian", dim=0)
    with pytest.raises(CatalogError):
        catalog("q_virasoro_like", window=1, q="1")
    with pytest.raises(CatalogError):
        virasoro_cocycle(catalog("sl2"))


def test_bracket_examples():
    witt = catalog("witt", window=2)
    assert witt.bracket(witt.index("L[1]"), witt.index("L[-1]")) == {witt.index("L[0]"): 2}
    q = catalog("q_virasoro_like", window=1, q="2")
    e11 = q.index("e[1;1]")
    assert q.bracket(q.index("e[1;0]"), q.index("e[0;1]")) == {e11: -1}
    loop = catalog("loop", window=2, simple="sl2")
    assert loop.bracket(loop.index("e[1]"), loop.index("f[-1]")) == {loop.index("h[0]"): 1}


def test_trace_form():
    form = trace_form("sl2")
    assert form.is_symmetric()
    assert form.is_invariant()
    with pytest.raises(CatalogError):
        trace_form("sl4")


def test_virasoro_cocycle():
    g = catalog("witt", window=6)
    alpha = virasoro_cocycle(g)
    assert alpha.value((g.index("L[2]"), g.index("L[-2]"))) == Fraction(1, 2)
    assert alpha.value((g.index("L[1]"), g.index("L[-1]"))) == 0
    assert is_cocycle(alpha)
    assert is_alternating(alpha)
    assert not is_coboundary(alpha)


def test_w1inf_psi():
    g = catalog("diffops", window=4, order=3)
    psi = w1inf_psi(g)
    for m in (1, 2):
        assert psi.value((g.index(f"t[{m}]D[0]"), g.index(f"t[{-m}]D[0]"))) == m
    assert is_cocycle(psi)


def test_hvir_triple_is_independent():
    g = catalog("hvir_base", window=5)
    triple = hvir_cocycles(g)
    assert all(is_cocycle(c) for c in triple)
    assert rank_modulo_coboundaries(list(triple)) == 3


@pytest.mark.parametrize("window", [3, 4])
def test_no_invariant_forms_on_windows(window):
    assert len(invariant_forms(catalog("witt", window=window))) == 0
    assert len(invariant_forms(catalog("hvir_base", window=window))) == 0


def test_block_obstruction():
    g = catalog("virasoro_like", window=3)
    form = block_form(g)
    assert form.is_symmetric()
    assert form.is_invariant()
    result = cartan_koszul_h(form, classify=False)
    assert not result.is_coboundary
    assert result.window_relative
    with pytest.raises(CatalogError):
        block_form(catalog("q_virasoro_like", window=1, q="2"))


def test_block_form_checks_invariance_not_name():
    q = catalog("q_virasoro_like", window=1, q="2")
    renamed = dataclasses.replace(q, name="block_window(1)")
    with pytest.raises(CatalogError):
        block_form(renamed)
    form = block_form(catalog("block", window=2, phi=(0, 2, -2, 0)))
    assert form.is_invariant()


def test_loop_cocycle_is_not_lie():
    g = catalog("loop", window=3, simple="sl2")
    f = loop_cocycle(g, shift=1)
    assert is_cocycle(f)
    assert not is_alternating(f)
    assert not map_g(f).is_zero()
    with pytest.raises(CatalogError):
        loop_cocycle(g, shift=0)


def test_named_cocycle():
    g = catalog("hvir_base", window=2)
    assert len(named_cocycle("hvir_triple", g)) == 3
    with pytest.raises(CatalogError):
        named_cocycle("unknown", g)


def test_extension_by_virasoro_cocycle():
    witt = catalog("witt", window=6)
    ext = central_extension(witt, virasoro_cocycle(witt), label="C")
    assert ext.is_lie
    assert ext.windowed
    assert ext.grading is not None
    assert validate(ext).valid
    c = ext.index("C")
    assert all(ext.bracket(c, j) == {} for j in range(ext.dim))
    assert ext.bracket(ext.index("L[2]"), ext.index("L[-2]"))[c] == Fraction(1, 2)


def test_virasoro_window_has_central_element():
    g = catalog("virasoro", window=3)
    assert "C" in g.basis
    assert validate(g).valid
    assert cohomology("leibniz", g, n=0).dim == 1
