from fractions import Fraction

import pytest

from leibcoh.algebra import (
    OUT_OF_WINDOW,
    AlgebraPresentation,
    BilinearForm,
    adjoint_module,
    center,
    derived_subalgebra,
    dual_module,
    is_nondegenerate,
    killing_form,
    trivial_module,
    validate,
    validate_representation,
)
from leibcoh.catalog import catalog
from leibcoh.exceptions import (
    ContractViolation,
    GradingError,
    UnknownLabelError,
    UnsupportedKindError,
)


def _sl2():
    return AlgebraPresentation.from_labels(
        "sl2",
        "lie",
        ["e", "f", "h"],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
    )


def test_lie_brackets_are_normalized():
    g = _sl2()
    e, f, h = (g.index(x) for x in "efh")
    assert g.bracket(e, f) == {h: 1}
    assert g.bracket(f, e) == {h: -1}
    assert g.bracket(e, h) == {e: -2}
    assert g.bracket(h, e) == {e: 2}
    assert g.bracket(e, e) == {}


def test_lie_rejects_both_orientations():
    with pytest.raises(ContractViolation):
        AlgebraPresentation.from_labels(
            "bad", "lie", ["x", "y"], {("x", "y"): {"x": 1}, ("y", "x"): {"x": -1}}
        )


def test_unknown_label():
    with pytest.raises(UnknownLabelError):
        AlgebraPresentation.from_labels("bad", "lie", ["x"], {("x", "z"): {"x": 1}})


def test_out_of_window_needs_windowed():
    with pytest.raises(ContractViolation):
        AlgebraPresentation.from_labels("bad", "lie", ["x", "y"], {("x", "y"): OUT_OF_WINDOW})


def test_grading_must_be_additive():
    with pytest.raises(GradingError):
        AlgebraPresentation.from_labels(
            "bad",
            "lie",
            ["a", "b"],
            {("a", "b"): {"b": 1}},
            grading={"a": 1, "b": 1},
        )


def test_validate_sl2():
    report = validate(_sl2())
    assert report.valid
    assert report.skipped == 0
    assert report.checked > 27


def test_validate_reports_jacobi_failure():
    # [x,y] = z, [y,z] = x, [z,x] = x fails Jacobi
    g = AlgebraPresentation.from_labels(
        "broken",
        "lie",
        ["x", "y", "z"],
        {("x", "y"): {"z": 1}, ("y", "z"): {"x": 1}, ("z", "x"): {"x": 1}},
    )
    report = validate(g)
    assert not report.valid
    assert {v.identity for v in report.violations} == {"leibniz"}


def test_validate_leibniz_non_lie():
    # two-dimensional non-Lie Leibniz algebra: [y,y] = x
    g = AlgebraPresentation.from_labels("l2", "leibniz", ["x", "y"], {("y", "y"): {"x": 1}})
    assert validate(g).valid
    assert not g.is_lie


def test_windowed_validation_skips():
    g = catalog("witt", window=2)
    report = validate(g)
    assert report.valid
    assert report.skipped > 0
    assert report.window_relative


def test_killing_form_sl2():
    g = _sl2()
    k = killing_form(g)
    e, f, h = (g.index(x) for x in "efh")
    assert k.value(e, f) == 4
    assert k.value(h, h) == 8
    assert k.value(e, e) == 0
    assert k.is_symmetric()
    assert k.is_invariant()
    assert k.is_nondegenerate()


def test_non_invariant_form():
    g = _sl2()
    e = g.index("e")
    form = BilinearForm.from_function(g, lambda i, j: 1 if i == j == e else 0)
    assert form.is_symmetric()
    assert not form.is_invariant()


def test_modules_satisfy_bimodule_axioms():
    g = _sl2()
    for module in (trivial_module(g), adjoint_module(g), dual_module(g)):
        assert validate_representation(module).valid, module.name


def test_dual_module_action():
    g = _sl2()
    m = dual_module(g)
    e, h = g.index("e"), g.index("h")
    assert m.left(h, {e: Fraction(1)}) == {e: -2}
    assert m.right({e: Fraction(1)}, h) == {e: 2}
    assert m.labels == ("e*", "f*", "h*")


def test_dual_module_needs_lie():
    g = AlgebraPresentation.from_labels("l2", "leibniz", ["x", "y"], {("y", "y"): {"x": 1}})
    with pytest.raises(UnsupportedKindError):
        dual_module(g)


def test_center_and_derived_subalgebra():
    heis = catalog("heisenberg3")
    z = center(heis)
    assert z.dim == 1
    derived, perfect = derived_subalgebra(heis)
    assert derived == z
    assert not perfect
    assert derived_subalgebra(_sl2())[1]
    assert center(_sl2()).dim == 0


def test_is_nondegenerate():
    assert is_nondegenerate(killing_form(_sl2()))
    assert not is_nondegenerate(killing_form(catalog("heisenberg3")))


def test_validate_reports_nonzero_square():
    g = AlgebraPresentation.from_labels("bad", "lie", ["x", "y"], {("x", "x"): {"y": 1}})
    report = validate(g)
    assert not report.valid
    assert [(v.identity, v.labels) for v in report.violations] == [("alternating", ("x", "x"))]
