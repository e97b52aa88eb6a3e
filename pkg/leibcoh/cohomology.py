"""Cohomology groups and the maps relating Leibniz and Lie cohomology.

For a Lie algebra g with trivial coefficients there is an exact sequence

    0 -> H^2(g) --f--> HL^2(g) --g--> B(g) --h--> H^3(g)

where B(g) is the space of invariant symmetric bilinear forms, f is induced by
the inclusion of alternating cochains, ``g(a)(x, y) = a(x, y) + a(y, x)`` and
``h(phi)(x, y, z) = phi([x, y], z)`` is the Cartan-Koszul map. Everything here
computes these objects on explicit bases and verifies the claimed properties
instead of assuming them.
"""

import dataclasses
import itertools
import logging
import warnings
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    OUT_OF_WINDOW,
    AlgebraKind,
    AlgebraPresentation,
    BilinearForm,
    Degree,
    Representation,
    adjoint_module,
    dual_module,
    trivial_module,
    validate,
)
from .cochain import (
    Cochain,
    CochainSpace,
    Theory,
    admissible_positions,
    ce_coboundary,
    coboundary,
    is_alternating,
    is_cocycle,
    skew_embedding,
)
from .exactlin import (
    Quotient,
    SparseMatrix,
    Subspace,
    column_space,
    induced_quotient_map,
    nullspace,
    quotient_basis,
    rank,
    solve_sparse,
)
from .exceptions import (
    ContractViolation,
    PreconditionError,
    UnsupportedKindError,
    WindowRelativeWarning,
)
from .utils import CancellationToken, sanitize_label

logger = logging.getLogger(__name__)


def _warn_window(g: AlgebraPresentation, what: str) -> None:
    if g.windowed:
        warnings.warn(
            f"{what} of {g.name} is computed on a degree window and is"
            " window-relative",
            WindowRelativeWarning,
            stacklevel=3,
        )


def _require_lie(g: AlgebraPresentation, what: str) -> None:
    if not g.is_lie:
        raise UnsupportedKindError(f"{what} needs a Lie algebra, {g.name} is Leibniz")


def _require_honest(g: AlgebraPresentation, what: str) -> None:
    if g.windowed:
        raise PreconditionError(
            f"{what} is only defined for non-windowed algebras, {g.name} is a window",
            code="windowed_input",
        )


# Cohomology groups


@dataclasses.dataclass(frozen=True)
class CohomologyGroup:
    """``ker d^n / im d^{n-1}`` with canonical representatives.

    Arguments:
        space (CochainSpace): The degree-n cochain space
        dim (int): Dimension of the group
        cocycles (Subspace): Kernel of d^n
        coboundaries (Subspace): Image of d^{n-1}
        quotient (Quotient): Canonical quotient data
        representatives (Tuple[Cochain, ...]): One cocycle per class basis vector
        window_relative (bool): Whether computed on a degree window
    """

    space: CochainSpace
    dim: int
    cocycles: Subspace
    coboundaries: Subspace
    quotient: Quotient
    representatives: Tuple[Cochain, ...]
    window_relative: bool

    __hash__ = None

    @property
    def theory(self) -> Theory:
        return self.space.theory

    @property
    def degree(self) -> int:
        return self.space.degree

    @property
    def reduce(self) -> SparseMatrix:
        """Map from cochain coordinates of a cocycle to its class coordinates."""
        return self.quotient.reduce

    def class_of(self, cochain: Cochain) -> Tuple[Fraction, ...]:
        """Class coordinates of a cocycle.

        Raises:
            PreconditionError: If the cochain is not a cocycle
        """
        cochain = cochain.project_to(self.space)
        if not self.cocycles.contains(cochain.coords):
            raise PreconditionError("not a cocycle", code="not_a_cocycle")
        return self.quotient.classify(cochain.coords)

    def is_coboundary(self, cochain: Cochain) -> bool:
        return self.coboundaries.contains(cochain.project_to(self.space).coords)


def cohomology(
    theory: Union[str, Theory],
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    n: int = 2,
    weight: Optional[Degree] = None,
    cancel: Optional[CancellationToken] = None,
) -> CohomologyGroup:
    """Compute ``H^n`` (Chevalley-Eilenberg) or ``HL^n`` (Loday).

    Args:
        theory (str | Theory): "leibniz", "chevalley_eilenberg" or "lie"
        g (AlgebraPresentation): The algebra
        module (Representation, optional): Coefficients. Defaults to trivial.
        n (int): Degree. Defaults to 2.
        weight (Degree, optional): Restrict to one weight block (graded algebras,
            trivial coefficients)
        cancel (CancellationToken, optional): Cancellation token

    Returns:
        CohomologyGroup: dimension, cocycles, coboundaries and representatives
    """
    theory = Theory.parse(theory)
    module = module or trivial_module(g)
    _warn_window(g, f"{theory.value} cohomology")
    space = CochainSpace(theory, n, g, module, weight)
    d = coboundary(theory, g, module, n, weight=weight, cancel=cancel)
    cocycles = nullspace(d, cancel=cancel)
    if n == 0:
        coboundaries = Subspace.zero(space.dim)
    else:
        previous = coboundary(theory, g, module, n - 1, weight=weight, cancel=cancel)
        coboundaries = column_space(previous, cancel=cancel)
    quotient = quotient_basis(cocycles, coboundaries, cancel=cancel)
    representatives = tuple(
        Cochain(space, v) for v in quotient.representatives.vectors()
    )
    logger.info(
        "%s H^%d(%s, %s)%s has dimension %d",
        theory.value,
        n,
        g.name,
        module.name,
        "" if weight is None else f" in weight {weight}",
        quotient.dim,
    )
    return CohomologyGroup(
        space=space,
        dim=quotient.dim,
        cocycles=cocycles,
        coboundaries=coboundaries,
        quotient=quotient,
        representatives=representatives,
        window_relative=g.windowed,
    )


def solve_coboundary(
    cochain: Cochain, cancel: Optional[CancellationToken] = None
) -> Optional[Cochain]:
    """Find a cochain ``b`` with ``d b = cochain``, or None if there is none.

    On windows only admissible tuples constrain the solve, and ``b`` ranges over
    window-supported cochains of the same weight block.
    """
    space = cochain.space
    if space.degree == 0:
        return Cochain(space, {}) if cochain.is_zero() else None
    source = space.with_degree(space.degree - 1)
    d = coboundary(
        space.theory,
        space.algebra,
        space.coefficients,
        space.degree - 1,
        weight=space.weight,
        cancel=cancel,
    )
    rhs = dict(cochain.coords)
    positions = admissible_positions(space)
    if positions is not None:
        count = len(space.tuples)
        rhs = {k: v for k, v in rhs.items() if k % count in positions}
    x = solve_sparse(d, rhs, cancel=cancel)
    if x is None:
        return None
    return Cochain(source, x)


def is_coboundary(cochain: Cochain, cancel: Optional[CancellationToken] = None) -> bool:
    return solve_coboundary(cochain, cancel=cancel) is not None


def rank_modulo_coboundaries(
    cochains: Sequence[Cochain], cancel: Optional[CancellationToken] = None
) -> int:
    """Rank of the span of the given cochains modulo (windowed) coboundaries.

    All cochains are projected into the space of the first one.
    """
    if not cochains:
        return 0
    space = cochains[0].space
    vectors = [c.project_to(space).coords for c in cochains]
    positions = admissible_positions(space)
    if positions is not None:
        count = len(space.tuples)
        vectors = [
            {k: v for k, v in vec.items() if k % count in positions} for vec in vectors
        ]
    if space.degree == 0:
        boundaries = Subspace.zero(space.dim)
    else:
        d = coboundary(
            space.theory,
            space.algebra,
            space.coefficients,
            space.degree - 1,
            weight=space.weight,
            cancel=cancel,
        )
        boundaries = column_space(d, cancel=cancel)
    combined = Subspace.from_vectors(
        space.dim, boundaries.vectors() + vectors, cancel=cancel
    )
    return combined.dim - boundaries.dim


def is_lie_cocycle(cochain: Cochain, cancel: Optional[CancellationToken] = None) -> bool:
    """Whether a Loday 2-cochain is alternating and closed, i.e. a Lie cocycle."""
    return is_alternating(cochain) and is_cocycle(cochain, cancel=cancel)


# Invariant forms


def _symmetric_pairs(dim: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations_with_replacement(range(dim), 2))


def _pair_index(dim: int) -> Dict[Tuple[int, int], int]:
    index = {}
    for k, (a, b) in enumerate(_symmetric_pairs(dim)):
        index[(a, b)] = index[(b, a)] = k
    return index


def _form_from_vector(g: AlgebraPresentation, vector) -> BilinearForm:
    pairs = _symmetric_pairs(g.dim)
    entries = {}
    for k, v in vector.items():
        a, b = pairs[k]
        entries[(a, b)] = entries[(b, a)] = v
    return BilinearForm(g, SparseMatrix.from_entries(g.dim, g.dim, entries))


def _form_to_vector(form: BilinearForm) -> Dict[int, Fraction]:
    index = _pair_index(form.algebra.dim)
    return {index[(a, b)]: v for (a, b), v in form.matrix.entries.items() if a <= b}


def invariant_form_space(
    g: AlgebraPresentation, cancel: Optional[CancellationToken] = None
) -> Subspace:
    """B(g) as a subspace of the symmetric coordinates ``phi(x_a, x_b), a <= b``."""
    index = _pair_index(g.dim)
    rows: Dict[int, Dict[int, Fraction]] = {}
    r = 0
    for x, y, z in itertools.product(range(g.dim), repeat=3):
        xy, yz = g.bracket(x, y), g.bracket(y, z)
        if xy is None or yz is None:
            continue
        row: Dict[int, Fraction] = {}
        for k, c in xy.items():
            col = index[(k, z)]
            row[col] = row.get(col, 0) + c
        for k, c in yz.items():
            col = index[(x, k)]
            row[col] = row.get(col, 0) - c
        row = {k: v for k, v in row.items() if v}
        if row:
            rows[r] = row
            r += 1
    constraints = SparseMatrix.from_rows(r, len(_symmetric_pairs(g.dim)), rows)
    return nullspace(constraints, cancel=cancel)


def invariant_forms(
    g: AlgebraPresentation, cancel: Optional[CancellationToken] = None
) -> List[BilinearForm]:
    """A basis of the invariant symmetric bilinear forms, ``phi([x,y],z) =
    phi(x,[y,z])``. On windows only in-window instances are imposed."""
    _warn_window(g, "B")
    space = invariant_form_space(g, cancel=cancel)
    logger.info("B(%s) has dimension %d", g.name, space.dim)
    return [_form_from_vector(g, v) for v in space.vectors()]


def _require_trivial_loday(cochain: Cochain, degree: int) -> None:
    space = cochain.space
    if space.theory is not Theory.LEIBNIZ or space.degree != degree:
        raise ContractViolation(f"expected a Loday {degree}-cochain")
    if not space.coefficients.is_trivial or space.coefficients.dim != 1:
        raise ContractViolation("expected trivial coefficients")


def map_g(
    alpha: Cochain, cancel: Optional[CancellationToken] = None, check: bool = True
) -> BilinearForm:
    """Symmetrize a Leibniz 2-cocycle: ``g(a)(x, y) = a(x, y) + a(y, x)``.

    On a Lie algebra the result is checked to lie in B(g, K). On windows only
    triples whose three brackets stay in-window are checked.

    Raises:
        PreconditionError: If `check` and `alpha` is not a cocycle, or its
            symmetrization is not invariant
    """
    _require_trivial_loday(alpha, 2)
    if check and not is_cocycle(alpha, cancel=cancel):
        raise PreconditionError(
            "map g needs a Leibniz 2-cocycle", code="not_a_cocycle"
        )
    g = alpha.space.algebra
    form = BilinearForm.from_function(
        g, lambda i, j: alpha.value((i, j)) + alpha.value((j, i))
    )
    if check and g.is_lie:
        violations = form.invariance_violations(closed=True)
        if violations:
            raise PreconditionError(
                f"g(alpha) is not invariant on {violations[0]}", code="not_invariant"
            )
    return form


def _require_invariant(form: BilinearForm) -> None:
    if not form.is_symmetric():
        raise PreconditionError("form is not symmetric", code="not_invariant")
    violations = form.invariance_violations()
    if violations:
        raise PreconditionError(
            f"form is not invariant on {violations[0]}", code="not_invariant"
        )


def _homogeneous_weight(form: BilinearForm) -> Optional[Degree]:
    g = form.algebra
    if g.grading is None or form.is_zero():
        return None
    weights = {g.weight((a, b)) for a, b in form.matrix.entries}
    return weights.pop() if len(weights) == 1 else None


@dataclasses.dataclass(frozen=True)
class CartanKoszulResult:
    """The 3-cochain ``h(phi)`` and its cohomological status.

    Arguments:
        cochain (Cochain): The alternating 3-cochain on increasing triples
        is_coboundary (bool): Whether ``delta^2 psi = h(phi)`` is solvable
        class_coordinates (Tuple[Fraction, ...], optional): Coordinates in H^3,
            for non-windowed algebras
        window_relative (bool): Whether computed on a degree window
    """

    cochain: Cochain
    is_coboundary: bool
    class_coordinates: Optional[Tuple[Fraction, ...]]
    window_relative: bool


def cartan_koszul_h(
    form: BilinearForm,
    cancel: Optional[CancellationToken] = None,
    classify: bool = True,
) -> CartanKoszulResult:
    """Apply the Cartan-Koszul map ``h(phi)(x, y, z) = phi([x, y], z)``.

    A homogeneous form on a graded algebra is handled in its weight block. On
    windows, triples whose bracket leaves the window carry no value and impose
    no constraint on the coboundary solve.

    Raises:
        PreconditionError: If the form is not symmetric and invariant
    """
    g = form.algebra
    _require_lie(g, "the Cartan-Koszul map")
    _require_invariant(form)
    _warn_window(g, "h(phi)")
    weight = _homogeneous_weight(form)
    space = CochainSpace(Theory.CHEVALLEY_EILENBERG, 3, g, trivial_module(g), weight)

    def _value(t):
        i, j, k = t
        xy = g.bracket(i, j)
        return form.value(xy, k) if xy else 0

    cochain = Cochain.from_function(space, _value)
    coboundary_exists = solve_coboundary(cochain, cancel=cancel) is not None
    coordinates = None
    if classify and not g.windowed:
        group = cohomology(Theory.CHEVALLEY_EILENBERG, g, n=3, weight=weight, cancel=cancel)
        coordinates = group.class_of(cochain)
    return CartanKoszulResult(
        cochain=cochain,
        is_coboundary=coboundary_exists,
        class_coordinates=coordinates,
        window_relative=g.windowed,
    )


def sl2_obstruction(
    g: AlgebraPresentation,
    form: BilinearForm,
    triple: Sequence[Union[int, str]],
) -> Fraction:
    """Return ``phi(h, h)`` for an sl2-triple ``(x, y, h)``.

    A nonzero value certifies that ``h(phi)`` is not a coboundary.

    Raises:
        PreconditionError: If ``[x,y] = h``, ``[h,x] = 2x``, ``[h,y] = -2y``
            do not all hold
    """
    x, y, h = (g.index(t) if isinstance(t, str) else t for t in triple)
    checks = (
        ((x, y), {h: Fraction(1)}, "[x,y] = h"),
        ((h, x), {x: Fraction(2)}, "[h,x] = 2x"),
        ((h, y), {y: Fraction(-2)}, "[h,y] = -2y"),
    )
    for (a, b), expected, relation in checks:
        if g.bracket(a, b) != expected:
            raise PreconditionError(
                f"({g.basis[x]}, {g.basis[y]}, {g.basis[h]}) is not an sl2-triple:"
                f" {relation} fails",
                code="not_an_sl2_triple",
            )
    return form.value(h, h)


# The exact sequence


@dataclasses.dataclass(frozen=True)
class ExactnessReport:
    """Computed dimensions, ranks and exactness flags of
    ``0 -> H^2 -> HL^2 -> B -> H^3``."""

    algebra: str
    h2_dim: int
    hl2_dim: int
    b_dim: int
    h3_dim: int
    rank_f: int
    rank_g: int
    rank_h: int
    ker_h_dim: int
    f_injective: bool
    im_f_eq_ker_g: bool
    im_g_eq_ker_h: bool
    dimension_identity: bool

    @property
    def exact(self) -> bool:
        return (
            self.f_injective
            and self.im_f_eq_ker_g
            and self.im_g_eq_ker_h
            and self.dimension_identity
        )


def _symmetrization_matrix(space: CochainSpace) -> SparseMatrix:
    dim = space.algebra.dim
    pairs = _symmetric_pairs(dim)
    rows = {}
    for k, (a, b) in enumerate(pairs):
        if a == b:
            rows[k] = {space.index((a, a)): Fraction(2)}
        else:
            rows[k] = {space.index((a, b)): Fraction(1), space.index((b, a)): Fraction(1)}
    return SparseMatrix.from_rows(len(pairs), space.dim, rows)


def _cartan_koszul_matrix(g: AlgebraPresentation, target: CochainSpace) -> SparseMatrix:
    index = _pair_index(g.dim)
    rows = {}
    for t in target.tuples:
        i, j, k = t
        row: Dict[int, Fraction] = {}
        for m, c in g.bracket(i, j).items():
            col = index[(m, k)]
            row[col] = row.get(col, 0) + c
        rows[target.index(t)] = row
    return SparseMatrix.from_rows(target.dim, len(_symmetric_pairs(g.dim)), rows)


def verify_exact_sequence(
    g: AlgebraPresentation, cancel: Optional[CancellationToken] = None
) -> ExactnessReport:
    """Compute the maps f, g and h on cohomology and check exactness.

    Raises:
        UnsupportedKindError: For Leibniz presentations
        PreconditionError: For windowed presentations
    """
    _require_lie(g, "the exact sequence")
    _require_honest(g, "the exact sequence")
    h2 = cohomology(Theory.CHEVALLEY_EILENBERG, g, n=2, cancel=cancel)
    hl2 = cohomology(Theory.LEIBNIZ, g, n=2, cancel=cancel)
    h3 = cohomology(Theory.CHEVALLEY_EILENBERG, g, n=3, cancel=cancel)
    forms = invariant_form_space(g, cancel=cancel)
    forms_quotient = quotient_basis(forms, Subspace.zero(forms.ambient_dim))

    f = induced_quotient_map(skew_embedding(g, n=2), h2.quotient, hl2.quotient)
    g_map = induced_quotient_map(
        _symmetrization_matrix(hl2.space), hl2.quotient, forms_quotient
    )
    h_map = induced_quotient_map(
        _cartan_koszul_matrix(g, h3.space), forms_quotient, h3.quotient
    )
    rank_f, rank_g, rank_h = rank(f), rank(g_map), rank(h_map)
    ker_h_dim = forms.dim - rank_h
    report = ExactnessReport(
        algebra=g.name,
        h2_dim=h2.dim,
        hl2_dim=hl2.dim,
        b_dim=forms.dim,
        h3_dim=h3.dim,
        rank_f=rank_f,
        rank_g=rank_g,
        rank_h=rank_h,
        ker_h_dim=ker_h_dim,
        f_injective=rank_f == h2.dim,
        im_f_eq_ker_g=column_space(f) == nullspace(g_map),
        im_g_eq_ker_h=column_space(g_map) == nullspace(h_map),
        dimension_identity=hl2.dim == h2.dim + ker_h_dim,
    )
    logger.info("exact sequence of %s: %s", g.name, report)
    return report


# Derivations


@dataclasses.dataclass(frozen=True)
class DerivationSpaces:
    """Der(g, M), Inn(g, M) and ``H^1 = Der / Inn`` in C^1(g, M) coordinates.

    The coordinate of ``(x_i, m_c)`` is the component of ``d(x_i)`` along the
    module basis vector ``m_c``.
    """

    der: Subspace
    inn: Subspace
    h1: CohomologyGroup


def derivations(
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    cancel: Optional[CancellationToken] = None,
) -> DerivationSpaces:
    """Derivations ``d([x,y]) = x.d(y) - y.d(x)`` and inner derivations
    ``x -> x.m``."""
    _require_lie(g, "derivations")
    module = module or trivial_module(g)
    h1 = cohomology(Theory.CHEVALLEY_EILENBERG, g, module, n=1, cancel=cancel)
    return DerivationSpaces(der=h1.cocycles, inn=h1.coboundaries, h1=h1)


def outer_derivations(
    g: AlgebraPresentation, cancel: Optional[CancellationToken] = None
) -> DerivationSpaces:
    """Der(g, g) / Inn(g, g)."""
    return derivations(g, adjoint_module(g), cancel=cancel)


def derivation_matrix(space: CochainSpace, vector) -> SparseMatrix:
    """The dim(M) x dim(g) matrix of a 1-cochain; column j is ``d(x_j)``."""
    entries = {}
    for k, v in vector.items():
        (i,), c = space.basis_element(k)
        entries[(c, i)] = v
    return SparseMatrix.from_entries(space.coefficients.dim, space.algebra.dim, entries)


def sder(g: AlgebraPresentation, cancel: Optional[CancellationToken] = None) -> Subspace:
    """Skew derivations into g*: derivations with ``a(x)(y) + a(y)(x) = 0``."""
    _require_lie(g, "skew derivations")
    module = dual_module(g)
    space = CochainSpace(Theory.CHEVALLEY_EILENBERG, 1, g, module)
    d1 = ce_coboundary(g, module, 1, cancel=cancel)
    rows = {}
    for k, (a, b) in enumerate(_symmetric_pairs(g.dim)):
        if a == b:
            rows[k] = {space.index((a,), a): Fraction(2)}
        else:
            rows[k] = {space.index((a,), b): Fraction(1), space.index((b,), a): Fraction(1)}
    skew = SparseMatrix.from_rows(len(rows), space.dim, rows)
    return nullspace(d1.vstack(skew), cancel=cancel)


@dataclasses.dataclass(frozen=True)
class ThetaResult:
    """``theta(a)(x, y) = a(y)(x)`` induced on ``H^1(g, g*) -> HL^2(g)``."""

    matrix: SparseMatrix
    is_isomorphism: bool
    h1: CohomologyGroup
    hl2: CohomologyGroup


def theta_matrix(g: AlgebraPresentation) -> SparseMatrix:
    """The cochain-level map ``C^1(g, g*) -> C^2(g, K)``."""
    dual = CochainSpace(Theory.CHEVALLEY_EILENBERG, 1, g, dual_module(g))
    loday = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))
    entries = {}
    for a, b in itertools.product(range(g.dim), repeat=2):
        entries[(loday.index((a, b)), dual.index((b,), a))] = Fraction(1)
    return SparseMatrix.from_entries(loday.dim, dual.dim, entries)


def theta(g: AlgebraPresentation, cancel: Optional[CancellationToken] = None) -> ThetaResult:
    """The isomorphism ``H^1(g, g*) -> HL^2(g, K)``.

    Well-definedness is verified: derivations go to cocycles, inner derivations
    to coboundaries. The derivation identity used is ``a([x,y]) = x.a(y) - y.a(x)``.
    """
    _require_lie(g, "theta")
    _require_honest(g, "theta")
    h1 = cohomology(Theory.CHEVALLEY_EILENBERG, g, dual_module(g), n=1, cancel=cancel)
    hl2 = cohomology(Theory.LEIBNIZ, g, n=2, cancel=cancel)
    matrix = induced_quotient_map(theta_matrix(g), h1.quotient, hl2.quotient)
    iso = matrix.rows == matrix.cols and rank(matrix) == matrix.rows
    if not iso:
        logger.warning("theta is not an isomorphism on %s", g.name)
    return ThetaResult(matrix=matrix, is_isomorphism=iso, h1=h1, hl2=hl2)


# Constructions


def _fresh_label(g: AlgebraPresentation, label: str) -> str:
    label = sanitize_label(label)
    if label not in g.basis:
        return label
    k = 1
    while f"{label}{k}" in g.basis:
        k += 1
    return f"{label}{k}"


def central_extension(
    g: AlgebraPresentation,
    alpha: Cochain,
    label: str = "c",
    name: Optional[str] = None,
    cancel: Optional[CancellationToken] = None,
) -> AlgebraPresentation:
    """The one-dimensional central extension ``[x, y]' = [x, y] + a(x, y) c``.

    The result is a Lie algebra iff `g` is Lie and `alpha` is alternating. The
    new element keeps degree 0 when `alpha` lives in weight 0; otherwise the
    grading is dropped.

    Raises:
        PreconditionError: If `alpha` is not a Leibniz 2-cocycle
    """
    _require_trivial_loday(alpha, 2)
    if not is_cocycle(alpha, cancel=cancel):
        raise PreconditionError(
            "central extension needs a Leibniz 2-cocycle", code="not_a_cocycle"
        )
    label = _fresh_label(g, label)
    c = g.dim
    lie = g.is_lie and is_alternating(alpha)
    brackets = {}
    for i, j in itertools.product(range(g.dim), repeat=2):
        if lie and i > j:
            continue
        value = g.bracket(i, j)
        if value is None:
            brackets[(i, j)] = OUT_OF_WINDOW
            continue
        extra = alpha.value((i, j))
        if extra:
            value[c] = extra
        if value:
            brackets[(i, j)] = value
    grading = None
    notices = list(g.notices)
    if g.grading is not None:
        zero = tuple(0 for _ in g.grading[0])
        weights = {alpha.space.algebra.weight(t) for t, _, _ in alpha.items()}
        if weights <= {zero}:
            grading = g.grading + (zero,)
        else:
            notices.append(f"grading dropped: cocycle for {label} is not of weight 0")
    extension = AlgebraPresentation(
        name=name or f"{g.name}+{label}",
        kind=AlgebraKind.LIE if lie else AlgebraKind.LEIBNIZ,
        basis=g.basis + (label,),
        brackets=brackets,
        grading=grading,
        windowed=g.windowed,
        notices=tuple(notices),
    )
    report = validate(extension)
    if not report.valid:
        raise PreconditionError(
            f"extension of {g.name} fails validation on {report.violations[0].labels}"
        )
    return extension


@dataclasses.dataclass(frozen=True)
class QuadraticCocycle:
    """The cocycle ``f(x, y) = phi(x, d y)`` of a quadratic algebra and a
    derivation; alternating when d is skew for phi."""

    cochain: Cochain
    alternating: bool


def derivation_violations(g: AlgebraPresentation, d: SparseMatrix) -> List[Tuple[str, str]]:
    """Pairs where ``d[x,y] != [dx,y] + [x,dy]`` (in-window pairs only)."""
    out = []
    columns = d.columns()
    for i, j in itertools.product(range(g.dim), repeat=2):
        xy = g.bracket(i, j)
        if xy is None:
            continue
        lhs = d.matvec(xy)
        first = g.bracket_vectors(columns[i], {j: Fraction(1)})
        second = g.bracket_vectors({i: Fraction(1)}, columns[j])
        if first is None or second is None:
            continue
        rhs = dict(first)
        for k, v in second.items():
            rhs[k] = rhs.get(k, 0) + v
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            out.append((g.basis[i], g.basis[j]))
    return out


def cocycle_from_quadratic(
    g: AlgebraPresentation,
    form: BilinearForm,
    d: SparseMatrix,
) -> QuadraticCocycle:
    """Build the Leibniz 2-cocycle ``f(x, y) = phi(x, d(y))``.

    Args:
        g (AlgebraPresentation): The algebra
        form (BilinearForm): An invariant symmetric form
        d (SparseMatrix): A derivation, column j is ``d(x_j)``

    Raises:
        PreconditionError: If the form is not invariant or d is not a derivation
    """
    if d.shape != (g.dim, g.dim):
        raise ContractViolation(f"derivation matrix of shape {d.shape}")
    _require_invariant(form)
    violations = derivation_violations(g, d)
    if violations:
        raise PreconditionError(
            f"not a derivation on {violations[0]}", code="not_a_derivation"
        )
    phi_d = form.matrix @ d
    space = CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))
    cochain = Cochain.from_function(space, lambda t: phi_d[t[0], t[1]])
    skew = phi_d + d.transpose() @ form.matrix
    return QuadraticCocycle(cochain=cochain, alternating=skew.is_zero())


@dataclasses.dataclass(frozen=True)
class FormsCriterion:
    """Whether HL^2 = H^2 is certified by invariant forms alone."""

    b_dim: int
    certified: bool
    obstruction: Optional[Fraction]
    reason: str


def hl2_equals_h2_by_forms(
    g: AlgebraPresentation,
    triple: Optional[Sequence[Union[int, str]]] = None,
    cancel: Optional[CancellationToken] = None,
) -> FormsCriterion:
    """Certify ``HL^2(g) = H^2(g)`` when B(g) = 0, or when B(g) is spanned by a
    form phi with ``phi(h, h) != 0`` on a given sl2-triple."""
    forms = invariant_forms(g, cancel=cancel)
    if not forms:
        return FormsCriterion(0, True, None, "no invariant forms")
    if len(forms) > 1 or triple is None:
        return FormsCriterion(
            len(forms), False, None, "criterion needs dim B <= 1 and an sl2-triple"
        )
    value = sl2_obstruction(g, forms[0], triple)
    if value:
        return FormsCriterion(1, True, value, "phi(h,h) is nonzero")
    return FormsCriterion(1, False, value, "phi(h,h) vanishes")
