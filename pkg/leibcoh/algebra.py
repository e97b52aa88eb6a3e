"""Structure-constant presentations of Lie and Leibniz algebras.

A presentation stores the bracket of basis elements as sparse rational vectors.
Lie presentations keep one orientation per pair (``i < j``) and infer the other
by antisymmetry; Leibniz presentations keep every ordered pair. Presentations of
degree windows of infinite graded algebras mark brackets that leave the window
as `OUT_OF_WINDOW`.
"""

import dataclasses
import enum
import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .exactlin import SparseMatrix, Subspace, Vector, add_scaled, nullspace, rank
from .exceptions import (
    ContractViolation,
    GradingError,
    UnknownLabelError,
    UnsupportedKindError,
)
from .utils import to_fraction

logger = logging.getLogger(__name__)


class AlgebraKind(str, enum.Enum):
    LIE = "lie"
    LEIBNIZ = "leibniz"


class _OutOfWindow:
    """Marker for a bracket whose true value leaves the degree window."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OUT_OF_WINDOW"

    def __reduce__(self):
        return (_OutOfWindow, ())


OUT_OF_WINDOW = _OutOfWindow()

BracketValue = Union[Vector, _OutOfWindow]
Degree = Tuple[int, ...]


def _as_degree(value) -> Degree:
    if isinstance(value, int):
        return (value,)
    return tuple(int(v) for v in value)


@dataclasses.dataclass(frozen=True)
class AlgebraPresentation:
    """A finite-dimensional Lie or Leibniz algebra given by structure constants.

    Arguments:
        name (str): Name of the algebra
        kind (AlgebraKind): Lie or Leibniz
        basis (Tuple[str, ...]): Basis labels, in order
        brackets (Dict[Tuple[int, int], Vector | OUT_OF_WINDOW]): Nonzero
            brackets of basis elements. For Lie algebras either orientation may
            be given; it is stored as ``i <= j``.
        grading (Tuple[Degree, ...], optional): Degree (integer tuple) of each
            basis element
        windowed (bool): Whether this is a degree window of a larger algebra
        notices (Tuple[str, ...]): Free-text notices carried into reports

    Raises:
        ContractViolation: On invalid labels or indices
        GradingError: If an in-window bracket breaks degree additivity
    """

    name: str
    kind: AlgebraKind
    basis: Tuple[str, ...]
    brackets: Mapping[Tuple[int, int], BracketValue] = dataclasses.field(
        default_factory=dict
    )
    grading: Optional[Tuple[Degree, ...]] = None
    windowed: bool = False
    notices: Tuple[str, ...] = dataclasses.field(default=(), compare=False)

    __hash__ = None

    def __post_init__(self):
        object.__setattr__(self, "kind", AlgebraKind(self.kind))
        object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        object.__setattr__(self, "notices", tuple(self.notices))
        if len(set(self.basis)) != len(self.basis):
            raise ContractViolation(f"duplicate basis labels in {self.name}")
        for label in self.basis:
            if not label or "," in label or label != label.strip():
                raise ContractViolation(f"invalid basis label {label!r}")
        n = len(self.basis)
        normalized: Dict[Tuple[int, int], BracketValue] = {}
        for (i, j), value in self.brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ContractViolation(f"bracket pair {(i, j)} outside basis of {n}")
            if value is OUT_OF_WINDOW:
                if not self.windowed:
                    raise ContractViolation(
                        f"out-of-window bracket {self._pair_label(i, j)}"
                        " in a presentation that is not windowed"
                    )
                stored: BracketValue = OUT_OF_WINDOW
            else:
                stored = {}
                for k, c in value.items():
                    if not 0 <= k < n:
                        raise ContractViolation(
                            f"bracket {self._pair_label(i, j)} references index {k}"
                        )
                    c = to_fraction(c)
                    if c:
                        stored[k] = c
                if not stored:
                    continue
            key = (i, j)
            if self.kind is AlgebraKind.LIE and i > j:
                key = (j, i)
                if stored is not OUT_OF_WINDOW:
                    stored = {k: -c for k, c in stored.items()}
            if key in normalized:
                raise ContractViolation(
                    f"bracket {self._pair_label(*key)} given in both orientations"
                )
            normalized[key] = stored
        object.__setattr__(self, "brackets", normalized)
        if self.grading is not None:
            grading = tuple(_as_degree(d) for d in self.grading)
            if len(grading) != n:
                raise ContractViolation(
                    f"grading has {len(grading)} entries for {n} basis elements"
                )
            if len({len(d) for d in grading}) > 1:
                raise ContractViolation("grading degrees of different ranks")
            object.__setattr__(self, "grading", grading)
            self._check_grading()

    def _pair_label(self, i: int, j: int) -> str:
        try:
            return f"[{self.basis[i]},{self.basis[j]}]"
        except IndexError:
            return f"[{i},{j}]"

    def _check_grading(self) -> None:
        for (i, j), value in self.brackets.items():
            if value is OUT_OF_WINDOW:
                continue
            target = self.degree_of_pair(i, j)
            for k in value:
                if self.grading[k] != target:
                    raise GradingError(
                        f"{self._pair_label(i, j)} has component {self.basis[k]}"
                        f" of degree {self.grading[k]}, expected {target}"
                    )

    # Construction

    @classmethod
    def from_labels(
        cls,
        name: str,
        kind: Union[str, AlgebraKind],
        basis: Sequence[str],
        brackets: Mapping[Tuple[str, str], Union[Mapping[str, object], _OutOfWindow]],
        grading: Optional[Mapping[str, object]] = None,
        windowed: bool = False,
        notices: Iterable[str] = (),
    ) -> "AlgebraPresentation":
        """Build a presentation from label-keyed brackets.

        Example:

        ```python
        sl2 = AlgebraPresentation.from_labels(
            "sl2", "lie", ["e", "f", "h"],
            {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        )
        ```
        """
        basis = [str(b) for b in basis]
        index = {label: i for i, label in enumerate(basis)}

        def _lookup(label):
            try:
                return index[label]
            except KeyError:
                raise UnknownLabelError(f"unknown basis label {label!r} in {name}")

        data = {}
        for (a, b), value in brackets.items():
            key = (_lookup(a), _lookup(b))
            if value is OUT_OF_WINDOW:
                data[key] = OUT_OF_WINDOW
            else:
                data[key] = {_lookup(k): c for k, c in value.items()}
        degrees = None
        if grading is not None:
            missing = [b for b in basis if b not in grading]
            if missing:
                raise ContractViolation(f"no degree given for {missing[0]!r}")
            for label in grading:
                _lookup(label)
            degrees = tuple(_as_degree(grading[b]) for b in basis)
        return cls(
            name=name,
            kind=kind,
            basis=tuple(basis),
            brackets=data,
            grading=degrees,
            windowed=windowed,
            notices=tuple(notices),
        )

    # Access

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_lie(self) -> bool:
        return self.kind is AlgebraKind.LIE

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise UnknownLabelError(f"unknown basis label {label!r} in {self.name}")

    def bracket(self, i: int, j: int) -> Optional[Vector]:
        """Bracket of basis elements, or None if it leaves the window."""
        if self.kind is AlgebraKind.LIE and i > j:
            value = self.brackets.get((j, i))
            if value is OUT_OF_WINDOW:
                return None
            return {k: -c for k, c in value.items()} if value else {}
        value = self.brackets.get((i, j))
        if value is OUT_OF_WINDOW:
            return None
        return dict(value) if value else {}

    def in_window(self, i: int, j: int) -> bool:
        if self.kind is AlgebraKind.LIE and i > j:
            i, j = j, i
        return self.brackets.get((i, j)) is not OUT_OF_WINDOW

    def bracket_vectors(
        self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]
    ) -> Optional[Vector]:
        """Bilinear extension of the bracket; None if a needed bracket leaves the
        window."""
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                value = self.bracket(i, j)
                if value is None:
                    return None
                add_scaled(out, value, a * b)
        return out

    def degree(self, i: int) -> Optional[Degree]:
        return None if self.grading is None else self.grading[i]

    def degree_of_pair(self, i: int, j: int) -> Degree:
        return tuple(a + b for a, b in zip(self.grading[i], self.grading[j]))

    def weight(self, indices: Sequence[int]) -> Optional[Degree]:
        """Componentwise sum of the degrees of the given basis elements."""
        if self.grading is None:
            return None
        total = [0] * len(self.grading[0]) if self.grading else []
        for i in indices:
            for k, d in enumerate(self.grading[i]):
                total[k] += d
        return tuple(total)

    def has_out_of_window(self) -> bool:
        return any(v is OUT_OF_WINDOW for v in self.brackets.values())

    def ad(self, i: int) -> SparseMatrix:
        """Left multiplication by basis element i, as a matrix."""
        columns = []
        for j in range(self.dim):
            value = self.bracket(i, j)
            if value is None:
                raise UnsupportedKindError(
                    f"{self._pair_label(i, j)} leaves the window of {self.name}"
                )
            columns.append(value)
        return SparseMatrix.from_columns(self.dim, columns)

    def right_multiplication(self, i: int) -> SparseMatrix:
        """Right multiplication ``m -> [m, x_i]``, as a matrix."""
        columns = []
        for j in range(self.dim):
            value = self.bracket(j, i)
            if value is None:
                raise UnsupportedKindError(
                    f"{self._pair_label(j, i)} leaves the window of {self.name}"
                )
            columns.append(value)
        return SparseMatrix.from_columns(self.dim, columns)

    def label_vector(self, vector: Mapping[int, Fraction]) -> Dict[str, Fraction]:
        return {self.basis[k]: v for k, v in sorted(vector.items())}


# Validation


@dataclasses.dataclass(frozen=True)
class Violation:
    """A failed identity instance.

    Arguments:
        identity (str): Which identity failed, e.g. "leibniz" or "alternating"
        labels (Tuple[str, ...]): The basis elements of the instance
        lhs (Dict[int, Fraction]): Left hand side
        rhs (Dict[int, Fraction]): Right hand side
    """

    identity: str
    labels: Tuple[str, ...]
    lhs: Mapping[int, Fraction]
    rhs: Mapping[int, Fraction]


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: Tuple[Violation, ...]
    checked: int
    skipped: int
    window_relative: bool


def _sub(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    add_scaled(out, b, -1)
    return out


def validate(a: AlgebraPresentation) -> ValidationReport:
    """Check the Leibniz identity ``[x,[y,z]] = [[x,y],z] - [[x,z],y]`` on every
    basis triple, and ``[x,x] = 0`` for Lie presentations.

    Lie brackets are stored for ``i < j`` only, so antisymmetry off the
    diagonal holds by construction and only the diagonal is checked.
    On windowed presentations an instance is checked only when every bracket it
    needs is in-window; other instances are counted as skipped.
    """
    violations: List[Violation] = []
    checked = skipped = 0
    n = a.dim
    if a.is_lie:
        for i in range(n):
            if not a.in_window(i, i):
                continue
            checked += 1
            square = a.bracket(i, i)
            if square:
                violations.append(
                    Violation("alternating", (a.basis[i], a.basis[i]), square, {})
                )
    for x, y, z in itertools.product(range(n), repeat=3):
        yz, xy, xz = a.bracket(y, z), a.bracket(x, y), a.bracket(x, z)
        if yz is None or xy is None or xz is None:
            skipped += 1
            continue
        lhs = a.bracket_vectors({x: Fraction(1)}, yz)
        first = a.bracket_vectors(xy, {z: Fraction(1)})
        second = a.bracket_vectors(xz, {y: Fraction(1)})
        if lhs is None or first is None or second is None:
            skipped += 1
            continue
        checked += 1
        rhs = _sub(first, second)
        if lhs != rhs:
            violations.append(
                Violation("leibniz", (a.basis[x], a.basis[y], a.basis[z]), lhs, rhs)
            )
    logger.debug(
        "validated %s: %d checked, %d skipped, %d violations",
        a.name,
        checked,
        skipped,
        len(violations),
    )
    return ValidationReport(
        valid=not violations,
        violations=tuple(violations),
        checked=checked,
        skipped=skipped,
        window_relative=a.windowed,
    )


# Representations


@dataclasses.dataclass(frozen=True)
class Representation:
    """A representation (bimodule) of a Leibniz algebra.

    ``left_action[i]`` is the matrix of ``m -> [x_i, m]`` and ``right_action[i]``
    the matrix of ``m -> [m, x_i]``.

    Arguments:
        algebra (AlgebraPresentation): The acting algebra
        dim (int): Dimension of the module
        left_action (Tuple[SparseMatrix, ...]): One matrix per basis element
        right_action (Tuple[SparseMatrix, ...]): One matrix per basis element
        labels (Tuple[str, ...]): Labels of the module basis
        name (str): "trivial", "dual", "adjoint" or a user name
    """

    algebra: AlgebraPresentation
    dim: int
    left_action: Tuple[SparseMatrix, ...]
    right_action: Tuple[SparseMatrix, ...]
    labels: Tuple[str, ...] = ()
    name: str = "module"

    __hash__ = None

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"m{k}" for k in range(self.dim))
            )
        if len(self.left_action) != self.algebra.dim or len(
            self.right_action
        ) != self.algebra.dim:
            raise ContractViolation("one action matrix per basis element required")
        for m in itertools.chain(self.left_action, self.right_action):
            if m.shape != (self.dim, self.dim):
                raise ContractViolation(
                    f"action matrix of shape {m.shape}, expected {(self.dim, self.dim)}"
                )

    @property
    def is_trivial(self) -> bool:
        return all(m.is_zero() for m in self.left_action) and all(
            m.is_zero() for m in self.right_action
        )

    def left(self, i: int, m: Mapping[int, Fraction]) -> Vector:
        return self.left_action[i].matvec(m)

    def right(self, m: Mapping[int, Fraction], i: int) -> Vector:
        return self.right_action[i].matvec(m)


def trivial_module(a: AlgebraPresentation) -> Representation:
    """The ground field with zero actions."""
    zero = SparseMatrix.zeros(1, 1)
    return Representation(
        algebra=a,
        dim=1,
        left_action=(zero,) * a.dim,
        right_action=(zero,) * a.dim,
        labels=("1",),
        name="trivial",
    )


def _require_honest(a: AlgebraPresentation, what: str) -> None:
    if a.windowed:
        raise UnsupportedKindError(f"the {what} module needs a non-windowed algebra")


def dual_module(a: AlgebraPresentation) -> Representation:
    """The coadjoint module g*: ``(y . phi)(x) = phi([x, y])``, right action the
    negative of the left one.

    Raises:
        UnsupportedKindError: For Leibniz or windowed presentations
    """
    if not a.is_lie:
        raise UnsupportedKindError(f"dual module of {a.name} needs a Lie algebra")
    _require_honest(a, "dual")
    left = []
    for y in range(a.dim):
        entries = {}
        for i in range(a.dim):
            for k, c in a.bracket(i, y).items():
                entries[(i, k)] = c
        left.append(SparseMatrix.from_entries(a.dim, a.dim, entries))
    return Representation(
        algebra=a,
        dim=a.dim,
        left_action=tuple(left),
        right_action=tuple(-m for m in left),
        labels=tuple(f"{b}*" for b in a.basis),
        name="dual",
    )


def adjoint_module(a: AlgebraPresentation) -> Representation:
    """The algebra as a representation of itself."""
    _require_honest(a, "adjoint")
    return Representation(
        algebra=a,
        dim=a.dim,
        left_action=tuple(a.ad(i) for i in range(a.dim)),
        right_action=tuple(a.right_multiplication(i) for i in range(a.dim)),
        labels=a.basis,
        name="adjoint",
    )


def _action_of(actions: Sequence[SparseMatrix], x: Mapping[int, Fraction], dim: int):
    out = SparseMatrix.zeros(dim, dim)
    for i, c in x.items():
        out = out + actions[i].scale(c)
    return out


def validate_representation(module: Representation) -> ValidationReport:
    """Check the bimodule axioms on all pairs of basis elements.

    (MLL) ``[m,[x,y]] = [[m,x],y] - [[m,y],x]``,
    (LML) ``[x,[m,y]] = [[x,m],y] - [[x,y],m]``,
    (LLM) ``[x,[y,m]] = [[x,y],m] - [[x,m],y]``.
    """
    a = module.algebra
    L, R = module.left_action, module.right_action
    violations: List[Violation] = []
    checked = skipped = 0
    for x, y in itertools.product(range(a.dim), repeat=2):
        xy = a.bracket(x, y)
        if xy is None:
            skipped += 1
            continue
        checked += 1
        labels = (a.basis[x], a.basis[y])
        L_xy = _action_of(L, xy, module.dim)
        R_xy = _action_of(R, xy, module.dim)
        identities = (
            ("MLL", R_xy, R[y] @ R[x] - R[x] @ R[y]),
            ("LML", L[x] @ R[y], R[y] @ L[x] - L_xy),
            ("LLM", L[x] @ L[y], L_xy - R[y] @ L[x]),
        )
        for name, lhs, rhs in identities:
            if lhs != rhs:
                violations.append(
                    Violation(
                        name,
                        labels,
                        {k: v for k, v in lhs.entries.items()},
                        {k: v for k, v in rhs.entries.items()},
                    )
                )
    return ValidationReport(
        valid=not violations,
        violations=tuple(violations),
        checked=checked,
        skipped=skipped,
        window_relative=a.windowed,
    )


# Structure


def derived_subalgebra(a: AlgebraPresentation) -> Tuple[Subspace, bool]:
    """The span of all (in-window) brackets, and whether it is all of ``a``."""
    values = []
    for i, j in itertools.product(range(a.dim), repeat=2):
        value = a.bracket(i, j)
        if value:
            values.append(value)
    space = Subspace.from_vectors(a.dim, values)
    return space, space.dim == a.dim


def center(a: AlgebraPresentation) -> Subspace:
    """Elements z with ``[z, x] = [x, z] = 0`` for every (in-window) basis x."""
    rows: Dict[int, Dict[int, Fraction]] = {}
    r = 0
    for j in range(a.dim):
        for side in (0, 1):
            constraint: Dict[int, Dict[int, Fraction]] = {}
            for i in range(a.dim):
                value = a.bracket(i, j) if side == 0 else a.bracket(j, i)
                for k, c in (value or {}).items():
                    constraint.setdefault(k, {})[i] = c
            for row in constraint.values():
                rows[r] = row
                r += 1
    return nullspace(SparseMatrix.from_rows(r, a.dim, rows))


@dataclasses.dataclass(frozen=True)
class BilinearForm:
    """A bilinear form on an algebra, ``matrix[i, j] = phi(x_i, x_j)``."""

    algebra: AlgebraPresentation
    matrix: SparseMatrix

    __hash__ = None

    def __post_init__(self):
        if self.matrix.shape != (self.algebra.dim, self.algebra.dim):
            raise ContractViolation(
                f"form matrix of shape {self.matrix.shape} on a"
                f" {self.algebra.dim}-dimensional algebra"
            )

    @classmethod
    def from_function(cls, algebra: AlgebraPresentation, fn) -> "BilinearForm":
        entries = {
            (i, j): fn(i, j) for i, j in itertools.product(range(algebra.dim), repeat=2)
        }
        return cls(algebra, SparseMatrix.from_entries(algebra.dim, algebra.dim, entries))

    def value(self, x, y) -> Fraction:
        """Evaluate on basis indices or on sparse vectors."""
        if isinstance(x, int) and isinstance(y, int):
            return self.matrix[x, y]
        x = {x: Fraction(1)} if isinstance(x, int) else x
        y = {y: Fraction(1)} if isinstance(y, int) else y
        return Fraction(
            sum(
                (a * b * self.matrix[i, j] for i, a in x.items() for j, b in y.items()),
                Fraction(0),
            )
        )

    def is_symmetric(self) -> bool:
        return self.matrix == self.matrix.transpose()

    def invariance_violations(self, closed: bool = False) -> List[Tuple[str, str, str]]:
        """Triples where ``phi([x,y],z) != phi(x,[y,z])``, in-window only.

        With `closed`, a triple is also skipped when ``[x,z]`` leaves the window.
        """
        a = self.algebra
        out = []
        for x, y, z in itertools.product(range(a.dim), repeat=3):
            xy, yz = a.bracket(x, y), a.bracket(y, z)
            if xy is None or yz is None:
                continue
            if closed and not a.in_window(x, z):
                continue
            if self.value(xy, z) != self.value(x, yz):
                out.append((a.basis[x], a.basis[y], a.basis[z]))
        return out

    def is_invariant(self) -> bool:
        return not self.invariance_violations()

    def is_nondegenerate(self) -> bool:
        return rank(self.matrix) == self.algebra.dim

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def killing_form(a: AlgebraPresentation) -> BilinearForm:
    """``K(x, y) = tr(ad x ad y)``."""
    if a.windowed:
        raise UnsupportedKindError(f"Killing form of windowed {a.name} is undefined")
    ads = [a.ad(i) for i in range(a.dim)]

    def _trace(m: SparseMatrix) -> Fraction:
        return Fraction(sum((m[k, k] for k in range(m.rows)), Fraction(0)))

    return BilinearForm.from_function(a, lambda i, j: _trace(ads[i] @ ads[j]))


def is_nondegenerate(form: BilinearForm) -> bool:
    return form.is_nondegenerate()
