"""Cochain spaces and exact coboundary matrices.

Two complexes are assembled from structure constants:

* the Loday complex ``C^n(L, M) = Hom(L^{(x)n}, M)`` of a Leibniz algebra, basis
  indexed by all ordered n-tuples of basis elements,
* the Chevalley-Eilenberg complex ``Hom(/\\^n g, M)`` of a Lie algebra, basis
  indexed by strictly increasing n-tuples.

Coordinates are laid out coefficient-major: index = ``coeff * #tuples + rank``
where ``rank`` is the lexicographic position of the tuple.

For windowed algebras a coboundary row is emitted only for admissible tuples:
every bracket needed to evaluate the row is in-window and every tuple obtained
by substituting such a bracket is itself admissible. Inadmissible rows are zero,
so ``d . d = 0`` holds exactly on windows too.
"""

import dataclasses
import enum
import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import AlgebraPresentation, Degree, Representation, trivial_module
from .exactlin import SparseMatrix, Vector
from .exceptions import ContractViolation, UnsupportedKindError
from .utils import CancellationToken, check_cancel, to_fraction

logger = logging.getLogger(__name__)

Indices = Tuple[int, ...]


class Theory(str, enum.Enum):
    LEIBNIZ = "leibniz"
    CHEVALLEY_EILENBERG = "chevalley_eilenberg"

    @classmethod
    def parse(cls, value: Union[str, "Theory"]) -> "Theory":
        if isinstance(value, Theory):
            return value
        aliases = {"lie": cls.CHEVALLEY_EILENBERG, "ce": cls.CHEVALLEY_EILENBERG}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise ContractViolation(f"unknown cohomology theory {value!r}")


def permutation_sign(values: Sequence[int]) -> int:
    """Sign of the permutation sorting `values`; 0 if a value repeats."""
    if len(set(values)) != len(values):
        return 0
    inversions = sum(
        1 for a, b in itertools.combinations(range(len(values)), 2) if values[a] > values[b]
    )
    return -1 if inversions % 2 else 1


@dataclasses.dataclass(frozen=True)
class CochainSpace:
    """The degree-n cochains of an algebra with coefficients in a module.

    Arguments:
        theory (Theory): Loday (leibniz) or Chevalley-Eilenberg
        degree (int): Cochain degree n >= 0
        algebra (AlgebraPresentation): The algebra
        coefficients (Representation): The coefficient module
        weight (Degree, optional): If given, only tuples whose degrees sum to
            `weight` are kept. Requires a graded algebra and trivial coefficients.
    """

    theory: Theory
    degree: int
    algebra: AlgebraPresentation
    coefficients: Representation
    weight: Optional[Degree] = None
    tuples: Tuple[Indices, ...] = dataclasses.field(
        init=False, compare=False, repr=False
    )
    positions: Dict[Indices, int] = dataclasses.field(
        init=False, compare=False, repr=False
    )

    __hash__ = None

    def __post_init__(self):
        object.__setattr__(self, "theory", Theory.parse(self.theory))
        if self.degree < 0:
            raise ContractViolation(f"negative cochain degree {self.degree}")
        if self.coefficients.algebra is not self.algebra and (
            self.coefficients.algebra != self.algebra
        ):
            raise ContractViolation("coefficient module belongs to another algebra")
        if self.theory is Theory.CHEVALLEY_EILENBERG and not self.algebra.is_lie:
            raise UnsupportedKindError(
                f"Chevalley-Eilenberg cochains of {self.algebra.name} need a Lie algebra"
            )
        n = self.algebra.dim
        if self.theory is Theory.LEIBNIZ:
            tuples = itertools.product(range(n), repeat=self.degree)
        else:
            tuples = itertools.combinations(range(n), self.degree)
        if self.weight is not None:
            if self.algebra.grading is None:
                raise ContractViolation(
                    f"weight restriction on ungraded {self.algebra.name}"
                )
            if not self.coefficients.is_trivial or self.coefficients.dim != 1:
                raise ContractViolation("weight restriction needs trivial coefficients")
            weight = tuple(self.weight)
            object.__setattr__(self, "weight", weight)
            if self.degree == 0:
                zero = tuple(0 for _ in self.algebra.grading[0]) if n else ()
                tuples = iter([()] if weight == zero else [])
            else:
                tuples = (t for t in tuples if self.algebra.weight(t) == weight)
        tuples = tuple(tuples)
        object.__setattr__(self, "tuples", tuples)
        object.__setattr__(self, "positions", {t: k for k, t in enumerate(tuples)})

    @property
    def dim(self) -> int:
        return len(self.tuples) * self.coefficients.dim

    def index(self, indices: Indices, coeff: int = 0) -> int:
        try:
            return coeff * len(self.tuples) + self.positions[tuple(indices)]
        except KeyError:
            raise ContractViolation(
                f"tuple {self.labels(indices)} is not a basis tuple of this space"
            )

    def basis_element(self, k: int) -> Tuple[Indices, int]:
        coeff, position = divmod(k, len(self.tuples))
        return self.tuples[position], coeff

    def labels(self, indices: Sequence[int]) -> Tuple[str, ...]:
        return tuple(self.algebra.basis[i] for i in indices)

    def with_degree(self, degree: int) -> "CochainSpace":
        return CochainSpace(
            self.theory, degree, self.algebra, self.coefficients, self.weight
        )


@dataclasses.dataclass(frozen=True)
class Cochain:
    """A cochain: sparse coordinates over a cochain space."""

    space: CochainSpace
    coords: Mapping[int, Fraction] = dataclasses.field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        coords = {}
        for k, v in self.coords.items():
            if not 0 <= k < self.space.dim:
                raise ContractViolation(
                    f"coordinate {k} outside cochain space of dimension {self.space.dim}"
                )
            v = to_fraction(v)
            if v:
                coords[k] = v
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_function(
        cls,
        space: CochainSpace,
        fn: Callable[[Indices], Union[Fraction, int, Mapping[int, Fraction]]],
    ) -> "Cochain":
        """Sample a function of basis-index tuples.

        `fn` returns a scalar for one-dimensional coefficients, or a sparse
        vector over the module basis.
        """
        coords = {}
        for t in space.tuples:
            value = fn(t)
            if not isinstance(value, Mapping):
                value = {0: value}
            for c, v in value.items():
                if v:
                    coords[space.index(t, c)] = v
        return cls(space, coords)

    @property
    def degree(self) -> int:
        return self.space.degree

    def value(self, indices: Indices, coeff: int = 0) -> Fraction:
        """Coefficient at a basis tuple. For CE cochains any ordering of distinct
        indices is accepted and the sign of the sorting permutation applied."""
        if self.space.theory is Theory.CHEVALLEY_EILENBERG:
            sign = permutation_sign(indices)
            if sign == 0:
                return Fraction(0)
            indices = tuple(sorted(indices))
        else:
            sign = 1
        position = self.space.positions.get(tuple(indices))
        if position is None:
            return Fraction(0)
        return sign * self.coords.get(coeff * len(self.space.tuples) + position, Fraction(0))

    def items(self) -> List[Tuple[Indices, int, Fraction]]:
        """(tuple, coefficient index, value) for every nonzero coordinate."""
        return [(*self.space.basis_element(k), v) for k, v in sorted(self.coords.items())]

    def is_zero(self) -> bool:
        return not self.coords

    def project_to(self, space: CochainSpace, strict: bool = True) -> "Cochain":
        """Re-express in another space of the same complex (e.g. a weight block).

        Raises:
            ContractViolation: If `strict` and a nonzero coordinate has no
                counterpart in `space`
        """
        if (space.theory, space.degree) != (self.space.theory, self.space.degree):
            raise ContractViolation("cannot project between different complexes")
        coords = {}
        for t, c, v in self.items():
            position = space.positions.get(t)
            if position is None:
                if strict:
                    raise ContractViolation(
                        f"value at {self.space.labels(t)} lies outside the target space"
                    )
                continue
            coords[c * len(space.tuples) + position] = v
        return Cochain(space, coords)

    def __add__(self, other: "Cochain") -> "Cochain":
        coords = dict(self.coords)
        for k, v in other.coords.items():
            coords[k] = coords.get(k, 0) + v
        return Cochain(self.space, coords)

    def scale(self, factor) -> "Cochain":
        return Cochain(self.space, {k: v * factor for k, v in self.coords.items()})


# Window admissibility


class _Admissibility:
    """Memoized admissibility of tuples for windowed presentations."""

    def __init__(self, algebra: AlgebraPresentation, theory: Theory) -> None:
        self.algebra = algebra
        self.theory = theory
        self.honest = not algebra.has_out_of_window()
        self._memo: Dict[Indices, bool] = {}

    def merged(self, t: Indices) -> Optional[List[Indices]]:
        """Tuples reached by bracketing one pair of `t`, or None if a bracket
        leaves the window."""
        out = []
        for i, j in itertools.combinations(range(len(t)), 2):
            value = self.algebra.bracket(t[i], t[j])
            if value is None:
                return None
            for k in value:
                if self.theory is Theory.LEIBNIZ:
                    s = t[:i] + (k,) + t[i + 1 : j] + t[j + 1 :]
                else:
                    rest = t[:i] + t[i + 1 : j] + t[j + 1 :]
                    if k in rest:
                        continue
                    s = tuple(sorted((k,) + rest))
                out.append(s)
        return out

    def __call__(self, t: Indices) -> bool:
        if self.honest or len(t) < 2:
            return True
        known = self._memo.get(t)
        if known is not None:
            return known
        merged = self.merged(t)
        result = merged is not None and all(self(s) for s in merged)
        self._memo[t] = result
        return result


# Coboundaries


def _spaces(
    theory: Theory,
    g: AlgebraPresentation,
    module: Representation,
    n: int,
    weight: Optional[Degree],
) -> Tuple[CochainSpace, CochainSpace]:
    return (
        CochainSpace(theory, n, g, module, weight),
        CochainSpace(theory, n + 1, g, module, weight),
    )


def leibniz_coboundary(
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    n: int = 1,
    weight: Optional[Degree] = None,
    cancel: Optional[CancellationToken] = None,
) -> SparseMatrix:
    """Matrix of the Loday coboundary ``d^n : C^n -> C^{n+1}``.

    ``(d^n f)(x_1..x_{n+1}) = [x_1, f(x_2..x_{n+1})]
    + sum_{i>=2} (-1)^i [f(..^x_i..), x_i]
    + sum_{i<j} (-1)^{j+1} f(x_1..x_{i-1}, [x_i,x_j], x_{i+1}..^x_j..)``

    Args:
        g (AlgebraPresentation): The algebra
        module (Representation, optional): Coefficients. Defaults to trivial.
        n (int): Source degree
        weight (Degree, optional): Restrict both spaces to a weight block
        cancel (CancellationToken, optional): Cancellation token

    Returns:
        SparseMatrix: dim C^{n+1} x dim C^n
    """
    module = module or trivial_module(g)
    source, target = _spaces(Theory.LEIBNIZ, g, module, n, weight)
    admissible = _Admissibility(g, Theory.LEIBNIZ)
    L, R = module.left_action, module.right_action
    columns_of = [{} for _ in range(module.dim)]
    for c in range(module.dim):
        for x in range(g.dim):
            columns_of[c][("L", x)] = L[x].column(c)
            columns_of[c][("R", x)] = R[x].column(c)
    rows: Dict[int, Vector] = {}
    for t in target.tuples:
        check_cancel(cancel)
        if not admissible(t):
            continue
        # per-output-coefficient accumulators
        acc: Dict[int, Vector] = {}

        def _add(m: int, col: int, value) -> None:
            row = acc.setdefault(m, {})
            v = row.get(col, 0) + value
            if v:
                row[col] = v
            else:
                row.pop(col, None)

        if not module.is_trivial:
            head = t[1:]
            for c in range(module.dim):
                col = source.index(head, c)
                for m, v in columns_of[c][("L", t[0])].items():
                    _add(m, col, v)
                for i in range(1, len(t)):
                    col = source.index(t[:i] + t[i + 1 :], c)
                    sign = 1 if (i + 1) % 2 == 0 else -1
                    for m, v in columns_of[c][("R", t[i])].items():
                        _add(m, col, sign * v)
        for i, j in itertools.combinations(range(len(t)), 2):
            value = g.bracket(t[i], t[j])
            sign = 1 if (j + 2) % 2 == 0 else -1
            for k, b in value.items():
                s = t[:i] + (k,) + t[i + 1 : j] + t[j + 1 :]
                for m in range(module.dim):
                    _add(m, source.index(s, m), sign * b)
        for m, row in acc.items():
            if row:
                rows[target.index(t, m)] = row
    matrix = SparseMatrix.from_rows(target.dim, source.dim, rows)
    logger.debug(
        "assembled Loday d^%d for %s: %s, %d nonzeros",
        n,
        g.name,
        matrix.shape,
        matrix.nnz(),
    )
    return matrix


def ce_coboundary(
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    n: int = 1,
    weight: Optional[Degree] = None,
    cancel: Optional[CancellationToken] = None,
) -> SparseMatrix:
    """Matrix of the Chevalley-Eilenberg coboundary ``delta^n``.

    ``(delta^n f)(x_1..x_{n+1}) = sum_i (-1)^{i+1} x_i . f(..^x_i..)
    + sum_{i<j} (-1)^{i+j} f([x_i,x_j], ..^x_i..^x_j..)``

    Raises:
        UnsupportedKindError: For Leibniz presentations
    """
    if not g.is_lie:
        raise UnsupportedKindError(
            f"Chevalley-Eilenberg coboundary of {g.name} needs a Lie algebra"
        )
    module = module or trivial_module(g)
    source, target = _spaces(Theory.CHEVALLEY_EILENBERG, g, module, n, weight)
    admissible = _Admissibility(g, Theory.CHEVALLEY_EILENBERG)
    rows: Dict[int, Vector] = {}
    for t in target.tuples:
        check_cancel(cancel)
        if not admissible(t):
            continue
        acc: Dict[int, Vector] = {}

        def _add(m: int, col: int, value) -> None:
            row = acc.setdefault(m, {})
            v = row.get(col, 0) + value
            if v:
                row[col] = v
            else:
                row.pop(col, None)

        if not module.is_trivial:
            for i in range(len(t)):
                sign = 1 if i % 2 == 0 else -1
                rest = t[:i] + t[i + 1 :]
                for c in range(module.dim):
                    col = source.index(rest, c)
                    for m, v in module.left_action[t[i]].column(c).items():
                        _add(m, col, sign * v)
        for i, j in itertools.combinations(range(len(t)), 2):
            value = g.bracket(t[i], t[j])
            sign = 1 if (i + j) % 2 == 0 else -1
            rest = t[:i] + t[i + 1 : j] + t[j + 1 :]
            for k, b in value.items():
                if k in rest:
                    continue
                s = tuple(sorted((k,) + rest))
                # moving k from the front to its sorted slot
                shift = -1 if s.index(k) % 2 else 1
                for m in range(module.dim):
                    _add(m, source.index(s, m), sign * shift * b)
        for m, row in acc.items():
            if row:
                rows[target.index(t, m)] = row
    matrix = SparseMatrix.from_rows(target.dim, source.dim, rows)
    logger.debug(
        "assembled CE delta^%d for %s: %s, %d nonzeros",
        n,
        g.name,
        matrix.shape,
        matrix.nnz(),
    )
    return matrix


def coboundary(
    theory: Union[str, Theory],
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    n: int = 1,
    weight: Optional[Degree] = None,
    cancel: Optional[CancellationToken] = None,
) -> SparseMatrix:
    if Theory.parse(theory) is Theory.LEIBNIZ:
        return leibniz_coboundary(g, module, n, weight=weight, cancel=cancel)
    return ce_coboundary(g, module, n, weight=weight, cancel=cancel)


def coboundary_of(
    cochain: Cochain, cancel: Optional[CancellationToken] = None
) -> Cochain:
    """Apply the coboundary of the cochain's complex."""
    space = cochain.space
    d = coboundary(
        space.theory,
        space.algebra,
        space.coefficients,
        space.degree,
        weight=space.weight,
        cancel=cancel,
    )
    return Cochain(space.with_degree(space.degree + 1), d.matvec(cochain.coords))


def is_cocycle(cochain: Cochain, cancel: Optional[CancellationToken] = None) -> bool:
    """Whether the (windowed) coboundary annihilates the cochain."""
    return coboundary_of(cochain, cancel=cancel).is_zero()


def skew_embedding(
    g: AlgebraPresentation,
    module: Optional[Representation] = None,
    n: int = 2,
    weight: Optional[Degree] = None,
) -> SparseMatrix:
    """The embedding of alternating cochains into Loday cochains.

    A CE basis cochain on the increasing tuple ``s`` maps to the cochain taking
    value ``sign(p)`` on every permutation ``p(s)`` and 0 on tuples with repeats.
    """
    if not g.is_lie:
        raise UnsupportedKindError(f"skew embedding of {g.name} needs a Lie algebra")
    module = module or trivial_module(g)
    ce = CochainSpace(Theory.CHEVALLEY_EILENBERG, n, g, module, weight)
    loday = CochainSpace(Theory.LEIBNIZ, n, g, module, weight)
    entries = {}
    for s in ce.tuples:
        for p in itertools.permutations(range(n)):
            t = tuple(s[k] for k in p)
            sign = permutation_sign(p)
            for m in range(module.dim):
                entries[(loday.index(t, m), ce.index(s, m))] = Fraction(sign)
    return SparseMatrix.from_entries(loday.dim, ce.dim, entries)


def admissible_positions(space: CochainSpace) -> Optional[set]:
    """Positions (tuple ranks) of admissible tuples of a windowed space, or None
    when every tuple is admissible."""
    admissible = _Admissibility(space.algebra, space.theory)
    if admissible.honest:
        return None
    return {k for k, t in enumerate(space.tuples) if admissible(t)}


def is_alternating(cochain: Cochain) -> bool:
    """Whether a Loday cochain changes sign under every transposition of
    arguments (and so vanishes on repeated arguments)."""
    space = cochain.space
    if space.theory is Theory.CHEVALLEY_EILENBERG:
        return True
    for t, c, v in cochain.items():
        if len(set(t)) != len(t):
            return False
        for p in itertools.permutations(range(len(t))):
            s = tuple(t[k] for k in p)
            if cochain.value(s, c) != permutation_sign(p) * v:
                return False
    return True
