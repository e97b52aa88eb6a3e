"""Exact rational sparse linear algebra.

Matrices are stored row-major as dictionaries of nonzero `Fraction` entries.
Elimination runs fraction-free on primitive integer rows (every row is kept
divided by the gcd of its entries) and only divides by the pivots when the
reduced row echelon form is read off at the end.
"""

import dataclasses
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import ContainmentError, ContractViolation, WellDefinednessError
from .utils import CancellationToken, check_cancel

logger = logging.getLogger(__name__)

Vector = Dict[int, Fraction]
"""A sparse vector: index -> nonzero coefficient."""


def _clean(vector: Mapping[int, Fraction]) -> Vector:
    return {i: Fraction(v) for i, v in vector.items() if v != 0}


def add_scaled(target: Vector, source: Mapping[int, Fraction], scale) -> None:
    """In place `target += scale * source`, dropping cancelled entries."""
    if scale == 0:
        return
    for i, v in source.items():
        value = target.get(i, 0) + scale * v
        if value:
            target[i] = value
        else:
            target.pop(i, None)


def dense(vector: Mapping[int, Fraction], length: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(vector.get(i, 0)) for i in range(length))


@dataclasses.dataclass(frozen=True, eq=True)
class SparseMatrix:
    """An exact rational matrix with `rows` x `cols` shape.

    Arguments:
        rows (int): Number of rows
        cols (int): Number of columns
        data (Dict[int, Dict[int, Fraction]]): Row-major nonzero entries
    """

    rows: int
    cols: int
    data: Mapping[int, Mapping[int, Fraction]] = dataclasses.field(
        default_factory=dict
    )

    __hash__ = None

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ContractViolation(f"negative shape {(self.rows, self.cols)}")
        for r, row in self.data.items():
            if not 0 <= r < self.rows:
                raise ContractViolation(f"row index {r} out of bounds {self.rows}")
            if not row:
                raise ContractViolation(f"empty row {r} stored")
            for c, v in row.items():
                if not 0 <= c < self.cols:
                    raise ContractViolation(
                        f"column index {c} out of bounds {self.cols}"
                    )
                if v == 0:
                    raise ContractViolation(f"zero entry stored at {(r, c)}")

    # Construction

    @classmethod
    def from_rows(
        cls, rows: int, cols: int, row_vectors: Mapping[int, Mapping[int, Fraction]]
    ) -> "SparseMatrix":
        data = {}
        for r, row in row_vectors.items():
            cleaned = _clean(row)
            if cleaned:
                data[r] = cleaned
        return cls(rows, cols, data)

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, entries: Mapping[Tuple[int, int], Fraction]
    ) -> "SparseMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for (r, c), v in entries.items():
            if v != 0:
                data.setdefault(r, {})[c] = Fraction(v)
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        for line in matrix:
            if len(line) != cols:
                raise ContractViolation("ragged dense matrix")
        return cls.from_rows(
            rows, cols, {r: dict(enumerate(line)) for r, line in enumerate(matrix)}
        )

    @classmethod
    def from_columns(
        cls, rows: int, columns: Sequence[Mapping[int, Fraction]]
    ) -> "SparseMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for c, column in enumerate(columns):
            for r, v in column.items():
                if v != 0:
                    data.setdefault(r, {})[c] = Fraction(v)
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    # Access

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(r, c): v for r, row in self.data.items() for c, v in row.items()}

    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        r, c = index
        return self.data.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> Vector:
        return dict(self.data.get(r, {}))

    def column(self, c: int) -> Vector:
        return {r: row[c] for r, row in self.data.items() if c in row}

    def columns(self) -> List[Vector]:
        columns: List[Vector] = [{} for _ in range(self.cols)]
        for r, row in self.data.items():
            for c, v in row.items():
                columns[c][r] = v
        return columns

    def is_zero(self) -> bool:
        return not self.data

    def to_dense(self) -> List[List[Fraction]]:
        return [list(dense(self.data.get(r, {}), self.cols)) for r in range(self.rows)]

    # Arithmetic

    def transpose(self) -> "SparseMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return SparseMatrix(self.cols, self.rows, data)

    def matvec(self, vector: Mapping[int, Fraction]) -> Vector:
        """Multiply with a sparse column vector."""
        out: Vector = {}
        for r, row in self.data.items():
            total = sum((v * vector[c] for c, v in row.items() if c in vector), 0)
            if total:
                out[r] = Fraction(total)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ContractViolation(
                f"cannot multiply {self.shape} by {other.shape} matrices"
            )
        data: Dict[int, Dict[int, Fraction]] = {}
        for r, row in self.data.items():
            acc: Vector = {}
            for k, v in row.items():
                other_row = other.data.get(k)
                if other_row:
                    add_scaled(acc, other_row, v)
            if acc:
                data[r] = acc
        return SparseMatrix(self.rows, other.cols, data)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ContractViolation(f"cannot add {self.shape} and {other.shape}")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            acc = data.setdefault(r, {})
            add_scaled(acc, row, 1)
            if not acc:
                del data[r]
        return SparseMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, factor) -> "SparseMatrix":
        if factor == 0:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix(
            self.rows,
            self.cols,
            {r: {c: v * factor for c, v in row.items()} for r, row in self.data.items()},
        )

    def hstack(self, *others: "SparseMatrix") -> "SparseMatrix":
        data = {r: dict(row) for r, row in self.data.items()}
        offset = self.cols
        for other in others:
            if other.rows != self.rows:
                raise ContractViolation("hstack needs equal row counts")
            for r, row in other.data.items():
                target = data.setdefault(r, {})
                for c, v in row.items():
                    target[c + offset] = v
            offset += other.cols
        return SparseMatrix(self.rows, offset, data)

    def vstack(self, *others: "SparseMatrix") -> "SparseMatrix":
        data = {r: dict(row) for r, row in self.data.items()}
        offset = self.rows
        for other in others:
            if other.cols != self.cols:
                raise ContractViolation("vstack needs equal column counts")
            for r, row in other.data.items():
                data[r + offset] = dict(row)
            offset += other.rows
        return SparseMatrix(offset, self.cols, data)


# Elimination


def _primitive(row: Dict[int, int]) -> int:
    """Divide an integer row by its content in place, making the leading entry
    positive. Returns the (signed) divisor that was applied."""
    content = 0
    for v in row.values():
        content = gcd(content, v)
        if content == 1:
            break
    if row[min(row)] < 0:
        content = -content
    if content != 1:
        for c in row:
            row[c] //= content
    return content


def _integer_row(row: Mapping[int, Fraction]) -> Tuple[Dict[int, int], Fraction]:
    """Scale a rational row to a primitive integer row.

    Returns the integer row and the factor `s` with `int_row == s * row`.
    """
    denominator = 1
    for v in row.values():
        d = Fraction(v).denominator
        denominator = denominator * d // gcd(denominator, d)
    int_row = {c: int(Fraction(v) * denominator) for c, v in row.items()}
    content = _primitive(int_row)
    return int_row, Fraction(denominator, content)


class _Echelon:
    """Incremental fraction-free row echelon form.

    Rows are inserted one at a time and reduced against the existing pivot rows;
    a row that survives contributes a new pivot at its first nonzero column.
    Pivot rows are primitive integer rows with a positive pivot entry.
    """

    def __init__(
        self,
        cols: int,
        track: bool = False,
        cancel: Optional[CancellationToken] = None,
    ) -> None:
        self.cols = cols
        self.track = track
        self.cancel = cancel
        self.pivot_rows: Dict[int, Dict[int, int]] = {}
        self.combos: Dict[int, Vector] = {}
        self.zero_combos: List[Vector] = []
        self.reduced = False

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def _reduce(self, row: Dict[int, int], combo: Optional[Vector]) -> None:
        while True:
            hits = [c for c in row if c in self.pivot_rows]
            if not hits:
                return
            c = min(hits)
            pivot_row = self.pivot_rows[c]
            p, a = pivot_row[c], row[c]
            g = gcd(p, a)
            keep, drop = p // g, a // g
            for k in list(row):
                row[k] *= keep
            for k, v in pivot_row.items():
                value = row.get(k, 0) - drop * v
                if value:
                    row[k] = value
                else:
                    row.pop(k, None)
            if combo is not None:
                for k in list(combo):
                    combo[k] *= keep
                add_scaled(combo, self.combos[c], -drop)
            if not row:
                return
            content = _primitive(row)
            if combo is not None and content != 1:
                for k in combo:
                    combo[k] /= content

    def insert(self, row: Mapping[int, Fraction], index: int = None) -> Optional[int]:
        """Insert a row; returns the new pivot column or None if it reduced to 0."""
        check_cancel(self.cancel)
        self.reduced = False
        if not row:
            if self.track:
                self.zero_combos.append({index: Fraction(1)})
            return None
        int_row, scale = _integer_row(row)
        combo = {index: scale} if self.track else None
        self._reduce(int_row, combo)
        if not int_row:
            if self.track:
                self.zero_combos.append(combo)
            return None
        pivot = min(int_row)
        self.pivot_rows[pivot] = int_row
        if self.track:
            self.combos[pivot] = combo
        return pivot

    def back_substitute(self) -> None:
        """Clear the entries above every pivot, giving reduced row echelon form."""
        if self.reduced:
            return
        pivots = sorted(self.pivot_rows)
        for i in range(len(pivots) - 1, -1, -1):
            check_cancel(self.cancel)
            p = pivots[i]
            prow = self.pivot_rows[p]
            pcombo = self.combos.get(p)
            for q in pivots[:i]:
                qrow = self.pivot_rows[q]
                a = qrow.get(p)
                if not a:
                    continue
                g = gcd(prow[p], a)
                keep, drop = prow[p] // g, a // g
                for k in list(qrow):
                    qrow[k] *= keep
                for k, v in prow.items():
                    value = qrow.get(k, 0) - drop * v
                    if value:
                        qrow[k] = value
                    else:
                        qrow.pop(k, None)
                qcombo = self.combos.get(q) if self.track else None
                if qcombo is not None:
                    for k in list(qcombo):
                        qcombo[k] *= keep
                    add_scaled(qcombo, pcombo, -drop)
                content = _primitive(qrow)
                if qcombo is not None and content != 1:
                    for k in qcombo:
                        qcombo[k] /= content
        self.reduced = True

    def normalized_rows(self) -> List[Tuple[int, Vector]]:
        """Pivot rows divided by their pivot entry, in pivot order."""
        out = []
        for p in sorted(self.pivot_rows):
            row = self.pivot_rows[p]
            lead = row[p]
            out.append((p, {c: Fraction(v, lead) for c, v in row.items()}))
        return out


@dataclasses.dataclass(frozen=True)
class EchelonResult:
    """Outcome of `eliminate`.

    Arguments:
        rank (int): Number of pivots
        pivots (Tuple[int, ...]): Pivot columns in increasing order
        reduced (SparseMatrix): Reduced row echelon form, same shape as the input
        transform (SparseMatrix | None): Invertible matrix with
            `transform @ m == reduced`, if requested
    """

    rank: int
    pivots: Tuple[int, ...]
    reduced: SparseMatrix
    transform: Optional[SparseMatrix] = None


def _echelon_of(
    m: SparseMatrix, track: bool = False, cancel: Optional[CancellationToken] = None
) -> _Echelon:
    echelon = _Echelon(m.cols, track=track, cancel=cancel)
    for r in range(m.rows):
        echelon.insert(m.data.get(r, {}), index=r)
    return echelon


def eliminate(
    m: SparseMatrix,
    with_transform: bool = True,
    cancel: Optional[CancellationToken] = None,
) -> EchelonResult:
    """Compute the reduced row echelon form of a matrix.

    Pivots are taken at the first nonzero column of each surviving row, scanning
    rows top to bottom, so results are reproducible across runs.

    Args:
        m (SparseMatrix): The matrix to eliminate
        with_transform (bool): Whether to also compute the row transform.
            Defaults to True.
        cancel (CancellationToken | None): Optional cancellation token

    Returns:
        EchelonResult: rank, pivots, reduced form and (optionally) transform
    """
    echelon = _echelon_of(m, track=with_transform, cancel=cancel)
    echelon.back_substitute()
    rows = echelon.normalized_rows()
    reduced = SparseMatrix(m.rows, m.cols, {i: row for i, (_, row) in enumerate(rows)})
    transform = None
    if with_transform:
        t_rows: Dict[int, Vector] = {}
        for i, p in enumerate(sorted(echelon.pivot_rows)):
            lead = echelon.pivot_rows[p][p]
            t_rows[i] = {k: v / lead for k, v in echelon.combos[p].items()}
        for j, combo in enumerate(echelon.zero_combos):
            t_rows[len(rows) + j] = combo
        transform = SparseMatrix.from_rows(m.rows, m.rows, t_rows)
    logger.debug("eliminated %s matrix: rank %d", m.shape, echelon.rank)
    return EchelonResult(
        rank=echelon.rank,
        pivots=tuple(p for p, _ in rows),
        reduced=reduced,
        transform=transform,
    )


def rank(m: SparseMatrix, cancel: Optional[CancellationToken] = None) -> int:
    """Rank of a matrix (row echelon form only, no back substitution)."""
    return _echelon_of(m, cancel=cancel).rank


# Subspaces


@dataclasses.dataclass(frozen=True)
class Subspace:
    """A linear subspace of K^ambient_dim.

    The basis matrix has one column per basis vector. It is canonical: its
    transpose is in reduced row echelon form, so every basis vector has a 1 at
    its pivot coordinate and 0 at the pivots of the other basis vectors.

    Arguments:
        ambient_dim (int): Dimension of the ambient coordinate space
        basis (SparseMatrix): ambient_dim x dim matrix of basis columns
        pivots (Tuple[int, ...]): Pivot coordinate of each basis column
    """

    ambient_dim: int
    basis: SparseMatrix
    pivots: Tuple[int, ...]

    __hash__ = None

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @classmethod
    def from_vectors(
        cls,
        ambient_dim: int,
        vectors: Iterable[Mapping[int, Fraction]],
        cancel: Optional[CancellationToken] = None,
    ) -> "Subspace":
        """Span of the given sparse vectors, in canonical form."""
        echelon = _Echelon(ambient_dim, cancel=cancel)
        for v in vectors:
            for i in v:
                if not 0 <= i < ambient_dim:
                    raise ContractViolation(
                        f"coordinate {i} outside ambient dimension {ambient_dim}"
                    )
            echelon.insert(_clean(v))
        echelon.back_substitute()
        rows = echelon.normalized_rows()
        return cls(
            ambient_dim=ambient_dim,
            basis=SparseMatrix.from_columns(ambient_dim, [row for _, row in rows]),
            pivots=tuple(p for p, _ in rows),
        )

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, SparseMatrix.zeros(ambient_dim, 0), ())

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim, SparseMatrix.identity(ambient_dim), tuple(range(ambient_dim))
        )

    def vectors(self) -> List[Vector]:
        return self.basis.columns()

    def coordinates(self, vector: Mapping[int, Fraction]) -> Optional[Tuple[Fraction, ...]]:
        """Coordinates of a vector in this basis, or None if it is not a member."""
        coords = tuple(Fraction(vector.get(p, 0)) for p in self.pivots)
        residual = _clean(vector)
        for c, basis_vector in zip(coords, self.vectors()):
            add_scaled(residual, basis_vector, -c)
        if residual:
            return None
        return coords

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return self.coordinates(vector) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            return False
        return all(self.contains(v) for v in other.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )


def nullspace(m: SparseMatrix, cancel: Optional[CancellationToken] = None) -> Subspace:
    """Kernel of a matrix as a canonical subspace of K^cols."""
    echelon = _echelon_of(m, cancel=cancel)
    echelon.back_substitute()
    rows = echelon.normalized_rows()
    pivot_set = {p for p, _ in rows}
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v: Vector = {free: Fraction(1)}
        for p, row in rows:
            if free in row:
                v[p] = -row[free]
        vectors.append(v)
    space = Subspace.from_vectors(m.cols, vectors, cancel=cancel)
    logger.debug("nullspace of %s matrix has dimension %d", m.shape, space.dim)
    return space


def column_space(m: SparseMatrix, cancel: Optional[CancellationToken] = None) -> Subspace:
    """Image of a matrix as a canonical subspace of K^rows."""
    return Subspace.from_vectors(m.rows, m.columns(), cancel=cancel)


def solve(
    m: SparseMatrix,
    b: Union[Sequence, Mapping[int, Fraction]],
    cancel: Optional[CancellationToken] = None,
) -> Optional[Tuple[Fraction, ...]]:
    """Solve `m @ x == b` exactly.

    Args:
        m (SparseMatrix): The coefficient matrix
        b (Sequence | Dict[int, Fraction]): Right hand side, dense or sparse
        cancel (CancellationToken | None): Optional cancellation token

    Raises:
        ContractViolation: If a dense `b` does not have `m.rows` entries

    Returns:
        Tuple[Fraction, ...] | None: A solution, or None if the system is
            inconsistent
    """
    if isinstance(b, Mapping):
        rhs = _clean(b)
        if any(not 0 <= i < m.rows for i in rhs):
            raise ContractViolation(f"right hand side index outside {m.rows} rows")
    else:
        if len(b) != m.rows:
            raise ContractViolation(
                f"right hand side has length {len(b)}, matrix has {m.rows} rows"
            )
        rhs = _clean(dict(enumerate(b)))
    x = solve_sparse(m, rhs, cancel=cancel)
    if x is None:
        return None
    return dense(x, m.cols)


def solve_sparse(
    m: SparseMatrix,
    rhs: Mapping[int, Fraction],
    cancel: Optional[CancellationToken] = None,
) -> Optional[Vector]:
    augmented_col = m.cols
    echelon = _Echelon(m.cols + 1, cancel=cancel)
    for r in range(m.rows):
        row = dict(m.data.get(r, {}))
        if r in rhs:
            row[augmented_col] = Fraction(rhs[r])
        if echelon.insert(row) == augmented_col:
            return None
    echelon.back_substitute()
    x: Vector = {}
    for p, row in echelon.normalized_rows():
        if augmented_col in row:
            x[p] = row[augmented_col]
    return x


# Quotients


@dataclasses.dataclass(frozen=True)
class Quotient:
    """The quotient `ambient / sub` with canonical representatives.

    Arguments:
        ambient (Subspace): The ambient subspace
        sub (Subspace): The subspace divided out
        representatives (Subspace): Canonical complement of `sub` in `ambient`;
            its basis vectors represent the quotient basis
        reduce (SparseMatrix): dim(quotient) x ambient_dim matrix sending an
            ambient vector to the coordinates of its class
    """

    ambient: Subspace
    sub: Subspace
    representatives: Subspace
    reduce: SparseMatrix

    __hash__ = None

    @property
    def dim(self) -> int:
        return self.representatives.dim

    def classify(self, vector: Mapping[int, Fraction]) -> Tuple[Fraction, ...]:
        """Class coordinates of an ambient vector."""
        if not self.ambient.contains(vector):
            raise ContainmentError("vector does not lie in the ambient space")
        return dense(self.reduce.matvec(vector), self.dim)


def quotient_basis(
    ambient: Subspace, sub: Subspace, cancel: Optional[CancellationToken] = None
) -> Quotient:
    """Canonical basis of `ambient / sub` and the reduction map onto it.

    Args:
        ambient (Subspace): The ambient subspace
        sub (Subspace): A subspace of `ambient`
        cancel (CancellationToken | None): Optional cancellation token

    Raises:
        ContainmentError: If `sub` is not contained in `ambient`

    Returns:
        Quotient: representatives and reduce map
    """
    if ambient.ambient_dim != sub.ambient_dim:
        raise ContainmentError(
            f"subspace lives in K^{sub.ambient_dim}, ambient in K^{ambient.ambient_dim}"
        )
    for k, v in enumerate(sub.vectors()):
        if not ambient.contains(v):
            raise ContainmentError(f"basis vector {k} of the subspace is not in ambient")
    sub_vectors = list(zip(sub.pivots, sub.vectors()))

    def _mod_sub(v: Mapping[int, Fraction]) -> Vector:
        u = _clean(v)
        for p, s in sub_vectors:
            if p in u:
                add_scaled(u, s, -u[p])
        return u

    reduced = [_mod_sub(v) for v in ambient.vectors()]
    representatives = Subspace.from_vectors(ambient.ambient_dim, reduced, cancel=cancel)
    if representatives.dim != ambient.dim - sub.dim:
        raise ContainmentError("quotient dimension mismatch")
    reduce_rows: Dict[int, Vector] = {}
    for k, q in enumerate(representatives.pivots):
        row: Vector = {q: Fraction(1)}
        for p, s in sub_vectors:
            if q in s:
                row[p] = row.get(p, 0) - s[q]
        reduce_rows[k] = row
    reduce = SparseMatrix.from_rows(representatives.dim, ambient.ambient_dim, reduce_rows)
    return Quotient(ambient, sub, representatives, reduce)


def induced_quotient_map(
    f: SparseMatrix, domain: Quotient, codomain: Quotient
) -> SparseMatrix:
    """Matrix of the map induced by `f` between two quotients.

    Args:
        f (SparseMatrix): Linear map between the ambient coordinate spaces
        domain (Quotient): Source quotient
        codomain (Quotient): Target quotient

    Raises:
        ContractViolation: If the shapes do not match
        WellDefinednessError: If `f` does not send the domain's ambient (resp.
            sub) space into the codomain's ambient (resp. sub) space

    Returns:
        SparseMatrix: dim(codomain) x dim(domain) matrix in class coordinates
    """
    if f.cols != domain.ambient.ambient_dim or f.rows != codomain.ambient.ambient_dim:
        raise ContractViolation(
            f"map of shape {f.shape} does not fit K^{domain.ambient.ambient_dim}"
            f" -> K^{codomain.ambient.ambient_dim}"
        )
    for k, v in enumerate(domain.sub.vectors()):
        if not codomain.sub.contains(f.matvec(v)):
            raise WellDefinednessError(
                f"image of subspace basis vector {k} is not in the target subspace"
            )
    for k, v in enumerate(domain.ambient.vectors()):
        if not codomain.ambient.contains(f.matvec(v)):
            raise WellDefinednessError(
                f"image of ambient basis vector {k} is not in the target ambient space"
            )
    columns = [
        codomain.reduce.matvec(f.matvec(r)) for r in domain.representatives.vectors()
    ]
    return SparseMatrix.from_columns(codomain.dim, columns)
