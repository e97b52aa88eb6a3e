"""Dense reference computations built straight from structure constants.

Cochains are enumerated naively, coboundaries are written as dense sympy
matrices and ranked with ``sympy.Matrix.rank``. Nothing here goes through
the sparse eliminator or the cochain spaces of the package.
"""

import itertools
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence

import sympy


def _rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def dense_rank(matrix: Sequence[Sequence]) -> int:
    rows = [[_rational(v) for v in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


def dense_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    product = sympy.Matrix([[_rational(v) for v in row] for row in a]) * sympy.Matrix(
        [[_rational(v) for v in row] for row in b]
    )
    return [
        [Fraction(int(v.p), int(v.q)) for v in product.row(r)]
        for r in range(product.rows)
    ]


def _structure_constants(g) -> Dict[tuple, Dict[int, Fraction]]:
    return {
        (i, j): dict(g.bracket(i, j))
        for i, j in itertools.product(range(g.dim), repeat=2)
        if g.bracket(i, j)
    }


def _rank(rows: int, cols: int, entries: Dict[tuple, Fraction]) -> int:
    if not rows or not cols:
        return 0
    m = sympy.zeros(rows, cols)
    for (r, c), v in entries.items():
        m[r, c] = _rational(v)
    return m.rank()


def loday_rank(g, n: int) -> int:
    """Rank of ``d^n`` on Loday cochains with trivial coefficients."""
    dim = g.dim
    brackets = _structure_constants(g)
    cols = {t: k for k, t in enumerate(itertools.product(range(dim), repeat=n))}
    entries: Dict[tuple, Fraction] = {}
    for r, t in enumerate(itertools.product(range(dim), repeat=n + 1)):
        for i, j in itertools.combinations(range(n + 1), 2):
            sign = -1 if j % 2 else 1
            for k, c in brackets.get((t[i], t[j]), {}).items():
                s = t[:i] + (k,) + t[i + 1 : j] + t[j + 1 :]
                key = (r, cols[s])
                entries[key] = entries.get(key, 0) + sign * c
    return _rank(dim ** (n + 1), dim**n, entries)


def _sorted_with_sign(values: Sequence[int]):
    if len(set(values)) < len(values):
        return None, 0
    sign = 1
    values = list(values)
    for a in range(len(values)):
        for b in range(len(values) - 1 - a):
            if values[b] > values[b + 1]:
                values[b], values[b + 1] = values[b + 1], values[b]
                sign = -sign
    return tuple(values), sign


def ce_rank(g, n: int) -> int:
    """Rank of ``delta^n`` on alternating cochains with trivial coefficients."""
    dim = g.dim
    brackets = _structure_constants(g)
    cols = {t: k for k, t in enumerate(itertools.combinations(range(dim), n))}
    entries: Dict[tuple, Fraction] = {}
    for r, t in enumerate(itertools.combinations(range(dim), n + 1)):
        for i, j in itertools.combinations(range(n + 1), 2):
            rest = t[:i] + t[i + 1 : j] + t[j + 1 :]
            for k, c in brackets.get((t[i], t[j]), {}).items():
                s, sign = _sorted_with_sign((k,) + rest)
                if s is None:
                    continue
                key = (r, cols[s])
                entries[key] = entries.get(key, 0) + (-1) ** (i + j) * sign * c
    return _rank(comb(dim, n + 1), comb(dim, n), entries)


def invariant_forms_dim(g) -> int:
    """Dimension of the symmetric forms with ``phi([x,y],z) = phi(x,[y,z])``."""
    dim = g.dim
    brackets = _structure_constants(g)
    pairs = {p: k for k, p in enumerate(itertools.combinations_with_replacement(range(dim), 2))}

    def _col(a, b):
        return pairs[(min(a, b), max(a, b))]

    entries: Dict[tuple, Fraction] = {}
    for r, (x, y, z) in enumerate(itertools.product(range(dim), repeat=3)):
        for k, c in brackets.get((x, y), {}).items():
            key = (r, _col(k, z))
            entries[key] = entries.get(key, 0) + c
        for k, c in brackets.get((y, z), {}).items():
            key = (r, _col(x, k))
            entries[key] = entries.get(key, 0) - c
    return len(pairs) - _rank(dim**3, len(pairs), entries)


def exact_sequence_dims(g) -> Dict[str, int]:
    """``H^2``, ``HL^2``, ``B`` and ``H^3`` for trivial coefficients."""
    dim = g.dim
    ce = {n: ce_rank(g, n) for n in (1, 2, 3)}
    loday = {n: loday_rank(g, n) for n in (1, 2)}
    return {
        "H2": comb(dim, 2) - ce[2] - ce[1],
        "HL2": dim**2 - loday[2] - loday[1],
        "B": invariant_forms_dim(g),
        "H3": comb(dim, 3) - ce[3] - ce[2],
    }
