"""Constructors for the algebras and named cocycles used throughout leibcoh.

Finite-dimensional algebras are built exactly. Infinite-dimensional graded
algebras are materialized as degree windows: brackets whose true value has a
term outside the window are marked `OUT_OF_WINDOW`.

Window basis labels encode degrees, e.g. ``L[-2]``, ``I[3]``, ``t[1]D[2]``,
``e[1;-2]`` and ``h[0]``. Named cocycles recognize their algebra by these labels,
so they also apply to presentations read back from files.
"""

import dataclasses
import itertools
import logging
import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.functions.combinatorial.numbers import stirling

from .algebra import (
    OUT_OF_WINDOW,
    AlgebraKind,
    AlgebraPresentation,
    BilinearForm,
    killing_form,
    trivial_module,
    validate,
)
from .cochain import Cochain, CochainSpace, Theory
from .cohomology import central_extension
from .exceptions import CatalogError
from .utils import parse_rational, to_fraction

logger = logging.getLogger(__name__)

Rule = Callable[[int, int], Optional[Dict[int, Fraction]]]
"""Bracket rule on basis indices; None means the product leaves the window."""

NOTICES = {
    "diffops": (
        "operator bracket used: [t^m D^r, t^n D^s] = t^(m+n)((D+n)^r D^s - (D+m)^s D^r)"
        " with D = t d/dt, certified by the windowed Jacobi check"
    ),
    "virasoro_like": (
        "bracket target taken as e_(m+m1, n+n1) (degree additive), certified by the"
        " windowed Jacobi check"
    ),
    "q_virasoro_like": (
        "bracket target taken as e_(m+m1, n+n1) (degree additive), certified by the"
        " windowed Jacobi check"
    ),
    "hvir": "central term (m^2 - m) C_LI used as printed",
    "w1inf_psi": (
        "psi is given on the basis t^(m+r) (d/dt)^r and transported to t^a D^j with"
        " D^j = sum_r S(j, r) t^r (d/dt)^r, S the Stirling numbers of the second kind"
    ),
}


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    """A constructed catalog algebra with the parameters that produced it."""

    name: str
    params: Dict[str, object]
    algebra: AlgebraPresentation

    __hash__ = None


def _check_window(window: int) -> int:
    if not isinstance(window, int) or window < 1:
        raise CatalogError(f"window radius must be a positive integer, got {window!r}")
    return window


def _from_rule(
    name: str,
    kind: AlgebraKind,
    basis: Sequence[str],
    rule: Rule,
    grading: Optional[Sequence] = None,
    windowed: bool = False,
    notices: Sequence[str] = (),
) -> AlgebraPresentation:
    n = len(basis)
    brackets = {}
    for i, j in itertools.product(range(n), repeat=2):
        if kind is AlgebraKind.LIE and i > j:
            continue
        value = rule(i, j)
        if value is None:
            brackets[(i, j)] = OUT_OF_WINDOW
        elif value:
            brackets[(i, j)] = value
    return AlgebraPresentation(
        name=name,
        kind=kind,
        basis=tuple(basis),
        brackets=brackets,
        grading=None if grading is None else tuple(grading),
        windowed=windowed,
        notices=tuple(notices),
    )


# Finite-dimensional algebras


def _matrix_unit(n: int, i: int, j: int) -> sympy.Matrix:
    m = sympy.zeros(n, n)
    m[i, j] = 1
    return m


def _special_linear_basis(n: int) -> List[Tuple[str, sympy.Matrix]]:
    if n == 2:
        return [
            ("e", _matrix_unit(2, 0, 1)),
            ("f", _matrix_unit(2, 1, 0)),
            ("h", _matrix_unit(2, 0, 0) - _matrix_unit(2, 1, 1)),
        ]
    basis = [
        (f"E{i + 1}{j + 1}", _matrix_unit(n, i, j))
        for i, j in itertools.product(range(n), repeat=2)
        if i != j
    ]
    basis += [
        (f"H{k + 1}", _matrix_unit(n, k, k) - _matrix_unit(n, k + 1, k + 1))
        for k in range(n - 1)
    ]
    return basis


def _sl_coordinates(n: int, labels: Sequence[str], m: sympy.Matrix) -> Dict[int, Fraction]:
    """Coordinates of a traceless matrix in the standard sl(n) basis."""
    index = {label: k for k, label in enumerate(labels)}
    out = {}
    for i, j in itertools.product(range(n), repeat=2):
        if i != j and m[i, j] != 0:
            label = ("e" if i < j else "f") if n == 2 else f"E{i + 1}{j + 1}"
            out[index[label]] = to_fraction(m[i, j])
    # H_k coefficient is the partial sum of the diagonal
    total = sympy.Integer(0)
    for k in range(n - 1):
        total += m[k, k]
        if total != 0:
            out[index["h" if n == 2 else f"H{k + 1}"]] = to_fraction(total)
    return out


def special_linear(n: int) -> AlgebraPresentation:
    """sl(n) with matrix-unit basis; sl2 uses the labels e, f, h."""
    if n < 2:
        raise CatalogError(f"sl(n) needs n >= 2, got {n}")
    basis = _special_linear_basis(n)
    labels = [label for label, _ in basis]
    matrices = [m for _, m in basis]

    def _rule(i, j):
        commutator = matrices[i] * matrices[j] - matrices[j] * matrices[i]
        return _sl_coordinates(n, labels, commutator)

    return _from_rule(f"sl{n}", AlgebraKind.LIE, labels, _rule)


def trace_form(name: str) -> BilinearForm:
    """The trace form ``tr(xy)`` of sl2 or sl3 in its defining representation."""
    sizes = {"sl2": 2, "sl3": 3}
    if name not in sizes:
        raise CatalogError(f"no trace form for {name!r}")
    n = sizes[name]
    matrices = [m for _, m in _special_linear_basis(n)]
    algebra = special_linear(n)
    return BilinearForm.from_function(
        algebra, lambda i, j: to_fraction((matrices[i] * matrices[j]).trace())
    )


def abelian(n: int) -> AlgebraPresentation:
    if not isinstance(n, int) or n < 1:
        raise CatalogError(f"abelian algebra needs dimension >= 1, got {n!r}")
    return AlgebraPresentation(
        name=f"abelian{n}",
        kind=AlgebraKind.LIE,
        basis=tuple(f"x{k + 1}" for k in range(n)),
    )


def heisenberg3() -> AlgebraPresentation:
    return AlgebraPresentation.from_labels(
        "heisenberg3", "lie", ["x", "y", "z"], {("x", "y"): {"z": 1}}
    )


def affine1() -> AlgebraPresentation:
    """The non-abelian two-dimensional Lie algebra ``[x, y] = y``."""
    return AlgebraPresentation.from_labels(
        "affine1", "lie", ["x", "y"], {("x", "y"): {"y": 1}}
    )


# Windows of graded algebras


def _window_rule(index: Dict, product: Callable) -> Rule:
    """Turn a product on degree-labelled basis keys into a windowed rule.

    `product(i, j)` returns ``{key: coefficient}``; keys missing from `index`
    lie outside the window.
    """

    def _rule(i, j):
        out = {}
        for key, c in product(i, j).items():
            if c == 0:
                continue
            if key not in index:
                return None
            out[index[key]] = to_fraction(c)
        return out

    return _rule


def witt_window(window: int) -> AlgebraPresentation:
    """``[L_m, L_n] = (m - n) L_{m+n}`` for ``|m|, |n| <= window``."""
    N = _check_window(window)
    degrees = list(range(-N, N + 1))
    index = {("L", m): k for k, m in enumerate(degrees)}
    rule = _window_rule(
        index,
        lambda i, j: {("L", degrees[i] + degrees[j]): degrees[i] - degrees[j]},
    )
    return _from_rule(
        f"witt_window({N})",
        AlgebraKind.LIE,
        [f"L[{m}]" for m in degrees],
        rule,
        grading=degrees,
        windowed=True,
    )


def _hvir_keys(N: int) -> List[Tuple[str, int]]:
    return [("L", m) for m in range(-N, N + 1)] + [("I", m) for m in range(-N, N + 1)]


def _hvir_product(keys, i: int, j: int, central: bool) -> Dict:
    (a, m), (b, n) = keys[i], keys[j]
    delta = 1 if m + n == 0 else 0
    if a == "L" and b == "L":
        out = {("L", m + n): m - n}
        if central:
            out[("CL", 0)] = delta * Fraction(m**3 - m, 12)
        return out
    if a == "L" and b == "I":
        out = {("I", m + n): -n}
        if central:
            out[("CLI", 0)] = delta * (m * m - m)
        return out
    if a == "I" and b == "L":
        return {k: -v for k, v in _hvir_product(keys, j, i, central).items()}
    if central:
        return {("CI", 0): delta * n}
    return {}


def hvir_base_window(window: int) -> AlgebraPresentation:
    """The algebra spanned by ``L_m, I_m``: ``[L_m, I_n] = -n I_{m+n}``."""
    N = _check_window(window)
    keys = _hvir_keys(N)
    index = {key: k for k, key in enumerate(keys)}
    rule = _window_rule(index, lambda i, j: _hvir_product(keys, i, j, False))
    return _from_rule(
        f"hvir_base_window({N})",
        AlgebraKind.LIE,
        [f"{a}[{m}]" for a, m in keys],
        rule,
        grading=[m for _, m in keys],
        windowed=True,
    )


def hvir_window(window: int) -> AlgebraPresentation:
    """The twisted Heisenberg-Virasoro window with central C_I, C_L, C_LI."""
    N = _check_window(window)
    keys = _hvir_keys(N)
    centrals = [("CI", 0), ("CL", 0), ("CLI", 0)]
    index = {key: k for k, key in enumerate(keys + centrals)}

    def _product(i, j):
        if i >= len(keys) or j >= len(keys):
            return {}
        return _hvir_product(keys, i, j, True)

    rule = _window_rule(index, _product)
    return _from_rule(
        f"hvir_window({N})",
        AlgebraKind.LIE,
        [f"{a}[{m}]" for a, m in keys] + ["CI", "CL", "CLI"],
        rule,
        grading=[m for _, m in keys] + [0, 0, 0],
        windowed=True,
        notices=(NOTICES["hvir"],),
    )


_D = sympy.Symbol("D")


def _operator_bracket(m: int, r: int, n: int, s: int) -> Dict[Tuple[int, int], int]:
    """``[t^m D^r, t^n D^s]`` as ``{(m + n, power): coefficient}``."""
    poly = sympy.Poly(
        sympy.expand((_D + n) ** r * _D**s - (_D + m) ** s * _D**r), _D
    )
    return {(m + n, power): int(c) for (power,), c in poly.terms() if c != 0}


def diffops_window(window: int, order: int = 2) -> AlgebraPresentation:
    """Differential operators ``t^a D^j`` with ``|a| <= window``, ``j <= order``."""
    N = _check_window(window)
    if not isinstance(order, int) or order < 1:
        raise CatalogError(f"order bound must be a positive integer, got {order!r}")
    keys = [(a, j) for a in range(-N, N + 1) for j in range(order + 1)]
    index = {key: k for k, key in enumerate(keys)}
    rule = _window_rule(
        index, lambda i, j: _operator_bracket(*keys[i], *keys[j])
    )
    return _from_rule(
        f"diffops_window({N},{order})",
        AlgebraKind.LIE,
        [f"t[{a}]D[{j}]" for a, j in keys],
        rule,
        grading=[a for a, _ in keys],
        windowed=True,
        notices=(NOTICES["diffops"],),
    )


def _block_keys(N: int) -> List[Tuple[int, int]]:
    return [
        (m, n)
        for m in range(-N, N + 1)
        for n in range(-N, N + 1)
        if (m, n) != (0, 0)
    ]


def _block_algebra(
    name: str, N: int, phi: Callable, notices: Sequence[str] = ()
) -> AlgebraPresentation:
    keys = _block_keys(N)
    index = {key: k for k, key in enumerate(keys)}

    def _product(i, j):
        x, y = keys[i], keys[j]
        target = (x[0] + y[0], x[1] + y[1])
        value = phi(x, y)
        if target == (0, 0):
            if value:
                raise CatalogError(f"phi{(x, y)} = {value} is not skew-symmetric")
            return {}
        return {target: value}

    return _from_rule(
        name,
        AlgebraKind.LIE,
        [f"e[{m};{n}]" for m, n in keys],
        _window_rule(index, _product),
        grading=keys,
        windowed=True,
        notices=notices,
    )


def block_window(window: int, phi: Sequence[int] = (0, 1, -1, 0)) -> AlgebraPresentation:
    """``[e_x, e_y] = phi(x, y) e_{x+y}`` on ``Z^2 - {0}``, ``max(|m|,|n|) <= window``.

    Args:
        window (int): Window radius
        phi (Sequence[int]): Row-major 2x2 integer matrix P with
            ``phi(x, y) = x^T P y``; must be skew and nondegenerate
    """
    N = _check_window(window)
    if len(phi) != 4:
        raise CatalogError(f"phi needs four entries, got {len(phi)}")
    p11, p12, p21, p22 = (int(v) for v in phi)
    if p11 or p22 or p12 != -p21:
        raise CatalogError(f"phi = {tuple(phi)} is not skew-symmetric")
    if p12 == 0:
        raise CatalogError("phi is degenerate")

    def _phi(x, y):
        return (
            x[0] * (p11 * y[0] + p12 * y[1]) + x[1] * (p21 * y[0] + p22 * y[1])
        )

    return _block_algebra(f"block_window({N};{p11};{p12};{p21};{p22})", N, _phi)


def virasoro_like_window(window: int) -> AlgebraPresentation:
    """``[e_{m,n}, e_{m1,n1}] = (n m1 - m n1) e_{m+m1, n+n1}``."""
    N = _check_window(window)
    return _block_algebra(
        f"virasoro_like_window({N})",
        N,
        lambda x, y: x[1] * y[0] - x[0] * y[1],
        notices=(NOTICES["virasoro_like"],),
    )


def q_virasoro_like_window(window: int, q: Union[str, Fraction] = 2) -> AlgebraPresentation:
    """``[e_{m,n}, e_{m1,n1}] = (q^{n m1} - q^{m n1}) e_{m+m1, n+n1}``."""
    N = _check_window(window)
    try:
        q = parse_rational(q)
    except ValueError as e:
        raise CatalogError(f"invalid q: {e}")
    if q in (0, 1, -1):
        raise CatalogError(f"q must not be 0 or a root of unity, got {q}")
    return _block_algebra(
        f"q_virasoro_like_window({N};{q})",
        N,
        lambda x, y: q ** (x[1] * y[0]) - q ** (x[0] * y[1]),
        notices=(NOTICES["q_virasoro_like"],),
    )


_SIMPLE = {"sl2": 2, "sl3": 3}


def loop_window(simple: str, window: int) -> AlgebraPresentation:
    """``[x (x) t^m, y (x) t^n] = [x, y] (x) t^{m+n}`` for ``|m|, |n| <= window``."""
    N = _check_window(window)
    if simple not in _SIMPLE:
        raise CatalogError(f"unknown simple algebra {simple!r}, expected sl2 or sl3")
    g = special_linear(_SIMPLE[simple])
    keys = [(x, m) for m in range(-N, N + 1) for x in range(g.dim)]
    index = {key: k for k, key in enumerate(keys)}

    def _product(i, j):
        (x, m), (y, n) = keys[i], keys[j]
        return {(k, m + n): c for k, c in g.bracket(x, y).items()}

    return _from_rule(
        f"loop_window({simple},{N})",
        AlgebraKind.LIE,
        [f"{g.basis[x]}[{m}]" for x, m in keys],
        _window_rule(index, _product),
        grading=[m for _, m in keys],
        windowed=True,
    )


def virasoro_window(window: int) -> AlgebraPresentation:
    """The Witt window extended by the Virasoro cocycle, central element ``C``."""
    witt = witt_window(window)
    return central_extension(
        witt, virasoro_cocycle(witt), label="C", name=f"virasoro_window({window})"
    )


# Named cocycles


def _loday2(g: AlgebraPresentation) -> CochainSpace:
    return CochainSpace(Theory.LEIBNIZ, 2, g, trivial_module(g))


def _parse_labels(g: AlgebraPresentation, pattern: str, what: str) -> Dict[int, Tuple]:
    regex = re.compile(pattern)
    parsed = {}
    for k, label in enumerate(g.basis):
        match = regex.fullmatch(label)
        if match:
            parsed[k] = tuple(
                int(v) if re.fullmatch(r"-?\d+", v) else v for v in match.groups()
            )
    if not parsed:
        raise CatalogError(f"{what} does not apply to {g.name}: no matching basis labels")
    return parsed


def virasoro_cocycle(g: AlgebraPresentation) -> Cochain:
    """``a(L_m, L_n) = delta_{m+n,0} (m^3 - m) / 12`` on the ``L[m]`` elements."""
    degrees = {k: m for k, (m,) in _parse_labels(g, r"L\[(-?\d+)\]", "virasoro").items()}

    def _value(t):
        i, j = t
        if i in degrees and j in degrees and degrees[i] + degrees[j] == 0:
            m = degrees[i]
            return Fraction(m**3 - m, 12)
        return 0

    return Cochain.from_function(_loday2(g), _value)


def hvir_cocycles(g: AlgebraPresentation) -> Tuple[Cochain, Cochain, Cochain]:
    """The three central terms of the twisted Heisenberg-Virasoro algebra.

    Returns the cochains on (I, I), (L, L) and (L, I) pairs, each extended to an
    alternating cochain.
    """
    parsed = _parse_labels(g, r"([LI])\[(-?\d+)\]", "hvir_triple")
    space = _loday2(g)

    def _make(kind_a: str, kind_b: str, fn: Callable[[int, int], Fraction]) -> Cochain:
        def _value(t):
            i, j = t
            if i not in parsed or j not in parsed:
                return 0
            (a, m), (b, n) = parsed[i], parsed[j]
            if m + n != 0:
                return 0
            if (a, b) == (kind_a, kind_b):
                return fn(m, n)
            if (b, a) == (kind_a, kind_b):
                return -fn(n, m)
            return 0

        return Cochain.from_function(space, _value)

    return (
        _make("I", "I", lambda m, n: Fraction(n)),
        _make("L", "L", lambda m, n: Fraction(m**3 - m, 12)),
        _make("L", "I", lambda m, n: Fraction(m * m - m)),
    )


def w1inf_psi(g: AlgebraPresentation) -> Cochain:
    """The W_{1+inf} cocycle on ``t[a]D[j]``.

    ``psi(t^{m+r} d^r, t^{n+s} d^s) = delta_{m+n,0} (-1)^r r! s! C(m+r, r+s+1)``
    with ``d = d/dt``, transported to the ``t^a D^j`` basis.
    """
    parsed = _parse_labels(g, r"t\[(-?\d+)\]D\[(\d+)\]", "w1inf_psi")

    def _value(t):
        i, j = t
        if i not in parsed or j not in parsed:
            return 0
        (a, p), (b, l) = parsed[i], parsed[j]
        if a + b != 0:
            return 0
        total = sympy.Integer(0)
        for r in range(p + 1):
            for s in range(l + 1):
                total += (
                    stirling(p, r, kind=2)
                    * stirling(l, s, kind=2)
                    * (-1) ** r
                    * sympy.factorial(r)
                    * sympy.factorial(s)
                    * sympy.binomial(a + r, r + s + 1)
                )
        return to_fraction(total)

    return Cochain.from_function(_loday2(g), _value)


def block_form(g: AlgebraPresentation) -> BilinearForm:
    """``a(e_x, e_y) = delta_{x+y,0}`` on a Block-type window.

    Raises:
        CatalogError: If the form is not invariant, as on q-analogues
    """
    parsed = _parse_labels(g, r"e\[(-?\d+);(-?\d+)\]", "block_form")

    def _value(i, j):
        if i in parsed and j in parsed:
            x, y = parsed[i], parsed[j]
            if x[0] + y[0] == 0 and x[1] + y[1] == 0:
                return 1
        return 0

    form = BilinearForm.from_function(g, _value)
    violations = form.invariance_violations()
    if violations:
        raise CatalogError(
            f"block_form is not invariant on {g.name}: fails on {violations[0]}"
        )
    return form


def loop_cocycle(g: AlgebraPresentation, shift: int = 1) -> Cochain:
    """``f(x (x) t^m, y (x) t^n) = (x, y) n delta_{m+n+shift,0}`` with (,) the
    Killing form of the underlying simple algebra."""
    if shift == 0:
        raise CatalogError("derivation shift must be nonzero")
    parsed = _parse_labels(g, r"([A-Za-z][A-Za-z0-9]*)\[(-?\d+)\]", "loop_51")
    labels = {x for x, _ in parsed.values()}
    for name, n in _SIMPLE.items():
        simple = special_linear(n)
        if labels == set(simple.basis):
            break
    else:
        raise CatalogError(f"loop_51 does not apply to {g.name}")
    killing = killing_form(simple)

    def _value(t):
        i, j = t
        if i not in parsed or j not in parsed:
            return 0
        (x, m), (y, n) = parsed[i], parsed[j]
        if m + n + shift != 0:
            return 0
        return killing.value(simple.index(x), simple.index(y)) * n

    return Cochain.from_function(_loday2(g), _value)


_COCYCLES = {
    "virasoro": lambda g, params: virasoro_cocycle(g),
    "w1inf_psi": lambda g, params: w1inf_psi(g),
    "hvir_triple": lambda g, params: hvir_cocycles(g),
    "block_form": lambda g, params: block_form(g),
    "loop_51": lambda g, params: loop_cocycle(g, params.get("shift", 1)),
}


def named_cocycle(name: str, algebra: AlgebraPresentation, **params):
    """Materialize a named cocycle or form on a catalog algebra.

    Args:
        name (str): One of virasoro, w1inf_psi, hvir_triple, block_form, loop_51
        algebra (AlgebraPresentation): The matching catalog algebra
        **params: ``shift`` for loop_51

    Raises:
        CatalogError: For unknown names or mismatched algebras
    """
    try:
        factory = _COCYCLES[name]
    except KeyError:
        raise CatalogError(
            f"unknown cocycle {name!r}, expected one of {sorted(_COCYCLES)}"
        )
    return factory(algebra, params)


# Catalog lookup


def _build(name: str, params: Dict) -> AlgebraPresentation:
    window = params.get("window")
    builders = {
        "sl2": lambda: special_linear(2),
        "sl3": lambda: special_linear(3),
        "abelian": lambda: abelian(params.get("dim", 2)),
        "heisenberg3": heisenberg3,
        "affine1": affine1,
        "witt": lambda: witt_window(window),
        "virasoro": lambda: virasoro_window(window),
        "hvir_base": lambda: hvir_base_window(window),
        "hvir": lambda: hvir_window(window),
        "diffops": lambda: diffops_window(window, params.get("order", 2)),
        "block": lambda: block_window(window, params.get("phi", (0, 1, -1, 0))),
        "virasoro_like": lambda: virasoro_like_window(window),
        "q_virasoro_like": lambda: q_virasoro_like_window(window, params.get("q", 2)),
        "loop": lambda: loop_window(params.get("simple", "sl2"), window),
    }
    key = name[: -len("_window")] if name.endswith("_window") else name
    if key not in builders:
        raise CatalogError(f"unknown catalog algebra {name!r}")
    if window is None and key not in ("sl2", "sl3", "abelian", "heisenberg3", "affine1"):
        raise CatalogError(f"{name} needs a window radius")
    return builders[key]()


CATALOG_NAMES = (
    "sl2",
    "sl3",
    "abelian",
    "heisenberg3",
    "affine1",
    "witt",
    "virasoro",
    "hvir_base",
    "hvir",
    "diffops",
    "block",
    "virasoro_like",
    "q_virasoro_like",
    "loop",
)


def build(name: str, check: bool = True, **params) -> CatalogEntry:
    """Construct a catalog algebra.

    Args:
        name (str): Family name, optionally with a ``_window`` suffix
        check (bool): Validate the result. Defaults to True.
        **params: ``window``, ``order``, ``q``, ``dim``, ``simple``, ``phi``

    Raises:
        CatalogError: For unknown names, invalid parameters or a presentation
            that fails validation
    """
    algebra = _build(name, params)
    if check:
        report = validate(algebra)
        if not report.valid:
            raise CatalogError(
                f"{algebra.name} fails validation on {report.violations[0].labels}"
            )
    logger.debug("built %s of dimension %d", algebra.name, algebra.dim)
    return CatalogEntry(name=name, params=dict(params), algebra=algebra)


def catalog(name: str, check: bool = True, **params) -> AlgebraPresentation:
    """Shorthand for ``build(name, **params).algebra``."""
    return build(name, check=check, **params).algebra
