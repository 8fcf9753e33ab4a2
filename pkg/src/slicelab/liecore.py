"""Type-A Lie algebras (sl_n) and their adjoint groups (PGL_n).

Conventions
-----------
* Basis order: upper root vectors E_ij (i < j, lexicographic), then the
  Cartan generators H_i = E_ii - E_(i+1)(i+1), then lower root vectors
  E_ij (i > j, lexicographic).  For sl2 this is (e, h, f) and coordinates
  are written (c_e, c_h, c_f).
* The Killing form is computed from its definition tr(ad_x ad_y) on the
  cached bracket table; the 2n*tr(xy) identity is a test oracle only.
* Group elements are projective: two representatives are equal iff
  proportional, and the stored representative has its first nonzero entry
  (row-major) scaled to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactnum import (
    Dual,
    Mat,
    RationalStream,
    charpoly,
    dual_mat_inverse,
    join_dual_matrix,
    sample_rational,
)


class LieAlgebraError(ValueError):
    pass


def _basis_layout(n: int):
    """Index layout: uppers (i<j), Cartans, lowers (i>j); entries are (kind, data)."""
    layout = []
    for i in range(n):
        for j in range(i + 1, n):
            layout.append(("E", (i, j)))
    for i in range(n - 1):
        layout.append(("H", i))
    for i in range(n):
        for j in range(i):
            layout.append(("E", (i, j)))
    return layout


class LieAlgebra:
    """sl_n realized by trace-zero matrices, with cached structure data."""

    def __init__(self, n: int):
        if n < 2:
            raise LieAlgebraError("sl_n needs n >= 2")
        self.n = n
        self.dim = n * n - 1
        self._layout = _basis_layout(n)
        names = []
        for kind, data in self._layout:
            if kind == "E":
                names.append(f"E{data[0] + 1}{data[1] + 1}")
            else:
                names.append(f"H{data + 1}")
        self.basis_names = tuple(names)
        self.basis = tuple(self._basis_matrix(k) for k in range(self.dim))
        self._bracket_table = self._build_bracket_table()
        self.killing_gram = self._build_killing_gram()
        self._gram_inverse = self.killing_gram.inverse()

    def _basis_matrix(self, k: int) -> Mat:
        kind, data = self._layout[k]
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        if kind == "E":
            i, j = data
            m[i][j] = Fraction(1)
        else:
            i = data
            m[i][i] = Fraction(1)
            m[i + 1][i + 1] = Fraction(-1)
        return Mat(m)

    def coords_from_matrix(self, m: Mat):
        """Coordinates of a trace-zero matrix in the basis; exact and closed-form."""
        n = self.n
        if sum(m.rows[i][i] for i in range(n)) != 0:
            raise LieAlgebraError("matrix has nonzero trace")
        coords = []
        for kind, data in self._layout:
            if kind == "E":
                i, j = data
                coords.append(m.rows[i][j])
            else:
                i = data
                coords.append(sum((m.rows[k][k] for k in range(i + 1)), Fraction(0)))
        return tuple(coords)

    def matrix_from_coords(self, coords) -> Mat:
        n = self.n
        rows = [[0 * coords[0] for _ in range(n)] for _ in range(n)]
        for k, c in enumerate(coords):
            kind, data = self._layout[k]
            if kind == "E":
                i, j = data
                rows[i][j] = rows[i][j] + c
            else:
                i = data
                rows[i][i] = rows[i][i] + c
                rows[i + 1][i + 1] = rows[i + 1][i + 1] - c
        return Mat(rows)

    def _build_bracket_table(self):
        table = []
        for i in range(self.dim):
            row = []
            bi = self.basis[i]
            for j in range(self.dim):
                bj = self.basis[j]
                row.append(self.coords_from_matrix(bi @ bj - bj @ bi))
            table.append(tuple(row))
        return tuple(table)

    def bracket_coords(self, x, y):
        """Bracket in coordinates via the cached structure constants."""
        dim = self.dim
        out = [Fraction(0)] * dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self._bracket_table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                struct = row[j]
                c = xi * yj
                for k, s in enumerate(struct):
                    if s:
                        out[k] = out[k] + c * s
        return tuple(out)

    def ad_matrix(self, x: "Element") -> Mat:
        """Matrix of ad_x = [x, .] in basis coordinates (columns are [x, b_j])."""
        cols = [self.bracket_coords(x.coords, self._unit(j)) for j in range(self.dim)]
        return Mat(list(zip(*cols)))

    def _unit(self, j: int):
        return tuple(Fraction(1) if k == j else Fraction(0) for k in range(self.dim))

    def _build_killing_gram(self) -> Mat:
        ads = [self.ad_matrix(Element(self, self._unit(i))) for i in range(self.dim)]
        rows = []
        for i in range(self.dim):
            rows.append([(ads[i] @ ads[j]).trace() for j in range(self.dim)])
        g = Mat(rows)
        if g.transpose() != g:
            raise LieAlgebraError("Killing Gram matrix is not symmetric")
        return g

    def element(self, coords) -> "Element":
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise LieAlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, tuple(Fraction(0) for _ in range(self.dim)))

    def basis_element(self, k: int) -> "Element":
        return Element(self, self._unit(k))

    def basis_elements(self):
        return [self.basis_element(k) for k in range(self.dim)]

    def element_from_matrix(self, m: Mat) -> "Element":
        return Element(self, self.coords_from_matrix(m))

    def named(self, name: str) -> "Element":
        aliases = {"e": "E12", "f": "E21", "h": "H1"} if self.n == 2 else {}
        name = aliases.get(name, name)
        if name not in self.basis_names:
            raise LieAlgebraError(f"unknown basis vector {name!r}")
        return self.basis_element(self.basis_names.index(name))

    def rank(self) -> int:
        return self.n - 1

    def __repr__(self):
        return f"LieAlgebra(sl{self.n})"


@lru_cache(maxsize=None)
def lie_algebra(n: int) -> LieAlgebra:
    return LieAlgebra(n)


def algebra_by_tag(tag: str) -> LieAlgebra:
    """CLI selection strings: a1 -> sl2, a2 -> sl3."""
    tags = {"a1": 2, "a2": 3}
    if tag not in tags:
        raise LieAlgebraError(f"unknown algebra tag {tag!r} (expected one of {sorted(tags)})")
    return lie_algebra(tags[tag])


@dataclass(frozen=True)
class Element:
    """Lie algebra element given by coordinates over the basis."""

    algebra: LieAlgebra
    coords: tuple

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise LieAlgebraError("elements belong to different algebras")

    def is_zero(self) -> bool:
        return all(not a for a in self.coords)

    def matrix(self) -> Mat:
        return self.algebra.matrix_from_coords(self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def __repr__(self):
        return f"Element({', '.join(map(str, self.coords))})"


def bracket(x: Element, y: Element) -> Element:
    x._check(y)
    return Element(x.algebra, x.algebra.bracket_coords(x.coords, y.coords))


def killing(x: Element, y: Element):
    """Killing form <x, y> = tr(ad_x ad_y), evaluated through the cached Gram matrix."""
    x._check(y)
    gram = x.algebra.killing_gram
    acc = None
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        row = gram.rows[i]
        for j, yj in enumerate(y.coords):
            if not yj:
                continue
            term = xi * row[j] * yj
            acc = term if acc is None else acc + term
    return acc if acc is not None else Fraction(0)


def killing_covector(x: Element):
    """Coordinates of the functional <x, .> against the basis."""
    return x.algebra.killing_gram.apply(x.coords)


def kappa(algebra: LieAlgebra, covector) -> Element:
    """Inverse of y -> <y, .>: the element pairing like the given covector."""
    covector = tuple(covector)
    if len(covector) != algebra.dim:
        raise LieAlgebraError("covector has wrong length")
    return Element(algebra, algebra._gram_inverse.apply(covector))


class GroupElement:
    """PGL_n element: an invertible matrix up to scale, stored normalized."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: LieAlgebra, matrix: Mat):
        if matrix.nrows != algebra.n or matrix.ncols != algebra.n:
            raise LieAlgebraError("group element has wrong shape")
        if matrix.det() == 0:
            raise LieAlgebraError("singular matrix is not a group element")
        self.algebra = algebra
        self.matrix = _normalize_projective(matrix)

    @staticmethod
    def identity(algebra: LieAlgebra) -> "GroupElement":
        return GroupElement(algebra, Mat.identity(algebra.n))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.algebra is not other.algebra:
            raise LieAlgebraError("group elements from different groups")
        return GroupElement(self.algebra, self.matrix @ other.matrix)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.algebra, self.matrix.inverse())

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.algebra is other.algebra
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.algebra), self.matrix))

    def __repr__(self):
        return f"GroupElement({self.matrix!r})"


def _normalize_projective(m: Mat) -> Mat:
    for r in m.rows:
        for a in r:
            if a:
                return m.scale(1 / a)
    raise LieAlgebraError("zero matrix cannot be normalized")


def Ad(g: GroupElement, x: Element) -> Element:
    """Adjoint action g x g^-1 in coordinates; exact for any scalar coordinates."""
    gm = g.matrix
    conj = gm @ x.matrix() @ gm.inverse()
    return x.algebra.element_from_matrix(conj)


def ad_action_dual(g_value: Mat, g_derivative: Mat, x: Element) -> Element:
    """Adjoint action of a dual-number group curve g = A + eps*B on x."""
    g = join_dual_matrix(g_value, g_derivative)
    inv_value, inv_derivative = dual_mat_inverse(g_value, g_derivative)
    ginv = join_dual_matrix(inv_value, inv_derivative)
    xm = x.matrix().map(Dual.lift)
    return x.algebra.element_from_matrix(g @ xm @ ginv)


def exp_nilpotent(x: Element) -> GroupElement:
    """exp of a nilpotent matrix as the finite sum; rejects non-nilpotent input."""
    m = x.matrix()
    n = x.algebra.n
    power = Mat.identity(n)
    acc = Mat.identity(n)
    for k in range(1, n + 1):
        power = power @ m
        if power.is_zero():
            break
        acc = acc + power.scale(Fraction(1, factorial(k)))
    else:
        raise LieAlgebraError("exp is only provided for nilpotent arguments")
    return GroupElement(x.algebra, acc)


def log_unipotent(g: GroupElement) -> Element:
    """log of a unipotent group element via the finite series over (g - 1)."""
    n = g.algebra.n
    m = g.matrix
    # The stored representative is projective; a unipotent element has a
    # representative with all eigenvalues 1, and normalization keeps it
    # (its first nonzero entry is a diagonal 1).
    nil = m - Mat.identity(n)
    power = Mat.identity(n)
    acc = Mat.zeros(n, n)
    for k in range(1, n + 1):
        power = power @ nil
        if power.is_zero():
            break
        acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
    else:
        raise LieAlgebraError("group element is not unipotent")
    return g.algebra.element_from_matrix(acc)


def centralizer(x: Element):
    """Basis of the centralizer subalgebra {z : [x, z] = 0}."""
    ad = x.algebra.ad_matrix(x)
    return [Element(x.algebra, v) for v in ad.kernel()]


def is_regular(x: Element) -> bool:
    return len(centralizer(x)) == x.algebra.rank()


@dataclass(frozen=True)
class InvariantVector:
    """Characteristic-polynomial coefficients (c2, ..., cn) of the element's matrix."""

    coeffs: tuple

    def __repr__(self):
        return f"InvariantVector({', '.join(map(str, self.coeffs))})"


def chi(x: Element) -> InvariantVector:
    """Adjoint quotient: coefficients of det(lambda*I - x) past the vanishing trace term."""
    cs = charpoly(x.matrix())
    if cs[0] != 0:
        raise LieAlgebraError("trace-zero matrix expected")
    return InvariantVector(tuple(cs[1:]))


def sample_element(algebra: LieAlgebra, seed: int, index: int) -> Element:
    """Deterministic small-height element; index strides by the algebra dimension."""
    base = index * algebra.dim
    return algebra.element(
        tuple(sample_rational(seed, base + i) for i in range(algebra.dim))
    )


def sample_group_element(algebra: LieAlgebra, seed: int, index: int) -> GroupElement:
    """Deterministic invertible matrix: unit lower * diagonal * unit upper."""
    n = algebra.n
    stream = RationalStream(seed, index * (n * n + n))
    lower = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    upper = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    diag = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            lower[i][j] = stream.take()
            upper[j][i] = stream.take()
        diag[i][i] = stream.take_nonzero()
    return GroupElement(algebra, Mat(lower) @ Mat(diag) @ Mat(upper))
