"""The wonderful compactification of PGL_n inside Gr(dim g, g + g).

Points are n-dimensional subspaces of g + g in canonical reduced row
echelon form, with normalized Plucker coordinates for equality and limit
cross-checks.  Group points are graphs {(Ad_g y, y)}; boundary points are
reached as exact limits of one-parameter curves with Laurent-polynomial
entries.  Membership of an arbitrary subspace in the closure is not
decided: a certificate (graph / limit / pgl2-model / action of certified)
travels with each value, and the operations that need closure points
demand it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import LaurentPoly, Mat, maximal_minors, laurent_rank, sample_rational
from .liecore import Ad, GroupElement, LieAlgebra, chi
from .slodowy import InternalCheckError, SlodowySlice, chi_section


class MembershipError(ValueError):
    """A point fails the membership test of its declared space."""


class DegenerateCurveError(ValueError):
    pass


class CertificateError(ValueError):
    """Operation needs a certified closure point but got a raw subspace."""


class Subspace:
    """dim g-dimensional subspace of g + g, canonically presented."""

    __slots__ = ("algebra", "basis", "plucker", "certified", "source")

    def __init__(self, algebra: LieAlgebra, rows, certified: bool = False, source: str = "raw"):
        n = algebra.dim
        reduced, pivots, rank = Mat([list(r) for r in rows]).rref()
        if rank != n:
            raise MembershipError(f"subspace basis has rank {rank}, expected {n}")
        basis = Mat(reduced.rows[:n])
        minors = maximal_minors(basis.rows, 2 * n, Fraction(0))
        lead = next(m for m in minors if m)
        self.algebra = algebra
        self.basis = basis
        self.plucker = tuple(m / lead for m in minors)
        self.certified = certified
        self.source = source

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def rows_as_pairs(self):
        n = self.dim
        out = []
        for r in self.basis.rows:
            out.append(
                (self.algebra.element(r[:n]), self.algebra.element(r[n:]))
            )
        return out

    def contains(self, pair) -> bool:
        y1, y2 = pair
        vector = tuple(y1.coords) + tuple(y2.coords)
        stacked = list(self.basis.rows) + [vector]
        return Mat(stacked).rank() == self.dim

    def reduce(self, vector):
        """Residual of a coordinate vector after eliminating the pivots of the basis."""
        vector = list(vector)
        for row in self.basis.rows:
            pc = next(i for i, a in enumerate(row) if a)
            if vector[pc]:
                f = vector[pc]
                vector = [a - f * b for a, b in zip(vector, row)]
        return tuple(vector)

    def projection_ranks(self):
        n = self.dim
        first = Mat([r[:n] for r in self.basis.rows]).rank()
        second = Mat([r[n:] for r in self.basis.rows]).rank()
        return first, second

    def is_boundary(self) -> bool:
        if not self.certified:
            raise CertificateError("boundary detection needs a certified closure point")
        first, second = self.projection_ranks()
        return first < self.dim or second < self.dim

    def act(self, g1: GroupElement, g2: GroupElement) -> "Subspace":
        rows = []
        for y1, y2 in self.rows_as_pairs():
            rows.append(tuple(Ad(g1, y1).coords) + tuple(Ad(g2, y2).coords))
        return Subspace(self.algebra, rows, certified=self.certified, source="action")

    def sample_member(self, seed: int, index: int):
        n = self.dim
        y1 = self.algebra.zero()
        y2 = self.algebra.zero()
        for k, (a, b) in enumerate(self.rows_as_pairs()):
            c = sample_rational(seed, index * n + k)
            y1 = y1 + c * a
            y2 = y2 + c * b
        return y1, y2

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.algebra is other.algebra
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((id(self.algebra), self.plucker))

    def __repr__(self):
        flag = "certified" if self.certified else "raw"
        return f"Subspace({self.source}, {flag}, dim={self.dim})"


def graph_subspace(g: GroupElement) -> Subspace:
    """The point (g, e) . g_Delta of the compactification: {(Ad_g y, y)}."""
    alg = g.algebra
    rows = []
    for b in alg.basis_elements():
        rows.append(tuple(Ad(g, b).coords) + tuple(b.coords))
    return Subspace(alg, rows, certified=True, source="graph")


def diagonal_subspace(algebra: LieAlgebra) -> Subspace:
    return graph_subspace(GroupElement.identity(algebra))


@dataclass(frozen=True)
class LogCotangentPoint:
    """Point (gamma, (y1, y2)) of the log cotangent bundle; the pair must lie in gamma."""

    gamma: Subspace
    pair: tuple

    def __post_init__(self):
        if not self.gamma.contains(self.pair):
            raise MembershipError("pair does not lie in the subspace")

    def act(self, g1: GroupElement, g2: GroupElement) -> "LogCotangentPoint":
        y1, y2 = self.pair
        return LogCotangentPoint(self.gamma.act(g1, g2), (Ad(g1, y1), Ad(g2, y2)))


class CurveSubspace:
    """One-parameter family of subspaces with Laurent-polynomial basis rows."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra: LieAlgebra, rows):
        self.algebra = algebra
        self.rows = tuple(tuple(LaurentPoly.lift(e) for e in r) for r in rows)
        n = algebra.dim
        if len(self.rows) != n or any(len(r) != 2 * n for r in self.rows):
            raise DegenerateCurveError("curve basis has the wrong shape")

    @staticmethod
    def from_group_curve(algebra: LieAlgebra, gmat: Mat) -> "CurveSubspace":
        """Graph curve of a matrix family g(t); rows are scaled by det g(t)
        so that the adjugate keeps all entries Laurent-polynomial."""
        n = algebra.n
        if gmat.nrows != n or gmat.ncols != n:
            raise DegenerateCurveError("curve matrix has the wrong shape")
        g = gmat.map(LaurentPoly.lift)
        det = _laurent_det(g)
        if det.is_zero():
            raise DegenerateCurveError("curve matrix is singular over the function field")
        adj = _laurent_adjugate(g)
        rows = []
        for b in algebra.basis:
            bl = b.map(LaurentPoly.lift)
            first = algebra.coords_from_matrix(g @ bl @ adj)
            second = tuple(det * LaurentPoly.lift(c) for c in algebra.coords_from_matrix(bl))
            rows.append(tuple(first) + second)
        return CurveSubspace(algebra, rows)

    def substitute_power(self, k: int) -> "CurveSubspace":
        return CurveSubspace(
            self.algebra,
            [[e.substitute_power(k) for e in r] for r in self.rows],
        )

    def scale_rows(self, units) -> "CurveSubspace":
        """Multiply each basis row by a nonzero Laurent polynomial; the curve
        of subspaces is unchanged away from the roots, hence so is the limit."""
        rows = []
        for u, r in zip(units, self.rows):
            u = LaurentPoly.lift(u)
            if u.is_zero():
                raise DegenerateCurveError("row scaled by zero")
            rows.append([u * e for e in r])
        return CurveSubspace(self.algebra, rows)

    def eval_at(self, t0) -> Subspace:
        rows = [[e.eval_at(Fraction(t0)) for e in r] for r in self.rows]
        return Subspace(self.algebra, rows, certified=False, source="curve-eval")

    def generic_rank(self) -> int:
        for t0 in (1, 2, 3, 5, 7):
            rows = [[e.eval_at(Fraction(t0)) for e in r] for r in self.rows]
            r = Mat(rows).rank()
            if r == self.algebra.dim:
                return r
        return laurent_rank(self.rows, 2 * self.algebra.dim)


def _laurent_det(m: Mat) -> LaurentPoly:
    n = m.nrows
    if n == 1:
        return m.rows[0][0]
    acc = LaurentPoly.zero()
    for j in range(n):
        entry = m.rows[0][j]
        if not entry:
            continue
        sub = Mat([r[:j] + r[j + 1 :] for r in m.rows[1:]])
        term = entry * _laurent_det(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _laurent_adjugate(m: Mat) -> Mat:
    n = m.nrows
    if n == 1:
        return Mat([[LaurentPoly.const(1)]])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            sub = Mat(
                [
                    [m.rows[a][b] for b in range(n) if b != i]
                    for a in range(n)
                    if a != j
                ]
            )
            cof = _laurent_det(sub)
            row.append(cof if (i + j) % 2 == 0 else -cof)
        rows.append(row)
    return Mat(rows)


def limit(curve: CurveSubspace) -> Subspace:
    """Limit subspace of the curve at t = 0.

    Two independent algorithms run on every call: row reduction over the
    local ring (repeatedly replace a row combination that dies at t = 0 and
    strip the liberated power of t) and evaluation of the normalized
    Plucker vector of the original basis.  Disagreement is an internal
    error, never a value.
    """
    alg = curve.algebra
    n = alg.dim
    if curve.generic_rank() < n:
        raise DegenerateCurveError("curve has generic rank below the ambient requirement")

    # Plucker-evaluation method, on the untouched basis.
    minors = maximal_minors(curve.rows, 2 * n, LaurentPoly.zero())
    mu = min(m.valuation() for m in minors if m)
    normalized = [m.coeff(mu) for m in minors]
    lead = next(c for c in normalized if c)
    plucker_limit = tuple(c / lead for c in normalized)

    # Row-reduction method over the local ring at t = 0.
    work = [list(r) for r in curve.rows]
    work, shed = _normalize_rows(work)
    cap = (mu - shed) + 1
    for _ in range(max(cap, 1)):
        m0 = Mat([[e.eval_at_zero() for e in r] for r in work])
        if m0.rank() == n:
            break
        left_kernel = m0.transpose().kernel()
        c = left_kernel[0]
        pivot = max(i for i, ci in enumerate(c) if ci)
        new_row = None
        for ci, row in zip(c, work):
            if not ci:
                continue
            scaled = [ci * e for e in row]
            new_row = scaled if new_row is None else [a + b for a, b in zip(new_row, scaled)]
        work[pivot] = new_row
        work, extra = _normalize_rows(work)
        shed += extra
    else:
        raise InternalCheckError("limit reduction did not terminate within its valuation budget")
    m0 = Mat([[e.eval_at_zero() for e in r] for r in work])
    result = Subspace(alg, m0.rows, certified=True, source="limit")

    if result.plucker != plucker_limit:
        raise InternalCheckError("limit algorithms disagree")
    return result


def _normalize_rows(rows):
    """Strip t^(row valuation) from every row; returns (rows, total stripped)."""
    out = []
    shed = 0
    for r in rows:
        vals = [e.valuation() for e in r if e]
        if not vals:
            raise DegenerateCurveError("curve basis contains a zero row")
        v = min(vals)
        shed += v
        out.append([e.shift(-v) for e in r])
    return out, shed


def contains(gamma: Subspace, pair) -> bool:
    return gamma.contains(pair)


def is_boundary(gamma: Subspace) -> bool:
    return gamma.is_boundary()


def chi_compatible(gamma: Subspace, samples: int, seed: int = 0):
    """chi(y1) = chi(y2) for sampled members (y1, y2) of gamma; returns (ok, witness)."""
    for j in range(samples):
        y1, y2 = gamma.sample_member(seed, j)
        if chi(y1) != chi(y2):
            return False, {"y1": y1.coords, "y2": y2.coords}
    return True, None


def in_gbar_stau(gamma: Subspace, pair, slc: SlodowySlice) -> bool:
    """Membership in the compactified slice space: (x, y) in gamma and y on the slice;
    for a principal slice the pair is forced onto the graph of the slice section."""
    if not gamma.certified:
        raise CertificateError("membership test needs a certified closure point")
    x, y = pair
    if not gamma.contains(pair):
        return False
    if not slc.contains(y):
        return False
    if slc.is_principal() and chi_section(slc, x) != y:
        return False
    return True


def pgl2_model(algebra: LieAlgebra, a: Mat) -> Subspace:
    """Closed-form model of the compactification of PGL_2: the subspace
    gamma_A = {(y1, y2) : y1 A = A y2}, which is 3-dimensional for A != 0."""
    if algebra.n != 2:
        raise MembershipError("the matrix model is specific to pgl2")
    if a.is_zero():
        raise MembershipError("the zero matrix does not define a model point")
    rows = []
    for p in range(2):
        for q in range(2):
            row = []
            for b in algebra.basis:
                row.append((b @ a).rows[p][q])
            for b in algebra.basis:
                row.append(-(a @ b).rows[p][q])
            rows.append(row)
    kernel = Mat(rows).kernel()
    if len(kernel) != 3:
        raise InternalCheckError("pgl2 model space is not 3-dimensional")
    return Subspace(algebra, kernel, certified=True, source="pgl2-model")
