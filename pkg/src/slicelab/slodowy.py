"""sl2-triples, gradings, Slodowy slices, and slice conjugation.

A triple tau = (xi, h, eta) with [xi, eta] = h, [h, xi] = 2*xi and
[h, eta] = -2*eta determines the slice S_tau = xi + g_eta, the parabolic
p_tau (non-positive ad_h eigenspaces), its nilradical u_tau, and the
stabilizer subalgebra m = (u_tau)_xi spanned by eigenvalues <= -2.

Triples are supplied per partition of n (block sums of principal triples),
not by a general Jacobson-Morozov solver.  The zero triple, given by the
all-ones partition, is admitted everywhere and makes S_tau the whole
algebra with a trivial unipotent group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import Mat, span_contains
from .liecore import (
    Ad,
    Element,
    GroupElement,
    LieAlgebra,
    bracket,
    centralizer,
    chi,
    exp_nilpotent,
    is_regular,
    log_unipotent,
)


class SliceError(ValueError):
    pass


class InternalCheckError(AssertionError):
    """A mandatory a-posteriori verification failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class Sl2Triple:
    xi: Element
    h: Element
    eta: Element

    @property
    def algebra(self) -> LieAlgebra:
        return self.xi.algebra

    def is_zero(self) -> bool:
        return self.xi.is_zero() and self.h.is_zero() and self.eta.is_zero()

    @staticmethod
    def checked(xi: Element, h: Element, eta: Element) -> "Sl2Triple":
        ok, failing = verify_triple(xi, h, eta)
        if not ok:
            raise SliceError(f"not an sl2-triple: {failing} fails")
        return Sl2Triple(xi, h, eta)


def verify_triple(xi: Element, h: Element, eta: Element):
    """Check the three defining relations; returns (ok, name of first failing relation)."""
    if bracket(xi, eta) != h:
        return False, "[xi, eta] = h"
    if bracket(h, xi) != 2 * xi:
        return False, "[h, xi] = 2 xi"
    if bracket(h, eta) != -2 * eta:
        return False, "[h, eta] = -2 eta"
    return True, None


def parse_partition(text: str):
    """CLI partition syntax: comma-separated positive integers, e.g. '2,1'."""
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise SliceError(f"bad partition {text!r}") from exc
    return parts


def standard_triple(algebra: LieAlgebra, partition) -> Sl2Triple:
    """Block-diagonal sl2-triple whose nilpositive part is the Jordan form of the partition.

    Each part p contributes the principal triple of gl_p: xi the upper Jordan
    block, h = diag(p-1, p-3, ..., 1-p), eta with subdiagonal i*(p-i).
    """
    parts = tuple(partition)
    n = algebra.n
    if not parts or any(p < 1 for p in parts) or sum(parts) != n:
        raise SliceError(f"{parts} is not a partition of {n}")
    parts = tuple(sorted(parts, reverse=True))
    xi = [[Fraction(0)] * n for _ in range(n)]
    hm = [[Fraction(0)] * n for _ in range(n)]
    eta = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for p in parts:
        for i in range(p - 1):
            r = offset + i
            xi[r][r + 1] = Fraction(1)
            eta[r + 1][r] = Fraction((i + 1) * (p - i - 1))
        for i in range(p):
            hm[offset + i][offset + i] = Fraction(p - 1 - 2 * i)
        offset += p
    make = algebra.element_from_matrix
    return Sl2Triple.checked(make(Mat(xi)), make(Mat(hm)), make(Mat(eta)))


def zero_triple(algebra: LieAlgebra) -> Sl2Triple:
    z = algebra.zero()
    return Sl2Triple(z, z, z)


@dataclass(frozen=True)
class Grading:
    """Integer ad_h eigenvalues with their eigenspace bases, plus exact projections."""

    algebra: LieAlgebra
    eigenvalues: tuple
    eigenspaces: dict
    _to_graded: Mat = field(repr=False)
    _slices: dict = field(repr=False)

    def component(self, x: Element, eigenvalue: int) -> Element:
        """Projection of x onto the given eigenspace (zero if absent)."""
        alg = self.algebra
        if eigenvalue not in self.eigenspaces:
            return alg.zero()
        graded = self._to_graded.apply(x.coords)
        start, basis = self._slices[eigenvalue]
        out = alg.zero()
        for k, b in enumerate(basis):
            out = out + graded[start + k] * b
        return out

    def depth(self) -> int:
        return -min(self.eigenvalues)


def grading(triple: Sl2Triple) -> Grading:
    """ad_h eigenspace decomposition; integer eigenvalues are found by exact kernel scans."""
    alg = triple.algebra
    ad_h = alg.ad_matrix(triple.h)
    bound = 2 * (alg.n - 1)
    spaces = {}
    total = 0
    for lam in range(-bound, bound + 1):
        shifted = ad_h - Mat.identity(alg.dim).scale(Fraction(lam))
        basis = [Element(alg, v) for v in shifted.kernel()]
        if basis:
            spaces[lam] = basis
            total += len(basis)
    if total != alg.dim:
        raise SliceError("ad_h is not diagonalizable with integer eigenvalues")
    eigenvalues = tuple(sorted(spaces))
    columns = []
    slices = {}
    pos = 0
    for lam in eigenvalues:
        slices[lam] = (pos, spaces[lam])
        for b in spaces[lam]:
            columns.append(b.coords)
            pos += 1
    change = Mat(list(zip(*columns)))
    return Grading(alg, eigenvalues, spaces, change.inverse(), slices)


@dataclass(frozen=True)
class SlodowySlice:
    """S_tau = xi + g_eta together with the parabolic data of the triple."""

    triple: Sl2Triple
    grading: Grading
    directions: tuple  # basis of g_eta
    parabolic: tuple  # basis of p_tau
    nilradical: tuple  # basis of u_tau
    stabilizer_nilradical: tuple  # basis of (u_tau)_xi

    @property
    def algebra(self) -> LieAlgebra:
        return self.triple.algebra

    @property
    def base(self) -> Element:
        return self.triple.xi

    def dim(self) -> int:
        return len(self.directions)

    def codim(self) -> int:
        return self.algebra.dim - len(self.directions)

    def contains(self, y: Element) -> bool:
        diff = y - self.base
        if not self.directions:
            return diff.is_zero()
        return span_contains([d.coords for d in self.directions], diff.coords)

    def point(self, coeffs) -> Element:
        coeffs = tuple(coeffs)
        if len(coeffs) != len(self.directions):
            raise SliceError(f"slice has {len(self.directions)} directions")
        out = self.base
        for c, d in zip(coeffs, self.directions):
            out = out + c * d
        return out

    def coefficients_of(self, y: Element):
        """Slice coordinates of a point of S_tau."""
        diff = y - self.base
        rows = [d.coords for d in self.directions]
        sol = Mat(list(zip(*rows))).solve(diff.coords)
        if sol is None:
            raise SliceError("point is not on the slice")
        return sol

    def is_principal(self) -> bool:
        t = self.triple
        if t.is_zero():
            return False
        return is_regular(t.xi) and is_regular(t.h) and is_regular(t.eta)

    def in_xi_plus_parabolic(self, y: Element) -> bool:
        diff = y - self.base
        if not self.parabolic:
            return diff.is_zero()
        return span_contains([b.coords for b in self.parabolic], diff.coords)


def slodowy_slice(triple: Sl2Triple) -> SlodowySlice:
    alg = triple.algebra
    grad = grading(triple)
    directions = tuple(centralizer(triple.eta)) if not triple.is_zero() else tuple(
        alg.basis_elements()
    )
    parabolic, nilradical, stabilizer = [], [], []
    for lam in grad.eigenvalues:
        for b in grad.eigenspaces[lam]:
            if lam <= 0:
                parabolic.append(b)
            if lam < 0:
                nilradical.append(b)
            if lam <= -2:
                stabilizer.append(b)
    slc = SlodowySlice(
        triple, grad, directions, tuple(parabolic), tuple(nilradical), tuple(stabilizer)
    )
    dim_xi = len(centralizer(triple.xi)) if not triple.is_zero() else alg.dim
    if len(directions) != dim_xi:
        raise InternalCheckError("dim g_eta != dim g_xi")
    for d in directions:
        if not slc.in_xi_plus_parabolic(triple.xi + d):
            raise InternalCheckError("g_eta is not contained in p_tau")
    return slc


def principal_slice(algebra: LieAlgebra) -> SlodowySlice:
    return slodowy_slice(standard_triple(algebra, (algebra.n,)))


@dataclass(frozen=True)
class SliceConjugation:
    """Witness pair for y = Ad(u, s) with u in (U_tau)_xi and s in S_tau."""

    u: GroupElement
    s: Element


def conjugate_to_slice(slc: SlodowySlice, y: Element) -> SliceConjugation:
    """Unique (u, s) with u in (U_tau)_xi, s in S_tau and Ad(u, s) = y.

    Graded successive elimination: sweeping the defect degree nu from 0 down,
    the off-g_eta part of the degree-nu defect is cancelled by one exact
    linear solve for a correction z in degree nu - 2 of (u_tau)_xi; the
    update pollutes only degrees <= nu - 2, so a single sweep terminates.
    Both membership conditions are re-verified before returning.
    """
    alg = slc.algebra
    triple = slc.triple
    if triple.is_zero():
        return SliceConjugation(GroupElement.identity(alg), y)
    if not slc.in_xi_plus_parabolic(y):
        raise SliceError("element is not in xi + p_tau")

    grad = slc.grading
    xi = triple.xi
    eta_sections = {
        lam: _eta_section(slc, lam) for lam in grad.eigenvalues if lam <= 0
    }
    u = GroupElement.identity(alg)
    s = y
    for nu in range(0, min(grad.eigenvalues) - 1, -1):
        defect = grad.component(s - xi, nu)
        if defect.is_zero():
            continue
        eta_part = eta_sections.get(nu, [])
        z_basis = grad.eigenspaces.get(nu - 2, [])
        if not z_basis and not eta_part:
            raise InternalCheckError(f"defect in empty degree {nu}")
        # Solve defect = r + [z, xi] with r in g_eta (degree nu), z in g_(nu-2).
        columns = [b.coords for b in eta_part]
        columns += [bracket(z, xi).coords for z in z_basis]
        sol = Mat(list(zip(*columns))).solve(defect.coords)
        if sol is None:
            raise InternalCheckError(f"degree {nu} defect is outside g_eta + [g, xi]")
        z = alg.zero()
        for c, b in zip(sol[len(eta_part):], z_basis):
            z = z + c * b
        if z.is_zero():
            continue
        step = exp_nilpotent(z)
        u = u * step
        s = Ad(step.inverse(), s)

    if not slc.contains(s):
        raise InternalCheckError("conjugated point left the slice")
    if Ad(u, s) != y:
        raise InternalCheckError("Ad(u, s) != y after elimination")
    if slc.stabilizer_nilradical:
        logs = log_unipotent(u)
        if not span_contains(
            [b.coords for b in slc.stabilizer_nilradical], logs.coords
        ):
            raise InternalCheckError("u is not in (U_tau)_xi")
    elif u != GroupElement.identity(alg):
        raise InternalCheckError("u should be trivial for this triple")
    return SliceConjugation(u, s)


def _eta_section(slc: SlodowySlice, lam: int):
    """Basis of g_eta intersected with the degree-lam eigenspace."""
    basis = slc.grading.eigenspaces.get(lam, [])
    if not basis:
        return []
    ad_eta = slc.algebra.ad_matrix(slc.triple.eta)
    images = [ad_eta.apply(b.coords) for b in basis]
    kernel = Mat(list(zip(*images))).kernel()
    out = []
    for v in kernel:
        el = slc.algebra.zero()
        for c, b in zip(v, basis):
            el = el + c * b
        out.append(el)
    return out


def chi_section(slc: SlodowySlice, x: Element) -> Element:
    """The unique point of a principal slice with the same adjoint-quotient value as x.

    The slice coordinates sit in distinct negative ad_h degrees, one per
    invariant, so the system chi(s) = chi(x) is triangular: each coefficient
    is solved by one exact linear interpolation in one new coordinate.  The
    full invariant vector of the result is compared with chi(x) at the end.
    """
    if not slc.is_principal():
        raise SliceError("chi_section needs a principal slice")
    alg = slc.algebra
    n = alg.n
    # One graded slice direction per depth -2, -4, ..., -2(n-1); one per invariant.
    ordered = []
    for k in range(1, n):
        graded = _eta_section(slc, -2 * k)
        if len(graded) != 1:
            raise InternalCheckError("principal g_eta is not one-dimensional per even depth")
        ordered.append(graded[0])

    target = chi(x).coeffs
    s = slc.base
    for k, direction in enumerate(ordered):
        at_zero = chi(s).coeffs[k]
        at_one = chi(s + direction).coeffs[k]
        slope = at_one - at_zero
        if slope == 0:
            raise InternalCheckError("degenerate triangular step in chi_section")
        s = s + ((target[k] - at_zero) / slope) * direction

    if chi(s).coeffs != target:
        raise InternalCheckError("triangular solve missed the invariant vector")
    if n == 2:
        # closed-form cross-check: chi(xi + c*d) = (scale * c,), so c = chi(x) / scale
        scale = chi(slc.base + ordered[0]).coeffs[0]
        expected = slc.base + (target[0] / scale) * ordered[0]
        if s != expected:
            raise InternalCheckError("sl2 closed form disagrees with triangular solve")
    return s
