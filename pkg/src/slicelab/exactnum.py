"""Exact scalar towers and dense linear algebra over them.

The ground field is the rationals, represented by ``fractions.Fraction``
(arbitrary-precision, always reduced, positive denominator).  On top of it
sit Laurent polynomials in one formal parameter (carriers for one-parameter
subspace curves) and dual numbers (exact directional derivatives).  No
floating point appears anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

Rational = Fraction

_MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    # splitmix64 finalizer; fixed constants keep the stream stable forever.
    z &= _MASK64
    z = ((z ^ (z >> 33)) * 0xFF51AFD7ED558CCD) & _MASK64
    z = ((z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53) & _MASK64
    return z ^ (z >> 33)


def sample_rational(seed: int, index: int) -> Fraction:
    """Deterministic small-height rational: numerator in [-9, 9], denominator in {1, 2, 3}."""
    h = _mix64((seed & _MASK64) * 0x9E3779B97F4A7C15 + 2 * index + 1)
    num = h % 19 - 9
    den = (h >> 32) % 3 + 1
    return Fraction(num, den)


class RationalStream:
    """Sequential view of the ``sample_rational`` stream for one seed."""

    def __init__(self, seed: int, start: int = 0):
        self.seed = seed
        self.index = start

    def take(self) -> Fraction:
        value = sample_rational(self.seed, self.index)
        self.index += 1
        return value

    def take_nonzero(self) -> Fraction:
        while True:
            value = self.take()
            if value:
                return value


@dataclass(frozen=True)
class Dual:
    """Element a + b*eps of Q[eps]/(eps^2); the eps part tracks one exact derivative."""

    value: Fraction
    derivative: Fraction = Fraction(0)

    @staticmethod
    def lift(x) -> "Dual":
        if isinstance(x, Dual):
            return x
        return Dual(Fraction(x))

    def __add__(self, other):
        o = Dual.lift(other)
        return Dual(self.value + o.value, self.derivative + o.derivative)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, -self.derivative)

    def __sub__(self, other):
        return self + (-Dual.lift(other))

    def __rsub__(self, other):
        return Dual.lift(other) + (-self)

    def __mul__(self, other):
        o = Dual.lift(other)
        return Dual(self.value * o.value, self.value * o.derivative + self.derivative * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual.lift(other)
        if o.value == 0:
            raise ZeroDivisionError("dual number with zero value part is not invertible")
        v = self.value / o.value
        return Dual(v, (self.derivative - v * o.derivative) / o.value)

    def __rtruediv__(self, other):
        return Dual.lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative dual powers are not needed; invert explicitly")
        out = Dual(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.value) or bool(self.derivative)

    def __eq__(self, other):
        o = Dual.lift(other) if not isinstance(other, Dual) else other
        return self.value == o.value and self.derivative == o.derivative

    def __hash__(self):
        return hash((self.value, self.derivative))

    def __repr__(self):
        return f"Dual({self.value}, {self.derivative})"


class LaurentPoly:
    """Laurent polynomial over Q, stored as (lowest exponent, dense coefficients).

    The stored coefficient list never has zero leading or trailing entries;
    the zero polynomial is the empty list with offset 0.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        if start == end:
            self.low = 0
            self.coeffs = ()
        else:
            self.low = low + start
            self.coeffs = tuple(coeffs[start:end])

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(0, ())

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly(0, (Fraction(c),))

    @staticmethod
    def t_power(k: int, c=1) -> "LaurentPoly":
        return LaurentPoly(k, (Fraction(c),))

    @staticmethod
    def lift(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return self.low

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        i = k - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __add__(self, other):
        o = LaurentPoly.lift(other)
        if not self.coeffs:
            return o
        if not o.coeffs:
            return self
        low = min(self.low, o.low)
        high = max(self.low + len(self.coeffs), o.low + len(o.coeffs))
        out = [Fraction(0)] * (high - low)
        for i, c in enumerate(self.coeffs):
            out[self.low - low + i] += c
        for i, c in enumerate(o.coeffs):
            out[o.low - low + i] += c
        return LaurentPoly(low, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-LaurentPoly.lift(other))

    def __rsub__(self, other):
        return LaurentPoly.lift(other) + (-self)

    def __mul__(self, other):
        o = LaurentPoly.lift(other)
        if not self.coeffs or not o.coeffs:
            return LaurentPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return LaurentPoly(self.low + o.low, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.low + k, self.coeffs)

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly.zero()
        return LaurentPoly(self.low, [c * a for a in self.coeffs])

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide by a polynomial that divides self exactly; used by fraction-free elimination."""
        o = LaurentPoly.lift(other)
        if not o.coeffs:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.coeffs:
            return LaurentPoly.zero()
        rem = list(self.coeffs)
        div = o.coeffs
        out = [Fraction(0)] * (len(rem) - len(div) + 1)
        if len(rem) < len(div):
            raise ValueError("inexact Laurent division")
        for k in range(len(out) - 1, -1, -1):
            q = rem[k + len(div) - 1] / div[-1]
            out[k] = q
            if q:
                for j, d in enumerate(div):
                    rem[k + j] -= q * d
        if any(rem):
            raise ValueError("inexact Laurent division")
        return LaurentPoly(self.low - o.low, out)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Reparametrize t -> t**k for a positive integer k."""
        if k <= 0:
            raise ValueError("reparametrization exponent must be positive")
        if not self.coeffs:
            return self
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return LaurentPoly(self.low * k, out)

    def eval_at(self, t0: Fraction) -> Fraction:
        t0 = Fraction(t0)
        if t0 == 0:
            return self.eval_at_zero()
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        return acc * t0 ** self.low

    def eval_at_zero(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if self.low < 0:
            raise ValueError("pole at t = 0")
        return self.coeff(0)

    def __eq__(self, other):
        o = LaurentPoly.lift(other) if not isinstance(other, LaurentPoly) else other
        return self.low == o.low and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = self.low + i
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{k}" if c != 1 else f"t^{k}")
        return " + ".join(parts)


class Mat:
    """Immutable dense matrix over any exact commutative scalar type."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("ragged matrix")

    @staticmethod
    def from_rows(rows) -> "Mat":
        return Mat(rows)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "Mat":
        return Mat([[Fraction(0)] * c for _ in range(r)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Mat([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.ncols
        out = []
        for r in self.rows:
            new = []
            for j in range(cols):
                acc = None
                for k, a in enumerate(r):
                    term = a * other.rows[k][j]
                    acc = term if acc is None else acc + term
                new.append(acc)
            out.append(new)
        return Mat(out)

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows))) if self.rows else self

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def apply(self, vec):
        """Matrix times column vector."""
        out = []
        for r in self.rows:
            acc = None
            for a, v in zip(r, vec):
                term = a * v
                acc = term if acc is None else acc + term
            out.append(acc)
        return tuple(out)

    def map(self, fn) -> "Mat":
        return Mat([[fn(a) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Mat([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"

    # Field-scalar routines (Fraction entries).

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot columns, rank).

        Pivot choice is the first nonzero entry in column order, which makes
        the output canonical and the whole pipeline reproducible.
        """
        m = [list(r) for r in self.rows]
        nr, nc = len(m), self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            m[r] = [a / pv for a in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Mat(m), tuple(pivots), r

    def rank(self) -> int:
        return self.rref()[2]

    def kernel(self):
        """Basis of the right null space, as a list of coordinate tuples."""
        R, pivots, rank = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * nc
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -R.rows[r][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs):
        """One solution of self @ x = rhs, or None if inconsistent."""
        aug = Mat([list(r) + [b] for r, b in zip(self.rows, rhs)])
        R, pivots, rank = aug.rref()
        nc = self.ncols
        if nc in pivots:
            return None
        x = [Fraction(0)] * nc
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][nc]
        return tuple(x)

    def inverse(self) -> "Mat":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of non-square matrix")
        aug = Mat([list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
                   for i, r in enumerate(self.rows)])
        R, pivots, rank = aug.rref()
        if rank < n or any(p >= n for p in pivots[:n]):
            raise ValueError("singular matrix")
        return Mat([r[n:] for r in R.rows])

    def det(self):
        """Determinant by exact Gaussian elimination (Fraction entries)."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            pr = None
            for i in range(c, n):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                return Fraction(0)
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det


def kernel_basis(rows) -> list:
    """Kernel of the matrix with the given rows; rows may be empty."""
    if not rows:
        raise ValueError("ambient dimension unknown for empty system")
    return Mat(rows).kernel()


def span_contains(rows, vector) -> bool:
    """Exact test that ``vector`` lies in the row span of ``rows``."""
    if not rows:
        return all(c == 0 for c in vector)
    base = Mat(rows)
    return Mat(list(rows) + [list(vector)]).rank() == base.rank()


def charpoly(m: Mat):
    """Coefficients (c1, ..., cn) of det(lambda*I - M) = lambda^n + c1*lambda^(n-1) + ... + cn.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = m.nrows
    if n != m.ncols:
        raise ValueError("characteristic polynomial of non-square matrix")
    coeffs = []
    mk = m
    ident = Mat.identity(n)
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        coeffs.append(ck)
        if k < n:
            mk = m @ (mk + ident.scale(ck))
    return tuple(coeffs)


def maximal_minors(rows, ncols: int, zero):
    """All maximal minors of a k x ncols matrix, in lexicographic column order.

    Works over any exact commutative scalar with +, * and truthiness; the DP
    goes row by row and skips zero entries, so sparse curve matrices stay cheap.
    """
    k = len(rows)
    # Seed with a marker instead of a typed 1; multiply lazily on first use.
    one_marker = object()
    states = {(): one_marker}
    for r_index in range(k):
        row = rows[r_index]
        new_states = {}
        for subset, val in states.items():
            for j, entry in enumerate(row):
                if not entry:
                    continue
                if j in subset:
                    continue
                pos = 0
                while pos < len(subset) and subset[pos] < j:
                    pos += 1
                sign = 1 if (len(subset) - pos) % 2 == 0 else -1
                term = entry if val is one_marker else val * entry
                if sign < 0:
                    term = -term
                key = subset[:pos] + (j,) + subset[pos:]
                if key in new_states:
                    new_states[key] = new_states[key] + term
                else:
                    new_states[key] = term
        states = new_states
    out = []
    for cols in combinations(range(ncols), k):
        out.append(states.get(cols, zero))
    return out


def laurent_rank(rows, ncols: int) -> int:
    """Rank over the rational function field of a matrix with LaurentPoly entries.

    Fraction-free (Bareiss-style) elimination; all divisions are exact.
    """
    m = [[LaurentPoly.lift(e) for e in r] for r in rows]
    nr = len(m)
    rank = 0
    prev = LaurentPoly.const(1)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, ncols):
                num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = num.exact_div(prev)
            m[i][c] = LaurentPoly.zero()
        prev = m[r][c]
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


def dual_mat_inverse(value: Mat, derivative: Mat):
    """Inverse of (A + eps*B) as the pair (A^-1, -A^-1 B A^-1)."""
    a_inv = value.inverse()
    return a_inv, -(a_inv @ derivative @ a_inv)


def split_dual_matrix(m: Mat):
    """Split a matrix with Dual entries into (value part, derivative part)."""
    val = m.map(lambda d: Dual.lift(d).value)
    der = m.map(lambda d: Dual.lift(d).derivative)
    return val, der


def join_dual_matrix(value: Mat, derivative: Mat) -> Mat:
    return Mat([[Dual(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(value.rows, derivative.rows)])
