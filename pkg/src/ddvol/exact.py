r"""
Exact scalars for the cyclotomic orders that carry a lattice.

For gluing orders d in {1, 2, 4} all relevant quantities live in the Gaussian
field Q(i); for d in {3, 6} they live in the Eisenstein field Q(w) with
w = exp(2*pi*i/3).  Both are the only imaginary quadratic fields whose ring of
integers is needed here, and both rings (Z[i], Z[w]) are Euclidean, which is
what makes exact lattice computations (kernel saturation, covolumes, indices)
possible.

The module provides

* :class:`Cyc` -- a + b*u with rational a, b, where u is i or w,
* :class:`ExactReal` -- real numbers of the shape c * sqrt(3)**s with
  rational c (areas, cross products and determinant magnitudes land there),
* exact Gaussian elimination (kernel, solve, det, rref) over Cyc entries,
* kernel lattices and Smith-style basis completion over Z, Z[i], Z[w].

Orders outside {1, 2, 3, 4, 6} fall back to complex floats elsewhere.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence

GAUSS = "gauss"  # u = i,              u^2 = -1
EISEN = "eisen"  # u = exp(2*pi*i/3),  u^2 = -1 - u

EXACT_ORDERS = (1, 2, 3, 4, 6)

_U_COMPLEX = {GAUSS: 1j, EISEN: complex(-0.5, math.sqrt(3) / 2)}


def field_for_order(d: int) -> str:
    if d in (1, 2, 4):
        return GAUSS
    if d in (3, 6):
        return EISEN
    raise UnsupportedD(f"no exact cyclotomic field implemented for d={d}")


class UnsupportedD(ValueError):
    """Raised when exact arithmetic is requested for d outside {1,2,3,4,6}."""


class Cyc:
    """Element a + b*u of Q(i) or Q(w), with exact rational coordinates."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: str, a, b=0):
        self.field = field
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(field: str) -> "Cyc":
        return Cyc(field, 0, 0)

    @staticmethod
    def one(field: str) -> "Cyc":
        return Cyc(field, 1, 0)

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.field != self.field:
                raise TypeError("mixed cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.field, other, 0)
        return NotImplemented

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyc(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyc(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.field == GAUSS:
            # (a+bi)(c+di) = (ac-bd) + (ad+bc) i
            return Cyc(GAUSS, a * c - b * d, a * d + b * c)
        # (a+bw)(c+dw) = ac + (ad+bc) w + bd w^2,  w^2 = -1-w
        return Cyc(EISEN, a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conj(self) -> "Cyc":
        if self.field == GAUSS:
            return Cyc(GAUSS, self.a, -self.b)
        # conj(w) = w^2 = -1 - w
        return Cyc(EISEN, self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """x * conj(x) as a rational (the field norm, = |x|^2)."""
        if self.field == GAUSS:
            return self.a * self.a + self.b * self.b
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Cyc":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        c = self.conj()
        return Cyc(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def real_part(self) -> Fraction | None:
        """Exact real part when it is rational, else None (never for GAUSS)."""
        if self.field == GAUSS:
            return self.a
        return self.a - self.b / 2

    def imag_exact(self) -> "ExactReal":
        """Exact imaginary part; a sqrt(3)-multiple in the Eisenstein case."""
        if self.field == GAUSS:
            return ExactReal(self.b, 0)
        return ExactReal(self.b / 2, 1)

    def real_exact(self) -> "ExactReal":
        if self.field == GAUSS:
            return ExactReal(self.a, 0)
        return ExactReal(self.a - self.b / 2, 0)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __complex__(self):
        u = _U_COMPLEX[self.field]
        return complex(self.a) + complex(self.b) * u

    def __abs__(self):
        return math.sqrt(float(self.norm()))

    def __repr__(self):
        u = "i" if self.field == GAUSS else "w"
        return f"({self.a}+{self.b}{u})"

    def str_exact(self) -> str:
        u = "i" if self.field == GAUSS else "zeta3"
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+({self.b})*{u}"


def zeta(d: int, k: int = 1) -> Cyc:
    """exp(2*pi*i*k/d) as an exact element, for d in {1,2,3,4,6}."""
    field = field_for_order(d)
    prim = {
        1: Cyc(GAUSS, 1, 0),
        2: Cyc(GAUSS, -1, 0),
        3: Cyc(EISEN, 0, 1),
        4: Cyc(GAUSS, 0, 1),
        6: Cyc(EISEN, 1, 1),
    }[d]
    return prim ** (k % d)


class ExactReal:
    """Real value c * sqrt(3)**s with rational c and s in {0, 1}.

    Closed under multiplication; addition requires matching s (which is the
    only case the geometry produces).
    """

    __slots__ = ("c", "s")

    def __init__(self, c, s: int = 0):
        self.c = Fraction(c)
        self.s = 0 if self.c == 0 else s % 2

    def __mul__(self, other):
        if isinstance(other, ExactReal):
            s = self.s + other.s
            c = self.c * other.c * (3 if s == 2 else 1)
            return ExactReal(c, s % 2)
        if isinstance(other, (int, Fraction)):
            return ExactReal(self.c * other, self.s)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactReal(other, 0)
        if not isinstance(other, ExactReal):
            return NotImplemented
        if self.c == 0:
            return other
        if other.c == 0:
            return self
        if self.s != other.s:
            raise ValueError("cannot add sqrt(3)-incompatible exact reals")
        return ExactReal(self.c + other.c, self.s)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(-self.c, self.s)

    def __sub__(self, other):
        return self + (-other)

    def __abs__(self):
        return ExactReal(abs(self.c), self.s)

    def __float__(self):
        return float(self.c) * (math.sqrt(3) if self.s else 1.0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactReal(other, 0)
        if not isinstance(other, ExactReal):
            return NotImplemented
        return self.c == other.c and self.s == other.s

    def __hash__(self):
        return hash((self.c, self.s))

    def sign(self) -> int:
        return (self.c > 0) - (self.c < 0)

    def __lt__(self, other):
        return float(self) < float(other) and self != other

    def is_rational(self) -> bool:
        return self.s == 0 or self.c == 0

    def __repr__(self):
        return f"{self.c}" if self.s == 0 else f"{self.c}*sqrt(3)"


# ---------------------------------------------------------------------------
# exact dense linear algebra over Cyc
# ---------------------------------------------------------------------------


def mat_copy(m):
    return [list(row) for row in m]


def rref(mat: Sequence[Sequence[Cyc]]):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = mat_copy(mat)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(mat) -> int:
    if not mat:
        return 0
    return len(rref(mat)[1])


def nullspace(mat: Sequence[Sequence[Cyc]], ncols: int, field: str):
    """Basis of {v : mat @ v = 0} as a list of length-ncols vectors."""
    if not mat:
        return [
            [Cyc.one(field) if j == i else Cyc.zero(field) for j in range(ncols)]
            for i in range(ncols)
        ]
    red, pivots = rref(mat)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Cyc.zero(field) for _ in range(ncols)]
        v[fc] = Cyc.one(field)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs, field: str):
    """One solution of mat @ x = rhs, or None if inconsistent."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Cyc.zero(field) for _ in range(ncols)]
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def det(mat: Sequence[Sequence[Cyc]], field: str) -> Cyc:
    n = len(mat)
    if n == 0:
        return Cyc.one(field)
    m = mat_copy(mat)
    out = Cyc.one(field)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return Cyc.zero(field)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def mat_inverse(mat, field: str):
    n = len(mat)
    aug = [list(row) + [Cyc.one(field) if j == i else Cyc.zero(field) for j in range(n)]
           for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def mat_mul(a, b):
    return [
        [sum((x * y for x, y in zip(row, col)), start=row[0] * 0)
         for col in zip(*b)]
        for row in a
    ]


# ---------------------------------------------------------------------------
# Euclidean rings Z, Z[i], Z[w]: kernel lattices and basis completion
# ---------------------------------------------------------------------------
#
# Elements of Z[i] and Z[w] are (a, b) integer pairs in the 1, u basis; plain
# Z uses the same representation with b = 0.  Nearest-integer rounding of the
# field quotient gives a Euclidean division in all three rings.


class Ring:
    def __init__(self, field: str | None):
        self.field = field  # None means plain Z

    def zero(self):
        return (0, 0)

    def one(self):
        return (1, 0)

    def from_int(self, n: int):
        return (n, 0)

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def mul(self, x, y):
        a, b = x
        c, d = y
        if self.field in (None, GAUSS):
            return (a * c - b * d, a * d + b * c)
        return (a * c - b * d, a * d + b * c - b * d)

    def norm(self, x) -> int:
        a, b = x
        if self.field in (None, GAUSS):
            return a * a + b * b
        return a * a - a * b + b * b

    def is_zero(self, x) -> bool:
        return x == (0, 0)

    def divmod(self, x, y):
        """q, r with x = q*y + r and norm(r) < norm(y)."""
        if self.field is None:
            q = _round_half(Fraction(x[0], y[0]))
            return (q, 0), (x[0] - q * y[0], 0)
        n = self.norm(y)
        conj = (y[0], -y[1]) if self.field == GAUSS else (y[0] - y[1], -y[1])
        num = self.mul(x, conj)
        qa = _round_half(Fraction(num[0], n))
        qb = _round_half(Fraction(num[1], n))
        q = (qa, qb)
        r = self.sub(x, self.mul(q, y))
        return q, r

    def to_cyc(self, x, field: str) -> Cyc:
        return Cyc(field, x[0], x[1])


def _round_half(f: Fraction) -> int:
    # round to nearest, ties toward -inf; any tie rule keeps norm(r) <= norm(y)/2 * const
    return math.floor(f + Fraction(1, 2))


def ring_kernel(mat, ring: Ring):
    """Saturated kernel of an integer-ring matrix, as columns over the ring.

    Column reduction M*W with unimodular W; the columns of W whose image
    becomes zero form a basis of {v in O^n : M v = 0}.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    m = [list(row) for row in mat]
    w = [[ring.one() if i == j else ring.zero() for j in range(ncols)]
         for i in range(ncols)]

    def col_op_sub(j, k, q):
        # column j -= q * column k
        for i in range(nrows):
            m[i][j] = ring.sub(m[i][j], ring.mul(q, m[i][k]))
        for i in range(ncols):
            w[i][j] = ring.sub(w[i][j], ring.mul(q, w[i][k]))

    def col_swap(j, k):
        for i in range(nrows):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(ncols):
            w[i][j], w[i][k] = w[i][k], w[i][j]

    lead = 0
    for row in range(nrows):
        if lead >= ncols:
            break
        # euclidean reduction within the active columns of this row
        while True:
            nz = [j for j in range(lead, ncols) if not ring.is_zero(m[row][j])]
            if not nz:
                break
            p = min(nz, key=lambda j: ring.norm(m[row][j]))
            if p != lead:
                col_swap(lead, p)
            done = True
            for j in range(lead + 1, ncols):
                if ring.is_zero(m[row][j]):
                    continue
                q, r = ring.divmod(m[row][j], m[row][lead])
                col_op_sub(j, lead, q)
                if not ring.is_zero(m[row][j]):
                    done = False
            if done:
                break
        if not ring.is_zero(m[row][lead]):
            lead += 1
    kernel_cols = []
    for j in range(lead, ncols):
        if all(ring.is_zero(m[i][j]) for i in range(nrows)):
            kernel_cols.append([w[i][j] for i in range(ncols)])
    return kernel_cols


def snf_int(mat):
    """Smith normal form over Z: returns (U, D, W) with U @ mat @ W = D."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    a = [[int(x) for x in row] for row in mat]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    w = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_sub(i, k, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j, k, q):
        for r in range(nrows):
            a[r][j] -= q * a[r][k]
        for r in range(ncols):
            w[r][j] -= q * w[r][k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for r in range(nrows):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(ncols):
            w[r][j], w[r][k] = w[r][k], w[r][j]

    t = 0
    while t < min(nrows, ncols):
        # find pivot of minimal absolute value
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        dirty = False
        for i in range(t + 1, nrows):
            if a[i][t]:
                q = round(a[i][t] / a[t][t])
                if q:
                    row_sub(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, ncols):
            if a[t][j]:
                q = round(a[t][j] / a[t][t])
                if q:
                    col_sub(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, w


def complete_unimodular(rows):
    """Complete k primitive independent integer rows to a basis of Z^m.

    Returns an m x m unimodular matrix whose first k rows are the input.
    """
    k = len(rows)
    if k == 0:
        raise ValueError("need at least one row")
    m = len(rows[0])
    u, d, w = snf_int(rows)
    for i in range(k):
        if d[i][i] != 1:
            raise ValueError("row family is not primitive, cannot complete")
    winv = _int_inverse(w)
    comp = [winv[i] for i in range(k, m)]
    full = [list(r) for r in rows] + comp
    if abs(_int_det(full)) != 1:
        raise AssertionError("completion failed to be unimodular")
    return full


def _int_det(mat) -> int:
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    assert out.denominator == 1
    return int(out)


def _int_inverse(mat):
    n = len(mat)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        pr = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[pr] = m[pr], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    inv = [row[n:] for row in m]
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row), "matrix not unimodular"
        out.append([int(x) for x in row])
    return out


def symplectic_reduce(s):
    """Integer symplectic basis for a unimodular skew form.

    Given the 2g x 2g skew pairing matrix ``s`` on a basis (h_1, ..., h_2g),
    returns integer rows (a_1..a_g, b_1..b_g) in h-coordinates such that the
    pairing of the new basis is the standard J: <a_i, b_j> = delta_ij,
    <a_i, a_j> = <b_i, b_j> = 0.
    """
    n = len(s)
    if n == 0:
        return []
    if n % 2:
        raise ValueError("skew form on odd-dimensional lattice cannot be unimodular")

    def pair(x, y):
        return sum(x[i] * s[i][j] * y[j] for i in range(n) for j in range(n))

    # e = first coordinate vector is primitive in Z^n; its pairing row has
    # gcd 1 because s is unimodular, so a dual partner exists over Z.
    g, coeffs = _ext_gcd_list(s[0])
    if g != 1:
        raise ValueError("pairing not unimodular")
    e = [int(j == 0) for j in range(n)]
    f = list(coeffs)
    # project the coordinate vectors onto the symplectic complement of (e, f)
    gens = []
    for k in range(n):
        v = [int(j == k) for j in range(n)]
        ve, vf = pair(e, v), pair(f, v)
        vp = [x + vf * ea - ve * fa for x, ea, fa in zip(v, e, f)]
        if any(vp):
            gens.append(vp)
    comp = _lattice_basis(gens)
    assert len(comp) == n - 2
    if comp:
        s2 = [[pair(u, v) for v in comp] for u in comp]
        sub = symplectic_reduce(s2)
        lifted = [
            [sum(c * comp[t][j] for t, c in enumerate(row)) for j in range(n)]
            for row in sub
        ]
        half = len(lifted) // 2
        return [e] + lifted[:half] + [f] + lifted[half:]
    return [e, f]


def _lattice_basis(rows):
    """Row-echelon basis of the integer lattice spanned by ``rows``."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    m = len(work[0])
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, len(work)) if work[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(work[i][col]))
            work[r], work[piv] = work[piv], work[r]
            done = True
            for i in range(r + 1, len(work)):
                if work[i][col]:
                    q = work[i][col] // work[r][col]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][col]:
                        done = False
            if done:
                break
        if r < len(work) and work[r][col]:
            r += 1
        if r == len(work):
            break
    return [row for row in work[:r]]


def _ext_gcd_list(vals):
    """gcd of vals together with integer coefficients realizing it."""
    coeffs = [0] * len(vals)
    g = 0
    gi = -1
    for i, v in enumerate(vals):
        if v:
            if g == 0:
                g, gi = abs(v), i
                coeffs = [0] * len(vals)
                coeffs[i] = 1 if v > 0 else -1
            else:
                gg, x, y = _ext_gcd(g, v)
                coeffs = [c * x for c in coeffs]
                coeffs[i] += y
                g = gg
    return g, coeffs


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


