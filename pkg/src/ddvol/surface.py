r"""
Flat surfaces of d-differentials: Euclidean triangles glued by rotations.

A surface is a triangulated combinatorial map together with a side vector for
every dart (the three oriented sides of each face sum to zero) and a rotation
class in Z/d for every undirected edge.  Writing zeta_d = exp(2*pi*i/d), the
gluing across an edge with canonical dart e reads

    side(sigma0(e)) = -zeta_d**rot(e) * side(e).

Cone angles are read off from corner-angle sums; the order k_i at vertex i
satisfies angle_i = (1 + k_i/d) * 2*pi.  The linear holonomy of the metric is
computed on the dual graph and must send a small loop around vertex i to
k_i mod d; its image subgroup of Z/d detects primitivity.

Side vectors may be exact (:class:`ddvol.exact.Cyc`, available when the
rotation field embeds in Q(i) or Q(omega)) or complex floats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combmap import CombinatorialMap, DualGraph, dual_graph
from .exact import Cyc, ExactReal, EXACT_ORDERS, GAUSS, EISEN, field_for_order, zeta


def field_supports_order(field: str, d: int) -> bool:
    """Whether zeta_d lies in the given quadratic field."""
    if d in (1, 2):
        return True
    if d == 4:
        return field == GAUSS
    if d in (3, 6):
        return field == EISEN
    return False


class SurfaceError(ValueError):
    """Invalid flat-surface data."""


class DegenerateTriangle(SurfaceError):
    """A face has zero or negative area."""


class GluingMismatch(SurfaceError):
    """Side vectors and rotation labels are incompatible across an edge."""


class BadOrders(SurfaceError):
    """Cone orders violate k_i > -d or their total differs from d(2g-2)."""


class NonIntegralOrder(SurfaceError):
    """A cone angle is not of the form (1 + k/d) * 2*pi."""


# -- scalar helpers (exact Cyc or complex float) -----------------------------


def is_exact_scalar(z) -> bool:
    return isinstance(z, Cyc)


def as_complex(z) -> complex:
    return complex(z)


def conj(z):
    return z.conj() if isinstance(z, Cyc) else z.conjugate()


def cross(z, w):
    """Im(conj(z) * w); exact when both operands are exact."""
    if isinstance(z, Cyc):
        return (z.conj() * w).imag_exact()
    return (z.conjugate() * w).imag


def dot(z, w):
    """Re(conj(z) * w); exact when both operands are exact."""
    if isinstance(z, Cyc):
        return (z.conj() * w).real_exact()
    return (z.conjugate() * w).real


def rotation(d: int, k: int, field: str | None):
    """zeta_d**k as an element of ``field`` (or a complex float)."""
    if field is None:
        return cmath.exp(2j * math.pi * k / d)
    if d in (1, 2):
        val = 1 if d == 1 or k % 2 == 0 else -1
        return Cyc(field, val, 0)
    z = zeta(d, k)
    if z.field != field:
        raise SurfaceError(f"zeta_{d} does not lie in the {field} field")
    return z


def corner_angle(out_side, in_side) -> float:
    """Interior angle at the corner between the outgoing side and the
    reversed incoming side; in (0, pi) for positively oriented faces."""
    s = float(cross(out_side, -in_side))
    c = float(dot(out_side, -in_side))
    return math.atan2(s, c)


@dataclass(frozen=True)
class HolonomyMorphism:
    """Linear holonomy epsilon: pi_1(dual spine) -> Z/d."""

    d: int
    loop_values: tuple[int, ...]      # on fundamental cycles of the dual graph
    vertex_values: tuple[int, ...]    # on small loops around the vertices
    image_generator: int              # gcd in 1..d; g = d means trivial image

    @property
    def surjective(self) -> bool:
        return self.image_generator == 1

    @property
    def image_order(self) -> int:
        return self.d // self.image_generator


class DDiffSurface:
    """Flat structure of a d-differential on a triangulated surface."""

    __slots__ = ("cmap", "d", "side", "rot", "exact", "field",
                 "kappa", "genus", "tol", "_angles")

    def __init__(self, cmap: CombinatorialMap, d: int, side: Sequence,
                 rot: Sequence[int], tol: float | None = None):
        if d < 1:
            raise SurfaceError("d must be a positive integer")
        if len(side) != cmap.n_darts:
            raise SurfaceError("need one side vector per dart")
        if len(rot) != cmap.n_edges:
            raise SurfaceError("need one rotation class per undirected edge")

        exact = bool(side) and all(isinstance(s, Cyc) for s in side)
        field = None
        if exact:
            field = side[0].field
            if any(s.field != field for s in side) or not field_supports_order(field, d):
                exact = False
                field = None
        side = tuple(side) if exact else tuple(complex(s) for s in side)

        self.cmap = cmap
        self.d = d
        self.side = side
        self.rot = tuple(int(r) % d for r in rot)
        self.exact = exact
        self.field = field

        scale = math.sqrt(sum(abs(as_complex(s)) ** 2 for s in side) / len(side))
        self.tol = tol if tol is not None else 1e-9 * max(scale, 1e-30)

        self._check_faces()
        self._check_gluing()
        self._angles = self._corner_angles()
        self.genus = cmap.genus
        self.kappa = self._cone_orders()
        self._check_holonomy_at_vertices()

    # -- validation -----------------------------------------------------

    def _is_zero(self, z) -> bool:
        if self.exact:
            return z.is_zero()
        return abs(z) <= self.tol

    def _check_faces(self):
        for fi, f in enumerate(self.cmap.faces):
            total = self.side[f[0]] + self.side[f[1]] + self.side[f[2]]
            if not self._is_zero(total):
                raise SurfaceError(f"face {fi} sides do not close up")
            a = cross(self.side[f[0]], self.side[f[1]])
            positive = a.sign() > 0 if isinstance(a, ExactReal) else a > 0.0
            if not positive:
                raise DegenerateTriangle(f"face {fi} has non-positive area")

    def _check_gluing(self):
        zr = [rotation(self.d, r, self.field) for r in range(self.d)]
        for ei, (e, eb) in enumerate(self.cmap.edges):
            expect = -(zr[self.rot[ei]] * self.side[e])
            if not self._is_zero(self.side[eb] - expect):
                raise GluingMismatch(
                    f"edge {ei} (darts {e},{eb}): side vectors incompatible "
                    f"with rotation class {self.rot[ei]}")

    def _corner_angles(self) -> tuple[float, ...]:
        angles = [0.0] * self.cmap.n_darts
        for f in self.cmap.faces:
            for k in range(3):
                e = f[k]
                prev = f[(k + 2) % 3]
                angles[e] = corner_angle(self.side[e], self.side[prev])
                if angles[e] <= 0:
                    raise DegenerateTriangle(f"flat corner at dart {e}")
        return tuple(angles)

    def _cone_orders(self) -> tuple[int, ...]:
        kappa = []
        for vi, v in enumerate(self.cmap.vertices):
            theta = sum(self._angles[e] for e in v)
            k_real = self.d * (theta / (2 * math.pi) - 1)
            k = round(k_real)
            if abs(k_real - k) > 1e-6:
                raise NonIntegralOrder(
                    f"vertex {vi}: cone angle {theta} is not (1+k/{self.d})*2*pi")
            if k <= -self.d:
                raise BadOrders(f"vertex {vi}: order {k} <= -d")
            kappa.append(k)
        total = sum(kappa)
        if total != self.d * (2 * self.genus - 2):
            raise BadOrders(
                f"sum of orders {total} != d(2g-2) = {self.d * (2 * self.genus - 2)}")
        return tuple(kappa)

    def _check_holonomy_at_vertices(self):
        hol = self.holonomy()
        for vi, val in enumerate(hol.vertex_values):
            if (val - self.kappa[vi]) % self.d:
                raise GluingMismatch(
                    f"vertex {vi}: holonomy {val} != order {self.kappa[vi]} mod d")

    # -- geometry ---------------------------------------------------------

    def rot_signed(self, dart: int) -> int:
        """Rotation class of the gluing, oriented from the side of ``dart``."""
        ei = self.cmap.edge_of[dart]
        r = self.rot[ei]
        return r if self.cmap.dart_sign(dart) > 0 else (-r) % self.d

    def face_area(self, face_index: int):
        f = self.cmap.faces[face_index]
        a = cross(self.side[f[0]], self.side[f[1]])
        if isinstance(a, ExactReal):
            return a * Fraction(1, 2)
        return a / 2

    def area_exact(self) -> ExactReal:
        if not self.exact:
            raise SurfaceError("exact area requires exact side vectors")
        total = ExactReal(0)
        for fi in range(self.cmap.n_faces):
            total = total + self.face_area(fi)
        return total

    @property
    def area(self) -> float:
        if self.exact:
            return float(self.area_exact())
        return sum(self.face_area(fi) for fi in range(self.cmap.n_faces))

    @property
    def n_vertices(self) -> int:
        return self.cmap.n_vertices

    def holonomy(self) -> HolonomyMorphism:
        return _holonomy(self)

    def to_float(self) -> "DDiffSurface":
        return DDiffSurface(self.cmap, self.d,
                            [as_complex(s) for s in self.side], self.rot)

    def scaled(self, factor) -> "DDiffSurface":
        """Multiply all side vectors by a nonzero scalar.

        Exactness is preserved for rational or Cyc factors; anything else
        falls back to floating point.
        """
        if self.exact and isinstance(factor, (int, Fraction, Cyc)):
            return DDiffSurface(self.cmap, self.d,
                                [s * factor for s in self.side], self.rot)
        f = complex(factor)
        return DDiffSurface(self.cmap, self.d,
                            [f * as_complex(s) for s in self.side], self.rot)

    def __repr__(self):
        return (f"DDiffSurface(d={self.d}, g={self.genus}, "
                f"kappa={self.kappa}, exact={self.exact})")


def build_surface(cmap: CombinatorialMap, d: int, side: Sequence,
                  rot: Sequence[int], tol: float | None = None) -> DDiffSurface:
    """Validate all gluing data and return the flat surface."""
    return DDiffSurface(cmap, d, side, rot, tol=tol)


def cone_orders(surface: DDiffSurface) -> tuple[int, ...]:
    """Cone orders (k_1, ..., k_n) indexed by vertex."""
    return surface.kappa


def area(surface: DDiffSurface) -> float:
    return surface.area


def _holonomy(surface: DDiffSurface) -> HolonomyMorphism:
    cmap = surface.cmap
    d = surface.d
    dual = dual_graph(cmap)

    # crossing contribution when leaving the face of dart x through x
    def crossing(x: int) -> int:
        return (-surface.rot_signed(x)) % d

    # potentials along a dual spanning tree
    phi = [None] * dual.n_nodes
    phi[0] = 0
    tree_links = set()
    stack = [0]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for ei in dual.incident(u):
            # crossing via the dart of this edge that lies in face u
            e, eb = cmap.edges[ei]
            x = e if cmap.face_of[e] == u else eb
            v = cmap.face_of[cmap.sigma0[x]]
            if phi[v] is None:
                phi[v] = (phi[u] + crossing(x)) % d
                tree_links.add(ei)
                stack.append(v)

    loop_values = []
    for ei, (e, eb) in enumerate(cmap.edges):
        if ei in tree_links:
            continue
        u, v = cmap.face_of[e], cmap.face_of[eb]
        loop_values.append((phi[u] + crossing(e) - phi[v]) % d)

    vertex_values = []
    for v in cmap.vertices:
        s = 0
        for e in v:
            prev = cmap.face_cycle(e)[2]
            s += crossing(prev)
        vertex_values.append(s % d)

    g = d
    for val in loop_values:
        g = math.gcd(g, val)
    return HolonomyMorphism(d, tuple(loop_values), tuple(vertex_values), g)


def primitivity(surface: DDiffSurface) -> HolonomyMorphism:
    """Linear holonomy morphism together with its surjectivity status."""
    return surface.holonomy()
