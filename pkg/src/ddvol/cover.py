r"""
The canonical cyclic cover of a primitive d-differential surface.

Sheets are indexed by Z/d.  Crossing an edge of the base adds a fixed shift
to the sheet index, chosen so that the assignment

    z_hat(e, j) = zeta**j * side(e),        zeta = exp(2*pi*i*k/d),

is a translation structure: opposite darts carry opposite vectors, every face
closes up, and the deck map T(e, j) = (e, j+1) satisfies z_hat o T = zeta *
z_hat.  The cover is connected exactly when the holonomy of the base is
surjective, i.e. when the differential is primitive.

Riemann-Hurwitz bookkeeping: for a base vertex of order k_i let d_i be the
order of k_i in Z/d and n_i = d/d_i the cardinality of its fibre; each of the
n_i cover vertices has order d_i * (1 + k_i/d) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combmap import (CombinatorialMap, MapAutomorphism, MapError, build_map,
                      check_automorphism, perm_inverse)
from .surface import DDiffSurface, SurfaceError, rotation


class CoverError(ValueError):
    """Cyclic cover construction failure."""


class NotPrimitive(CoverError):
    """Holonomy is not surjective onto Z/d; no connected canonical cover."""


class DisconnectedCover(CoverError):
    """Cover decomposed into components (same root cause as NotPrimitive)."""


class NonIntegral(ValueError):
    """Riemann-Hurwitz output is not a non-negative integer."""


@dataclass(frozen=True)
class CoverProfile:
    """Per base vertex: branching order d_i, fibre size n_i, cover order."""

    d: int
    branch_orders: tuple[int, ...]   # d_i
    fibre_sizes: tuple[int, ...]     # n_i = d / d_i
    cover_orders: tuple[int, ...]    # k_hat at each vertex of the fibre


def riemann_hurwitz_genus(g: int, d: int, kappa) -> int:
    """Genus of the canonical cover from the stratum data alone."""
    n = len(kappa)
    fibre = 0
    for k in kappa:
        d_i = d // math.gcd(d, k % d)
        fibre += d // d_i
    num = 2 * d * (g - 1) + 2 + (n * d - fibre)
    if num % 2:
        raise NonIntegral(f"2*g_hat = {num} is odd for (g={g}, d={d}, kappa={kappa})")
    g_hat = num // 2
    if g_hat < 0:
        raise NonIntegral(f"negative cover genus for (g={g}, d={d}, kappa={kappa})")
    return g_hat


def cover_orders(d: int, kappa) -> tuple[tuple[int, ...], CoverProfile]:
    """Multiset of cover zero orders together with the fibre profile."""
    branch, fibre, orders = [], [], []
    khat_all = []
    for k in kappa:
        if k <= -d:
            raise NonIntegral(f"order {k} <= -d")
        d_i = d // math.gcd(d, k % d)
        n_i = d // d_i
        k_hat = d_i - 1 + (k * d_i) // d
        assert (k * d_i) % d == 0
        branch.append(d_i)
        fibre.append(n_i)
        orders.append(k_hat)
        khat_all.extend([k_hat] * n_i)
    profile = CoverProfile(d, tuple(branch), tuple(fibre), tuple(orders))
    return tuple(sorted(khat_all)), profile


class TranslationCover:
    """Degree-d cover with deck map T and periods z_hat, z_hat o T = zeta z_hat."""

    __slots__ = ("base", "d", "zeta_index", "map_hat", "T", "z", "surface",
                 "zeta", "fibre", "genus_hat", "n_hat", "kappa_hat",
                 "marked_base_vertices", "marked_reps", "profile")

    def __init__(self, base: DDiffSurface, zeta_index: int = 1):
        d = base.d
        if math.gcd(zeta_index, d) != 1:
            raise CoverError(f"zeta index {zeta_index} not coprime to d={d}")
        hol = base.holonomy()
        if not hol.surjective:
            raise NotPrimitive(
                f"holonomy image has index {hol.image_generator} in Z/{d}")

        cmap = base.cmap
        n = cmap.n_darts
        k_inv = pow(zeta_index, -1, d) if d > 1 else 0
        shift = [(-k_inv * base.rot_signed(e)) % d for e in range(n)]

        sigma0 = [0] * (n * d)
        sigma2 = [0] * (n * d)
        for e in range(n):
            for j in range(d):
                sigma0[e * d + j] = cmap.sigma0[e] * d + (j + shift[e]) % d
                sigma2[e * d + j] = cmap.sigma2[e] * d + j
        sigma1 = [sigma0[x] for x in perm_inverse(sigma2)]
        try:
            map_hat = build_map(sigma0, sigma1)
        except MapError as exc:
            if "disconnected" in str(exc):
                raise DisconnectedCover(str(exc)) from exc
            raise CoverError(str(exc)) from exc

        zeta_scalar = rotation(d, zeta_index, base.field)
        z = [None] * (n * d)
        for e in range(n):
            for j in range(d):
                z[e * d + j] = (zeta_scalar ** j) * base.side[e]

        t_perm = tuple((x // d) * d + (x % d + 1) % d for x in range(n * d))

        self.base = base
        self.d = d
        self.zeta_index = zeta_index
        self.map_hat = map_hat
        self.zeta = zeta_scalar
        self.z = tuple(z)
        self.T = check_automorphism(map_hat, t_perm, d)
        try:
            self.surface = DDiffSurface(map_hat, 1, z, [0] * map_hat.n_edges)
        except SurfaceError as exc:
            raise CoverError(f"cover periods are not a flat structure: {exc}")

        self._check_eigenrelation()

        self.genus_hat = map_hat.genus
        self.n_hat = map_hat.n_vertices
        self.kappa_hat = self.surface.kappa
        self.fibre = tuple(
            cmap.vertex_of[map_hat.vertices[vi][0] // d]
            for vi in range(map_hat.n_vertices)
        )
        self._check_riemann_hurwitz()

        self.marked_base_vertices = tuple(
            i for i, k in enumerate(base.kappa) if k % d == 0)
        reps = []
        for i in self.marked_base_vertices:
            fibre_vs = [v for v in range(self.n_hat) if self.fibre[v] == i]
            reps.append(min(fibre_vs))
        self.marked_reps = tuple(reps)

    # -- validation ---------------------------------------------------------

    def _check_eigenrelation(self):
        surf = self.surface
        for x in range(self.map_hat.n_darts):
            diff = self.z[self.T(x)] - self.zeta * self.z[x]
            ok = diff.is_zero() if surf.exact else abs(diff) <= surf.tol
            if not ok:
                raise CoverError(f"z(T e) != zeta z(e) at cover dart {x}")

    def _check_riemann_hurwitz(self):
        base = self.base
        expected = riemann_hurwitz_genus(base.genus, self.d, base.kappa)
        if self.genus_hat != expected:
            raise CoverError(
                f"cover genus {self.genus_hat} != Riemann-Hurwitz value {expected}")
        khat_expected, profile = cover_orders(self.d, base.kappa)
        if tuple(sorted(self.kappa_hat)) != khat_expected:
            raise CoverError(
                f"cover orders {sorted(self.kappa_hat)} != expected {khat_expected}")
        self.profile = profile
        # fibre cardinalities and the free T-orbit structure on them
        tv = self.vertex_permutation()
        for i, k in enumerate(base.kappa):
            n_i = math.gcd(self.d, k % self.d)
            fibre_vs = [v for v in range(self.n_hat) if self.fibre[v] == i]
            if len(fibre_vs) != n_i:
                raise CoverError(f"fibre over vertex {i} has size {len(fibre_vs)}, "
                                 f"expected {n_i}")
            # the fibre is a single T-orbit
            orbit = {fibre_vs[0]}
            v = tv[fibre_vs[0]]
            while v not in orbit:
                orbit.add(v)
                v = tv[v]
            if orbit != set(fibre_vs):
                raise CoverError(f"fibre over vertex {i} is not one T-orbit")

    # -- access ---------------------------------------------------------------

    @property
    def r(self) -> int:
        """Number of base vertices whose order is divisible by d."""
        return len(self.marked_base_vertices)

    @property
    def exact(self) -> bool:
        return self.surface.exact

    @property
    def area(self) -> float:
        return self.surface.area

    def T_power(self, k: int) -> tuple[int, ...]:
        return self.T.power(k)

    def vertex_permutation(self, k: int = 1) -> tuple[int, ...]:
        p = self.T_power(k)
        vm = self.map_hat
        return tuple(vm.vertex_of[p[vm.vertices[v][0]]] for v in range(self.n_hat))

    def __repr__(self):
        return (f"TranslationCover(d={self.d}, zeta_index={self.zeta_index}, "
                f"g_hat={self.genus_hat}, n_hat={self.n_hat})")


def build_cover(surface: DDiffSurface, zeta_index: int = 1) -> TranslationCover:
    """Construct and validate the canonical cyclic cover."""
    return TranslationCover(surface, zeta_index)
