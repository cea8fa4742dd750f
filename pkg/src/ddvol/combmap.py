r"""
Combinatorial maps encoding triangulations of closed oriented surfaces.

A map is a dart set {0, ..., 2E-1} with two permutations: ``sigma0`` pairs
each dart with its reversal (a fixed-point-free involution) and ``sigma1``
rotates the darts counterclockwise around their origin vertex.  The face
permutation is derived as sigma2 = sigma1^{-1} o sigma0; its cycles walk the
face boundaries counterclockwise, and every cycle must have length 3 here.

Undirected edges are the sigma0-orbits, keyed by their smaller dart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


class MapError(ValueError):
    """Invalid combinatorial map data."""


class NotAutomorphism(ValueError):
    """Permutation does not commute with sigma0 and sigma1."""


class WrongOrder(ValueError):
    """Automorphism order differs from the requested one."""


class NotFree(ValueError):
    """Automorphism group does not act freely on darts or faces."""


def _check_permutation(perm: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    p = tuple(perm)
    if len(p) != n or sorted(p) != list(range(n)):
        raise MapError(f"{name} is not a permutation of 0..{n - 1}")
    return p


def perm_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        cycles.append(tuple(cyc))
    return cycles


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """The permutation x -> p[q[x]]."""
    return tuple(p[q[x]] for x in range(len(q)))


class CombinatorialMap:
    """Validated triangulated map; immutable after construction."""

    __slots__ = (
        "n_darts", "sigma0", "sigma1", "sigma2",
        "faces", "vertices", "edges",
        "face_of", "vertex_of", "edge_of", "pos_in_face",
    )

    def __init__(self, sigma0: Sequence[int], sigma1: Sequence[int]):
        n = len(sigma0)
        if n == 0 or n % 2:
            raise MapError("dart count must be positive and even")
        s0 = _check_permutation(sigma0, n, "sigma0")
        s1 = _check_permutation(sigma1, n, "sigma1")
        if len(sigma1) != n:
            raise MapError("sigma0 and sigma1 act on different dart sets")
        for e in range(n):
            if s0[e] == e:
                raise MapError(f"sigma0 fixes dart {e}")
            if s0[s0[e]] != e:
                raise MapError("sigma0 is not an involution")
        self.n_darts = n
        self.sigma0 = s0
        self.sigma1 = s1
        self.sigma2 = perm_compose(perm_inverse(s1), s0)

        faces = perm_cycles(self.sigma2)
        for f in faces:
            if len(f) != 3:
                raise MapError(f"face {f} has length {len(f)}, expected 3")
        self.faces = tuple(faces)
        self.vertices = tuple(perm_cycles(s1))
        self.edges = tuple((e, s0[e]) for e in range(n) if e < s0[e])

        self.face_of = [0] * n
        self.pos_in_face = [0] * n
        for fi, f in enumerate(self.faces):
            for k, e in enumerate(f):
                self.face_of[e] = fi
                self.pos_in_face[e] = k
        self.vertex_of = [0] * n
        for vi, v in enumerate(self.vertices):
            for e in v:
                self.vertex_of[e] = vi
        self.edge_of = [0] * n
        for ei, (e, f) in enumerate(self.edges):
            self.edge_of[e] = ei
            self.edge_of[f] = ei

        if not self._connected():
            raise MapError("map is disconnected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in (self.sigma0[x], self.sigma1[x]):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n_darts

    # -- counts ----------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2:
            raise MapError("odd Euler characteristic on a closed surface")
        g = (2 - chi) // 2
        if g < 0:
            raise MapError("negative genus")
        return g

    def canonical_dart(self, edge_index: int) -> int:
        return self.edges[edge_index][0]

    def dart_sign(self, dart: int) -> int:
        """+1 if the dart is the canonical orientation of its edge."""
        return 1 if dart == self.edges[self.edge_of[dart]][0] else -1

    def face_cycle(self, dart: int) -> tuple[int, int, int]:
        f = self.faces[self.face_of[dart]]
        k = self.pos_in_face[dart]
        return (f[k], f[(k + 1) % 3], f[(k + 2) % 3])

    def __eq__(self, other):
        return (
            isinstance(other, CombinatorialMap)
            and self.sigma0 == other.sigma0
            and self.sigma1 == other.sigma1
        )

    def __hash__(self):
        return hash((self.sigma0, self.sigma1))

    def __repr__(self):
        return (f"CombinatorialMap(darts={self.n_darts}, V={self.n_vertices}, "
                f"E={self.n_edges}, F={self.n_faces}, genus={self.genus})")


def build_map(sigma0: Sequence[int], sigma1: Sequence[int]) -> CombinatorialMap:
    """Validate and build a triangulated combinatorial map."""
    return CombinatorialMap(sigma0, sigma1)


@dataclass(frozen=True)
class MapAutomorphism:
    """An order-d automorphism of a map, acting freely for d >= 2."""

    perm: tuple[int, ...]
    order: int

    def __call__(self, dart: int) -> int:
        return self.perm[dart]

    def power(self, k: int) -> tuple[int, ...]:
        k %= self.order
        out = tuple(range(len(self.perm)))
        for _ in range(k):
            out = perm_compose(self.perm, out)
        return out


def check_automorphism(cmap: CombinatorialMap, perm: Sequence[int], d: int) -> MapAutomorphism:
    """Verify that ``perm`` is a free automorphism of exact order ``d``."""
    n = cmap.n_darts
    p = _check_permutation(perm, n, "automorphism")
    if perm_compose(p, cmap.sigma0) != perm_compose(cmap.sigma0, p):
        raise NotAutomorphism("does not commute with sigma0")
    if perm_compose(p, cmap.sigma1) != perm_compose(cmap.sigma1, p):
        raise NotAutomorphism("does not commute with sigma1")

    lengths = {len(c) for c in perm_cycles(p)}
    order = 1
    for ln in lengths:
        order = order * ln // _gcd(order, ln)
    if order != d:
        raise WrongOrder(f"order is {order}, expected {d}")
    if d >= 2:
        if lengths != {d}:
            raise NotFree("action on darts is not free")
        face_perm = [cmap.face_of[p[f[0]]] for f in cmap.faces]
        if any(len(c) != d for c in perm_cycles(face_perm)):
            raise NotFree("action on faces is not free")
    return MapAutomorphism(p, d)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# dual graph and simple cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Dual of a triangulation: one node per face, one link per edge."""

    n_nodes: int
    # links[k] = (node_a, node_b); index k equals the undirected edge index
    links: tuple[tuple[int, int], ...]

    def incident(self, node: int) -> list[int]:
        return [k for k, (a, b) in enumerate(self.links) if a == node or b == node]

    def other_end(self, link: int, node: int) -> int:
        a, b = self.links[link]
        if a == node:
            return b
        if b == node:
            return a
        raise ValueError("node not on link")


def dual_graph(cmap: CombinatorialMap) -> DualGraph:
    links = tuple(
        (cmap.face_of[e], cmap.face_of[f]) for (e, f) in cmap.edges
    )
    return DualGraph(cmap.n_faces, links)


@dataclass(frozen=True)
class DualCycle:
    """Simple cycle in a dual graph, with its cyclic node/link order.

    ``links[i]`` joins ``nodes[i]`` to ``nodes[(i+1) % len]``; nodes are
    pairwise distinct.
    """

    nodes: tuple[int, ...]
    links: tuple[int, ...]

    @property
    def link_set(self) -> frozenset:
        return frozenset(self.links)

    def __len__(self):
        return len(self.links)


def simple_cycles(dual: DualGraph, max_count: int = 10 ** 6):
    """All simple cycles (node-repetition-free), up to ``max_count``.

    Returns (cycles, truncated).  Enumeration is exhaustive when the flag is
    False.  Cycles are deduplicated by their link set.
    """
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(dual.n_nodes)]
    for k, (a, b) in enumerate(dual.links):
        adjacency[a].append((k, b))
        if a != b:
            adjacency[b].append((k, a))

    found: dict[frozenset, DualCycle] = {}
    truncated = False

    # 1-cycles: self-links
    for k, (a, b) in enumerate(dual.links):
        if a == b:
            found[frozenset([k])] = DualCycle((a,), (k,))

    def dfs(start, node, nodes, links, used_links):
        nonlocal truncated
        if truncated:
            return
        for k, nb in adjacency[node]:
            if k in used_links or nb == node:
                continue
            if nb == start and len(nodes) >= 2:
                key = frozenset(links + [k])
                if key not in found:
                    found[key] = DualCycle(tuple(nodes), tuple(links + [k]))
                    if len(found) > max_count:
                        truncated = True
                        return
                continue
            if nb in nodes or nb < start:
                continue
            nodes.append(nb)
            links.append(k)
            used_links.add(k)
            dfs(start, nb, nodes, links, used_links)
            nodes.pop()
            links.pop()
            used_links.remove(k)

    for start in range(dual.n_nodes):
        dfs(start, start, [start], [], set())
        if truncated:
            break

    # canonical deterministic order
    cycles = sorted(found.values(), key=lambda c: (len(c), c.links))
    return cycles, truncated


def cycles_through_link(dual: DualGraph, link: int, max_count: int = 10 ** 5):
    """Simple cycles whose link set contains the given link."""
    cycles, truncated = simple_cycles(dual, max_count)
    return [c for c in cycles if link in c.link_set], truncated
