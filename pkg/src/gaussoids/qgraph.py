"""
The graphs Q(n,k,p,q) on the k-faces of the n-cube.

Two distinct k-faces are adjacent when some p-face contains q-faces of both,
equivalently when their gap ρ_q is at most p. Adjacency is evaluated on the
fly from masks; only :func:`greedy_coloring` builds an explicit graph.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Dict, Iterator, List, Sequence

import networkx as nx

from gaussoids.common import bits_of, expand_bits, mask_of, popcount
from gaussoids.config import get_limit
from gaussoids.cube import Face, count_faces, enumerate_faces
from gaussoids.errors import DimensionMismatchError, ResourceGuardError


@dataclass(frozen=True)
class QGraphParams:
    n: int
    k: int
    p: int
    q: int

    def __post_init__(self):
        if not self.n >= self.k >= self.p >= self.q >= 0:
            raise ValueError(f"need n >= k >= p >= q >= 0, got {self}")

    def __str__(self) -> str:
        return f"Q({self.n},{self.k},{self.p},{self.q})"


@dataclass(frozen=True)
class GapWitness:
    j: int
    m: int
    rho: int


def gap(D: Face, F: Face, q: int) -> GapWitness:
    if D.n != F.n or D.dim != F.dim:
        raise DimensionMismatchError(f"{D} and {F} are not faces of equal dimension in one cube")
    j = popcount(D.star & F.star)
    m = popcount((D.one ^ F.one) & ~(D.star | F.star))
    return GapWitness(j, m, m + 2 * q - min(q, j))


def adjacent(params: QGraphParams, D: Face, F: Face) -> bool:
    if D == F:
        raise ValueError(f"{params} has no loops, {D} compared with itself")
    return gap(D, F, params.q).rho <= params.p


def _feasible_terms(params: QGraphParams) -> Iterator[tuple]:
    """(j, m) pairs counted by the degree: n-2k+j >= m and p >= ρ_q."""
    n, k, p, q = params.n, params.k, params.p, params.q
    for j in range(max(0, 2 * k - n), k + 1):
        for m in range(0, n - 2 * k + j + 1):
            if p >= m + 2 * q - min(q, j):
                yield j, m


def degree_formula(params: QGraphParams) -> int:
    n, k = params.n, params.k
    total = -1
    for j, m in _feasible_terms(params):
        total += comb(k, j) * 2 ** (k - j) * comb(n - k, k - j) * comb(n - 2 * k + j, m)
    return total


def is_complete(params: QGraphParams) -> bool:
    return params.n + params.q <= params.p + params.k


def vertex_count(params: QGraphParams) -> int:
    return count_faces(params.n, params.k)


def neighbors(params: QGraphParams, D: Face) -> Iterator[Face]:
    """
    Generates the neighbors of D directly: pick the j shared stars, letters
    for the other stars of D, k-j new stars among the fixed coordinates of D,
    and m flips among the coordinates fixed in both.
    """
    if D.n != params.n or D.dim != params.k:
        raise DimensionMismatchError(f"{D} is not a vertex of {params}")
    stars = list(bits_of(D.star))
    fixed = [p for p in range(D.n) if not D.star >> p & 1]
    feasible: Dict[int, List[int]] = {}
    for j, m in _feasible_terms(params):
        feasible.setdefault(j, []).append(m)

    for j, flip_counts in feasible.items():
        for shared in combinations(stars, j):
            shared_mask = mask_of(shared)
            dropped = [p for p in stars if not shared_mask >> p & 1]
            for new in combinations(fixed, params.k - j):
                new_mask = mask_of(new)
                common = [p for p in fixed if not new_mask >> p & 1]
                base_one = D.one & ~new_mask
                for t in range(1 << len(dropped)):
                    letters = expand_bits(t, dropped)
                    for m in flip_counts:
                        for flips in combinations(common, m):
                            F = Face(D.n, shared_mask | new_mask, letters | (base_one ^ mask_of(flips)))
                            if F != D:
                                yield F


def brute_force_neighbors(params: QGraphParams, D: Face) -> List[Face]:
    size = vertex_count(params)
    limit = get_limit("max_brute_force_vertices")
    if size > limit:
        raise ResourceGuardError(f"{params} has {size} vertices, brute force limit is {limit}")
    return [F for F in enumerate_faces(params.n, params.k) if F != D and adjacent(params, D, F)]


def is_independent(params: QGraphParams, faces: Sequence[Face]) -> bool:
    for a, b in combinations(faces, 2):
        if a == b or adjacent(params, a, b):
            return False
    return True


def independent_set(params: QGraphParams) -> List[Face]:
    """
    First-fit greedy in canonical face order: a face is taken unless a
    neighbor was taken before. The result is maximal, so its size is at
    least |F_k^n| / (Δ+1).
    """
    chosen: List[Face] = []
    blocked = set()
    for face in enumerate_faces(params.n, params.k):
        if (face.star, face.one) in blocked:
            continue
        chosen.append(face)
        for F in neighbors(params, face):
            blocked.add((F.star, F.one))
    logging.debug("Greedy independent set in %s: %d of %d vertices",
                  params, len(chosen), vertex_count(params))
    return chosen


def independent_set_lower_bound(params: QGraphParams) -> int:
    return ceil(vertex_count(params) / (degree_formula(params) + 1))


def to_networkx(params: QGraphParams) -> nx.Graph:
    size = vertex_count(params)
    limit = get_limit("max_materialized_vertices")
    if size > limit:
        raise ResourceGuardError(f"{params} has {size} vertices, materialization limit is {limit}")
    faces = enumerate_faces(params.n, params.k)
    position = {(f.star, f.one): idx for idx, f in enumerate(faces)}
    graph = nx.Graph()
    graph.add_nodes_from(range(len(faces)))
    for idx, face in enumerate(faces):
        for F in neighbors(params, face):
            other = position[(F.star, F.one)]
            if other > idx:
                graph.add_edge(idx, other)
    return graph


@dataclass
class ColoringResult:
    colors: Dict[Face, int]
    num_colors: int
    max_degree: int

    @property
    def within_max_degree(self) -> bool:
        """True when the coloring uses at most Δ colors."""
        return self.num_colors <= self.max_degree

    def largest_class(self) -> List[Face]:
        sizes: Dict[int, int] = {}
        for color in self.colors.values():
            sizes[color] = sizes.get(color, 0) + 1
        best = min(sizes, key=lambda c: (-sizes[c], c))
        return sorted((f for f, c in self.colors.items() if c == best), key=Face.sort_key)


def greedy_coloring(params: QGraphParams) -> ColoringResult:
    """Smallest-last greedy coloring of the materialized graph (Δ+1 colors at most)."""
    graph = to_networkx(params)
    faces = enumerate_faces(params.n, params.k)
    coloring = nx.greedy_color(graph, strategy="smallest_last")
    colors = {faces[idx]: color for idx, color in coloring.items()}
    num_colors = max(coloring.values(), default=-1) + 1
    result = ColoringResult(colors, num_colors, degree_formula(params))
    logging.debug("Smallest-last coloring of %s uses %d colors, degree %d",
                  params, num_colors, result.max_degree)
    return result


def clique_construction(n: int) -> List[Face]:
    """The cubes (1ij|∅), pairwise adjacent in Q(n,3,3,2)."""
    if n < 3:
        raise DimensionMismatchError(f"no 3-faces in the {n}-cube")
    return [Face(n, 1 | 1 << i | 1 << j) for i, j in combinations(range(1, n), 2)]


def independence_upper_bound(n: int) -> Fraction:
    """|F_3^n| / C(n-1, 2) bounds the independence number of Q(n,3,3,2)."""
    return Fraction(count_faces(n, 3), len(clique_construction(n)))
