"""
Counting and enumerating the letter-restricted gaussoid classes.

The search assigns squares one at a time in a fixed order and keeps, for
every 3-face, the partial pattern seen so far. A precomputed table tells for
each partial pattern whether it still extends to an allowed pattern and
which of the open squares are forced. Subtrees below a fixed prefix of
decisions are independent, which is how ``count_class`` parallelizes.
"""

import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from gaussoids.ci import CIStructure
from gaussoids.classify import ClassSpec, MinorClass, allowed_patterns
from gaussoids.common import bits_of, get_count_cache
from gaussoids.config import (get_limit, get_prefix_depth, get_workers,
                              show_progress)
from gaussoids.cube import cube_table, square_index
from gaussoids.errors import ResourceGuardError

Decision = Tuple[int, int]


class CubePatternTable:
    """
    Allowed 6-bit patterns of a class and their partial-assignment closure.
    A partial assignment is a pair (known, ones) of 6-bit masks with
    ``ones`` a subset of ``known``.
    """

    def __init__(self, spec: ClassSpec):
        self.spec = spec
        self.allowed = allowed_patterns(spec)
        self._entries: List[Optional[Tuple[int, int]]] = [None] * 4096
        for known in range(64):
            for ones in range(64):
                if ones & ~known:
                    continue
                matching = [p for p in self.allowed if p & known == ones]
                if not matching:
                    continue
                forced_one = forced_zero = 63 & ~known
                for p in matching:
                    forced_one &= p
                    forced_zero &= ~p
                self._entries[known << 6 | ones] = (forced_one, forced_zero)

    def lookup(self, known: int, ones: int) -> Optional[Tuple[int, int]]:
        """(forced to one, forced to zero) masks, or None if nothing extends."""
        return self._entries[known << 6 | ones]

    def extendable(self, known: int, ones: int) -> bool:
        return self._entries[known << 6 | ones] is not None

    def forbidden(self) -> List[int]:
        return [p for p in range(64) if p not in self.allowed]


def search_order(n: int) -> List[int]:
    """Squares sorted by the largest element of ijK, then canonical index."""
    squares = square_index(n).squares
    return sorted(range(len(squares)),
                  key=lambda v: ((squares[v].star | squares[v].one).bit_length(), v))


class ClassSearch:
    """Depth-first search with unit propagation over the squares of the n-cube."""

    def __init__(self, n: int, spec: ClassSpec, order: Optional[Sequence[int]] = None):
        self.n = n
        self.spec = spec
        self.table = CubePatternTable(spec)
        self.num_vars = len(square_index(n))
        self.cube_squares = [squares for _, squares in cube_table(n)]
        self.var_cubes: List[List[Tuple[int, int]]] = [[] for _ in range(self.num_vars)]
        for c, squares in enumerate(self.cube_squares):
            for bit, v in enumerate(squares):
                self.var_cubes[v].append((c, bit))
        self.order = list(order) if order is not None else search_order(n)
        self.value = [-1] * self.num_vars
        self.known = [0] * len(self.cube_squares)
        self.ones = [0] * len(self.cube_squares)
        self.trail: List[int] = []
        self.nodes = 0
        if sys.getrecursionlimit() < self.num_vars + 1000:
            sys.setrecursionlimit(self.num_vars + 1000)

    def reset(self) -> None:
        self.undo(0)
        self.nodes = 0

    def assign(self, var: int, val: int) -> bool:
        """Sets ``var`` and everything it forces; False on a conflict."""
        queue = [(var, val)]
        while queue:
            v, b = queue.pop()
            current = self.value[v]
            if current != -1:
                if current != b:
                    return False
                continue
            self.value[v] = b
            self.trail.append(v)
            for c, bit in self.var_cubes[v]:
                known = self.known[c] | 1 << bit
                ones = self.ones[c] | b << bit
                self.known[c] = known
                self.ones[c] = ones
                entry = self.table.lookup(known, ones)
                if entry is None:
                    return False
                forced_one, forced_zero = entry
                if forced_one or forced_zero:
                    squares = self.cube_squares[c]
                    queue.extend((squares[x], 1) for x in bits_of(forced_one))
                    queue.extend((squares[x], 0) for x in bits_of(forced_zero))
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            v = self.trail.pop()
            self.value[v] = -1
            for c, bit in self.var_cubes[v]:
                clear = ~(1 << bit)
                self.known[c] &= clear
                self.ones[c] &= clear

    def replay(self, decisions: Iterable[Decision]) -> bool:
        return all(self.assign(v, b) for v, b in decisions)

    def _next_position(self, pos: int) -> int:
        order, value = self.order, self.value
        while pos < len(order) and value[order[pos]] != -1:
            pos += 1
        return pos

    def count_from(self, pos: int = 0) -> int:
        self.nodes += 1
        pos = self._next_position(pos)
        if pos == len(self.order):
            return 1
        v = self.order[pos]
        total = 0
        for b in (0, 1):
            mark = len(self.trail)
            if self.assign(v, b):
                total += self.count_from(pos + 1)
            self.undo(mark)
        return total

    def iter_from(self, pos: int = 0) -> Iterator[int]:
        """
        Members as bitmaps, lexicographically along ``self.order``. Forced
        squares only depend on earlier decisions, so propagation keeps the order.
        """
        self.nodes += 1
        pos = self._next_position(pos)
        if pos == len(self.order):
            yield sum(1 << v for v, b in enumerate(self.value) if b == 1)
            return
        v = self.order[pos]
        for b in (0, 1):
            mark = len(self.trail)
            if self.assign(v, b):
                yield from self.iter_from(pos + 1)
            self.undo(mark)

    def prefixes(self, depth: int) -> List[List[Decision]]:
        """Consistent decision sequences of length ``depth`` (shorter at complete leaves)."""
        result: List[List[Decision]] = []
        path: List[Decision] = []

        def descend(pos: int) -> None:
            self.nodes += 1
            pos = self._next_position(pos)
            if len(path) == depth or pos == len(self.order):
                result.append(list(path))
                return
            v = self.order[pos]
            for b in (0, 1):
                mark = len(self.trail)
                if self.assign(v, b):
                    path.append((v, b))
                    descend(pos + 1)
                    path.pop()
                self.undo(mark)

        descend(0)
        return result


@lru_cache(maxsize=4)
def _worker_search(n: int, spec_text: str) -> ClassSearch:
    return ClassSearch(n, ClassSpec.parse(spec_text))


def _count_subtree(task: Tuple[int, str, Sequence[Decision]]) -> Tuple[int, int]:
    n, spec_text, decisions = task
    search = _worker_search(n, spec_text)
    search.reset()
    count = search.count_from(0) if search.replay(decisions) else 0
    nodes = search.nodes
    search.reset()
    return count, nodes


@dataclass
class CountResult:
    n: int
    spec: ClassSpec
    count: int
    nodes_explored: int
    wall_seconds: float
    cached: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "spec": str(self.spec),
            "count": self.count,
            "nodes_explored": self.nodes_explored,
            "wall_seconds": round(self.wall_seconds, 6),
        }


def _require_cubes(n: int) -> None:
    if n < 3:
        raise ValueError(f"classes are defined through 3-minors, n={n} has none")


def check_search_guard(n: int, spec: ClassSpec, unsafe: bool = False) -> None:
    _require_cubes(n)
    if unsafe:
        return
    max_n = get_limit("max_search_n")
    if n > max_n:
        raise ResourceGuardError(f"n={n} exceeds the search limit {max_n} (use --unsafe)")
    fast = {MinorClass.E, MinorClass.L, MinorClass.U} <= spec.allowed
    max_fast = get_limit("max_fast_growing_n")
    if fast and n > max_fast:
        raise ResourceGuardError(
            f"class {spec} grows double exponentially, n={n} exceeds {max_fast} (use --unsafe)")


def count_class(n: int, spec: ClassSpec, workers: Optional[int] = None,
                unsafe: bool = False, cache: bool = False) -> CountResult:
    """Exact size of the class; the result does not depend on ``workers``."""
    check_search_guard(n, spec, unsafe)
    count_cache = get_count_cache() if cache else None
    if count_cache is not None:
        hit = count_cache.lookup(n, str(spec))
        if hit is not None:
            count_cache.close()
            count, nodes, seconds = hit
            return CountResult(n, spec, count, nodes, seconds, cached=True)

    workers = workers or get_workers()
    start = time.perf_counter()
    search = ClassSearch(n, spec)
    if workers <= 1:
        count = search.count_from(0)
        nodes = search.nodes
    else:
        count, nodes = _count_parallel(search, workers)
    elapsed = time.perf_counter() - start
    logging.debug("count_class(%d, %s) = %d, %d nodes, %.3fs, %d workers",
                  n, spec, count, nodes, elapsed, workers)

    if count_cache is not None:
        count_cache.store(n, str(spec), count, nodes, elapsed)
        count_cache.close()
    return CountResult(n, spec, count, nodes, elapsed)


def _count_parallel(search: ClassSearch, workers: int) -> Tuple[int, int]:
    prefixes = search.prefixes(get_prefix_depth())
    nodes = search.nodes
    tasks = [(search.n, str(search.spec), prefix) for prefix in prefixes]
    logging.debug("Split search into %d subtrees for %d workers", len(tasks), workers)
    count = 0
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_count_subtree, task) for task in tasks]
        for future in tqdm(as_completed(futures), total=len(futures),
                           desc=f"count {search.spec} n={search.n}",
                           disable=not show_progress()):
            sub_count, sub_nodes = future.result()
            count += sub_count
            nodes += sub_nodes
    return count, nodes


def enumerate_class(n: int, spec: ClassSpec, limit: Optional[int] = None,
                    unsafe: bool = False) -> List[CIStructure]:
    """
    Members of the class in ascending bitmap order. The search stops after
    ``limit`` members, and the result cap applies only to what is produced.
    """
    check_search_guard(n, spec, unsafe)
    if limit is not None and limit < 0:
        raise ValueError(f"limit must be non-negative, got {limit}")
    cap = get_limit("max_enumerate_results") if not unsafe else sys.maxsize
    wanted = cap + 1 if limit is None else min(limit, cap + 1)
    # highest square first, so lexicographic order is ascending bitmap order
    search = ClassSearch(n, spec, order=range(len(square_index(n)) - 1, -1, -1))
    found = list(islice(search.iter_from(0), wanted))
    if len(found) > cap:
        raise ResourceGuardError(
            f"more than {cap} structures in class {spec} at n={n} (use --limit or --unsafe)")
    logging.debug("enumerate_class(%d, %s): %d structures, %d nodes",
                  n, spec, len(found), search.nodes)
    return [CIStructure(n, bits) for bits in found]


def to_cnf(n: int, spec: ClassSpec) -> str:
    """
    DIMACS encoding: variable v is canonical square index v-1; every 3-face
    gets one clause per forbidden pattern, in face order and ascending
    pattern order.
    """
    _require_cubes(n)
    table = CubePatternTable(spec)
    forbidden = table.forbidden()
    cubes = cube_table(n)
    lines = [
        f"c spec={spec or '-'} n={n} varmap=canonical",
        f"p cnf {len(square_index(n))} {len(cubes) * len(forbidden)}",
    ]
    for _, squares in cubes:
        for pattern in forbidden:
            literals = [-(v + 1) if pattern >> bit & 1 else v + 1 for bit, v in enumerate(squares)]
            lines.append(" ".join(str(lit) for lit in literals) + " 0")
    return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> Tuple[int, List[Tuple[int, ...]]]:
    num_vars = 0
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            num_vars = int(line.split()[2])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    return num_vars, clauses


def _simplify(clauses: List[Tuple[int, ...]], lit: int) -> Optional[List[Tuple[int, ...]]]:
    result = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            reduced = tuple(x for x in clause if x != -lit)
            if not reduced:
                return None
            result.append(reduced)
        else:
            result.append(clause)
    return result


def count_models(num_vars: int, clauses: List[Tuple[int, ...]]) -> int:
    """Model count by DPLL with unit propagation; unconstrained variables count twice."""

    def count(clauses: List[Tuple[int, ...]], free: int) -> int:
        if not clauses:
            return 1 << free
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is not None:
            reduced = _simplify(clauses, unit)
            return 0 if reduced is None else count(reduced, free - 1)
        var = abs(clauses[0][0])
        total = 0
        for lit in (var, -var):
            reduced = _simplify(clauses, lit)
            if reduced is not None:
                total += count(reduced, free - 1)
        return total

    mentioned = {abs(lit) for clause in clauses for lit in clause}
    return count(clauses, len(mentioned)) << (num_vars - len(mentioned))


def brute_force_count(n: int, spec: ClassSpec, chunk_bits: int = 20) -> int:
    """Filters all 2^|A_n| subsets with numpy; only for tiny n."""
    _require_cubes(n)
    max_n = get_limit("max_brute_force_n")
    if n > max_n:
        raise ResourceGuardError(f"brute force over subsets needs n <= {max_n}, got {n}")
    num_vars = len(square_index(n))
    ok_pattern = np.zeros(64, dtype=bool)
    ok_pattern[list(allowed_patterns(spec))] = True
    cubes = cube_table(n)
    total = 1 << num_vars
    step = 1 << chunk_bits
    count = 0
    for start in range(0, total, step):
        subsets = np.arange(start, min(start + step, total), dtype=np.int64)
        ok = np.ones(len(subsets), dtype=bool)
        for _, squares in cubes:
            pattern = np.zeros(len(subsets), dtype=np.int64)
            for bit, v in enumerate(squares):
                pattern |= ((subsets >> v) & 1) << bit
            ok &= ok_pattern[pattern]
        count += int(np.count_nonzero(ok))
    logging.debug("brute_force_count(%d, %s) = %d", n, spec, count)
    return count
