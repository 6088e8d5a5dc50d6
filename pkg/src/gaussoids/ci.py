"""
CI structures as sets of squares of the n-cube.

A :class:`CIStructure` is a bitmap over the canonical square index of its
ambient cube (see :class:`gaussoids.cube.SquareIndex`). Minors computed by
:func:`restrict`, :func:`contract`, :func:`marginalize`, :func:`condition`
and :func:`minor` live on a smaller ground set which is relabeled to an
initial segment; the original 0-based positions are kept in ``labels``.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import (FrozenSet, Iterable, Iterator, List, Optional, Sequence,
                    Tuple, Union)

from gaussoids.common import bits_of, compress_bits, expand_bits, mask_of
from gaussoids.config import get_limit
from gaussoids.cube import (Face, Square, cube_table, enumerate_faces,
                            face_parse, square_index, unproject)
from gaussoids.errors import (DimensionMismatchError, ResourceGuardError,
                              StructureParseError)

SquareLike = Union[Face, Square, str]

# opposite pairs of squares of a 3-cube in local bit order
OPPOSITE_PAIRS = (0b000011, 0b001100, 0b110000)
FULL_PATTERN = 0b111111


@dataclass(frozen=True)
class CIStructure:
    n: int
    bits: int = 0
    labels: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> len(square_index(self.n)):
            raise ValueError(f"bitmap exceeds the squares of the {self.n}-cube")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("one label per ground set element required")

    @classmethod
    def empty(cls, n: int) -> "CIStructure":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "CIStructure":
        return cls(n, (1 << len(square_index(n))) - 1)

    @classmethod
    def from_squares(cls, n: int, squares: Iterable[SquareLike]) -> "CIStructure":
        """Squares may be faces, :class:`Square` objects or literals like ``"13|24"``."""
        index = square_index(n)
        bits = 0
        for s in squares:
            bits |= 1 << index.index_of(_as_face(s, n))
        return cls(n, bits)

    @property
    def ground_labels(self) -> Tuple[int, ...]:
        """0-based positions of the ground set in the structure this one came from."""
        return self.labels if self.labels is not None else tuple(range(self.n))

    def squares(self) -> List[Face]:
        table = square_index(self.n).squares
        return [table[idx] for idx in bits_of(self.bits)]

    def __contains__(self, s: SquareLike) -> bool:
        idx = square_index(self.n).index_of(_as_face(s, self.n))
        return bool(self.bits >> idx & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[Face]:
        return iter(self.squares())

    def __or__(self, other: "CIStructure") -> "CIStructure":
        _check_same_n(self, other)
        return CIStructure(self.n, self.bits | other.bits)

    def __and__(self, other: "CIStructure") -> "CIStructure":
        _check_same_n(self, other)
        return CIStructure(self.n, self.bits & other.bits)

    def __str__(self) -> str:
        inner = ", ".join(f"({Square.from_face(f)})" for f in self.squares())
        return f"{{{inner}}} (n={self.n})"


def _as_face(s: SquareLike, n: int) -> Face:
    if isinstance(s, Square):
        return s.face
    if isinstance(s, str):
        text = s.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        if "|" in text and "," not in text.split("|")[0]:
            # compact symbol "13|24" with one-digit labels
            left, _, right = text.partition("|")
            text = ",".join(left) + "|" + ",".join(right)
        return face_parse(text, n)
    return s


def _check_same_n(A: CIStructure, B: CIStructure) -> None:
    if A.n != B.n:
        raise DimensionMismatchError(f"structures on {A.n} and {B.n} elements")


def structure(n: int, *squares: SquareLike) -> CIStructure:
    """Shorthand: ``structure(4, "13|24", "24|13")``."""
    return CIStructure.from_squares(n, squares)


# --- Text format ---------------------------------------------------------

def parse_structure(text: str) -> CIStructure:
    """
    Reads the text format: ``n=<int>`` then one ``i,j|k1,k2`` per line,
    ``#`` comment lines ignored.
    """
    n = None
    squares = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise StructureParseError(f"line {lineno}: expected header 'n=<int>'")
            try:
                n = int(line[2:])
            except ValueError as e:
                raise StructureParseError(f"line {lineno}: invalid dimension {line!r}") from e
            if n < 0:
                raise StructureParseError(f"line {lineno}: negative dimension {n}")
            if n > get_limit("max_input_n"):
                raise ResourceGuardError(
                    f"n={n} exceeds the input limit {get_limit('max_input_n')}")
            continue
        try:
            face = face_parse(line, n)
        except ValueError as e:
            raise StructureParseError(f"line {lineno}: {e}") from e
        if face.dim != 2:
            raise StructureParseError(f"line {lineno}: {line!r} is not a square")
        squares.append(face)
    if n is None:
        raise StructureParseError("missing header 'n=<int>'")
    return CIStructure.from_squares(n, squares)


def format_structure(A: CIStructure, comments: Sequence[str] = ()) -> str:
    lines = [f"n={A.n}"]
    lines.extend(f"# {c}" for c in comments)
    lines.extend(str(Square.from_face(f)) for f in A.squares())
    return "\n".join(lines) + "\n"


# --- Gaussoid checks -----------------------------------------------------

AXIOMS = ("G1", "G2", "G3", "G4")


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    i: int
    j: int
    k: int
    L: FrozenSet[int]

    def __str__(self) -> str:
        conditioning = ",".join(str(p + 1) for p in sorted(self.L))
        return f"({self.axiom}) i={self.i + 1} j={self.j + 1} k={self.k + 1} L={{{conditioning}}}"


def axiom_violation(A: CIStructure) -> Optional[AxiomViolation]:
    """
    First violated gaussoid axiom in (i, j, k, L) order, L ordered by its
    bitmask, or None if A is a gaussoid.
    """
    n = A.n
    index = square_index(n).index
    bits = A.bits

    def has(x: int, y: int, K: int) -> bool:
        return bool(bits >> index[(1 << x | 1 << y, K)] & 1)

    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3:
                    continue
                rest = [p for p in range(n) if p not in (i, j, k)]
                for t in range(1 << len(rest)):
                    L = expand_bits(t, rest)
                    ij_L, ik_L = has(i, j, L), has(i, k, L)
                    ij_kL, ik_jL = has(i, j, L | 1 << k), has(i, k, L | 1 << j)
                    checks = (
                        not (ij_L and ik_jL) or (ik_L and ij_kL),
                        not (ij_kL and ik_jL) or (ij_L and ik_L),
                        not (ij_L and ik_L) or (ij_kL and ik_jL),
                        not (ij_L and ij_kL) or (ik_L or has(j, k, L)),
                    )
                    for axiom, ok in zip(AXIOMS, checks):
                        if not ok:
                            return AxiomViolation(axiom, i, j, k, frozenset(bits_of(L)))
    return None


def is_gaussoid_axioms(A: CIStructure) -> bool:
    return axiom_violation(A) is None


@lru_cache(maxsize=1)
def three_gaussoid_patterns() -> FrozenSet[int]:
    """The eleven 3-gaussoids as 6-bit patterns, derived from the axioms."""
    patterns = frozenset(p for p in range(64) if is_gaussoid_axioms(CIStructure(3, p)))
    logging.debug("3-gaussoid census: %s", sorted(patterns))
    return patterns


def cube_patterns(A: CIStructure) -> Iterator[Tuple[Face, int]]:
    """Yields every 3-face of the ambient cube with the pattern of A in it."""
    bits = A.bits
    for cube, squares in cube_table(A.n):
        pattern = 0
        for bit, idx in enumerate(squares):
            if bits >> idx & 1:
                pattern |= 1 << bit
        yield cube, pattern


def is_gaussoid(A: CIStructure) -> bool:
    allowed = three_gaussoid_patterns()
    return all(pattern in allowed for _, pattern in cube_patterns(A))


def _belt_axioms_hold(pattern: int) -> bool:
    for t, pair in enumerate(OPPOSITE_PAIRS):
        if pattern & pair == pair:
            others = [FULL_PATTERN & ~OPPOSITE_PAIRS[u] for u in range(3) if u != t]
            if not any(pattern & belt == belt for belt in others):
                return False
    present = list(bits_of(pattern))
    for a_pos, x in enumerate(present):
        for y in present[a_pos + 1:]:
            pair_x, pair_y = x // 2, y // 2
            if pair_x == pair_y:
                continue
            missing = 3 - pair_x - pair_y
            belt = FULL_PATTERN & ~OPPOSITE_PAIRS[missing]
            if pattern & belt != belt:
                return False
    return True


def is_gaussoid_belts(A: CIStructure) -> bool:
    """Knee/belt definition: knees extend to their belt, opposite pairs to some belt."""
    return all(_belt_axioms_hold(pattern) for _, pattern in cube_patterns(A))


# --- Minors --------------------------------------------------------------

def _relabeled(A: CIStructure, support: List[int], pairs: Iterable[Tuple[int, int]]) -> CIStructure:
    m = len(support)
    index = square_index(m).index
    bits = 0
    for star, one in pairs:
        bits |= 1 << index[(compress_bits(star, support), compress_bits(one, support))]
    labels = tuple(A.ground_labels[p] for p in support)
    return CIStructure(m, bits, labels)


def _members(A: CIStructure) -> Iterator[Tuple[int, int]]:
    for f in A.squares():
        yield f.star, f.one


def _full(n: int) -> int:
    return (1 << n) - 1


def restrict(A: CIStructure, L: Iterable[int]) -> CIStructure:
    """restr_L A = A ∩ A_L, relabeled onto L."""
    L_mask = mask_of(L)
    support = list(bits_of(L_mask))
    return _relabeled(A, support, ((s, o) for s, o in _members(A) if (s | o) & ~L_mask == 0))


def contract(A: CIStructure, L: Iterable[int]) -> CIStructure:
    """contr_L A = {(ij|K) ∈ A_L : (ij|K L̄) ∈ A}, relabeled onto L."""
    L_mask = mask_of(L)
    outside = _full(A.n) & ~L_mask
    support = list(bits_of(L_mask))
    return _relabeled(A, support, (
        (s, o & L_mask) for s, o in _members(A) if s & ~L_mask == 0 and outside & ~o == 0))


def marginalize(A: CIStructure, L: Iterable[int]) -> CIStructure:
    """marg_L A = {(ij|K) ∈ A : L ∩ ijK = ∅}, relabeled onto the complement of L."""
    L_mask = mask_of(L)
    support = list(bits_of(_full(A.n) & ~L_mask))
    return _relabeled(A, support, ((s, o) for s, o in _members(A) if (s | o) & L_mask == 0))


def condition(A: CIStructure, L: Iterable[int]) -> CIStructure:
    """cond_L A = {(ij|K) ∈ A_L̄ : (ij|KL) ∈ A}, relabeled onto the complement of L."""
    L_mask = mask_of(L)
    support = list(bits_of(_full(A.n) & ~L_mask))
    return _relabeled(A, support, (
        (s, o & ~L_mask) for s, o in _members(A) if s & L_mask == 0 and L_mask & ~o == 0))


def minor(A: CIStructure, frame: Face) -> CIStructure:
    """The (L|M)-minor: project the members of A inside ``frame`` onto the L-cube."""
    if frame.n != A.n:
        raise DimensionMismatchError(f"frame {frame} does not live in the {A.n}-cube")
    support = list(bits_of(frame.star))
    fixed = ~frame.star
    return _relabeled(A, support, (
        (s, o) for s, o in _members(A)
        if s & fixed == 0 and o & fixed == frame.one & fixed))


def embed(A: CIStructure, frame: Face) -> CIStructure:
    """Preimage of A under the projection onto ``frame``."""
    if A.n != frame.dim:
        raise DimensionMismatchError(
            f"structure on {A.n} elements cannot be embedded into the {frame.dim}-face {frame}")
    index = square_index(frame.n)
    bits = 0
    for f in A.squares():
        bits |= 1 << index.index_of(unproject(frame, f))
    return CIStructure(frame.n, bits)


def all_minors(A: CIStructure, k: int) -> List[Tuple[Face, CIStructure]]:
    return [(frame, minor(A, frame)) for frame in enumerate_faces(A.n, k)]


# --- Duality and symmetry ------------------------------------------------

def dual(A: CIStructure) -> CIStructure:
    """(ij|K) ↦ (ij|[n] \\ ijK)."""
    full = _full(A.n)
    index = square_index(A.n).index
    bits = 0
    for s, o in _members(A):
        bits |= 1 << index[(s, full & ~s & ~o)]
    return CIStructure(A.n, bits, A.labels)


@dataclass(frozen=True)
class SignedPermutation:
    """
    Element of the hyperoctahedral group B_n: coordinate ``p`` is first
    reflected if ``p`` is in ``flips`` and then moved to ``perm[p]``.
    """
    perm: Tuple[int, ...]
    flips: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")
        if any(not 0 <= p < len(self.perm) for p in self.flips):
            raise ValueError("flip set outside the ground set")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply_face(self, face: Face) -> Face:
        if face.n != self.n:
            raise DimensionMismatchError(f"symmetry of the {self.n}-cube applied to {face}")
        star = one = 0
        for p in range(face.n):
            target = 1 << self.perm[p]
            if face.star >> p & 1:
                star |= target
            elif (face.one >> p & 1) ^ (p in self.flips):
                one |= target
        return Face(face.n, star, one)


def apply_symmetry(A: CIStructure, g: SignedPermutation) -> CIStructure:
    index = square_index(A.n)
    bits = 0
    for f in A.squares():
        bits |= 1 << index.index_of(g.apply_face(f))
    return CIStructure(A.n, bits)


def symmetric_group(n: int) -> Iterator[SignedPermutation]:
    for perm in permutations(range(n)):
        yield SignedPermutation(perm)


def hyperoctahedral_group(n: int) -> Iterator[SignedPermutation]:
    for perm in permutations(range(n)):
        for t in range(1 << n):
            yield SignedPermutation(perm, frozenset(bits_of(t)))


def minor_pattern(A: CIStructure, cube: Face) -> int:
    """6-bit pattern of the minor of A at the 3-face ``cube``."""
    if cube.dim != 3:
        raise DimensionMismatchError(f"{cube} is not a 3-face")
    return minor(A, cube).bits
