"""
Face-lattice arithmetic for the n-cube.

A face is stored as two bitmasks over the 0-based ground set: ``star`` (the
extension set I) and ``one`` (the location set K). String notation writes
one letter per coordinate (``0``, ``1`` or ``*``); set notation writes the
1-based sets as ``"1,3|2,4"``.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from gaussoids.common import (bits_of, compress_bits, expand_bits,
                              format_label_list, mask_of, parse_label_list,
                              popcount)
from gaussoids.errors import DimensionMismatchError, FaceParseError

ZERO = "0"
ONE = "1"
STAR = "*"

# ZERO < ONE < STAR in the documented enumeration order
_RANK = str.maketrans({ZERO: "0", ONE: "1", STAR: "2"})


@dataclass(frozen=True)
class Face:
    n: int
    star: int
    one: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative dimension {self.n}")
        full = (1 << self.n) - 1
        if self.star & ~full or self.one & ~full:
            raise ValueError(f"face masks exceed ground set of size {self.n}")
        if self.star & self.one:
            raise ValueError("extension and location sets must be disjoint")

    @classmethod
    def from_sets(cls, n: int, I: Iterable[int], K: Iterable[int] = ()) -> "Face":
        """Builds a face from 0-based extension and location sets."""
        return cls(n, mask_of(I), mask_of(K))

    @property
    def dim(self) -> int:
        return popcount(self.star)

    @property
    def I(self) -> FrozenSet[int]:  # pylint: disable=invalid-name
        return frozenset(bits_of(self.star))

    @property
    def K(self) -> FrozenSet[int]:  # pylint: disable=invalid-name
        return frozenset(bits_of(self.one))

    @property
    def letters(self) -> str:
        return "".join(
            STAR if self.star >> p & 1 else ONE if self.one >> p & 1 else ZERO
            for p in range(self.n))

    def sort_key(self) -> str:
        return self.letters.translate(_RANK)

    def set_notation(self) -> str:
        return f"{format_label_list(bits_of(self.star))}|{format_label_list(bits_of(self.one))}"

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class Square:
    """The CI symbol (ij|K) with 0-based i < j and K disjoint from ij."""
    n: int
    i: int
    j: int
    K: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if not 0 <= self.i < self.j < self.n:
            raise ValueError(f"invalid square indices {self.i}, {self.j} for n={self.n}")
        if {self.i, self.j} & set(self.K) or any(not 0 <= k < self.n for k in self.K):
            raise ValueError("conditioning set must avoid i, j and lie in the ground set")

    @property
    def face(self) -> Face:
        return Face(self.n, 1 << self.i | 1 << self.j, mask_of(self.K))

    @classmethod
    def from_face(cls, face: Face) -> "Square":
        if face.dim != 2:
            raise DimensionMismatchError(f"{face} is not a square")
        i, j = bits_of(face.star)
        return cls(face.n, i, j, face.K)

    @classmethod
    def parse(cls, text: str, n: int) -> "Square":
        return cls.from_face(face_parse(text, n))

    def __str__(self) -> str:
        return f"{self.i + 1},{self.j + 1}|{format_label_list(self.K)}"


def face_parse(s: str, n: Optional[int] = None) -> Face:
    """
    Parses string notation (``"*1*1"``) or set notation (``"1,3|2,4"``).
    Set notation needs the ambient dimension ``n``.
    """
    text = s.strip()
    if not text:
        raise FaceParseError("empty face literal")
    if "|" in text:
        if n is None:
            raise FaceParseError(f"set notation {text!r} needs an ambient dimension")
        left, _, right = text.partition("|")
        try:
            I, K = parse_label_list(left), parse_label_list(right)
        except ValueError as e:
            raise FaceParseError(f"invalid set notation {text!r}: {e}") from e
        if any(p >= n for p in I + K):
            raise FaceParseError(f"label out of range in {text!r} for n={n}")
        if set(I) & set(K):
            raise FaceParseError(f"extension and location sets overlap in {text!r}")
        return Face.from_sets(n, I, K)

    star = one = 0
    for p, letter in enumerate(text):
        if letter == STAR:
            star |= 1 << p
        elif letter == ONE:
            one |= 1 << p
        elif letter != ZERO:
            raise FaceParseError(f"invalid character {letter!r} in face {text!r}")
    if n is not None and n != len(text):
        raise FaceParseError(f"face {text!r} has length {len(text)}, expected {n}")
    return Face(len(text), star, one)


def face_format(face: Face, notation: str = "string") -> str:
    if notation == "set":
        return face.set_notation()
    return face.letters


def count_faces(n: int, k: int) -> int:
    """|F_k^n| = C(n,k) 2^(n-k)."""
    if not 0 <= k <= n:
        return 0
    return comb(n, k) << (n - k)


@lru_cache(maxsize=64)
def enumerate_faces(n: int, k: int) -> Tuple[Face, ...]:
    """
    All k-faces of the n-cube, lexicographic on letter strings with
    ZERO < ONE < STAR.
    """
    if not 0 <= k <= n:
        raise DimensionMismatchError(f"face dimension {k} not in [0, {n}]")
    faces: List[Face] = []

    def extend(pos: int, star: int, one: int, remaining: int) -> None:
        if pos == n:
            faces.append(Face(n, star, one))
            return
        if remaining < n - pos:
            extend(pos + 1, star, one, remaining)
            extend(pos + 1, star, one | 1 << pos, remaining)
        if remaining > 0:
            extend(pos + 1, star | 1 << pos, one, remaining - 1)

    extend(0, 0, 0, k)
    logging.debug("Enumerated %d faces of dimension %d in the %d-cube", len(faces), k, n)
    return tuple(faces)


def _check_same_n(F: Face, G: Face) -> None:
    if F.n != G.n:
        raise DimensionMismatchError(f"faces live in cubes of dimension {F.n} and {G.n}")


def contains(F: Face, G: Face) -> bool:
    """True iff G is a face of F."""
    _check_same_n(F, G)
    if G.star & ~F.star:
        return False
    return G.one & ~F.star == F.one


def intersect(F: Face, G: Face) -> Optional[Face]:
    """Meet in the face lattice; ``None`` stands for the empty face."""
    _check_same_n(F, G)
    fixed_both = ~F.star & ~G.star
    if (F.one ^ G.one) & fixed_both:
        return None
    star = F.star & G.star
    return Face(F.n, star, (F.one | G.one) & ~star)


def opposite(F: Face) -> Face:
    """The parallel face with every fixed coordinate flipped."""
    full = (1 << F.n) - 1
    return Face(F.n, F.star, full & ~F.star & ~F.one)


def project(frame: Face, F: Face) -> Face:
    """Deletes all coordinates outside the extension set of ``frame``."""
    if not contains(frame, F):
        raise DimensionMismatchError(f"{F} is not contained in {frame}")
    support = list(bits_of(frame.star))
    return Face(len(support), compress_bits(F.star, support), compress_bits(F.one, support))


def unproject(frame: Face, F: Face) -> Face:
    """Re-inserts the fixed letters of ``frame`` around a face of the L-cube."""
    support = list(bits_of(frame.star))
    if F.n != len(support):
        raise DimensionMismatchError(
            f"face of the {F.n}-cube cannot be placed in a {len(support)}-dimensional frame")
    return Face(frame.n, expand_bits(F.star, support),
                expand_bits(F.one, support) | frame.one)


def vertices_of(F: Face) -> List[Face]:
    stars = list(bits_of(F.star))
    return [Face(F.n, 0, F.one | expand_bits(t, stars)) for t in range(1 << len(stars))]


def squares_of(F: Face) -> List[Face]:
    if F.dim < 2:
        raise DimensionMismatchError(f"{F} has no squares")
    stars = list(bits_of(F.star))
    result = []
    for a, b in combinations(stars, 2):
        rest = [p for p in stars if p not in (a, b)]
        for t in range(1 << len(rest)):
            result.append(Face(F.n, 1 << a | 1 << b, F.one | expand_bits(t, rest)))
    return result


def cofaces_of_square(s: Face, k: int) -> List[Face]:
    """All k-faces of the ambient cube that contain the square ``s``."""
    if s.dim != 2:
        raise DimensionMismatchError(f"{s} is not a square")
    if not 2 <= k <= s.n:
        raise DimensionMismatchError(f"coface dimension {k} not in [2, {s.n}]")
    fixed = [p for p in range(s.n) if not s.star >> p & 1]
    result = []
    for extra in combinations(fixed, k - 2):
        extra_mask = mask_of(extra)
        result.append(Face(s.n, s.star | extra_mask, s.one & ~extra_mask))
    result.sort(key=Face.sort_key)
    return result


class SquareIndex:
    """
    Canonical numbering of the squares of the n-cube: (i, j) lexicographic,
    then K by its bitmask value over the remaining n-2 coordinates. The
    numbering is the contract for bitmaps and CNF variables.
    """

    def __init__(self, n: int):
        self.n = n
        squares = []
        for i, j in combinations(range(n), 2):
            rest = [p for p in range(n) if p not in (i, j)]
            for t in range(1 << len(rest)):
                squares.append(Face(n, 1 << i | 1 << j, expand_bits(t, rest)))
        self.squares: Tuple[Face, ...] = tuple(squares)
        self.index: Dict[Tuple[int, int], int] = {
            (f.star, f.one): idx for idx, f in enumerate(squares)}

    def __len__(self) -> int:
        return len(self.squares)

    def index_of(self, face: Face) -> int:
        if face.n != self.n:
            raise DimensionMismatchError(f"square of the {face.n}-cube in a {self.n}-cube index")
        try:
            return self.index[(face.star, face.one)]
        except KeyError as e:
            raise DimensionMismatchError(f"{face} is not a square") from e


@lru_cache(maxsize=32)
def square_index(n: int) -> SquareIndex:
    return SquareIndex(n)


@lru_cache(maxsize=32)
def cube_table(n: int) -> Tuple[Tuple[Face, Tuple[int, ...]], ...]:
    """
    Every 3-face (abc|L) of the n-cube with the canonical indices of its six
    squares in local order (ab|L), (ab|cL), (ac|L), (ac|bL), (bc|L), (bc|aL).
    The local order coincides with the canonical numbering of the 3-cube, so
    the six bits form the bitmap of the projected 3-minor.
    """
    if n < 3:
        return ()
    index = square_index(n).index
    table = []
    for cube in enumerate_faces(n, 3):
        a, b, c = bits_of(cube.star)
        L = cube.one
        local = ((a, b, 0), (a, b, 1 << c), (a, c, 0),
                 (a, c, 1 << b), (b, c, 0), (b, c, 1 << a))
        table.append((cube, tuple(index[(1 << x | 1 << y, L | extra)] for x, y, extra in local)))
    return tuple(table)
