"""
Constructions producing many gaussoids (puzzle lifts, residue classes) or
many non-gaussoids (perturbations), and the counting bounds they give.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, log2
from typing import Dict, List, Optional, Sequence, Tuple

from gaussoids.ci import (CIStructure, embed, is_gaussoid, minor,
                          three_gaussoid_patterns)
from gaussoids.classify import LETTER_ORDER, ClassSpec
from gaussoids.common import fingerprint
from gaussoids.config import get_limit
from gaussoids.cube import Face, count_faces, square_index, squares_of
from gaussoids.enumeration import enumerate_class
from gaussoids.errors import (DimensionMismatchError,
                              FramesNotIndependentError, InvalidSchemeError,
                              NotAGaussoidError)
from gaussoids.qgraph import QGraphParams, independent_set, is_independent

NUM_THREE_GAUSSOIDS = 11


@lru_cache(maxsize=8)
def gaussoid_pieces(k: int) -> Tuple[CIStructure, ...]:
    """All k-gaussoids in bitmap order, the pieces available to a puzzle."""
    return tuple(enumerate_class(k, ClassSpec.of(LETTER_ORDER)))


@dataclass
class PuzzleAssignment:
    frames: Tuple[Face, ...]
    pieces: Dict[Face, CIStructure] = field(default_factory=dict)

    @property
    def k(self) -> Optional[int]:
        return self.frames[0].dim if self.frames else None

    def validate(self) -> None:
        if not self.frames:
            return
        n, k = self.frames[0].n, self.frames[0].dim
        if any(f.n != n or f.dim != k for f in self.frames):
            raise DimensionMismatchError("frames must be k-faces of one cube")
        if k < 3:
            raise DimensionMismatchError(f"puzzle frames need dimension >= 3, got {k}")
        if set(self.pieces) != set(self.frames):
            raise ValueError("every frame needs exactly one piece")
        if not is_independent(QGraphParams(n, k, 3, 2), self.frames):
            raise FramesNotIndependentError(
                f"frames are not independent in Q({n},{k},3,2)")
        for frame, piece in self.pieces.items():
            if piece.n != k:
                raise DimensionMismatchError(f"piece for {frame} lives on {piece.n} elements")
            if not is_gaussoid(piece):
                raise NotAGaussoidError(f"piece for {frame} is not a gaussoid")

    def pieces_hash(self) -> str:
        return fingerprint(f"{frame} {self.pieces[frame].bits}" for frame in self.frames)


def puzzle_lift(assignment: PuzzleAssignment, n: int) -> CIStructure:
    """Union of the pieces embedded at their frames."""
    assignment.validate()
    bits = 0
    for frame in assignment.frames:
        if frame.n != n:
            raise DimensionMismatchError(f"frame {frame} is not a face of the {n}-cube")
        bits |= embed(assignment.pieces[frame], frame).bits
    return CIStructure(n, bits)


def random_assignment(frames: Sequence[Face], rng: random.Random) -> PuzzleAssignment:
    if not frames:
        return PuzzleAssignment(())
    pieces = gaussoid_pieces(frames[0].dim)
    return PuzzleAssignment(tuple(frames), {frame: rng.choice(pieces) for frame in frames})


def puzzle_frames(n: int, k: int = 3) -> List[Face]:
    if k < 3:
        raise DimensionMismatchError(f"puzzle pieces are k-gaussoids with k >= 3, got k={k}")
    return independent_set(QGraphParams(n, k, 3, 2))


@dataclass
class PuzzleCertificate:
    gaussoid: bool
    frames: int
    pieces_hash: str

    def __str__(self) -> str:
        return f"gaussoid: {str(self.gaussoid).lower()}, frames: {self.frames}, pieces-hash: {self.pieces_hash}"


def certify(assignment: PuzzleAssignment, G: CIStructure) -> PuzzleCertificate:
    return PuzzleCertificate(is_gaussoid(G), len(assignment.frames), assignment.pieces_hash())


@dataclass(frozen=True)
class PerturbationScheme:
    """c pairwise range-disjoint injections from 3-gaussoid patterns into non-gaussoid patterns."""
    injections: Tuple[Dict[int, int], ...]

    @property
    def c(self) -> int:
        return len(self.injections)

    @classmethod
    def canonical(cls) -> "PerturbationScheme":
        gaussoids = sorted(three_gaussoid_patterns())
        others = [p for p in range(64) if p not in three_gaussoid_patterns()]
        c = len(others) // len(gaussoids)
        return cls(tuple(
            {g: others[len(gaussoids) * t + i] for i, g in enumerate(gaussoids)}
            for t in range(c)))

    def validate(self) -> None:
        census = three_gaussoid_patterns()
        seen = set()
        for t, injection in enumerate(self.injections):
            if set(injection) != census:
                raise InvalidSchemeError(f"injection {t} is not defined on the 3-gaussoids")
            images = set(injection.values())
            if len(images) != len(injection):
                raise InvalidSchemeError(f"injection {t} is not injective")
            if images & census:
                raise InvalidSchemeError(f"injection {t} hits a gaussoid")
            if images & seen:
                raise InvalidSchemeError(f"injection {t} overlaps an earlier range")
            seen |= images

    def inverse(self, t: int) -> Dict[int, int]:
        return {image: g for g, image in self.injections[t].items()}


def _frame_mask(frame: Face) -> int:
    index = square_index(frame.n)
    bits = 0
    for s in squares_of(frame):
        bits |= 1 << index.index_of(s)
    return bits


def _check_perturbation_frames(n: int, frames: Sequence[Face]) -> None:
    if any(f.n != n or f.dim != 3 for f in frames):
        raise DimensionMismatchError(f"perturbation frames must be 3-faces of the {n}-cube")
    if not is_independent(QGraphParams(n, 3, 2, 2), frames):
        raise FramesNotIndependentError(f"frames share squares (not independent in Q({n},3,2,2))")


def perturb_non_gaussoid(G: CIStructure, frames: Sequence[Face], choice: Dict[Face, int],
                         scheme: PerturbationScheme) -> CIStructure:
    """Replaces the minor of G at each frame by its image under the chosen injection."""
    scheme.validate()
    if not is_gaussoid(G):
        raise NotAGaussoidError("perturbations start from a gaussoid")
    _check_perturbation_frames(G.n, frames)
    bits = G.bits
    for frame in frames:
        t = choice[frame]
        if not 0 <= t < scheme.c:
            raise InvalidSchemeError(f"choice {t} outside the {scheme.c} injections")
        image = scheme.injections[t][minor(G, frame).bits]
        bits = bits & ~_frame_mask(frame) | embed(CIStructure(3, image), frame).bits
    return CIStructure(G.n, bits)


def recover_minors(H: CIStructure, frames: Sequence[Face], choice: Dict[Face, int],
                   scheme: PerturbationScheme) -> Dict[Face, CIStructure]:
    """The original minors at the frames, read back through the inverse injections."""
    return {frame: CIStructure(3, scheme.inverse(choice[frame])[minor(H, frame).bits])
            for frame in frames}


def recover_original(H: CIStructure, frames: Sequence[Face], choice: Dict[Face, int],
                     scheme: PerturbationScheme) -> CIStructure:
    bits = H.bits
    for frame, original in recover_minors(H, frames, choice, scheme).items():
        bits = bits & ~_frame_mask(frame) | embed(original, frame).bits
    return CIStructure(H.n, bits)


def residue_class(n: int, r: int, k: int) -> List[Tuple[int, ...]]:
    """r-subsets of [n] (1-based) whose label sum is k mod n, as 0-based tuples."""
    if not 2 <= r < n:
        raise ValueError(f"subset size {r} not in [2, {n - 1}]")
    if not 0 <= k < n:
        raise ValueError(f"residue {k} not in [0, {n - 1}]")
    return [S for S in combinations(range(n), r) if (sum(S) + r) % n == k]


def residue_gaussoid(n: int, r: int, k: int) -> CIStructure:
    """Each S of the residue class becomes (ij|S \\ ij) for the two minimal i < j of S."""
    index = square_index(n).index
    bits = 0
    for S in residue_class(n, r, k):
        i, j = S[0], S[1]
        K = 0
        for p in S[2:]:
            K |= 1 << p
        bits |= 1 << index[(1 << i | 1 << j, K)]
    return CIStructure(n, bits)


def best_residue(n: int, r: int) -> Tuple[int, CIStructure]:
    """Smallest residue k with the largest class; its size is at least C(n,r)/n."""
    sizes = [len(residue_class(n, r, k)) for k in range(n)]
    k = sizes.index(max(sizes))
    return k, residue_gaussoid(n, r, k)


@dataclass
class BoundReport:
    n: int
    log2_lower: Fraction
    log2_upper: Fraction
    log2_total_subsets: int
    independent_set_size: Optional[int]
    log2_constructed: Optional[float]
    log2_residue: int
    perturbation_frames: Optional[int]
    log2_perturbation: Optional[float]

    @property
    def meets_lower(self) -> Optional[bool]:
        if self.log2_constructed is None:
            return None
        return self.log2_constructed >= float(self.log2_lower)

    def rows(self) -> List[Tuple[str, str]]:
        def fmt(value) -> str:
            return "n/a" if value is None else f"{float(value):.4f}"
        return [
            ("log2_lower", fmt(self.log2_lower)),
            ("log2_constructed", fmt(self.log2_constructed)),
            ("independent_set_size", str(self.independent_set_size)),
            ("meets_lower", str(self.meets_lower)),
            ("log2_residue", str(self.log2_residue)),
            ("log2_perturbation", fmt(self.log2_perturbation)),
            ("log2_upper", fmt(self.log2_upper)),
            ("log2_total_subsets", str(self.log2_total_subsets)),
        ]


def bound_report(n: int) -> BoundReport:
    """
    Exponents of the counting bounds for gaussoids on n elements. The puzzle
    exponent uses the greedy independent set of Q(n,3,3,2); the perturbation
    exponent uses the greedy independent set of Q(n,3,2,2) and gives the
    number of non-gaussoids obtained from each gaussoid.
    """
    if n < 5:
        raise ValueError(f"bound report needs n >= 5, got {n}")
    total = comb(n, 2) * 2 ** (n - 2)
    lower = Fraction(n * 2 ** n, 3 * 64)
    upper = total - Fraction(4, 9) * Fraction(n * (n - 1) * 2 ** n, 64)

    size = constructed = None
    perturbation_frames = log2_perturbation = None
    if count_faces(n, 3) <= get_limit("max_bound_vertices"):
        size = len(puzzle_frames(n))
        constructed = size * log2(NUM_THREE_GAUSSOIDS)
        perturbation_frames = len(independent_set(QGraphParams(n, 3, 2, 2)))
        log2_perturbation = perturbation_frames * log2(PerturbationScheme.canonical().c)
    else:
        logging.warning("Q(%d,3,3,2) exceeds the vertex limit, skipping the greedy construction", n)

    residue = max(len(residue_class(n, r, k)) for r in range(2, n) for k in range(n))
    report = BoundReport(n, lower, upper, total, size, constructed, residue,
                         perturbation_frames, log2_perturbation)
    logging.debug("Bound report for n=%d: %s", n, report)
    return report
