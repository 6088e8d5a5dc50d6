"""
Symmetry classes of 3-gaussoids and the letter-restricted gaussoid classes.

The eleven 3-gaussoids split into five orbits under permutations of the
ground set: E (empty), L (a single square with empty local conditioning
set), U (a single square with full local conditioning set), B (a belt) and
F (all six squares). A class is a set of letters; a CI structure belongs to
it when every 3-minor is a gaussoid carrying one of those letters.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Optional

from gaussoids.ci import (FULL_PATTERN, OPPOSITE_PAIRS, CIStructure,
                          cube_patterns, three_gaussoid_patterns)
from gaussoids.cube import Face, square_index
from gaussoids.errors import NotAGaussoidError


class MinorClass(Enum):
    E = "E"
    L = "L"
    U = "U"
    B = "B"
    F = "F"

    def __str__(self) -> str:
        return self.value


LETTER_ORDER = (MinorClass.E, MinorClass.L, MinorClass.U, MinorClass.B, MinorClass.F)

# in local bit order (ab|L), (ab|cL), (ac|L), (ac|bL), (bc|L), (bc|aL)
_PATTERN_CLASS: Dict[int, MinorClass] = {0: MinorClass.E, FULL_PATTERN: MinorClass.F}
_PATTERN_CLASS.update({1 << bit: MinorClass.L for bit in (0, 2, 4)})
_PATTERN_CLASS.update({1 << bit: MinorClass.U for bit in (1, 3, 5)})
_PATTERN_CLASS.update({FULL_PATTERN & ~pair: MinorClass.B for pair in OPPOSITE_PAIRS})


def _singleton_violates_ascension(pattern: int) -> bool:
    return not is_ascending(CIStructure(3, pattern))


@lru_cache(maxsize=1)
def pattern_classes() -> Dict[int, MinorClass]:
    """
    Pattern to letter table, checked against the axiom census: the table
    covers exactly the 3-gaussoids, and the singletons breaking ascension are
    exactly the L patterns.
    """
    census = three_gaussoid_patterns()
    if set(_PATTERN_CLASS) != set(census):
        raise AssertionError(f"letter table disagrees with the 3-gaussoid census {sorted(census)}")
    for pattern, letter in _PATTERN_CLASS.items():
        if bin(pattern).count("1") == 1 and \
                _singleton_violates_ascension(pattern) != (letter is MinorClass.L):
            raise AssertionError(f"singleton pattern {pattern} mislabeled as {letter}")
    return dict(_PATTERN_CLASS)


@dataclass(frozen=True)
class ClassSpec:
    allowed: FrozenSet[MinorClass] = field(default_factory=frozenset)

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        """``"ELU"`` and ``"ule"`` parse alike; ``""`` and ``"-"`` are the empty class."""
        text = text.strip().upper()
        if text == "-":
            text = ""
        try:
            return cls(frozenset(MinorClass(letter) for letter in text))
        except ValueError as e:
            raise ValueError(f"invalid class letters {text!r}, expected a subset of ELUBF") from e

    @classmethod
    def of(cls, letters: Iterable[MinorClass]) -> "ClassSpec":
        return cls(frozenset(letters))

    def __contains__(self, letter: MinorClass) -> bool:
        return letter in self.allowed

    def __le__(self, other: "ClassSpec") -> bool:
        return self.allowed <= other.allowed

    def __len__(self) -> int:
        return len(self.allowed)

    def dual(self) -> "ClassSpec":
        swap = {MinorClass.L: MinorClass.U, MinorClass.U: MinorClass.L}
        return ClassSpec(frozenset(swap.get(c, c) for c in self.allowed))

    def __str__(self) -> str:
        return "".join(c.value for c in LETTER_ORDER if c in self.allowed)


def all_specs() -> Iterator[ClassSpec]:
    """The 32 classes, ordered by size and then letter order."""
    specs = []
    for t in range(1 << len(LETTER_ORDER)):
        specs.append(ClassSpec.of(c for pos, c in enumerate(LETTER_ORDER) if t >> pos & 1))
    specs.sort(key=lambda s: (len(s), [LETTER_ORDER.index(c) for c in LETTER_ORDER if c in s]))
    return iter(specs)


def dual_spec(spec: ClassSpec) -> ClassSpec:
    return spec.dual()


def allowed_patterns(spec: ClassSpec) -> FrozenSet[int]:
    return frozenset(p for p, c in pattern_classes().items() if c in spec)


def minor_class(A: CIStructure) -> MinorClass:
    if A.n != 3:
        raise NotAGaussoidError(f"expected a 3-gaussoid, got a structure on {A.n} elements")
    try:
        return pattern_classes()[A.bits]
    except KeyError as e:
        raise NotAGaussoidError(f"{A} is not a 3-gaussoid") from e


@dataclass
class ProfileResult:
    counts: Dict[MinorClass, int]
    failure_frame: Optional[Face] = None

    @property
    def ok(self) -> bool:
        return self.failure_frame is None

    def letters(self) -> ClassSpec:
        return ClassSpec.of(c for c, count in self.counts.items() if count)

    def __str__(self) -> str:
        if not self.ok:
            return f"FAILURE at {self.failure_frame}"
        return " ".join(f"{c}:{self.counts[c]}" for c in LETTER_ORDER if self.counts.get(c))


def class_profile(A: CIStructure) -> ProfileResult:
    """Letter counts over all 3-minors, stopping at the first non-gaussoid minor."""
    table = pattern_classes()
    counts = {c: 0 for c in LETTER_ORDER}
    for cube, pattern in cube_patterns(A):
        letter = table.get(pattern)
        if letter is None:
            logging.debug("Minor at %s has non-gaussoid pattern %d", cube, pattern)
            return ProfileResult(counts, cube)
        counts[letter] += 1
    return ProfileResult(counts)


def in_class(A: CIStructure, spec: ClassSpec) -> bool:
    allowed = allowed_patterns(spec)
    return all(pattern in allowed for _, pattern in cube_patterns(A))


def smallest_class(A: CIStructure) -> Optional[ClassSpec]:
    """Letters occurring among the 3-minors, or None if A is not a gaussoid."""
    profile = class_profile(A)
    return profile.letters() if profile.ok else None


def is_ascending(A: CIStructure) -> bool:
    """(ij|L) ⇒ (ij|kL) for every k outside ijL."""
    index = square_index(A.n).index
    full = (1 << A.n) - 1
    for f in A.squares():
        free = full & ~f.star & ~f.one
        k = 1
        while k <= free:
            if free & k and not A.bits >> index[(f.star, f.one | k)] & 1:
                return False
            k <<= 1
    return True


def is_descending(A: CIStructure) -> bool:
    """(ij|kL) ⇒ (ij|L)."""
    index = square_index(A.n).index
    for f in A.squares():
        k = 1
        while k <= f.one:
            if f.one & k and not A.bits >> index[(f.star, f.one & ~k)] & 1:
                return False
            k <<= 1
    return True
