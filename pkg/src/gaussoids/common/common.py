import hashlib
import logging
from importlib.metadata import PackageNotFoundError, version
from typing import Iterable, Iterator, List, Sequence


def get_version() -> str:
    try:
        return version("gaussoids")
    except PackageNotFoundError:
        logging.debug("Package metadata not found, running from source tree")
        return "dev"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits_of(mask: int) -> Iterator[int]:
    """Yields the positions of the set bits of ``mask`` in ascending order."""
    position = 0
    while mask:
        if mask & 1:
            yield position
        mask >>= 1
        position += 1


def mask_of(positions: Iterable[int]) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


def compress_bits(mask: int, support: Sequence[int]) -> int:
    """
    Reads the bits of ``mask`` at the positions in ``support`` and packs them
    into consecutive low bits (position ``support[t]`` goes to bit ``t``).
    """
    packed = 0
    for t, p in enumerate(support):
        if mask >> p & 1:
            packed |= 1 << t
    return packed


def expand_bits(packed: int, support: Sequence[int]) -> int:
    """Inverse of :func:`compress_bits`."""
    mask = 0
    for t, p in enumerate(support):
        if packed >> t & 1:
            mask |= 1 << p
    return mask


def parse_label_list(text: str) -> List[int]:
    """
    Parses a comma separated list of 1-based labels ("1,3,4") into sorted
    0-based positions. The empty string is the empty list.
    """
    text = text.strip()
    if not text:
        return []
    labels = [int(part) for part in text.split(",")]
    if any(label < 1 for label in labels):
        raise ValueError(f"labels are 1-based: {text!r}")
    return sorted(label - 1 for label in labels)


def format_label_list(positions: Iterable[int]) -> str:
    return ",".join(str(p + 1) for p in sorted(positions))


def fingerprint(lines: Iterable[str]) -> str:
    """Short SHA-256 fingerprint over text lines (used for certificates)."""
    digest = hashlib.sha256()
    for line in lines:
        digest.update(line.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()[:16]
