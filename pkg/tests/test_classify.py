from collections import Counter

import pytest

from gaussoids.ci import (CIStructure, apply_symmetry, dual, structure,
                          symmetric_group, three_gaussoid_patterns)
from gaussoids.classify import (ClassSpec, MinorClass, all_specs,
                                allowed_patterns, class_profile, dual_spec,
                                in_class, is_ascending, is_descending,
                                minor_class, pattern_classes, smallest_class)
from gaussoids.cube import face_parse
from gaussoids.enumeration import enumerate_class
from gaussoids.errors import NotAGaussoidError

FOUR_CYCLE = structure(4, "13|24", "24|13")
STAR = structure(4, "23|1", "23|14", "24|1", "24|13", "34|1", "34|12")
BELT = structure(3, "12|", "12|3", "13|", "13|2")
SWAP = {MinorClass.L: MinorClass.U, MinorClass.U: MinorClass.L}


def spec(letters):
    return ClassSpec.parse(letters)


def test_orbit_sizes():
    sizes = Counter(pattern_classes().values())
    assert sizes == {MinorClass.E: 1, MinorClass.L: 3, MinorClass.U: 3,
                     MinorClass.B: 3, MinorClass.F: 1}
    assert allowed_patterns(spec("ELUBF")) == three_gaussoid_patterns()


def test_minor_class_letters():
    assert minor_class(CIStructure.empty(3)) is MinorClass.E
    assert minor_class(structure(3, "12|3")) is MinorClass.U
    assert minor_class(structure(3, "12|")) is MinorClass.L
    assert minor_class(BELT) is MinorClass.B
    assert minor_class(CIStructure.full(3)) is MinorClass.F
    with pytest.raises(NotAGaussoidError):
        minor_class(structure(3, "12|", "13|"))
    with pytest.raises(NotAGaussoidError):
        minor_class(FOUR_CYCLE)


def test_letter_is_permutation_invariant_and_dual_swaps_l_u():
    for pattern in three_gaussoid_patterns():
        A = CIStructure(3, pattern)
        letter = minor_class(A)
        for g in symmetric_group(3):
            assert minor_class(apply_symmetry(A, g)) is letter
        assert minor_class(dual(A)) is SWAP.get(letter, letter)


def test_profiles_of_graph_examples():
    assert class_profile(FOUR_CYCLE).counts == {
        MinorClass.E: 4, MinorClass.L: 0, MinorClass.U: 4, MinorClass.B: 0, MinorClass.F: 0}
    star = class_profile(STAR)
    assert star.ok
    assert star.counts[MinorClass.F] == 1
    assert star.counts[MinorClass.E] == 1
    assert star.counts[MinorClass.U] == 6
    assert str(star) == "E:1 U:6 F:1"
    assert class_profile(CIStructure.full(5)).counts[MinorClass.F] == 40


def test_profile_failure_frame():
    profile = class_profile(structure(4, "12|", "13|"))
    assert not profile.ok
    assert profile.failure_frame == face_parse("***0")
    assert smallest_class(structure(4, "12|", "13|")) is None


def test_in_class_examples():
    assert in_class(FOUR_CYCLE, spec("EU"))
    assert not in_class(FOUR_CYCLE, spec("U"))
    assert smallest_class(FOUR_CYCLE) == spec("EU")
    assert smallest_class(STAR) == spec("EUF")
    assert in_class(CIStructure.empty(6), spec("E"))
    assert in_class(CIStructure.full(2), spec(""))


def test_in_class_monotone_and_intersections():
    gaussoids = enumerate_class(4, spec("ELUBF"))
    specs = list(all_specs())
    for A in gaussoids[::7]:
        members = {str(s) for s in specs if in_class(A, s)}
        for s in specs:
            for t in specs:
                if s <= t and str(s) in members:
                    assert str(t) in members
        assert (in_class(A, spec("EU"))
                == (in_class(A, spec("EUF")) and in_class(A, spec("EUB"))))


def test_ascension_is_forbidding_l():
    for A in enumerate_class(4, spec("ELUBF")):
        assert is_ascending(A) == in_class(A, spec("EUBF"))
        assert is_descending(A) == in_class(A, spec("ELBF"))


def test_ascension_examples():
    assert not is_ascending(structure(3, "12|"))
    assert is_descending(structure(3, "12|"))
    assert is_ascending(structure(3, "12|3"))
    assert not is_descending(structure(3, "12|3"))
    for A in (CIStructure.empty(4), CIStructure.full(4)):
        assert is_ascending(A) and is_descending(A)


def test_class_spec_text():
    assert str(spec("ufe")) == "EUF"
    assert str(spec("-")) == ""
    assert str(dual_spec(spec("ELB"))) == "EUB"
    assert dual_spec(dual_spec(spec("LUF"))) == spec("LUF")
    assert len(list(all_specs())) == 32
    with pytest.raises(ValueError):
        spec("EX")
