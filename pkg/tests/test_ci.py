import pytest

from gaussoids.ci import (CIStructure, SignedPermutation, all_minors,
                          apply_symmetry, axiom_violation, condition,
                          contract, dual, embed, format_structure,
                          hyperoctahedral_group, is_gaussoid,
                          is_gaussoid_axioms, is_gaussoid_belts, marginalize,
                          minor, minor_pattern, parse_structure, restrict,
                          structure, symmetric_group, three_gaussoid_patterns)
from gaussoids.classify import ClassSpec
from gaussoids.construct import puzzle_frames, puzzle_lift, random_assignment
from gaussoids.cube import (enumerate_faces, face_parse, opposite,
                            square_index, squares_of)
from gaussoids.enumeration import enumerate_class
from gaussoids.errors import (DimensionMismatchError, ResourceGuardError,
                              StructureParseError)

FOUR_CYCLE = structure(4, "13|24", "24|13")


def random_structure(rng, n, density=0.5):
    bits = 0
    for v in range(len(square_index(n))):
        if rng.random() < density:
            bits |= 1 << v
    return CIStructure(n, bits)


def frame_mask(frame):
    index = square_index(frame.n)
    return sum(1 << index.index_of(s) for s in squares_of(frame))


def test_text_format_round_trip():
    text = "n=4\n# the 4-cycle\n2,4|1,3\n1,3|2,4\n"
    A = parse_structure(text)
    assert A == FOUR_CYCLE
    assert format_structure(A) == "n=4\n1,3|2,4\n2,4|1,3\n"
    assert parse_structure(format_structure(A, ["labels 1->1"])) == A


def test_text_format_errors():
    with pytest.raises(StructureParseError):
        parse_structure("1,2|\n")
    with pytest.raises(StructureParseError):
        parse_structure("n=3\n1,2|1\n")
    with pytest.raises(StructureParseError):
        parse_structure("n=3\n1|2\n")
    with pytest.raises(StructureParseError):
        parse_structure("n=x\n")
    with pytest.raises(StructureParseError):
        parse_structure("n=-2\n")
    with pytest.raises(ResourceGuardError):
        parse_structure("n=40\n1,2|\n")


def test_membership_and_size():
    assert "13|24" in FOUR_CYCLE
    assert "12|" not in FOUR_CYCLE
    assert len(FOUR_CYCLE) == 2
    assert len(CIStructure.full(4)) == 24
    assert len(CIStructure.empty(4)) == 0


def test_census_has_eleven_in_five_orbits():
    census = three_gaussoid_patterns()
    assert len(census) == 11
    orbits = set()
    for pattern in census:
        orbit = frozenset(apply_symmetry(CIStructure(3, pattern), g).bits
                          for g in symmetric_group(3))
        orbits.add(orbit)
    assert sorted(len(o) for o in orbits) == [1, 1, 3, 3, 3]


def test_checkers_agree_on_all_three_structures():
    for bits in range(64):
        A = CIStructure(3, bits)
        assert is_gaussoid(A) == is_gaussoid_axioms(A) == is_gaussoid_belts(A)


def test_checkers_agree_on_random_structures(rng):
    for _ in range(300):
        n = rng.randint(3, 5)
        A = random_structure(rng, n, density=rng.choice([0.05, 0.15, 0.5]))
        assert is_gaussoid(A) == is_gaussoid_axioms(A) == is_gaussoid_belts(A)


def test_violation_witness():
    violation = axiom_violation(structure(3, "12|", "13|2"))
    assert violation is not None
    assert str(violation) == "(G1) i=1 j=2 k=3 L={}"
    assert axiom_violation(FOUR_CYCLE) is None


def test_small_structures_are_vacuous():
    assert is_gaussoid(CIStructure.full(2))
    assert is_gaussoid_axioms(CIStructure.full(2))


def test_gaussoids_closed_under_symmetry():
    for pattern in three_gaussoid_patterns():
        A = CIStructure(3, pattern)
        for g in hyperoctahedral_group(3):
            assert is_gaussoid(apply_symmetry(A, g))


def test_dual_is_involution_and_all_flips(rng):
    for _ in range(100):
        n = rng.randint(2, 5)
        A = random_structure(rng, n)
        assert dual(dual(A)) == A
        everything = SignedPermutation(tuple(range(n)), frozenset(range(n)))
        assert apply_symmetry(A, everything) == dual(A)


def test_symmetry_validation():
    with pytest.raises(ValueError):
        SignedPermutation((0, 0, 1))
    with pytest.raises(ValueError):
        SignedPermutation((0, 1), frozenset({2}))


def test_minor_is_restriction_of_conditioning(rng):
    for _ in range(300):
        n = rng.randint(3, 6)
        A = random_structure(rng, n)
        frame = rng.choice(enumerate_faces(n, rng.randint(2, n)))
        M = sorted(frame.K)
        complement = [p for p in range(n) if p not in M]
        local = [complement.index(p) for p in sorted(frame.I)]
        assert minor(A, frame) == restrict(condition(A, M), local)
        assert minor(A, frame).ground_labels == tuple(sorted(frame.I))


def test_contraction_and_marginal_dualities(rng):
    for _ in range(300):
        n = rng.randint(3, 6)
        A = random_structure(rng, n)
        L = [p for p in range(n) if rng.random() < 0.5]
        complement = [p for p in range(n) if p not in L]
        assert contract(A, L) == condition(A, complement)
        assert marginalize(A, L) == restrict(A, complement)
        assert dual(restrict(A, L)) == contract(dual(A), L)


def test_dual_commutes_with_minors(rng):
    for _ in range(300):
        n = rng.randint(3, 6)
        A = random_structure(rng, n)
        frame = rng.choice(enumerate_faces(n, rng.randint(2, n)))
        assert dual(minor(A, frame)) == minor(dual(A), opposite(frame))


def test_embed_minor_round_trip(rng):
    for _ in range(300):
        n = rng.randint(3, 6)
        A = random_structure(rng, n)
        frame = rng.choice(enumerate_faces(n, rng.randint(2, n)))
        assert embed(minor(A, frame), frame).bits == A.bits & frame_mask(frame)


def test_embed_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        embed(CIStructure.full(3), face_parse("**00"))
    with pytest.raises(DimensionMismatchError):
        minor(FOUR_CYCLE, face_parse("***"))


def test_all_minors_and_patterns():
    minors = all_minors(FOUR_CYCLE, 3)
    assert len(minors) == 8
    for frame, M in minors:
        assert minor_pattern(FOUR_CYCLE, frame) == M.bits
        assert M.n == 3


def test_minor_examples():
    assert minor(FOUR_CYCLE, face_parse("*1**")) == structure(3, "12|3")
    star = structure(4, "23|1", "23|14", "24|1", "24|13", "34|1", "34|12")
    assert minor(star, face_parse("1***")) == CIStructure.full(3)
    assert minor(star, face_parse("0***")) == CIStructure.empty(3)


def sample_gaussoids(rng):
    for A in enumerate_class(4, ClassSpec.parse("ELUBF")):
        yield A
    for n in (5, 6):
        frames = puzzle_frames(n)
        for _ in range(20):
            yield puzzle_lift(random_assignment(frames, rng), n)


def test_minors_of_gaussoids_are_gaussoids(rng):
    for A in sample_gaussoids(rng):
        assert is_gaussoid(A)
        for k in range(2, A.n + 1):
            for _, M in all_minors(A, k):
                assert is_gaussoid_axioms(M)


def test_gaussoids_are_decided_by_minors_of_any_dimension(rng):
    samples = list(sample_gaussoids(rng))
    for _ in range(200):
        n = rng.randint(3, 5)
        samples.append(random_structure(rng, n, density=rng.choice([0.05, 0.2, 0.5])))
    for A in samples:
        verdict = is_gaussoid(A)
        for k in range(3, A.n + 1):
            assert all(is_gaussoid(M) for _, M in all_minors(A, k)) == verdict
