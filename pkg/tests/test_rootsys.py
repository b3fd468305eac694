from __future__ import annotations

import itertools

import pytest

from adeverify import rootsys
from adeverify.exactla import Matrix

LABELS = [f"A{r}" for r in range(1, 10)] + [f"D{r}" for r in range(4, 9)] + ["E6", "E7", "E8"]


@pytest.mark.parametrize("label", LABELS)
def test_root_counts_and_norms(label):
    rs = rootsys.build(label)
    assert len(rs.roots) == rootsys.classical_root_count(rs.family, rs.rank)
    roots = set(rs.roots)
    for r in rs.roots:
        assert rs.pairing(r, r) == 2
        assert tuple(-x for x in r) in roots


@pytest.mark.parametrize("label", LABELS)
def test_reflections_permute_roots(label):
    rs = rootsys.build(label)
    roots = set(rs.roots)
    ident = Matrix.identity(rs.rank)
    for g in rs.weyl_gens:
        assert g @ g == ident
        assert {g.apply(r) for r in rs.roots} == roots


@pytest.mark.parametrize("label", LABELS)
def test_cartan_is_gram_of_simple_roots(label):
    rs = rootsys.build(label)
    c = rs.cartan
    assert c == c.T
    for i, a in enumerate(rs.simple_roots):
        for j, b in enumerate(rs.simple_roots):
            assert rs.pairing(a, b) == c[i, j]


def test_e8_count_from_lattice_model():
    # norm-2 vectors of the even unimodular lattice: integer or half-integer coordinates, even sum
    count = 0
    for v in itertools.product(range(-1, 2), repeat=8):
        if sum(x * x for x in v) == 2:
            count += 1
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            count += 1
    assert count == 240 == len(rootsys.build("E8").roots)


def test_d4_roots_match_coordinate_model():
    model = {
        (i, j, si, sj)
        for i, j in itertools.combinations(range(4), 2)
        for si in (1, -1) for sj in (1, -1)
    }
    assert len(model) == len(rootsys.build("D4").roots) == 24


@pytest.mark.parametrize("label,height", [("A2", 2), ("D5", 7), ("E8", 29)])
def test_highest_root_height(label, height):
    rs = rootsys.build(label)
    hr = rs.highest_root
    assert sum(hr) == height
    for r in rs.positive_roots:
        assert all(x >= y for x, y in zip(hr, r))


@pytest.mark.parametrize("label,degrees", [
    ("A4", (2, 3, 4, 5)),
    ("D4", (2, 4, 4, 6)),
    ("D5", (2, 4, 5, 6, 8)),
    ("E6", (2, 5, 6, 8, 9, 12)),
    ("E7", (2, 6, 8, 10, 12, 14, 18)),
    ("E8", (2, 8, 12, 14, 18, 20, 24, 30)),
])
def test_invariant_degrees(label, degrees):
    assert rootsys.invariant_degrees(rootsys.build(label)) == degrees


@pytest.mark.parametrize("label", LABELS)
def test_height_partition(label):
    rs = rootsys.build(label)
    counts = rs.heights.counts
    assert all(x >= y for x, y in zip(counts, counts[1:]))
    assert len(rootsys.exponents(rs)) == rs.rank
    assert counts[0] == rs.rank
    assert rs.heights.max_height == rs.coxeter_number - 1


@pytest.mark.parametrize("label", [lab for lab in LABELS if lab != "A1"])
def test_degrees_sum_to_dim_v(label):
    rs = rootsys.build(label)
    assert sum(rootsys.invariant_degrees(rs)) == rootsys.dim_v(rs)


@pytest.mark.parametrize("label,dim", [("A2", 5), ("D4", 16), ("E8", 128)])
def test_dim_v(label, dim):
    assert rootsys.dim_v(rootsys.build(label)) == dim


@pytest.mark.parametrize("label,expected", [
    ("A1", True), ("A2", False), ("A3", False), ("D4", True), ("D5", False),
    ("E6", False), ("E7", True), ("E8", True),
])
def test_minus_one_in_weyl(label, expected):
    assert rootsys.minus_one_in_weyl(rootsys.build(label)) is expected


def test_longest_word_length_is_number_of_positive_roots():
    for label in ("A3", "D5", "E6"):
        rs = rootsys.build(label)
        assert len(rootsys.longest_element_word(rs)) == len(rs.positive_roots)


@pytest.mark.parametrize("bad", ["B3", "A0", "D3", "E9", "F4", "", "X"])
def test_unsupported_labels(bad):
    with pytest.raises(ValueError):
        rootsys.build(bad)


def test_label_spellings():
    assert rootsys.build("e_8").label == "E8"
    assert rootsys.parse_label("A_2") == ("A", 2)
