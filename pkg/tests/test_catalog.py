"""目录格与 Leech 数据文件"""
from fractions import Fraction

import pytest

from src.errors import BadDimension, UnknownName
from src.services.catalog import catalog, parse_name
from src.services.enumeration import min_norm2, min_vectors
from src.services.lattice import lattice_determinant


@pytest.mark.parametrize(
    "name, family, n",
    [("A4", "A", 4), ("A4*", "A*", 4), ("D5", "D", 5), ("E6*", "E*", 6), ("Z3", "Z", 3), ("Leech", "Leech", None)],
)
def test_parse_name(name, family, n):
    assert parse_name(name) == (family, n)


def test_parse_name_with_separate_dimension():
    assert parse_name("D", 7) == ("D", 7)


@pytest.mark.parametrize("name", ["B3", "", "foo"])
def test_unknown_name(name):
    with pytest.raises(UnknownName):
        catalog(name)


@pytest.mark.parametrize("name, n", [("D", 3), ("E", 5), ("A", 0), ("E*", 9)])
def test_bad_dimension(name, n):
    with pytest.raises(BadDimension):
        catalog(name, n)


@pytest.mark.parametrize(
    "name, det, mu2",
    [
        ("Z3", 1, 1),
        ("A2", 3, 2),
        ("A3", 4, 2),
        ("A2*", Fraction(1, 3), Fraction(2, 3)),
        ("D4", 4, 2),
        ("D5*", Fraction(1, 4), 1),
        ("E6", 3, 2),
        ("E7", 2, 2),
        ("E8", 1, 2),
        ("E6*", Fraction(1, 3), Fraction(4, 3)),
        ("E7*", Fraction(1, 2), Fraction(3, 2)),
    ],
)
def test_determinant_and_minimum(name, det, mu2):
    lattice = catalog(name)
    assert lattice_determinant(lattice) == det
    norm2, _ = min_vectors(lattice)
    assert norm2 == mu2


@pytest.mark.parametrize("name, kissing", [("A3", 12), ("D4", 24), ("E6", 72), ("E7", 126)])
def test_kissing_numbers(name, kissing):
    _, vectors = min_vectors(catalog(name))
    assert len(vectors) == kissing


def test_e8_star_is_e8():
    assert catalog("E8*").name == "E8"


def test_an_superbasis_sums_to_zero():
    lattice = catalog("A", 3)
    superbasis = lattice.meta.superbasis
    assert len(superbasis) == 4
    assert all(sum(col) == 0 for col in zip(*superbasis))
    assert tuple(superbasis[1:]) == lattice.basis


def test_leech_from_data_file():
    leech = catalog("Leech")
    assert leech.dim == 24
    assert leech.metric == Fraction(1, 8)
    assert lattice_determinant(leech) == 1
    assert min_norm2(leech) == 4
