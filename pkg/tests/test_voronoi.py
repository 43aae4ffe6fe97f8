"""最短向量枚举与相关向量"""
import math
import random
from fractions import Fraction
from itertools import product

import pytest

from src.config import settings
from src.errors import DimensionCapExceeded, DimensionMismatch
from src.models import RelevantVectorSet
from src.utils.linalg import determinant, inverse
from src.services.catalog import catalog
from src.services.enumeration import shortest_vectors_in_coset, vectors_in_ball
from src.services.lattice import lll_reduce, make_lattice, orthogonal_sum
from src.services.voronoi import nonzero_classes, relevant_vectors, relevant_vectors_of_sum


class TestEnumeration:
    def test_deep_hole_of_z2(self):
        norm2, vectors = shortest_vectors_in_coset(catalog("Z", 2), ["1/2", "1/2"])
        assert norm2 == Fraction(1, 2)
        assert len(vectors) == 4

    def test_zero_coset_skips_origin(self):
        norm2, vectors = shortest_vectors_in_coset(catalog("A", 2))
        assert norm2 == 2
        assert len(vectors) == 6

    def test_shift_length_checked(self):
        with pytest.raises(DimensionMismatch):
            shortest_vectors_in_coset(catalog("Z", 2), [0, 0, 0])

    def test_ball_is_sorted_and_complete(self):
        points = vectors_in_ball(catalog("Z", 2), 2)
        assert len(points) == 9
        coords = [p for p, _ in points]
        assert coords == sorted(coords)


@pytest.mark.parametrize(
    "name, n, count",
    [
        ("Z", 1, 2),
        ("Z", 3, 6),
        ("A", 2, 6),
        ("A", 4, 20),
        ("A*", 2, 6),
        ("A*", 3, 14),
        ("D", 4, 24),
        ("D", 5, 40),
        ("D*", 4, 24),
        ("D*", 5, 42),
        ("E", 6, 72),
        ("E", 7, 126),
    ],
)
def test_relevant_vector_counts(vor_of, name, n, count):
    _, vor = vor_of(name, n)
    assert vor.count == count


def test_e8_relevant_vectors_are_roots(e8):
    _, vor = e8
    assert vor.count == 240
    assert set(vor.norm2) == {2}


def test_e6_dual_relevant_vectors(vor_of):
    _, vor = vor_of("E6*")
    assert vor.count == 126
    assert set(vor.norm2) == {Fraction(4, 3), 2}


def test_relevant_set_is_symmetric_and_sorted(vor_of):
    _, vor = vor_of("A*", 3)
    assert list(vor.vectors) == sorted(vor.vectors)
    assert all(tuple(-x for x in v) in vor.as_set() for v in vor.vectors)
    assert len(vor.pair_representatives()) == vor.count // 2


def test_basis_choice_does_not_change_count():
    skewed = make_lattice([[1, 0], [5, 1]])
    assert relevant_vectors(skewed).count == 4


def test_workers_give_identical_result(vor_of):
    lattice, serial = vor_of("D", 4)
    assert relevant_vectors(lattice, workers=2) == serial


def test_dimension_cap():
    with pytest.raises(DimensionCapExceeded) as info:
        relevant_vectors(catalog("Z", 5), cap_dim=4)
    assert info.value.exit_code == 3


def test_default_cap_comes_from_settings(monkeypatch):
    monkeypatch.setattr(settings, "cap_dim", 2)
    with pytest.raises(DimensionCapExceeded):
        relevant_vectors(catalog("Z", 3))


def test_orthogonal_sum_relevant_vectors(vor_of):
    _, z1 = vor_of("Z", 1)
    _, a2 = vor_of("A", 2)
    combined = relevant_vectors_of_sum([z1, a2])
    assert combined == relevant_vectors(orthogonal_sum(catalog("Z", 1), catalog("A", 2)))
    assert combined.count == 8


def test_nonzero_classes():
    assert len(nonzero_classes(3)) == 7


def test_invariants_enforced():
    with pytest.raises(ValueError):
        RelevantVectorSet.from_pairs([((1, 0), 1)])


def random_lattice(seed):
    """2 到 4 维的随机整数基（行列式非零），LLL 约化后返回"""
    rng = random.Random(seed)
    n = 2 + seed % 3
    while True:
        basis = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if determinant(basis) != 0:
            break
    reduced, _ = lll_reduce(make_lattice(basis, name=f"random{seed}"))
    return reduced


def brute_force_relevant(lattice):
    """
    在坐标盒内穷举：每个非零 mod 2 类中范数最小的向量恰好为 ±v 时 v 是相关向量

    盒子半径取 √(R·(G⁻¹)ᵢᵢ)，R 为各类 0/1 代表元范数的最大值
    """
    n = lattice.dim
    gram = lattice.integral_gram()

    def norm(x):
        return sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))

    reps = [c for c in product((0, 1), repeat=n) if any(c)]
    radius = max(norm(c) for c in reps)
    gram_inv = inverse(gram)
    bound = max(math.isqrt(math.floor(radius * gram_inv[i][i])) + 1 for i in range(n))

    best = {}
    for x in product(range(-bound, bound + 1), repeat=n):
        if not any(x):
            continue
        cls = tuple(v % 2 for v in x)
        q = norm(x)
        if cls not in best or q < best[cls][0]:
            best[cls] = (q, [x])
        elif q == best[cls][0]:
            best[cls][1].append(x)
    relevant = set()
    for cls in reps:
        q, vectors = best[cls]
        if len(vectors) == 2:
            relevant.update(vectors)
    return relevant


@pytest.mark.parametrize("seed", range(25))
def test_matches_brute_force_on_random_lattices(seed):
    lattice = random_lattice(seed)
    vor = relevant_vectors(lattice)
    assert vor.as_set() == brute_force_relevant(lattice)
    assert vor.count <= 2 * (2 ** lattice.dim - 1)
