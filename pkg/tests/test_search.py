import random

import pytest

from jesma.search import (
    DegenerateBaseError,
    find_eisenstein_solutions,
    find_solutions,
    find_solutions_scaled,
    find_terai_solutions,
)
from jesma.triples import Triple, lu_family


def brute_force(a, b, c, x_max, y_max):
    """Independent 3-loop oracle with an exact z bound."""
    top = a**x_max + b**y_max
    z_max = 1
    cz = c
    while cz <= top:
        z_max += 1
        cz *= c
    found = set()
    for x in range(1, x_max + 1):
        for y in range(1, y_max + 1):
            for z in range(1, z_max + 1):
                if a**x + b**y == c**z:
                    found.add((x, y, z))
    return found


def test_known_solution_sets():
    assert find_solutions(3, 4, 5, 30, 30).solution_set() == {(2, 2, 2)}
    assert find_solutions(3, 2, 5, 30, 30).solution_set() == {(1, 1, 1), (2, 4, 2)}
    assert find_solutions(7, 2, 3, 30, 30).solution_set() == {(1, 1, 2), (2, 5, 4)}
    assert find_solutions(89, 2, 91, 30, 30).solution_set() == {(1, 1, 1), (1, 13, 2)}


def test_scaled_solution_sets():
    assert find_solutions_scaled(lu_family(5), 2, 20, 20).solution_set() == {(2, 2, 2)}
    assert find_solutions_scaled(Triple(3, 4, 5), 7, 20, 20).solution_set() == {(2, 2, 2)}
    assert find_solutions_scaled(lu_family(2), 3, 20, 20).solution_set() == {(2, 2, 2)}


def test_terai_solutions():
    assert find_terai_solutions(3, 5, 10, 10) == {(4, 2, 2)}
    assert find_terai_solutions(2, 3, 1, 1) == {(1, 1, 1)}
    assert find_terai_solutions(5, 6, 8, 8) == {(1, 1, 1)}


def test_eisenstein_solutions():
    assert find_eisenstein_solutions(3, 5, 7, 10, 10) == {(1, 1, 2)}
    assert find_eisenstein_solutions(5, 3, 7, 10, 10) == {(1, 1, 2)}
    assert find_eisenstein_solutions(7, 8, 13, 10, 10) == {(1, 1, 2)}


def test_eisenstein_rejects_bad_instance():
    with pytest.raises(ValueError):
        find_eisenstein_solutions(3, 4, 7, 5, 5)


def test_degenerate_bases_rejected():
    with pytest.raises(DegenerateBaseError):
        find_solutions(1, 2, 3)
    with pytest.raises(DegenerateBaseError):
        find_terai_solutions(1, 3)
    with pytest.raises(DegenerateBaseError):
        find_eisenstein_solutions(1, 1, 1)  # 1 + 1 + 1 != 1 anyway, base check first


def test_matches_brute_force_oracle():
    rng = random.Random(17)
    done = 0
    while done < 50:
        a = rng.randint(2, 50)
        b = rng.randint(2, 50)
        c = rng.randint(2, 50)
        got = find_solutions(a, b, c, 8, 8).solution_set()
        assert got == brute_force(a, b, c, 8, 8), (a, b, c)
        done += 1


def test_monotone_in_bounds():
    small = find_solutions(7, 2, 3, 4, 4).solution_set()
    large = find_solutions(7, 2, 3, 30, 30).solution_set()
    assert small <= large


def test_always_finds_222_for_pythag():
    for t in (Triple(3, 4, 5), Triple(20, 99, 101), lu_family(7)):
        for k in (1, 2, 9):
            assert (2, 2, 2) in find_solutions_scaled(t, k, 3, 3).solution_set()


def test_report_self_checks_and_counts():
    r = find_solutions(3, 2, 5, 12, 9)
    assert r.candidates == 12 * 9
    assert r.solutions == tuple(sorted(r.solutions))
    for x, y, z in r.solutions:
        assert 3**x + 2**y == 5**z


def test_parallel_matches_serial():
    serial = find_solutions(3, 2, 5, 25, 25, threads=1)
    parallel = find_solutions(3, 2, 5, 25, 25, threads=3)
    assert serial.solutions == parallel.solutions
