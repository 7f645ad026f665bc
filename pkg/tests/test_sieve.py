import pytest
from hypothesis import given, settings, strategies as st

from jesma.sieve import (
    ConstraintSet,
    NotAUnitError,
    SieveError,
    congruence_solutions,
    find_killing_modulus,
    two_term_solutions,
)
from jesma.symbolic import ExpExpr, Lin, Term


def v(name):
    return ExpExpr(Lin.var(name))


def atom(sym, **coeffs):
    return ExpExpr(Lin.of(0, **coeffs), sym)


def test_order_two_base():
    rcs = congruence_solutions([Term.of(1, (101, v("z"))), Term.of(-1)], 17)
    assert rcs.variables == ("z",) and rcs.periods == (2,)
    assert rcs.tuples == {(0,)}


def test_mod_11_class_is_z_equals_2x():
    rcs = congruence_solutions([Term.of(1, (2, v("z"))), Term.of(-1, (4, v("x")))], 11)
    assert set(rcs.variables) == {"x", "z"}
    assert len(rcs) == 5
    ix, iz = rcs.variables.index("x"), rcs.variables.index("z")
    assert all((t[iz] - 2 * t[ix]) % 10 == 0 for t in rcs.tuples)
    assert rcs.project("z") == {0, 2, 4, 6, 8}


def test_mod_33_full_and_constrained():
    full = two_term_solutions(2, 5, 33)
    assert full.variables == ("x", "z") and full.periods == (10, 10)
    assert full.tuples == {(0, 0), (2, 8), (4, 6), (6, 4), (8, 2)}
    fixed = two_term_solutions(2, 5, 33, ConstraintSet.none().with_fixed("x", 2))
    assert fixed.tuples == {(2, 8)}  # z == 8 (mod 10) once x = 2
    # the listing (z, x) = (8, 2), (18, 2), (28, 2) normalizes to one class
    assert {18 % 10, 28 % 10} == {8}


def test_equal_bases_diagonal():
    rcs = two_term_solutions(3, 3, 5)
    assert rcs.periods == (4, 4)
    assert rcs.tuples == {(a, a) for a in range(4)}


def test_identity_congruence_full_torus():
    terms = [Term.of(1, (7, v("x"))), Term.of(-1, (7, v("x")))]
    rcs = congruence_solutions(terms, 11)
    assert len(rcs) == rcs.periods[0]


def test_two_term_rejects_non_units():
    with pytest.raises(NotAUnitError):
        two_term_solutions(33, 5, 33)


def test_empty_terms_rejected():
    with pytest.raises(SieveError):
        congruence_solutions([], 7)


KILL_TERMS = [
    Term.of(1, (101, v("z"))),
    Term.of(-1),
    Term.of(-1, (99, v("y")), (2, v("a")), (5, v("b"))),
]


def test_killing_modulus_is_17():
    w = find_killing_modulus(KILL_TERMS, ConstraintSet.none().with_parity("z", 0), m_max=100)
    assert w is not None and w.modulus == 17
    assert w.solutions.is_empty()
    # every supported modulus below 17 was actually scanned and survived
    assert all(m < 17 for m in w.scanned[:-1])
    assert 17 in w.scanned


def test_without_parity_no_kill_at_17():
    rcs = congruence_solutions(KILL_TERMS, 17)
    assert not rcs.is_empty()  # odd z solves it: 101^z == -1, and -2 is a value of the term


def test_unsatisfiable_constraints_kill_immediately():
    cons = ConstraintSet.none().with_residue("z", 4, {1}).with_residue("z", 4, {2})
    w = find_killing_modulus(KILL_TERMS, cons, m_max=10)
    assert w is not None and w.modulus == 2


def test_true_identity_never_killed():
    # 3^2 + 4^2 - 5^2 has the genuine solution (2, 2, 2) in every modulus
    terms = [
        Term.of(1, (3, v("x"))),
        Term.of(1, (4, v("y"))),
        Term.of(-1, (5, v("z"))),
    ]
    assert find_killing_modulus(terms, m_max=60) is None


def test_solutions_re_verify_exactly():
    terms = [Term.of(1, (7, v("x"))), Term.of(-1, (5, v("y"))), Term.of(-2)]
    for m in (9, 11, 13, 19):
        rcs = congruence_solutions(terms, m)
        ox = rcs.period_of("x")
        oy = rcs.period_of("y")
        listed = rcs.tuples
        for xx in range(ox):
            for yy in range(oy):
                vals = dict(zip(rcs.variables, (xx, yy) if rcs.variables == ("x", "y") else (yy, xx)))
                holds = (7 ** vals["x"] - 5 ** vals["y"] - 2) % m == 0
                member = tuple(vals[n] for n in rcs.variables) in listed
                assert holds == member


def test_lifting_projection():
    terms = [Term.of(1, (2, v("z"))), Term.of(-1, (5, v("x")))]
    pairs = [(m, m * f) for m in (3, 7, 9, 11, 13) for f in (2, 3, 5) if m * f <= 200]
    for m, big in pairs:
        try:
            small = congruence_solutions(terms, m)
            large = congruence_solutions(terms, big)
        except SieveError:
            continue
        for t in large.tuples:
            vals = dict(zip(large.variables, t))
            reduced = tuple(
                vals[n] % small.period_of(n) for n in small.variables
            )
            assert reduced in small.tuples


def test_symbolic_atom_enumeration():
    # 99^y * 2^(r(y-z)) == 0 mod 33 for y >= 1 regardless of the atom
    terms = [
        Term.of(1, (101, v("z"))),
        Term.of(-1, (5, v("x"))),
        Term.of(-1, (99, v("y")), (2, atom("r", y=1, z=-1))),
    ]
    rcs = congruence_solutions(terms, 33)
    assert set(rcs.variables) == {"x", "z"}
    assert rcs.tuples == {(0, 0), (2, 8), (4, 6), (6, 4), (8, 2)}


def test_kill_implies_bounded_search_empty():
    # 101^z = 1 + 99^y*2^a*5^b with z even has no small solutions either
    for z in range(2, 21, 2):
        rhs = 101**z - 1
        for y in range(1, 21):
            p99 = 99**y
            if p99 > rhs:
                break
            rest = rhs
            if rest % p99:
                continue
            rest //= p99
            while rest % 2 == 0:
                rest //= 2
            while rest % 5 == 0:
                rest //= 5
            assert rest != 1, (z, y)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=40),
    st.integers(min_value=2, max_value=20),
    st.integers(min_value=2, max_value=20),
    st.integers(min_value=-9, max_value=9),
)
def test_enumeration_is_sound_and_complete(m, a, b, c):
    """Every listed tuple satisfies the congruence; every omitted one fails."""
    terms = [Term.of(1, (a, v("x"))), Term.of(1, (b, v("y"))), Term.of(c)]
    try:
        rcs = congruence_solutions(terms, m)
    except SieveError:
        return  # modulus not representable for these bases: out of scope
    periods = dict(zip(rcs.variables, rcs.periods))
    px, py = periods.get("x", 1), periods.get("y", 1)

    def value(x, y):
        # a variable missing from the torus means its term vanished mod m
        total = c % m
        if "x" in periods:
            total += pow(a, x % px, m)
        if "y" in periods:
            total += pow(b, y % py, m)
        return total % m

    for x in range(px):
        for y in range(py):
            tup = tuple({"x": x, "y": y}[n] for n in rcs.variables)
            expected_zero = value(x, y) == 0
            assert (tup in rcs.tuples) == expected_zero, (m, a, b, c, x, y)


def test_order_cap_skips_heavy_moduli():
    w = find_killing_modulus(KILL_TERMS, ConstraintSet.none().with_parity("z", 0), m_max=100, order_cap=2)
    # with a tiny order cap most moduli are skipped, but 17 needs order 8 for 2
    assert w is None or w.modulus != 17
