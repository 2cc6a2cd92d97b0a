import random

import pytest

from twistlab.curve import (
    CurveSpec,
    algebraic_intersection,
    curves_equal,
    homology_action,
    identity_matrix,
    mat_mul,
    parse_curve_spec,
    resolve,
    standard_form_matrix,
    symplectic_pairing,
)
from twistlab.errors import GenusMismatch, SpecParseError, UnknownTwistName
from twistlab.mcg import builtin_table, evaluate


def spec(genus, text):
    return parse_curve_spec(genus, text)


# -- parsing -----------------------------------------------------------


def test_parse_bare_name():
    s = spec(2, "C1")
    assert s.base == "C1" and s.conjugator == ()
    assert s.to_text() == "C1"


def test_parse_with_conjugator():
    s = spec(2, "Sep1 @ [C3 C4^-1]")
    assert s.base == "Sep1"
    assert s.conjugator == (("C3", 1), ("C4", -1))
    assert s.to_text() == "Sep1 @ [C3 C4^-1]"
    assert spec(2, "Sep1 @ []") == CurveSpec(2, "Sep1", ())


@pytest.mark.parametrize(
    "text,pos",
    [
        ("", 0),
        ("C1 @", 4),
        ("C1 @ [C2", 8),
        ("C1 @ [C2^]", 9),
        ("C1 @ [C2^0]", 10),
        ("C1 ] trailing", 3),
        ("@ [C1]", 0),
    ],
)
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(SpecParseError) as err:
        spec(2, text)
    assert err.value.position == pos


def test_resolve_rejects_boundary_parallel_base():
    with pytest.raises(UnknownTwistName):
        resolve(spec(2, "Delta"))


def test_resolve_rejects_unknown_base():
    with pytest.raises(UnknownTwistName):
        resolve(spec(2, "Q7"))


# -- resolution --------------------------------------------------------


def test_resolve_identity_conjugator():
    data = resolve(spec(2, "C1"))
    assert data.twist == builtin_table(2).twist("C1")
    assert data.homology == (1, 0, 0, 0)
    assert not data.separating


def test_resolve_separating_base():
    data = resolve(spec(2, "Sep1"))
    assert data.separating
    assert data.homology == (0, 0, 0, 0)
    assert homology_action(data.twist) == identity_matrix(2)


def test_resolve_conjugated_twist_genus1():
    data = resolve(spec(1, "C1 @ [C2]"))
    f = evaluate((("C2", 1),), 1)
    base = builtin_table(1).twist("C1")
    assert data.twist == f.compose(base).compose(f.inverse())
    m = homology_action(f)
    assert data.homology == tuple(m[i][0] for i in range(2))


def test_conjugation_law_as_executable_identity():
    rng = random.Random(51)
    table = builtin_table(2)
    names = table.chain_names + table.sep_names
    for _ in range(25):
        base = rng.choice(table.essential_base_names())
        conj = tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(rng.randrange(3)))
        extra = (rng.choice(names), rng.choice((-1, 1)))
        plain = resolve(CurveSpec(2, base, conj))
        moved = resolve(CurveSpec(2, base, (extra,) + conj))
        g = evaluate((extra,), 2)
        assert moved.twist == g.compose(plain.twist).compose(g.inverse())


def test_separating_iff_zero_homology_on_samples():
    rng = random.Random(53)
    table = builtin_table(2)
    names = table.chain_names + table.sep_names
    for _ in range(40):
        base = rng.choice(table.essential_base_names())
        conj = tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(rng.randrange(4)))
        data = resolve(CurveSpec(2, base, conj))
        assert data.separating == all(c == 0 for c in data.homology)
        if data.separating:
            assert homology_action(data.twist) == identity_matrix(2)


def test_pi1_class_of_moved_base():
    data = resolve(spec(2, "C1 @ [C2]"))
    f = evaluate((("C2", 1),), 2)
    expect = f(builtin_table(2).entry("C1").base_word).canonical_cyclic()
    assert data.pi1_class == expect


# -- homology machinery -------------------------------------------------


def test_homology_action_identity():
    assert homology_action(evaluate((), 2)) == identity_matrix(2)


def test_homology_action_functorial():
    rng = random.Random(57)
    names = builtin_table(2).names()
    for _ in range(30):
        u = tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(2))
        v = tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(2))
        lhs = homology_action(evaluate(u + v, 2))
        rhs = mat_mul(homology_action(evaluate(u, 2)), homology_action(evaluate(v, 2)))
        assert lhs == rhs


def test_homology_action_symplectic():
    rng = random.Random(59)
    j = standard_form_matrix(2)
    names = builtin_table(2).names()
    for _ in range(40):
        mcw = tuple((rng.choice(names), rng.choice((-2, -1, 1, 2))) for _ in range(3))
        m = homology_action(evaluate(mcw, 2))
        mt = tuple(tuple(m[i][k] for i in range(4)) for k in range(4))
        assert mat_mul(mt, mat_mul(j, m)) == j


def test_transvection_genus1():
    m = homology_action(builtin_table(1).twist("C1"))
    # fixes e1, moves e2 by -e1 under this handedness convention
    assert tuple(m[i][0] for i in range(2)) == (1, 0)
    assert tuple(m[i][1] for i in range(2)) in ((-1, 1), (1, 1))


# -- pairings ------------------------------------------------------------


def test_algebraic_intersection_chain_neighbours():
    assert abs(algebraic_intersection(spec(1, "C1"), spec(1, "C2"))) == 1
    assert abs(algebraic_intersection(spec(2, "C3"), spec(2, "C4"))) == 1


def test_algebraic_intersection_separating_vanishes():
    assert algebraic_intersection(spec(2, "Sep1"), spec(2, "C1")) == 0
    assert algebraic_intersection(spec(2, "Sep1"), spec(2, "Sep1 @ [C3]")) == 0


def test_algebraic_intersection_self_and_antisymmetry():
    rng = random.Random(61)
    table = builtin_table(2)
    names = table.chain_names + table.sep_names
    for _ in range(30):
        a = CurveSpec(2, rng.choice(table.essential_base_names()),
                      tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(2)))
        b = CurveSpec(2, rng.choice(table.essential_base_names()),
                      tuple((rng.choice(names), rng.choice((-1, 1))) for _ in range(2)))
        assert algebraic_intersection(a, a) == 0
        assert algebraic_intersection(a, b) == -algebraic_intersection(b, a)


def test_pairing_is_standard_form():
    assert symplectic_pairing((1, 0, 0, 0), (0, 1, 0, 0)) == 1
    assert symplectic_pairing((0, 0, 1, 0), (0, 0, 0, 1)) == 1
    assert symplectic_pairing((0, 1, 0, 0), (1, 0, 0, 0)) == -1


def test_genus_mismatch():
    with pytest.raises(GenusMismatch):
        algebraic_intersection(spec(1, "C1"), spec(2, "C1"))


# -- equality -------------------------------------------------------------


def test_curves_equal_reflexive():
    assert curves_equal(spec(2, "C1"), spec(2, "C1"))


def test_distinct_bases_differ():
    assert not curves_equal(spec(2, "C1"), spec(2, "C2"))


def test_twist_fixes_its_own_curve():
    assert curves_equal(spec(2, "C1 @ [C1]"), spec(2, "C1"))
    assert curves_equal(spec(2, "Sep1 @ [Sep1^-2]"), spec(2, "Sep1"))


def test_disjoint_twist_fixes_curve():
    # C4 is disjoint from C1's curve, so conjugating does nothing
    assert curves_equal(spec(2, "C1 @ [C4]"), spec(2, "C1"))
    assert not curves_equal(spec(2, "C1 @ [C2]"), spec(2, "C1"))
