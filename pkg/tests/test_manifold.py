import pytest
from pydantic import ValidationError

from widgets.abelian import FgAbGroup, IntPolynomial
from widgets.errors import DimensionMismatchError, InvalidAtomError, RealizabilityError
from widgets.manifold import (
    ManifoldExpr,
    canonicalize,
    cohomology,
    connected_sum,
    dim,
    euler_characteristic,
    expr_of,
    from_poincare,
    homology,
    is_simply_connected,
    is_torsion_free,
    m_atom,
    multiple,
    poincare_poly,
    projective_space,
    remove_atom,
    repeated,
    sphere,
    sphere_expr,
    sphere_product,
    surface,
    twisted_product,
    w2_nonzero,
    wu_manifold,
    x_atom,
)
from widgets.selftest.suites import ONE_CONNECTED_POOL

CP2 = projective_space("C", 2)


def test_atom_normalization():
    assert sphere_product(3, 2) == sphere_product(2, 3)
    assert surface(0) == sphere(2)
    assert surface(1) == sphere_product(1, 1)
    assert projective_space("C", 1) == sphere(2)
    assert projective_space("H", 1) == sphere(4)


@pytest.mark.parametrize(
    "build",
    [
        lambda: m_atom(1),
        lambda: x_atom(0),
        lambda: twisted_product(1),
        lambda: projective_space("R", 2),
        lambda: surface(-1),
        lambda: sphere_product(0, 3),
        lambda: sphere(0),
    ],
)
def test_invalid_atoms(build):
    with pytest.raises(InvalidAtomError):
        build()


def test_sums_are_canonical():
    a = expr_of(m_atom(3), sphere_product(2, 3))
    b = connected_sum(expr_of(sphere_product(2, 3)), expr_of(m_atom(3)))
    assert a == b
    assert a.to_dsl() == "SxS(2,3) # M(3)"
    assert connected_sum(a, sphere_expr(5)) == a
    assert repeated(sphere_product(3, 4), 5).to_dsl() == "5*SxS(3,4)"
    assert remove_atom(a, m_atom(3)) == expr_of(sphere_product(2, 3))
    assert sphere_expr(7).to_dsl() == "S(7)"


def test_canonicalize():
    raw = ManifoldExpr(dim=5, terms=((m_atom(3), 1), (sphere(5), 1), (sphere_product(2, 3), 1)))
    assert not raw.is_canonical
    assert canonicalize(raw) == expr_of(sphere_product(2, 3), m_atom(3))
    assert canonicalize(canonicalize(raw)).is_canonical
    assert dim(raw) == 5


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError, match="dimension mismatch 3 vs 5"):
        connected_sum(sphere_expr(3), expr_of(sphere_product(2, 3)))
    with pytest.raises(ValidationError):
        ManifoldExpr(dim=5, terms=((sphere_product(2, 2), 1),))
    with pytest.raises(ValidationError):
        ManifoldExpr(dim=5, terms=((sphere_product(2, 3), 0),))


def test_homology_of_sum():
    m = expr_of(sphere_product(2, 3), m_atom(3))
    h = homology(m)
    assert h.degrees() == [0, 2, 3, 5]
    assert str(h.at(2)) == "Z + Z/3 + Z/3"
    assert not is_torsion_free(m)
    c = cohomology(expr_of(m_atom(3)))
    assert c.at(2).is_trivial
    assert c.at(3) == FgAbGroup(torsion=(3, 3))


def test_invariants_of_atoms():
    cp2 = expr_of(CP2)
    assert str(poincare_poly(cp2)) == "1+t^2+t^4"
    assert euler_characteristic(cp2) == 3
    assert w2_nonzero(cp2)
    assert not w2_nonzero(expr_of(projective_space("C", 3)))
    assert w2_nonzero(expr_of(wu_manifold()))
    assert euler_characteristic(expr_of(sphere_product(3, 3))) == 0
    assert euler_characteristic(repeated(sphere_product(2, 2), 2)) == 6
    assert euler_characteristic(sphere_expr(4)) == 2


def test_simple_connectivity():
    assert not is_simply_connected(expr_of(surface(2)))
    assert not is_simply_connected(expr_of(sphere_product(1, 4)))
    assert is_simply_connected(expr_of(m_atom(3), x_atom(2)))
    assert not is_simply_connected(sphere_expr(1))


def test_json_form():
    assert expr_of(CP2).to_json_dict() == {"dim": 4, "atoms": [{"kind": "ProjectiveSpace", "params": ["C", 2], "count": 1}]}
    assert expr_of(wu_manifold()).to_json_dict() == {"dim": 5, "atoms": [{"kind": "WuManifold", "params": [], "count": 1}]}
    assert repeated(m_atom(3), 4).to_json_dict()["atoms"] == [{"kind": "M", "params": [3], "count": 4}]


def test_from_poincare():
    poly = IntPolynomial.from_terms({0: 1, 3: 5, 4: 5, 7: 1})
    assert from_poincare(poly, 7) == repeated(sphere_product(3, 4), 5)
    four = IntPolynomial.from_terms({0: 1, 3: 9, 4: 16, 5: 9, 8: 1})
    assert from_poincare(four, 8).to_dsl() == "9*SxS(3,5) # 8*SxS(4,4)"
    with pytest.raises(RealizabilityError):
        from_poincare(IntPolynomial.from_terms({0: 1, 2: 1, 4: 1}), 4)
    with pytest.raises(RealizabilityError):
        from_poincare(IntPolynomial.from_terms({0: 1, 2: 1, 5: 1}), 5)


def test_from_poincare_inverts_poincare_poly(rng):
    for _ in range(50):
        n = rng.randint(2, 10)
        parts = [repeated(sphere_product(p, n - p), rng.randint(0, 3)) for p in range(1, n // 2 + 1)]
        m = sphere_expr(n)
        for part in parts:
            m = connected_sum(m, part)
        assert from_poincare(poincare_poly(m), n) == m


def test_surface_summands_add_genera():
    assert expr_of(surface(2), surface(3)) == expr_of(surface(5))
    assert repeated(sphere_product(1, 1), 2) == expr_of(surface(2))
    assert connected_sum(expr_of(surface(4)), expr_of(sphere_product(1, 1))).to_dsl() == "Surf(5)"
    assert expr_of(surface(2), surface(2)).to_dsl() == "Surf(4)"
    assert homology(expr_of(surface(2), surface(3))).at(1) == FgAbGroup.free(10)


def test_large_multiplicities_stay_compact():
    n = 10**9
    m = repeated(sphere_product(2, 2), n)
    assert m.terms == ((sphere_product(2, 2), n),)
    assert m.summand_count == n
    assert m.to_dsl() == f"{n}*SxS(2,2)"
    assert homology(m).at(2) == FgAbGroup.free(2 * n)
    assert euler_characteristic(m) == 2 * n + 2
    assert remove_atom(m, sphere_product(2, 2)).count(sphere_product(2, 2)) == n - 1
    torsion = multiple(expr_of(m_atom(3), sphere_product(2, 3)), 1000)
    assert homology(torsion).at(2) == FgAbGroup.from_orders(1000, [3] * 2000)
    assert multiple(torsion, 0) == sphere_expr(5)


def test_remove_missing_atom():
    with pytest.raises(ValueError):
        remove_atom(expr_of(sphere_product(2, 3)), m_atom(3))


def random_sum(rng, n, most=4):
    return expr_of(*(rng.choice(ONE_CONNECTED_POOL[n]) for _ in range(rng.randint(1, most))), dim=n)


def test_connected_sum_laws(rng):
    for _ in range(100):
        n = rng.randint(4, 8)
        a, b, c = (random_sum(rng, n) for _ in range(3))
        assert connected_sum(connected_sum(a, b), c) == connected_sum(a, connected_sum(b, c))
        assert connected_sum(a, b) == connected_sum(b, a)
        assert connected_sum(a, sphere_expr(n)) == a


def test_odd_dimensional_euler_characteristic_vanishes(rng):
    for _ in range(100):
        m = random_sum(rng, rng.choice([5, 7]), most=6)
        assert euler_characteristic(m) == 0


def test_torsion_free_poincare_polynomials_are_palindromic(rng):
    seen = 0
    for _ in range(200):
        n = rng.randint(4, 8)
        m = random_sum(rng, n, most=6)
        if not is_torsion_free(m):
            continue
        seen += 1
        assert poincare_poly(m).is_palindromic(n)
    assert seen > 50


def test_surface_free_sums_have_no_first_homology(rng):
    for _ in range(100):
        m = random_sum(rng, rng.randint(4, 8), most=6)
        assert homology(m).at(1).is_trivial
        assert is_simply_connected(m)
