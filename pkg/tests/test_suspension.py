import pytest

from widgets.abelian import FgAbGroup, GradedGroup
from widgets.errors import InvalidAtomError, SuspensionError
from widgets.manifold import (
    AtomKind,
    connected_sum,
    expr_of,
    homology,
    m_atom,
    projective_space,
    repeated,
    sphere_expr,
    sphere_product,
    surface,
    suspended_homology,
    twisted_product,
)
from widgets.selftest.suites import random_one_connected_sum
from widgets.suspension import (
    FramingIndex,
    abelianize,
    is_homology_sphere,
    is_homology_sphere_graded,
    is_sigma_stable,
    suspend,
    suspend_traced,
    suspension_cohomology,
    suspension_homology,
    suspension_w2,
    surface_pi1,
)

Z = FgAbGroup.free(1)
CP2 = expr_of(projective_space("C", 2))


@pytest.mark.parametrize("i", [0, 1])
@pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 7) for q in range(max(p, 3), 7)])
def test_stable_sphere_products(p, q, i):
    n = expr_of(sphere_product(p, q))
    expected = expr_of(sphere_product(p, q + 1), sphere_product(p + 1, q))
    assert suspend(n, i) == expected
    assert homology(suspend(n, i)) == suspension_homology(n, i)


def test_rule_trace():
    result = suspend_traced(expr_of(sphere_product(2, 3)), 1)
    assert result.expr.to_dsl() == "SxS(2,4) # SxS(3,3)"
    assert [r.split(":")[0] for r in result.rules] == ["R4", "R3"]
    assert suspend_traced(sphere_expr(5), FramingIndex.TWIST).rules[0].startswith("R1")


def test_unstable_product_depends_on_index():
    n = expr_of(sphere_product(2, 2))
    assert not is_sigma_stable(sphere_product(2, 2))
    assert suspend(n, 0) == repeated(sphere_product(2, 3), 2)
    twisted = suspend(n, 1)
    assert twisted.atoms[0].kind is AtomKind.SUSPENSION
    assert twisted.to_dsl() == "Sig1(SxS(2,2))"
    assert homology(twisted) == homology(suspend(n, 0))


def test_spheres_and_surfaces():
    assert suspend(sphere_expr(5), 1) == sphere_expr(6)
    assert suspend(expr_of(surface(2)), 0) == repeated(sphere_product(1, 2), 4)
    assert suspend(expr_of(surface(2)), 1).to_dsl() == "Sig1(Surf(2))"
    merged = expr_of(surface(2), surface(3))
    assert suspend(merged, 0) == repeated(sphere_product(1, 2), 10)
    assert suspend(repeated(sphere_product(1, 1), 2), 0) == repeated(sphere_product(1, 2), 4)


def test_distribution_keeps_multiplicities():
    count = 10**6
    result = suspend_traced(repeated(sphere_product(3, 4), count), 1)
    assert result.expr.to_dsl() == f"{count}*SxS(3,5) # {count}*SxS(4,4)"
    assert result.rules[0] == f"R2: Sig1({count}*SxS(3,4)) distributed over {count} summands"
    assert len(result.rules) == 3


def test_symbolic_fallback_and_nesting():
    once = suspend(CP2, 0)
    assert once.to_dsl() == "Sig0(CP(2))"
    assert suspend(once, 1).to_dsl() == "Sig1(Sig0(CP(2)))"
    assert suspend(connected_sum(CP2, expr_of(sphere_product(1, 3))), 0).to_dsl() == "Sig0(SxS(1,3) # CP(2))"


def test_distributivity(rng):
    for _ in range(60):
        n = rng.randint(4, 8)
        a, b = random_one_connected_sum(rng, n), random_one_connected_sum(rng, n)
        i = rng.randint(0, 1)
        assert suspend(connected_sum(a, b), i) == connected_sum(suspend(a, i), suspend(b, i))


def test_suspension_errors():
    with pytest.raises(SuspensionError, match="dimension too small"):
        suspend(sphere_expr(1), 0)
    with pytest.raises(SuspensionError):
        suspend(CP2, 2)
    with pytest.raises(SuspensionError, match="restriction isomorphism unavailable"):
        suspension_w2(sphere_expr(3))
    assert suspension_w2(CP2)


def test_suspension_homology_and_cohomology():
    n = expr_of(sphere_product(2, 3))
    assert suspension_homology(n, 0) == homology(suspend(n, 0))
    assert suspension_homology(CP2, 0) == suspension_homology(CP2, 1)
    m3 = expr_of(projective_space("C", 3))
    cohom = suspension_cohomology(m3)
    assert cohom.at(3) == Z and cohom.at(7) == Z


def test_homology_sphere_recognition():
    for n in range(2, 10):
        sphere_groups = GradedGroup.from_mapping({0: Z, n: Z})
        assert is_homology_sphere_graded(suspended_homology(sphere_groups, n), n + 1)
        assert is_homology_sphere(suspend(sphere_expr(n), 1))
    assert not is_homology_sphere(CP2)


@pytest.mark.parametrize("g", range(1, 6))
def test_surface_fundamental_groups(g):
    twisted = surface_pi1(g, 1)
    assert len(twisted.generators) == 2 * g + 1
    assert abelianize(twisted) == FgAbGroup.free(2 * g)
    assert abelianize(surface_pi1(g, 0)) == FgAbGroup.free(2 * g)
    assert homology(suspend(expr_of(surface(g)), 1)).at(1) == FgAbGroup.free(2 * g)


def test_surface_presentation_text():
    assert surface_pi1(1, 1).to_text() == "<a1,b1,z | a1*z*a1^-1*z^-1, b1*z*b1^-1*z^-1, z*a1*b1*a1^-1*b1^-1>"
    assert surface_pi1(0, 1).to_text() == "< | >"
    with pytest.raises(InvalidAtomError):
        surface_pi1(-1, 0)


def test_documented_examples():
    hp2 = expr_of(projective_space("H", 2))
    assert suspend(hp2, 1).to_dsl() == "Sig1(HP(2))"
    assert suspend(hp2, 1) != suspend(hp2, 0)
    assert suspend(sphere_expr(4), 1) == sphere_expr(5)

    h = suspension_homology(CP2, 1)
    assert [h.at(d).free_rank for d in range(6)] == [1, 0, 1, 1, 0, 1]
    mk = suspension_homology(expr_of(m_atom(4)), 0)
    assert mk.at(2) == mk.at(3) == FgAbGroup(torsion=(4, 4))
    assert mk.at(4).is_trivial and mk.at(5).is_trivial

    assert suspension_w2(expr_of(twisted_product(3)))
    assert not suspension_w2(repeated(sphere_product(2, 3), 2))
    assert not suspension_w2(sphere_expr(4))
    assert is_homology_sphere(sphere_expr(7))
    assert not is_homology_sphere(expr_of(m_atom(3)))
