from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from kpw.diagonal import CylinderFunction, cyl_mul, is_in_diagonal, pi, pi_inverse, same_cylinder
from kpw.errors import PreconditionError
from kpw.kpalg import KPElement, mul, p, projection, s, st as span
from kpw.ring import ZZ, zmod
from kpw.sampling import random_diagonal, random_pair, random_path


def ind(g, R, name):
    return CylinderFunction.indicator(g, R, g.path(name))


def test_pi_examples(G1, G2):
    g, R = G2
    assert pi(span(g, R, "e", "e")) == ind(g, R, "e")
    assert pi(KPElement.zero(g, R)).is_zero()
    g1, R1 = G1
    assert pi(p(g1, R1, "v") - span(g1, R1, "e", "e")).is_zero()


def test_cyl_mul_examples(G2, G3):
    g, R = G2
    assert cyl_mul(ind(g, R, "e"), ind(g, R, "f")).is_zero()
    assert cyl_mul(ind(g, R, "v"), ind(g, R, "e")) == ind(g, R, "e")
    g3, R3 = G3
    assert cyl_mul(ind(g3, R3, "a"), ind(g3, R3, "b")) == ind(g3, R3, "a.b")


def test_membership_examples(G1, G2):
    g, R = G2
    assert is_in_diagonal(span(g, R, "e", "e") + p(g, R, "v", 2))
    assert not is_in_diagonal(span(g, R, "e", "f"))
    g1, R1 = G1
    assert not is_in_diagonal(s(g1, R1, "e"))
    with pytest.raises(PreconditionError):
        pi(s(g1, R1, "e"))


@given(seed=st.integers(0, 10**6))
def test_diagonal_commutative(graphs, seed):
    rng = random.Random(seed)
    for g, R in graphs.values():
        a, b = random_diagonal(g, R, rng, 2), random_diagonal(g, R, rng, 2)
        assert mul(a, b).equals(mul(b, a))


@given(seed=st.integers(0, 10**6))
def test_pi_is_injective_homomorphism(G2, seed):
    g, R = G2
    rng = random.Random(seed)
    a, b = random_diagonal(g, R, rng, 2), random_diagonal(g, R, rng, 2)
    assert pi(mul(a, b)) == cyl_mul(pi(a), pi(b))
    assert pi(a + b) == pi(a) + pi(b)
    assert pi(a).is_zero() == a.is_zero()
    assert pi_inverse(pi(a)).equals(a)


def _sandwich_case(g, R, rng):
    alpha, beta = random_pair(g, rng, 2)
    gam = random_path(g, rng, 2, source=alpha.source)
    eta_pool = g.enumerate_paths(beta.source, gam.degree, direction="source")
    eta = rng.choice(eta_pool)
    ag, be = g.compose(alpha, gam), g.compose(beta, eta)
    lhs = mul(mul(projection(g, R, ag), span(g, R, alpha, beta)), projection(g, R, be))
    return alpha, beta, gam, eta, ag, be, lhs


@pytest.mark.parametrize("name", ["G2", "G3"])
@given(seed=st.integers(0, 10**6))
def test_sandwich_identity(graphs, name, seed):
    g, R = graphs[name]
    rng = random.Random(seed)
    alpha, beta, gam, eta, ag, be, lhs = _sandwich_case(g, R, rng)
    general = mul(span(g, R, ag, gam), span(g, R, eta, be))
    assert lhs.equals(general)
    if gam == eta:
        assert lhs.equals(span(g, R, ag, g.compose(beta, gam)))
    else:
        assert lhs.is_zero()


@pytest.mark.parametrize("R", [ZZ, zmod(4)], ids=lambda r: r.name)
def test_projection_cancellation(graphs, R):
    for g, _ in graphs.values():
        paths = [lam for lam in g.paths_up_to((3,) * g.rank) if sum(lam.degree) <= 3]
        for mu in paths:
            for nu in paths:
                for r in (1, 2, 3):
                    if R.normalize(r) == 0:
                        continue
                    lhs = projection(g, R, mu).scale(r)
                    rhs = projection(g, R, nu).scale(r)
                    if lhs.equals(rhs):
                        assert projection(g, R, mu).equals(projection(g, R, nu))
                        assert same_cylinder(g, mu, nu)


def test_evaluation(G2):
    from kpw.infpath import parse_infpath

    g, R = G2
    f = ind(g, R, "e").scale(3) + ind(g, R, "f.f")
    assert f(parse_infpath(g, "v;e")) == 3
    assert f(parse_infpath(g, "v;f")) == 1
    assert f(parse_infpath(g, "f;e")) == 0
