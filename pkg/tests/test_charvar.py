import random
from fractions import Fraction

import pytest

from symtrace.annihilators import op_A, op_T
from symtrace.charvar import (
    NotOnVarietyError,
    char_poly_value,
    decompose_in_minors,
    lift_eta_to_partials,
    minor_matches_symbol,
    minors,
    recombine,
    rewrite_eta_product,
    sample_z_points,
    theta_contraction_check,
    vanishes_on_Z,
)
from symtrace.poly import Poly
from symtrace.spaces import sigma_eta_space, sigma_space
from symtrace.symfun import discriminant
from symtrace.weyl import WeylOp


def eta(k, h):
    return Poly.variable(sigma_eta_space(k), "eta", h)


def sig(k, h):
    return Poly.variable(sigma_eta_space(k), "sigma", h)


def test_minor_values():
    ms = minors(2)
    assert ms.get(1, 2) == eta(2, 1) ** 2 + (sig(2, 1) * eta(2, 1) + sig(2, 2) * eta(2, 2)) * eta(2, 2)
    assert minors(3).get(2, 3) == eta(3, 2) ** 2 - eta(3, 1) * eta(3, 3)
    assert len(minors(4).minors) == 6
    with pytest.raises(ValueError):
        minors(1)


def test_minors_match_generator_symbols():
    for k in (2, 3, 4, 5):
        matches = minor_matches_symbol(k)
        assert len(matches) == k * (k - 1) // 2
        for (i, j), gid, sign in matches:
            if i == 1:
                assert gid == f"T({j})" and sign == 1
            else:
                assert gid == f"A({i - 1},{j},1)" and sign == -1


def test_minors_homogeneous_and_pure_weight():
    for k in (2, 3, 4, 5):
        for (i, j), m in minors(k).minors:
            assert m.degree_in("eta") == 2
            assert m.weight().value == -(i + j - 1)


def test_rewrite_base_case_and_example():
    u, v = rewrite_eta_product(2, 2, 2)
    assert u == {} and v == eta(2, 2)
    u, v = rewrite_eta_product(2, 1, 1)
    assert set(u) == {(1, 2)} and u[(1, 2)] == Poly.one(sigma_space(2))
    assert v == -(sig(2, 1) * eta(2, 1) + sig(2, 2) * eta(2, 2))


def test_rewrite_roundtrip_all_pairs():
    for k in (2, 3, 4, 5):
        se = sigma_eta_space(k)
        for i in range(1, k + 1):
            for j in range(i, k + 1):
                u, v = rewrite_eta_product(k, i, j)
                assert all(c.space == sigma_space(k) for c in u.values())
                assert v.degree_in("eta") <= 1
                lhs = eta(k, i) * eta(k, j)
                assert lhs == recombine(k, u) + eta(k, k) * v


def test_vanishes_on_variety():
    for k in (2, 3, 4):
        for _, m in minors(k).minors:
            assert vanishes_on_Z(m, k)
            assert vanishes_on_Z(m * (sig(k, 1) + eta(k, k)), k)  # ideal closure
    assert not vanishes_on_Z(eta(2, 1) * eta(2, 2), 2)
    assert not vanishes_on_Z(eta(3, 2) ** 2, 3)


def test_decompose_simple_cases():
    k = 2
    m = minors(k).get(1, 2)
    dec = decompose_in_minors(m, k)
    assert dec == {(1, 2): Poly.one(sigma_eta_space(k))}
    with pytest.raises(NotOnVarietyError):
        decompose_in_minors(eta(2, 1) * eta(2, 2), 2)
    with pytest.raises(NotOnVarietyError):
        decompose_in_minors(eta(2, 1), 2)


def test_decompose_roundtrip_randomized():
    rng = random.Random(61)
    done = 0
    for k in (2, 3, 4):
        se = sigma_eta_space(k)
        ms = minors(k)
        while done < 34 * (k - 1):
            target = rng.randint(2, 4)
            combo = Poly.zero(se)
            for mid, m in ms.minors:
                coeff_terms = {}
                for _ in range(rng.randint(0, 2)):
                    exp = [0] * (2 * k)
                    for _ in range(rng.randint(0, 2)):
                        exp[rng.randint(0, k - 1)] += 1
                    extra = target - 2
                    for _ in range(extra):
                        exp[k + rng.randint(0, k - 1)] += 1
                    coeff_terms[tuple(exp)] = Fraction(rng.randint(-4, 4))
                combo = combo + Poly(se, coeff_terms) * m
            if combo.is_zero():
                continue
            done += 1
            dec = decompose_in_minors(combo, k)
            assert recombine(k, dec) == combo
    assert done >= 100


def test_decompose_rejects_inhomogeneous():
    k = 2
    bad = minors(k).get(1, 2) + eta(k, 1)
    with pytest.raises(ValueError):
        decompose_in_minors(bad, k)


def test_vanishing_decision_consistent_with_sampled_points():
    # random non-member quadratics are reported false, with a sampled
    # witness point where they are nonzero; members vanish at every
    # sampled point
    rng = random.Random(59)
    for k in (2, 3):
        se = sigma_eta_space(k)
        pts = sample_z_points(k, seed=13, n=50)
        rejected = 0
        while rejected < 20:
            terms = {}
            for _ in range(rng.randint(1, 3)):
                exp = [0] * (2 * k)
                exp[rng.randint(0, k - 1)] += rng.randint(0, 1)
                for _ in range(2):
                    exp[k + rng.randint(0, k - 1)] += 1
                terms[tuple(exp)] = Fraction(rng.randint(-3, 3))
            f = Poly(se, terms)
            if f.is_zero():
                continue
            values = [f.evaluate({"sigma": pt.sigma, "eta": pt.eta}) for pt in pts]
            if vanishes_on_Z(f, k):
                assert all(v == 0 for v in values)
            else:
                rejected += 1
                assert any(v != 0 for v in values)
        for _, m in minors(k).minors:
            assert all(m.evaluate({"sigma": pt.sigma, "eta": pt.eta}) == 0 for pt in pts)


def test_sampled_points_satisfy_ray_and_root_identities():
    for k in (2, 3, 4):
        pts = sample_z_points(k, seed=9, n=60)
        assert len(pts) == 60
        for pt in pts:
            l = sum(s * e for s, e in zip(pt.sigma, pt.eta))
            assert l != 0
            assert pt.eta[k - 1] == 1
            for h in range(1, k + 1):
                assert pt.eta[h - 1] == pt.eta[0] * (-pt.eta[0] / l) ** (h - 1)
            assert char_poly_value(pt.sigma, l / pt.eta[0]) == 0
            assert pt.sigma == tuple(Fraction((-1) ** h) * pt.s[h - 1] for h in range(1, k + 1))


def test_sampling_deterministic_and_mostly_nondegenerate():
    a = sample_z_points(3, seed=4, n=30)
    b = sample_z_points(3, seed=4, n=30)
    assert a == b
    disc = discriminant(3)
    degenerate = sum(
        1 for pt in sample_z_points(3, seed=10, n=200)
        if disc.evaluate({"sigma": list(pt.sigma)}) * pt.eta[0] == 0
    )
    assert degenerate < 20


def test_worked_sample_arithmetic():
    # t = 2, s_1 = 3 at k = 2 gives sigma = (-3, 2), eta = (2, 1);
    # the contracted ray hits the root -2 of z^2 + 3 z + 2
    t, s1 = Fraction(2), Fraction(3)
    s2 = -(t ** 2 - s1 * t)
    sigma = (Fraction(-1) * s1, s2)
    eta_pt = (t, Fraction(1))
    assert sigma == (Fraction(-3), Fraction(2))
    minor = minors(2).get(1, 2)
    assert minor.evaluate({"sigma": sigma, "eta": eta_pt}) == 0
    l = sigma[0] * eta_pt[0] + sigma[1] * eta_pt[1]
    assert char_poly_value(sigma, l / eta_pt[0]) == 0
    assert l / eta_pt[0] == -2


def test_theta_contraction_closed_form():
    assert theta_contraction_check(2, [3, 2], 1, 5)
    assert theta_contraction_check(3, [1, 4, -2], Fraction(2, 3), Fraction(-7, 2))
    assert theta_contraction_check(2, [3, 2], Fraction(-1, 2), 2)  # a z = -1 branch
    rng = random.Random(67)
    for k in (2, 3, 4):
        for _ in range(10):
            sigma = [Fraction(rng.randint(-6, 6)) for _ in range(k)]
            a = Fraction(0)
            while a == 0:
                a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            z = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            assert theta_contraction_check(k, sigma, a, z)
    with pytest.raises(ValueError):
        theta_contraction_check(2, [1, 1], 0, 1)


def test_theta_contraction_vanishes_at_distinct_roots():
    # roots 1 and 2 of z^2 - 3 z + 2: take z = 1 and -1/a = 2
    from symtrace.transport import theta

    sigma = [Fraction(3), Fraction(2)]
    a = Fraction(-1, 2)
    total = sum(
        theta(2, h).evaluate({"sigma": sigma, "t": [Fraction(1)]}) * a ** (h - 1)
        for h in (1, 2)
    )
    assert total == 0
    # double root: z = -1/a = 1 for z^2 - 2 z + 1
    sigma = [Fraction(2), Fraction(1)]
    a = Fraction(-1)
    total = sum(
        theta(2, h).evaluate({"sigma": sigma, "t": [Fraction(1)]}) * a ** (h - 1)
        for h in (1, 2)
    )
    assert total == 0


def test_lift_eta_to_partials():
    k = 3
    se = sigma_eta_space(k)
    c = sig(k, 2) * eta(k, 1) * eta(k, 3) - eta(k, 2) ** 2
    op = lift_eta_to_partials(c, k)
    S = sigma_space(k)
    expected = (WeylOp.partial(S, 1) * WeylOp.partial(S, 3)).left_mul_poly(
        Poly.variable(S, "sigma", 2)
    ) - WeylOp.partial(S, 2) * WeylOp.partial(S, 2)
    assert op == expected


def test_symbols_of_generators_vanish_on_variety():
    for k in (2, 3, 4):
        for m in range(2, k + 1):
            assert vanishes_on_Z(op_T(k, m).symbol(), k)
        for p in range(1, k):
            for q in range(2, k + 1):
                if p != q - 1:
                    assert vanishes_on_Z(op_A(k, p, q, 1).symbol(), k)
