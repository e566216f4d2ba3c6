import numpy as np
import pytest

from bregprox import (
    DomainError,
    HypothesisViolation,
    bregman_distance,
    check_linearity,
    check_three_point,
    composite_generator,
    least_squares,
    negative_entropy,
    shifted_quadratic,
    squared_euclidean,
    verify_proximal_distance_axioms,
    zero_function,
)
from bregprox.functions import check_gradient, SmoothFunction


def rng(seed=0):
    return np.random.Generator(np.random.Philox(seed))


class TestBregmanDistance:
    def test_quadratic_reduces_to_half_sq_dist(self):
        h = squared_euclidean(2)
        d = bregman_distance(h, np.array([1.0, 2.0]), np.zeros(2))
        assert d == pytest.approx(2.5)

    def test_zero_at_equal_points(self):
        for h, x in [(squared_euclidean(3), np.ones(3)),
                     (negative_entropy(3), np.full(3, 1 / 3))]:
            assert abs(bregman_distance(h, x, x)) <= 1e-12

    def test_entropy_is_kl_divergence(self):
        h = negative_entropy(2)
        x = np.array([0.5, 0.5])
        y = np.array([0.25, 0.75])
        kl = float(np.sum(x * np.log(x / y)))  # independent KL formula
        assert bregman_distance(h, x, y) == pytest.approx(kl, abs=1e-14)
        assert kl == pytest.approx(0.5 * np.log(2) + 0.5 * np.log(2 / 3))

    def test_quadratic_exact_half_sq_everywhere(self):
        h = squared_euclidean(6)
        r = rng(4)
        for _ in range(100):
            x, y = r.standard_normal((2, 6))
            want = 0.5 * float(np.sum((x - y) ** 2))
            assert bregman_distance(h, x, y) == pytest.approx(want, rel=1e-14)

    def test_nonnegativity_sampled(self):
        r = rng(5)
        hq = squared_euclidean(4)
        he = negative_entropy(4)
        for _ in range(500):
            assert bregman_distance(hq, r.standard_normal(4),
                                    r.standard_normal(4)) >= -1e-12
            assert bregman_distance(he, r.dirichlet(np.ones(4)),
                                    r.dirichlet(np.ones(4))) >= -1e-12

    def test_boundary_gradient_point_rejected(self):
        h = negative_entropy(3)
        with pytest.raises(DomainError):
            bregman_distance(h, np.full(3, 1 / 3), np.array([1.0, 0.0, 0.0]))

    def test_point_outside_closure_rejected(self):
        h = negative_entropy(3)
        with pytest.raises(DomainError):
            bregman_distance(h, np.array([1.0, 1.0, -1.0]), np.full(3, 1 / 3))

    def test_generator_gradients_match_finite_differences(self):
        r = rng(6)
        hq = squared_euclidean(5)
        fq = SmoothFunction(hq.value, hq.grad, 5)
        for _ in range(10):
            assert check_gradient(fq, r.standard_normal(5)) <= 1e-5
        he = negative_entropy(5)
        for _ in range(10):
            # the entropy value oracle lives on the simplex, so differentiate
            # along simplex-tangent directions (sum-zero perturbations)
            x = r.dirichlet(np.ones(5)) * 0.9 + 0.02
            g = he.grad(x)
            for _ in range(5):
                d = r.standard_normal(5)
                d -= np.mean(d)
                eps = 1e-6
                fd = (he.value(x + eps * d) - he.value(x - eps * d)) / (2 * eps)
                want = float(np.dot(g, d))
                assert abs(fd - want) / (1 + abs(want)) <= 1e-5


class TestStrongConvexity:
    def test_quadratic_modulus_one(self):
        h = squared_euclidean(4)
        r = rng(9)
        for _ in range(200):
            x, y = r.standard_normal((2, 4))
            inner = np.dot(h.grad(x) - h.grad(y), x - y)
            assert inner >= np.sum((x - y) ** 2) - 1e-10

    def test_entropy_modulus_one_on_simplex(self):
        # Hessian diag(1/x_i) dominates the identity on the simplex
        h = negative_entropy(5)
        r = rng(10)
        for _ in range(200):
            x, y = r.dirichlet(np.ones(5)), r.dirichlet(np.ones(5))
            inner = np.dot(h.grad(x) - h.grad(y), x - y)
            assert inner >= np.sum((x - y) ** 2) - 1e-10

    def test_strict_convexity_sampled(self):
        r = rng(11)
        for h, sample in [
            (squared_euclidean(3), lambda: r.standard_normal(3)),
            (negative_entropy(3), lambda: r.dirichlet(np.ones(3))),
        ]:
            for _ in range(100):
                x, y = sample(), sample()
                if np.linalg.norm(x - y) < 1e-3:
                    continue
                lam = r.uniform(0.1, 0.9)
                mid = lam * x + (1 - lam) * y
                gap = lam * h.value(x) + (1 - lam) * h.value(y) - h.value(mid)
                assert gap >= 1e-12


class TestCompositeGenerator:
    def test_zero_smooth_term_reduces_to_scaled_h(self):
        H = squared_euclidean(3)
        h = composite_generator(H, zero_function(3), 1.0)
        r = rng(12)
        for _ in range(20):
            x = r.standard_normal(3)
            assert h.value(x) == pytest.approx(H.value(x))
            np.testing.assert_allclose(h.grad(x), H.grad(x))

    def test_degenerate_flat_composite(self):
        # H = 1/2||.||^2, f = 1/(2 gamma)||x-b||^2, eta = gamma: the induced
        # distance collapses to zero identically (the one-step regime)
        gamma = 0.8
        b = np.array([1.0, -2.0, 0.5])
        f = shifted_quadratic(b, gamma)
        h = composite_generator(squared_euclidean(3), f, gamma)
        r = rng(13)
        for _ in range(50):
            x, y = r.standard_normal((2, 3))
            assert abs(bregman_distance(h, x, y)) <= 1e-12

    def test_entropy_composite_monotone_gradient(self):
        r = rng(14)
        A = r.standard_normal((6, 5))
        L = float(np.linalg.eigvalsh(A.T @ A)[-1])
        f = least_squares(A, r.standard_normal(6), lipschitz=L)
        eta = 1.0 / L  # eta = gamma, recorded sigma = 1 covers it
        h = composite_generator(negative_entropy(5), f, eta)
        for _ in range(1000):
            x, y = r.dirichlet(np.ones(5)), r.dirichlet(np.ones(5))
            assert np.dot(np.asarray(h.grad(x)) - np.asarray(h.grad(y)),
                          x - y) >= -1e-10

    def test_hypothesis_violation_raises(self):
        f = shifted_quadratic(np.zeros(2), 1.0)  # L = 1
        with pytest.raises(HypothesisViolation):
            composite_generator(squared_euclidean(2), f, eta=2.0)
        # unchecked construction is allowed for negative testing
        composite_generator(squared_euclidean(2), f, eta=2.0, unchecked=True)


class TestThreePoint:
    def test_coincident_points(self):
        h = squared_euclidean(3)
        a = np.ones(3)
        assert check_three_point(h, a, a, a) <= 1e-14

    def test_quadratic_random_triples(self):
        h = squared_euclidean(3)
        r = rng(15)
        for _ in range(200):
            a, b, c = r.standard_normal((3, 3))
            assert check_three_point(h, a, b, c) <= 1e-12

    def test_entropy_random_triples(self):
        h = negative_entropy(5)
        r = rng(16)
        for _ in range(200):
            a, b, c = (r.dirichlet(np.ones(5)) for _ in range(3))
            assert check_three_point(h, a, b, c) <= 1e-10


class TestLinearity:
    def test_doubled_quadratic(self):
        h = squared_euclidean(2)
        a, b = np.array([1.0, 2.0]), np.array([0.0, -1.0])
        assert check_linearity(h, h, a, b) <= 1e-14

    def test_quadratic_plus_entropy(self):
        r = rng(17)
        hq = squared_euclidean(4)
        he = negative_entropy(4)
        for _ in range(100):
            a, b = r.dirichlet(np.ones(4)), r.dirichlet(np.ones(4))
            assert check_linearity(hq, he, a, b) <= 1e-12

    def test_subtraction_matches_composite(self):
        # D_{(1/eta)H} - D_f = D_{(1/eta)H - f}
        r = rng(18)
        A = r.standard_normal((5, 4))
        L = float(np.linalg.eigvalsh(A.T @ A)[-1])
        f = least_squares(A, r.standard_normal(5), lipschitz=L)
        eta = 0.5 / L
        H = squared_euclidean(4)
        h = composite_generator(H, f, eta)
        for _ in range(100):
            x, y = r.standard_normal((2, 4))
            lhs = (bregman_distance(H, x, y) / eta
                   - (f.value(x) - f.value(y) - np.dot(x - y, f.grad(y))))
            assert abs(lhs - bregman_distance(h, x, y)) <= 1e-10


class TestProximalDistanceAxioms:
    def test_quadratic_passes_all(self):
        res = verify_proximal_distance_axioms(squared_euclidean(3),
                                              samples=300, seed=0)
        assert res.all_hold()

    def test_entropy_passes_all(self):
        res = verify_proximal_distance_axioms(negative_entropy(4),
                                              samples=300, seed=1)
        assert res.all_hold()

    def test_degenerate_composite_fails_identity(self):
        gamma = 1.0
        f = shifted_quadratic(np.array([2.0, -1.0]), gamma)
        h = composite_generator(squared_euclidean(2), f, gamma)
        res = verify_proximal_distance_axioms(h, samples=300, seed=2)
        assert res.nonnegativity_holds
        assert not res.identity_of_indiscernibles_holds
        assert not res.bounded_level_set_holds

    def test_healthy_composite_passes(self):
        gamma = 1.0
        f = shifted_quadratic(np.array([2.0, -1.0]), gamma)
        h = composite_generator(squared_euclidean(2), f, gamma / 2)
        res = verify_proximal_distance_axioms(h, samples=300, seed=3)
        assert res.all_hold()
