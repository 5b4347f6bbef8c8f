"""The finiteness construction: dichotomy, maximal B, colimit, witness."""

import itertools
import random

import pytest

from gradedmod.cartier import (
    colimit_quotient,
    dichotomy_check,
    find_maximal_b,
    nonsaturation_certificate,
    run_theorem,
    solve_one_minus_x,
)
from gradedmod.coeff import QQ, PrimeField
from gradedmod.errors import HypothesisViolated, PIsShort
from gradedmod.graded import (
    GradedModule,
    classify_length,
    product_submodule,
)
from gradedmod.poly import GradedRing


def curve(field=None):
    r = GradedRing(field or PrimeField(5), 2)
    x0, x1 = r.variables()
    return r, GradedModule.cyclic(r, [x0 * x1])


class TestDichotomy:
    def test_full_b_eventually_equal(self):
        r, M = curve()
        x0, x1 = r.variables()
        verdict = dichotomy_check(M, [x0, x1])
        assert verdict.eventually_equal

    def test_empty_b_smaller(self):
        r, M = curve()
        verdict = dichotomy_check(M, [])
        assert not verdict.eventually_equal

    def test_single_variable_smaller(self):
        r, M = curve()
        x0, _ = r.variables()
        verdict = dichotomy_check(M, [x0])
        assert not verdict.eventually_equal
        # M/N = F[X1]: dims 1 vs 2 per degree
        N = product_submodule([x0], M)
        for k in range(verdict.from_degree, verdict.from_degree + 5):
            assert N.quotient().dim(k) > 0

    def test_totality_random(self):
        """One verdict per (M, B); probed dims consistent 5 degrees past onset."""
        rng = random.Random(5)
        r = GradedRing(PrimeField(5), 3)
        variables = r.variables()
        for _ in range(8):
            deg = rng.randrange(1, 4)
            monos = r.monomials_of_degree(deg)
            f = r.monomial(monos[rng.randrange(len(monos))], 1)
            M = GradedModule.cyclic(r, [f])
            if classify_length(M).is_short:
                continue
            for size in range(len(variables) + 1):
                for B in itertools.combinations(variables, size):
                    verdict = dichotomy_check(M, list(B))
                    N = product_submodule(list(B), M)
                    Q = N.quotient()
                    for k in range(verdict.from_degree,
                                   verdict.from_degree + 5):
                        if verdict.eventually_equal:
                            assert Q.dim(k) == 0
                        else:
                            assert Q.dim(k) > 0


class TestMaximalB:
    def test_curve(self):
        r, M = curve()
        x0, x1 = r.variables()
        B, x, idx = find_maximal_b(M)
        assert B == (x0,) and x == x1 and idx == 1

    def test_hyperplane(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        M = GradedModule.cyclic(r, [x0])
        B, x, _ = find_maximal_b(M)
        assert B == (x0,) and x == x1  # X0 kills M, so adding it stays Long

    def test_free_ring(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        M = GradedModule.cyclic(r, [])
        B, x, _ = find_maximal_b(M)
        assert B == (x0,) and x == x1

    def test_short_module_rejected(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        M = GradedModule.cyclic(r, [x0, x1 ** 2])
        with pytest.raises(HypothesisViolated):
            find_maximal_b(M)

    def test_maximality(self):
        """Every variable outside B flips the quotient to Short."""
        rng = random.Random(7)
        r = GradedRing(PrimeField(5), 3)
        for _ in range(6):
            deg = rng.randrange(1, 3)
            monos = r.monomials_of_degree(deg)
            M = GradedModule.cyclic(
                r, [r.monomial(monos[rng.randrange(len(monos))], 1)])
            if classify_length(M).is_short:
                continue
            B, x, _ = find_maximal_b(M)
            assert not dichotomy_check(M, list(B)).eventually_equal
            for y in r.variables():
                if y not in B:
                    assert dichotomy_check(M, list(B) + [y]).eventually_equal


class TestColimit:
    def test_line(self):
        """P = S/(X0) = F[X1]: all maps bijections of 1-dim spaces."""
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0])
        data = colimit_quotient(P, x1)
        assert len(data.basis) == 1
        # transport of the class of X1^k is the basis class for every k
        for k in range(4):
            coords = data.transport_coords([r.field.one], k)
            assert coords == [r.field.one] or any(coords)

    def test_double_line(self):
        """P = S/(X0^2): dims 1,2,2,..., x = X1 bijective from degree 1."""
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0 ** 2])
        data = colimit_quotient(P, x1)
        assert len(data.basis) == 2

    def test_transport_linear(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0 ** 2])
        data = colimit_quotient(P, x1)
        u = P.from_polynomial(x0 * x1 ** 2)
        v = P.from_polynomial(x1 ** 3)
        left = data.transport(u + v)
        right = [a + b for a, b in zip(data.transport(u), data.transport(v))]
        assert left == right

    def test_transport_x_invariance(self):
        """Transport identifies v and x*v, the defining colimit relation."""
        r = GradedRing(PrimeField(7), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0 ** 2])
        data = colimit_quotient(P, x1)
        for poly in (x1 ** 2, x0 * x1, x0 * x1 ** 3 + x1 ** 4):
            v = P.from_polynomial(poly)
            assert data.transport(v) == data.transport(v * x1)


class TestWitness:
    def test_line_thresholds(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0])
        data = colimit_quotient(P, x1)
        for threshold in (0, 3, 10):
            w = nonsaturation_certificate(P, x1, data, threshold)
            assert w.degree >= threshold
            assert any(w.transport_image)

    def test_short_p_rejected(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0, x1 ** 3])
        with pytest.raises(PIsShort):
            nonsaturation_certificate(P, x1, colimit_quotient(P, x1))

    def test_witness_not_in_one_minus_x_p(self):
        """Cross-check with the independent truncated linear solver."""
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        for ideal in ([x0], [x0 ** 2], [x0 * x1]):
            cert = run_theorem(GradedModule.cyclic(r, ideal))
            P, x1, data = cert.P, cert.x, cert.colimit
            w = nonsaturation_certificate(P, x1, data, data.D)
            for extra in (0, 3, 7):
                top = w.degree + len(data.basis) + extra
                assert solve_one_minus_x(P, x1, w.element, top) is None

    def test_solver_finds_actual_members(self):
        """Sanity: elements of (1-x)P are solvable in a big enough window."""
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        P = GradedModule.cyclic(r, [x0])
        u = P.from_polynomial(x1 ** 2)
        target = P.groebner.normal_form(u - u * x1)
        assert solve_one_minus_x(P, x1, target, 4) is not None


class TestRunTheorem:
    CASES = ("curve", "hyperplane", "free", "double")

    def build(self, field, name):
        r = GradedRing(field, 2)
        x0, x1 = r.variables()
        ideals = {"curve": [x0 * x1], "hyperplane": [x0], "free": [],
                  "double": [x0 ** 2]}
        return GradedModule.cyclic(r, ideals[name])

    @pytest.mark.parametrize("name", CASES)
    @pytest.mark.parametrize("field", [PrimeField(5), QQ])
    def test_end_to_end(self, field, name):
        M = self.build(field, name)
        cert = run_theorem(M)
        # quotient dim = Hilbert polynomial of P at the colimit degree
        hp = cert.P.hilbert.polynomial_value(cert.colimit_degree)
        assert cert.quotient_dim == hp
        assert cert.quotient_dim > 0
        # witness is genuinely outside (1-x)P, at three thresholds
        for extra in (0, 3, 7):
            top = cert.witness.degree + cert.quotient_dim + extra
            assert solve_one_minus_x(cert.P, cert.x, cert.witness.element,
                                     top) is None

    @pytest.mark.parametrize("name", CASES)
    def test_l_generators_die_in_quotient(self, name):
        M = self.build(PrimeField(5), name)
        cert = run_theorem(M)
        P = cert.P
        for g in cert.L_generators:
            # image of g in P, transported to the colimit basis
            img = P.groebner.normal_form(P.free.element(g.comps))
            if img.is_zero():
                continue
            moved = cert.colimit.transport(img)
            assert not any(moved)

    @pytest.mark.parametrize("name", CASES)
    def test_transport_well_defined(self, name):
        """Reduce-then-transport equals transport of the raw representative."""
        M = self.build(PrimeField(5), name)
        cert = run_theorem(M)
        P = cert.P
        r = M.ring
        rng = random.Random(17)
        for _ in range(20):
            deg = rng.randrange(5)
            monos = r.monomials_of_degree(deg)
            f = r.monomial(monos[rng.randrange(len(monos))],
                           rng.randrange(1, 5))
            raw = P.free.from_polynomial(f)
            reduced = P.groebner.normal_form(raw)
            assert cert.colimit.transport(raw) == \
                cert.colimit.transport(reduced)

    def test_short_rejected(self):
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        M = GradedModule.cyclic(r, [x0 ** 2, x0 * x1, x1 ** 2])
        with pytest.raises(HypothesisViolated):
            run_theorem(M)

    def test_known_dims(self):
        """Quotient dimensions recomputed by the independent colimit oracle.

        For each module, brute-force the stable component dimension of
        P = M/(B M) for the (B, x) the greedy construction returns.
        """
        r = GradedRing(PrimeField(5), 2)
        x0, x1 = r.variables()
        for ideal, expected in (([x0], 1), ([x0 * x1], 1), ([], 1),
                                ([x0 ** 2], 1)):
            M = GradedModule.cyclic(r, ideal)
            cert = run_theorem(M)
            # oracle: stable dimension of P far beyond stabilization
            far = cert.P.hilbert.stabilization_degree + 10
            assert cert.quotient_dim == cert.P.dim(far) == expected
