"""Acceptance suite: the seven property/oracle criteria, one test each.

Each test prints a single PASS/FAIL line so the suite doubles as a report.
Expected values marked as hand-derived in the criteria were recomputed here
by independent oracles; one deviation from the original figure for the
double-line module is documented in the project notes.
"""

import itertools
import json
import pathlib
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from gradedmod.cartier import dichotomy_check, run_theorem, solve_one_minus_x
from gradedmod.coeff import QQ, PrimeField
from gradedmod.graded import (
    GradedModule,
    check_simple_grading,
    classify_length,
    product_submodule,
)
from gradedmod.groebner import ideal_basis, spair_reduces_to_zero
from gradedmod.krull import FiniteAlgebra, ideal_generate, krull_check, \
    stable_intersection
from gradedmod.poly import GradedRing, mono_divides
from gradedmod.zeros import brute_force_zero, nullstellensatz, verify_zero

JOBS = pathlib.Path(__file__).resolve().parent.parent / "jobs"


def report(n, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"{status} criterion {n}: {label}{suffix}")
    assert ok, f"criterion {n} failed: {label} {detail}"


def rand_homogeneous(ring, rng, deg, terms=3):
    monos = ring.monomials_of_degree(deg)
    out = ring.zero
    for _ in range(rng.randrange(1, terms + 1)):
        c = rng.randrange(1, ring.field.order) if ring.field.is_finite \
            else rng.randrange(1, 6)
        out = out + ring.monomial(monos[rng.randrange(len(monos))], c)
    return out


def rand_presented_module(ring, rng, max_gen_deg=3, max_rels=4, max_rel_deg=4):
    degrees = tuple(rng.randrange(max_gen_deg + 1)
                    for _ in range(rng.randrange(1, 3)))
    free = GradedModule(ring, degrees, ()).free
    rels = []
    for _ in range(rng.randrange(max_rels + 1)):
        d = rng.randrange(1, max_rel_deg + 1)
        comps = []
        for gd in degrees:
            if d - gd >= 0 and rng.randrange(2):
                comps.append(rand_homogeneous(ring, rng, d - gd))
            else:
                comps.append(ring.zero)
        if any(comps):
            rels.append(free.element(tuple(comps)))
    return GradedModule(ring, degrees, rels)


def test_criterion_1_technical_lemma():
    start = time.monotonic()
    rng = random.Random(1001)
    ring = GradedRing(PrimeField(7), 3)
    checked = 0
    for _ in range(50):
        M = rand_presented_module(ring, rng)
        rep = check_simple_grading(M)
        assert rep.first_simple_degree <= max(M.generator_degrees, default=0)
        top = M.hilbert.stabilization_degree + 5
        for k in range(rep.first_simple_degree, top + 1):
            rows, _ = M.s1_image_rows(k)
            assert len(rows) == M.dim(k + 1), (k, M)
        checked += 1
    elapsed = time.monotonic() - start
    report(1, "technical lemma on 50 seeded modules over GF(7)[X0,X1,X2]",
           checked == 50 and elapsed < 60.0, f"{elapsed:.1f}s")


def test_criterion_2_dichotomy():
    start = time.monotonic()
    rng = random.Random(2002)
    ring = GradedRing(PrimeField(5), 3)
    variables = ring.variables()
    ideals_checked = 0
    while ideals_checked < 10:
        gens = [rand_homogeneous(ring, rng, rng.randrange(1, 4))
                for _ in range(rng.randrange(1, 3))]
        M = GradedModule.cyclic(ring, gens)
        if classify_length(M).is_short:
            continue
        ideals_checked += 1
        for size in range(len(variables) + 1):
            for B in itertools.combinations(variables, size):
                verdict = dichotomy_check(M, list(B))
                Q = product_submodule(list(B), M).quotient()
                for k in range(verdict.from_degree, verdict.from_degree + 5):
                    if verdict.eventually_equal:
                        assert Q.dim(k) == 0, (gens, B, k)
                    else:
                        assert Q.dim(k) > 0, (gens, B, k)
    elapsed = time.monotonic() - start
    report(2, "dichotomy verdicts vs raw dimensions, 10 ideals x 8 subsets",
           True, f"{elapsed:.1f}s")


def test_criterion_3_finiteness_theorem():
    start = time.monotonic()
    # expected quotient dimensions recomputed by hand for the greedy B:
    # for S/(X0^2), B = {X0} (quotient S/(X0) stays long), so P = S/(X0)
    # and dim M/L = 1; see the decisions ledger for the full derivation.
    expected = {"free": 1, "hyperplane": 1, "curve": 1, "double": 1}
    for field in (PrimeField(5), QQ):
        ring = GradedRing(field, 2)
        x0, x1 = ring.variables()
        ideals = {"free": [], "hyperplane": [x0], "curve": [x0 * x1],
                  "double": [x0 ** 2]}
        for name, gens in ideals.items():
            cert = run_theorem(GradedModule.cyclic(ring, gens))
            hp = cert.P.hilbert.polynomial_value(cert.colimit_degree)
            assert Fraction(cert.quotient_dim) == hp
            assert cert.quotient_dim > 0
            assert cert.quotient_dim == expected[name], (name, field)
            # independent oracle: stable component dimension far out
            far = cert.P.hilbert.stabilization_degree + 10
            assert cert.P.dim(far) == cert.quotient_dim
            for extra in (0, 3, 7):
                top = cert.witness.degree + cert.quotient_dim + extra
                assert solve_one_minus_x(cert.P, cert.x,
                                         cert.witness.element, top) is None
    elapsed = time.monotonic() - start
    report(3, "finiteness theorem end-to-end over GF(5) and Q",
           elapsed < 60.0, f"{elapsed:.1f}s")


def test_criterion_4_nullstellensatz_oracle():
    start = time.monotonic()
    rng = random.Random(4004)
    cases = 0
    disagreements = 0
    for p in (2, 3):
        field = PrimeField(p)
        while cases < (10 if p == 2 else 20):
            n = rng.randrange(2, 4)
            ring = GradedRing(field, n)
            gens = []
            for _ in range(rng.randrange(1, 3)):
                f = rand_homogeneous(ring, rng, rng.randrange(1, 4))
                if f:
                    gens.append(f)
            if not gens:
                continue
            cases += 1
            result = nullstellensatz(gens, ring, seed=rng.randrange(1000))
            brute = brute_force_zero(gens, max_ext=3, ring=ring)
            hilb = GradedModule.cyclic(ring, gens).hilbert
            if result.status == "saturated":
                if brute is not None or not hilb.is_eventually_zero():
                    disagreements += 1
            else:
                if (result.status != "zero" or brute is None
                        or hilb.is_eventually_zero()
                        or not verify_zero(gens, result.point)):
                    disagreements += 1
    # curated instance: the conic with no rational point over GF(2)
    ring = GradedRing(PrimeField(2), 2)
    x0, x1 = ring.variables()
    conic = [x0 ** 2 + x0 * x1 + x1 ** 2]
    result = nullstellensatz(conic, ring)
    assert result.status == "zero"
    assert result.point.field.order == 4
    assert verify_zero(conic, result.point)
    assert brute_force_zero(conic, max_ext=1) is None
    assert brute_force_zero(conic, max_ext=2) is not None
    elapsed = time.monotonic() - start
    report(4, "nullstellensatz vs brute force on 20 seeded ideals + conic",
           disagreements == 0 and elapsed < 120.0,
           f"{elapsed:.1f}s, {disagreements} disagreements")


def _univariate_quotient(field, poly_coeffs):
    from gradedmod.coeff import UniPoly
    f = UniPoly(field, [field(c) for c in poly_coeffs])
    d = f.degree

    def coords(g):
        g = g % f
        return tuple(g[i] for i in range(d))

    def tpow(i):
        return UniPoly(field, [field.zero] * i + [field.one])

    sc = tuple(tuple(coords(tpow(i) * tpow(j)) for j in range(d))
               for i in range(d))
    return FiniteAlgebra(field, tuple(f"t^{i}" for i in range(d)), sc,
                         coords(UniPoly.constant(field, field.one)))


def test_criterion_5_krull():
    start = time.monotonic()
    rng = random.Random(5005)
    nonzero_n_seen = False
    count = 0
    for field in (PrimeField(5), QQ):
        for _ in range(15):
            kind = rng.randrange(2)
            if kind == 0:
                d = rng.randrange(2, 7)
                coeffs = [rng.randrange(-3, 4) if field is QQ
                          else rng.randrange(5) for _ in range(d)] + [1]
                R = _univariate_quotient(field, coeffs)
            else:
                ring = GradedRing(field, 2)
                x0, x1 = ring.variables()
                R = FiniteAlgebra.from_quotient(
                    ring, [x0 ** rng.randrange(1, 3),
                           x1 ** rng.randrange(1, 3)])
            gens = [R.element(tuple(
                field(rng.randrange(-2, 3)) if field is QQ
                else field(rng.randrange(5)) for _ in range(R.dim)))]
            a = ideal_generate(R, gens)
            _, stabilized = stable_intersection(a, R.full_space())
            assert stabilized <= R.dim + 1
            rep = krull_check(R, gens, seed=rng.randrange(1000))
            assert rep.all_hold
            if rep.intersection_dim > 0:
                nonzero_n_seen = True
            count += 1
    # curated instances: idempotent (N != 0) and nilpotent (N = 0)
    R = _univariate_quotient(PrimeField(5), [0, -1, 1])  # F[e]/(e^2 - e)
    rep = krull_check(R, [R.element((0, 1))])
    assert rep.all_hold and rep.intersection_dim == 1
    nonzero_n_seen = True
    R = _univariate_quotient(PrimeField(5), [0, 0, 0, 1])  # F[t]/(t^3)
    rep = krull_check(R, [R.element((0, 1, 0))])
    assert rep.all_hold and rep.intersection_dim == 0
    elapsed = time.monotonic() - start
    report(5, "Krull identity on 30 seeded algebras + curated instances",
           count >= 30 and nonzero_n_seen and elapsed < 30.0,
           f"{elapsed:.1f}s")


def test_criterion_6_kernel_correctness():
    start = time.monotonic()
    rng = random.Random(6006)
    # (a) every S-pair of every computed basis reduces to zero
    ring = GradedRing(PrimeField(5), 3)
    for _ in range(15):
        gens = [rand_homogeneous(ring, rng, rng.randrange(1, 4))
                for _ in range(rng.randrange(1, 4))]
        gb = ideal_basis(ring, gens)
        for i, j in itertools.combinations(range(len(gb.generators)), 2):
            assert spair_reduces_to_zero(gb, i, j)
    # (b) Hilbert function vs brute standard-monomial counts, degrees <= 12
    for _ in range(15):
        n = rng.randrange(2, 4)
        r = GradedRing(PrimeField(5), n)
        monos = [tuple(rng.randrange(4) for _ in range(n))
                 for _ in range(rng.randrange(1, 4))]
        monos = [m for m in monos if any(m)]
        if not monos:
            continue
        hd = ideal_basis(r, [r.monomial(m, 1) for m in monos]).hilbert_data()
        for k in range(13):
            count = sum(1 for m in r.monomials_of_degree(k)
                        if not any(mono_divides(g, m) for g in monos))
            assert hd.function(k) == count
    # (c) Hilbert data invariant across the two degree-refining orders
    r1 = GradedRing(PrimeField(7), 3, "degrevlex")
    r2 = GradedRing(PrimeField(7), 3, "deglex")
    for _ in range(30):
        gens = [rand_homogeneous(r1, rng, rng.randrange(1, 4))
                for _ in range(rng.randrange(1, 3))]
        hd1 = ideal_basis(r1, gens).hilbert_data()
        hd2 = ideal_basis(r2, [r2.from_string(repr(g))
                               for g in gens]).hilbert_data()
        top = max(hd1.stabilization_degree, hd2.stabilization_degree) + 5
        assert all(hd1.function(k) == hd2.function(k) for k in range(top))
        assert hd1.hilbert_polynomial == hd2.hilbert_polynomial
    elapsed = time.monotonic() - start
    report(6, "kernel: S-pairs, brute Hilbert counts, order invariance",
           True, f"{elapsed:.1f}s")


def test_criterion_7_cli_fixtures(tmp_path):
    jobs = sorted(JOBS.glob("*.job"))
    assert jobs, "no job fixtures checked in"
    mismatches = []
    for job in jobs:
        expected = job.with_suffix("").with_suffix(".expected.json")
        out = tmp_path / (job.stem + ".json")
        result = subprocess.run(
            [sys.executable, "-m", "gradedmod.cli", str(job),
             "--seed", "0", "--json", str(out)],
            capture_output=True, text=True)
        if result.returncode != 0:
            mismatches.append((job.name, "exit " + str(result.returncode)))
            continue
        if out.read_bytes() != expected.read_bytes():
            mismatches.append((job.name, "JSON mismatch"))
    report(7, f"CLI fixtures byte-for-byte ({len(jobs)} jobs)",
           not mismatches, str(mismatches) if mismatches else "")
