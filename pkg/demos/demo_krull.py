"""Krull's intersection theorem checked exactly on small algebras.

On a finite-dimensional algebra, ideal powers are computable subspaces,
so the chain aM >= a^2 M >= ... stabilizes visibly and the theorem's
conclusion N = aN is a finite linear-algebra fact.  Two contrasting
cases: a nilpotent generator (the intersection is zero) and an idempotent
one (the intersection is nonzero and still satisfies N = aN).
"""

from gradedmod import FiniteAlgebra, GradedRing, krull_check
from gradedmod.coeff import PrimeField


def show(title, R, a_gens):
    print(title)
    report = krull_check(R, a_gens)
    print("  chain a M >= a^2 M >= ... stabilized at step",
          report.stabilized_at)
    print("  N = intersection of all a^i M has dimension",
          report.intersection_dim)
    for case in report.cases:
        mark = "ok" if case.holds else "VIOLATION"
        print(f"  aN = N on {case.description}: dim {case.n_dim} -> "
              f"{case.an_dim} [{mark}]")
    print()


def main():
    F = PrimeField(5)
    ring = GradedRing(F, 2)
    x0, x1 = ring.variables()

    # local: GF(5)[X0,X1]/(X0^2, X0*X1, X1^2), maximal ideal is nilpotent
    R = FiniteAlgebra.from_quotient(ring, [x0 ** 2, x0 * x1, x1 ** 2])
    show("nilpotent case: S/(X0^2, X0*X1, X1^2), a = (x0, x1)",
         R, [R.distinguished_images[0], R.distinguished_images[1]])

    # idempotent: GF(5)[X0,X1]/(X0^2 - ...) realized as F[e]/(e^2 - e)
    # via the quotient by (X0^2 - X0, X1): basis {1, x0} with x0^2 = x0.
    z, o = F.zero, F.one
    sc = (((o, z), (z, o)), ((z, o), (z, o)))  # basis 1, e with e^2 = e
    R2 = FiniteAlgebra(F, ("1", "e"), sc, (o, z))
    show("idempotent case: F[e]/(e^2 - e), a = (e)", R2, [(z, o)])
    print("the idempotent case is the interesting branch: N is nonzero,")
    print("and the theorem still forces aN = N exactly.")


if __name__ == "__main__":
    main()
