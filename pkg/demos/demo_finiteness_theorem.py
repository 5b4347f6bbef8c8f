"""The finiteness construction, stage by stage, on M = S/(X0*X1).

For a long, simply graded module the construction produces a
non-saturated submodule L whose quotient M/L is a finite-dimensional
vector space.  Every stage below is certified by exact linear algebra:
the maximal variable subset B, the colimit degree where multiplication by
the flip variable x becomes bijective, and a witness class that provably
lies outside (1-x)P.
"""

from gradedmod import GradedModule, GradedRing, run_theorem
from gradedmod.cartier import solve_one_minus_x
from gradedmod.coeff import PrimeField


def main():
    ring = GradedRing(PrimeField(5), 2)
    x0, x1 = ring.variables()
    M = GradedModule.cyclic(ring, [x0 * x1])
    print("M = S/(X0*X1) over GF(5), dims:", [M.dim(k) for k in range(6)])

    cert = run_theorem(M)
    print("maximal subset B =", [repr(b) for b in cert.B],
          " flip variable x =", cert.x)
    print("P = M/(B*M) dims:", [cert.P.dim(k) for k in range(6)])
    print("colimit degree D =", cert.colimit_degree,
          " (x is bijective on P_k for k >= D)")
    print("dim M/L =", cert.quotient_dim, "-- finite, as the theorem asserts")

    w = cert.witness
    print(f"witness: class of degree {w.degree} with nonzero transport",
          [repr(c) for c in w.transport_image])
    top = w.degree + cert.quotient_dim + 5
    sol = solve_one_minus_x(cert.P, cert.x, w.element, top)
    print("independent check that v = (1-x)u has no solution up to degree",
          top, "->", "unsolvable" if sol is None else "SOLVED (bug!)")

    print("generators of L:",
          [repr(g.comps[0]) for g in cert.L_generators])


if __name__ == "__main__":
    main()
