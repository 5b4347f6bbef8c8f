"""A homogeneous ideal with no rational zero acquires one over GF(4).

The conic X0^2 + X0*X1 + X1^2 over GF(2) has no zero in P^1(GF(2)) --
brute force checks all three points -- yet it is not saturated, so the
certificate route must find a zero over some finite extension.  It does,
over GF(4), and the point is verified by direct evaluation.
"""

from gradedmod import GradedRing, brute_force_zero, nullstellensatz, verify_zero
from gradedmod.coeff import PrimeField


def main():
    ring = GradedRing(PrimeField(2), 2)
    x0, x1 = ring.variables()
    conic = [x0 ** 2 + x0 * x1 + x1 ** 2]
    print("ideal: (X0^2 + X0*X1 + X1^2) over GF(2)")

    print("brute force over GF(2):",
          brute_force_zero(conic, max_ext=1) or "no zero")
    print("brute force through GF(4):", brute_force_zero(conic, max_ext=2))

    result = nullstellensatz(conic, ring)
    print("certificate route:", result.status, "at", result.point,
          "over", result.point.field)
    print("algebra dimension along the way:", result.algebra.dim)
    print("verified by evaluation:", verify_zero(conic, result.point))

    # contrast: the irrelevant ideal is saturated and has no projective zero
    print("\nideal (X0, X1):",
          nullstellensatz(list(ring.variables()), ring).status)


if __name__ == "__main__":
    main()
