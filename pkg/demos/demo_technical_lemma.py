"""Simple grading and finite generation on a two-generator module.

Builds the module presented by generators of degrees 2 and 3 with one
Koszul relation (the ideal (X0^2, X1^3) viewed abstractly), then shows
that the dimension data certifies simple grading from a finite degree and
that the minimal generator degrees can be read off the S_1-image gaps.
"""

from gradedmod import (
    QQ,
    GradedModule,
    GradedRing,
    check_simple_grading,
    classify_length,
    minimal_generator_degrees,
)


def main():
    ring = GradedRing(QQ, 2)
    x0, x1 = ring.variables()

    free = GradedModule(ring, (2, 3), ()).free
    syzygy = free.element((x1 ** 3, -(x0 ** 2)))
    M = GradedModule(ring, (2, 3), (syzygy,))

    print("module on generators of degrees 2 and 3, one relation")
    print("Hilbert function:", [M.dim(k) for k in range(8)])
    print("length:", classify_length(M).kind)

    report = check_simple_grading(M)
    print(f"simple grading certified from degree {report.first_simple_degree}"
          f" (every S_1*M_k = M_(k+1) from there on,"
          f" verified through degree {report.verified_through})")

    degs = minimal_generator_degrees(M)
    print("minimal generator degrees:", degs)
    print("so M is finitely generated over S by", len(degs), "elements,")
    print("which is exactly what the simple grading promises.")


if __name__ == "__main__":
    main()
