"""Dense exact row reduction over an arbitrary coefficient field.

Matrices are plain lists of lists of FieldElement.  Everything here is
small (component dimensions at desk scale), so clarity beats asymptotics.
"""

from __future__ import annotations


def rref(rows):
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  The reduced rows
    are a canonical basis of the row space: equality of subspaces is
    equality of these rows.
    """
    if not rows:
        return [], []
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inv()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [x - c * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def reduce_against(basis, pivots, vec):
    """Residual of vec after elimination by an rref basis."""
    v = list(vec)
    for row, col in zip(basis, pivots):
        c = v[col]
        if c:
            v = [x - c * y for x, y in zip(v, row)]
    return v


def in_span(basis, pivots, vec) -> bool:
    return not any(reduce_against(basis, pivots, vec))


def solve(rows, target):
    """Coefficients c with sum c_i * rows_i = target, or None.

    rows are arbitrary vectors (not necessarily independent); a particular
    solution is returned.
    """
    if not rows:
        return [] if not any(target) else None
    ncols = len(rows[0])
    nrows = len(rows)
    # augment with identity to track the combination
    field = None
    for r in rows:
        for x in r:
            field = x.field
            break
        if field:
            break
    if field is None:
        for x in target:
            field = x.field
            break
    zero, one = field.zero, field.one
    aug = [list(r) + [one if i == j else zero for j in range(nrows)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    # only pivots within the original columns carry content
    v = list(target) + [zero] * nrows
    for row, col in zip(red, pivots):
        if col >= ncols:
            break
        c = v[col]
        if c:
            v = [x - c * y for x, y in zip(v, row)]
    if any(v[:ncols]):
        return None
    return [-x for x in v[ncols:]]


def intersect(basis_a, basis_b):
    """Basis of the intersection of two row spaces (Zassenhaus)."""
    if not basis_a or not basis_b:
        return []
    n = len(basis_a[0])
    field = basis_a[0][0].field
    zero = field.zero
    block = []
    for r in basis_a:
        block.append(list(r) + list(r))
    for r in basis_b:
        block.append(list(r) + [zero] * n)
    red, pivots = rref(block)
    out = []
    for row, col in zip(red, pivots):
        if col >= n:
            out.append(row[n:])
    return rref(out)[0]
