"""Smith normal form over the integers (Python ints, so no overflow)."""


def smith_diagonal(matrix):
    """Nonzero diagonal entries of the Smith normal form of an integer matrix.

    The result is a list d_1 | d_2 | ... | d_r of positive integers, r being
    the rank.  Pivots are chosen by minimal absolute value, which keeps the
    entries small on the sparse +-1 matrices produced by cube complexes.
    """
    a = [list(map(int, row)) for row in matrix]
    a = [row for row in a if any(row)]
    diag = []
    while a:
        ncols = len(a[0])
        # pivot: smallest nonzero |entry|
        best = None
        for i, row in enumerate(a):
            for j, v in enumerate(row):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            p = a[pi][pj]
            dirty = False
            # clear the pivot column
            for i in range(len(a)):
                if i != pi and a[i][pj]:
                    q = a[i][pj] // p
                    if q:
                        ri, rp = a[i], a[pi]
                        for j in range(ncols):
                            if rp[j]:
                                ri[j] -= q * rp[j]
                    if a[i][pj]:
                        dirty = True
            # clear the pivot row
            rp = a[pi]
            for j in range(ncols):
                if j != pj and rp[j]:
                    q = rp[j] // p
                    if q:
                        for row in a:
                            if row[pj]:
                                row[j] -= q * row[pj]
                    if rp[j]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared in the pivot row or column: move there
            cand = [(abs(a[i][pj]), i, pj) for i in range(len(a)) if a[i][pj]]
            cand += [(abs(rp[j]), pi, j) for j in range(ncols) if rp[j]]
            _, pi, pj = min(cand)
        p = abs(a[pi][pj])
        del a[pi]
        for row in a:
            del row[pj]
        a = [row for row in a if any(row)]
        diag.append(p)
    return _divisor_chain(diag)


def _divisor_chain(diag):
    # turn any diagonal into the d_1 | d_2 | ... form by gcd/lcm swaps
    from math import gcd
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def rank(matrix):
    return len(smith_diagonal(matrix))
