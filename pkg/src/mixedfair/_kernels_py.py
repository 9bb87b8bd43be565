"""Pure-Python enumeration kernels.

Same contract as the compiled ``_kernels`` module; used when the extension is
not built or ``MIXEDFAIR_PURE_PYTHON`` is set.  ``U`` is an ``n x m`` integer
matrix (rows already scaled to integers).  Complete allocations are visited in
canonical order: the assignment ``a`` is read as a base-``n`` number with item
0 as the most significant digit, so the last item changes fastest.  Kernels
report an allocation by that number (its *code*), or -1 for none.
"""

EF = 1
PROP = 2
EF1 = 4
PROP1 = 8
EFX = 16
PO = 32


def _rows(U):
    return [list(map(int, row)) for row in U]


def find_dominating(U, base):
    """Code of the first complete allocation Pareto-dominating ``base``, else -1."""
    U = _rows(U)
    n = len(U)
    m = len(U[0]) if n else 0
    base = [int(b) for b in base]
    a = [0] * m
    vals = [0] * n
    vals[0] = sum(U[0])
    code = 0
    while True:
        ge = True
        gt = False
        for i in range(n):
            if vals[i] < base[i]:
                ge = False
                break
            if vals[i] > base[i]:
                gt = True
        if ge and gt:
            return code
        j = m - 1
        while j >= 0:
            old = a[j]
            if old + 1 < n:
                a[j] = old + 1
                vals[old] -= U[old][j]
                vals[old + 1] += U[old + 1][j]
                break
            a[j] = 0
            vals[old] -= U[old][j]
            vals[0] += U[0][j]
            j -= 1
        if j < 0:
            return -1
        code += 1


def pareto_frontier_values(U):
    """Distinct utility vectors of the non-dominated complete allocations."""
    U = _rows(U)
    n = len(U)
    m = len(U[0]) if n else 0
    a = [0] * m
    vals = [0] * n
    vals[0] = sum(U[0])
    frontier = []
    while True:
        covered = False
        for f in frontier:
            if all(f[i] >= vals[i] for i in range(n)):
                covered = True
                break
        if not covered:
            frontier = [f for f in frontier if not all(vals[i] >= f[i] for i in range(n))]
            frontier.append(tuple(vals))
        j = m - 1
        while j >= 0:
            old = a[j]
            if old + 1 < n:
                a[j] = old + 1
                vals[old] -= U[old][j]
                vals[old + 1] += U[old + 1][j]
                break
            a[j] = 0
            vals[old] -= U[old][j]
            vals[0] += U[0][j]
            j -= 1
        if j < 0:
            return sorted(frontier)


def _satisfies(U, n, m, a, flags, totals, frontier):
    # W[i][k] = u_i(bundle of k)
    W = [[0] * n for _ in range(n)]
    hi = [[None] * n for _ in range(n)]      # max u_i over bundle k
    lo = [[None] * n for _ in range(n)]      # min u_i over bundle k
    minpos = [[None] * n for _ in range(n)]  # smallest positive u_i in bundle k
    maxneg = [[None] * n for _ in range(n)]  # largest negative u_i in bundle k
    for j in range(m):
        k = a[j]
        for i in range(n):
            v = U[i][j]
            W[i][k] += v
            if hi[i][k] is None or v > hi[i][k]:
                hi[i][k] = v
            if lo[i][k] is None or v < lo[i][k]:
                lo[i][k] = v
            if v > 0 and (minpos[i][k] is None or v < minpos[i][k]):
                minpos[i][k] = v
            if v < 0 and (maxneg[i][k] is None or v > maxneg[i][k]):
                maxneg[i][k] = v
    for i in range(n):
        own = W[i][i]
        if flags & PROP and n * own < totals[i]:
            return False
        if flags & PROP1 and n * own < totals[i]:
            gain = max((hi[i][k] for k in range(n) if k != i and hi[i][k] is not None), default=None)
            ok = gain is not None and n * (own + gain) >= totals[i]
            if not ok and lo[i][i] is not None:
                ok = n * (own - lo[i][i]) >= totals[i]
            if not ok:
                return False
        for k in range(n):
            if k == i:
                continue
            other = W[i][k]
            if own < other:
                if flags & EF:
                    return False
                if flags & EF1:
                    ok = hi[i][k] is not None and own >= other - hi[i][k]
                    if not ok and lo[i][i] is not None:
                        ok = own - lo[i][i] >= other
                    if not ok:
                        return False
            if flags & EFX:
                if maxneg[i][i] is not None and own - maxneg[i][i] < other:
                    return False
                if minpos[i][k] is not None and own < other - minpos[i][k]:
                    return False
    if flags & PO:
        for f in frontier:
            ge = True
            gt = False
            for i in range(n):
                if f[i] < W[i][i]:
                    ge = False
                    break
                if f[i] > W[i][i]:
                    gt = True
            if ge and gt:
                return False
    return True


def first_satisfying(U, flags, frontier=None):
    """Code of the first complete allocation meeting every property in ``flags``.

    ``frontier`` (from :func:`pareto_frontier_values`) is required when the
    ``PO`` bit is set.
    """
    U = _rows(U)
    n = len(U)
    m = len(U[0]) if n else 0
    if flags & PO and frontier is None:
        frontier = pareto_frontier_values(U)
    totals = [sum(row) for row in U]
    a = [0] * m
    code = 0
    while True:
        if _satisfies(U, n, m, a, flags, totals, frontier):
            return code
        j = m - 1
        while j >= 0:
            if a[j] + 1 < n:
                a[j] += 1
                break
            a[j] = 0
            j -= 1
        if j < 0:
            return -1
        code += 1
