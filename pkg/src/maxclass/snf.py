"""Smith normal form over the integers with unimodular transforms."""


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A):
    """Return ``(D, U, V)`` with ``U * A * V = D`` diagonal.

    ``U`` and ``V`` are unimodular, the diagonal of ``D`` is nonnegative and
    each nonzero entry divides the next.  Plain Python integers throughout.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return D, U, V


def invert_unimodular(V):
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Z)."""
    k = len(V)
    M = [list(row) + [int(i == j) for j in range(k)] for i, row in enumerate(V)]
    for c in range(k):
        # Euclid down the column until a single +-1 pivot remains
        while True:
            rows = [r for r in range(c, k) if M[r][c]]
            r0 = min(rows, key=lambda r: abs(M[r][c]))
            M[c], M[r0] = M[r0], M[c]
            others = [r for r in range(c + 1, k) if M[r][c]]
            if not others:
                break
            for r in others:
                q = M[r][c] // M[c][c]
                M[r] = [a - q * b for a, b in zip(M[r], M[c])]
        if M[c][c] == -1:
            M[c] = [-a for a in M[c]]
        if M[c][c] != 1:
            raise ValueError("matrix is not unimodular")
        for r in range(k):
            if r != c and M[r][c]:
                q = M[r][c]
                M[r] = [a - q * b for a, b in zip(M[r], M[c])]
    return [row[k:] for row in M]
