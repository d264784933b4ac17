"""Exact Gaussian elimination over Fraction or GF(p) scalars.

Dense helpers work on lists of rows.  `SparseEchelon` keeps a fully reduced
sparse row basis whose pivots are the largest column index of each row; it is
the workhorse behind normal forms (columns are paths sorted by the path order,
so the pivot of a row is its leading path).
"""


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, len(m)):
            if m[k][c] != 0:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols, zero):
    """Basis of {x : A x = 0} for A given by rows with ncols columns."""
    if not rows:
        return [[zero + (1 if i == j else 0) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(rows, zero):
    """Basis of {y : y A = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    return nullspace(transpose(rows, ncols), len(rows), zero)


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*rows)]


def matmul(a, b, zero):
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(r, c)), zero) for c in bt] for r in a]


def vecmat(v, m, zero, ncols):
    out = [zero] * ncols
    for x, row in zip(v, m):
        if x != 0:
            for j, y in enumerate(row):
                if y != 0:
                    out[j] = out[j] + x * y
    return out


def determinant(m, zero):
    n = len(m)
    a = [list(r) for r in m]
    det = zero + 1
    for c in range(n):
        piv = next((k for k in range(c, n) if a[k][c] != 0), None)
        if piv is None:
            return zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for k in range(c + 1, n):
            if a[k][c] != 0:
                f = a[k][c] * inv
                a[k] = [x - f * y for x, y in zip(a[k], a[c])]
    return det


def solve_in_span(basis_rows, target, zero):
    """Coefficients c with sum c_k basis_k = target, or None."""
    n = len(basis_rows)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    # columns of the system are the basis vectors
    aug = [[basis_rows[k][j] for k in range(n)] + [target[j]] for j in range(len(target))]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    sol = [zero] * n
    for row, p in zip(red, pivots):
        sol[p] = row[n]
    return sol


class SparseEchelon:
    """Fully reduced sparse rows {col: coef}; pivot of a row = its max column."""

    def __init__(self):
        self.rows = {}

    def reduce(self, vec):
        v = {k: c for k, c in vec.items() if c != 0}
        # rows are fully reduced, so one pass over the pivots present suffices
        for p in [k for k in v if k in self.rows]:
            f = v[p]
            for k, c in self.rows[p].items():
                nv = v.get(k, 0) - f * c
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def add(self, vec):
        """Insert vec; returns True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self.rows.items():
            f = row.get(p)
            if f is not None and f != 0:
                for k, c in v.items():
                    nv = row.get(k, 0) - f * c
                    if nv == 0:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        self.rows[p] = v
        return True

    def __contains__(self, vec):
        return not self.reduce(vec)

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)
