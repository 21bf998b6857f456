"""Pure-Python matrix kernels over F_q (fallback backend).

Matrices are flat row-major tuples of canonical field integers.
"""


class FieldTables:
    def __init__(self, ctx):
        self.q = ctx.q
        self.add = ctx._add
        self.mul = ctx._mul
        self.neg = ctx._neg
        self.inv = ctx._inv

    def matmul(self, a, b, m):
        add, mul = self.add, self.mul
        out = [0] * (m * m)
        for i in range(m):
            row = i * m
            for k in range(m):
                aik = a[row + k]
                if aik == 0:
                    continue
                mrow = mul[aik]
                kr = k * m
                for j in range(m):
                    bkj = b[kr + j]
                    if bkj:
                        out[row + j] = add[out[row + j]][mrow[bkj]]
        return tuple(out)

    def conjugate(self, x, g, xinv, m):
        """x g x^-1."""
        return self.matmul(self.matmul(x, g, m), xinv, m)

    def unitri_inv(self, a, m):
        """Inverse of an upper unitriangular matrix by back substitution."""
        add, mul, neg = self.add, self.mul, self.neg
        out = [0] * (m * m)
        for i in range(m - 1, -1, -1):
            out[i * m + i] = 1
            for j in range(i + 1, m):
                # (a^-1)_{ij} = -sum_{i<k<=j} a_{ik} (a^-1)_{kj}
                s = 0
                for k in range(i + 1, j + 1):
                    aik = a[i * m + k]
                    if aik:
                        okj = out[k * m + j]
                        if okj:
                            s = add[s][mul[aik][okj]]
                out[i * m + j] = neg[s]
        return tuple(out)

    def det(self, rows):
        """Determinant of a square list-of-lists by Gaussian elimination."""
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        mat = [list(r) for r in rows]
        n = len(mat)
        result = 1
        for c in range(n):
            piv = None
            for r in range(c, n):
                if mat[r][c]:
                    piv = r
                    break
            if piv is None:
                return 0
            if piv != c:
                mat[c], mat[piv] = mat[piv], mat[c]
                result = neg[result]
            pv = mat[c][c]
            result = mul[result][pv]
            pinv = inv[pv]
            prow = mat[c]
            for r in range(c + 1, n):
                f = mat[r][c]
                if f:
                    f = neg[mul[f][pinv]]
                    mf = mul[f]
                    row = mat[r]
                    for k in range(c, n):
                        if prow[k]:
                            row[k] = add[row[k]][mf[prow[k]]]
        return result

    def minor(self, a, m, rows, cols):
        """Determinant of the submatrix of flat ``a`` on the given positions."""
        return self.det([[a[r * m + c] for c in cols] for r in rows])
