"""3x3 matrices and 3-vectors over any scalar ring of the package.

Plain tuples are used for vectors so the same code serves rationals,
Q(sqrt m), rational functions and BigFloats.
"""


class SingularMatrixError(ZeroDivisionError):
    pass


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def vscale(k, v):
    return tuple(k * x for x in v)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def is_zero_vec(v):
    return not any(v)


def proportional(u, v):
    """True if u and v are nonzero and scalar multiples of each other."""
    if is_zero_vec(u) or is_zero_vec(v):
        return False
    return is_zero_vec(cross(u, v))


class Mat3:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs three rows of three entries")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @classmethod
    def from_columns(cls, c1, c2, c3):
        return cls(zip(c1, c2, c3))

    @classmethod
    def identity(cls, one=1):
        z = one * 0
        return cls(((one, z, z), (z, one, z), (z, z, one)))

    @classmethod
    def diag(cls, a, b, c):
        z = a * 0
        return cls(((a, z, z), (z, b, z), (z, z, c)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def T(self):
        return Mat3(zip(*self.rows))

    def map(self, f):
        return Mat3([[f(x) for x in r] for r in self.rows])

    def entries(self):
        return [x for r in self.rows for x in r]

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, Mat3):
            cols = [other.col(j) for j in range(3)]
            return Mat3([[dot(r, c) for c in cols] for r in self.rows])
        v = tuple(other)
        if len(v) != 3:
            return NotImplemented
        return tuple(dot(r, v) for r in self.rows)

    def __add__(self, other):
        return Mat3([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat3([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, k):
        if isinstance(k, Mat3):
            return NotImplemented
        return self.map(lambda x: x * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self.map(lambda x: x / k)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = Mat3.identity(self.rows[0][0] * 0 + 1)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(type(x).__name__ for x in self.entries()))

    # -- invariants ---------------------------------------------------------
    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def adj(self):
        """Classical adjugate: ``M @ adj(M) == det(M) * I``."""
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return Mat3((
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        ))

    def second_invariant(self):
        """Sum of principal 2x2 minors."""
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return (a * e - b * d) + (a * i - c * g) + (e * i - f * h)

    def charpoly(self):
        """Coefficients ``[1, c2, c1, c0]`` of ``det(x I - M)``."""
        return [1, -self.trace(), self.second_invariant(), -self.det()]

    def inv(self):
        d = self.det()
        if not d:
            raise SingularMatrixError("matrix is singular")
        return self.adj() / d

    def is_scalar(self):
        r = self.rows
        z = all(not r[i][j] for i in range(3) for j in range(3) if i != j)
        return z and r[0][0] == r[1][1] == r[2][2]

    def proportional_to(self, other):
        """True if ``self = k*other`` for a nonzero scalar k (cross-multiplied)."""
        a, b = self.entries(), other.entries()
        pivot = next((j for j, x in enumerate(b) if x), None)
        if pivot is None or not a[pivot]:
            return False
        return all(x * b[pivot] == y * a[pivot] for x, y in zip(a, b))

    def __repr__(self):
        return "Mat3(" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + ")"


def act_point(M, p):
    return M @ p


def act_line(M, L):
    """Lines move by the inverse transpose, which preserves incidence."""
    return M.inv().T @ L


def duality_conjugate(S):
    """``M = (S^-1)^t S^-1``, so that ``S . Delta . S^-1 = Delta . M``."""
    Si = S.inv()
    return Si.T @ Si
