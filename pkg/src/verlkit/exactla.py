"""Exact integer linear algebra: Smith normal form, kernels, cokernels.

Everything here works over Z with arbitrary-precision integers.  The central
object is :class:`IntMatrix` (immutable, row-major); on top of it sit the
Smith normal form with full unimodular transform tracking, kernel and
cokernel extraction, and :class:`FGAbelianGroup`, the invariant-factor
presentation of a finitely generated abelian group that every downstream
computation reports its answers in.
"""

from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """An immutable integer matrix stored row-major.

    >>> M = IntMatrix.from_rows([[2, 4], [6, 8]])
    >>> M.shape
    (2, 2)
    >>> M[1, 0]
    6
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(int(x) for x in data)
        if len(data) != rows * cols:
            raise ValueError(
                "expected %d entries, got %d" % (rows * cols, len(data))
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rows(cls, rows_list) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        r = len(rows_list)
        c = len(rows_list[0]) if rows_list else 0
        if any(len(row) != c for row in rows_list):
            raise ValueError("ragged rows")
        return cls(r, c, [x for row in rows_list for x in row])

    @classmethod
    def from_cols(cls, cols_list) -> "IntMatrix":
        cols_list = [list(c) for c in cols_list]
        c = len(cols_list)
        r = len(cols_list[0]) if cols_list else 0
        if any(len(col) != r for col in cols_list):
            raise ValueError("ragged columns")
        return cls(r, c, [cols_list[j][i] for i in range(r) for j in range(c)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    # -- basic queries ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.data[i * self.cols + j]

    def row(self, i):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.data))

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)]
        )

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [-a for a in self.data])

    def __mul__(self, other):
        """Matrix product, or scalar product when `other` is an int.

        >>> (IntMatrix.identity(2) * 3).data
        (3, 0, 0, 3)
        """
        if isinstance(other, int):
            return IntMatrix(self.rows, self.cols, [a * other for a in self.data])
        if self.cols != other.rows:
            raise ValueError("inner dimensions mismatch")
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for t in range(self.cols):
                a = self.data[base + t]
                if a == 0:
                    continue
                obase = t * other.cols
                rbase = i * other.cols
                for j in range(other.cols):
                    out[rbase + j] += a * other.data[obase + j]
        return IntMatrix(self.rows, other.cols, out)

    __rmul__ = __mul__

    def transpose(self):
        return IntMatrix(
            self.cols,
            self.rows,
            [self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def mul_vec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(self.data[i * self.cols + j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return IntMatrix.from_rows(rows) if self.rows else IntMatrix(0, self.cols + other.cols, [])

    def is_zero(self):
        return all(a == 0 for a in self.data)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "data": list(self.data)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rows"], obj["cols"], obj["data"])


def _smith_engine(M: IntMatrix):
    """Run the SNF elimination, returning (D, U, Uinv, V, Vinv) as lists.

    U*M*V = D with U, V unimodular.  Pivots are chosen with smallest nonzero
    magnitude to keep entry growth down on the larger connecting matrices.
    """
    m, n = M.rows, M.cols
    A = [list(M.row(i)) for i in range(m)]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(dst, src, q):
        # row dst += q * row src on A and U; inverse op on Uinv columns
        Ad, As = A[dst], A[src]
        for j in range(n):
            Ad[j] += q * As[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            Ud[j] += q * Us[j]
        for i in range(m):
            Uinv[i][src] -= q * Uinv[i][dst]

    def col_add(dst, src, q):
        for i in range(m):
            A[i][dst] += q * A[i][src]
        for i in range(n):
            V[i][dst] += q * V[i][src]
        Vs, Vd = Vinv[src], Vinv[dst]
        for j in range(n):
            Vs[j] -= q * Vd[j]

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for i in range(m):
            Uinv[i][a], Uinv[i][b] = Uinv[i][b], Uinv[i][a]

    def col_swap(a, b):
        for i in range(m):
            A[i][a], A[i][b] = A[i][b], A[i][a]
        for i in range(n):
            V[i][a], V[i][b] = V[i][b], V[i][a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for t in range(m):
            Uinv[t][i] = -Uinv[t][i]

    t = 0
    while t < m and t < n:
        # locate smallest-magnitude nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                a = Ai[j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t] != 0:
                        row_swap(t, i)  # remainder is smaller: new pivot
                        done = False
            if not done:
                continue
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j] != 0:
                        col_swap(t, j)
                        done = False
            if done:
                break
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a != 0 and b % a != 0:
                changed = True
                # fold the block diag(a, b) into diag(gcd, lcm)
                col_add(i, i + 1, 1)  # block is now [[a, 0], [b, b]]
                while True:
                    q = A[i + 1][i] // A[i][i]
                    row_add(i + 1, i, -q)
                    if A[i + 1][i] == 0:
                        break
                    row_swap(i, i + 1)
                if A[i][i] < 0:
                    row_negate(i)
                # gcd divides the fill-in at (i, i+1) exactly
                q = A[i][i + 1] // A[i][i]
                col_add(i + 1, i, -q)
                assert A[i][i + 1] == 0
                if A[i + 1][i + 1] < 0:
                    row_negate(i + 1)
    return A, U, Uinv, V, Vinv


def smith_normal_form(M: IntMatrix):
    """Smith normal form with transforms: returns (U, D, V), U*M*V = D.

    U and V are unimodular; D is diagonal, nonnegative, and its diagonal
    entries form a divisibility chain d1 | d2 | ...

    >>> U, D, V = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> [D[i, i] for i in range(2)]
    [2, 4]
    """
    A, U, _, V, _ = _smith_engine(M)
    D = IntMatrix.from_rows(A) if M.rows else IntMatrix(0, M.cols, [])
    return (
        IntMatrix.from_rows(U) if M.rows else IntMatrix(0, 0, []),
        D,
        IntMatrix.from_rows(V) if M.cols else IntMatrix(0, 0, []),
    )


def smith_with_inverses(M: IntMatrix):
    """Like :func:`smith_normal_form` but also returns U^-1 and V^-1."""
    A, U, Uinv, V, Vinv = _smith_engine(M)
    mk = lambda L, r, c: IntMatrix.from_rows(L) if r else IntMatrix(0, c, [])
    return (
        mk(U, M.rows, 0),
        mk(Uinv, M.rows, 0),
        mk(A, M.rows, M.cols),
        mk(V, M.cols, 0),
        mk(Vinv, M.cols, 0),
    )


def _format_combo(coeffs, labels) -> str:
    """Render an integer combination of labelled generators.

    >>> _format_combo([1, -1, 2], ["x", "y", "z"])
    'x - y + 2*z'
    >>> _format_combo([0, 0], ["a", "b"])
    '0'
    """
    parts = []
    for c, lab in zip(coeffs, labels):
        if c == 0:
            continue
        mag = abs(c)
        term = lab if mag == 1 else "%d*%s" % (mag, lab)
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


class FGAbelianGroup:
    """A finitely generated abelian group in invariant-factor normal form.

    The group is Z^free_rank  (+)  Z/d1 (+) ... (+) Z/dr with d_i | d_{i+1}
    and every d_i >= 2.  `generators` carries one opaque label per torsion
    factor followed by one per free generator.
    """

    __slots__ = ("free_rank", "torsion", "generators")

    def __init__(self, free_rank: int, torsion=(), generators=None) -> None:
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise ValueError("torsion invariant factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if generators is None:
            generators = tuple(
                "t%d" % i for i in range(len(torsion))
            ) + tuple("f%d" % i for i in range(free_rank))
        generators = tuple(str(g) for g in generators)
        if len(generators) != len(torsion) + free_rank:
            raise ValueError("need one label per invariant factor and free generator")
        object.__setattr__(self, "free_rank", free_rank)
        object.__setattr__(self, "torsion", torsion)
        object.__setattr__(self, "generators", generators)

    def __setattr__(self, name, value):
        raise AttributeError("FGAbelianGroup is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FGAbelianGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def describe(self) -> str:
        """Human form like 'Z^2 + Z/2 + Z/4' (trivial group renders '0').

        >>> FGAbelianGroup(1, (2, 2, 2, 2)).describe()
        'Z/2 + Z/2 + Z/2 + Z/2 + Z'
        """
        parts = ["Z/%d" % d for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "FGAbelianGroup(%r)" % self.describe()

    def to_json(self):
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "generators": list(self.generators),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["free_rank"], obj["torsion"], obj["generators"])


class PresentedModule:
    """Generators plus integer relations (columns in the generator basis)."""

    __slots__ = ("generator_labels", "relations")

    def __init__(self, generator_labels, relations: IntMatrix) -> None:
        generator_labels = tuple(str(g) for g in generator_labels)
        if relations.rows != len(generator_labels):
            raise ValueError("relations.rows must equal the number of generators")
        object.__setattr__(self, "generator_labels", generator_labels)
        object.__setattr__(self, "relations", relations)

    def __setattr__(self, name, value):
        raise AttributeError("PresentedModule is immutable")


def cokernel(M: IntMatrix, labels=None) -> FGAbelianGroup:
    """Cokernel Z^rows / im(M), with generator labels carried through U^-1.

    >>> cokernel(IntMatrix.from_rows([[1, 0], [0, 2], [0, 0]])).describe()
    'Z/2 + Z'
    """
    if labels is None:
        labels = ["g%d" % i for i in range(M.rows)]
    if len(labels) != M.rows:
        raise ValueError("need one label per codomain generator")
    if M.cols == 0:
        return FGAbelianGroup(M.rows, (), tuple(labels))
    _, Uinv, D, _, _ = smith_with_inverses(M)
    diag = [D[i, i] for i in range(min(M.rows, M.cols))]
    torsion = []
    gen_labels = []
    free_labels = []
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            continue
        new_gen = _format_combo(Uinv.col(i), labels)
        if d == 0:
            free_labels.append(new_gen)
        else:
            torsion.append(d)
            gen_labels.append(new_gen)
    return FGAbelianGroup(len(free_labels), tuple(torsion), tuple(gen_labels + free_labels))


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """A Z-basis for ker(M), returned as columns (kernels over Z are free).

    >>> kernel_basis(IntMatrix.from_rows([[2, 4], [1, 2]])).col(0)
    (-2, 1)
    """
    if M.cols == 0:
        return IntMatrix(0, 0, [])
    _, D, V = smith_normal_form(M)
    free_cols = []
    for j in range(M.cols):
        d = D[j, j] if j < min(M.rows, M.cols) else 0
        if d == 0:
            free_cols.append(V.col(j))
    if not free_cols:
        return IntMatrix(M.cols, 0, [])
    return IntMatrix.from_cols(free_cols)


def rank(M: IntMatrix) -> int:
    """Rank over Q (equals the number of nonzero invariant factors)."""
    _, D, _ = smith_normal_form(M)
    return sum(1 for i in range(min(M.rows, M.cols)) if D[i, i] != 0)


def fgab_from_relations(P: PresentedModule) -> FGAbelianGroup:
    """Abelian group on P's generators modulo its relation columns.

    >>> P = PresentedModule(["g1", "g2"], IntMatrix.from_cols([[1, -1], [0, 2]]))
    >>> fgab_from_relations(P).describe()
    'Z/2'
    """
    return cokernel(P.relations, list(P.generator_labels))


def connecting_solve(beta: IntMatrix, domain_labels=None, codomain_labels=None):
    """Kernel and cokernel of one connecting map, with labels.

    Returns (ker, coker): `ker` is a free FGAbelianGroup whose generator
    labels are combinations of the domain labels (the kernel basis), `coker`
    an FGAbelianGroup over the codomain labels.  This is the one-shot solver
    for an exact-sequence step whose remaining corners vanish or are known.

    >>> k, c = connecting_solve(IntMatrix.from_rows([[1, 1], [1, -1]]))
    >>> k.describe(), c.describe()
    ('0', 'Z/2')
    """
    if domain_labels is None:
        domain_labels = ["x%d" % j for j in range(beta.cols)]
    if codomain_labels is None:
        codomain_labels = ["y%d" % i for i in range(beta.rows)]
    K = kernel_basis(beta)
    ker_labels = tuple(
        _format_combo(K.col(j), domain_labels) for j in range(K.cols)
    )
    ker = FGAbelianGroup(K.cols, (), ker_labels)
    coker = cokernel(beta, list(codomain_labels))
    return ker, coker


def solve_int(M: IntMatrix, target) -> "tuple | None":
    """One integer solution x of M x = target, or None when unsolvable.

    Used for membership tests (is `target` in the column span of M over Z).
    """
    if len(target) != M.rows:
        raise ValueError("target length mismatch")
    U, _, D, V, _ = smith_with_inverses(M)
    y = U.mul_vec(tuple(target))
    x_d = []
    for j in range(M.cols):
        d = D[j, j] if j < min(M.rows, M.cols) else 0
        t = y[j] if j < M.rows else 0
        if d == 0:
            if t != 0:
                return None
            x_d.append(0)
        else:
            if t % d != 0:
                return None
            x_d.append(t // d)
    for i in range(M.cols, M.rows):
        if y[i] != 0:
            return None
    return V.mul_vec(tuple(x_d))
