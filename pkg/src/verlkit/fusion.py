"""Exact modular data and fusion rings.

Covers level-k SU(2), the level-1 SU(3) and Sp(4) theories, torus levels,
and quantum doubles of finite abelian groups, twisted and untwisted.  All
S and T entries are cyclotomic numbers, every fusion coefficient is
certified to be a nonnegative integer, and the modular relations are
checked exactly at construction time.
"""

from fractions import Fraction
from math import gcd

from .cyclo import CycNumber, DivisionByZero, rational, sin_frac, sqrt_int, zeta
from .exactla import FGAbelianGroup, IntMatrix, cokernel

__all__ = [
    "ModularCheckFailure",
    "NonIntegralFusion",
    "NonAbelian",
    "InvalidTwist",
    "SingularLevel",
    "ModularData",
    "FusionRing",
    "su2_modular_data",
    "verlinde_matrices",
    "su2_fusion_truncated",
    "torus_fusion",
    "double_abelian",
    "double_cyclic_twisted",
    "level1_data",
]


class ModularCheckFailure(Exception):
    """S/T data failed one of the exact modular relations."""


class NonIntegralFusion(Exception):
    """A Verlinde sum did not come out a nonnegative integer."""


class NonAbelian(Exception):
    """The double construction here only covers abelian groups."""


class InvalidTwist(Exception):
    """Twist value fails the divisibility precondition."""


class SingularLevel(Exception):
    """Torus level matrix is singular, so the quotient is infinite."""


_ONE = rational(1)
_ZERO = rational(0)


def _matmul(A, B):
    m = len(A)
    out = []
    for i in range(m):
        row_i = A[i]
        row = []
        for j in range(m):
            acc = row_i[0] * B[0][j]
            for t in range(1, m):
                acc = acc + row_i[t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def _as_permutation(Q):
    # rows of an exact permutation matrix: one entry 1, the rest 0
    m = len(Q)
    perm = []
    for i in range(m):
        hit = None
        for j in range(m):
            e = Q[i][j]
            if e == _ZERO:
                continue
            if e == _ONE and hit is None:
                hit = j
            else:
                return None
        if hit is None:
            return None
        perm.append(hit)
    return tuple(perm)


class ModularData:
    """Exact S and T matrices of a rational theory.

    S must be symmetric and unitary, T a diagonal of roots of unity, and
    (ST)^3 = S^2 with S^2 a permutation squaring to the identity.  The
    relations are verified exactly on construction; the permutation is
    stored as `charge_conjugation`.
    """

    __slots__ = ("labels", "S", "T", "charge_conjugation")

    def __init__(self, labels, S, T) -> None:
        labels = tuple(labels)
        m = len(labels)
        S = tuple(tuple(row) for row in S)
        T = tuple(T)
        if len(S) != m or any(len(row) != m for row in S) or len(T) != m:
            raise ValueError("S must be square over the labels, T its diagonal")
        for t in T:
            if t * t.conjugate() != _ONE:
                raise ModularCheckFailure("T entries must be unimodular")
        for i in range(m):
            for j in range(i):
                if S[i][j] != S[j][i]:
                    raise ModularCheckFailure("S is not symmetric")
        is_real = all(e.conjugate() == e for row in S for e in row)
        if is_real:
            # real symmetric: unitarity forces S^2 = 1, one product does both
            Q = _matmul(S, S)
            perm = _as_permutation(Q)
            if perm != tuple(range(m)):
                raise ModularCheckFailure("real S must square to the identity")
        else:
            Sc = [[e.conjugate() for e in row] for row in S]
            P = _matmul(S, Sc)
            for i in range(m):
                for j in range(m):
                    if P[i][j] != (_ONE if i == j else _ZERO):
                        raise ModularCheckFailure("S is not unitary")
            Q = _matmul(S, S)
            perm = _as_permutation(Q)
            if perm is None:
                raise ModularCheckFailure("S^2 is not a permutation")
            for i in range(m):
                if perm[perm[i]] != i:
                    raise ModularCheckFailure("charge conjugation must square to 1")
        # with S^{-1} = S*, (ST)^3 = S^2 is equivalent to TST = S T^-1 S*
        lhs = [[T[i] * S[i][j] * T[j] for j in range(m)] for i in range(m)]
        X = [
            [T[i].conjugate() * S[i][j].conjugate() for j in range(m)]
            for i in range(m)
        ]
        rhs = _matmul(S, X)
        for i in range(m):
            for j in range(m):
                if lhs[i][j] != rhs[i][j]:
                    raise ModularCheckFailure("(ST)^3 = S^2 fails")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "charge_conjugation", perm)

    def __setattr__(self, name, value):
        raise AttributeError("ModularData is immutable")

    def __repr__(self) -> str:
        return "ModularData(%d primaries)" % len(self.labels)


class FusionRing:
    """Fusion coefficients N_{lm}^n over an ordered label set.

    Coefficients are nonnegative integers, label `unit` acts as identity,
    and the ring is commutative.  Those three facts are checked eagerly;
    associativity is checked by `check_associativity` since it costs m^5.
    """

    __slots__ = ("labels", "N", "unit")

    def __init__(self, labels, N, unit: int = 0) -> None:
        labels = tuple(labels)
        m = len(labels)
        N = tuple(tuple(tuple(int(c) for c in row) for row in plane) for plane in N)
        if len(N) != m or any(
            len(plane) != m or any(len(row) != m for row in plane) for plane in N
        ):
            raise ValueError("structure constants must be m x m x m")
        for plane in N:
            for row in plane:
                for c in row:
                    if c < 0:
                        raise ValueError("fusion coefficients must be >= 0")
        if not 0 <= unit < m:
            raise ValueError("unit label out of range")
        for mu in range(m):
            for nu in range(m):
                want = 1 if mu == nu else 0
                if N[unit][mu][nu] != want or N[mu][unit][nu] != want:
                    raise ValueError("unit label does not act as identity")
        for lam in range(m):
            for mu in range(lam):
                if N[lam][mu] != N[mu][lam]:
                    raise ValueError("fusion must be commutative")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("FusionRing is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.labels, self.unit))

    def __repr__(self) -> str:
        return "FusionRing(%d labels)" % len(self.labels)

    def matrix(self, lam: int) -> IntMatrix:
        """Fusion matrix (N_lam)_{mu nu} = N_{lam mu}^nu."""
        return IntMatrix.from_rows([list(row) for row in self.N[lam]])

    def product(self, lam: int, mu: int) -> dict:
        """Decomposition of lam x mu as {nu: multiplicity}, zeros omitted."""
        row = self.N[lam][mu]
        return {nu: c for nu, c in enumerate(row) if c}

    def check_associativity(self) -> None:
        """Verify N_lam N_mu = sum_nu N_{lam mu}^nu N_nu for all pairs."""
        m = len(self.labels)
        mats = [self.N[lam] for lam in range(m)]
        for lam in range(m):
            A = mats[lam]
            for mu in range(lam, m):
                B = mats[mu]
                lhs = [
                    [
                        sum(A[r][t] * B[t][c] for t in range(m))
                        for c in range(m)
                    ]
                    for r in range(m)
                ]
                coeffs = self.N[lam][mu]
                rhs = [
                    [
                        sum(coeffs[nu] * mats[nu][r][c] for nu in range(m) if coeffs[nu])
                        for c in range(m)
                    ]
                    for r in range(m)
                ]
                if lhs != rhs:
                    raise ValueError(
                        "associativity fails at labels %r, %r"
                        % (self.labels[lam], self.labels[mu])
                    )

    def is_group_like(self) -> bool:
        """True when every product is a single label with coefficient 1."""
        m = len(self.labels)
        for lam in range(m):
            for mu in range(m):
                row = self.N[lam][mu]
                if sum(row) != 1 or max(row) != 1:
                    return False
        return True

    def fusion_group(self) -> FGAbelianGroup:
        """The abelian group underlying a group-like ring, in normal form."""
        m = len(self.labels)
        if not self.is_group_like():
            raise ValueError("fusion ring is not group-like")
        table = [
            [self.N[lam][mu].index(1) for mu in range(m)] for lam in range(m)
        ]
        full = frozenset(range(m))
        for row in table:
            if frozenset(row) != full:
                raise ValueError("group-like table is not cancellative")
        # Light's test: associativity on a magma generating set suffices
        gens = []
        closure = {self.unit}
        while len(closure) < m:
            g = min(full - closure)
            gens.append(g)
            closure.add(g)
            grew = True
            while grew:
                new = {table[a][b] for a in closure for b in closure}
                grew = not new <= closure
                closure |= new
        for g in gens:
            for a in range(m):
                ag = table[a][g]
                row_a = table[a]
                for b in range(m):
                    if table[ag][b] != row_a[table[g][b]]:
                        raise ValueError("group-like table is not associative")
        e = self.unit
        orders = []
        for x in range(m):
            y, o = x, 1
            while y != e:
                y = table[y][x]
                o += 1
            orders.append(o)
        return FGAbelianGroup(0, _abelian_invariants(orders))


def _abelian_invariants(orders):
    """Invariant factors of a finite abelian group from its element orders."""
    n = len(orders)
    residue = n
    primes = []
    p = 2
    while p * p <= residue:
        if residue % p == 0:
            primes.append(p)
            while residue % p == 0:
                residue //= p
        p += 1
    if residue > 1:
        primes.append(residue)
    per_prime = {}
    for p in primes:
        # c_k = #{x : ord(x) | p^k} is p^(sum_i min(k, part_i))
        exps = [0]
        k = 1
        while True:
            c = sum(1 for o in orders if (p**k) % o == 0)
            e = 0
            while c % p == 0:
                c //= p
                e += 1
            if c != 1:
                raise ValueError("element orders inconsistent with an abelian group")
            if e == exps[-1]:
                break
            exps.append(e)
            k += 1
        parts_ge = [exps[i] - exps[i - 1] for i in range(1, len(exps))]
        partition = []
        for i, ge in enumerate(parts_ge):
            nxt = parts_ge[i + 1] if i + 1 < len(parts_ge) else 0
            partition.extend([i + 1] * (ge - nxt))
        per_prime[p] = sorted(partition, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, partition in per_prime.items():
            if i < len(partition):
                d *= p ** partition[i]
        factors.append(d)
    factors.reverse()
    total = 1
    for d in factors:
        total *= d
    if total != n:
        raise ValueError("element orders inconsistent with an abelian group")
    return tuple(factors)


def su2_modular_data(k: int) -> ModularData:
    """Modular data of level-k SU(2).

    S_{ab} = sqrt(2/n) sin(pi (a+1)(b+1)/n) with n = k+2, realized in
    Q(zeta_8n).  T_a is the root of unity with exponent h_a - c/24 =
    (2(a+1)^2 - n)/(8n), which makes (ST)^3 = S^2 hold on the nose.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    n = k + 2
    pref = sqrt_int(2 * n) / n
    sines = {}
    S = []
    for a in range(k + 1):
        row = []
        for b in range(k + 1):
            key = ((a + 1) * (b + 1)) % (2 * n)
            if key not in sines:
                sines[key] = (pref * sin_frac(key, 2 * n)).normalized()
            row.append(sines[key])
        S.append(row)
    T = [zeta(8 * n, (2 * (a + 1) ** 2 - n) % (8 * n)) for a in range(k + 1)]
    return ModularData(tuple(range(k + 1)), S, T)


def verlinde_matrices(D: ModularData) -> FusionRing:
    """Fusion ring diagonalized by S: N_{lm}^n = sum_c S_lc S_mc S*_nc / S_0c.

    Sums are evaluated exactly; any entry that is not a nonnegative
    integer raises NonIntegralFusion.
    """
    m = len(D.labels)
    S = D.S
    try:
        inv0 = [S[0][c].normalized().inverse() for c in range(m)]
    except DivisionByZero:
        raise NonIntegralFusion("vacuum row of S contains a zero")
    # eigenvalue ratios and |S_0c|^2 live in much smaller fields than S
    x = [[(S[a][c] * inv0[c]).normalized() for c in range(m)] for a in range(m)]
    w = [(S[0][c] * S[0][c].conjugate()).normalized() for c in range(m)]
    z = [[(x[nu][c].conjugate() * w[c]).normalized() for c in range(m)] for nu in range(m)]
    N = [[[0] * m for _ in range(m)] for _ in range(m)]
    for lam in range(m):
        for mu in range(lam, m):
            y = [x[lam][c] * x[mu][c] for c in range(m)]
            for nu in range(m):
                acc = y[0] * z[nu][0]
                for c in range(1, m):
                    acc = acc + y[c] * z[nu][c]
                if not acc.is_rational():
                    raise NonIntegralFusion(
                        "non-rational fusion coefficient at %r x %r" % (lam, mu)
                    )
                f = acc.as_fraction()
                if f.denominator != 1 or f < 0:
                    raise NonIntegralFusion(
                        "fusion coefficient %s at %r x %r" % (f, lam, mu)
                    )
                N[lam][mu][nu] = int(f)
                N[mu][lam][nu] = int(f)
    return FusionRing(D.labels, N)


def su2_fusion_truncated(k: int) -> FusionRing:
    """Level-k SU(2) fusion from the truncated Clebsch-Gordan rule.

    N_{lm}^n = 1 exactly when |l-m| <= n <= min(l+m, 2k-l-m) and l+m+n is
    even.  Built without any modular data, so it can serve as an
    independent cross-check of the Verlinde computation.
    """
    if k < 1:
        raise ValueError("level must be >= 1")
    m = k + 1
    N = [[[0] * m for _ in range(m)] for _ in range(m)]
    for lam in range(m):
        for mu in range(m):
            lo = abs(lam - mu)
            hi = min(lam + mu, 2 * k - lam - mu)
            for nu in range(lo, hi + 1, 2):
                N[lam][mu][nu] = 1
    return FusionRing(tuple(range(m)), N)


def torus_fusion(tau) -> FGAbelianGroup:
    """Fusion group of a torus theory at level matrix tau: coker(tau).

    The label lattice is the quotient of the weight lattice by tau times
    the coweight lattice; its order is |det tau|.  A singular tau has an
    infinite quotient and raises SingularLevel.
    """
    if not isinstance(tau, IntMatrix):
        tau = IntMatrix.from_rows([list(row) for row in tau])
    if tau.rows != tau.cols:
        raise ValueError("level matrix must be square")
    G = cokernel(tau)
    if G.free_rank > 0:
        raise SingularLevel("level matrix is singular")
    return G


def _cyclic_orders(G):
    """Normalize a finite abelian group to a tuple of cyclic orders."""
    if isinstance(G, int):
        if G < 1:
            raise ValueError("cyclic order must be >= 1")
        return (G,)
    if isinstance(G, (tuple, list)):
        orders = tuple(int(mi) for mi in G)
        if not orders or any(mi < 1 for mi in orders):
            raise ValueError("cyclic orders must be >= 1")
        return orders
    if hasattr(G, "mul") and hasattr(G, "order"):
        n = G.order
        for a in range(n):
            for b in range(a):
                if G.mul(a, b) != G.mul(b, a):
                    raise NonAbelian("group is not abelian")
        orders = []
        for x in range(n):
            y, o = x, 1
            while y != 0:
                y = G.mul(y, x)
                o += 1
            orders.append(o)
        return _abelian_invariants(orders)
    raise TypeError("expected an int, a tuple of ints, or a finite group")


def double_abelian(G):
    """Quantum double of a finite abelian group: modular data and ring.

    Primaries are pairs (a, x) of a group element and a character, both
    encoded as exponent tuples over the cyclic factors.  S is the fully
    conjugated pairing  S_{(a,x),(b,y)} = conj(x(b) y(a)) / |G|  and
    T_{(a,x)} = x(a); fusion is the group law on G x G^.  Returns the
    pair (ModularData, FusionRing).
    """
    orders = _cyclic_orders(G)
    M = 1
    for mi in orders:
        M *= mi
    prim = [
        (a, x)
        for a in _tuples(orders)
        for x in _tuples(orders)
    ]
    m = len(prim)

    def chi(x, b):
        # product of zeta_{m_i}^{x_i b_i}
        acc = _ONE
        for mi, xi, bi in zip(orders, x, b):
            acc = acc * zeta(mi, (xi * bi) % mi)
        return acc

    pref = Fraction(1, M)
    S = []
    for (a, x) in prim:
        row = []
        for (b, y) in prim:
            e = _ONE
            for mi, xi, bi, yi, ai in zip(orders, x, b, y, a):
                e = e * zeta(mi, (-(xi * bi + yi * ai)) % mi)
            row.append((e * pref).normalized())
        S.append(row)
    T = [chi(x, a) for (a, x) in prim]
    index = {p: i for i, p in enumerate(prim)}
    N = [[[0] * m for _ in range(m)] for _ in range(m)]
    for i, (a, x) in enumerate(prim):
        for j, (b, y) in enumerate(prim):
            c = tuple((ai + bi) % mi for mi, ai, bi in zip(orders, a, b))
            zxy = tuple((xi + yi) % mi for mi, xi, yi in zip(orders, x, y))
            N[i][j][index[(c, zxy)]] = 1
    return ModularData(tuple(prim), S, T), FusionRing(tuple(prim), N)


def _tuples(orders):
    out = [()]
    for mi in orders:
        out = [t + (v,) for t in out for v in range(mi)]
    return out


def double_cyclic_twisted(n: int, sigma: int) -> FusionRing:
    """Group-like fusion ring of the twisted double of Z_n.

    The twist class sigma in {1..n} enters through the 3-cocycle
    omega(a,b,c) = zeta_n^(sigma a carry(b,c)).  Simple objects are pairs
    (g, j) of a flux g and a charge j; each is the projective character
    x -> zeta_{n^2}^((sigma g + n j) x) of its flux block, and fusion
    multiplies characters pointwise, which shifts the charge by sigma
    whenever the fluxes wrap around n.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("order must be a positive integer")
    if not 1 <= sigma <= n:
        raise InvalidTwist("twist must lie in 1..n")
    d = gcd(2 * n, sigma)
    if (n * n) % d != 0:
        raise InvalidTwist("gcd(2n, sigma) = %d does not divide n^2" % d)
    labels = [(g, j) for g in range(n) for j in range(n)]
    index = {p: i for i, p in enumerate(labels)}
    m = n * n
    N = [[[0] * m for _ in range(m)] for _ in range(m)]
    for i, (g1, j1) in enumerate(labels):
        for j, (g2, j2) in enumerate(labels):
            carry = (g1 + g2) // n
            tgt = ((g1 + g2) % n, (j1 + j2 + sigma * carry) % n)
            N[i][j][index[tgt]] = 1
    return FusionRing(tuple(labels), N)


def level1_data(name: str):
    """Exact modular data and fusion ring of SU(3)_1 or Sp(4)_1.

    SU(3)_1 has three primaries {(00),(10),(01)} obeying Z_3 fusion;
    Sp(4)_1 has three primaries {(00),(01),(10)} obeying the Ising rules
    with (10) the spinor.  Returns the pair (ModularData, FusionRing).
    """
    key = name.replace("(", "").replace(")", "").replace("_", "").upper()
    if key == "SU3":
        labels = ("(00)", "(10)", "(01)")
        w = zeta(3, 1)
        pref = sqrt_int(3) / 3
        S = [
            [(pref * w ** ((a * b) % 3)).normalized() for b in range(3)]
            for a in range(3)
        ]
        # c = 2, h = 0, 1/3, 1/3
        t0 = zeta(12, 11)
        T = [t0, t0 * w, t0 * w]
        rows = {}
        for a in range(3):
            for b in range(3):
                rows[(a, b)] = (a + b) % 3
    elif key == "SP4":
        labels = ("(00)", "(01)", "(10)")
        r2 = sqrt_int(2)
        half = Fraction(1, 2)
        one = _ONE
        S = [
            [one * half, one * half, r2 * half],
            [one * half, one * half, -(r2 * half)],
            [r2 * half, -(r2 * half), _ZERO],
        ]
        # c = 5/2, h = 0, 1/2, 5/16
        t0 = zeta(48, 43)
        T = [t0, (t0 * zeta(2, 1)).normalized(), (t0 * zeta(16, 5)).normalized()]
        rows = {
            (0, 0): {0: 1},
            (0, 1): {1: 1},
            (0, 2): {2: 1},
            (1, 1): {0: 1},
            (1, 2): {2: 1},
            (2, 2): {0: 1, 1: 1},
        }
    else:
        raise ValueError("known level-1 theories: SU3, Sp4")
    m = len(labels)
    N = [[[0] * m for _ in range(m)] for _ in range(m)]
    if key == "SU3":
        for (a, b), c in rows.items():
            N[a][b][c] = 1
    else:
        for (a, b), dec in rows.items():
            for c, mult in dec.items():
                N[a][b][c] = mult
                N[b][a][c] = mult
    return ModularData(labels, S, T), FusionRing(labels, N)
