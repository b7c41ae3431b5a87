"""Finite subgroups of SU(2) and their representation machinery.

Groups are lists of explicit unit quaternions closed under multiplication.
Irreducible representations are hardcoded generator matrices over small
cyclotomic fields, extended to the whole group by breadth-first products;
any inconsistency on a revisited element means the matrices do not define a
homomorphism and construction aborts.  Character tables are self-verified
against the orthogonality relations (OrthogonalityFailure otherwise).

Infinite groups appear symbolically: the circle ring Z[a^(+-1)], the O(2)
ring Span{1, delta, kappa_1, ...}, and the SU(2) ring Z[sigma].  Dirac
induction between them follows the conventions fixed in the module
functions below.

Naming follows the A-D-E pattern for the binary polyhedral groups:
A1, A3, A5 are the cyclic groups of orders 2, 4, 6; D4, D5 the binary
dihedral groups of orders 8, 12; E6, E7, E8 the binary tetrahedral,
octahedral, icosahedral groups.  Generic cyclic and binary dihedral groups
are available as "C<m>" and "BD<m>".
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNumber, rational, sqrt_int, zeta
from .exactla import IntMatrix

__all__ = [
    "Quaternion",
    "QuaternionGroup",
    "CharacterTable",
    "VirtualRep",
    "Grading",
    "Embedding",
    "GroupMismatch",
    "NotASubgroup",
    "OrthogonalityFailure",
    "NoGradingExists",
    "InvalidEmbedding",
    "quaternion_group",
    "character_table",
    "embedding",
    "tensor_decompose",
    "irrep_vr",
    "restrict",
    "induce",
    "mckay_graph",
    "gradings",
    "classify_graded",
    "graded_fold",
    "dirac_induce_T_to_SU2",
    "dirac_induce_finite_to_O2",
    "res_su2_to_finite",
    "res_su2_to_O2",
    "res_su2_to_T",
    "res_O2_to_T",
    "ind_T_to_O2",
    "recognize_affine_ade",
]


class GroupMismatch(ValueError):
    """Operands belong to different groups."""


class NotASubgroup(ValueError):
    """No canonical embedding between the named groups."""


class OrthogonalityFailure(AssertionError):
    """A built character table failed the orthogonality self-test."""


class NoGradingExists(ValueError):
    """The group has no surjection onto {+1, -1}."""


class InvalidEmbedding(ValueError):
    """A Dirac induction was keyed to an unsuitable representation."""


_ZERO = rational(0)
_ONE = rational(1)
_HALF = rational(Fraction(1, 2))


class Quaternion:
    """Unit quaternion with exact cyclotomic coordinates."""

    __slots__ = ("w", "x", "y", "z", "_hash")

    def __init__(self, w, x, y, z) -> None:
        for name, v in zip("wxyz", (w, x, y, z)):
            object.__setattr__(self, name, v)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = o.w, o.x, o.y, o.z
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def inverse(self) -> "Quaternion":
        # unit quaternions only: inverse is the conjugate
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __eq__(self, o):
        if not isinstance(o, Quaternion):
            return NotImplemented
        return (
            self.w == o.w and self.x == o.x and self.y == o.y and self.z == o.z
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.w, self.x, self.y, self.z))
            object.__setattr__(self, "_hash", h)
        return h

    def su2_matrix(self):
        """Image in SU(2): [[w+xi, y+zi], [-y+zi, w-xi]]."""
        i = zeta(4)
        return (
            (self.w + self.x * i, self.y + self.z * i),
            (-self.y + self.z * i, self.w - self.x * i),
        )

    def trace(self) -> CycNumber:
        return 2 * self.w

    def __repr__(self):
        return "Quaternion(%s, %s, %s, %s)" % (
            self.w.render(),
            self.x.render(),
            self.y.render(),
            self.z.render(),
        )


def _quat(w, x, y, z) -> Quaternion:
    out = []
    for v in (w, x, y, z):
        if isinstance(v, (int, Fraction)):
            v = rational(v)
        out.append(v)
    return Quaternion(*out)


_Q_ONE = _quat(1, 0, 0, 0)
_Q_I = _quat(0, 1, 0, 0)
_Q_J = _quat(0, 0, 1, 0)
_Q_K = _quat(0, 0, 0, 1)


def _closure(gens, expected_order=None):
    """All products of the generators, in breadth-first discovery order."""
    elems = [_Q_ONE]
    index = {_Q_ONE: 0}
    frontier = [_Q_ONE]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                p = e * g
                if p not in index:
                    index[p] = len(elems)
                    elems.append(p)
                    nxt.append(p)
        frontier = nxt
        if len(elems) > 512:
            raise RuntimeError("group closure ran away")
    if expected_order is not None and len(elems) != expected_order:
        raise AssertionError(
            "closure has %d elements, expected %d" % (len(elems), expected_order)
        )
    return elems, index


# -- matrix helpers over CycNumber ------------------------------------------------


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return tuple(
        tuple(
            sum((A[i][t] * B[t][j] for t in range(1, m)), A[i][0] * B[0][j])
            for j in range(p)
        )
        for i in range(n)
    )


def _mat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _mat_trace(A):
    return sum((A[i][i] for i in range(1, len(A))), A[0][0])


def _as_mat(rows):
    out = []
    for r in rows:
        row = []
        for v in r:
            if isinstance(v, (int, Fraction)):
                v = rational(v)
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def _mat_tensor(A, B):
    n, m = len(A), len(B)
    return tuple(
        tuple(A[i][j] * B[k][l] for j in range(n) for l in range(m))
        for i in range(n)
        for k in range(m)
    )


class Irrep:
    """An irreducible representation as explicit matrices, one per element."""

    __slots__ = ("label", "dim", "matrices")

    def __init__(self, label, dim, matrices):
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "matrices", matrices)

    def __setattr__(self, name, value):
        raise AttributeError("Irrep is immutable")

    def character(self):
        return [_mat_trace(M) for M in self.matrices]


def _extend_irrep(group, gen_indices, gen_mats, label):
    """Extend generator matrices to the whole group along BFS words.

    Asserts consistency whenever an element is reached twice; this is the
    homomorphism well-definedness check.
    """
    elems, index = group.elements, group.index
    dim = len(gen_mats[0])
    eye = _as_mat(
        [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
    )
    mats = [None] * len(elems)
    mats[0] = eye
    frontier = [0]
    seen = 1
    while frontier:
        nxt = []
        for ei in frontier:
            for gi, gm in zip(gen_indices, gen_mats):
                p = elems[ei] * elems[gi]
                pi = index[p]
                candidate = _mat_mul(mats[ei], gm)
                if mats[pi] is None:
                    mats[pi] = candidate
                    nxt.append(pi)
                    seen += 1
                elif not _mat_eq(mats[pi], candidate):
                    raise AssertionError(
                        "generator matrices for %r are not a homomorphism" % label
                    )
        frontier = nxt
    if seen != len(elems):
        raise AssertionError("generators do not generate the group")
    # full multiplicativity check, not just along BFS words
    for a in range(len(elems)):
        for b in gen_indices:
            pi = index[elems[a] * elems[b]]
            if not _mat_eq(mats[pi], _mat_mul(mats[a], mats[b])):
                raise AssertionError("homomorphism check failed for %r" % label)
    return Irrep(label, dim, tuple(mats))


class QuaternionGroup:
    """A finite subgroup of SU(2) with explicit elements and irreps."""

    def __init__(self, name, elements, index, irrep_specs, generators):
        self.name = name
        self.elements = elements
        self.index = index
        self.generators = generators
        self.order = len(elements)
        self._irrep_specs = irrep_specs
        self._irreps = None
        self._classes = None
        self._table = None
        self._gradings = None
        self._mtab = None
        self._inverse = [index[e.inverse()] for e in elements]

    def __repr__(self):
        return "QuaternionGroup(%s, order %d)" % (self.name, self.order)

    def _mul_table(self):
        # left-multiplication rows compose as permutations, so only the
        # generator rows need quaternion arithmetic
        if self._mtab is None:
            n = self.order
            gidx = [self.index[g] for g in self.generators]
            grows = [
                [self.index[g * e] for e in self.elements]
                for g in self.generators
            ]
            tab = [None] * n
            tab[0] = list(range(n))
            frontier = [0]
            while frontier:
                nxt = []
                for e in frontier:
                    pe = tab[e]
                    for gi, pg in zip(gidx, grows):
                        ni = pe[gi]
                        if tab[ni] is None:
                            tab[ni] = [pe[c] for c in pg]
                            nxt.append(ni)
                frontier = nxt
            self._mtab = tab
        return self._mtab

    def mul(self, a: int, b: int) -> int:
        return self._mul_table()[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conjugacy_classes(self):
        """List of element-index lists; class 0 is the identity's."""
        if self._classes is None:
            n = self.order
            unassigned = set(range(n))
            classes = []
            while unassigned:
                a = min(unassigned)
                orbit = set()
                for h in range(n):
                    orbit.add(self.mul(self.mul(h, a), self.inv(h)))
                orbit = sorted(orbit)
                classes.append(orbit)
                unassigned -= set(orbit)
            classes.sort(key=lambda c: (c[0] != 0, len(c), c[0]))
            self._classes = classes
        return self._classes

    def irreps(self):
        if self._irreps is None:
            if self._irrep_specs is None:
                raise NotImplementedError(
                    "%s carries no irrep tables (grading queries only)" % self.name
                )
            built = []
            for label, gen_mats in self._irrep_specs:
                gi = [self.index[g] for g in self.generators]
                built.append(_extend_irrep(self, gi, _as_mat_list(gen_mats), label))
            self._irreps = built
        return self._irreps

    def irrep_labels(self):
        return [r.label for r in self.irreps()]

    def defining_character(self):
        """Trace of the inclusion into SU(2), per conjugacy class."""
        return [
            self.elements[cls[0]].trace() for cls in self.conjugacy_classes()
        ]


def _as_mat_list(mats):
    return [_as_mat(m) for m in mats]


class CharacterTable:
    """Exact character table with paper-faithful irrep labels."""

    def __init__(self, group: QuaternionGroup):
        self.group = group
        self.classes = group.conjugacy_classes()
        self.class_sizes = [len(c) for c in self.classes]
        self.class_reps = [c[0] for c in self.classes]
        self.irreps = group.irreps()
        self.labels = [r.label for r in self.irreps]
        self.dims = [r.dim for r in self.irreps]
        self.chars = {}
        for r in self.irreps:
            full = r.character()
            self.chars[r.label] = [full[c[0]] for c in self.classes]
        self._self_test()
        self._class_of = {}
        for ci, cls in enumerate(self.classes):
            for e in cls:
                self._class_of[e] = ci

    def class_of(self, element_index: int) -> int:
        return self._class_of[element_index]

    def _self_test(self):
        n = self.group.order
        if sum(d * d for d in self.dims) != n:
            raise OrthogonalityFailure(
                "%s: sum of squared dims is not the order" % self.group.name
            )
        for a in self.labels:
            for b in self.labels:
                tot = _ZERO
                for ci, size in enumerate(self.class_sizes):
                    tot = tot + size * self.chars[a][ci] * self.chars[b][
                        ci
                    ].conjugate()
                want = n if a == b else 0
                if tot != rational(want):
                    raise OrthogonalityFailure(
                        "%s: <%s,%s> = %s" % (self.group.name, a, b, tot.render())
                    )

    def inner(self, chi1, chi2) -> int:
        """Exact <chi1, chi2> for class functions given per class."""
        tot = _ZERO
        for ci, size in enumerate(self.class_sizes):
            tot = tot + size * chi1[ci] * chi2[ci].conjugate()
        val = (tot / self.group.order).normalized()
        return val.as_int()

    def decompose(self, chi) -> "VirtualRep":
        coeffs = {}
        for lab in self.labels:
            m = self.inner(chi, self.chars[lab])
            if m:
                coeffs[lab] = m
        return VirtualRep(self.group, coeffs)

    def dim_of(self, label: str) -> int:
        return self.dims[self.labels.index(label)]


def character_table(G: QuaternionGroup) -> CharacterTable:
    if G._table is None:
        G._table = CharacterTable(G)
    return G._table


class VirtualRep:
    """Integer combination of irreps of one finite group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        object.__setattr__(self, "group", group)
        object.__setattr__(
            self, "coeffs", {k: int(v) for k, v in coeffs.items() if v}
        )

    def __setattr__(self, name, value):
        raise AttributeError("VirtualRep is immutable")

    def __eq__(self, o):
        if not isinstance(o, VirtualRep):
            return NotImplemented
        return self.group.name == o.group.name and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.group.name, frozenset(self.coeffs.items())))

    def __add__(self, o):
        self._check(o)
        c = dict(self.coeffs)
        for k, v in o.coeffs.items():
            c[k] = c.get(k, 0) + v
        return VirtualRep(self.group, c)

    def __sub__(self, o):
        self._check(o)
        c = dict(self.coeffs)
        for k, v in o.coeffs.items():
            c[k] = c.get(k, 0) - v
        return VirtualRep(self.group, c)

    def __neg__(self):
        return VirtualRep(self.group, {k: -v for k, v in self.coeffs.items()})

    def __rmul__(self, n: int):
        return VirtualRep(self.group, {k: n * v for k, v in self.coeffs.items()})

    def _check(self, o):
        if not isinstance(o, VirtualRep) or o.group.name != self.group.name:
            raise GroupMismatch("operands live in different groups")

    def character(self):
        """Class-function values over the group's conjugacy classes."""
        ct = character_table(self.group)
        out = [_ZERO] * len(ct.classes)
        for lab, mult in self.coeffs.items():
            row = ct.chars[lab]
            out = [acc + mult * v for acc, v in zip(out, row)]
        return out

    def dim(self) -> int:
        ct = character_table(self.group)
        return sum(ct.dim_of(k) * v for k, v in self.coeffs.items())

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        ct = character_table(self.group)
        parts = []
        for lab in ct.labels:
            if lab not in self.coeffs:
                continue
            v = self.coeffs[lab]
            body = lab if abs(v) == 1 else "%d*%s" % (abs(v), lab)
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "VirtualRep(%s: %s)" % (self.group.name, self.render())


def irrep_vr(G: QuaternionGroup, label: str) -> VirtualRep:
    if label not in character_table(G).labels:
        raise KeyError("no irrep %r in %s" % (label, G.name))
    return VirtualRep(G, {label: 1})


def tensor_decompose(rho: VirtualRep, tau: VirtualRep) -> VirtualRep:
    if rho.group.name != tau.group.name:
        raise GroupMismatch("tensor operands live in different groups")
    ct = character_table(rho.group)
    c1, c2 = rho.character(), tau.character()
    prod = [a * b for a, b in zip(c1, c2)]
    return ct.decompose(prod)


# -- group constructions -----------------------------------------------------------


def _cyclic_specs(m: int):
    """Irreps of C_m = <exp(2*pi*i/m)> with labels fixed by the A-series."""
    labels = _cyclic_labels(m)
    specs = []
    for j in range(m):
        specs.append((labels[j], [[[zeta(m, j)]]]))
    return specs


def _cyclic_labels(m: int):
    if m == 2:
        return ["r''_1", "r''_-1"]
    if m == 4:
        # value at the generator i: 1, i, -1, -i
        return ["r'_1", "r'_i", "r'_-1", "r'_-i"]
    if m == 6:
        # value at the generator zeta_6: 1, -w^2, w, -1, w^2, -w
        return ["r_1", "r_-w2", "r_w", "r_-1", "r_w2", "r_-w"]
    return ["c%d" % j for j in range(m)]


_PAPER_CYCLIC_ORDER = {
    2: ["r''_1", "r''_-1"],
    4: ["r'_1", "r'_-1", "r'_i", "r'_-i"],
    6: ["r_1", "r_-1", "r_w", "r_-w", "r_w2", "r_-w2"],
}


def _binary_dihedral_specs(m: int):
    """Irreps of BD_m = <a, b : a^(2m), b^2 = a^m, b a b^-1 = a^-1>."""
    specs = []
    if m % 2 == 0:
        one_dims = [
            ("l0", 1, 1),
            ("l1", -1, 1),
            ("l2", 1, -1),
            ("l3", -1, -1),
        ]
    else:
        i = zeta(4)
        one_dims = [
            ("l0", rational(1), rational(1)),
            ("l1", rational(1), rational(-1)),
            ("l2", rational(-1), i),
            ("l3", rational(-1), -i),
        ]
    for lab, av, bv in one_dims:
        specs.append((lab, [[[av]], [[bv]]]))
    for h in range(1, m):
        amat = [[zeta(2 * m, h), 0], [0, zeta(2 * m, -h % (2 * m))]]
        bmat = [[0, 1], [(-1) ** h, 0]]
        specs.append(("t%d" % h, [amat, bmat]))
    return specs


_D4_RELABEL = {"l0": "s0", "l1": "s1", "l2": "s2", "l3": "s3", "t1": "t"}
_D4_ORDER = ["s0", "s1", "s2", "s3", "t"]
_D5_RELABEL = {
    "l0": "s'0",
    "l1": "s'1",
    "l2": "s'2",
    "l3": "s'3",
    "t1": "t'",
    "t2": "t''",
}
_D5_ORDER = ["s'0", "s'1", "s'2", "s'3", "t'", "t''"]


def _e6_specs():
    w = zeta(3)
    i = zeta(4)
    h = _HALF
    g_su2 = [
        [h + h * i, h + h * i],
        [-h + h * i, h - h * i],
    ]
    i_su2 = [[i, 0], [0, -i]]
    # conjugation action on span{i, j, k}: i -> diag(1,-1,-1); g cycles axes
    i_conj = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
    g_conj = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    specs = [
        ("x", [[[_ONE]], [[_ONE]]]),
        ("x'", [[[_ONE]], [[w * w]]]),
        ("x''", [[[_ONE]], [[w]]]),
        ("y", [i_su2, g_su2]),
        ("y'", [i_su2, _scale_mat(g_su2, w * w)]),
        ("y''", [i_su2, _scale_mat(g_su2, w)]),
        ("z", [i_conj, g_conj]),
    ]
    return specs


def _scale_mat(M, c):
    return [[c * v if not isinstance(v, (int, Fraction)) else c * rational(v) for v in row] for row in M]


def _e7_specs():
    w = zeta(3)
    i = zeta(4)
    h = _HALF
    s8 = (zeta(8) - zeta(8, 3)) * _HALF  # 1/sqrt(2)
    g_su2 = [
        [h + h * i, h + h * i],
        [-h + h * i, h - h * i],
    ]
    i_su2 = [[i, 0], [0, -i]]
    s_su2 = [[s8 + s8 * i, _ZERO], [_ZERO, s8 - s8 * i]]
    i_conj = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
    g_conj = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    s_conj = [[1, 0, 0], [0, 0, -1], [0, 1, 0]]
    one = [[_ONE]]
    sgn = [[-_ONE]]
    twopp = ([[w, _ZERO], [_ZERO, w * w]], [[_ZERO, _ONE], [_ONE, _ZERO]])
    eye1 = [[_ONE]]
    specs = [
        ("1", [one, one, eye1]),
        ("1'", [one, one, sgn]),
        ("2", [i_su2, g_su2, s_su2]),
        ("2'", [i_su2, g_su2, _scale_mat(s_su2, rational(-1))]),
        ("2''", [[[_ONE, _ZERO], [_ZERO, _ONE]], list(twopp[0]), list(twopp[1])]),
        ("3", [i_conj, g_conj, s_conj]),
        ("3'", [i_conj, g_conj, _scale_mat(s_conj, rational(-1))]),
        ("4", None),  # filled below as 2 (x) 2''
    ]
    # build 4 = 2 tensor 2'' from generator matrices
    two = specs[2][1]
    tpp = specs[4][1]
    four = [
        _mat_tensor(_as_mat(a), _as_mat(b)) for a, b in zip(two, tpp)
    ]
    specs[7] = ("4", four)
    return specs


_GROUP_CACHE: dict = {}


def quaternion_group(name: str) -> QuaternionGroup:
    """Construct (and cache) a named finite subgroup of SU(2)."""
    if name in _GROUP_CACHE:
        return _GROUP_CACHE[name]
    g = _build_group(name)
    _GROUP_CACHE[name] = g
    return g


def _build_group(name: str) -> QuaternionGroup:
    if name.startswith("A") and name[1:].isdigit():
        n = int(name[1:])
        if n % 2 == 0:
            raise ValueError(
                "A%d is even; cyclic subgroups here are A(odd) = C(odd+1)" % n
            )
        return _build_cyclic(name, n + 1)
    if name.startswith("C") and name[1:].isdigit():
        return _build_cyclic(name, int(name[1:]))
    if name == "D4":
        return _build_binary_dihedral("D4", 2)
    if name == "D5":
        return _build_binary_dihedral("D5", 3)
    if name.startswith("BD") and name[2:].isdigit():
        return _build_binary_dihedral(name, int(name[2:]))
    if name == "E6":
        return _build_e6()
    if name == "E7":
        return _build_e7()
    if name == "E8":
        return _build_e8()
    raise ValueError("unknown group %r" % name)


def _build_cyclic(name: str, m: int) -> QuaternionGroup:
    g = _quat(cosz(1, m), sinz(1, m), 0, 0)
    elems, index = _closure([g], expected_order=m)
    specs = _cyclic_specs(m)
    group = QuaternionGroup(name, elems, index, specs, [g])
    if m in _PAPER_CYCLIC_ORDER:
        group._irrep_specs = _reorder_specs(specs, _PAPER_CYCLIC_ORDER[m])
    return group


def cosz(num: int, den: int) -> CycNumber:
    """cos(2*pi*num/den) as a cyclotomic number."""
    return (zeta(den, num) + zeta(den, -num % den)) * _HALF


def sinz(num: int, den: int) -> CycNumber:
    """sin(2*pi*num/den) as a cyclotomic number."""
    return (zeta(den, num) - zeta(den, -num % den)) * zeta(4, 3) * _HALF


def _reorder_specs(specs, order):
    by_label = {lab: (lab, mats) for lab, mats in specs}
    return [by_label[lab] for lab in order]


def _build_binary_dihedral(name: str, m: int) -> QuaternionGroup:
    a = _quat(cosz(1, 2 * m), sinz(1, 2 * m), 0, 0)
    b = _Q_J
    elems, index = _closure([a, b], expected_order=4 * m)
    specs = _binary_dihedral_specs(m)
    group = QuaternionGroup(name, elems, index, specs, [a, b])
    if name == "D4":
        specs = [(_D4_RELABEL[lab], mats) for lab, mats in specs]
        group._irrep_specs = _reorder_specs(specs, _D4_ORDER)
    elif name == "D5":
        specs = [(_D5_RELABEL[lab], mats) for lab, mats in specs]
        group._irrep_specs = _reorder_specs(specs, _D5_ORDER)
    return group


def _build_e6() -> QuaternionGroup:
    g = _quat(_HALF, _HALF, _HALF, _HALF)
    elems, index = _closure([_Q_I, g], expected_order=24)
    return QuaternionGroup("E6", elems, index, _e6_specs(), [_Q_I, g])


def _build_e7() -> QuaternionGroup:
    g = _quat(_HALF, _HALF, _HALF, _HALF)
    s8 = (zeta(8) - zeta(8, 3)) * _HALF
    s = Quaternion(s8, s8, _ZERO, _ZERO)
    elems, index = _closure([_Q_I, g, s], expected_order=48)
    return QuaternionGroup("E7", elems, index, _e7_specs(), [_Q_I, g, s])


def _build_e8() -> QuaternionGroup:
    # golden-ratio coordinates; grading queries only, no irrep tables
    fifth = zeta(5)
    # phi = (1+sqrt5)/2 and 1/phi = phi-1, via sqrt5 = 1 + 2(zeta5 + zeta5^4)
    phi_half = (_ONE + fifth + fifth**4) * _HALF
    phinv_half = phi_half - _HALF
    g1 = _quat(_HALF, _HALF, _HALF, _HALF)
    g2 = Quaternion(phi_half, phinv_half, _HALF, _ZERO)
    elems, index = _closure([g1, g2, _Q_I], expected_order=120)
    return QuaternionGroup("E8", elems, index, None, [g1, g2, _Q_I])


# -- canonical embeddings -----------------------------------------------------------


class Embedding:
    """An injective homomorphism between two quaternion groups."""

    __slots__ = ("sub", "sup", "image_index")

    def __init__(self, sub, sup, image_index):
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "sup", sup)
        object.__setattr__(self, "image_index", image_index)

    def __setattr__(self, name, value):
        raise AttributeError("Embedding is immutable")

    def image_of(self, sub_index: int) -> int:
        return self.image_index[sub_index]

    def image_set(self):
        return frozenset(self.image_index)


def _embedding_from_generators(sub, sup, gen_images):
    """Extend generator images along BFS words; verify hom + injectivity."""
    imgs = [None] * sub.order
    imgs[0] = 0
    gen_idx = [sub.index[g] for g in sub.generators]
    img_idx = [sup.index[q] for q in gen_images]
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            for gi, ii in zip(gen_idx, img_idx):
                p = sub.mul(e, gi)
                cand = sup.mul(imgs[e], ii)
                if imgs[p] is None:
                    imgs[p] = cand
                    nxt.append(p)
                elif imgs[p] != cand:
                    raise NotASubgroup(
                        "generator images do not define a homomorphism"
                    )
        frontier = nxt
    if any(v is None for v in imgs):
        raise NotASubgroup("generators do not generate the subgroup")
    for a in range(sub.order):
        for b in range(sub.order):
            if imgs[sub.mul(a, b)] != sup.mul(imgs[a], imgs[b]):
                raise NotASubgroup("multiplicativity check failed")
    if len(set(imgs)) != sub.order:
        raise NotASubgroup("generator images are not injective")
    return Embedding(sub, sup, tuple(imgs))


def _sqrt2_half():
    return (zeta(8) - zeta(8, 3)) * _HALF


def _canonical_generator_images(sub_name, sup_name):
    g6 = _quat(_HALF, _HALF, _HALF, _HALF)
    if sub_name == "A1":
        return [-_Q_ONE]
    if sub_name == "A3":
        if sup_name == "D5":
            return [_Q_J]
        return [_Q_I]
    if sub_name == "A5":
        if sup_name == "D5":
            return [_quat(cosz(1, 6), sinz(1, 6), 0, 0)]
        if sup_name in ("E6", "E7"):
            return [g6]
        return None
    if sub_name == "D4":
        if sup_name in ("E6", "E7"):
            return [_Q_I, _Q_J]
        return None
    if sub_name == "D5":
        if sup_name == "E7":
            s = _sqrt2_half()
            return [g6, Quaternion(_ZERO, _ZERO, s, -s)]
        return None
    if sub_name == "E6":
        if sup_name == "E7":
            g = quaternion_group("E6")
            return list(g.generators)
        return None
    return None


_EMBED_CACHE: dict = {}


def embedding(sub_name: str, sup_name: str) -> Embedding:
    """The fixed canonical embedding between two named groups."""
    key = (sub_name, sup_name)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    sub = quaternion_group(sub_name)
    sup = quaternion_group(sup_name)
    images = _canonical_generator_images(sub_name, sup_name)
    if images is None:
        # literal containment fallback
        if all(e in sup.index for e in sub.elements):
            images = list(sub.generators)
        else:
            raise NotASubgroup(
                "no canonical embedding %s -> %s" % (sub_name, sup_name)
            )
    emb = _embedding_from_generators(sub, sup, images)
    _EMBED_CACHE[key] = emb
    return emb


# -- restriction and induction -------------------------------------------------------


def restrict(rho: VirtualRep, emb: Embedding) -> VirtualRep:
    """Restriction along an embedding, decomposed into subgroup irreps."""
    if rho.group.name != emb.sup.name:
        raise GroupMismatch("rho does not live in the embedding's supergroup")
    ct_sup = character_table(emb.sup)
    ct_sub = character_table(emb.sub)
    chi = rho.character()
    vals = [
        chi[ct_sup.class_of(emb.image_of(rep))] for rep in ct_sub.class_reps
    ]
    return ct_sub.decompose(vals)


def induce(rho: VirtualRep, emb: Embedding) -> VirtualRep:
    """Induction along an embedding, by the Frobenius character formula."""
    if rho.group.name != emb.sub.name:
        raise GroupMismatch("rho does not live in the embedding's subgroup")
    sub, sup = emb.sub, emb.sup
    ct_sub = character_table(sub)
    ct_sup = character_table(sup)
    chi = rho.character()

    preimage = {}
    for si in range(sub.order):
        preimage[emb.image_of(si)] = si
    chi_on_sub_elem = [chi[ct_sub.class_of(i)] for i in range(sub.order)]

    vals = []
    for g in ct_sup.class_reps:
        tot = _ZERO
        for xi in range(sup.order):
            conj = sup.mul(sup.mul(sup.inv(xi), g), xi)
            si = preimage.get(conj)
            if si is not None:
                tot = tot + chi_on_sub_elem[si]
        vals.append(tot / sub.order)
    return ct_sup.decompose(vals)


# -- McKay graphs ------------------------------------------------------------------


def mckay_graph(G: QuaternionGroup):
    """Adjacency A with A[i][j] = mult of irrep j in (defining 2-dim) x irrep i.

    Returns (IntMatrix, labels).  2I - A annihilates the dimension vector.
    """
    ct = character_table(G)
    chi_def = G.defining_character()
    rows = []
    for a in ct.labels:
        prod = [d * v for d, v in zip(chi_def, ct.chars[a])]
        row = [ct.inner(prod, ct.chars[b]) for b in ct.labels]
        rows.append(row)
    A = IntMatrix.from_rows(rows)
    dims = ct.dims
    for i in range(len(dims)):
        s = sum(A[(i, j)] * dims[j] for j in range(len(dims)))
        if s != 2 * dims[i]:
            raise AssertionError("affine Cartan property failed for %s" % G.name)
    return A, list(ct.labels)


# -- gradings and folding ------------------------------------------------------------


class Grading:
    """A surjection eps: G -> {+1, -1}, stored as its kernel."""

    __slots__ = ("group", "kernel", "values", "psi_label")

    def __init__(self, group, kernel, values, psi_label):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "kernel", kernel)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "psi_label", psi_label)

    def __setattr__(self, name, value):
        raise AttributeError("Grading is immutable")

    def __repr__(self):
        return "Grading(%s, kernel order %d, psi=%s)" % (
            self.group.name,
            len(self.kernel),
            self.psi_label,
        )


def _subgroup_closure(G: QuaternionGroup, seed):
    have = set(seed)
    have.add(0)
    frontier = list(have)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(have):
                for p in (G.mul(a, b), G.mul(b, a)):
                    if p not in have:
                        have.add(p)
                        nxt.append(p)
        frontier = nxt
    return have


def gradings(G: QuaternionGroup):
    """All homomorphisms G -> {+1,-1} with kernel of index exactly 2."""
    if G._gradings is not None:
        return G._gradings
    n = G.order
    # G/<squares> is elementary abelian 2-torsion, hence already abelian,
    # so the squares alone generate the intersection of all index-2 kernels
    seed = {G.mul(a, a) for a in range(n)}
    N = _subgroup_closure(G, seed)
    if len(N) == n:
        G._gradings = []
        return []
    # cosets of N form an elementary abelian 2-group
    coset_of = {}
    cosets = []
    for a in range(n):
        if a in coset_of:
            continue
        members = {G.mul(a, h) for h in N}
        ci = len(cosets)
        cosets.append(sorted(members))
        for m in members:
            coset_of[m] = ci
    out = []
    q = len(cosets)
    # enumerate nontrivial characters of the quotient via subsets
    for mask in range(1, 1 << q):
        vals = [1 if not (mask >> ci) & 1 else -1 for ci in range(q)]
        if vals[coset_of[0]] != 1:
            continue
        ok = True
        for a in range(q):
            for b in range(q):
                c = coset_of[G.mul(cosets[a][0], cosets[b][0])]
                if vals[a] * vals[b] != vals[c]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if all(v == 1 for v in vals):
            continue
        evals = tuple(vals[coset_of[a]] for a in range(n))
        kernel = frozenset(a for a in range(n) if evals[a] == 1)
        psi = _matching_sign_irrep(G, evals)
        out.append(Grading(G, kernel, evals, psi))
    out.sort(key=lambda gr: sorted(gr.kernel))
    G._gradings = out
    return out


def _matching_sign_irrep(G, evals):
    try:
        ct = character_table(G)
    except NotImplementedError:
        return None
    for lab, d in zip(ct.labels, ct.dims):
        if d != 1:
            continue
        full = {}
        ok = True
        for ci, cls in enumerate(ct.classes):
            v = ct.chars[lab][ci]
            want = evals[cls[0]]
            if not (v == rational(want)):
                ok = False
                break
        if ok:
            return lab
    return None


def classify_graded(rho, grading: Grading = None) -> str:
    """Type of an irreducible under an index-2 grading: "2_1" or "1_2".

    "2_1": restriction to the kernel stays irreducible.
    "1_2": restriction splits into two conjugate irreducibles.

    A string argument names an O(2)-irrep, graded by the circle kernel:
    "1" and "delta" restrict irreducibly, every "kappa_i" splits.
    """
    if isinstance(rho, str):
        if rho in ("1", "delta"):
            return "2_1"
        if rho.startswith("kappa_"):
            int(rho.split("_")[1])
            return "1_2"
        raise ValueError("unknown O(2) irrep %r" % rho)
    if grading is None:
        raise ValueError("a Grading is required for finite groups")
    if rho.group.name != grading.group.name:
        raise GroupMismatch("rho and grading live in different groups")
    if len(rho.coeffs) != 1 or set(rho.coeffs.values()) != {1}:
        raise ValueError("classify_graded wants a single irreducible")
    G = rho.group
    ct = character_table(G)
    chi = rho.character()
    norm = _ZERO
    for h in grading.kernel:
        v = chi[ct.class_of(h)]
        norm = norm + v * v.conjugate()
    norm_val = (norm / len(grading.kernel)).normalized().as_int()
    if norm_val == 1:
        return "2_1"
    if norm_val == 2:
        return "1_2"
    raise AssertionError("restriction norm %d is impossible" % norm_val)


def _kernel_group(G: QuaternionGroup, grading: Grading) -> QuaternionGroup:
    """The kernel as a standalone group with its own irreps."""
    elems = [G.elements[i] for i in sorted(grading.kernel)]
    elemset = set(elems)
    for known in ("E6",):
        K = quaternion_group(known)
        if len(K.elements) == len(elems) and set(K.elements) == elemset:
            return K
    # cyclic kernels: take a maximal-order generator
    m = len(elems)
    for e in elems:
        order = 1
        p = e
        while p != _Q_ONE:
            p = p * e
            order += 1
        if order == m:
            closure, index = _closure([e], expected_order=m)
            return QuaternionGroup(
                "C%d" % m, closure, index, _cyclic_specs(m), [e]
            )
    raise NotImplementedError(
        "kernel of order %d is neither cyclic nor a supported group" % m
    )


def graded_fold(G: QuaternionGroup, grading: Grading = None):
    """Fold the McKay graph of G along a grading; verify against kernel.

    Returns a dict with the folded-graph name, both node counts, the type
    classification of every irrep, and dim ^eR_G / dim ^eR^1_G.
    """
    gs = gradings(G)
    if not gs:
        raise NoGradingExists("%s has no index-2 subgroup" % G.name)
    if grading is None:
        if len(gs) > 1:
            raise ValueError(
                "%s has %d gradings; pass one explicitly" % (G.name, len(gs))
            )
        grading = gs[0]
    ct = character_table(G)
    psi = grading.psi_label
    if psi is None:
        raise AssertionError("grading has no matching sign character")
    # involution rho -> rho (x) psi
    invol = {}
    for lab in ct.labels:
        img = tensor_decompose(irrep_vr(G, lab), irrep_vr(G, psi))
        (ilab,) = img.coeffs
        invol[lab] = ilab
    fixed = [lab for lab in ct.labels if invol[lab] == lab]
    pairs = sorted(
        {tuple(sorted((lab, invol[lab]))) for lab in ct.labels if invol[lab] != lab}
    )
    K = _kernel_group(G, grading)
    ct_k = character_table(K)
    # correspondence check: folding the G-graph must reproduce Irr(K)
    kernel_pos = {G.elements[i]: i for i in grading.kernel}
    emb_imgs = [kernel_pos[e] for e in K.elements]
    kt_reps = ct_k.class_reps
    seen = {}
    for lab in fixed:
        if classify_graded(irrep_vr(G, lab), grading) != "1_2":
            raise AssertionError("fixed node %s is not type 1_2" % lab)
        chi = irrep_vr(G, lab).character()
        vals = [chi[ct.class_of(emb_imgs[r])] for r in kt_reps]
        dec = ct_k.decompose(vals)
        if sorted(dec.coeffs.values()) != [1, 1]:
            raise AssertionError("type 1_2 restriction did not split in two")
        for sub_lab in dec.coeffs:
            seen[sub_lab] = seen.get(sub_lab, 0) + 1
    for lab, other in pairs:
        if classify_graded(irrep_vr(G, lab), grading) != "2_1":
            raise AssertionError("swapped node %s is not type 2_1" % lab)
        chi = irrep_vr(G, lab).character()
        vals = [chi[ct.class_of(emb_imgs[r])] for r in kt_reps]
        dec = ct_k.decompose(vals)
        if list(dec.coeffs.values()) != [1]:
            raise AssertionError("type 2_1 restriction is not irreducible")
        for sub_lab in dec.coeffs:
            seen[sub_lab] = seen.get(sub_lab, 0) + 1
    if seen != {lab: 1 for lab in ct_k.labels}:
        raise AssertionError("folded nodes do not biject with kernel irreps")
    A_k, labels_k = mckay_graph(K)
    folded_name = recognize_affine_ade(A_k)
    parent_name = recognize_affine_ade(mckay_graph(G)[0])
    types = {lab: ("1_2" if lab in fixed else "2_1") for lab in ct.labels}
    return {
        "group": G.name,
        "group_graph": parent_name,
        "group_nodes": len(ct.labels),
        "psi": psi,
        "kernel_order": len(grading.kernel),
        "folded_graph": folded_name,
        "folded_nodes": len(labels_k),
        "types": types,
        "dim_graded_ring": len(fixed),
        "dim_graded_ring_1": len(pairs),
        "folded_adjacency": A_k,
        "folded_labels": labels_k,
    }


# -- affine A-D-E recognition --------------------------------------------------------


def _adjacency_lists(A: IntMatrix):
    n = A.rows
    return [
        [A[(i, j)] for j in range(n)] for i in range(n)
    ]


def _graph_isomorphic(A, B) -> bool:
    n = len(A)
    if len(B) != n:
        return False
    degA = sorted(sum(r) for r in A)
    degB = sorted(sum(r) for r in B)
    if degA != degB:
        return False
    perm = [None] * n
    used = [False] * n

    def backtrack(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or sum(A[i]) != sum(B[j]):
                continue
            ok = True
            for k in range(i):
                if A[i][k] != B[j][perm[k]] or A[k][i] != B[perm[k]][j]:
                    ok = False
                    break
            if ok and A[i][i] == B[j][j]:
                perm[i] = j
                used[j] = True
                if backtrack(i + 1):
                    return True
                used[j] = False
        return False

    return backtrack(0)


def _affine_candidates(n: int):
    out = {}
    if n == 1:
        out["A0"] = [[2]]
    if n == 2:
        out["A1"] = [[0, 2], [2, 0]]
    if n >= 3:
        cyc = [[0] * n for _ in range(n)]
        for i in range(n):
            cyc[i][(i + 1) % n] = 1
            cyc[(i + 1) % n][i] = 1
        out["A%d" % (n - 1)] = cyc
    if n >= 5:
        # affine D_(n-1): a path with two leaves at each end
        d = [[0] * n for _ in range(n)]
        path = list(range(4, n))
        chain = [0, 1] + path + [2, 3]
        # nodes 0,1 attach to path[0]; nodes 2,3 attach to path[-1]
        inner = list(range(4, n))
        for a, b in zip(inner, inner[1:]):
            d[a][b] = d[b][a] = 1
        d[0][inner[0]] = d[inner[0]][0] = 1
        d[1][inner[0]] = d[inner[0]][1] = 1
        d[2][inner[-1]] = d[inner[-1]][2] = 1
        d[3][inner[-1]] = d[inner[-1]][3] = 1
        out["D%d" % (n - 1)] = d
    if n == 7:
        e = [[0] * 7 for _ in range(7)]
        # star with three arms of length 2
        edges = [(0, 1), (1, 2), (3, 4), (4, 2), (5, 6), (6, 2)]
        for a, b in edges:
            e[a][b] = e[b][a] = 1
        out["E6"] = e
    if n == 8:
        e = [[0] * 8 for _ in range(8)]
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]
        for a, b in edges:
            e[a][b] = e[b][a] = 1
        out["E7"] = e
    if n == 9:
        e = [[0] * 9 for _ in range(9)]
        edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (2, 8),
        ]
        for a, b in edges:
            e[a][b] = e[b][a] = 1
        out["E8"] = e
    return out


def recognize_affine_ade(A: IntMatrix) -> str:
    """Name the affine A-D-E diagram isomorphic to the given adjacency."""
    lists = _adjacency_lists(A)
    for name, cand in _affine_candidates(A.rows).items():
        if _graph_isomorphic(lists, cand):
            return name
    raise ValueError("adjacency is not an affine A-D-E diagram")


# -- symbolic rings: SU(2), O(2), circle ----------------------------------------------


def res_su2_to_finite(G: QuaternionGroup, m: int) -> VirtualRep:
    """Restriction of the m-dimensional SU(2)-irrep sigma_m to G."""
    if m < 0:
        raise ValueError("sigma index must be nonnegative")
    ct = character_table(G)
    if m == 0:
        return VirtualRep(G, {})
    ones = [rational(1)] * len(ct.classes)
    if m == 1:
        return ct.decompose(ones)
    chi_def = G.defining_character()
    prev, cur = ones, chi_def
    for _ in range(m - 2):
        prev, cur = cur, [d * c - p for d, c, p in zip(chi_def, cur, prev)]
    return ct.decompose(cur)


def res_su2_to_T(m: int) -> dict:
    """Weights of sigma_m on the circle: a^(m-1) + a^(m-3) + ... + a^(1-m)."""
    return {m - 1 - 2 * t: 1 for t in range(m)}


def res_su2_to_O2(m: int) -> dict:
    """sigma_m on O(2): paired weights kappa_i plus 1 or delta in the middle."""
    out = {}
    for i in range(m - 1, 0, -2):
        out["kappa_%d" % i] = 1
    if m % 2 == 1:
        j = (m - 1) // 2
        out["1" if j % 2 == 0 else "delta"] = 1
    return out


def res_O2_to_T(o2rep: dict) -> dict:
    out = {}

    def add(i, c):
        out[i] = out.get(i, 0) + c
        if not out[i]:
            del out[i]

    for k, c in o2rep.items():
        if k in ("1", "delta"):
            add(0, c)
        else:
            i = int(k.split("_")[1])
            add(i, c)
            add(-i, c)
    return out


def ind_T_to_O2(trep: dict) -> dict:
    """Induction R_T -> R_O2: 1 -> 1 + delta, a^i -> kappa_|i|."""
    out = {}

    def add(k, c):
        out[k] = out.get(k, 0) + c
        if not out[k]:
            del out[k]

    for i, c in trep.items():
        if i == 0:
            add("1", c)
            add("delta", c)
        else:
            add("kappa_%d" % abs(i), c)
    return out


def dirac_induce_T_to_SU2(weight: int) -> dict:
    """Dirac induction: 0 -> 0, lambda -> sigma_lambda, -lambda -> -sigma_lambda."""
    if weight == 0:
        return {}
    if weight > 0:
        return {weight: 1}
    return {-weight: -1}


def dirac_induce_finite_to_O2(rho: VirtualRep, d: str) -> int:
    """Coefficient of 1^- under Dirac induction into the graded O(2) ring.

    d names the 1-dimensional irrep of rho's group playing Res delta;
    the answer is Mult_1(rho) - Mult_d(rho).
    """
    ct = character_table(rho.group)
    if d not in ct.labels:
        raise InvalidEmbedding("no irrep %r in %s" % (d, rho.group.name))
    if ct.dim_of(d) != 1:
        raise InvalidEmbedding("%r is not one-dimensional" % d)
    triv = _trivial_label(ct)
    return rho.coeffs.get(triv, 0) - rho.coeffs.get(d, 0)


def _trivial_label(ct: CharacterTable) -> str:
    for lab, dim in zip(ct.labels, ct.dims):
        if dim != 1:
            continue
        if all(v == rational(1) for v in ct.chars[lab]):
            return lab
    raise AssertionError("no trivial irrep found")
