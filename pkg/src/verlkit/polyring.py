"""Laurent and ordinary polynomials over Z with windowed quotient machinery.

Infinite-rank modules like Z[a^(+-1)] are realized on finite degree windows.
A quotient or homology group is trusted only when the invariant factors
computed on a window and on the window enlarged by the stabilization stride
agree; otherwise :class:`StabilizationFailure` is raised.  All matrix work
reduces to Smith normal form over Z (see `exactla`).
"""

from __future__ import annotations

import warnings
from itertools import product

from .exactla import (
    FGAbelianGroup,
    IntMatrix,
    cokernel,
    kernel_basis,
    solve_int,
)

__all__ = [
    "LaurentPoly",
    "TruncationWindow",
    "StabilizationFailure",
    "Inconclusive",
    "truncated_quotient",
    "stabilized_family",
    "matrix_from_columns",
    "coprime_certificate",
    "e6_tor",
]


class StabilizationFailure(RuntimeError):
    """Two nested windows produced different invariant factors."""


class Inconclusive(RuntimeError):
    """The bounded-degree window certified neither answer."""


class LaurentPoly:
    """Sparse Laurent polynomial over Z in one or two variables.

    Exponents may be negative; zero coefficients are never stored.

    >>> a = LaurentPoly.var("a")
    >>> (a ** -1 * (a - 1)).render()
    '1 - a^-1'
    """

    __slots__ = ("nvars", "names", "terms")

    def __init__(self, names, terms) -> None:
        names = tuple(names)
        if len(names) not in (1, 2):
            raise ValueError("one or two variables only")
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(names):
                raise ValueError("exponent arity mismatch")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "nvars", len(names))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def var(cls, name: str, names=None) -> "LaurentPoly":
        names = (name,) if names is None else tuple(names)
        exps = tuple(1 if v == name else 0 for v in names)
        return cls(names, {exps: 1})

    @classmethod
    def const(cls, c: int, names=("a",)) -> "LaurentPoly":
        return cls(names, {(0,) * len(names): c})

    def _same_ring(self, other: "LaurentPoly") -> None:
        if self.names != other.names:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.names)
        self._same_ring(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(self.names, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.names)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.const(other, self.names) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(
                self.names, {e: c * other for e, c in self.terms.items()}
            )
        self._same_ring(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                t[key] = t.get(key, 0) + c1 * c2
        return LaurentPoly(self.names, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly(
                self.names, {tuple(x * k for x in e): c if k % 2 else 1}
            )
        out = LaurentPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def support_bounds(self):
        """Per-variable (min, max) exponent over the support."""
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        lo = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        hi = [max(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(zip(lo, hi))

    def degree(self) -> int:
        """Top exponent; one-variable ordinary polynomials only."""
        if self.nvars != 1:
            raise ValueError("degree is for one-variable polynomials")
        if not self.terms:
            raise ValueError("zero polynomial")
        if min(e[0] for e in self.terms) < 0:
            raise ValueError("Laurent polynomial has no degree")
        return max(e[0] for e in self.terms)

    def coeff(self, *exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.names)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                "%s^%d" % (n, x) if x != 1 else n
                for n, x in zip(self.names, e)
                if x != 0
            )
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % self.render()


class TruncationWindow:
    """Per-variable exponent bounds plus the stabilization stride."""

    __slots__ = ("bounds", "stride")

    def __init__(self, bounds, stride: int = 5) -> None:
        bounds = tuple((int(lo), int(hi)) for lo, hi in bounds)
        if stride < 1:
            raise ValueError("stride must be positive")
        for lo, hi in bounds:
            if hi - lo < 2 * stride:
                raise ValueError("window too small: need hi - lo >= 2*stride")
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "stride", stride)

    def __setattr__(self, name, value):
        raise AttributeError("TruncationWindow is immutable")

    @classmethod
    def symmetric(cls, radius: int, nvars: int = 1, stride: int = 5):
        return cls(((-radius, radius),) * nvars, stride)

    def enlarged(self, delta: int = None) -> "TruncationWindow":
        d = self.stride if delta is None else delta
        return TruncationWindow(
            tuple((lo - d, hi + d) for lo, hi in self.bounds), self.stride
        )

    def points(self):
        ranges = [range(lo, hi + 1) for lo, hi in self.bounds]
        return list(product(*ranges))


def matrix_from_columns(labels, columns) -> IntMatrix:
    """Assemble an IntMatrix from sparse columns keyed by basis labels."""
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValueError("duplicate basis labels")
    cols = []
    for col in columns:
        v = [0] * len(labels)
        for lab, c in col.items():
            v[index[lab]] = v[index[lab]] + c
        cols.append(v)
    if not cols:
        return IntMatrix.zero(len(labels), 0)
    return IntMatrix.from_cols(cols)


def _quotient_on(labels, relations) -> FGAbelianGroup:
    return cokernel(matrix_from_columns(labels, relations), labels=labels)


def stabilized_family(family, size: int, stride: int = 5) -> FGAbelianGroup:
    """Quotient of a windowed presentation family, stabilization-checked.

    `family(w)` returns (labels, relations) where relations are sparse
    columns over the labels.  The result at window `size` is returned only
    when the enlarged window `size + stride` has identical invariants.
    """
    labels1, rels1 = family(size)
    if not rels1:
        warnings.warn(
            "degenerate presentation: no relations instantiated; "
            "the free rank below is window-dependent",
            stacklevel=2,
        )
        return FGAbelianGroup(len(labels1), (), generators=tuple(labels1))
    g1 = _quotient_on(labels1, rels1)
    labels2, rels2 = family(size + stride)
    g2 = _quotient_on(labels2, rels2)
    if (g1.free_rank, g1.torsion) != (g2.free_rank, g2.torsion):
        raise StabilizationFailure(
            "window %d gives %s but window %d gives %s"
            % (size, g1.describe(), size + stride, g2.describe())
        )
    return g1


def _monomial_label(names, exps) -> str:
    parts = ["%s^%d" % (n, e) for n, e in zip(names, exps)]
    return "*".join(parts)


def _ideal_family(names, relations, window: TruncationWindow):
    nvars = len(names)

    def family(extra: int):
        bounds = [(lo - extra, hi + extra) for lo, hi in window.bounds]
        pts = list(product(*[range(lo, hi + 1) for lo, hi in bounds]))
        labels = [_monomial_label(names, p) for p in pts]
        member = set(pts)
        rels = []
        for f in relations:
            supp = f.support_bounds()
            shift_ranges = [
                range(bounds[i][0] - supp[i][0], bounds[i][1] - supp[i][1] + 1)
                for i in range(nvars)
            ]
            for shift in product(*shift_ranges):
                col = {}
                ok = True
                for e, c in f.terms.items():
                    pt = tuple(x + s for x, s in zip(e, shift))
                    if pt not in member:
                        ok = False
                        break
                    col[_monomial_label(names, pt)] = c
                if ok and col:
                    rels.append(col)
        return labels, rels

    return family


def truncated_quotient(
    generators, relations, window: TruncationWindow
) -> FGAbelianGroup:
    """Quotient of a Laurent polynomial ring by shift-instantiated relations.

    `generators` names the ring: a variable-name tuple like ("a",) or
    ("a", "b").  Each relation polynomial is instantiated at every monomial
    shift whose support stays inside the window.
    """
    names = tuple(generators)
    if len(names) != len(window.bounds):
        raise ValueError("window arity does not match the variable count")
    for f in relations:
        if not isinstance(f, LaurentPoly):
            raise TypeError("relations must be LaurentPoly values")
        if f.is_zero():
            raise ValueError("zero relation is not shift-periodic")
        if f.names != names:
            raise ValueError("relation lives in a different ring")
    return stabilized_family(
        _ideal_family(names, relations, window), 0, window.stride
    )


# -- coprimality certificates -----------------------------------------------------


def _poly_to_vec(f: LaurentPoly, size: int):
    v = [0] * size
    for (e,), c in f.terms.items():
        v[e] = c
    return v


def _rational_gcd_degree(f: LaurentPoly, g: LaurentPoly) -> int:
    """Degree of gcd(f, g) over Q, by exact Euclidean division."""
    from fractions import Fraction

    def to_list(p):
        out = [Fraction(0)] * (p.degree() + 1)
        for (e,), c in p.terms.items():
            out[e] = Fraction(c)
        return out

    a, b = to_list(f), to_list(g)
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            q = a[-1] / b[-1]
            for i in range(len(b)):
                a[len(a) - len(b) + i] -= q * b[i]
            a.pop()
            if not a:
                a = [Fraction(0)]
        a, b = b, a
    while a and a[-1] == 0:
        a.pop()
    return len(a) - 1


def coprime_certificate(f: LaurentPoly, g: LaurentPoly):
    """Decide whether (f, g) = (1) in Z[x], with a checkable witness.

    Returns (True, (u, w)) with u*f + w*g = 1, found by integer solving on
    the stacked shift matrix over degrees < deg f + deg g + 8; or
    (False, h) where h is a nonunit common factor over Q.  Raises
    Inconclusive when the window certifies neither.
    """
    for p in (f, g):
        if p.is_zero():
            raise ValueError("nonzero polynomials required")
        if p.nvars != 1:
            raise ValueError("one-variable polynomials required")
        p.degree()  # rejects Laurent support
    size = f.degree() + g.degree() + 8
    cols = []
    x = LaurentPoly.var(f.names[0])
    fshift = size - f.degree()
    gshift = size - g.degree()
    for i in range(fshift):
        cols.append(_poly_to_vec(x**i * f, size))
    for j in range(gshift):
        cols.append(_poly_to_vec(x**j * g, size))
    M = IntMatrix.from_cols(cols)
    target = [1] + [0] * (size - 1)
    sol = solve_int(M, target)
    if sol is not None:
        u = LaurentPoly(f.names, {(i,): sol[i] for i in range(fshift)})
        w = LaurentPoly(f.names, {(j,): sol[fshift + j] for j in range(gshift)})
        if u * f + w * g != LaurentPoly.const(1, f.names):
            raise AssertionError("witness failed to expand to 1")
        return True, (u, w)
    if _rational_gcd_degree(f, g) >= 1:
        # a common factor over Q exists; certify via exact Q-gcd degree
        return False, _common_factor(f, g)
    raise Inconclusive(
        "no Bezout witness below degree %d, yet f and g are coprime over Q; "
        "the integer ideal may still be proper (e.g. contains only n > 1)"
        % size
    )


def _common_factor(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """A nonunit common divisor over Q, returned with integer coefficients."""
    from fractions import Fraction
    from math import gcd as igcd

    def to_list(p):
        out = [Fraction(0)] * (p.degree() + 1)
        for (e,), c in p.terms.items():
            out[e] = Fraction(c)
        return out

    a, b = to_list(f), to_list(g)

    def strip(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = strip(a), strip(b)
    while b:
        r = list(a)
        while len(r) >= len(b):
            if r[-1] == 0:
                r.pop()
                continue
            q = r[-1] / b[-1]
            for i in range(len(b)):
                r[len(r) - len(b) + i] -= q * b[i]
            r.pop()
        a, b = b, strip(r)
    den = 1
    for c in a:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    content = 0
    for c in ints:
        content = igcd(content, c)
    ints = [c // content for c in ints]
    return LaurentPoly(f.names, {(i,): c for i, c in enumerate(ints)})


# -- the sigma-ring Tor computation ------------------------------------------------


def _sigma_polys():
    s = LaurentPoly.var("s")
    spin = s**3 - 2 * s  # spinor restricted to the diagonal subgroup
    vect = s**4 - 3 * s**2 + 1  # vector restricted likewise
    return s, spin, vect


def e6_tor(window_size: int = 24, stride: int = 5):
    """Homology of the two-step sigma-ring complex with Ising-type relations.

    d1(p, q) = (s^2-2)[(s^4-3s^2+1)p + s^3(s^2-3)q]  maps Z[s]^2 -> Z[s],
    d2(p)    = (s^2-2)(s^3(s^2-3)p, -(s^4-3s^2+1)p)  maps Z[s] -> Z[s]^2.

    Returns (H0, H1, cert) where H0 = coker d1, H1 = ker d1 / im d2 on
    stabilized windows, and cert records the coprimality witness of the two
    cofactors plus the verified ring relation s*s = 2 in H0.
    """
    s = LaurentPoly.var("s")
    m = s**2 - 2
    A = s**4 - 3 * s**2 + 1
    B = s**3 * (s**2 - 3)
    d1f, d1g = m * A, m * B
    d2f, d2g = m * B, -(m * A)
    # complex property: d1 o d2 = 0
    if not (d1f * d2f + d1g * d2g).is_zero():
        raise AssertionError("d1 o d2 != 0; maps entered wrong")

    ok, witness = coprime_certificate(A, B)
    if not ok:
        raise AssertionError("cofactors unexpectedly share a factor")

    def h0_family(w: int):
        cod = w + d1g.degree()
        labels = ["s^%d" % i for i in range(cod)]
        rels = []
        for poly in (d1f, d1g):
            for shift in range(w):
                rels.append(
                    {"s^%d" % (e + shift): c for (e,), c in poly.terms.items()}
                )
        return labels, rels

    h0 = stabilized_family(h0_family, window_size, stride)

    def h1_groups(w: int):
        dom = w
        cod = w + d1g.degree()
        cols = []
        for poly in (d1f, d1g):
            for shift in range(dom):
                v = [0] * cod
                for (e,), c in poly.terms.items():
                    v[e + shift] = c
                cols.append(v)
        M = IntMatrix.from_cols(cols)
        K = kernel_basis(M)
        # d2 columns, expressed in the (p, q) shift coordinates of M
        d2_cols = []
        top = max(d2f.degree(), d2g.degree())
        for shift in range(max(0, dom - top)):
            v = [0] * (2 * dom)
            for (e,), c in d2f.terms.items():
                v[e + shift] = c
            for (e,), c in d2g.terms.items():
                v[dom + e + shift] = c
            d2_cols.append(v)
        if K.cols == 0:
            return FGAbelianGroup(0, ())
        coords = []
        for col in d2_cols:
            x = solve_int(K, col)
            if x is None:
                raise AssertionError("im d2 escaped ker d1 on the window")
            coords.append(x)
        C = (
            IntMatrix.from_cols(coords)
            if coords
            else IntMatrix.zero(K.cols, 0)
        )
        return cokernel(C, labels=["k%d" % i for i in range(K.cols)])

    g1 = h1_groups(window_size)
    g2 = h1_groups(window_size + stride)
    if (g1.free_rank, g1.torsion) != (g2.free_rank, g2.torsion):
        raise StabilizationFailure(
            "H1 window %d gives %s but window %d gives %s"
            % (window_size, g1.describe(), window_size + stride, g2.describe())
        )

    # ring relation in H0: s*s - 2*1 must lie in im d1
    def membership(w: int) -> bool:
        dom = w
        cod = w + d1g.degree()
        cols = []
        for poly in (d1f, d1g):
            for shift in range(dom):
                v = [0] * cod
                for (e,), c in poly.terms.items():
                    v[e + shift] = c
                cols.append(v)
        M = IntMatrix.from_cols(cols)
        target = [0] * cod
        target[2] = 1
        target[0] = -2
        return solve_int(M, target) is not None

    ring_ok = membership(window_size)
    cert = {
        "coprime_witness": witness,
        "sigma_squared_is_two": ring_ok,
        "generators": ("1", "s"),
        "relation": "s*s = 2",
    }
    return h0, g1, cert
