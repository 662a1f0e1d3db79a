"""Hermitian geometry over GF(q^2) and explicit SU(3, q), PSL(2, q) actions.

The Hermitian form uses the antidiagonal identity Gram matrix,
``h(u, v) = sum_i u_i * conj(v_{n-1-i})``, so the first basis vector is
isotropic.  Projective points are vectors scaled so that the first nonzero
coordinate is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd

from .ffield import Field, FieldElement, FieldError, gf, prime_power
from .permgrp import Permutation, PermGroup, PermError

MAX_SU3_Q = 8
MAX_PSL2_Q = 32


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class HermitianSpace:
    n: int
    field: Field

    def __post_init__(self):
        if not self.field.is_square_order():
            raise GeometryError(f"{self.field} is not of square order q^2")
        g = self.gram
        for i in range(self.n):
            for j in range(self.n):
                if g[i][j] != g[j][i].conjugate():
                    raise GeometryError("gram matrix is not conjugate-symmetric")
        if not determinant(g, self.field):
            raise GeometryError("form is degenerate")

    @classmethod
    def over(cls, n: int, q: int) -> "HermitianSpace":
        return cls(n, gf(q * q))

    @property
    def q(self) -> int:
        return self.field.subfield_order

    @cached_property
    def gram(self):
        f = self.field
        return tuple(tuple(f.one if i + j == self.n - 1 else f.zero for j in range(self.n))
                     for i in range(self.n))

    def form(self, u, v) -> FieldElement:
        return hermitian_form(self, u, v)


def hermitian_form(s: HermitianSpace, u, v) -> FieldElement:
    if len(u) != s.n or len(v) != s.n:
        raise GeometryError(f"vectors must have length {s.n}")
    f = s.field
    total = f.zero
    for i in range(s.n):
        total = total + f(u[i]) * f(v[s.n - 1 - i]).conjugate()
    return total


def normalize(vec):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for x in vec:
        if x:
            inv = x.inverse()
            return tuple(y * inv for y in vec)
    return None


def projective_points(field: Field, n: int):
    """All normalized nonzero vectors of length n, in canonical order."""
    els = field.elements
    out = []
    for lead in range(n):
        for tail in product(els, repeat=n - lead - 1):
            out.append((field.zero,) * lead + (field.one,) + tail)
    return sorted(out, key=point_key)


def point_key(pt):
    return tuple(x.index for x in pt)


def isotropic_projective_points(n: int, q: int) -> list:
    """The q^3 + 1 isotropic points of PG(2, q^2), sorted by coordinate indices."""
    if n != 3:
        raise GeometryError("isotropic point enumeration is implemented for n = 3 only")
    p, a = prime_power(q)
    if q ** 2 > 2 ** 20:
        raise GeometryError("q^2 exceeds the supported field size")
    s = HermitianSpace.over(3, q)
    pts = [v for v in projective_points(s.field, 3) if not hermitian_form(s, v, v)]
    return pts


# -- matrices ------------------------------------------------------------------

def mat_mul(A, B, f: Field):
    n, m, k = len(A), len(B[0]), len(B)
    return tuple(tuple(_dot((A[i][t] for t in range(k)), (B[t][j] for t in range(k)), f)
                       for j in range(m)) for i in range(n))


def _dot(xs, ys, f):
    total = f.zero
    for x, y in zip(xs, ys):
        total = total + x * y
    return total


def mat_vec(A, v, f: Field):
    return tuple(_dot(row, v, f) for row in A)


def determinant(A, f: Field):
    n = len(A)
    if n == 1:
        return A[0][0]
    total = f.zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * determinant(minor, f)
        total = total + term if j % 2 == 0 else total - term
    return total


def identity_matrix(n, f):
    return tuple(tuple(f.one if i == j else f.zero for j in range(n)) for i in range(n))


class UnitaryMatrix:
    """An element of SU(n, q) for the antidiagonal form (checked on creation)."""

    def __init__(self, space: HermitianSpace, entries):
        f = space.field
        self.space = space
        self.entries = tuple(tuple(f(x) for x in row) for row in entries)
        if len(self.entries) != space.n or any(len(r) != space.n for r in self.entries):
            raise GeometryError("matrix shape does not match the space")
        self.determinant = determinant(self.entries, f)
        basis = identity_matrix(space.n, f)
        for u in basis:
            mu = mat_vec(self.entries, u, f)
            for v in basis:
                mv = mat_vec(self.entries, v, f)
                if hermitian_form(space, mu, mv) != hermitian_form(space, u, v):
                    raise GeometryError("matrix does not preserve the Hermitian form")

    def is_special(self) -> bool:
        return self.determinant == self.space.field.one

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        return UnitaryMatrix(self.space, mat_mul(self.entries, other.entries, self.space.field))

    def __call__(self, v):
        return mat_vec(self.entries, v, self.space.field)

    def __repr__(self):
        return "UnitaryMatrix(" + repr([[x.index for x in r] for r in self.entries]) + ")"


def _trace_zero_basis(f: Field):
    """A GF(p)-basis of {b : b + b^q = 0}."""
    return _span_basis([b for b in f.elements if b and not f.trace(b)], f)


def _span_basis(candidates, f):
    basis, span = [], {f.zero}
    for b in candidates:
        if b in span:
            continue
        basis.append(b)
        new = set()
        for s in span:
            for c in range(f.p):
                new.add(s + b * c)
        span = new
    return basis


def su_generators(n: int, q: int) -> list:
    """Generators of SU(3, q): root elements, a torus element and a Weyl element.

    Root elements are x(a, b) = [[1, a, b], [0, 1, -conj(a)], [0, 0, 1]] with
    b + conj(b) = -a conj(a), taken for a over a GF(p)-basis of GF(q^2) and
    for b over a basis of the trace-zero elements when a = 0.
    """
    if n != 3:
        raise GeometryError("explicit SU(n, q) generators are implemented for n = 3 only")
    p, a = prime_power(q)
    if q > MAX_SU3_Q:
        raise GeometryError(f"SU(3, q) generation supports q <= {MAX_SU3_Q}")
    s = HermitianSpace.over(3, q)
    f = s.field
    zero, one = f.zero, f.one
    gens = []

    def root(x, y):
        return UnitaryMatrix(s, ((one, x, y), (zero, one, -x.conjugate()), (zero, zero, one)))

    for x in f.basis():
        target = -f.norm(x)
        y = next(y for y in f.elements if f.trace(y) == target)
        gens.append(root(x, y))
    for y in _trace_zero_basis(f):
        gens.append(root(zero, y))
    z = f.generator
    gens.append(UnitaryMatrix(s, ((z, zero, zero),
                                  (zero, z.conjugate() / z, zero),
                                  (zero, zero, z.conjugate().inverse()))))
    gens.append(UnitaryMatrix(s, ((zero, zero, one), (zero, -one, zero), (one, zero, zero))))
    for g in gens:
        if not g.is_special():
            raise GeometryError(f"generator {g} has determinant {g.determinant}")
    return gens


def projective_action(gens, pts, name=None) -> PermGroup:
    """Permutation group induced by matrices on a list of projective points.

    The permutation of a matrix M sends point i to the index of M * pts[i].
    Since M acts on column vectors, perm(M1) * perm(M2) == perm(M2 @ M1).
    """
    index = {point_key(pt): i for i, pt in enumerate(pts)}
    perms = []
    for g in gens:
        entries = g.entries if hasattr(g, "entries") else g
        f = pts[0][0].field
        img = []
        for pt in pts:
            w = normalize(mat_vec(entries, pt, f))
            j = index.get(point_key(w))
            if j is None:
                raise GeometryError(f"matrix maps point {point_key(pt)} outside the point list")
            img.append(j)
        perms.append(Permutation(img))
    return PermGroup(len(pts), perms, name=name)


def psu_order(n: int, q: int) -> int:
    """|PSU(n, q)| (also used as the oracle for induced actions)."""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - (-1) ** i
    return order // gcd(n, q + 1)


def unital_group(q: int) -> PermGroup:
    """PSU(3, q) as a permutation group on the isotropic points.

    Aborts if the chain order differs from |PSU(3, q)|.
    """
    pts = isotropic_projective_points(3, q)
    g = projective_action(su_generators(3, q), pts, name=f"PSU(3,{q})")
    expected = psu_order(3, q)
    if g.order() != expected:
        raise GeometryError(f"SU(3,{q}) generators give a group of order {g.order()}, "
                            f"expected |PSU(3,{q})| = {expected}")
    return g


def psl2_generators(q: int) -> list:
    """SL(2, q) generators: unipotents over a GF(p)-basis, a torus element, w."""
    f = gf(q)
    zero, one = f.zero, f.one
    gens = [((one, e), (zero, one)) for e in f.basis()]
    z = f.generator
    gens.append(((z, zero), (zero, z.inverse())))
    gens.append(((zero, -one), (one, zero)))
    return gens


def psl2_action(q: int) -> PermGroup:
    """PSL(2, q) = PSU(2, q) acting on the q + 1 points of the projective line."""
    try:
        p, a = prime_power(q)
    except FieldError as exc:
        raise GeometryError(str(exc)) from None
    if q > MAX_PSL2_Q:
        raise GeometryError(f"psl2_action supports q <= {MAX_PSL2_Q}")
    f = gf(q)
    pts = projective_points(f, 2)
    g = projective_action(psl2_generators(q), pts, name=f"PSL(2,{q})")
    expected = q * (q * q - 1) // gcd(2, q - 1)
    if g.order() != expected:
        raise GeometryError(f"PSL(2,{q}) closure has order {g.order()}, expected {expected}")
    return g


def psl2_matrices(q: int) -> list:
    """All of SL(2, q) as 2x2 tuples (for brute-force oracles, small q only)."""
    f = gf(q)
    els = f.elements
    out = []
    for a_, b_, c_, d_ in product(els, repeat=4):
        if a_ * d_ - b_ * c_ == f.one:
            out.append(((a_, b_), (c_, d_)))
    return out


def point_to_json(pt) -> list:
    return [x.index for x in pt]
