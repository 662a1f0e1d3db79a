"""Incidence structures: verification, constructions and flag-transitivity.

A :class:`Design` is a point count plus a canonically sorted list of blocks
(sorted integer tuples).  Constructions return designs on points labelled
0..v-1; the matching group actions are available through the ``*_construction``
helpers, which return a :class:`Construction` bundling design and group.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd

from .permgrp import (
    PermGroup,
    Permutation,
    _cycle_order,
    _inv,
    _mul,
    coset_action,
    elements_of_order,
    find_subgroup,
    is_primitive,
    is_transitive,
    orbit,
    point_stabilizer,
    subdegrees,
)
from .unitary import isotropic_projective_points, point_key, psl2_action, unital_group

SEARCH_LIMIT = 5 * 10 ** 6


class DesignError(ValueError):
    """Raised when a structure fails a design property; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lam: int

    def as_tuple(self):
        return (self.v, self.b, self.r, self.k, self.lam)

    def fisher_ok(self) -> bool:
        return self.b >= self.v

    def is_nontrivial(self) -> bool:
        return 2 < self.k < self.v - 1

    def identity_checks(self) -> dict:
        """The elementary divisibility/inequality facts for a 2-design."""
        v, b, r, k, lam = self.as_tuple()
        checks = {
            "r(k-1) = lam(v-1)": r * (k - 1) == lam * (v - 1),
            "vr = bk": v * r == b * k,
            "lam*v < r^2": lam * v < r * r,
            "gcd(r, lam) = 1": gcd(r, lam) == 1,
        }
        if gcd(r, lam) == 1:
            checks["r | v-1"] = (v - 1) % r == 0
        return checks

    def __str__(self):
        return "(v,b,r,k,lam) = (%d,%d,%d,%d,%d)" % self.as_tuple()


@dataclass(frozen=True)
class Design:
    v: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(x) for x in B)) for B in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        for B in blocks:
            if len(set(B)) != len(B):
                raise DesignError(f"block {B} repeats a point", witness=B)
            if B and not (0 <= B[0] and B[-1] < self.v):
                raise DesignError(f"block {B} has points outside 0..{self.v - 1}", witness=B)

    @property
    def b(self):
        return len(self.blocks)

    @property
    def k(self):
        sizes = {len(B) for B in self.blocks}
        if len(sizes) != 1:
            raise DesignError(f"non-uniform block sizes {sorted(sizes)}", witness=sorted(sizes))
        return sizes.pop()

    def is_simple(self):
        return len(set(self.blocks)) == len(self.blocks)

    def to_dict(self):
        return {"schema": 1, "v": self.v, "k": self.k, "blocks": [list(B) for B in self.blocks]}

    @classmethod
    def from_dict(cls, d):
        des = cls(int(d["v"]), tuple(tuple(B) for B in d["blocks"]))
        if "k" in d and des.blocks and des.k != int(d["k"]):
            raise DesignError(f"declared k={d['k']} but blocks have size {des.k}")
        return des


def dump_design(d: Design, path):
    with open(path, "w") as fh:
        json.dump(d.to_dict(), fh)
        fh.write("\n")


def load_design(path) -> Design:
    with open(path) as fh:
        return Design.from_dict(json.load(fh))


# -- verification ----------------------------------------------------------------

def verify_design(d: Design) -> DesignParams:
    """Exhaustively check the 2-design property and return its parameters."""
    if d.v < 2 or not d.blocks:
        raise DesignError("need at least two points and one block")
    k = d.k
    through = [0] * d.v
    pairs = Counter()
    for B in d.blocks:
        for x in B:
            through[x] += 1
        pairs.update(combinations(B, 2))
    lam = pairs[(0, 1)]
    for pair in combinations(range(d.v), 2):
        c = pairs[pair]
        if c != lam:
            raise DesignError(f"pair {pair} lies in {c} blocks, pair (0, 1) in {lam}",
                              witness=(pair, c, lam))
    r = through[0]
    for x, c in enumerate(through):
        if c != r:
            raise DesignError(f"point {x} lies in {c} blocks, point 0 in {r}", witness=(x, c, r))
    if not 2 < k < d.v - 1:
        raise DesignError(f"trivial design: k={k}, v={d.v}", witness=(k, d.v))
    return DesignParams(d.v, d.b, r, k, lam)


# -- group actions on designs ------------------------------------------------------

def block_permutations(g: PermGroup, d: Design) -> list:
    """Induced permutations of the block list, one per generator of g."""
    if g.degree != d.v:
        raise DesignError(f"group degree {g.degree} differs from v={d.v}")
    index = {}
    for i, B in enumerate(d.blocks):
        index.setdefault(frozenset(B), i)
    perms = []
    for gi, s in enumerate(g.generators):
        img = []
        for B in d.blocks:
            j = index.get(frozenset(s.images[x] for x in B))
            if j is None:
                raise DesignError(f"generator {gi} maps block {B} outside the design",
                                  witness=(gi, B))
            img.append(j)
        perms.append(tuple(img))
    return perms


def _combined_group(g, d, bperms):
    gens = [s.images + tuple(d.v + j for j in bp) for s, bp in zip(g.generators, bperms)]
    return PermGroup(d.v + d.b, [Permutation._raw(x) for x in gens])


def flag_orbit_count(g: PermGroup, d: Design) -> int:
    """Number of orbits of g on flags (point, block) with the point on the block."""
    bperms = block_permutations(g, d)
    flags = [(x, i) for i, B in enumerate(d.blocks) for x in B]
    index = {f: n for n, f in enumerate(flags)}
    gens = [s.images for s in g.generators]
    seen = [False] * len(flags)
    count = 0
    for start in range(len(flags)):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        stack = [start]
        while stack:
            x, i = flags[stack.pop()]
            for s, bp in zip(gens, bperms):
                n = index[(s[x], bp[i])]
                if not seen[n]:
                    seen[n] = True
                    stack.append(n)
    return count


def flag_transitivity(g: PermGroup, d: Design) -> dict:
    """Both flag-transitivity routes: flag orbits, and block-transitivity plus
    transitivity of a block stabilizer on the block."""
    bperms = block_permutations(g, d)
    via_flags = flag_orbit_count(g, d) == 1
    combined = _combined_group(g, d, bperms)
    block_orbit = {d.v + j for j in range(d.b)}
    block_transitive = orbit(combined, d.v) == block_orbit
    stab = point_stabilizer(combined, d.v)
    B0 = d.blocks[0]
    on_block = orbit(stab, B0[0]) == set(B0)
    return {
        "flag_orbits_route": via_flags,
        "block_route": block_transitive and on_block,
        "block_transitive": block_transitive,
        "block_stabilizer_order": stab.order(),
    }


def is_flag_transitive(g: PermGroup, d: Design) -> bool:
    res = flag_transitivity(g, d)
    if res["flag_orbits_route"] != res["block_route"]:
        raise AssertionError(f"flag-transitivity routes disagree: {res}")
    return res["flag_orbits_route"]


# -- base-block development and search ------------------------------------------------

def develop_base_block(g: PermGroup, block) -> Design:
    """The orbit of a block under g, as a design."""
    block = tuple(sorted(set(block)))
    if any(not 0 <= x < g.degree for x in block):
        raise DesignError(f"block {block} has points outside 0..{g.degree - 1}", witness=block)
    return Design(g.degree, tuple(_set_orbit(g, block)))


def _set_orbit(g, block, limit=None):
    start = tuple(sorted(block))
    seen = {start}
    todo = [start]
    gens = [s.images for s in g.generators]
    while todo:
        s = todo.pop()
        for h in gens:
            t = tuple(sorted(h[x] for x in s))
            if t not in seen:
                seen.add(t)
                if limit is not None and len(seen) > limit:
                    return None
                todo.append(t)
    return seen


def pair_orbits(g: PermGroup):
    """Orbit index matrix of g on unordered pairs, plus orbit sizes."""
    n = g.degree
    label = [[-1] * n for _ in range(n)]
    sizes = []
    gens = [s.images for s in g.generators]
    for x in range(n):
        for y in range(x + 1, n):
            if label[x][y] != -1:
                continue
            oid = len(sizes)
            label[x][y] = label[y][x] = oid
            stack = [(x, y)]
            size = 1
            while stack:
                a, b = stack.pop()
                for s in gens:
                    c, e = s[a], s[b]
                    if label[c][e] == -1:
                        label[c][e] = label[e][c] = oid
                        size += 1
                        stack.append((c, e))
            sizes.append(size)
    return label, sizes


def find_base_blocks(g: PermGroup, k: int, lam: int) -> list:
    """All block-transitive 2-(v, k, lam) designs developed from one base block.

    k-subsets are taken up to g-equivalence, each represented by the
    lexicographically least set in its orbit.  A subset B qualifies exactly
    when its orbit is a 2-design with the target lam and gcd(r, lam) = 1.
    The search only visits subsets containing point 0 (every orbit of a
    transitive group has one) and prunes with the pair-orbit condition: if
    the orbit of B has b blocks, B meets each pair-orbit O in lam*|O|/b pairs.
    """
    v = g.degree
    if comb(v, k) > SEARCH_LIMIT:
        raise DesignError(f"C({v},{k}) = {comb(v, k)} exceeds the search bound {SEARCH_LIMIT}")
    if not is_transitive(g):
        raise DesignError("base-block search needs a transitive group")
    if not 2 < k < v - 1:
        return []
    num, den = lam * v * (v - 1), k * (k - 1)
    if num % den:
        return []
    b = num // den
    label, sizes = pair_orbits(g)
    targets = []
    for s in sizes:
        if (lam * s) % b:
            return []
        targets.append(lam * s // b)

    found = {}
    counts = [0] * len(sizes)
    chosen = [0]

    def extend(start):
        if len(chosen) == k:
            _consider(tuple(chosen))
            return
        need = k - len(chosen)
        for x in range(start, v - need + 1):
            row = label[x]
            added = []
            ok = True
            for y in chosen:
                o = row[y]
                counts[o] += 1
                added.append(o)
                if counts[o] > targets[o]:
                    ok = False
                    break
            if ok:
                chosen.append(x)
                extend(x + 1)
                chosen.pop()
            for o in added:
                counts[o] -= 1

    def _consider(cand):
        orbit_sets = _set_orbit(g, cand, limit=b)
        if orbit_sets is None or len(orbit_sets) != b:
            return
        canon = min(orbit_sets)
        if canon not in found:
            found[canon] = orbit_sets

    extend(1)
    out = []
    for canon in sorted(found):
        des = Design(v, tuple(found[canon]))
        try:
            params = verify_design(des)
        except DesignError:
            continue
        if params.lam == lam and gcd(params.r, params.lam) == 1:
            out.append(des)
    return out


# -- isomorphism ---------------------------------------------------------------------

def intersection_distribution(d: Design) -> dict:
    """Counter of |B cap C| over unordered pairs of distinct blocks."""
    sets = [set(B) for B in d.blocks]
    cnt = Counter(len(sets[i] & sets[j]) for i, j in combinations(range(len(sets)), 2))
    return dict(sorted(cnt.items()))


def onan_count(d: Design) -> int:
    """Number of O'Nan configurations in a linear space (lam = 1).

    An O'Nan configuration is four blocks, pairwise meeting in six distinct
    points.  The loop below meets each configuration 12 times: once for each
    of its six points x and each of the two ways to label the opposite lines.
    """
    blocks = [set(B) for B in d.blocks]
    line_of = {}
    through = [[] for _ in range(d.v)]
    for i, B in enumerate(d.blocks):
        for x in B:
            through[x].append(i)
        for pair in combinations(B, 2):
            if pair in line_of:
                raise DesignError("onan_count needs a linear space (lam = 1)")
            line_of[pair] = i

    def line(a, b):
        return line_of[(a, b) if a < b else (b, a)]

    total = 0
    for x in range(d.v):
        for L1, L2 in combinations(through[x], 2):
            r1 = [p for p in d.blocks[L1] if p != x]
            r2 = [p for p in d.blocks[L2] if p != x]
            for a in r1:
                for bb in r2:
                    L3 = line(a, bb)
                    for c in r1:
                        if c == a:
                            continue
                        for e in r2:
                            if e == bb:
                                continue
                            L4 = line(c, e)
                            meet = blocks[L3] & blocks[L4]
                            if meet and not (meet & (blocks[L1] | blocks[L2])):
                                total += 1
    if total % 12:
        raise AssertionError(f"O'Nan tuple count {total} is not a multiple of 12")
    return total // 12


def design_invariants(d: Design) -> dict:
    inv = {"params": verify_design(d).as_tuple(),
           "intersections": intersection_distribution(d)}
    if inv["params"][4] == 1:
        inv["onan"] = onan_count(d)
    return inv


def find_isomorphism(d1: Design, d2: Design, limit=None):
    """Backtracking search for a point bijection mapping blocks onto blocks.

    Points of d1 are placed so that each new point lies on blocks through
    already placed pairs whenever possible.  A candidate image must reproduce
    the label of every pair and triple formed with placed points: the number
    of blocks through it and, for a non-collinear triple of a linear space,
    the number of blocks crossing all three sides away from the vertices.
    Returns the image list or None.  ``limit`` caps the number of search
    nodes (None: unlimited).
    """
    if (d1.v, d1.b) != (d2.v, d2.b) or (d1.blocks and d1.k != d2.k):
        return None
    v = d1.v
    lab1 = _Labeller(d1)
    lab2 = _Labeller(d2)
    if lab1.linear != lab2.linear:
        return None
    order = _placement_order(d1, lab1.masks)
    checks = []
    for depth, x in enumerate(order):
        level = [((i,), lab1.label(x, order[i])) for i in range(depth)]
        level += [((i, j), lab1.label(x, order[i], order[j]))
                  for i in range(depth) for j in range(i)]
        level.sort(key=lambda t: (t[1][0] == 0, len(t[0])))
        checks.append(level)
    images = [-1] * v
    used = [False] * v
    nodes = [0]
    target = set(d2.blocks)

    def fits(depth, y):
        if lab1.degree[order[depth]] != lab2.degree[y]:
            return False
        for idx, want in checks[depth]:
            if lab2.label(y, *(images[order[i]] for i in idx)) != want:
                return False
        return True

    def rec(depth):
        if depth == v:
            return all(tuple(sorted(images[x] for x in B)) in target for B in d1.blocks)
        nodes[0] += 1
        if limit is not None and nodes[0] > limit:
            raise DesignError("isomorphism search exceeded its node limit")
        x = order[depth]
        for y in range(v):
            if used[y] or not fits(depth, y):
                continue
            images[x] = y
            used[y] = True
            if rec(depth + 1):
                return True
            images[x] = -1
            used[y] = False
        return False

    return list(images) if rec(0) else None


class _Labeller:
    """Isomorphism-invariant labels of point pairs and triples (cached)."""

    def __init__(self, d):
        self.d = d
        self.masks = _masks(d)
        self.degree = [bin(m).count("1") for m in self.masks]
        self.line_of = {}
        self.linear = True
        for i, B in enumerate(d.blocks):
            for pair in combinations(B, 2):
                if pair in self.line_of:
                    self.linear = False
                self.line_of[pair] = i
        self._cache = {}

    def _line(self, a, b):
        return self.line_of[(a, b) if a < b else (b, a)]

    def label(self, *pts):
        key = tuple(sorted(pts))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        acc = self.masks[key[0]]
        for x in key[1:]:
            acc &= self.masks[x]
        n = bin(acc).count("1")
        if len(key) == 3 and n == 0 and self.linear:
            hit = (0, self._transversals(*key))
        else:
            hit = (n,)
        self._cache[key] = hit
        return hit

    def _transversals(self, a, b, c):
        blocks = self.d.blocks
        ab, bc, ca = (self._line(a, b), self._line(b, c), self._line(c, a))
        side_ca = set(blocks[ca]) - {c, a}
        total = 0
        for x in blocks[ab]:
            if x in (a, b):
                continue
            for y in blocks[bc]:
                if y in (b, c):
                    continue
                if side_ca & set(blocks[self._line(x, y)]):
                    total += 1
        return total


def _masks(d):
    masks = [0] * d.v
    for i, B in enumerate(d.blocks):
        for x in B:
            masks[x] |= 1 << i
    return masks


def _placement_order(d, masks):
    """Greedy order: next point shares the most blocks with the placed points."""
    order = [0]
    placed_mask = masks[0]
    rest = set(range(1, d.v))
    while rest:
        x = max(sorted(rest), key=lambda y: bin(masks[y] & placed_mask).count("1"))
        order.append(x)
        rest.remove(x)
        placed_mask |= masks[x]
    return order


def are_isomorphic(d1: Design, d2: Design) -> bool:
    """Cheap invariants first, full backtracking search only if they agree."""
    if design_invariants(d1) != design_invariants(d2):
        return False
    return find_isomorphism(d1, d2) is not None


# -- constructions ---------------------------------------------------------------------

@dataclass
class Construction:
    name: str
    design: Design
    group: PermGroup
    labels: list = field(default_factory=list)


def hermitian_unital(q: int) -> Design:
    return unital_construction(q, with_group=False).design


def unital_construction(q: int, with_group=True) -> Construction:
    """Isotropic points of PG(2, q^2); blocks are secant-line sections (q+1 points)."""
    if q not in (2, 3, 4, 5):
        raise DesignError(f"hermitian_unital supports q in {{2,3,4,5}}, got {q}")
    pts = isotropic_projective_points(3, q)
    f = pts[0][0].field
    blocks = []
    covered = set()
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in covered:
                continue
            line = _cross(pts[i], pts[j], f)
            members = [t for t in range(n) if not _dot3(line, pts[t], f)]
            if len(members) != q + 1:
                continue
            blocks.append(tuple(members))
            covered.update(combinations(members, 2))
    design = Design(n, tuple(blocks))
    if design.b != q * q * (q * q - q + 1):
        raise DesignError(f"unital q={q}: found {design.b} blocks")
    group = unital_group(q) if with_group else None
    return Construction(f"hermitian-unital-{q}", design, group, [point_key(p) for p in pts])


def _cross(u, w, f):
    return (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])


def _dot3(a, b, f):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def witt_bose_shrikhande(n: int) -> Design:
    return wbs_construction(n).design


def wbs_construction(n: int) -> Construction:
    """Dihedral subgroups of order 2(q+1) of PSL(2, q), q = 2^n, against involutions.

    Points are the dihedral subgroups, blocks are indexed by involutions and
    consist of the subgroups containing that involution.  The group is
    PSL(2, q) acting on the dihedral subgroups by conjugation.
    """
    if not 3 <= n <= 5:
        raise DesignError(f"witt_bose_shrikhande supports 3 <= n <= 5, got {n}")
    q = 2 ** n
    G = psl2_action(q)
    cyclic_gens = [x.images for x in elements_of_order(G, q + 1)]
    involutions = sorted(x.images for x in elements_of_order(G, 2))
    # group elements of order q+1 into cyclic subgroups; label each subgroup
    # by its smallest generator
    subgroup_of = {}
    subgroups = []
    for c in sorted(cyclic_gens):
        if c in subgroup_of:
            continue
        powers = []
        x = c
        for _ in range(q):
            powers.append(x)
            x = _mul(x, c)
        sid = len(subgroups)
        subgroups.append(powers)
        for y in powers:
            if _cycle_order(y) == q + 1:
                subgroup_of[y] = sid
    if len(subgroups) != q * (q - 1) // 2:
        raise DesignError(f"found {len(subgroups)} cyclic subgroups of order {q + 1}, "
                          f"expected {q * (q - 1) // 2}")
    # dihedral normalizer: one inverting involution t, then t * c^i
    points = []
    for powers in subgroups:
        c = powers[0]
        c_inv = _inv(c)
        t = next(t for t in involutions if _mul(_mul(t, c), t) == c_inv)
        invs = frozenset([t] + [_mul(t, y) for y in powers])
        if len(invs) != q + 1:
            raise DesignError("dihedral subgroup with the wrong number of involutions")
        points.append(invs)
    inv_index = {t: i for i, t in enumerate(involutions)}
    block_sets = [[] for _ in involutions]
    for pid, invs in enumerate(points):
        for t in invs:
            block_sets[inv_index[t]].append(pid)
    design = Design(len(points), tuple(tuple(B) for B in block_sets))
    # conjugation action on points, via the cyclic part
    gens = []
    for s in G.generators:
        si = _inv(s.images)
        img = []
        for powers in subgroups:
            conj = _mul(_mul(si, powers[0]), s.images)
            img.append(subgroup_of[conj])
        gens.append(Permutation(img))
    group = PermGroup(len(points), gens, name=f"PSL(2,{q})")
    labels = [list(min(powers)) for powers in subgroups]
    return Construction(f"witt-bose-shrikhande-{n}", design, group, labels)


# -- Table 1 ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    line: int
    params: tuple
    q: int
    stabilizer: str
    stabilizer_order: int
    coset_subgroup_order: int | None  # None: Moebius action on the projective line


TABLE1 = (
    Table1Row(1, (6, 10, 5, 3, 2), 5, "D10", 10, None),
    Table1Row(2, (7, 7, 3, 3, 1), 7, "Sym4", 24, 24),
    Table1Row(3, (8, 14, 7, 4, 3), 7, "7:3", 21, None),
    Table1Row(4, (10, 15, 9, 6, 5), 9, "3^2:4", 36, None),
    Table1Row(5, (11, 11, 5, 5, 2), 11, "Alt5", 60, 60),
    Table1Row(6, (28, 36, 9, 7, 2), 8, "D18", 18, 18),
)


def table1_row(line: int) -> Table1Row:
    for row in TABLE1:
        if row.line == line:
            return row
    raise DesignError(f"Table 1 has lines 1..6, got {line}")


def table1_action(line: int) -> PermGroup:
    """PSU(2, q) = PSL(2, q) acting on v points as in the given line."""
    row = table1_row(line)
    G = psl2_action(row.q)
    if row.coset_subgroup_order is None:
        return G
    H = find_subgroup(G, row.coset_subgroup_order)
    return coset_action(G, H, name=f"PSL(2,{row.q}) on {G.order() // H.order()} cosets")


def table1_construction(line: int) -> Construction:
    row = table1_row(line)
    g = table1_action(line)
    v, b, r, k, lam = row.params
    designs = find_base_blocks(g, k, lam)
    if not designs:
        raise DesignError(f"no base block found for Table 1 line {line}")
    return Construction(f"table1-line-{line}", designs[0], g)


# -- reports ---------------------------------------------------------------------------------

def verification_report(d: Design, g: PermGroup | None = None) -> dict:
    """Parameters, and with a group: flag-transitivity, primitivity, subdegrees
    and the replication-number checks.  ``ok`` is True iff every check passes."""
    params = verify_design(d)
    report = {"schema": 1, "params": dict(zip(("v", "b", "r", "k", "lambda"), params.as_tuple())),
              "fisher": params.fisher_ok(), "checks": params.identity_checks()}
    ok = all(v for key, v in report["checks"].items() if key != "lam*v < r^2" or g is not None)
    ok = ok and report["fisher"]
    if g is not None:
        ft = flag_transitivity(g, d)
        flag = ft["flag_orbits_route"]
        if flag != ft["block_route"]:
            raise AssertionError(f"flag-transitivity routes disagree: {ft}")
        report["group_order"] = g.order()
        report["flag_transitive"] = flag
        report["block_stabilizer_order"] = ft["block_stabilizer_order"]
        transitive = is_transitive(g)
        report["point_transitive"] = transitive
        if transitive:
            prim, witness = is_primitive(g)
            subs = subdegrees(g, 0)
            report["primitive"] = prim
            report["block_witness"] = witness
            report["subdegrees"] = subs
            report["point_stabilizer_order"] = g.order() // g.degree
            report["checks"]["r | nontrivial subdegrees"] = all(s % params.r == 0 for s in subs if s > 1)
        else:
            report["primitive"] = False
        ok = ok and flag and report["primitive"] and all(report["checks"].values())
    report["ok"] = bool(ok)
    return report


def report_text(report: dict) -> str:
    rows = [("v,b,r,k,lambda", ",".join(str(x) for x in report["params"].values()))]
    rows.append(("fisher b >= v", str(report["fisher"]).lower()))
    for key in ("group_order", "point_stabilizer_order", "block_stabilizer_order",
                "flag_transitive", "point_transitive", "primitive", "subdegrees"):
        if key in report:
            val = report[key]
            val = str(val).lower() if isinstance(val, bool) else str(val)
            rows.append((key.replace("_", " "), val))
    for key, val in report["checks"].items():
        rows.append((key, "pass" if val else "FAIL"))
    rows.append(("ok", str(report["ok"]).lower()))
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{a.ljust(width)}  {b}" for a, b in rows) + "\n"
