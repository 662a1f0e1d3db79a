"""Permutation groups on {0, ..., n-1}.

Composition convention (used everywhere in the package): ``p * q`` applies
``p`` first and then ``q``, so ``(p * q)(x) == q(p(x))``.

Groups carry a lazily built stabilizer chain (deterministic Schreier-Sims with
base points taken in increasing order).  The chain gives the group order,
membership testing, point stabilizers and an element iterator.
"""

from __future__ import annotations

import json
from collections import Counter
from math import gcd, prod

ENUMERATION_LIMIT = 10 ** 6
SUBGROUP_SEARCH_LIMIT = 1000


class PermError(ValueError):
    pass


# -- raw tuple helpers (hot paths work on tuples, not Permutation objects) ----

def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _identity(n):
    return tuple(range(n))


def _cycle_order(p):
    seen = bytearray(len(p))
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise PermError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images):
        obj = cls.__new__(cls)
        obj.images = images
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw(_identity(n))

    @classmethod
    def from_cycles(cls, n, *cycles):
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise PermError("degree mismatch")
        return Permutation._raw(_mul(self.images, other.images))

    def inverse(self):
        return Permutation._raw(_inv(self.images))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = _identity(self.degree)
        base = self.images
        while e:
            if e & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            e >>= 1
        return Permutation._raw(result)

    def order(self):
        return _cycle_order(self.images)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self):
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


# -- stabilizer chain ----------------------------------------------------------

class _Level:
    __slots__ = ("base", "gens", "transversal", "orbit", "checked")

    def __init__(self, base, n):
        self.base = base
        self.gens = []
        # transversal[beta] maps base -> beta
        self.transversal = {base: _identity(n)}
        self.orbit = [base]
        self.checked = set()

    def add_gen(self, g):
        self.gens.append(g)
        # extend orbit without touching existing transversal entries
        i = 0
        while i < len(self.orbit):
            beta = self.orbit[i]
            u = self.transversal[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in self.transversal:
                    self.transversal[gamma] = _mul(u, s)
                    self.orbit.append(gamma)
            i += 1


class StabilizerChain:
    """Base, strong generators and explicit transversals for a group."""

    def __init__(self, n, gens, base_prefix=()):
        self.n = n
        self.levels: list[_Level] = []
        ident = _identity(n)
        gens = [g for g in dict.fromkeys(gens) if g != ident]
        for b in base_prefix:
            self.levels.append(_Level(b, n))
        for g in gens:
            if all(g[lv.base] == lv.base for lv in self.levels):
                self.levels.append(_Level(_first_moved(g), n))
        if not self.levels:
            return
        for g in gens:
            for lv in self.levels:
                lv_index = self.levels.index(lv)
                # g belongs to S_i for every level whose earlier bases it fixes
                if all(g[self.levels[j].base] == self.levels[j].base for j in range(lv_index)):
                    lv.add_gen(g)
        self._schreier_sims()

    def _strip(self, g, start):
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            u = lv.transversal.get(g[lv.base])
            if u is None:
                return g, j
            g = _mul(g, _inv(u))
        return g, len(self.levels)

    def _schreier_sims(self):
        ident = _identity(self.n)
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for beta in list(lv.orbit):
                u_beta = lv.transversal[beta]
                for s_idx, s in enumerate(lv.gens):
                    if (beta, s_idx) in lv.checked:
                        continue
                    lv.checked.add((beta, s_idx))
                    gamma = s[beta]
                    h = _mul(_mul(u_beta, s), _inv(lv.transversal[gamma]))
                    y, j = self._strip(h, i + 1)
                    if y == ident:
                        continue
                    if j == len(self.levels):
                        self.levels.append(_Level(_first_moved(y), self.n))
                    for l in range(i + 1, j + 1):
                        self.levels[l].add_gen(y)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    @property
    def base(self):
        return [lv.base for lv in self.levels]

    def order(self):
        return prod(len(lv.orbit) for lv in self.levels)

    def contains(self, g):
        y, _ = self._strip(g, 0)
        return y == _identity(self.n)

    def elements(self):
        """Iterate all elements as tuples (deterministic order)."""
        n = self.n

        def rec(depth, acc):
            if depth < 0:
                yield acc
                return
            lv = self.levels[depth]
            for beta in lv.orbit:
                yield from rec(depth - 1, _mul(acc, lv.transversal[beta]))

        if not self.levels:
            yield _identity(n)
            return
        yield from rec(len(self.levels) - 1, _identity(n))


def _first_moved(g):
    for i, x in enumerate(g):
        if i != x:
            return i
    raise PermError("identity has no moved point")


# -- groups --------------------------------------------------------------------

class PermGroup:
    def __init__(self, degree, generators, name=None):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise PermError(f"generator of degree {g.degree} in a group of degree {degree}")
            gens.append(g)
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain = None
        self._order = None

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    @property
    def _gens(self):
        return [g.images for g in self.generators]

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self._gens)
        return self._chain

    def order(self) -> int:
        if self._order is None:
            self._order = self.chain.order()
        return self._order

    def contains(self, g) -> bool:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if len(images) != self.degree:
            return False
        return self.chain.contains(images)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def elements(self):
        for images in self.chain.elements():
            yield Permutation._raw(images)

    def _check_point(self, point):
        if not 0 <= point < self.degree:
            raise PermError(f"point {point} out of range 0..{self.degree - 1}")


def orbit(g: PermGroup, point: int) -> set:
    g._check_point(point)
    return set(_orbit_list(g._gens, point))


def _orbit_list(gens, point):
    seen = {point}
    out = [point]
    i = 0
    while i < len(out):
        x = out[i]
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
        i += 1
    return out


def orbits(g: PermGroup) -> list:
    """All orbits, each sorted, ordered by smallest element."""
    seen = set()
    out = []
    gens = g._gens
    for x in range(g.degree):
        if x not in seen:
            orb = _orbit_list(gens, x)
            seen.update(orb)
            out.append(sorted(orb))
    return out


def group_order(g: PermGroup) -> int:
    return g.order()


def point_stabilizer(g: PermGroup, point: int) -> PermGroup:
    """Stabilizer of a point, generated by the strong generators below it."""
    g._check_point(point)
    chain = StabilizerChain(g.degree, g._gens, base_prefix=(point,))
    if len(chain.levels) > 1:
        gens = chain.levels[1].gens
    else:
        gens = []
    name = f"{g.name}_{point}" if g.name else None
    stab = PermGroup(g.degree, [Permutation._raw(x) for x in gens], name=name)
    # the sub-chain is already a valid chain for the stabilizer
    sub = StabilizerChain.__new__(StabilizerChain)
    sub.n = g.degree
    sub.levels = chain.levels[1:]
    stab._chain = sub
    return stab


def setwise_stabilizer_order(g: PermGroup, subset) -> int:
    """|G_S| via the orbit of S: |G| / |S^G|."""
    return g.order() // len(set_orbit(g, subset))


def set_orbit(g: PermGroup, subset) -> set:
    start = frozenset(subset)
    seen = {start}
    todo = [start]
    gens = g._gens
    while todo:
        s = todo.pop()
        for h in gens:
            t = frozenset(h[x] for x in s)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def is_transitive(g: PermGroup) -> bool:
    if g.degree == 0:
        return True
    return len(_orbit_list(g._gens, 0)) == g.degree


def _require_transitive(g):
    if not is_transitive(g):
        raise PermError("group is not transitive")


def minimal_block(g: PermGroup, a: int, b: int) -> list:
    """Smallest block of imprimitivity containing a and b (union-find closure)."""
    parent = list(range(g.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = g._gens
    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for s in gens:
            rx, ry = find(s[x]), find(s[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((rx, ry))
    root = find(a)
    return sorted(x for x in range(g.degree) if find(x) == root)


def is_primitive(g: PermGroup):
    """Return ``(primitive, witness)``.

    ``witness`` is None for primitive groups, otherwise the smallest proper
    block containing 0 among the minimal blocks of the pairs {0, d}.
    """
    if g.degree < 2:
        raise PermError("primitivity needs degree >= 2")
    _require_transitive(g)
    best = None
    for delta in range(1, g.degree):
        if best is not None and delta in best:
            continue
        block = minimal_block(g, 0, delta)
        if len(block) < g.degree and (best is None or len(block) < len(best)):
            best = block
    return best is None, best


def subdegrees(g: PermGroup, base: int = 0) -> list:
    """Orbit lengths of the stabilizer of ``base``, sorted ascending."""
    g._check_point(base)
    _require_transitive(g)
    stab = point_stabilizer(g, base)
    return sorted(len(o) for o in orbits(stab))


def elements_of_order(g: PermGroup, m: int) -> list:
    if g.order() > ENUMERATION_LIMIT:
        raise PermError(f"group of order {g.order()} too large to enumerate")
    return [Permutation._raw(x) for x in g.chain.elements() if _cycle_order(x) == m]


def order_statistics(g: PermGroup) -> Counter:
    """Counter of element orders (exhaustive)."""
    if g.order() > ENUMERATION_LIMIT:
        raise PermError(f"group of order {g.order()} too large to enumerate")
    return Counter(_cycle_order(x) for x in g.chain.elements())


def generated_subgroup(g: PermGroup, gens, name=None) -> PermGroup:
    return PermGroup(g.degree, list(gens), name=name)


def _closure_size(gens, limit):
    """Size of <gens> by breadth-first multiplication; None once above limit."""
    n = len(gens[0])
    ident = _identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        return None
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def find_subgroup(g: PermGroup, order: int, generator_orders=None, name=None) -> PermGroup:
    """Find a subgroup of the given order generated by two elements.

    Groups of order <= SUBGROUP_SEARCH_LIMIT are searched exhaustively over
    pairs of elements whose orders divide ``order``.  Larger groups need
    ``generator_orders=(a, b)``: pairs of an element of order a and one of
    order b are tried until they generate a group of the requested order.
    Raises PermError when nothing is found.
    """
    if g.order() % order:
        raise PermError(f"{order} does not divide |G| = {g.order()}")
    if generator_orders is None and g.order() > SUBGROUP_SEARCH_LIMIT:
        raise PermError("exhaustive subgroup search is limited to groups of order "
                        f"<= {SUBGROUP_SEARCH_LIMIT}; give generator_orders")
    elems = list(g.chain.elements())
    orders = {x: _cycle_order(x) for x in elems}
    if generator_orders is None:
        cand = sorted((x for x in elems if order % orders[x] == 0),
                      key=lambda x: (-orders[x], x))
        firsts, seconds = cand, cand
    else:
        a, b = generator_orders
        firsts = sorted(x for x in elems if orders[x] == a)
        seconds = sorted(x for x in elems if orders[x] == b)
    for x in firsts:
        for y in seconds:
            if y == x:
                continue
            if _closure_size([x, y], order) == order:
                return PermGroup(g.degree, [Permutation._raw(x), Permutation._raw(y)], name=name)
    raise PermError(f"no subgroup of order {order} found")


def coset_action(g: PermGroup, h: PermGroup, name=None) -> PermGroup:
    """Action of g on the right cosets Hx by right multiplication.

    Coset 0 is H itself; further cosets are numbered in breadth-first order
    over g's generators, so the result is deterministic.
    """
    if not h.is_subgroup_of(g):
        raise PermError("h is not a subgroup of g")
    if h.order() > ENUMERATION_LIMIT:
        raise PermError("subgroup too large for coset enumeration")
    h_elems = list(h.chain.elements())

    def key(x):
        return min(_mul(e, x) for e in h_elems)

    gens = g._gens
    ident = _identity(g.degree)
    reps = [ident]
    index = {key(ident): 0}
    images = [[None] * len(gens)]
    i = 0
    while i < len(reps):
        for j, s in enumerate(gens):
            y = _mul(reps[i], s)
            k = key(y)
            if k not in index:
                index[k] = len(reps)
                reps.append(y)
                images.append([None] * len(gens))
            images[i][j] = index[k]
        i += 1
    n = len(reps)
    if n * h.order() != g.order():
        raise PermError("coset enumeration inconsistent with |G|/|H|")
    new_gens = [Permutation([images[c][j] for c in range(n)]) for j in range(len(gens))]
    return PermGroup(n, new_gens, name=name)


def action_on_sets(g: PermGroup, sets, name=None) -> PermGroup:
    """Induced action on a list of point sets that g permutes."""
    sets = [frozenset(s) for s in sets]
    index = {s: i for i, s in enumerate(sets)}
    gens = []
    for s in g.generators:
        img = []
        for t in sets:
            u = frozenset(s(x) for x in t)
            if u not in index:
                raise PermError(f"generator does not preserve the set family: {sorted(t)}")
            img.append(index[u])
        gens.append(Permutation(img))
    return PermGroup(len(sets), gens, name=name)


# -- JSON exchange -------------------------------------------------------------

def group_to_dict(g: PermGroup, with_order=True) -> dict:
    d = {"schema": 1, "degree": g.degree,
         "generators": [list(x.images) for x in g.generators]}
    if g.name:
        d["name"] = g.name
    if with_order:
        d["order"] = g.order()
    return d


def group_from_dict(d: dict, check_order=True) -> PermGroup:
    g = PermGroup(int(d["degree"]), [Permutation(x) for x in d["generators"]], name=d.get("name"))
    if check_order and "order" in d and g.order() != int(d["order"]):
        raise PermError(f"asserted order {d['order']} but chain gives {g.order()}")
    return g


def dump_group(g: PermGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(group_to_dict(g), fh)
        fh.write("\n")


def load_group(path) -> PermGroup:
    with open(path) as fh:
        return group_from_dict(json.load(fh))
