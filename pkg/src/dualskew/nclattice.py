"""Finite Coxeter groups by brute force, and the partition lattice below a
Coxeter element.

Group elements are plain data: the crystallographic types act on the root
lattice through integer matrices stored as row-major tuples, and I2(p) uses
('r', k) / ('s', k) pairs for dihedral rotations and reflections.  Reflection
length, the interval order, its Mobius function and the subset fold are all
defined purely in terms of the group multiplication, so the characteristic
polynomial computed here re-derives the skew growth series with no polynomial
algebra involved.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

from .exactmath import IntPoly
from .skewgrowth import CoxeterType, reflection_count

__all__ = [
    "ReflectionGroup",
    "NcLattice",
    "build_group",
    "reflection_length",
    "coxeter_element",
    "nc_interval",
    "mobius",
    "characteristic_poly",
    "skew_growth_by_subsets",
    "verify_mobius_identity",
    "save_lattice",
    "load_lattice",
]


# -- realizations -------------------------------------------------------------

def _cartan(ctype: CoxeterType) -> tuple:
    fam, l = ctype.family, ctype.rank
    rows = [[2 * (i == j) for j in range(l)] for i in range(l)]

    def bond(i, j, cij=-1, cji=-1):
        rows[i][j], rows[j][i] = cij, cji

    if fam in ("A", "B", "D"):
        chain = l - 1 if fam != "D" else l - 2
        for i in range(chain - 1):
            bond(i, i + 1)
        if fam == "A" and l >= 2:
            bond(l - 2, l - 1)
        if fam == "B":
            bond(l - 2, l - 1, -1, -2)  # last simple root short
        if fam == "D":
            bond(l - 3, l - 2)
            bond(l - 3, l - 1)
    elif fam == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (1, 3)):
            bond(i, j)
        if l >= 7:
            bond(5, 6)
        if l == 8:
            bond(6, 7)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif fam == "G":
        bond(0, 1, -1, -3)
    else:
        raise ValueError(f"no integer Cartan matrix for {ctype}")
    return tuple(tuple(r) for r in rows)


def _identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a: tuple, b: tuple) -> tuple:
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def _matrix_rank(rows) -> int:
    m = [list(r) for r in rows]
    n, rank = len(m), 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        for r in range(rank + 1, n):
            if m[r][col]:
                f = m[r][col]
                m[r] = [x * lead - y * f for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def _dihedral_mult(a: tuple, b: tuple, p: int) -> tuple:
    ta, ia = a
    tb, ib = b
    if ta == "r":
        return ("r" if tb == "r" else "s", (ia + ib) % p)
    if tb == "r":
        return ("s", (ia - ib) % p)
    return ("r", (ia - ib) % p)


_KNOWN_ORDER = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


def _expected_order(ctype: CoxeterType) -> int:
    fam, l = ctype.family, ctype.rank
    if fam == "A":
        return factorial(l + 1)
    if fam == "B":
        return 2**l * factorial(l)
    if fam == "D":
        return 2 ** (l - 1) * factorial(l)
    if fam == "I2":
        return 2 * ctype.p
    return _KNOWN_ORDER[(fam, l)]


@dataclass
class ReflectionGroup:
    """A fully enumerated finite Coxeter group with its reflection set."""

    ctype: CoxeterType
    elements: tuple
    index: dict
    generators: tuple
    reflections: tuple
    inverse: tuple
    _lengths: tuple = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[0]

    def mult(self, a, b):
        if self.ctype.family == "I2":
            return _dihedral_mult(a, b, self.ctype.p)
        return _matmul(a, b)


def _moved_rank(group: ReflectionGroup, g) -> int:
    """Codimension of the fixed space: rank of g - 1 in the realization."""
    if group.ctype.family == "I2":
        kind, k = g
        if kind == "s":
            return 1
        return 0 if k == 0 else 2
    n = len(g)
    return _matrix_rank(
        tuple(tuple(g[i][j] - (i == j) for j in range(n)) for i in range(n))
    )


def build_group(ctype: CoxeterType, max_order: int = 10**6, max_p: int = 200) -> ReflectionGroup:
    """Enumerate the whole group by breadth-first closure over the simple
    reflections, tracking inverses along the way.

    Types A, B, D, E6, F4 and G2 are realized by integer matrices on the root
    lattice; I2(p) is realized abstractly as the dihedral group of order 2p.
    """
    if ctype.family == "H":
        raise ValueError("unsupported: irrational realization out of scope")
    if ctype.family == "I2" and ctype.p > max_p:
        raise ValueError(f"I2({ctype.p}) exceeds the dihedral limit p <= {max_p}")
    expected = _expected_order(ctype)
    if expected > max_order:
        raise ValueError(
            f"|W({ctype})| = {expected} exceeds the group order limit {max_order}"
        )

    if ctype.family == "I2":
        gens = (("s", 0), ("s", 1))
        ident = ("r", 0)
        mult = lambda a, b: _dihedral_mult(a, b, ctype.p)
    else:
        cartan = _cartan(ctype)
        n = ctype.rank
        gens = tuple(
            tuple(
                tuple((int(k == j) if k != i else int(i == j) - cartan[i][j]) for j in range(n))
                for k in range(n)
            )
            for i in range(n)
        )
        ident = _identity(n)
        mult = _matmul

    elements = [ident]
    index = {ident: 0}
    inv_elems = [ident]
    frontier = [0]
    while frontier:
        nxt = []
        for gi in frontier:
            g = elements[gi]
            for s in gens:
                h = mult(g, s)
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    inv_elems.append(mult(s, inv_elems[gi]))
                    nxt.append(index[h])
        frontier = nxt
        if len(elements) > expected:
            break
    if len(elements) != expected:
        raise RuntimeError(
            f"enumerated {len(elements)} elements of {ctype}, expected {expected}"
        )

    group = ReflectionGroup(
        ctype=ctype,
        elements=tuple(elements),
        index=index,
        generators=gens,
        reflections=(),
        inverse=tuple(index[e] for e in inv_elems),
    )
    refl = tuple(
        e
        for e in elements
        if _moved_rank(group, e) == 1 and mult(e, e) == ident
    )
    if len(refl) != reflection_count(ctype):
        raise RuntimeError(
            f"found {len(refl)} reflections in {ctype}, expected {reflection_count(ctype)}"
        )
    group.reflections = refl
    return group


def _lengths_of(group: ReflectionGroup) -> tuple:
    """Reflection length of every element: breadth-first layering of the
    Cayley graph on T, cross-checked against fixed-space codimension."""
    if group._lengths is None:
        dist = [None] * len(group)
        dist[0] = 0
        frontier = [0]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for gi in frontier:
                g = group.elements[gi]
                for s in group.reflections:
                    hi = group.index[group.mult(g, s)]
                    if dist[hi] is None:
                        dist[hi] = d
                        nxt.append(hi)
            frontier = nxt
        for i, e in enumerate(group.elements):
            if dist[i] != _moved_rank(group, e):
                raise RuntimeError(
                    f"reflection length {dist[i]} disagrees with codimension "
                    f"{_moved_rank(group, e)} for element {i} of {group.ctype}"
                )
        group._lengths = tuple(dist)
    return group._lengths


def reflection_length(group: ReflectionGroup, g) -> int:
    try:
        gi = group.index[g]
    except (KeyError, TypeError):
        raise ValueError(f"element not in {group.ctype}") from None
    return _lengths_of(group)[gi]


def coxeter_element(group: ReflectionGroup):
    """Bipartite Coxeter element: two-color the diagram, multiply the left
    color class first (members of one class commute, so inner order is moot)."""
    if group.ctype.family == "I2":
        return group.mult(*group.generators)
    cartan = _cartan(group.ctype)
    n = len(cartan)
    color = [None] * n
    color[0] = 0
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] and color[j] is None:
                color[j] = 1 - color[i]
                stack.append(j)
    c = group.identity
    for side in (0, 1):
        for i in range(n):
            if color[i] == side:
                c = group.mult(c, group.generators[i])
    return c


# -- the interval below a Coxeter element --------------------------------------

@dataclass
class NcLattice:
    """The interval [1, c] in the absolute order, with its full order
    bit-matrix and join/meet tables.

    Elements are sorted by (grade, element data), so index 0 is the identity
    and the last index is the Coxeter element.
    """

    ctype: CoxeterType
    elements: tuple
    grades: tuple
    up: tuple  # up[i] = bitmask of j with element i <= element j
    down: tuple
    join_table: tuple
    meet_table: tuple
    coxeter: object
    _mu: tuple = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def atoms(self) -> tuple:
        return tuple(i for i, g in enumerate(self.grades) if g == 1)


def _least_of(common: int, up) -> int:
    m = common
    while m:
        low = m & -m
        z = low.bit_length() - 1
        if common & ~up[z] == 0:
            return z
        m ^= low
    return -1


def _greatest_of(common: int, down) -> int:
    m = common
    while m:
        z = m.bit_length() - 1
        if common & ~down[z] == 0:
            return z
        m ^= 1 << z
    return -1


def nc_interval(group: ReflectionGroup, coxeter=None) -> NcLattice:
    """All g with l(g) + l(g^-1 c) = l(c), ordered by the same additivity
    test pairwise; raises if some pair lacks a unique join or meet."""
    lengths = _lengths_of(group)
    c = coxeter_element(group) if coxeter is None else coxeter
    rank = group.ctype.rank
    if lengths[group.index[c]] != rank:
        raise ValueError(
            f"not a Coxeter element of {group.ctype}: reflection length "
            f"{lengths[group.index[c]]} != {rank}"
        )
    members = []
    for i in range(len(group)):
        xinv = group.elements[group.inverse[i]]
        rest = lengths[group.index[group.mult(xinv, c)]]
        if lengths[i] + rest == rank:
            members.append(i)
    members.sort(key=lambda i: (lengths[i], group.elements[i]))

    n = len(members)
    elems = tuple(group.elements[i] for i in members)
    grades = tuple(lengths[i] for i in members)
    up = [0] * n
    down = [0] * n
    for a in range(n):
        xinv = group.elements[group.inverse[members[a]]]
        for b in range(n):
            if grades[a] > grades[b] or (grades[a] == grades[b] and a != b):
                continue
            if a == b:
                rest = 0
            else:
                rest = lengths[group.index[group.mult(xinv, elems[b])]]
            if grades[a] + rest == grades[b]:
                up[a] |= 1 << b
                down[b] |= 1 << a

    joins = [[0] * n for _ in range(n)]
    meets = [[0] * n for _ in range(n)]
    bad = []
    for a in range(n):
        for b in range(a, n):
            j = _least_of(up[a] & up[b], up)
            m = _greatest_of(down[a] & down[b], down)
            if j < 0 or m < 0:
                bad.append((a, b, "join" if j < 0 else "meet"))
            joins[a][b] = joins[b][a] = j
            meets[a][b] = meets[b][a] = m
    if bad:
        raise RuntimeError(
            f"lattice property violated in {group.ctype}: no unique bound for "
            f"pairs {bad[:5]}{'...' if len(bad) > 5 else ''}"
        )
    return NcLattice(
        ctype=group.ctype,
        elements=elems,
        grades=grades,
        up=tuple(up),
        down=tuple(down),
        join_table=tuple(tuple(r) for r in joins),
        meet_table=tuple(tuple(r) for r in meets),
        coxeter=c,
    )


def _mu_by_index(ncl: NcLattice) -> tuple:
    if ncl._mu is None:
        mu = [0] * len(ncl)
        for i in range(len(ncl)):
            below = ncl.down[i] & ~(1 << i)
            acc = 1 if i == 0 else 0
            while below:
                low = below & -below
                acc -= mu[low.bit_length() - 1]
                below ^= low
            mu[i] = acc
        ncl._mu = tuple(mu)
    return ncl._mu


def mobius(ncl: NcLattice) -> dict:
    """mu(1, x) for every lattice element, by grade-increasing sweep."""
    mu = _mu_by_index(ncl)
    return {ncl.elements[i]: mu[i] for i in range(len(ncl))}


def characteristic_poly(ncl: NcLattice) -> IntPoly:
    """Sum of mu(1, x) t^grade(x); the lattice-side derivation of the skew
    growth polynomial."""
    mu = _mu_by_index(ncl)
    coeffs = [0] * (max(ncl.grades) + 1)
    for i, g in enumerate(ncl.grades):
        coeffs[g] += mu[i]
    return IntPoly(tuple(coeffs))


def _subset_fold(ncl: NcLattice, subset_limit: int) -> list:
    """Signed count of atom subsets by their join: fold[e] = sum over subsets
    J of atoms with join(J) = e of (-1)^|J|."""
    atoms = ncl.atoms
    k = len(atoms)
    if k > subset_limit:
        raise ValueError(
            f"{k} atoms exceed the subset limit {subset_limit}; "
            "use the Mobius route instead"
        )
    join_of = [0] * (1 << k)
    fold = [0] * len(ncl)
    fold[0] = 1  # the empty subset joins to the bottom
    for mask in range(1, 1 << k):
        low = mask & -mask
        j = ncl.join_table[join_of[mask ^ low]][atoms[low.bit_length() - 1]]
        join_of[mask] = j
        fold[j] += -1 if mask.bit_count() & 1 else 1
    return fold


def skew_growth_by_subsets(ncl: NcLattice, subset_limit: int = 20) -> IntPoly:
    """The inclusion-exclusion form: sum over all subsets J of atoms of
    (-1)^|J| t^grade(join J)."""
    fold = _subset_fold(ncl, subset_limit)
    coeffs = [0] * (max(ncl.grades) + 1)
    for i, g in enumerate(ncl.grades):
        coeffs[g] += fold[i]
    return IntPoly(tuple(coeffs))


def verify_mobius_identity(ncl: NcLattice, subset_limit: int = 20) -> bool:
    """Check, element by element, that the signed subset count equals mu."""
    fold = _subset_fold(ncl, subset_limit)
    return list(_mu_by_index(ncl)) == fold


# -- cache --------------------------------------------------------------------

def _element_to_json(e):
    if isinstance(e[0], str):
        return list(e)
    return [list(r) for r in e]


def _element_from_json(e):
    if e and isinstance(e[0], str):
        return (e[0], e[1])
    return tuple(tuple(r) for r in e)


def save_lattice(ncl: NcLattice, path) -> None:
    data = {
        "type": str(ncl.ctype),
        "elements": [_element_to_json(e) for e in ncl.elements],
        "grades": list(ncl.grades),
        "up": [format(m, "x") for m in ncl.up],
        "down": [format(m, "x") for m in ncl.down],
        "join": [list(r) for r in ncl.join_table],
        "meet": [list(r) for r in ncl.meet_table],
        "coxeter": _element_to_json(ncl.coxeter),
    }
    with open(path, "w") as fh:
        json.dump(data, fh)


def load_lattice(path) -> NcLattice:
    with open(path) as fh:
        data = json.load(fh)
    return NcLattice(
        ctype=CoxeterType.parse(data["type"]),
        elements=tuple(_element_from_json(e) for e in data["elements"]),
        grades=tuple(data["grades"]),
        up=tuple(int(m, 16) for m in data["up"]),
        down=tuple(int(m, 16) for m in data["down"]),
        join_table=tuple(tuple(r) for r in data["join"]),
        meet_table=tuple(tuple(r) for r in data["meet"]),
        coxeter=_element_from_json(data["coxeter"]),
    )
