"""Permutation arithmetic, group closure, and chief series machinery.

Groups are stored as explicit element lists with index-based multiplication
and inverse tables; subgroups are bitmasks over the element indices.  This
keeps every downstream lattice computation exact and cheap at desk scale.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MAX_ORDER = 384


class ParseError(ValueError):
    """Malformed permutation or group specification text."""


class CapExceededError(RuntimeError):
    """Group order or subgroup count grew past the configured cap."""


class NotSolvableError(RuntimeError):
    """The input group is not solvable; the labeling pipeline is gated on it."""


class SeriesError(ValueError):
    """A user-supplied normal series fails the chief-series invariants."""


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on {0, ..., degree-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def compose(self, other: Permutation) -> Permutation:
        """Apply self first, then other."""
        return Permutation(tuple(other.images[t] for t in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for t, u in enumerate(self.images):
            inv[u] = t
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(u == t for t, u in enumerate(self.images))

    def cycle_string(self) -> str:
        """Disjoint-cycle notation with 1-based points; identity is "()"."""
        seen = [False] * len(self.images)
        parts = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            t = self.images[start]
            while t != start:
                cyc.append(t)
                seen[t] = True
                t = self.images[t]
            parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
        return "".join(parts) if parts else "()"

    @staticmethod
    def identity(degree: int) -> Permutation:
        return Permutation(tuple(range(degree)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation over points 1..degree; "()" is the identity."""
    if degree < 1:
        raise ParseError(f"degree must be positive, got {degree}")
    body = text.strip()
    if not body:
        raise ParseError("empty permutation text")
    if _CYCLE_RE.sub("", body).strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    cycles = _CYCLE_RE.findall(body)
    if not cycles:
        raise ParseError(f"malformed cycle notation: {text!r}")
    for cyc in cycles:
        points = []
        for tok in re.split(r"[,\s]+", cyc.strip()):
            if not tok:
                continue
            try:
                p = int(tok)
            except ValueError:
                raise ParseError(f"bad point {tok!r} in {text!r}") from None
            if not 1 <= p <= degree:
                raise ParseError(f"point {p} out of range 1..{degree} in {text!r}")
            if p - 1 in used:
                raise ParseError(f"point {p} repeated in {text!r}")
            used.add(p - 1)
            points.append(p - 1)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return Permutation(tuple(images))


class Group:
    """A finite permutation group: closed element list plus index tables.

    Elements are sorted by their image tuples, so the identity is always
    index 0 and every id assignment downstream is reproducible.
    """

    def __init__(self, degree: int, elements: list[Permutation],
                 generator_indices: list[int]):
        self.degree = degree
        self.elements = elements
        self.index = {p.images: t for t, p in enumerate(elements)}
        self.generator_indices = generator_indices
        n = len(elements)
        self.mul = [[self.index[elements[a].compose(elements[b]).images]
                     for b in range(n)] for a in range(n)]
        self.inv = [self.index[elements[a].inverse().images] for a in range(n)]
        self.identity_index = self.index[Permutation.identity(degree).images]

    @property
    def order(self) -> int:
        return len(self.elements)

    def conjugate(self, g: int, x: int) -> int:
        """Index of g x g^-1 (composition applies the left factor first)."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """Index of a^-1 b^-1 a b."""
        return self.mul[self.mul[self.mul[self.inv[a]][self.inv[b]]][a]][b]

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity_index:
            x = self.mul[x][a]
            n += 1
        return n


def generate_group(gens: Sequence[Permutation], degree: int,
                   max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Close the generating set under composition and build the tables."""
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    ident = Permutation.identity(degree)
    seen = {ident.images: ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x.compose(g)
            if y.images not in seen:
                if len(seen) >= max_order:
                    raise CapExceededError(
                        f"group order exceeds cap {max_order}")
                seen[y.images] = y
                frontier.append(y)
    elements = sorted(seen.values())
    index = {p.images: t for t, p in enumerate(elements)}
    gen_idx = sorted({index[g.images] for g in gens})
    return Group(degree, elements, gen_idx)


@dataclass(frozen=True)
class Subgroup:
    """Membership bitmask over the parent group's element indices."""

    members: int
    order: int

    def contains(self, idx: int) -> bool:
        return bool(self.members >> idx & 1)

    def indices(self) -> tuple[int, ...]:
        return tuple(bit_indices(self.members))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: by order, then lexicographic on member indices."""
        return (self.order, self.indices())

    @staticmethod
    def from_mask(mask: int) -> Subgroup:
        return Subgroup(mask, mask.bit_count())


def bit_indices(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for t in indices:
        m |= 1 << t
    return m


def close_mask(group: Group, mask: int) -> int:
    """Smallest subgroup (as bitmask) containing the given element indices."""
    mul = group.mul
    members = set(bit_indices(mask))
    members.add(group.identity_index)
    queue = list(members)
    while queue:
        x = queue.pop()
        for y in list(members):
            for z in (mul[x][y], mul[y][x]):
                if z not in members:
                    members.add(z)
                    queue.append(z)
    return mask_of(members)


def subgroup_closure(group: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed element indices."""
    return Subgroup.from_mask(close_mask(group, mask_of(seed)))


def product_set(group: Group, h: Subgroup, n: Subgroup) -> int:
    """Bitmask of the set {h*n}; not necessarily a subgroup."""
    mul = group.mul
    out = 0
    for a in bit_indices(h.members):
        row = mul[a]
        for b in bit_indices(n.members):
            out |= 1 << row[b]
    return out


def conjugate_mask(group: Group, g: int, mask: int) -> int:
    out = 0
    for x in bit_indices(mask):
        out |= 1 << group.conjugate(g, x)
    return out


def normalizes(group: Group, normalizer_mask: int, target_mask: int) -> bool:
    """True iff h X h^-1 = X for every h in the normalizer set."""
    return all(conjugate_mask(group, h, target_mask) == target_mask
               for h in bit_indices(normalizer_mask))


def is_normal(group: Group, h: Subgroup) -> bool:
    """gHg^-1 = H for every generator g of the parent group."""
    return all(conjugate_mask(group, g, h.members) == h.members
               for g in group.generator_indices)


def derived_mask(group: Group, mask: int) -> int:
    """Commutator subgroup of the subgroup given by mask."""
    idxs = list(bit_indices(mask))
    comms = {group.commutator(a, b) for a in idxs for b in idxs}
    return close_mask(group, mask_of(comms))


def is_solvable(group: Group) -> bool:
    """Derived series reaches the trivial subgroup."""
    trivial = 1 << group.identity_index
    current = mask_of(range(group.order))
    while current != trivial:
        nxt = derived_mask(group, current)
        if nxt == current:
            return False
        current = nxt
    return True


@dataclass(frozen=True)
class ChiefSeries:
    """Maximal chain 1 = N_0 < N_1 < ... < N_k = G of normal subgroups (node ids)."""

    terms: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.terms) - 1


def normal_subgroups(group: Group, lattice) -> list[int]:
    """Ids of all lattice nodes normal in the parent group, in canonical order."""
    return [t for t, node in enumerate(lattice.nodes) if is_normal(group, node)]


def _assert_abelian_factors(group: Group, lattice, terms: Sequence[int]) -> None:
    for lo, hi in zip(terms, terms[1:]):
        lo_mask = lattice.nodes[lo].members
        idxs = list(bit_indices(lattice.nodes[hi].members))
        for a in idxs:
            for b in idxs:
                if not lo_mask >> group.commutator(a, b) & 1:
                    raise SeriesError(
                        f"factor {lo}..{hi} is not abelian modulo the lower term")


def chief_series(group: Group, lattice) -> ChiefSeries:
    """Canonical chief series: repeatedly extend by the least minimal normal overgroup."""
    if not is_solvable(group):
        raise NotSolvableError("group is not solvable")
    normals = normal_subgroups(group, lattice)
    terms = [lattice.bottom]
    while terms[-1] != lattice.top:
        cur = lattice.nodes[terms[-1]].members
        over = [t for t in normals
                if cur & lattice.nodes[t].members == cur
                and lattice.nodes[t].members != cur]
        minimal = [t for t in over
                   if not any(s != t
                              and lattice.nodes[s].members & lattice.nodes[t].members
                              == lattice.nodes[s].members
                              for s in over)]
        terms.append(min(minimal))
    series = ChiefSeries(tuple(terms))
    _assert_abelian_factors(group, lattice, series.terms)
    return series


def validate_series(group: Group, lattice, term_ids: Sequence[int]) -> ChiefSeries:
    """Check a user-supplied chain against the chief-series invariants."""
    terms = list(term_ids)
    if not terms or terms[0] != lattice.bottom:
        raise SeriesError("series must start at the trivial subgroup")
    if terms[-1] != lattice.top:
        raise SeriesError("series must end at the full group")
    normals = set(normal_subgroups(group, lattice))
    for t in terms:
        if t not in normals:
            raise SeriesError(f"series term {t} is not normal in the group")
    for lo, hi in zip(terms, terms[1:]):
        lo_mask = lattice.nodes[lo].members
        hi_mask = lattice.nodes[hi].members
        if lo_mask & hi_mask != lo_mask or lo_mask == hi_mask:
            raise SeriesError("series terms must strictly increase")
        for t in normals:
            m = lattice.nodes[t].members
            if (m != lo_mask and m != hi_mask
                    and lo_mask & m == lo_mask and m & hi_mask == m):
                raise SeriesError(
                    f"normal subgroup {t} lies strictly between consecutive terms")
    _assert_abelian_factors(group, lattice, terms)
    return ChiefSeries(tuple(terms))
