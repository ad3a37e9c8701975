"""Subgroup lattice enumeration and generic lattice queries.

Nodes are Subgroup bitmasks in canonical order (order, then member indices),
so ids are stable across runs.  Covers are the transitive reduction of
bitmask inclusion; meet/join are precomputed id tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .permgroup import (
    CapExceededError,
    Group,
    Subgroup,
    bit_indices,
    close_mask,
    normalizes,
)

DEFAULT_MAX_SUBGROUPS = 4096


class SubgroupLattice:
    """All subgroups of a group, ordered by inclusion."""

    def __init__(self, group: Group, masks: list[int]):
        self.group = group
        self.nodes = sorted((Subgroup.from_mask(m) for m in masks),
                            key=Subgroup.sort_key)
        self.index = {node.members: t for t, node in enumerate(self.nodes)}
        n = len(self.nodes)
        self.bottom = 0
        self.top = n - 1
        self.covers_up: list[list[int]] = [[] for _ in range(n)]
        self.covers_down: list[list[int]] = [[] for _ in range(n)]
        self._build_covers()
        self._build_tables()

    def __len__(self) -> int:
        return len(self.nodes)

    def leq(self, a: int, b: int) -> bool:
        ma = self.nodes[a].members
        return ma & self.nodes[b].members == ma

    def _build_covers(self):
        n = len(self.nodes)
        below: list[list[int]] = [[] for _ in range(n)]
        for z in range(n):
            mz = self.nodes[z].members
            below[z] = [y for y in range(z)
                        if self.nodes[y].members & mz == self.nodes[y].members
                        and self.nodes[y].members != mz]
        for z in range(n):
            for y in below[z]:
                my = self.nodes[y].members
                if not any(my & self.nodes[x].members == my
                           and self.nodes[x].members != my
                           for x in below[z] if x != y):
                    self.covers_up[y].append(z)
                    self.covers_down[z].append(y)
        for adj in self.covers_up:
            adj.sort()
        for adj in self.covers_down:
            adj.sort()

    def _build_tables(self):
        n = len(self.nodes)
        masks = [node.members for node in self.nodes]
        self.meet_table = [[self.index[masks[a] & masks[b]] for b in range(n)]
                           for a in range(n)]
        join_of_union: dict[int, int] = {}
        self.join_table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                union = masks[a] | masks[b]
                j = join_of_union.get(union)
                if j is None:
                    j = self.index[close_mask(self.group, union)]
                    join_of_union[union] = j
                self.join_table[a][b] = j
                self.join_table[b][a] = j

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def interval(self, lo: int, hi: int) -> Interval:
        if not self.leq(lo, hi):
            raise ValueError(f"incomparable interval endpoints ({lo}, {hi})")
        members = tuple(x for x in range(len(self.nodes))
                        if self.leq(lo, x) and self.leq(x, hi))
        return Interval(self, lo, hi, members)

    def is_left_modular(self, x: int) -> bool:
        """(y v x) ^ z == y v (x ^ z) for all comparable pairs y < z."""
        n = len(self.nodes)
        for y in range(n):
            for z in range(n):
                if y != z and self.leq(y, z):
                    if self.meet(self.join(y, x), z) != self.join(y, self.meet(x, z)):
                        return False
        return True

    def left_modular_equivalents(self, x: int) -> tuple[bool, bool, bool]:
        """The three characterizations of left modularity, evaluated separately."""
        n = len(self.nodes)
        ident = self.is_left_modular(x)
        never_both = True
        for y in range(n):
            for z in range(n):
                if y != z and self.leq(y, z):
                    if (self.join(x, z) == self.join(x, y)
                            and self.meet(x, z) == self.meet(x, y)):
                        never_both = False
        cover_xor = True
        for y in range(n):
            for z in self.covers_up[y]:
                join_eq = self.join(x, z) == self.join(x, y)
                meet_eq = self.meet(x, z) == self.meet(x, y)
                if join_eq == meet_eq:
                    cover_xor = False
        return ident, never_both, cover_xor

    @cached_property
    def moebius(self) -> list[int]:
        """mu(bottom, x) for every node, by the standard recursion."""
        n = len(self.nodes)
        mu = [0] * n
        mu[self.bottom] = 1
        for x in range(n):
            if x == self.bottom:
                continue
            mx = self.nodes[x].members
            acc = 0
            for y in range(n):
                if y != x and self.nodes[y].members & mx == self.nodes[y].members:
                    acc += mu[y]
            mu[x] = -acc
        return mu


def enumerate_subgroups(group: Group,
                        max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> SubgroupLattice:
    """Seed with cyclic subgroups, close under pairwise join.

    Complete because every subgroup is the join of its cyclic subgroups.
    """
    masks: set[int] = set()
    for a in range(group.order):
        m = 1 << group.identity_index
        x = a
        while not m >> x & 1:
            m |= 1 << x
            x = group.mul[x][a]
        masks.add(m)
    work = sorted(masks)
    i = 0
    while i < len(work):
        a = work[i]
        for b in work[:i]:
            union = a | b
            if union == a or union == b:
                continue
            j = close_mask(group, union)
            if j not in masks:
                if len(masks) >= max_subgroups:
                    raise CapExceededError(
                        f"subgroup count exceeds cap {max_subgroups}")
                masks.add(j)
                work.append(j)
        i += 1
    return SubgroupLattice(group, sorted(masks))


@dataclass(frozen=True)
class Interval:
    """All lattice nodes between lo and hi inclusive."""

    lattice: SubgroupLattice
    lo: int
    hi: int
    members: tuple[int, ...]

    def maximal_chains(self) -> list[tuple[int, ...]]:
        """All maximal chains lo..hi, in lexicographic order of id sequences."""
        lat = self.lattice
        out: list[tuple[int, ...]] = []
        path = [self.lo]

        def walk(node: int):
            if node == self.hi:
                out.append(tuple(path))
                return
            for c in lat.covers_up[node]:
                if lat.leq(c, self.hi):
                    path.append(c)
                    walk(c)
                    path.pop()

        walk(self.lo)
        return out


def restricted_covers(lattice: SubgroupLattice,
                      members: tuple[int, ...]) -> dict[int, list[int]]:
    """Cover relations of the inclusion order restricted to the member set."""
    ups: dict[int, list[int]] = {m: [] for m in members}
    for y in members:
        for z in members:
            if y == z or not lattice.leq(y, z):
                continue
            if not any(x != y and x != z and lattice.leq(y, x) and lattice.leq(x, z)
                       for x in members):
                ups[y].append(z)
    for adj in ups.values():
        adj.sort()
    return ups


@dataclass(frozen=True)
class Sublattice:
    """A meet/join-closed subset of the lattice with its own cover relations."""

    lattice: SubgroupLattice
    members: tuple[int, ...]
    lo: int
    hi: int

    @cached_property
    def covers_up(self) -> dict[int, list[int]]:
        return restricted_covers(self.lattice, self.members)

    @cached_property
    def covers_down(self) -> dict[int, list[int]]:
        down: dict[int, list[int]] = {m: [] for m in self.members}
        for y, ups in self.covers_up.items():
            for z in ups:
                down[z].append(y)
        for adj in down.values():
            adj.sort()
        return down

    def is_modular(self) -> bool:
        """x v (y ^ z) == (x v y) ^ z for all members with x <= z."""
        lat = self.lattice
        for x in self.members:
            for z in self.members:
                if not lat.leq(x, z):
                    continue
                for y in self.members:
                    if lat.join(x, lat.meet(y, z)) != lat.meet(lat.join(x, y), z):
                        return False
        return True


def normalized_section(lattice: SubgroupLattice, series, i: int,
                       normalizer: int) -> Sublattice:
    """Subgroups between N_i and N_{i+1} normalized by the given node's subgroup."""
    lo, hi = series.terms[i], series.terms[i + 1]
    return section_between(lattice, lo, hi, normalizer)


def section_between(lattice: SubgroupLattice, lo: int, hi: int,
                    normalizer: int) -> Sublattice:
    group = lattice.group
    norm_mask = lattice.nodes[normalizer].members
    members = tuple(x for x in lattice.interval(lo, hi).members
                    if normalizes(group, norm_mask, lattice.nodes[x].members))
    section = Sublattice(lattice, members, lo, hi)
    if not section.is_modular():
        raise AssertionError(
            f"normalized section [{lo},{hi}] under {normalizer} is not modular")
    return section


class LatticeView:
    """Primal or dual query surface over a lattice or sublattice.

    Chain and labeling algorithms are written once against this view; the
    dual labeling is the same code run with the orientation flipped.
    """

    def __init__(self, base: SubgroupLattice | Sublattice, dual: bool = False):
        self.base = base
        self.dual = dual
        if isinstance(base, Sublattice):
            self.lattice = base.lattice
            self.members: tuple[int, ...] = base.members
            self._ups = base.covers_up
            self._downs = base.covers_down
            lo, hi = base.lo, base.hi
        else:
            self.lattice = base
            self.members = tuple(range(len(base)))
            self._ups = {m: base.covers_up[m] for m in self.members}
            self._downs = {m: base.covers_down[m] for m in self.members}
            lo, hi = base.bottom, base.top
        self.bottom, self.top = (hi, lo) if dual else (lo, hi)

    def leq(self, a: int, b: int) -> bool:
        return self.lattice.leq(b, a) if self.dual else self.lattice.leq(a, b)

    def meet(self, a: int, b: int) -> int:
        return self.lattice.join(a, b) if self.dual else self.lattice.meet(a, b)

    def join(self, a: int, b: int) -> int:
        return self.lattice.meet(a, b) if self.dual else self.lattice.join(a, b)

    def covers_up(self, a: int) -> list[int]:
        return self._downs[a] if self.dual else self._ups[a]

    def interval_members(self, lo: int, hi: int) -> tuple[int, ...]:
        if not self.leq(lo, hi):
            raise ValueError(f"incomparable interval endpoints ({lo}, {hi})")
        return tuple(x for x in self.members
                     if self.leq(lo, x) and self.leq(x, hi))

    def maximal_chains(self, lo: int, hi: int) -> list[tuple[int, ...]]:
        """Maximal chains of the oriented interval, ascending in view order."""
        if not self.leq(lo, hi):
            raise ValueError(f"incomparable interval endpoints ({lo}, {hi})")
        out: list[tuple[int, ...]] = []
        path = [lo]

        def walk(node: int):
            if node == hi:
                out.append(tuple(path))
                return
            for c in self.covers_up(node):
                if self.leq(c, hi):
                    path.append(c)
                    walk(c)
                    path.pop()

        walk(lo)
        return out

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All (lo, hi) with lo strictly below hi in view order, sorted."""
        return sorted((a, b) for a in self.members for b in self.members
                      if a != b and self.leq(a, b))
