"""Exhaustive checkers for the labeling's promised properties.

Every check recomputes what it verifies from scratch (chain enumeration,
complement search, Moebius recursion) rather than trusting the labeling
pipeline's internals, so a bug on either side shows up as a mismatch.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .labeling import (
    LabeledLattice,
    _chain_separation_index,
    _phi_view,
    _rho_view,
    _skeleton,
    phi,
)
from .lattice import LatticeView, SubgroupLattice, section_between
from .permgroup import ChiefSeries, is_normal, product_set

SAMPLE_SEED = 0x5EED
FULL_SCAN_LIMIT = 64
SAMPLE_SIZE = 500


def checked_intervals(view: LatticeView) -> list[tuple[int, int]]:
    """Interval endpoints to verify: everything at desk scale, a seeded
    sample plus all bottom/top intervals above FULL_SCAN_LIMIT nodes."""
    pairs = view.comparable_pairs()
    if len(view.members) <= FULL_SCAN_LIMIT:
        return pairs
    keep = {p for p in pairs if p[0] == view.bottom or p[1] == view.top}
    rng = random.Random(SAMPLE_SEED)
    rest = [p for p in pairs if p not in keep]
    keep.update(rng.sample(rest, min(SAMPLE_SIZE, len(rest))))
    return sorted(keep)


@dataclass(frozen=True)
class IntervalRecord:
    lo: int
    hi: int
    n_chains: int
    n_increasing: int
    lex_first: tuple[int, ...]
    ok: bool


@dataclass
class ELReport:
    records: list[IntervalRecord]
    ok: bool
    seconds: float
    dual: bool


def _weakly_increasing(labels: Sequence[tuple[int, int]]) -> bool:
    return all(a <= b for a, b in zip(labels, labels[1:]))


def _check_one_interval(labeled: LabeledLattice, view: LatticeView,
                        lo: int, hi: int) -> IntervalRecord:
    chains = view.maximal_chains(lo, hi)
    labels = [labeled.chain_labels(c) for c in chains]
    increasing = [t for t, ls in enumerate(labels) if _weakly_increasing(ls)]
    best = min(labels)
    first = [t for t, ls in enumerate(labels) if ls == best]
    ok = (len(increasing) == 1 and len(first) == 1
          and increasing[0] == first[0])
    return IntervalRecord(lo, hi, len(chains), len(increasing),
                          chains[first[0]], ok)


def check_el(labeled: LabeledLattice, threads: int = 1) -> ELReport:
    """EL property on every checked interval: a unique weakly increasing
    maximal chain that is also strictly lexicographically first."""
    start = time.perf_counter()
    view = labeled.view()
    pairs = checked_intervals(view)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(
                lambda p: _check_one_interval(labeled, view, *p), pairs))
    else:
        records = [_check_one_interval(labeled, view, lo, hi)
                   for lo, hi in pairs]
    records.sort(key=lambda r: (r.lo, r.hi))
    return ELReport(records, all(r.ok for r in records),
                    time.perf_counter() - start, labeled.dual)


def descending_chains(labeled: LabeledLattice) -> list[tuple[int, ...]]:
    """Maximal chains of the whole lattice with strictly decreasing labels,
    reported as ascending-by-inclusion id tuples."""
    view = labeled.view()
    out = []
    for chain in view.maximal_chains(view.bottom, view.top):
        ls = labeled.chain_labels(chain)
        if all(a > b for a, b in zip(ls, ls[1:])):
            out.append(tuple(reversed(chain)) if labeled.dual else chain)
    return sorted(out)


@dataclass(frozen=True)
class ComplementChain:
    """ids 1 = H_k < ... < H_0 = G (ascending), H_i a complement to N_i."""

    ids: tuple[int, ...]


def _is_complement(lattice: SubgroupLattice, h: int, n: int) -> bool:
    group = lattice.group
    hn, nn = lattice.nodes[h], lattice.nodes[n]
    if hn.members & nn.members != 1 << group.identity_index:
        return False
    return product_set(group, hn, nn).bit_count() == group.order


def chains_of_complements(lattice: SubgroupLattice,
                          series: ChiefSeries) -> list[ComplementChain]:
    """Exhaustive descending search for chains of complements to the series."""
    k = series.k
    found: list[ComplementChain] = []
    stack = [lattice.top]

    def descend(i: int):
        if i > k:
            found.append(ComplementChain(tuple(reversed(stack))))
            return
        prev = stack[-1]
        for h in range(len(lattice.nodes)):
            if lattice.leq(h, prev) and _is_complement(lattice, h, series.terms[i]):
                stack.append(h)
                descend(i + 1)
                stack.pop()

    descend(1)
    return sorted(found, key=lambda c: c.ids)


def check_descending_equals_complements(lattice: SubgroupLattice,
                                        series: ChiefSeries,
                                        labeled: LabeledLattice,
                                        labeled_dual: LabeledLattice) -> bool:
    """Descending chains of both labelings coincide with the complement chains."""
    comp = {c.ids for c in chains_of_complements(lattice, series)}
    return (set(descending_chains(labeled)) == comp
            and set(descending_chains(labeled_dual)) == comp)


def check_thevenaz(lattice: SubgroupLattice, series: ChiefSeries) -> bool:
    """mu(bottom, top) equals (-1)^k times the number of complement chains."""
    mu = lattice.moebius[lattice.top]
    count = len(chains_of_complements(lattice, series))
    return mu == (-1) ** series.k * count


def _check_segment_iso(labeled: LabeledLattice, view: LatticeView,
                       chain: Sequence[int], i: int, w: int, z: int) -> bool:
    """rho is an order isomorphism [w,z] -> [rho(w), rho(z)] in the section,
    with phi a two-sided inverse, element by element."""
    lattice = labeled.lattice
    p_lo, p_hi = ((chain[i + 1], chain[i]) if labeled.dual
                  else (chain[i], chain[i + 1]))
    section = section_between(lattice, p_lo, p_hi, w)
    sec_view = LatticeView(section, dual=labeled.dual)
    domain = view.interval_members(w, z)
    image = {x: _rho_view(view, chain, i, x) for x in domain}
    rw, rz = image[w], image[z]
    target = set(sec_view.interval_members(rw, rz))
    if set(image.values()) != target or len(set(image.values())) != len(domain):
        return False
    for x in domain:
        for y in domain:
            if view.leq(x, y) != view.leq(image[x], image[y]):
                return False
    for x in domain:
        if _phi_view(view, image[x], w, z) != x:
            return False
        if not labeled.dual:
            # primal route through the literal set product, closure-checked
            if phi(lattice, labeled.series, i, image[x], w, z) != x:
                return False
    for n in target:
        if _rho_view(view, chain, i, _phi_view(view, n, w, z)) != n:
            return False
    return True


def check_projection_isomorphisms(labeled: LabeledLattice,
                                  intervals: Sequence[tuple[int, int]] | None = None,
                                  ) -> bool:
    """Prop-3.4 style checks on every skeleton segment of every checked
    interval, plus the cover-projects-to-cover property per labeled edge."""
    view = labeled.view()
    chain = labeled.series_chain()
    pairs = checked_intervals(view) if intervals is None else intervals
    for w, z in pairs:
        skel = _skeleton(view, chain, w, z)
        for (cj, cj1), i in zip(zip(skel.nodes, skel.nodes[1:]), skel.indices):
            if not _check_segment_iso(labeled, view, chain, i, cj, cj1):
                return False
    lattice = labeled.lattice
    for (y, z), (i, _) in sorted(labeled.edge_labels.items()):
        p_lo, p_hi = ((chain[i + 1], chain[i]) if labeled.dual
                      else (chain[i], chain[i + 1]))
        section = section_between(lattice, p_lo, p_hi, y)
        if section.members != labeled.edge_sections[(y, z)]:
            return False
        sec_view = LatticeView(section, dual=labeled.dual)
        ry = _rho_view(view, chain, i, y)
        rz = _rho_view(view, chain, i, z)
        if rz not in sec_view.covers_up(ry):
            return False
        # Lemma 3.2: the section is the same computed from either endpoint
        if section_between(lattice, p_lo, p_hi, z).members != section.members:
            return False
    return True


def check_liu_equivalence(lattice: SubgroupLattice) -> bool:
    """The three left-modularity characterizations agree on every node, and
    every normal subgroup is left modular."""
    group = lattice.group
    for x in range(len(lattice.nodes)):
        a, b, c = lattice.left_modular_equivalents(x)
        if not (a == b == c):
            return False
        if is_normal(group, lattice.nodes[x]) and not a:
            return False
    return True


def check_skeleton_extensions(labeled: LabeledLattice,
                              intervals: Sequence[tuple[int, int]] | None = None,
                              ) -> bool:
    """Coarse-label shape of every checked interval: weakly increasing
    chains = extensions of the skeleton chain = coarse-lex-first chains;
    segment edges carry the segment index; no label dips below the first."""
    view = labeled.view()
    chain = labeled.series_chain()
    pairs = checked_intervals(view) if intervals is None else intervals
    coarse: dict[tuple[int, int], int] = {
        e: ij[0] for e, ij in labeled.edge_labels.items()}
    for w, z in pairs:
        skel = _skeleton(view, chain, w, z)
        chains = view.maximal_chains(w, z)
        seqs = [tuple(coarse[e] for e in zip(c, c[1:])) for c in chains]
        increasing = {c for c, s in zip(chains, seqs)
                      if all(a <= b for a, b in zip(s, s[1:]))}
        extensions = {c for c in chains if set(skel.nodes) <= set(c)}
        best = min(seqs)
        lex_first = {c for c, s in zip(chains, seqs) if s == best}
        if not (increasing == extensions == lex_first):
            return False
        if skel.indices and any(min(s) < skel.indices[0] for s in seqs):
            return False
        for (cj, cj1), i in zip(zip(skel.nodes, skel.nodes[1:]), skel.indices):
            seg = view.interval_members(cj, cj1)
            for a in seg:
                for b in view.covers_up(a):
                    if b in seg and coarse[(a, b)] != i:
                        return False
    return True


def run_checks(lattice: SubgroupLattice, series: ChiefSeries,
               labeled: LabeledLattice, labeled_dual: LabeledLattice | None,
               threads: int = 1) -> dict[str, bool]:
    """All verdicts used by the CLI report; dual entries only when requested."""
    verdicts = {
        "el": check_el(labeled, threads=threads).ok,
        "thevenaz": check_thevenaz(lattice, series),
        "projection": check_projection_isomorphisms(labeled),
        "liu": check_liu_equivalence(lattice),
        "skeleton": check_skeleton_extensions(labeled),
    }
    if labeled_dual is not None:
        verdicts["el_dual"] = check_el(labeled_dual, threads=threads).ok
        verdicts["projection_dual"] = check_projection_isomorphisms(labeled_dual)
        verdicts["descending_equals_complements"] = (
            check_descending_equals_complements(lattice, series,
                                                labeled, labeled_dual))
    else:
        comp = {c.ids for c in chains_of_complements(lattice, series)}
        verdicts["descending_equals_complements"] = (
            set(descending_chains(labeled)) == comp)
    return verdicts
