"""Edge labeling of the subgroup lattice from a chief series.

Every cover edge gets a pair (i, j): i is the unique index of the chief
factor that weakly separates the edge, and j refines it inside the modular
section of subgroups between N_i and N_{i+1} normalized by the edge's
bottom.  The dual labeling is the same pipeline run on the order-dual
lattice with the reversed series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lattice import LatticeView, SubgroupLattice, Sublattice, section_between
from .permgroup import ChiefSeries, product_set


class SeparationError(RuntimeError):
    """No or multiple weak-separation indices: a left-modularity precondition broke."""


class ProductNotSubgroupError(RuntimeError):
    """A set product W*N failed closure where the projection inverse needs it."""


def _chain_separation_index(view: LatticeView, chain: Sequence[int],
                            y: int, z: int) -> int:
    """Unique i with x_i ^ z == x_i ^ y and x_{i+1} v z == x_{i+1} v y."""
    hits = [i for i in range(len(chain) - 1)
            if view.meet(chain[i], z) == view.meet(chain[i], y)
            and view.join(chain[i + 1], z) == view.join(chain[i + 1], y)]
    if len(hits) != 1:
        kind = "no" if not hits else "multiple"
        raise SeparationError(
            f"{kind} weak-separation index for edge ({y}, {z}): {hits}")
    return hits[0]


def oriented_series(series: ChiefSeries, dual: bool) -> tuple[int, ...]:
    """The chain 0^ = x_0 < ... < x_k = 1^ in the chosen orientation."""
    return tuple(reversed(series.terms)) if dual else series.terms


def weak_separation_index(lattice: SubgroupLattice, series: ChiefSeries,
                          y: int, z: int) -> int:
    """Index of the chief factor N_{i+1}/N_i weakly separating the cover y < z."""
    return _chain_separation_index(LatticeView(lattice), series.terms, y, z)


@dataclass(frozen=True)
class SkeletonChain:
    """The chain c_0 < ... < c_m forced on [w, z] by the series, with its indices."""

    nodes: tuple[int, ...]
    indices: tuple[int, ...]


def _skeleton(view: LatticeView, chain: Sequence[int], w: int, z: int) -> SkeletonChain:
    nodes = [w]
    indices = []
    while nodes[-1] != z:
        cur = nodes[-1]
        i = max(i for i in range(len(chain))
                if view.join(cur, view.meet(chain[i], z)) == cur)
        indices.append(i)
        nodes.append(view.join(cur, view.meet(chain[i + 1], z)))
    return SkeletonChain(tuple(nodes), tuple(indices))


def skeleton_chain(lattice: SubgroupLattice, series: ChiefSeries,
                   w: int, z: int) -> SkeletonChain:
    if not lattice.leq(w, z):
        raise ValueError(f"incomparable interval endpoints ({w}, {z})")
    return _skeleton(LatticeView(lattice), series.terms, w, z)


def rho(lattice: SubgroupLattice, series: ChiefSeries, i: int, h: int) -> int:
    """Projection H -> N_i H  intersect  N_{i+1}, computed as a literal set product."""
    group = lattice.group
    ni = lattice.nodes[series.terms[i]]
    prod = product_set(group, ni, lattice.nodes[h])
    mask = prod & lattice.nodes[series.terms[i + 1]].members
    return lattice.index[mask]


def phi(lattice: SubgroupLattice, series: ChiefSeries, i: int,
        n: int, w: int, z: int) -> int:
    """Inverse projection N -> W N  intersect  Z on qualifying intervals."""
    group = lattice.group
    prod = product_set(group, lattice.nodes[w], lattice.nodes[n])
    if prod != lattice.nodes[lattice.join(w, n)].members:
        raise ProductNotSubgroupError(
            f"set product of nodes {w} and {n} is not a subgroup")
    return lattice.index[prod & lattice.nodes[z].members]


def _rho_view(view: LatticeView, chain: Sequence[int], i: int, h: int) -> int:
    return view.meet(view.join(chain[i], h), chain[i + 1])


def _phi_view(view: LatticeView, n: int, w: int, z: int) -> int:
    return view.meet(view.join(w, n), z)


def canonical_modular_chain(section: Sublattice | LatticeView) -> tuple[int, ...]:
    """Canonically least maximal chain of the section: greedy least-cover steps."""
    view = section if isinstance(section, LatticeView) else LatticeView(section)
    nodes = [view.bottom]
    while nodes[-1] != view.top:
        nodes.append(min(view.covers_up(nodes[-1])))
    return tuple(nodes)


def liu_label(section: Sublattice | LatticeView, chain: Sequence[int],
              y: int, z: int) -> int:
    """Weak-separation index of a section cover edge against the section chain."""
    view = section if isinstance(section, LatticeView) else LatticeView(section)
    return _chain_separation_index(view, chain, y, z)


@dataclass
class LabeledLattice:
    """The lattice with one (i, j) pair per cover edge, in one orientation.

    Edge keys are oriented pairs (lower, upper); for the dual labeling the
    key for a primal cover y < z is (z, y).
    """

    lattice: SubgroupLattice
    series: ChiefSeries
    dual: bool
    edge_labels: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    edge_sections: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    section_chains: dict[frozenset[int], tuple[int, ...]] = field(default_factory=dict)

    def view(self) -> LatticeView:
        return LatticeView(self.lattice, dual=self.dual)

    def series_chain(self) -> tuple[int, ...]:
        return oriented_series(self.series, self.dual)

    def label(self, y: int, z: int) -> tuple[int, int]:
        return self.edge_labels[(y, z)]

    def chain_labels(self, chain: Sequence[int]) -> tuple[tuple[int, int], ...]:
        """Label sequence of an oriented chain, read bottom to top."""
        return tuple(self.edge_labels[(a, b)] for a, b in zip(chain, chain[1:]))


def _build_labeling(lattice: SubgroupLattice, series: ChiefSeries,
                    dual: bool) -> LabeledLattice:
    labeled = LabeledLattice(lattice, series, dual)
    view = labeled.view()
    chain = labeled.series_chain()
    for y in view.members:
        for z in view.covers_up(y):
            i = _chain_separation_index(view, chain, y, z)
            # the section spans the primal interval between the chain terms
            p_lo, p_hi = ((chain[i + 1], chain[i]) if dual
                          else (chain[i], chain[i + 1]))
            sec = section_between(lattice, p_lo, p_hi, y)
            sec_view = LatticeView(sec, dual=dual)
            key = frozenset(sec.members)
            sec_chain = labeled.section_chains.get(key)
            if sec_chain is None:
                sec_chain = canonical_modular_chain(sec_view)
                labeled.section_chains[key] = sec_chain
            ry = _rho_view(view, chain, i, y)
            rz = _rho_view(view, chain, i, z)
            if rz not in sec_view.covers_up(ry):
                raise SeparationError(
                    f"projection of edge ({y}, {z}) is not a section cover")
            j = _chain_separation_index(sec_view, sec_chain, ry, rz)
            labeled.edge_labels[(y, z)] = (i, j)
            labeled.edge_sections[(y, z)] = sec.members
    return labeled


def label_lattice(lattice: SubgroupLattice, series: ChiefSeries) -> LabeledLattice:
    """The pair labeling (separation index, section label) of every cover edge."""
    return _build_labeling(lattice, series, dual=False)


def label_lattice_dual(lattice: SubgroupLattice, series: ChiefSeries) -> LabeledLattice:
    """The same pipeline on the dual lattice with the reversed series."""
    return _build_labeling(lattice, series, dual=True)
