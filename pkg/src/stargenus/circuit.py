"""Euler circuits compatible with the source-sink structure.

A transition system picks, at every vertex, a bijection from in-slots to
out-slots; tracing successor edges decomposes the edge set into directed
closed walks. Local bijections are graded by where each passage exits
relative to where it entered: every passage to a cyclically adjacent slot
is "rotating", a single straight-through (opposite) passage makes the
bijection "splitting", anything else is invalid. The merge procedure below
turns the canonical transition system into one whose decomposition is a
single Euler circuit using only rotating and splitting bijections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core_graph import HalfEdgeRef, Orientation, StarGraph
from .errors import InvariantViolation
from .union_find import UnionFind

ROTATING = "rotating"
SPLITTING = "splitting"
INVALID = "invalid"


@dataclass(frozen=True)
class TransitionSystem:
    """Per-vertex bijection from in-slots to out-slots."""

    transitions: dict[int, dict[int, int]]

    def at(self, v: int) -> dict[int, int]:
        return self.transitions[v]


@dataclass(frozen=True)
class Visit:
    """One passage of the circuit through a vertex: arrive in_slot, leave out_slot."""

    vertex: int
    in_slot: int
    out_slot: int


@dataclass(frozen=True)
class EulerCircuit:
    """A single closed walk using every edge once, in circuit order.

    Visit k sits between edges[k-1] and edges[k] (cyclically), so the visit
    list doubles as the point set of the chord diagram circle. positions maps
    each vertex to the ascending list of its visit indices.
    """

    edges: tuple[int, ...]
    visits: tuple[Visit, ...]
    positions: dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class VertexClass:
    """How the final circuit passes a vertex.

    kind is "rotating4", "rotating6" or "splitting6". Rotating 6-vertices
    carry crossed (all three return arcs land opposite) vs flat; splitting
    vertices carry the index, within the vertex's visit list, of the visit
    whose passage is straight-through.
    """

    kind: str
    crossed: Optional[bool] = None
    principal: Optional[int] = None

    def label(self) -> str:
        if self.kind == "rotating6":
            return "rotating6-crossed" if self.crossed else "rotating6-flat"
        if self.kind == "splitting6":
            return f"splitting6@{self.principal}"
        return self.kind


def _cyclic_distance(a: int, b: int, d: int) -> int:
    diff = (a - b) % d
    return min(diff, d - diff)


def classify_local(degree: int, transition: dict[int, int]) -> str:
    """Grade one vertex bijection: ROTATING, SPLITTING or INVALID."""
    adjacent = opposite = 0
    for i, o in transition.items():
        dist = _cyclic_distance(i, o, degree)
        if dist == 1:
            adjacent += 1
        elif dist == degree // 2:
            opposite += 1
    n = len(transition)
    if adjacent == n:
        return ROTATING
    if opposite == 1 and adjacent == n - 1:
        return SPLITTING
    return INVALID


def _walk_maps(g: StarGraph, orientation: Orientation):
    """head ref per edge, arriving edge per (v, in_slot), departing edge per (v, out_slot)."""
    head_ref: dict[int, HalfEdgeRef] = {}
    arrive: dict[tuple[int, int], int] = {}
    depart: dict[tuple[int, int], int] = {}
    for eid, (tail, head) in orientation.direction.items():
        head_ref[eid] = head
        arrive[(head.vertex, head.slot)] = eid
        depart[(tail.vertex, tail.slot)] = eid
    return head_ref, arrive, depart


def initial_transition_system(g: StarGraph, orientation: Orientation) -> TransitionSystem:
    """The canonical starting point: in-slot i exits at slot (i + 1) mod d."""
    transitions: dict[int, dict[int, int]] = {}
    _, arrive, _ = _walk_maps(g, orientation)
    for v in sorted(g.vertices):
        d = g.vertices[v]
        ins = sorted(s for s in range(d) if (v, s) in arrive)
        transitions[v] = {s: (s + 1) % d for s in ins}
    return TransitionSystem(transitions)


def cycles_of(g: StarGraph, orientation: Orientation,
              ts: TransitionSystem) -> tuple[tuple[int, ...], ...]:
    """Directed closed walks induced by ts, as edge-id tuples.

    Deterministic: each cycle starts at its lowest edge id and cycles are
    listed by that id in ascending order.
    """
    head_ref, _, depart = _walk_maps(g, orientation)
    seen: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    for start in sorted(head_ref):
        if start in seen:
            continue
        walk = []
        e = start
        while e not in seen:
            seen.add(e)
            walk.append(e)
            head = head_ref[e]
            e = depart[(head.vertex, ts.at(head.vertex)[head.slot])]
        if e != start:
            raise InvariantViolation("transition walk did not close")
        cycles.append(tuple(walk))
    return tuple(cycles)


def find_rs_circuit(g: StarGraph, orientation: Orientation,
                    stats: Optional[dict] = None) -> tuple[TransitionSystem, EulerCircuit]:
    """Merge the canonical cycle decomposition into one Euler circuit.

    Vertices are processed in ascending id order. A vertex is eligible while
    its visits lie on at least two distinct current cycles; the candidate
    bijections at an eligible vertex are tried in canonical lexicographic
    order (image of the lowest in-slot first) and the first one that strictly
    reduces the number of cycles through the vertex is applied. Accepted
    candidates only merge cycles, so a union-find over the initially traced
    cycles tracks the current decomposition without retracing; the whole pass
    is near-linear in the edge count.

    The returned circuit starts at the lowest edge id. `stats`, when given,
    receives initial_cycles and merge_steps.
    """
    head_ref, arrive, depart = _walk_maps(g, orientation)
    ts = {v: dict(d) for v, d in initial_transition_system(g, orientation).transitions.items()}

    cycle_of: dict[int, int] = {}
    n_cycles = 0
    for start in sorted(head_ref):
        if start in cycle_of:
            continue
        e = start
        while e not in cycle_of:
            cycle_of[e] = n_cycles
            head = head_ref[e]
            e = depart[(head.vertex, ts[head.vertex][head.slot])]
        n_cycles += 1

    dsu = UnionFind(n_cycles)
    live = n_cycles
    merge_steps = 0

    for v in sorted(g.vertices):
        d = g.vertices[v]
        ins = sorted(ts[v])
        outs = sorted(set(ts[v].values()))
        while True:
            root_of = {s: dsu.find(cycle_of[arrive[(v, s)]]) for s in ins}
            current = len(set(root_of.values()))
            if current < 2:
                break
            # Where does the walk re-enter v after leaving each out-slot?
            # Determined by which visits share a cycle: a lone visit returns
            # to itself, paired visits return to each other.
            by_root: dict[int, list[int]] = {}
            for s in ins:
                by_root.setdefault(root_of[s], []).append(s)
            ext: dict[int, int] = {}
            for group in by_root.values():
                if len(group) == 1:
                    ext[ts[v][group[0]]] = group[0]
                elif len(group) == 2:
                    s, t = group
                    ext[ts[v][s]] = t
                    ext[ts[v][t]] = s
                else:
                    raise InvariantViolation("three co-cyclic visits at an eligible vertex")

            applied = False
            for image in itertools.permutations(outs):
                cand = dict(zip(ins, image))
                if classify_local(d, cand) == INVALID:
                    continue
                # cycles of the local return permutation s -> ext(cand(s))
                unseen = set(ins)
                local_cycles = []
                while unseen:
                    s0 = min(unseen)
                    cyc = []
                    s = s0
                    while s in unseen:
                        unseen.remove(s)
                        cyc.append(s)
                        s = ext[cand[s]]
                    local_cycles.append(cyc)
                if len(local_cycles) < current:
                    ts[v] = cand
                    for cyc in local_cycles:
                        for s in cyc[1:]:
                            dsu.union(root_of[cyc[0]], root_of[s])
                    live -= current - len(local_cycles)
                    merge_steps += 1
                    applied = True
                    break
            if not applied:
                raise InvariantViolation(f"no merging bijection at vertex {v}")

    if live != 1:
        raise InvariantViolation("merge finished with more than one cycle")
    if merge_steps > n_cycles - 1 and n_cycles > 0:
        raise InvariantViolation("merge step budget exceeded")
    if stats is not None:
        stats["initial_cycles"] = n_cycles
        stats["merge_steps"] = merge_steps

    # Trace the final circuit from the lowest edge id.
    start = min(head_ref)
    seq = []
    e = start
    while True:
        seq.append(e)
        head = head_ref[e]
        e = depart[(head.vertex, ts[head.vertex][head.slot])]
        if e == start:
            break
    if len(seq) != g.n_edges:
        raise InvariantViolation("final walk is not an Euler circuit")

    visits = []
    for k, eid in enumerate(seq):
        prev_head = head_ref[seq[k - 1]]
        tail = orientation.tail(eid)
        if tail.vertex != prev_head.vertex:
            raise InvariantViolation("circuit visit is not contiguous")
        visits.append(Visit(prev_head.vertex, prev_head.slot, tail.slot))

    positions: dict[int, list[int]] = {v: [] for v in g.vertices}
    for k, vis in enumerate(visits):
        positions[vis.vertex].append(k)

    circuit = EulerCircuit(
        edges=tuple(seq),
        visits=tuple(visits),
        positions={v: tuple(ks) for v, ks in sorted(positions.items())},
    )
    return TransitionSystem({v: dict(t) for v, t in ts.items()}), circuit


def classify_vertices(g: StarGraph, circuit: EulerCircuit) -> dict[int, VertexClass]:
    """Classify every vertex of the finished circuit.

    Degree-4 vertices are always rotating. A degree-6 vertex with no
    straight-through passage is rotating, and its three return arcs must be
    uniformly near (flat) or uniformly opposite (crossed); exactly one
    straight-through passage makes it splitting, with the principal visit
    recorded by its index in the vertex's visit list.
    """
    classes: dict[int, VertexClass] = {}
    for v in sorted(g.vertices):
        d = g.vertices[v]
        vlist = [circuit.visits[k] for k in circuit.positions[v]]
        dists = [_cyclic_distance(vis.in_slot, vis.out_slot, d) for vis in vlist]
        if d == 4:
            if dists != [1, 1]:
                raise InvariantViolation(f"non-rotating passage at degree-4 vertex {v}")
            classes[v] = VertexClass("rotating4")
            continue
        opposite = [i for i, dist in enumerate(dists) if dist == 3]
        if any(dist not in (1, 3) for dist in dists):
            raise InvariantViolation(f"invalid passage at vertex {v}")
        if not opposite:
            arcs = {_cyclic_distance(vlist[i].out_slot, vlist[(i + 1) % 3].in_slot, 6)
                    for i in range(3)}
            if arcs == {1}:
                classes[v] = VertexClass("rotating6", crossed=False)
            elif arcs == {3}:
                classes[v] = VertexClass("rotating6", crossed=True)
            else:
                raise InvariantViolation(f"mixed return arcs at rotating vertex {v}")
        elif len(opposite) == 1:
            classes[v] = VertexClass("splitting6", principal=opposite[0])
        else:
            raise InvariantViolation(f"multiple straight passages at vertex {v}")
    return classes
