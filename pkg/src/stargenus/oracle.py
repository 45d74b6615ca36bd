"""Brute-force genus oracle via checkerboard face tracing.

Fixing a source-sink orientation, every per-vertex choice of which angle
class is white determines a checkerboard surface: white faces are traced
forward through white angles, black faces backward through black angles,
and the genus falls out of the Euler characteristic. Minimizing over all
2^n colourings is an independent check on the rank-based computation, kept
deliberately naive and capped.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .core_graph import Orientation, StarGraph, find_source_sink_orientation, require_valid
from .errors import InvariantViolation, NotSourceSinkError, OracleCapExceeded
from .genus import Pipeline, PermissiblePartition, SIDE_BLACK

DEFAULT_CAP = 20


@dataclass(frozen=True)
class AtomColoring:
    """bits[v] = c means the angles (i, i+1) with i = c mod 2 are white at v."""

    bits: dict[int, int]


@dataclass(frozen=True)
class FaceCount:
    white: int
    black: int
    euler: int
    genus: int


def _face_maps(g: StarGraph, orientation: Orientation):
    heads: dict[tuple[int, int], int] = {}
    tails: dict[tuple[int, int], int] = {}
    for eid, (tail, head) in orientation.direction.items():
        tails[(tail.vertex, tail.slot)] = eid
        heads[(head.vertex, head.slot)] = eid
    return heads, tails


def _cycle_count(edge_ids, successor) -> int:
    seen: set[int] = set()
    cycles = 0
    for start in edge_ids:
        if start in seen:
            continue
        cycles += 1
        e = start
        while e not in seen:
            seen.add(e)
            e = successor(e)
    return cycles


def trace_faces(g: StarGraph, orientation: Orientation, coloring: AtomColoring) -> FaceCount:
    """Face counts and genus of the checkerboard surface for one colouring.

    A white face is followed forward: arriving at head slot s, it continues
    out of the other slot of the white angle flanking s. A black face is
    followed backward from tail slots through black angles. Both successor
    maps are permutations of the edge set, so the cycle counts are faces.
    """
    heads, tails = _face_maps(g, orientation)
    bits = coloring.bits
    ids = sorted(orientation.direction)

    def white_next(eid: int) -> int:
        head = orientation.head(eid)
        v, s, d = head.vertex, head.slot, g.vertices[head.vertex]
        down = (s - 1) % d
        mate = down if down % 2 == bits[v] else (s + 1) % d
        return tails[(v, mate)]

    def black_next(eid: int) -> int:
        tail = orientation.tail(eid)
        v, s, d = tail.vertex, tail.slot, g.vertices[tail.vertex]
        down = (s - 1) % d
        mate = down if down % 2 == 1 - bits[v] else (s + 1) % d
        return heads[(v, mate)]

    white = _cycle_count(ids, white_next)
    black = _cycle_count(ids, black_next)
    euler = g.n_vertices - g.n_edges + white + black
    if euler % 2:
        raise InvariantViolation("odd Euler characteristic")
    genus = (2 - euler) // 2
    if genus < 0:
        raise InvariantViolation("negative genus from face trace")
    return FaceCount(white, black, euler, genus)


def min_genus_bruteforce(g: StarGraph, cap: Optional[int] = DEFAULT_CAP,
                         threads: Optional[int] = None) -> tuple[int, AtomColoring]:
    """Minimum genus over all 2^n colourings, with the least witness.

    Refuses graphs above `cap` vertices (None disables the cap). Ties break
    to the lexicographically least bit vector over ascending vertex ids.
    """
    require_valid(g)
    orientation = find_source_sink_orientation(g)
    if orientation is None:
        raise NotSourceSinkError("graph has no source-sink orientation")
    vertices = sorted(g.vertices)
    n = len(vertices)
    if cap is not None and n > cap:
        raise OracleCapExceeded(f"{n} vertices exceeds the enumeration cap {cap}")

    def scan(lo: int, hi: int) -> tuple[int, int]:
        best: Optional[tuple[int, int]] = None
        for code in range(lo, hi):
            bits = {v: (code >> (n - 1 - k)) & 1 for k, v in enumerate(vertices)}
            fc = trace_faces(g, orientation, AtomColoring(bits))
            cand = (fc.genus, code)
            if best is None or cand < best:
                best = cand
        assert best is not None
        return best

    total = 1 << n
    if threads is None or threads <= 1 or total < 4096:
        genus, code = scan(0, total)
    else:
        chunk = max(512, total // (threads * 8))
        ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            genus, code = min(pool.map(lambda r: scan(*r), ranges))

    bits = {v: (code >> (n - 1 - k)) & 1 for k, v in enumerate(vertices)}
    return genus, AtomColoring(bits)


def oracle_min_genus(g: StarGraph, cap: Optional[int] = DEFAULT_CAP) -> int:
    """The brute-force minimum genus (see min_genus_bruteforce)."""
    return min_genus_bruteforce(g, cap=cap)[0]


def chord_region_parity(pipe: Pipeline) -> dict[int, int]:
    """Angle-class parity that is white at each vertex when its side is W.

    The circuit fixes, at every vertex, which angle class the chord regions
    fall into. At a rotating vertex every passage turns through angles of one
    class and the regions lie in the other. At a splitting vertex the
    straight passage cuts the star in two; the regions follow the side on
    which the circuit first returns, read off from the in-slot of the next
    visit after the principal one.
    """
    parity: dict[int, int] = {}
    for v in sorted(pipe.graph.vertices):
        d = pipe.graph.vertices[v]
        cls = pipe.classes[v]
        pos = pipe.circuit.positions[v]
        if cls.kind in ("rotating4", "rotating6"):
            vis = pipe.circuit.visits[pos[0]]
            i, o = vis.in_slot, vis.out_slot
            if (i + 1) % d == o:
                angle_index = i
            elif (o + 1) % d == i:
                angle_index = o
            else:
                raise InvariantViolation(f"non-adjacent passage at rotating vertex {v}")
            parity[v] = 1 - (angle_index % 2)
        else:
            k = cls.principal or 0
            principal = pipe.circuit.visits[pos[k]]
            a_in = principal.in_slot
            nxt = pipe.circuit.visits[pos[(k + 1) % 3]]
            near = ((a_in + 1) % 6, (a_in + 2) % 6)
            parity[v] = a_in % 2 if nxt.in_slot in near else (a_in + 1) % 2
    return parity


def coloring_of_partition(pipe: Pipeline, partition: PermissiblePartition) -> AtomColoring:
    """The atom colouring whose checkerboard surface realizes the partition.

    bit(v) = region parity of v, flipped when the vertex sits on side B.
    """
    region = chord_region_parity(pipe)
    bits = {v: region[v] ^ (1 if partition.side[v] == SIDE_BLACK else 0)
            for v in sorted(partition.side)}
    return AtomColoring(bits)
