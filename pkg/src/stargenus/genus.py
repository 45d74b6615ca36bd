"""Genus minimization over permissible partitions, and the planarity fast path.

A permissible partition assigns each vertex a side, W or B; the two expanded
chords of a triad stay on the vertex's side, the two halves of a double
chord take opposite sides (the vertex's side bit is the side of its p+
chord). The genus of a partition is half the sum of the GF(2) ranks of the
two principal submatrices of the intersection matrix, and the minimal genus
is the minimum over all 2^n partitions. Planarity (genus 0) does not need
the scan: it reduces to 2-colouring the chords so that linked chords and
double-chord halves disagree while triad halves agree, solved with a parity
union-find in near-quadratic total time.
"""

from __future__ import annotations

from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .chords import (ChordDiagram, StarChordDiagram, build_star_chord_diagram,
                     expand, intersection_matrix, linked_pairs)
from .circuit import (EulerCircuit, TransitionSystem, VertexClass,
                      classify_vertices, find_rs_circuit)
from .core_graph import Orientation, StarGraph, find_source_sink_orientation, require_valid
from .errors import InvariantViolation, NotSourceSinkError
from .gf2 import BitMatrix, masked_rank, rank_of_rows
from .union_find import ParityUnionFind

SIDE_WHITE = "W"
SIDE_BLACK = "B"


@dataclass(frozen=True)
class Pipeline:
    """Everything derived from one graph: orientation through matrix."""

    graph: StarGraph
    orientation: Orientation
    transitions: TransitionSystem
    circuit: EulerCircuit
    classes: dict[int, VertexClass]
    star_diagram: StarChordDiagram
    diagram: ChordDiagram
    linked: tuple[tuple[int, int], ...]
    matrix: BitMatrix


def build_pipeline(g: StarGraph) -> Pipeline:
    """Validate, orient, trace, attach, expand. Raises on invalid input
    (InvalidGraphError) and on graphs with no source-sink orientation
    (NotSourceSinkError)."""
    require_valid(g)
    orientation = find_source_sink_orientation(g)
    if orientation is None:
        raise NotSourceSinkError("graph has no source-sink orientation")
    ts, circuit = find_rs_circuit(g, orientation)
    classes = classify_vertices(g, circuit)
    star = build_star_chord_diagram(g, circuit, classes)
    diagram = expand(star)
    pairs = tuple(linked_pairs(diagram))
    matrix = intersection_matrix(diagram, list(pairs))
    return Pipeline(g, orientation, ts, circuit, classes, star, diagram, pairs, matrix)


@dataclass(frozen=True)
class PermissiblePartition:
    """Vertex sides plus the induced chord index sets (white, black)."""

    side: dict[int, str]
    white: tuple[int, ...]
    black: tuple[int, ...]


@dataclass(frozen=True)
class GenusResult:
    min_genus: int
    witness: PermissiblePartition
    ranks: tuple[int, int]  # white rank, black rank at the witness


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    witness: Optional[dict[int, str]] = None   # vertex -> side when planar
    conflict: Optional[tuple[int, ...]] = None  # odd chord cycle otherwise


def _chord_is_white(group, vertex_is_black: bool) -> bool:
    flip = group.kind == "dchord" and group.plus is False
    return vertex_is_black == flip


def partition_from_code(diagram: ChordDiagram, vertices: list[int],
                        code: int) -> PermissiblePartition:
    """Bit k of `code` (big-endian over ascending vertices) = 1 means B."""
    n = len(vertices)
    black_bits = {v: (code >> (n - 1 - k)) & 1 for k, v in enumerate(vertices)}
    side = {v: SIDE_BLACK if b else SIDE_WHITE for v, b in black_bits.items()}
    white, black = [], []
    for i, grp in enumerate(diagram.groups):
        if _chord_is_white(grp, bool(black_bits[grp.vertex])):
            white.append(i)
        else:
            black.append(i)
    return PermissiblePartition(side, tuple(white), tuple(black))


def enumerate_permissible_partitions(diagram: ChordDiagram) -> Iterator[PermissiblePartition]:
    """All 2^n partitions, in ascending order of the side bit-vector."""
    vertices = sorted({grp.vertex for grp in diagram.groups})
    for code in range(1 << len(vertices)):
        yield partition_from_code(diagram, vertices, code)


def rank_pair(matrix: BitMatrix, partition: PermissiblePartition) -> tuple[int, int]:
    return masked_rank(matrix, partition.white), masked_rank(matrix, partition.black)


def genus_of_partition(matrix: BitMatrix, partition: PermissiblePartition) -> int:
    """Half the sum of the two side ranks; the sum is always even."""
    rw, rb = rank_pair(matrix, partition)
    if (rw + rb) & 1:
        raise InvariantViolation("odd rank sum for a permissible partition")
    return (rw + rb) // 2


def _side_masks(diagram: ChordDiagram, vertices: list[int]) -> tuple[list[int], list[int]]:
    """Per-vertex chord masks: chords white when the vertex is W / when B."""
    index = {v: k for k, v in enumerate(vertices)}
    mask_w = [0] * len(vertices)
    mask_b = [0] * len(vertices)
    for i, grp in enumerate(diagram.groups):
        k = index[grp.vertex]
        if grp.kind == "dchord" and grp.plus is False:
            mask_b[k] |= 1 << i
        else:
            mask_w[k] |= 1 << i
    return mask_w, mask_b


def _scan_codes(rows: tuple[int, ...], n_chords: int, mask_w: list[int],
                mask_b: list[int], lo: int, hi: int) -> tuple[int, int, int, int]:
    """Best (genus, code, rank_w, rank_b) over codes in [lo, hi)."""
    n = len(mask_w)
    full = (1 << n_chords) - 1
    best: Optional[tuple[int, int, int, int]] = None
    for code in range(lo, hi):
        wm = 0
        for k in range(n):
            wm |= mask_b[k] if (code >> (n - 1 - k)) & 1 else mask_w[k]
        bm = full & ~wm
        rw = rank_of_rows(rows[i] & wm for i in _bits(wm))
        rb = rank_of_rows(rows[i] & bm for i in _bits(bm))
        if (rw + rb) & 1:
            raise InvariantViolation("odd rank sum for a permissible partition")
        cand = ((rw + rb) >> 1, code, rw, rb)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def min_genus(g: StarGraph, threads: Optional[int] = None) -> GenusResult:
    """Scan all permissible partitions; ties break to the lexicographically
    least side assignment (W before B, ascending vertex ids).

    `threads` > 1 splits the code range into chunks evaluated concurrently;
    the reduction is a commutative min over (genus, code) so the result is
    identical for every thread count.
    """
    pipe = build_pipeline(g)
    return min_genus_of_pipeline(pipe, threads=threads)


def min_genus_of_pipeline(pipe: Pipeline, threads: Optional[int] = None) -> GenusResult:
    vertices = sorted(pipe.graph.vertices)
    n = len(vertices)
    mask_w, mask_b = _side_masks(pipe.diagram, vertices)
    rows = pipe.matrix.rows
    n_chords = pipe.matrix.n
    total = 1 << n

    if threads is None or threads <= 1 or total < 4096:
        best = _scan_codes(rows, n_chords, mask_w, mask_b, 0, total)
    else:
        chunk = max(1024, total // (threads * 8))
        ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda r: _scan_codes(rows, n_chords, mask_w, mask_b, *r), ranges))
        best = min(results)

    genus, code, rw, rb = best
    witness = partition_from_code(pipe.diagram, vertices, code)
    return GenusResult(genus, witness, (rw, rb))


def is_planar(g: StarGraph) -> PlanarityResult:
    """Genus-0 test without the partition scan.

    Constraints: linked chords take opposite sides, the two halves of a
    double chord take opposite sides, the two halves of a triad take the
    same side. If the parity union-find absorbs every constraint, sides are
    read off with each component anchored white at its lowest chord;
    otherwise the first rejected constraint closes an odd cycle, returned as
    the conflict certificate.
    """
    pipe = build_pipeline(g)
    return planarity_of_pipeline(pipe)


def planarity_of_pipeline(pipe: Pipeline) -> PlanarityResult:
    diagram = pipe.diagram
    n = len(diagram.chords)

    by_vertex: dict[int, list[int]] = defaultdict(list)
    for i, grp in enumerate(diagram.groups):
        by_vertex[grp.vertex].append(i)

    constraints: list[tuple[int, int, int]] = []
    for v in sorted(by_vertex):
        idxs = by_vertex[v]
        if len(idxs) == 2:
            parity = 1 if diagram.groups[idxs[0]].kind == "dchord" else 0
            constraints.append((idxs[0], idxs[1], parity))
    constraints.extend((i, j, 1) for i, j in pipe.linked)

    uf = ParityUnionFind(n)
    conflict_at = None
    for idx, (i, j, p) in enumerate(constraints):
        if not uf.union(i, j, p):
            conflict_at = idx
            break

    if conflict_at is None:
        anchor_parity: dict[int, int] = {}
        chord_side: list[str] = []
        for i in range(n):  # ascending, so the lowest chord anchors its component
            root, par = uf.find(i)
            if root not in anchor_parity:
                anchor_parity[root] = par
            chord_side.append(SIDE_WHITE if par == anchor_parity[root] else SIDE_BLACK)
        witness: dict[int, str] = {}
        for v, idxs in sorted(by_vertex.items()):
            gov = idxs[0]
            if diagram.groups[idxs[0]].kind == "dchord" and diagram.groups[idxs[0]].plus is False:
                gov = idxs[1]
            witness[v] = chord_side[gov]
        return PlanarityResult(True, witness=witness)

    i, j, p = constraints[conflict_at]
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for x, y, q in constraints[:conflict_at]:
        adj[x].append((y, q))
        adj[y].append((x, q))
    parent: dict[int, Optional[int]] = {i: None}
    queue = deque([i])
    while queue and j not in parent:
        x = queue.popleft()
        for y, _ in adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if j not in parent:
        raise InvariantViolation("conflicting chords are not connected")
    path = [j]
    while path[-1] != i:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()
    return PlanarityResult(False, conflict=tuple(path))
