"""PL link diagrams in the torus (or the plane) with exact coordinates.

A diagram lives in the fundamental square [0,1)^2.  Each edge stores a PL
path in the universal cover starting exactly at the position of its first
crossing; its winding vector is the integer offset between the end of the
path and the position of its second crossing.  Crossing ports are numbered
0..3 counterclockwise, the understrand runs through ports 0 and 2 and the
overstrand through 1 and 3.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import geometry as geo
from .classes import TRIVIAL, normalize
from .errors import TorkhError
from .portgraph import (PortGraph, arc_loop_class, arc_passages, node_of, port, slot_of,
                        winding_between)


class WindingVector(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class Crossing:
    id: int
    position: tuple  # (Fraction, Fraction)


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple  # ((crossing id, port), (crossing id, port)), or () for a free loop
    path: tuple  # points in the universal cover
    winding: WindingVector


@dataclass(frozen=True)
class RealizedDiagram:
    genus: int
    crossings: tuple
    edges: tuple
    components: tuple  # tuple of tuples of (edge id, forward)

    @property
    def n(self):
        return len(self.crossings)

    def crossing_index(self):
        return {c.id: i for i, c in enumerate(self.crossings)}

    def edge_by_id(self):
        return {e.id: e for e in self.edges}


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    code: str = ""
    invariant: str = ""
    detail: str = ""

    def to_json(self):
        if self.ok:
            return {"valid": True}
        return {"valid": False, "error": self.code, "invariant": self.invariant,
                "detail": self.detail}


# ----------------------------------------------------------------------------
# JSON


def _rat(num, den):
    if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
        raise TorkhError("PARSE_ERROR", "rational entries must be integers")
    if den <= 0 or gcd(num, den) != 1:
        raise TorkhError("PARSE_ERROR", f"rational {num}/{den} not in lowest terms")
    return Fraction(num, den)


def _point(q):
    if not isinstance(q, list) or len(q) != 4:
        raise TorkhError("PARSE_ERROR", f"point must be [num,den,num,den], got {q!r}")
    return (_rat(q[0], q[1]), _rat(q[2], q[3]))


def _point_json(p):
    return [p[0].numerator, p[0].denominator, p[1].numerator, p[1].denominator]


def diagram_from_json(data):
    try:
        genus = data["genus"]
        if genus not in (0, 1):
            raise TorkhError("PARSE_ERROR", "genus must be 0 or 1")
        crossings = []
        for c in data["crossings"]:
            crossings.append(Crossing(int(c["id"]), _point(c["position"])))
        edges = []
        for e in data["edges"]:
            ends = tuple((int(c), int(k)) for c, k in e.get("ends", []))
            if len(ends) not in (0, 2):
                raise TorkhError("PARSE_ERROR", f"edge {e['id']} must have 0 or 2 ends")
            path = tuple(_point(q) for q in e["path"])
            if len(path) < 2:
                raise TorkhError("PARSE_ERROR", f"edge {e['id']} path too short")
            w = e["winding"]
            edges.append(Edge(int(e["id"]), ends, path, WindingVector(int(w[0]), int(w[1]))))
        components = tuple(tuple((int(eid), bool(fw)) for eid, fw in comp)
                           for comp in data["components"])
    except TorkhError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise TorkhError("PARSE_ERROR", f"malformed diagram: {exc!r}") from None
    return RealizedDiagram(genus, tuple(crossings), tuple(edges), components)


def diagram_to_json(d):
    return {
        "genus": d.genus,
        "crossings": [{"id": c.id, "position": _point_json(c.position)} for c in d.crossings],
        "edges": [{"id": e.id, "ends": [list(x) for x in e.ends],
                   "path": [_point_json(p) for p in e.path],
                   "winding": [e.winding.a, e.winding.b]} for e in d.edges],
        "components": [[[eid, fw] for eid, fw in comp] for comp in d.components],
    }


def load_diagram(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise TorkhError("PARSE_ERROR", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise TorkhError("PARSE_ERROR", f"{path}: {exc}") from None
    return diagram_from_json(data)


def dump_diagram(d, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(diagram_to_json(d), fh, sort_keys=True, indent=1)
        fh.write("\n")


# ----------------------------------------------------------------------------
# local structure at crossings


def _end_table(d):
    """(crossing index, port) -> (edge, end index)."""
    idx = d.crossing_index()
    table = {}
    for e in d.edges:
        for j, (cid, k) in enumerate(e.ends):
            table.setdefault((idx[cid], k), []).append((e, j))
    return table


def _leaving_direction(e, j):
    if j == 0:
        return geo.vsub(e.path[1], e.path[0])
    return geo.vsub(e.path[-2], e.path[-1])


def _orientation_of_edges(d):
    forward = {}
    for comp in d.components:
        for eid, fw in comp:
            forward[eid] = fw
    return forward


def crossing_signs(d):
    """+1 when (under direction, over direction) is positively oriented."""
    table = _end_table(d)
    forward = _orientation_of_edges(d)
    signs = []
    for i in range(d.n):
        dirs = []
        for pair in ((0, 2), (1, 3)):
            for k in pair:
                e, j = table[(i, k)][0]
                outgoing = (j == 0) == forward[e.id]
                if outgoing:
                    dirs.append(_leaving_direction(e, j))
                    break
            else:
                raise TorkhError("PARSE_ERROR", f"strand through crossing {i} has no outgoing end")
        c = geo.cross(dirs[0], dirs[1])
        signs.append(1 if c > 0 else -1)
    return signs


def port_graph(d):
    idx = d.crossing_index()
    seg = [None] * (4 * d.n)
    free, names = [], []
    for e in d.edges:
        w = tuple(e.winding)
        if not e.ends:
            free.append(w)
            names.append(e.id)
            continue
        (c0, k0), (c1, k1) = e.ends
        p, q = port(idx[c0], k0), port(idx[c1], k1)
        seg[p] = (q, w)
        seg[q] = (p, (-w[0], -w[1]))
    return PortGraph(d.n, tuple(seg), free=tuple(free), free_names=tuple(names))


def _segment_edges(d):
    """port -> (edge, end index) for the unique edge end at that port."""
    return {k: v[0] for k, v in _end_table(d).items()}


# ----------------------------------------------------------------------------
# validation


def validate(d):
    try:
        _validate(d)
    except _Fail as f:
        return ValidationReport(False, f.code, f.invariant, f.detail)
    return ValidationReport(True)


class _Fail(Exception):
    def __init__(self, code, invariant, detail):
        self.code, self.invariant, self.detail = code, invariant, detail


def _validate(d):
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        raise _Fail("PARSE_ERROR", "crossing ids", "duplicate crossing id")
    if len({e.id for e in d.edges}) != len(d.edges):
        raise _Fail("PARSE_ERROR", "edge ids", "duplicate edge id")
    for c in d.crossings:
        if not (0 <= c.position[0] < 1 and 0 <= c.position[1] < 1):
            raise _Fail("PARSE_ERROR", "positions", f"crossing {c.id} outside [0,1)^2")
    if len({c.position for c in d.crossings}) != len(d.crossings):
        raise _Fail("SELF_INTERSECTION", "distinct positions", "two crossings share a position")
    idx = d.crossing_index()
    table = {}
    for e in d.edges:
        for j, (cid, k) in enumerate(e.ends):
            if cid not in idx or k not in (0, 1, 2, 3):
                raise _Fail("DANGLING_PORT", "edge ends", f"edge {e.id} ends at unknown port ({cid},{k})")
            table.setdefault((idx[cid], k), []).append((e, j))
    for i, c in enumerate(d.crossings):
        for k in range(4):
            n = len(table.get((i, k), []))
            if n != 1:
                raise _Fail("DANGLING_PORT", "one edge end per port",
                            f"crossing {c.id} port {k} has {n} edge ends")
    pos = [c.position for c in d.crossings]
    for e in d.edges:
        if d.genus == 0 and tuple(e.winding) != (0, 0):
            raise _Fail("WINDING_MISMATCH", "planar windings", f"edge {e.id} has nonzero winding in genus 0")
        if e.ends:
            start = pos[idx[e.ends[0][0]]]
            end = pos[idx[e.ends[1][0]]]
            if e.path[0] != start:
                raise _Fail("WINDING_MISMATCH", "path anchoring",
                            f"edge {e.id} path does not start at its crossing")
            off = geo.vsub(e.path[-1], end)
        else:
            off = geo.vsub(e.path[-1], e.path[0])
        if off[0].denominator != 1 or off[1].denominator != 1:
            raise _Fail("WINDING_MISMATCH", "path anchoring", f"edge {e.id} does not end at a lift of its crossing")
        if (int(off[0]), int(off[1])) != tuple(e.winding):
            raise _Fail("WINDING_MISMATCH", "winding = path displacement",
                        f"edge {e.id} declares {tuple(e.winding)} but its path gives {(int(off[0]), int(off[1]))}")
        for a, b in zip(e.path, e.path[1:]):
            if a == b:
                raise _Fail("PARSE_ERROR", "paths", f"edge {e.id} has a repeated point")
    for i, c in enumerate(d.crossings):
        dirs = [_leaving_direction(*table[(i, k)][0]) for k in range(4)]
        if not geo.is_ccw_cyclic(dirs):
            raise _Fail("PARSE_ERROR", "ports counterclockwise",
                        f"ports of crossing {c.id} are not in counterclockwise order")
    _check_components(d, table, idx)
    _check_intersections(d, idx)
    _check_euler(d, table)


def _check_components(d, table, idx):
    seen = {}
    edges = d.edge_by_id()
    for ci, comp in enumerate(d.components):
        if not comp:
            raise _Fail("PARSE_ERROR", "components", "empty component")
        for eid, _ in comp:
            if eid not in edges:
                raise _Fail("PARSE_ERROR", "components", f"unknown edge {eid}")
            if eid in seen:
                raise _Fail("PARSE_ERROR", "each edge in one component", f"edge {eid} used twice")
            seen[eid] = ci
        for (e1, f1), (e2, f2) in zip(comp, comp[1:] + comp[:1]):
            a, b = edges[e1], edges[e2]
            if not a.ends or not b.ends:
                if len(comp) != 1:
                    raise _Fail("PARSE_ERROR", "components", "free loop inside a longer component")
                continue
            arrive = a.ends[1] if f1 else a.ends[0]
            leave = b.ends[0] if f2 else b.ends[1]
            if arrive[0] != leave[0] or (arrive[1] - leave[1]) % 4 != 2:
                raise _Fail("PARSE_ERROR", "components are oriented edge cycles",
                            f"edges {e1} and {e2} do not continue through a crossing")
    if len(seen) != len(d.edges):
        raise _Fail("PARSE_ERROR", "each edge in one component", "edge missing from components")


def _check_intersections(d, idx):
    pos = [c.position for c in d.crossings]
    segs = []  # (edge, segment index, a, b)
    for e in d.edges:
        for s, (a, b) in enumerate(zip(e.path, e.path[1:])):
            segs.append((e, s, a, b))
    boxes = [geo.bbox([a, b]) for _, _, a, b in segs]

    def allowed(si, ti, v, p):
        e, s, a, b = segs[si]
        f, t, c, dd = segs[ti]
        last_e, last_f = len(e.path) - 2, len(f.path) - 2
        if e is f:
            if v == (0, 0) and abs(s - t) == 1 and p == e.path[max(s, t)]:
                return True
            if not e.ends:
                w = tuple(e.winding)
                if s == last_e and t == 0 and v == w and p == e.path[-1]:
                    return True
                if s == 0 and t == last_e and v == (-w[0], -w[1]) and p == e.path[0]:
                    return True
        # contact at a crossing through the end segments of attached edges
        red = geo.reduce_mod1(p)
        for ci, cp in enumerate(pos):
            if red == cp:
                def at_end(edge, k, point):
                    if not edge.ends:
                        return False
                    if k == 0 and point == edge.path[0] and idx[edge.ends[0][0]] == ci:
                        return True
                    last = len(edge.path) - 2
                    return k == last and point == edge.path[-1] and idx[edge.ends[1][0]] == ci
                q = geo.vsub(p, v)
                return at_end(e, s, p) and at_end(f, t, q)
        return False

    torus = d.genus == 1
    for i in range(len(segs)):
        for j in range(i, len(segs)):
            vs = geo.translations_between(boxes[i], boxes[j]) if torus else [(0, 0)]
            for v in vs:
                if i == j and v <= (0, 0):
                    continue
                if not torus and v != (0, 0):
                    continue
                _, _, a, b = segs[i]
                _, _, c, dd = segs[j]
                c2, d2 = geo.vadd(c, v), geo.vadd(dd, v)
                hit = geo.segment_intersection(a, b, c2, d2)
                if hit is None:
                    continue
                if hit[0] == "overlap":
                    raise _Fail("SELF_INTERSECTION", "disjoint paths",
                                f"edges {segs[i][0].id} and {segs[j][0].id} overlap")
                if not allowed(i, j, v, hit[1]):
                    raise _Fail("SELF_INTERSECTION", "disjoint paths",
                                f"edges {segs[i][0].id} and {segs[j][0].id} meet away from a crossing")


def _check_euler(d, table):
    # faces of the rotation system: from the end of a dart turn to the next
    # port clockwise (the face on the left of the dart)
    idx = d.crossing_index()
    n = d.n
    darts = {}
    for e in d.edges:
        if not e.ends:
            continue
        (c0, k0), (c1, k1) = e.ends
        w = tuple(e.winding)
        darts[(idx[c0], k0)] = ((idx[c1], k1), w)
        darts[(idx[c1], k1)] = ((idx[c0], k0), (-w[0], -w[1]))
    # connected components of the crossing graph
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c, _), ((c2, _), _) in darts.items():
        parent[find(c)] = find(c2)
    comps = {}
    for c in range(n):
        comps.setdefault(find(c), []).append(c)
    seen = set()
    face_data = {}
    for start in darts:
        if start in seen:
            continue
        cur = start
        a = b = 0
        while cur not in seen:
            seen.add(cur)
            (c2, k2), w = darts[cur]
            a += w[0]
            b += w[1]
            cur = (c2, (k2 - 1) % 4)
        face_data.setdefault(find(start[0]), []).append((a, b))
    for root, members in comps.items():
        V = len(members)
        E = 2 * V
        faces = face_data.get(root, [])
        chi = V - E + len(faces)
        if chi % 2:
            raise _Fail("EULER_MISMATCH", "V - E + F = 2 - 2g", "odd Euler characteristic")
        h = (2 - chi) // 2
        if h > d.genus:
            raise _Fail("EULER_MISMATCH", "V - E + F = 2 - 2g",
                        f"component needs genus {h} > {d.genus}")
        if h == 1 and any(f != (0, 0) for f in faces):
            raise _Fail("EULER_MISMATCH", "V - E + F = 2 - 2g",
                        "a face of a filling component has nonzero boundary class")
        if h == 0 and d.genus == 1:
            nz = [f for f in faces if f != (0, 0)]
            if any(geo.cross(nz[0], f) != 0 for f in nz):
                raise _Fail("EULER_MISMATCH", "V - E + F = 2 - 2g",
                            "planar component carries two independent classes")


# ----------------------------------------------------------------------------
# resolutions


@dataclass(frozen=True)
class ResolvedCircle:
    polygon: tuple  # closed PL curve in the universal cover (last point not repeated)
    cls: tuple
    circle: object  # the portgraph.Circle

    @property
    def contractible(self):
        return self.cls == TRIVIAL


@dataclass(frozen=True)
class ResolvedArc:
    crossing: int  # crossing index
    ends: tuple  # ((circle index, position on circle), (circle index, position))
    sides: tuple  # 'L' / 'R' relative to the circle traversal direction
    cls: object  # normalized class, or None when undefined


@dataclass(frozen=True)
class ResolutionState:
    diagram: RealizedDiagram
    u: tuple
    graph: PortGraph
    circles: tuple
    arcs: tuple

    @property
    def index(self):
        return len(self.arcs)


_CUT = Fraction(1, 64)


def _arm_point(c, nxt):
    return (c[0] + _CUT * (nxt[0] - c[0]), c[1] + _CUT * (nxt[1] - c[1]))


def _polygon(d, graph, circle, ends):
    """Lifted closed polygon of a resolved circle with crossing corners cut."""
    if not circle.steps:
        name = next(iter(circle.key))[1]
        e = d.edge_by_id()[name]
        return tuple(e.path[:-1])
    cur = None
    paths = []
    for p, _ in circle.steps:
        e, j = ends[node_of(p), slot_of(p)]
        path = list(e.path) if j == 0 else list(reversed(e.path))
        if cur is None:
            cur = path[0]
        shift = geo.vsub(cur, path[0])
        path = [geo.vadd(x, shift) for x in path]
        paths.append(path)
        cur = path[-1]
    pts = []
    for i, path in enumerate(paths):
        c = path[0]
        da = geo.vsub(paths[i - 1][-2], c)
        db = geo.vsub(path[1], c)
        p_in = circle.steps[i - 1][1]
        p_out = circle.steps[i][0]
        v = node_of(p_in)
        others = [_leaving_direction(*ends[v, k]) for k in range(4)
                  if k not in (slot_of(p_in), slot_of(p_out))]
        pts.append(_arm_point(c, geo.vadd(c, da)))
        mid = _reflex_midpoint(da, db, others)
        if mid is not None:
            pts.append((c[0] + _CUT * mid[0], c[1] + _CUT * mid[1]))
        pts.append(_arm_point(c, path[1]))
        pts.extend(path[1:-1])
    return tuple(pts)


def _strictly_between(a, o, b):
    # o strictly inside the convex sector swept counterclockwise from a to b
    return geo.cross(a, o) > 0 and geo.cross(o, b) > 0


def _reflex_midpoint(da, db, others):
    """Extra corner point when the arm-free sector between da and db is not
    convex, else None."""
    c = geo.cross(da, db)
    if c > 0:
        blocked = any(_strictly_between(da, o, db) for o in others)
    elif c < 0:
        blocked = any(_strictly_between(db, o, da) for o in others)
    else:
        # opposite arms: go round on the side without the other arms
        perp = (-da[1], da[0])
        if any(geo.cross(da, o) > 0 for o in others):
            perp = (da[1], -da[0])
        return perp
    if not blocked:
        return None
    return (-(da[0] + db[0]), -(da[1] + db[1]))


def resolve(d, u):
    u = tuple(int(x) for x in u)
    if len(u) != d.n or any(x not in (0, 1) for x in u):
        raise TorkhError("LENGTH_MISMATCH", f"state has length {len(u)}, diagram has {d.n} crossings")
    graph = port_graph(d)
    ends = _segment_edges(d)
    circs = graph.circles(u)
    rcs = tuple(ResolvedCircle(_polygon(d, graph, c, ends), c.cls, c) for c in circs)
    arcs = []
    for i in range(d.n):
        if u[i]:
            continue
        ps = arc_passages(circs, i)
        ends_ = tuple((ci, pos) for ci, pos, _, _, _ in ps)
        sides = tuple(side for _, _, side, _, _ in ps)
        arcs.append(ResolvedArc(i, ends_, sides, _arc_class_or_none(graph, circs, i)))
    return ResolutionState(d, u, graph, rcs, tuple(arcs))


def _arc_class_or_none(graph, circs, node):
    ps = arc_passages(circs, node)
    if any(not circs[ci].contractible for ci, *_ in ps):
        return None
    loop = arc_loop_class(graph, circs, node)
    return normalize(loop) if loop is not None else TRIVIAL


@dataclass(frozen=True)
class SideDecomposition:
    circle: int
    inner: tuple  # crossing indices of arcs lying in the disk
    outer: tuple
    ccw: bool  # True when the traversal direction is the disk boundary orientation


def _inside_lift(point, polygon):
    box = geo.bbox(polygon)
    pbox = (point[0], point[1], point[0], point[1])
    for v in geo.translations_between(box, pbox):
        if geo.point_in_polygon(geo.vadd(point, v), polygon):
            return True
    return False


def circle_side_decomposition(state, circle):
    rc = state.circles[circle]
    if not rc.contractible:
        raise TorkhError("NOT_CONTRACTIBLE", f"circle {circle} has class {rc.cls}")
    pos = [c.position for c in state.diagram.crossings]
    inner, outer = [], []
    for arc in state.arcs:
        if all(ci != circle for ci, _ in arc.ends):
            continue
        if state.diagram.genus == 1:
            inside = _inside_lift(pos[arc.crossing], rc.polygon)
        else:
            inside = geo.point_in_polygon(pos[arc.crossing], rc.polygon)
        (inner if inside else outer).append(arc.crossing)
    ccw = geo.signed_area2(rc.polygon) > 0
    return SideDecomposition(circle, tuple(inner), tuple(outer), ccw)


def arc_class(state, crossing):
    """Normalized class of the loop made of the arc at ``crossing`` and a path
    along its circle.  An arc joining two distinct circles gives no loop and
    is reported as the trivial class."""
    arc = next((a for a in state.arcs if a.crossing == crossing), None)
    if arc is None:
        raise TorkhError("MALFORMED", f"crossing {crossing} is 1-resolved, no arc")
    for ci, _ in arc.ends:
        if not state.circles[ci].contractible:
            raise TorkhError("NONCONTRACTIBLE_ANCHOR", f"arc {crossing} touches a non-contractible circle")
    return arc.cls


def component_classes(d):
    edges = d.edge_by_id()
    out = []
    for comp in d.components:
        a = b = 0
        for eid, fw in comp:
            w = edges[eid].winding
            s = 1 if fw else -1
            a += s * w.a
            b += s * w.b
        out.append((a, b))
    return out
