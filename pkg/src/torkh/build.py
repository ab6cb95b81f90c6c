"""Build RealizedDiagrams from closed PL curves drawn on the torus.

A curve is ``(points, cls)``: the lift visits points[0], ..., points[-1] and
closes up at points[0] + cls.  All intersections are found exactly; they
must be transverse double points away from polyline vertices.
"""

from fractions import Fraction

from . import geometry as geo
from .errors import TorkhError
from .torus_diagram import Crossing, Edge, RealizedDiagram, WindingVector


def _pts(points):
    return [geo.pt(*p) for p in points]


def curve(points, cls=(0, 0)):
    return (_pts(points), (int(cls[0]), int(cls[1])))


def _segments(c):
    pts, w = c
    m = len(pts)
    out = []
    for i in range(m):
        a = pts[i]
        b = pts[i + 1] if i + 1 < m else geo.vadd(pts[0], w)
        out.append((a, b))
    return out


def _point_at(c, i, t):
    segs = _segments(c)
    a, b = segs[i]
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def find_crossings(curves, genus=1):
    """List of ((curve, seg, t), (curve, seg, t), torus point)."""
    allsegs = []
    for ci, c in enumerate(curves):
        for si, (a, b) in enumerate(_segments(c)):
            allsegs.append((ci, si, a, b))
    boxes = [geo.bbox([a, b]) for _, _, a, b in allsegs]
    found = []
    for x in range(len(allsegs)):
        for y in range(x, len(allsegs)):
            ci, si, a, b = allsegs[x]
            cj, sj, c, d = allsegs[y]
            vs = geo.translations_between(boxes[x], boxes[y]) if genus == 1 else [(0, 0)]
            for v in vs:
                if x == y and v <= (0, 0):
                    continue
                c2, d2 = geo.vadd(c, v), geo.vadd(d, v)
                hit = geo.segment_intersection(a, b, c2, d2)
                if hit is None:
                    continue
                if hit[0] == "overlap":
                    raise TorkhError("SELF_INTERSECTION", "overlapping curve segments")
                p = hit[1]
                if ci == cj:
                    nseg = len(curves[ci][0])
                    w = curves[ci][1]
                    if v == (0, 0) and (sj - si) == 1 and p == b:
                        continue
                    if si == 0 and sj == nseg - 1 and v == (-w[0], -w[1]) and p == a:
                        continue
                    if x == y and nseg == 1 and ((v == w and p == b) or
                                                 (v == (-w[0], -w[1]) and p == a)):
                        continue
                t1 = geo.param_on(a, b, p)
                t2 = geo.param_on(c2, d2, p)
                if t1 in (0, 1) or t2 in (0, 1):
                    raise TorkhError("SELF_INTERSECTION", f"intersection at a vertex {p}")
                if geo.cross(geo.vsub(b, a), geo.vsub(d, c)) == 0:
                    raise TorkhError("SELF_INTERSECTION", "tangential contact")
                found.append(((ci, si, t1), (cj, sj, t2), geo.reduce_mod1(p)))
    pts = [f[2] for f in found]
    if len(set(pts)) != len(pts):
        raise TorkhError("SELF_INTERSECTION", "triple point")
    return found


def build_diagram(curves, over=None, genus=1):
    """Diagram from closed curves.

    ``over`` decides over/under: a sequence with one entry per crossing in
    crossing order, 0 meaning the strand met first (walking curve 0, then
    curve 1, ...) is the overstrand and 1 the other one.  It may also be a
    callable ``over(k, first_location, second_location)`` returning 0 or 1,
    locations being ``(curve, segment, t)``.  Default: first strand over.
    """
    if genus == 0:
        for _, w in curves:
            if w != (0, 0):
                raise TorkhError("WINDING_MISMATCH", "planar curves must close up")
    found = find_crossings(curves, genus)
    # locations along each curve, sorted
    locs = {ci: [] for ci in range(len(curves))}
    for k, (l1, l2, p) in enumerate(found):
        locs[l1[0]].append(((l1[1], l1[2]), k))
        locs[l2[0]].append(((l2[1], l2[2]), k))
    for ci in locs:
        locs[ci].sort()
    # crossing order: first encounter
    order = []
    for ci in range(len(curves)):
        for _, k in locs[ci]:
            if k not in order:
                order.append(k)
    new_id = {k: i for i, k in enumerate(order)}
    positions = [found[k][2] for k in order]
    # which location of each crossing is met first
    first_loc = {}
    for ci in range(len(curves)):
        for (si, t), k in locs[ci]:
            first_loc.setdefault(k, (ci, si, t))
    over_loc = {}
    for k in order:
        l1, l2, _ = found[k]
        a = first_loc[k]
        b = l2 if (l1[0], l1[1], l1[2]) == a else l1
        i = new_id[k]
        if over is None:
            choice = 0
        elif callable(over):
            choice = over(i, a, b)
        else:
            choice = over[i]
        over_loc[k] = a if choice == 0 else (b[0], b[1], b[2])

    edges = []
    components = []
    # strand data per crossing: loc -> {'in': (edge, dir), 'out': (edge, dir)}
    strand = {k: {} for k in order}
    eid = 0
    for ci, c in enumerate(curves):
        pts, w = c
        segs = _segments(c)
        lst = locs[ci]
        if not lst:
            base = geo.floor_vec(pts[0])
            path = [geo.vsub(p, base) for p in pts] + [geo.vsub(geo.vadd(pts[0], w), base)]
            edges.append(Edge(eid, (), tuple(path), WindingVector(*w)))
            components.append(((eid, True),))
            eid += 1
            continue
        comp = []
        m = len(lst)
        for r in range(m):
            (si, ti), k = lst[r]
            (sj, tj), k2 = lst[(r + 1) % m]
            start = _point_at(c, si, ti)
            path = [start]
            wrap = r + 1 == m
            n_seg = len(segs)
            g_end = sj + (n_seg if wrap else 0)
            for g in range(si, g_end):
                lap, idx = divmod(g + 1, n_seg)
                path.append(geo.vadd(pts[idx], (lap * w[0], lap * w[1])))
            shift = w if wrap else (0, 0)
            end = geo.vadd(_point_at(c, sj, tj), shift)
            path.append(end)
            base = geo.floor_vec(start)
            path = [geo.vsub(p, base) for p in path]
            endpos = positions[new_id[k2]]
            off = geo.vsub(path[-1], endpos)
            wv = WindingVector(int(off[0]), int(off[1]))
            d_out = geo.vsub(path[1], path[0])
            d_in = geo.vsub(path[-2], path[-1])
            strand[k].setdefault((ci, si, ti), {})["out"] = (eid, d_out)
            strand[k2].setdefault((ci, sj, tj), {})["in"] = (eid, d_in)
            edges.append(Edge(eid, None, tuple(path), wv))
            comp.append((eid, True))
            eid += 1
        components.append(tuple(comp))

    # ports
    ends = {}
    for k in order:
        i = new_id[k]
        ov = over_loc[k]
        sl = list(strand[k].items())
        under = [s for s in sl if s[0] != ov][0][1]
        top = [s for s in sl if s[0] == ov][0][1]
        arms = [under["out"], top["out"], under["in"], top["in"]]
        dirs = [a[1] for a in arms]
        cyc = geo.ccw_order(dirs)
        j = cyc.index(0)
        cyc = cyc[j:] + cyc[:j]
        if cyc[2] != 2:
            raise TorkhError("SELF_INTERSECTION", "strands do not cross transversally")
        for portno, arm in enumerate(cyc):
            e_id = arms[arm][0]
            which = 0 if arm in (0, 1) else 1
            ends.setdefault(e_id, [None, None])[which] = (i, portno)
    final_edges = []
    for e in edges:
        if e.ends is None:
            final_edges.append(Edge(e.id, tuple(ends[e.id]), e.path, e.winding))
        else:
            final_edges.append(e)
    crossings = tuple(Crossing(i, positions[i]) for i in range(len(order)))
    return RealizedDiagram(genus, crossings, tuple(final_edges), tuple(components))


def insert_kink(c, seg, size=Fraction(1, 40), side=1, where=Fraction(1, 2)):
    """Curve with a small curl inserted into segment ``seg``.

    The curl crosses itself once.  ``side`` (+1/-1) picks the side of the
    segment on which the loop bulges; the over/under choice at the new
    crossing is made when building the diagram.
    """
    pts, w = c
    segs = _segments(c)
    a, b = segs[seg]
    d = geo.vsub(b, a)
    nrm = (-d[1] * side, d[0] * side)
    length_scale = size
    f = Fraction(where)
    h = length_scale

    def at(s, k):
        return (a[0] + s * d[0] + k * nrm[0], a[1] + s * d[1] + k * nrm[1])

    # self crossing at parameter f
    curl = [at(f - h, 0), at(f + h, h), at(f, 2 * h), at(f - h, h), at(f + h, 0)]
    new = list(pts[:seg + 1]) + curl + list(pts[seg + 1:])
    return (new, w)
