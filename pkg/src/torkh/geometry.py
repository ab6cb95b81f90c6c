"""Exact planar predicates on rational points (fractions.Fraction)."""

from fractions import Fraction
from functools import cmp_to_key
from math import floor


def F(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def pt(x, y):
    return (F(x), F(y))


def vsub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def vadd(p, q):
    return (p[0] + q[0], p[1] + q[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def orient(a, b, c):
    """Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear)."""
    d = cross(vsub(b, a), vsub(c, a))
    return (d > 0) - (d < 0)


def _on_segment(p, a, b):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_intersection(a, b, c, d):
    """Intersection of closed segments ab and cd.

    Returns None, ("point", P) or ("overlap", None) for collinear segments
    sharing more than one point.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == o2 == 0:
        # collinear: project on the dominant axis
        ax = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[ax], b[ax]))
        lo2, hi2 = sorted((c[ax], d[ax]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return None
        if lo == hi:
            for p in (a, b):
                if p[ax] == lo and _on_segment(p, c, d):
                    return ("point", p)
            for p in (c, d):
                if p[ax] == lo:
                    return ("point", p)
        return ("overlap", None)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    # proper or touching intersection: solve a + t (b - a) = c + s (d - c)
    r = vsub(b, a)
    s = vsub(d, c)
    t = cross(vsub(c, a), s) / cross(r, s)
    return ("point", (a[0] + t * r[0], a[1] + t * r[1]))


def param_on(a, b, p):
    """Parameter t with p = a + t (b - a) (p assumed on the line)."""
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])


def signed_area2(poly):
    """Twice the signed area of a closed polygon (last vertex not repeated)."""
    s = Fraction(0)
    n = len(poly)
    for i in range(n):
        s += cross(poly[i], poly[(i + 1) % n])
    return s


def point_in_polygon(p, poly):
    """Strict interior test by crossing number.  Points on the boundary are
    reported as a ValueError since no caller should ever produce them."""
    inside = False
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if orient(a, b, p) == 0 and _on_segment(p, a, b):
            raise ValueError("point on polygon boundary")
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def _half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u, v):
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def ccw_order(vectors):
    """Indices of nonzero vectors sorted by angle, starting from angle 0."""
    idx = list(range(len(vectors)))
    return sorted(idx, key=cmp_to_key(lambda i, j: _angle_cmp(vectors[i], vectors[j])))


def is_ccw_cyclic(vectors):
    """True when vectors[0], vectors[1], ... are in strictly counterclockwise
    cyclic order with distinct directions."""
    order = ccw_order(vectors)
    n = len(order)
    for i in range(n):
        if _angle_cmp(vectors[order[i]], vectors[order[(i + 1) % n]]) == 0:
            return False
    k = order.index(0)
    rot = order[k:] + order[:k]
    return rot == list(range(n))


def floor_vec(p):
    return (floor(p[0]), floor(p[1]))


def reduce_mod1(p):
    f = floor_vec(p)
    return (p[0] - f[0], p[1] - f[1])


def bbox(points):
    xs = [q[0] for q in points]
    ys = [q[1] for q in points]
    return (min(xs), min(ys), max(xs), max(ys))


def translations_between(box1, box2):
    """Integer vectors v such that box2 + v meets box1."""
    from math import ceil
    x0 = ceil(box1[0] - box2[2])
    x1 = floor(box1[2] - box2[0])
    y0 = ceil(box1[1] - box2[3])
    y1 = floor(box1[3] - box2[1])
    return [(i, j) for i in range(x0, x1 + 1) for j in range(y0, y1 + 1)]
