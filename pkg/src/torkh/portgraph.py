"""Four-valent port graphs: the combinatorial skeleton shared by link
diagrams and abstract resolution configurations.

Every node (a crossing, or an arc of an abstract configuration) has four
ports 0..3 in counterclockwise order.  External segments pair the ports up
and carry a winding vector in Z^2.  A node in state 0 joins ports (1,2) and
(3,0); in state 1 it joins (0,1) and (2,3).  Resolved circles are the cycles
obtained by alternating external segments with these internal joins.

When a circle passes a state-0 node from port k to port k+1 (mod 4) the
node's arc lies on its left, otherwise on its right.

Nodes may carry an arc displacement ``w``: the winding picked up along the
arc from its port-{1,2} side to its port-{0,3} side.  For crossings of a
diagram the arc has zero length and ``w = (0, 0)``.
"""

from dataclasses import dataclass, field

from .classes import TRIVIAL, normalize

_JOIN = (
    {1: 2, 2: 1, 3: 0, 0: 3},  # state 0
    {0: 1, 1: 0, 2: 3, 3: 2},  # state 1
)


def port(node, k):
    return 4 * node + k


def node_of(p):
    return p >> 2


def slot_of(p):
    return p & 3


@dataclass(frozen=True)
class Circle:
    """One resolved circle.

    ``steps`` lists the external segments in traversal order as
    (exit port, entry port) pairs.  ``key`` identifies the circle
    independently of the starting point and direction, so it can be
    compared across resolutions.
    """

    steps: tuple
    cls: tuple
    key: frozenset

    @property
    def contractible(self):
        return self.cls == TRIVIAL

    def nodes(self):
        return {node_of(q) for _, q in self.steps}

    def passages(self):
        """(node, entry port, exit port, position) for each node passage."""
        n = len(self.steps)
        out = []
        for i, (_, q) in enumerate(self.steps):
            r = self.steps[(i + 1) % n][0]
            out.append((node_of(q), slot_of(q), slot_of(r), i))
        return out


def _internal_winding(w, k, l):
    # winding of the state-1 join from port k to port l
    if (k, l) in ((2, 3), (1, 0)):
        return w
    if (k, l) in ((3, 2), (0, 1)):
        return (-w[0], -w[1])
    return TRIVIAL


@dataclass(frozen=True)
class PortGraph:
    """Immutable port graph.

    ``seg[p] = (q, w)`` means the external segment leaving port p arrives at
    port q with winding w; then ``seg[q] = (p, -w)``.  ``free`` holds the
    classes of circles that meet no node.
    """

    n: int
    seg: tuple
    node_w: tuple = ()
    free: tuple = ()
    free_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.node_w:
            object.__setattr__(self, "node_w", tuple(TRIVIAL for _ in range(self.n)))
        if len(self.free_names) != len(self.free):
            object.__setattr__(self, "free_names", tuple(range(len(self.free))))

    @staticmethod
    def segment_id(p, q):
        return (p, q) if p <= q else (q, p)

    def circles(self, bits):
        """Resolved circles for a state vector ``bits`` (length n)."""
        seen = [False] * (4 * self.n)
        result = []
        for start in range(4 * self.n):
            if seen[start]:
                continue
            steps = []
            a, b = 0, 0
            p = start
            while True:
                seen[p] = True
                q, w = self.seg[p]
                seen[q] = True
                steps.append((p, q))
                a += w[0]
                b += w[1]
                v, k = node_of(q), slot_of(q)
                l = _JOIN[bits[v]][k]
                if bits[v]:
                    iw = _internal_winding(self.node_w[v], k, l)
                    a += iw[0]
                    b += iw[1]
                p = port(v, l)
                if p == start:
                    break
            key = frozenset(self.segment_id(s, t) for s, t in steps)
            result.append(Circle(tuple(steps), (a, b), key))
        for i, c in enumerate(self.free):
            result.append(Circle((), tuple(c), frozenset({("free", self.free_names[i])})))
        return result

    def segment_winding(self, p):
        return self.seg[p][1]


def circle_count(graph, bits):
    return len(graph.circles(bits))


def normalized_classes(circles):
    return [normalize(c.cls) for c in circles]


def arc_passages(circles, node):
    """The two passages of a state-0 node: list of (circle index, position,
    side) with side 'L' or 'R' relative to the traversal direction."""
    found = []
    for ci, c in enumerate(circles):
        for v, k, l, pos in c.passages():
            if v == node:
                side = "L" if l == (k + 1) % 4 else "R"
                found.append((ci, pos, side, k, l))
    return found


def winding_between(graph, circle, i, j):
    """Winding along ``circle`` from the passage at position i to the one at
    position j, following the traversal direction.

    Position m is the node entered by step m.  The walk takes steps i+1..j
    and the internal joins of the passages strictly in between.
    """
    steps = circle.steps
    n = len(steps)
    a = b = 0
    m = i
    while True:
        m = (m + 1) % n
        w = graph.seg[steps[m][0]][1]
        a += w[0]
        b += w[1]
        if m == j % n:
            break
        k, l = slot_of(steps[m][1]), slot_of(steps[(m + 1) % n][0])
        iw = _internal_winding(graph.node_w[node_of(steps[m][1])], k, l)
        a += iw[0]
        b += iw[1]
    return (a, b)


def arc_loop_class(graph, circles, node):
    """Class of the loop running along the circle from one end of the arc to
    the other and back along the arc; None if the arc joins two circles."""
    ps = arc_passages(circles, node)
    (c1, i, _, k1, _), (c2, j, _, _, _) = ps
    if c1 != c2:
        return None
    w = graph.node_w[node]
    along = winding_between(graph, circles[c1], i, j)
    # leaving from the port-{1,2} strand the arc returns with -w
    if k1 in (1, 2):
        return (along[0] - w[0], along[1] - w[1])
    return (along[0] + w[0], along[1] + w[1])
