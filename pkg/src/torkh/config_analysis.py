"""Decorated resolution configurations: surgery, posets and multiplicities.

A configuration is stored as a port graph whose nodes are exactly its arcs,
all in state 0.  Surgery along a subset A' flips those nodes to state 1;
the circles of s_{A'}(D) are the cycles of the graph, and their homology
classes come from the segment and arc windings.
"""

import json
from dataclasses import dataclass
from itertools import product

from .classes import TRIVIAL, Grading, det, normalize
from .errors import TorkhError
from .portgraph import (PortGraph, arc_loop_class, arc_passages, node_of, port, slot_of,
                        winding_between)


# ----------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class AbstractConfiguration:
    """Circles and arcs, with every node of ``graph`` an arc.

    ``disk_ports`` holds exit ports whose segment runs along a contractible
    circle with the disk it bounds on the left; it is empty when the
    configuration carries no geometry.
    """

    graph: PortGraph
    genus: int = 1
    names: tuple = ()
    disk_ports: frozenset = frozenset()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"a{i + 1}" for i in range(self.graph.n)))

    @property
    def index(self):
        return self.graph.n

    def bits(self, subset):
        s = set(subset)
        return tuple(1 if i in s else 0 for i in range(self.graph.n))

    def circles(self, subset=()):
        return self.graph.circles(self.bits(subset))

    def full(self):
        return frozenset(range(self.graph.n))

    def disk_on_left(self, circle):
        """True/False when the disk side of a traced circle is known, else None."""
        if not circle.steps:
            return None
        p, q = circle.steps[0]
        if p in self.disk_ports:
            return True
        if q in self.disk_ports:
            return False
        return None


@dataclass(frozen=True)
class DecoratedConfiguration:
    config: AbstractConfiguration
    y: tuple  # labels of config.circles(())
    x: tuple  # labels of config.circles(full)

    @property
    def index(self):
        return self.config.index


def compact(graph, bits, arcs, genus=1, names=None, drop_free=False, disk_ports=frozenset()):
    """Arc-only configuration of the resolution ``bits`` of ``graph`` whose
    arcs are the listed nodes (each at state 0 in ``bits``).

    Returns ``(config, origin)``; ``origin`` sends every port of the new
    graph to the id of an original segment inside the stretch of circle it
    replaces, which is how labels are carried across.
    """
    arcs = list(arcs)
    new_of = {v: i for i, v in enumerate(arcs)}
    seg = [None] * (4 * len(arcs))
    free, free_names, origin, disk = [], [], {}, set()
    for c in graph.circles(bits):
        ps = [(v, k, l, pos) for v, k, l, pos in c.passages() if v in new_of]
        if not ps:
            if not drop_free:
                free.append(c.cls)
                free_names.append(c.key)
            continue
        for t, (v, _, l, i) in enumerate(ps):
            v2, k2, _, j = ps[(t + 1) % len(ps)]
            w = winding_between(graph, c, i, j)
            p, q = port(new_of[v], l), port(new_of[v2], k2)
            seg[p] = (q, w)
            seg[q] = (p, (-w[0], -w[1]))
            first = c.steps[(i + 1) % len(c.steps)]
            origin[p] = origin[q] = PortGraph.segment_id(*first)
            if first[0] in disk_ports:
                disk.add(p)
            elif first[1] in disk_ports:
                disk.add(q)
    node_w = tuple(graph.node_w[v] for v in arcs)
    g = PortGraph(len(arcs), tuple(seg), node_w, tuple(free), tuple(free_names))
    names = tuple(names) if names is not None else ()
    return AbstractConfiguration(g, genus, names, frozenset(disk)), origin


def transfer_labels(old_circles, old_labels, new_circles, origin):
    """Labels of ``new_circles`` read off the original circles they came from.

    Traced circles are matched through ``origin``; circles meeting no arc
    were stored under the key of the original circle.
    """
    where = {}
    for ci, c in enumerate(old_circles):
        where[c.key] = ci
        for s, t in c.steps:
            where[PortGraph.segment_id(s, t)] = ci
    out = []
    for c in new_circles:
        if c.steps:
            ci = where[origin[c.steps[0][0]]]
        else:
            (tag,) = c.key
            ci = where[tag[1]] if tag[1] in where else where[c.key]
        out.append(old_labels[ci])
    return tuple(out)


def surgery(config, subset):
    """s_{A'}(D) with the remaining arcs re-anchored, as a new configuration."""
    subset = frozenset(subset)
    rest = [a for a in range(config.index) if a not in subset]
    new, _ = compact(config.graph, config.bits(subset), rest, config.genus,
                     [config.names[a] for a in rest])
    return new


def _surgered_dec(dec, subset, z):
    """Decorated configuration (s_subset(D), z, x) on the remaining arcs."""
    config = dec.config
    subset = frozenset(subset)
    rest = [a for a in range(config.index) if a not in subset]
    new, origin = compact(config.graph, config.bits(subset), rest, config.genus,
                          [config.names[a] for a in rest])
    y2 = transfer_labels(config.circles(subset), z, new.circles(()), origin)
    x2 = transfer_labels(config.circles(config.full()), dec.x, new.circles(new.full()), origin)
    return DecoratedConfiguration(new, y2, x2)


def with_duals(config, subset):
    """s_subset(D) keeping every arc: the surgered ones become their duals.

    Ports of the surgered nodes are rotated by one step so that their
    state-1 joins become state-0 joins, and their displacements are pushed
    onto the adjacent segments.  Returns the configuration and the origin
    map (new port -> original segment id) used to carry labels.
    """
    g = config.graph
    subset = frozenset(subset)

    def rot(p):
        v = node_of(p)
        return port(v, (slot_of(p) + 3) % 4) if v in subset else p

    def phi(p):
        v = node_of(p)
        return g.node_w[v] if v in subset and slot_of(p) in (0, 3) else TRIVIAL

    seg = [None] * (4 * g.n)
    origin = {}
    for p in range(4 * g.n):
        q, w = g.seg[p]
        a, b = phi(p), phi(q)
        seg[rot(p)] = (rot(q), (w[0] + a[0] - b[0], w[1] + a[1] - b[1]))
        origin[rot(p)] = PortGraph.segment_id(p, q)
    node_w = tuple(TRIVIAL if v in subset else g.node_w[v] for v in range(g.n))
    ng = PortGraph(g.n, tuple(seg), node_w, g.free, g.free_names)
    disk = frozenset(rot(p) for p in config.disk_ports) if not subset else frozenset()
    return AbstractConfiguration(ng, config.genus, config.names, disk), origin


def dual(dec):
    """The dual decorated configuration: s(D) with the dual arcs, initial
    labeling -x and final labeling -y.  Its poset is the reverse of ours."""
    config = dec.config
    new, origin = with_duals(config, config.full())

    def neg(labels):
        return tuple(-s for s in labels)

    y2 = transfer_labels(config.circles(config.full()), neg(dec.x), new.circles(()), origin)
    x2 = transfer_labels(config.circles(()), neg(dec.y), new.circles(new.full()), origin)
    return DecoratedConfiguration(new, y2, x2)


# ----------------------------------------------------------------------------
# the poset


class _Circles:
    """Circles and normalized classes per surgery subset, cached."""

    def __init__(self, config):
        self.config = config
        self._c = {}

    def __call__(self, subset):
        if subset not in self._c:
            cs = self.config.circles(subset)
            self._c[subset] = (cs, [normalize(c.cls) for c in cs])
        return self._c[subset]


def _up(cc, subset, labels, a):
    cs, cls = cc(subset)
    t = subset | {a}
    cs2, cls2 = cc(t)
    q0 = len(subset) + sum(labels)
    H0 = Grading.of_circles(cls, labels)
    old = {c.key: lab for c, lab in zip(cs, labels)}
    fixed = [old.get(c.key) for c in cs2]
    free = [j for j, lab in enumerate(fixed) if lab is None]
    out = []
    for choice in product((1, -1), repeat=len(free)):
        lab = list(fixed)
        for j, s in zip(free, choice):
            lab[j] = s
        if len(t) + sum(lab) == q0 and Grading.of_circles(cls2, lab) == H0:
            out.append((t, tuple(lab)))
    return out


@dataclass
class Poset:
    """Labeled configurations between (D, y) and (s(D), x).

    Elements are (frozenset of surgered arcs, labels); ``up`` maps each
    element to the elements covering it.  The cube projection is e[0].
    """

    elements: list
    up: dict
    bottom: tuple
    top: tuple
    index: int

    def __len__(self):
        return len(self.elements)

    @property
    def empty(self):
        return not self.elements

    def fibers(self):
        out = {}
        for e in self.elements:
            out.setdefault(e[0], []).append(e)
        return out

    def maximal_chains(self):
        chains = []

        def walk(e, acc):
            if e == self.top:
                chains.append(tuple(acc))
                return
            for f in self.up[e]:
                walk(f, acc + [f])

        if self.elements:
            walk(self.bottom, [self.bottom])
        return chains


def poset(dec):
    config = dec.config
    cc = _Circles(config)
    n = config.index
    if len(dec.y) != len(cc(frozenset())[0]) or len(dec.x) != len(cc(config.full())[0]):
        raise TorkhError("LENGTH_MISMATCH", "labels do not match the circles")
    bottom = (frozenset(), tuple(dec.y))
    top = (config.full(), tuple(dec.x))
    up = {}
    layer = [bottom]
    while layer:
        nxt = []
        for e in layer:
            ups = []
            for a in range(n):
                if a not in e[0]:
                    ups.extend(_up(cc, e[0], e[1], a))
            up[e] = ups
            for f in ups:
                if f not in up and f not in nxt:
                    nxt.append(f)
        layer = nxt
    if top not in up:
        return Poset([], {}, bottom, top, n)
    below = {top}
    for e in sorted(up, key=lambda e: -len(e[0])):
        if any(f in below for f in up[e]):
            below.add(e)
    elements = sorted(below, key=lambda e: (len(e[0]), sorted(e[0]), e[1]))
    return Poset(elements, {e: [f for f in up[e] if f in below] for e in elements},
                 bottom, top, n)


def multiplicity_bruteforce(dec):
    """(mu, fibers): mu is the size of the largest fiber over a cube vertex."""
    fib = poset(dec).fibers()
    return max((len(v) for v in fib.values()), default=0), fib


# ----------------------------------------------------------------------------
# connectivity, leaves and coleaves


def _incidence(config):
    cs = config.circles(())
    return cs, {a: sorted({ci for ci, *_ in arc_passages(cs, a)}) for a in range(config.index)}


def _union_find(n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    return parent, find


def components(config):
    """Arc sets of the connected components, and indices of circles no arc touches."""
    cs, inc = _incidence(config)
    parent, find = _union_find(len(cs))
    for circ in inc.values():
        for c in circ[1:]:
            parent[find(c)] = find(circ[0])
    groups = {}
    for a, circ in inc.items():
        groups.setdefault(find(circ[0]), []).append(a)
    touched = {c for circ in inc.values() for c in circ}
    return sorted(groups.values()), [i for i in range(len(cs)) if i not in touched]


def is_connected(config):
    comps, untouched = components(config)
    return len(comps) == 1 and not untouched


def merging_set(config):
    """Spanning tree of the circle-arc incidence graph, greedy in arc order."""
    cs, inc = _incidence(config)
    parent, find = _union_find(len(cs))
    tree = []
    for a in range(config.index):
        circ = inc[a]
        if len(circ) == 2 and find(circ[0]) != find(circ[1]):
            parent[find(circ[0])] = find(circ[1])
            tree.append(a)
    return tree


def _side(k, l):
    return "L" if l == (k + 1) % 4 else "R"


def leaves_and_coleaves(config):
    """Arcs that are leaves (one end on a circle meeting no other arc) or
    coleaves (surgery cuts off a circle meeting no other arc)."""
    cs = config.circles(())
    sizes = [len(c.steps) for c in cs]
    found = []
    for a in range(config.index):
        (c1, i, s1, _, _), (c2, j, s2, _, _) = arc_passages(cs, a)
        if c1 != c2:
            if sizes[c1] == 1 or sizes[c2] == 1:
                found.append(a)
        elif s1 == s2 and ((j - i) % sizes[c1] == 1 or (i - j) % sizes[c1] == 1):
            found.append(a)
    return found


def reduce_leaf_coleaf(dec):
    """Strip leaves and coleaves one at a time.

    Returns the reduced configuration and the number of arcs stripped; each
    one halves the poset.  The label of the intermediate configuration is
    the unique one allowed by the gradings.
    """
    count = 0
    while True:
        found = leaves_and_coleaves(dec.config)
        if not found:
            return dec, count
        a = found[0]
        fiber = [e for e in poset(dec).elements if e[0] == frozenset({a})]
        if len(fiber) != 1:
            raise TorkhError("AMBIGUOUS_LABEL",
                             f"{len(fiber)} labelings after surgery on {dec.config.names[a]}")
        dec = _surgered_dec(dec, {a}, fiber[0][1])
        count += 1


def restrict(dec, arcs):
    """The decorated configuration on a set of arcs (a union of components);
    circles meeting none of them are dropped."""
    config = dec.config
    arcs = sorted(arcs)
    new, origin = compact(config.graph, config.bits(()), arcs, config.genus,
                          [config.names[a] for a in arcs], drop_free=True,
                          disk_ports=config.disk_ports)
    y = transfer_labels(config.circles(()), dec.y, new.circles(()), origin)
    # segments of D survive in s(D), so origin also locates the final circles
    x = transfer_labels(config.circles(config.full()), dec.x, new.circles(new.full()), origin)
    return DecoratedConfiguration(new, y, x)


def core(dec):
    """Drop circles that no arc touches."""
    return restrict(dec, range(dec.index))


def multiplicity_product(dec):
    """Product of the brute-force multiplicities of the connected components."""
    comps, _ = components(dec.config)
    mu = 1
    for arcs in comps:
        mu *= multiplicity_bruteforce(restrict(dec, arcs))[0]
    return mu


# ----------------------------------------------------------------------------
# interlacement


def gf2_rank(rows):
    """Rank over GF(2) of a 0/1 matrix given as a list of rows."""
    basis = []
    for row in rows:
        v = sum(1 << j for j, x in enumerate(row) if x & 1)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def submatrix(M, rows, cols):
    return [[M[i][j] for j in cols] for i in rows]


def interlacement_from_sequence(seq, arcs):
    """Mod-2 interlacement of chords given by the cyclic order of their ends."""
    pos = {}
    for i, v in enumerate(seq):
        pos.setdefault(v, []).append(i)
    n = len(arcs)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        a1, a2 = pos[arcs[i]]
        for j in range(i + 1, n):
            b1, b2 = pos[arcs[j]]
            if (a1 < b1 < a2) != (a1 < b2 < a2):
                M[i][j] = M[j][i] = 1
    return M


def _single_circle(config, subset):
    touched = [c for c in config.circles(subset) if c.steps]
    if len(touched) != 1:
        raise TorkhError("DISCONNECTED", f"{len(touched)} circles carry arcs, expected 1")
    return touched[0]


def interlacement_matrix(config, subset=()):
    """Interlacement of all arcs on the single circle of s_subset(D), the
    surgered arcs being represented by their duals.  A diagonal entry is 1
    when the two ends of an arc lie on opposite sides of the circle, in
    which case surgery along it alone does not split the circle."""
    circle = _single_circle(config, subset)
    arcs = list(range(config.index))
    M = interlacement_from_sequence([v for v, _, _, _ in circle.passages()], arcs)
    sides = {}
    for v, k, l, _ in circle.passages():
        sides.setdefault(v, set()).add(_side(k, l))
    for v, s in sides.items():
        if len(s) == 2:
            M[v][v] = 1
    return M


def circuit_nullity(M, subset):
    """Predicted circle count after surgery along ``subset`` of a one-circle
    configuration with interlacement matrix M: corank of M on subset, plus 1."""
    s = sorted(subset)
    return len(s) - gf2_rank(submatrix(M, s, s)) + 1


@dataclass(frozen=True)
class ChordSplitting:
    """Arcs of a rank-2 one-circle configuration grouped by their rows of M."""

    a: tuple
    b: tuple
    ab: tuple
    zero: tuple

    def parts(self):
        return (self.a, self.b, self.ab)


def chord_splitting(M):
    """ChordSplitting when rank M = 2, otherwise None."""
    if gf2_rank(M) != 2:
        return None
    rows = [tuple(r) for r in M]
    distinct = []
    for r in rows:
        if any(r) and r not in distinct:
            distinct.append(r)
    ra, rb = distinct[0], distinct[1]
    rab = tuple(x ^ y for x, y in zip(ra, rb))

    def pick(v):
        return tuple(i for i, r in enumerate(rows) if r == v)

    return ChordSplitting(pick(ra), pick(rb), pick(rab), pick(tuple(0 for _ in ra)))


def multiplicity_one_circle(dec, subset):
    """Multiplicity of s_subset(D) for a nonempty one-circle configuration
    with |y| = 1: two exactly when subset meets one of the three parallel
    classes of linked chords."""
    split = chord_splitting(interlacement_matrix(dec.config))
    if split is None:
        return 1
    s = set(subset)
    return 2 if sum(1 for part in split.parts() if s & set(part)) == 1 else 1


def rank_data(dec, subset, hat=None):
    """(rank M_{A'}, rank M0_{A'}) for the merging set ``hat``."""
    config = dec.config
    hat = set(merging_set(config) if hat is None else hat)
    M = interlacement_matrix(config, hat)
    sub = set(subset)
    rows = sorted(sub - hat)
    cols = sorted(set(range(config.index)) - (sub & hat))
    cols0 = sorted(hat - sub)
    return gf2_rank(submatrix(M, rows, cols)), gf2_rank(submatrix(M, rows, cols0))


def multiplicity_rank(dec, subset, hat=None):
    """Multiplicity (1 or 2) of s_subset(D) inside a connected nonempty
    (D, x, y), from mod-2 ranks of the interlacement matrix of s_hat(D)."""
    if not is_connected(dec.config):
        raise TorkhError("DISCONNECTED", "split the configuration into components first")
    if poset(dec).empty:
        raise TorkhError("EMPTY_CONFIGURATION", "the decorated configuration is empty")
    r, r0 = rank_data(dec, subset, hat)
    return 2 if r - r0 == 1 else 1


# ----------------------------------------------------------------------------
# one-circle chord data


@dataclass(frozen=True)
class ChordData:
    """Arcs on the single circle of a configuration.

    ``sides`` gives 'L' or 'R' per arc relative to the traversal ('T' when
    the two ends disagree), ``classes`` the normalized loop classes and
    ``disk_left`` whether the disk lies left of the traversal (None if
    unknown).
    """

    circle: object
    sides: dict
    classes: dict
    disk_left: object

    def inner(self, a):
        if self.disk_left is None or self.sides[a] == "T":
            return None
        return (self.sides[a] == "L") == self.disk_left


def chord_data(config):
    circle = _single_circle(config, ())
    sides = {}
    for v, k, l, _ in circle.passages():
        s = _side(k, l)
        sides[v] = s if sides.get(v, s) == s else "T"
    cs = config.circles(())
    classes = {a: normalize(arc_loop_class(config.graph, cs, a)) for a in range(config.index)}
    return ChordData(circle, sides, classes, config.disk_on_left(circle))


# ----------------------------------------------------------------------------
# index 2 and index 3


@dataclass(frozen=True)
class FaceType:
    kind: str
    classes: tuple = ()

    def __str__(self):
        if not self.classes:
            return self.kind
        inner = ",".join(f"({a},{b})" for a, b in self.classes)
        return f"{self.kind}[{inner}]"

    def to_json(self):
        return {"kind": self.kind, "classes": [list(c) for c in self.classes]}


def classify_index2(dec):
    """EMPTY, SQUARE, L0, L_ALPHA (with alpha) or Q (with the two classes)."""
    if dec.index != 2:
        raise TorkhError("WRONG_INDEX", f"index {dec.index}, expected 2")
    c = core(dec)
    mu, _ = multiplicity_bruteforce(c)
    if mu == 0:
        return FaceType("EMPTY")
    if mu == 1:
        return FaceType("SQUARE")
    data = chord_data(c.config)
    k0, k1 = data.classes[0], data.classes[1]
    if data.sides[0] != data.sides[1]:
        nontrivial = [k for k in (k0, k1) if k != TRIVIAL]
        if not nontrivial:
            return FaceType("L0")
        return FaceType("L_ALPHA", (nontrivial[0],))
    return FaceType("Q", tuple(sorted((k0, k1))))


def _triangle(M):
    return bool(M[0][1] and M[0][2] and M[1][2])


def _path_middle(M):
    for b in range(3):
        a, c = [t for t in range(3) if t != b]
        if M[b][a] and M[b][c] and not M[a][c]:
            return b, (a, c)
    return None


def dq_classes(dec):
    """Sorted class triple when ``dec`` is DQ: one contractible circle with
    three pairwise linked arcs on the same side whose pairwise independent
    classes satisfy beta = alpha + gamma up to signs; else None."""
    config = dec.config
    if config.index != 3:
        return None
    try:
        data = chord_data(config)
    except TorkhError:
        return None
    if not data.circle.contractible or not _triangle(interlacement_matrix(config)):
        return None
    if len({data.sides[a] for a in range(3)}) != 1 or data.sides[0] == "T":
        return None
    ks = [data.classes[a] for a in range(3)]
    if any(det(ks[i], ks[j]) == 0 for i in range(3) for j in range(i + 1, 3)):
        return None
    x, y, z = ks
    if z not in {normalize((x[0] + s * y[0], x[1] + s * y[1])) for s in (1, -1)}:
        return None
    return tuple(sorted(ks))


def dq_prime_classes(dec):
    """Class triple when ``dec`` is DQ': two contractible circles joined by
    three arcs, dual to DQ.  The classes are those of the loops made of two
    of the arcs once the circles are contracted."""
    config = dec.config
    if config.index != 3:
        return None
    cs, inc = _incidence(config)
    if len([c for c in cs if c.steps]) != 2 or any(len(v) != 2 for v in inc.values()):
        return None
    if any(not c.contractible for c in cs if c.steps):
        return None
    if dq_classes(core(dual(dec))) is None:
        return None
    ks = set()
    for a in range(3):
        merged = surgery(config, {a})
        circ = merged.circles(())
        for b in range(2):
            ks.add(normalize(arc_loop_class(merged.graph, circ, b)))
    if len(ks) != 3 or TRIVIAL in ks:
        return None
    return tuple(sorted(ks))


def _one_circle_case(dec):
    """Tag of an irreducible multiplicity-2 index-3 configuration with one
    circle, or None when it has another shape."""
    config = dec.config
    try:
        data = chord_data(config)
    except TorkhError:
        return None
    ks = dq_classes(dec)
    if ks is not None:
        return FaceType("(8)", ks)
    mid = _path_middle(interlacement_matrix(config))
    if mid is None:
        return None
    b, (a, c) = mid
    ka, kb, kc = data.classes[a], data.classes[b], data.classes[c]
    if data.sides[a] != data.sides[c] or "T" in (data.sides[a], data.sides[b]):
        return None
    if data.sides[a] == data.sides[b]:
        return FaceType("(7)", tuple(sorted({ka, kb})))
    if ka == kb == kc == TRIVIAL:
        return FaceType("(1′)" if data.inner(a) is False else "(1)")
    if kb != TRIVIAL and ka == kc == TRIVIAL:
        return FaceType("(3)", (kb,))
    if ka == kc != TRIVIAL and kb == TRIVIAL:
        return FaceType("(4)", (ka,))
    return None


_DUAL_TAG = {"(1)": "(2)", "(1′)": "(2)", "(3)": "(5)", "(4)": "(6)", "(7)": "(9)"}


def _two_circle_variant(dec):
    """The three planar drawings of the two-circle case differ in which disk,
    if any, contains the other circle."""
    config = dec.config
    cs, inc = _incidence(config)
    chords = [a for a, v in inc.items() if len(v) == 1]
    links = [a for a, v in inc.items() if len(v) == 2]
    if len(chords) != 1 or not links:
        return "(2)"
    home = inc[chords[0]][0]
    inner = {}
    for ci, _, side, _, _ in arc_passages(cs, links[0]):
        left = config.disk_on_left(cs[ci])
        if left is None:
            return "(2)"
        inner[ci] = (side == "L") == left
    other = [ci for ci in inner if ci != home][0]
    if inner[home] and not inner[other]:
        return "(2′)"
    if inner[other] and not inner[home]:
        return "(2″)"
    return "(2)"


def classify_index3(dec):
    """Case tag of an index-3 decorated configuration.

    REDUCIBLE when some arc is a leaf or coleaf, EMPTY for an empty poset,
    SIMPLE when every fiber has one element, otherwise one of (1), (1′),
    (2), (2′), (2″), (3)-(7), (8) for DQ, (9), (10) for DQ', or OTHER.
    """
    if dec.index != 3:
        raise TorkhError("WRONG_INDEX", f"index {dec.index}, expected 3")
    c = core(dec)
    if leaves_and_coleaves(c.config):
        return FaceType("REDUCIBLE")
    mu, _ = multiplicity_bruteforce(c)
    if mu == 0:
        return FaceType("EMPTY")
    if mu == 1:
        return FaceType("SIMPLE")
    tag = _one_circle_case(c)
    if tag is not None:
        return tag
    ks = dq_prime_classes(c)
    if ks is not None:
        return FaceType("(10)", ks)
    dtag = _one_circle_case(core(dual(c)))
    if dtag is not None and dtag.kind in _DUAL_TAG:
        kind = _DUAL_TAG[dtag.kind]
        if kind == "(2)":
            kind = _two_circle_variant(c)
        return FaceType(kind, dtag.classes)
    return FaceType("OTHER")


# ----------------------------------------------------------------------------
# configurations from diagrams


def face_configuration(graph, u, v, y, x, genus=1, disk_ports=frozenset()):
    """The decorated configuration D_L(v) - D_L(u) of a cube face.

    ``graph`` is the diagram's port graph, y labels graph.circles(u) and x
    labels graph.circles(v).  Circles no arc touches are kept as free
    circles so that the gradings stay comparable.
    """
    arcs = [i for i in range(graph.n) if u[i] == 0 and v[i] == 1]
    if any(u[i] > v[i] for i in range(graph.n)):
        raise TorkhError("NOT_ADJACENT", "u must lie below v")
    new, origin = compact(graph, tuple(u), arcs, genus, [f"c{i}" for i in arcs],
                          disk_ports=disk_ports)
    y2 = transfer_labels(graph.circles(tuple(u)), y, new.circles(()), origin)
    x2 = transfer_labels(graph.circles(tuple(v)), x, new.circles(new.full()), origin)
    return DecoratedConfiguration(new, y2, x2)


# ----------------------------------------------------------------------------
# synthetic configurations

_LABELS = {"+": 1, "x+": 1, "-": -1, "−": -1, "x-": -1, "x−": -1}


def _label(v):
    if v not in _LABELS:
        raise TorkhError("PARSE_ERROR", f"bad label {v!r}")
    return _LABELS[v]


def _pair(v, what):
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(t, int) for t in v)):
        raise TorkhError("PARSE_ERROR", f"{what} must be a pair of integers")
    return (v[0], v[1])


def configuration_from_json(data):
    """Parse a synthetic configuration.

    Circles list their endpoint slots counterclockwise around the disk they
    bound (when contractible; ``"ccw": false`` marks a listing whose
    direction carries no such meaning); a circle's class sits on the
    segment that closes the listing.  An arc's ``class`` is its displacement from the
    first end to the second; ``side`` (or per-end ``sides``) says whether
    it leaves into the disk ("inner") or not ("outer").  Labels ``y`` are
    keyed by circle id, labels ``x`` by a slot (the final circle through
    the segment leaving that slot) or a free circle id; either may be a
    single "+" or "-" for all circles.

    Returns (config, y, x) with y or x None when absent.
    """
    if not isinstance(data, dict):
        raise TorkhError("PARSE_ERROR", "configuration must be an object")
    try:
        genus = int(data.get("genus", 1))
        circles = list(data["circles"])
        arcs = list(data["arcs"])
        circle_cls = {c["id"]: _pair(c.get("class", [0, 0]), "class") for c in circles}
    except (KeyError, TypeError, ValueError) as exc:
        raise TorkhError("PARSE_ERROR", f"bad configuration: {exc}") from None
    if genus not in (0, 1):
        raise TorkhError("PARSE_ERROR", "genus must be 0 or 1")
    if len(circle_cls) != len(circles):
        raise TorkhError("PARSE_ERROR", "duplicate circle id")

    slot_arc = {}
    for i, a in enumerate(arcs):
        ends = a.get("ends") if isinstance(a, dict) else None
        if not (isinstance(ends, list) and len(ends) == 2 and ends[0] != ends[1]):
            raise TorkhError("PARSE_ERROR", f"arc {i} needs two distinct ends")
        for e, s in enumerate(ends):
            if s in slot_arc:
                raise TorkhError("PARSE_ERROR", f"slot {s} used twice")
            slot_arc[s] = (i, e)
    slot_circle = {}
    for c in circles:
        for s in c.get("slots", []):
            if s not in slot_arc or s in slot_circle:
                raise TorkhError("PARSE_ERROR", f"slot {s} unknown or repeated")
            slot_circle[s] = c["id"]
    if set(slot_circle) != set(slot_arc):
        raise TorkhError("PARSE_ERROR", "every arc end must lie on a circle")
    if genus == 0 and any(v != TRIVIAL for v in circle_cls.values()):
        raise TorkhError("PARSE_ERROR", "planar circles have trivial class")

    def end_inner(i, e):
        a = arcs[i]
        s = a["sides"][e] if "sides" in a else a.get("side", "outer")
        if s not in ("inner", "outer"):
            raise TorkhError("PARSE_ERROR", f"bad side {s!r}")
        return s == "inner"

    node_w = []
    for i, a in enumerate(arcs):
        w = _pair(a.get("class", [0, 0]), "class")
        if genus == 0 and w != TRIVIAL:
            raise TorkhError("PARSE_ERROR", "planar arcs have trivial class")
        home = {slot_circle[s] for s in a["ends"]}
        if len(home) == 1 and circle_cls[home.pop()] == TRIVIAL and w != TRIVIAL \
                and any(end_inner(i, e) for e in range(2)):
            raise TorkhError("PARSE_ERROR", f"inner arc {a.get('id', i)} must have class (0,0)")
        node_w.append(w)

    def ports(slot):
        # (entry, exit) when the circle is traversed in listing order; an
        # inner end puts the arc on the left of the traversal
        i, e = slot_arc[slot]
        if end_inner(i, e):
            k, l = (1, 2) if e == 0 else (3, 0)
        else:
            k, l = (2, 1) if e == 0 else (0, 3)
        return port(i, k), port(i, l)

    seg = [None] * (4 * len(arcs))
    free, free_names, disk, slot_exit = [], [], set(), {}
    for c in circles:
        slots = c.get("slots", [])
        cls = circle_cls[c["id"]]
        if not slots:
            free.append(cls)
            free_names.append(c["id"])
            continue
        for t, s in enumerate(slots):
            p = ports(s)[1]
            q = ports(slots[(t + 1) % len(slots)])[0]
            w = cls if t == len(slots) - 1 else TRIVIAL
            seg[p] = (q, w)
            seg[q] = (p, (-w[0], -w[1]))
            slot_exit[s] = p
            if cls == TRIVIAL and c.get("ccw", True):
                disk.add(p)
    names = tuple(str(a.get("id", f"a{i + 1}")) for i, a in enumerate(arcs))
    g = PortGraph(len(arcs), tuple(seg), tuple(node_w), tuple(free), tuple(free_names))
    config = AbstractConfiguration(g, genus, names, frozenset(disk))
    first_slot = {c["id"]: c["slots"][0] for c in circles if c.get("slots")}

    def labels(spec, subset):
        cs = config.circles(subset)
        if isinstance(spec, str):
            return tuple(_label(spec) for _ in cs)
        if not isinstance(spec, dict):
            raise TorkhError("PARSE_ERROR", "labels must be a string or an object")
        out = [None] * len(cs)
        for key, val in spec.items():
            key = first_slot.get(key, key)
            if key in slot_exit:
                p = slot_exit[key]
                hit = [i for i, c in enumerate(cs) if any(p in st for st in c.steps)]
            else:
                hit = [i for i, c in enumerate(cs) if c.key == frozenset({("free", key)})]
            if not hit:
                raise TorkhError("PARSE_ERROR", f"unknown label key {key!r}")
            out[hit[0]] = _label(val)
        if None in out:
            raise TorkhError("PARSE_ERROR", "some circle has no label")
        return tuple(out)

    y = labels(data["y"], ()) if "y" in data else None
    x = labels(data["x"], config.full()) if "x" in data else None
    return config, y, x


def decorated_from_json(data):
    config, y, x = configuration_from_json(data)
    if y is None or x is None:
        raise TorkhError("PARSE_ERROR", "labels y and x are required")
    return DecoratedConfiguration(config, y, x)


def _listing(graph, circle, reverse):
    """(node, entry slot, exit slot, winding to the next passage) around a
    traced circle, optionally in the opposite direction."""
    steps = circle.steps
    n = len(steps)
    seq = []
    for i in range(n):
        q = steps[i][1]
        nxt = steps[(i + 1) % n]
        seq.append((node_of(q), slot_of(q), slot_of(nxt[0]), graph.seg[nxt[0]][1]))
    if not reverse:
        return seq
    out = []
    for i in range(n - 1, -1, -1):
        v, k, l, _ = seq[i]
        w = seq[i - 1][3]
        out.append((v, l, k, (-w[0], -w[1])))
    return out


def configuration_to_json(config, y=None, x=None):
    """Synthetic JSON for a configuration, readable by configuration_from_json.

    Slot windings are gauged away so that each circle's class sits on its
    closing segment; contractible circles are listed with their disk on the
    left when that is known, otherwise with nontrivial arcs on the right.
    """
    graph = config.graph
    names = list(config.names)
    cs = config.circles(())
    offsets, sides, exit_port, free_ids = {}, {}, {}, {}
    circles = []
    for ci, c in enumerate(cs):
        if not c.steps:
            (tag,) = c.key
            free_ids[tag[1]] = f"F{ci}"
            circles.append({"id": f"F{ci}", "slots": [], "class": list(c.cls)})
            continue
        reverse, known = False, True
        if c.cls == TRIVIAL:
            left = config.disk_on_left(c)
            if left is None:
                known = False
                seq = _listing(graph, c, False)
                left = not any((k, l) in ((1, 2), (3, 0))
                               and arc_loop_class(graph, cs, v) not in (None, TRIVIAL)
                               for v, k, l, _ in seq)
            reverse = not left
        seq = _listing(graph, c, reverse)
        off = (0, 0)
        slots = []
        for v, k, l, w in seq:
            end = 0 if {k, l} == {1, 2} else 1
            slot = f"{names[v]}.{end}"
            slots.append(slot)
            offsets[(v, end)] = off
            sides[(v, end)] = "inner" if (k, l) in ((1, 2), (3, 0)) else "outer"
            exit_port[slot] = port(v, l)
            off = (off[0] + w[0], off[1] + w[1])
        entry = {"id": f"Z{ci}", "slots": slots, "class": list(c.cls)}
        if c.cls == TRIVIAL and not known:
            entry["ccw"] = False
        circles.append(entry)
    arcs = []
    for v in range(graph.n):
        w = graph.node_w[v]
        o0, o1 = offsets[(v, 0)], offsets[(v, 1)]
        cls = [w[0] + o0[0] - o1[0], w[1] + o0[1] - o1[1]]
        arcs.append({"id": names[v], "ends": [f"{names[v]}.0", f"{names[v]}.1"],
                     "class": cls, "sides": [sides[(v, 0)], sides[(v, 1)]]})
    data = {"genus": config.genus, "circles": circles, "arcs": arcs}
    sign = {1: "+", -1: "-"}
    if y is not None:
        data["y"] = {circles[i]["id"]: sign[lab] for i, lab in enumerate(y)}
    if x is not None:
        top = config.circles(config.full())
        if len(top) != len(x):
            raise TorkhError("LENGTH_MISMATCH", "labels do not match the circles")
        label = {}
        for c, lab in zip(top, x):
            if not c.steps:
                (tag,) = c.key
                label[free_ids[tag[1]]] = sign[lab]
                continue
            ports = {p for st in c.steps for p in st}
            slot = next(s for s, p in exit_port.items() if p in ports)
            label[slot] = sign[lab]
        data["x"] = label
    return data


def load_configuration_file(path):
    """Read a synthetic configuration file; returns (config, y, x)."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise TorkhError("IO_ERROR", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise TorkhError("PARSE_ERROR", str(exc)) from None
    return configuration_from_json(data)
