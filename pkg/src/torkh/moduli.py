"""Matchings on multiplicity-2 faces and boundary graphs of index-3 posets.

A face of multiplicity 2 (ladybug or quasi-ladybug) has four intermediate
labeled configurations.  A pairing picks two of the four circle segments;
intermediates with equal labels on those segments are matched.  Gluing
the maximal chains of an index-3 poset along these matchings (and along
the unique identification on ordinary squares) gives a 2-regular graph
whose cycle lengths tell a trivial double cover ({6, 6}) from a branched
one ({12}).
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor

from .classes import det, is_primitive, normalize
from .config_analysis import (DecoratedConfiguration, chord_data, classify_index2,
                              classify_index3, compact, face_configuration, poset,
                              transfer_labels)
from .errors import TorkhError
from .portgraph import PortGraph, node_of

RIGHT, LEFT, LAMBDA, LAMBDA_BAR = "right", "left", "lambda", "lambdabar"


# ----------------------------------------------------------------------------
# pairings


def canonical_mu(lam):
    """The class mu with det(lam, mu) = 1 whose projection onto lam,
    measured in units of lam, lies in [0, 1)."""
    p, q = lam
    if not is_primitive(lam):
        raise TorkhError("MALFORMED", f"lambda {lam} is not primitive")
    # extended Euclid: p*s - q*r = 1
    old_r, r = p, -q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    # old_s*p + old_t*(-q) = old_r = +-1
    sign = 1 if old_r == 1 else -1
    mu = (sign * old_t, sign * old_s)
    assert det(lam, mu) == 1
    shift = floor(Fraction(mu[0] * p + mu[1] * q, p * p + q * q))
    return (mu[0] - shift * p, mu[1] - shift * q)


def slope_value(cls, lam, mu):
    """-p/q for cls = p*lam + q*mu, as a sortable key; -infinity when q = 0."""
    p = det(cls, mu)
    q = det(lam, cls)
    if q == 0:
        return (0, Fraction(0))
    return (1, Fraction(-p, q))


@dataclass(frozen=True)
class Pairing:
    """Choices for every face type of multiplicity 2.

    ``l0`` and ``lalpha`` are "right" or "left", ``q`` is "lambda" or
    "lambdabar"; ``overrides`` maps a FaceType string such as
    "Q[(0,1),(1,0)]" to a choice for that type only.
    """

    l0: str = RIGHT
    lalpha: str = RIGHT
    q: str = LAMBDA
    lam: tuple = (1, 0)
    mu: tuple = None
    overrides: tuple = ()

    def __post_init__(self):
        for value, allowed in ((self.l0, (RIGHT, LEFT)), (self.lalpha, (RIGHT, LEFT)),
                               (self.q, (LAMBDA, LAMBDA_BAR))):
            if value not in allowed:
                raise TorkhError("PARSE_ERROR", f"bad pairing choice {value!r}")
        lam = tuple(self.lam)
        object.__setattr__(self, "lam", lam)
        if self.mu is None:
            object.__setattr__(self, "mu", canonical_mu(lam))
        elif det(lam, tuple(self.mu)) != 1:
            raise TorkhError("MALFORMED", "mu must satisfy det(lambda, mu) = 1")

    def choice(self, face_type):
        for key, value in self.overrides:
            if key == str(face_type):
                return value
        if face_type.kind == "L0":
            return self.l0
        if face_type.kind == "L_ALPHA":
            return self.lalpha
        if face_type.kind == "Q":
            return self.q
        raise TorkhError("MALFORMED", f"no choice for face type {face_type}")

    def is_regular(self):
        return not self.overrides and self.l0 == self.lalpha


def regular_pairing(side=RIGHT, q=LAMBDA, lam=(1, 0)):
    return Pairing(side, side, q, lam)


def parse_pairing(text, lam=(1, 0)):
    """Pairing from "l0=right,lalpha=left,q=lambdabar" (missing keys keep defaults).

    An item keyed by a face type, e.g. "Q[(1,0),(1,1)]=lambdabar", becomes an
    override for that type only.
    """
    values = {"l0": RIGHT, "lalpha": RIGHT, "q": LAMBDA}
    overrides = []
    if text:
        # split on commas outside brackets and parentheses
        items, depth, cur = [], 0, ""
        for ch in text:
            depth += (ch in "[(") - (ch in ")]")
            if ch == "," and depth == 0:
                items.append(cur)
                cur = ""
            else:
                cur += ch
        items.append(cur)
        for item in items:
            key, sep, value = item.partition("=")
            key, value = key.strip().replace(" ", ""), value.strip()
            if sep and key in values:
                values[key] = value
            elif sep and "[" in key and key.endswith("]"):
                kind = key[:key.index("[")]
                allowed = (LAMBDA, LAMBDA_BAR) if kind == "Q" else (RIGHT, LEFT)
                if value not in allowed:
                    raise TorkhError("PARSE_ERROR", f"bad pairing choice {value!r}")
                overrides.append((key, value))
            else:
                raise TorkhError("PARSE_ERROR", f"bad pairing item {item!r}")
    return Pairing(values["l0"], values["lalpha"], values["q"], tuple(lam),
                   overrides=tuple(overrides))


# ----------------------------------------------------------------------------
# matchings on index-2 faces


@dataclass(frozen=True)
class Matching:
    """The four intermediates of a multiplicity-2 face split into two pairs."""

    pairs: tuple

    def partner(self, e):
        for a, b in self.pairs:
            if e == a:
                return b
            if e == b:
                return a
        raise KeyError(e)


def _segments(face, face_type, choice, pairing):
    """Two distinguished segments (as segment ids of the face graph) of the
    single circle of a multiplicity-2 face."""
    data = chord_data(face.config)
    steps = data.circle.steps
    # segment m runs from the arc passed before it to the arc it enters
    runs = [(PortGraph.segment_id(p, q), node_of(p), node_of(q)) for p, q in steps]
    if face_type.kind in ("L0", "L_ALPHA"):
        if choice not in (RIGHT, LEFT):
            raise TorkhError("MALFORMED", f"ladybug faces take right/left, got {choice!r}")
        right = [sid for sid, s, t in runs if data.sides[s] == "R" and data.sides[t] == "L"]
        chosen = right if choice == RIGHT else [sid for sid, *_ in runs if sid not in right]
    elif face_type.kind == "Q":
        if choice not in (LAMBDA, LAMBDA_BAR):
            raise TorkhError("MALFORMED", f"quasi-ladybug faces take lambda/lambdabar, got {choice!r}")
        value = {a: slope_value(data.classes[a], pairing.lam, pairing.mu) for a in (0, 1)}
        # canonical orientation: both arcs on the right of the traversal
        forward = data.sides[0] == "R"
        lam_pair = []
        for sid, s, t in runs:
            first, last = (s, t) if forward else (t, s)
            if value[first] > value[last]:
                lam_pair.append(sid)
        chosen = lam_pair if choice == LAMBDA else [sid for sid, *_ in runs if sid not in lam_pair]
    else:
        raise TorkhError("NOT_QUASI_LADYBUG", f"face of type {face_type} has no matching")
    if len(chosen) != 2:
        raise TorkhError("MALFORMED", "expected two distinguished segments")
    return chosen


def _face(dec, e, f):
    """Decorated configuration of the interval [e, f] plus the origin map."""
    config = dec.config
    arcs = sorted(f[0] - e[0])
    new, origin = compact(config.graph, config.bits(e[0]), arcs, config.genus,
                          [config.names[a] for a in arcs])
    y = transfer_labels(config.circles(e[0]), e[1], new.circles(()), origin)
    x = transfer_labels(config.circles(f[0]), f[1], new.circles(new.full()), origin)
    return DecoratedConfiguration(new, y, x), origin


def _match_in(dec, face, origin, middle, face_type, choice, pairing):
    # drop free circles, keeping track of where the remaining segments came from
    core_cfg, core_origin = compact(face.config.graph, face.config.bits(()),
                                    range(face.index), face.config.genus, drop_free=True)
    sids = _segments(DecoratedConfiguration(core_cfg, (), ()), face_type, choice, pairing)
    big = [origin[core_origin[sid[0]][0]] for sid in sids]
    keys = {}
    for g in middle:
        cs = dec.config.circles(g[0])
        lab = []
        for sid in big:
            (ci,) = [i for i, circ in enumerate(cs)
                     if any(PortGraph.segment_id(*st) == sid for st in circ.steps)]
            lab.append(g[1][ci])
        keys[g] = tuple(lab)
    verts = sorted({g[0] for g in middle}, key=sorted)
    if len(verts) != 2 or len(middle) != 4:
        raise TorkhError("MALFORMED", "a multiplicity-2 face needs 2+2 intermediates")
    left = [g for g in middle if g[0] == verts[0]]
    right = [g for g in middle if g[0] == verts[1]]
    pairs = []
    for g in left:
        hit = [h for h in right if keys[h] == keys[g]]
        if len(hit) != 1:
            raise TorkhError("MALFORMED", "distinguished labels do not pair the intermediates")
        pairs.append((g, hit[0]))
    return Matching(tuple(pairs))


def face_matching(dec, pairing=None, choice=None):
    """Matching of the four intermediates of an index-2 face of multiplicity 2.

    The choice comes from ``pairing`` unless given explicitly.
    """
    if dec.index != 2:
        raise TorkhError("WRONG_INDEX", f"index {dec.index}, expected 2")
    ftype = classify_index2(dec)
    if ftype.kind not in ("L0", "L_ALPHA", "Q"):
        raise TorkhError("NOT_QUASI_LADYBUG", f"face of type {ftype} has multiplicity 1")
    pairing = pairing or Pairing()
    choice = choice or pairing.choice(ftype)
    P = poset(dec)
    middle = [g for g in P.elements if len(g[0]) == 1]
    origin = {p: PortGraph.segment_id(p, dec.config.graph.seg[p][0])
              for p in range(4 * dec.index)}
    return _match_in(dec, dec, origin, middle, ftype, choice, pairing)


def right_left_match(dec, choice=RIGHT):
    """Matching of a ladybug face (L0 or L_ALPHA) from the right or left pair."""
    ftype = classify_index2(dec)
    if ftype.kind not in ("L0", "L_ALPHA"):
        raise TorkhError("MALFORMED", f"not a ladybug: {ftype}")
    return face_matching(dec, choice=choice)


def lambda_match(dec, pairing=None, choice=None):
    """Matching of a quasi-ladybug face from the lambda or lambda-bar pair."""
    ftype = classify_index2(dec)
    if ftype.kind != "Q":
        raise TorkhError("NOT_QUASI_LADYBUG", f"face of type {ftype}")
    pairing = pairing or Pairing()
    return face_matching(dec, pairing, choice or pairing.q)


# ----------------------------------------------------------------------------
# boundary graphs


@dataclass
class BoundaryGraph:
    """Maximal chains joined along faces; ``cycles`` is the sorted list of
    cycle lengths."""

    chains: list
    edges: list
    cycles: list
    faces: dict = field(default_factory=dict)

    def to_json(self):
        return {"cycles": list(self.cycles)}


def face_key(dec, e, f):
    names = dec.config.names
    below = ",".join(names[a] for a in sorted(e[0])) or "-"
    arcs = ",".join(names[a] for a in sorted(f[0] - e[0]))
    labels = "".join("+" if s > 0 else "-" for s in e[1])
    return f"{arcs}@{below}/{labels}"


def _faces_of(P):
    faces = {}
    for ch in P.maximal_chains():
        for i in range(len(ch) - 2):
            faces.setdefault((ch[i], ch[i + 2]), set()).add(ch[i + 1])
    return faces


def double_faces(dec):
    """Index-2 intervals of multiplicity 2 with their face types, by key."""
    P = poset(dec)
    out = {}
    for (e, f), mids in _faces_of(P).items():
        if len(mids) == 4:
            face, _ = _face(dec, e, f)
            out[face_key(dec, e, f)] = ((e, f), classify_index2(face))
    return out


def boundary_graph(dec, pairing=None, choices=None):
    """Boundary graph of an index-3 decorated configuration.

    ``choices`` optionally maps face keys (see ``double_faces``) to a
    choice, overriding the pairing on that face.
    """
    if dec.index != 3:
        raise TorkhError("WRONG_INDEX", f"index {dec.index}, expected 3")
    P = poset(dec)
    if P.empty:
        raise TorkhError("EMPTY_CONFIGURATION", "the decorated configuration is empty")
    pairing = pairing or Pairing()
    choices = choices or {}
    chains = P.maximal_chains()
    index = {ch: i for i, ch in enumerate(chains)}
    partner, used = {}, {}
    for (e, f), mids in _faces_of(P).items():
        mids = sorted(mids, key=lambda g: (sorted(g[0]), g[1]))
        if len(mids) == 2:
            partner[(e, f)] = {mids[0]: mids[1], mids[1]: mids[0]}
            continue
        face, origin = _face(dec, e, f)
        ftype = classify_index2(face)
        key = face_key(dec, e, f)
        choice = choices.get(key) or pairing.choice(ftype)
        used[key] = (str(ftype), choice)
        m = _match_in(dec, face, origin, mids, ftype, choice, pairing)
        partner[(e, f)] = {g: m.partner(g) for g in mids}
    edges = []
    adj = {i: [] for i in range(len(chains))}
    for ch, i in index.items():
        for pos in (1, 2):
            face = (ch[pos - 1], ch[pos + 1])
            other = ch[:pos] + (partner[face][ch[pos]],) + ch[pos + 1:]
            j = index[other]
            adj[i].append(j)
            if i < j:
                edges.append((i, j))
    cycles = []
    seen = set()
    for start in range(len(chains)):
        if start in seen:
            continue
        length, prev, cur = 0, None, start
        while True:
            seen.add(cur)
            length += 1
            a, b = adj[cur]
            nxt = b if a == prev else a
            if a == b:
                nxt = a
            prev, cur = cur, nxt
            if cur == start:
                break
        cycles.append(length)
    return BoundaryGraph(chains, edges, sorted(cycles), used)


@dataclass(frozen=True)
class CoverType:
    kind: str
    branch_points: int = 0

    def __str__(self):
        return f"BRANCHED({self.branch_points})" if self.kind == "BRANCHED" else self.kind


def classify_cover(graph_or_cycles):
    cycles = graph_or_cycles.cycles if isinstance(graph_or_cycles, BoundaryGraph) \
        else list(graph_or_cycles)
    cycles = sorted(cycles)
    if cycles == [6]:
        return CoverType("SINGLE_SHEET")
    if cycles == [6, 6]:
        return CoverType("TRIVIAL_2FOLD")
    if cycles == [12]:
        return CoverType("BRANCHED", 1)
    raise TorkhError("MALFORMED", f"unexpected cycle lengths {cycles}")


def enumerate_multivalued(dec, lam=(1, 0)):
    """Cycle lengths for every independent choice on the multiplicity-2 faces.

    Returns a list of {"choices": {face key: choice}, "cycles": [...]},
    sorted by the choices.
    """
    faces = double_faces(dec)
    keys = sorted(faces)
    options = []
    for k in keys:
        kind = faces[k][1].kind
        options.append((RIGHT, LEFT) if kind in ("L0", "L_ALPHA") else (LAMBDA, LAMBDA_BAR))
    pairing = Pairing(lam=tuple(lam))
    out = []
    for combo in product(*options):
        choices = dict(zip(keys, combo))
        bg = boundary_graph(dec, pairing, choices)
        out.append({"choices": choices, "cycles": bg.cycles})
    return sorted(out, key=lambda r: sorted(r["choices"].items()))


# ----------------------------------------------------------------------------
# diagrams and index 4


def cube_faces(graph, index, genus=1):
    """Nonempty decorated configurations D_L(v) - D_L(u) with |v| - |u| =
    ``index`` of a diagram's port graph, one per compatible (y, x)."""
    from .classes import Grading

    n = graph.n
    cache = {}

    def circ(u):
        if u not in cache:
            cs = graph.circles(u)
            cache[u] = (cs, [normalize(c.cls) for c in cs])
        return cache[u]

    out = []
    for u in product((0, 1), repeat=n):
        zeros = [i for i in range(n) if u[i] == 0]
        if len(zeros) < index:
            continue
        for pick in _subsets(zeros, index):
            v = tuple(1 if (i in pick or u[i]) else 0 for i in range(n))
            cu, ku = circ(u)
            cv, kv = circ(v)
            tops = {}
            for x in product((1, -1), repeat=len(cv)):
                tops.setdefault((sum(x), Grading.of_circles(kv, x)), []).append(x)
            for y in product((1, -1), repeat=len(cu)):
                key = (sum(y) - index, Grading.of_circles(ku, y))
                for x in tops.get(key, []):
                    dec = face_configuration(graph, u, v, y, x, genus)
                    if not poset(dec).empty:
                        out.append(((u, v), dec))
    return out


def _subsets(items, k):
    from itertools import combinations
    return combinations(items, k)


def moduli_system_type(diagram, pairing=None):
    """"D" if some index-3 face of the diagram's cube has a branched
    boundary under ``pairing``, else "C"."""
    from .torus_diagram import port_graph

    pairing = pairing or Pairing()
    graph = port_graph(diagram)
    for _, dec in cube_faces(graph, 3, diagram.genus):
        if max(len(v) for v in poset(dec).fibers().values()) < 2:
            continue
        if classify_cover(boundary_graph(dec, pairing)).kind == "BRANCHED":
            return "D"
    return "C"


def _triple_name(kind, classes):
    return f"{kind}[" + ",".join(f"({a},{b})" for a, b in classes) + "]"


def index4_face_census(dec, pairing=None):
    """DQ and DQ' faces among the index-3 intervals of an index-4 poset.

    Returns {"faces": {name: count}, "branch_points": k}; branch points are
    counted for ``pairing`` (one per face whose boundary is a dodecagon).
    """
    if dec.index != 4:
        raise TorkhError("WRONG_INDEX", f"index {dec.index}, expected 4")
    P = poset(dec)
    if P.empty:
        raise TorkhError("EMPTY_CONFIGURATION", "the decorated configuration is empty")
    pairing = pairing or Pairing()
    intervals = [(P.bottom, f) for f in P.elements if len(f[0]) == 3]
    intervals += [(e, P.top) for e in P.elements if len(e[0]) == 1]
    faces = Counter()
    branch = 0
    for e, f in intervals:
        face, _ = _face(dec, e, f)
        tag = classify_index3(face)
        if tag.kind not in ("(8)", "(10)"):
            continue
        faces[_triple_name("DQ" if tag.kind == "(8)" else "DQ'", tag.classes)] += 1
        if classify_cover(boundary_graph(face, pairing)).kind == "BRANCHED":
            branch += 1
    return {"faces": dict(sorted(faces.items())), "branch_points": branch}
