"""Homotopical Khovanov chain complex of a torus link diagram.

Basis elements are enhanced states (u, x): a cube vertex plus a +-1 label
for every resolved circle.  The partial order is read straight off its
defining conditions (labels agree on circles untouched by the surgery, the
quantum and homotopical gradings are preserved), so the merge and split
rules are consequences rather than inputs.
"""

import json
from dataclasses import dataclass
from itertools import product

from .classes import Grading, normalize
from .errors import TorkhError
from .snf import smith_diagonal
from .torus_diagram import crossing_signs, port_graph


@dataclass(frozen=True)
class EnhancedState:
    u: tuple
    labels: tuple  # +1 / -1 per circle, in the order of PortGraph.circles(u)
    gr_h: int
    gr_q: int
    gr_H: Grading

    def key(self):
        return (self.u, self.labels)


class Cube:
    """Cube of resolutions of a diagram with cached circle data."""

    def __init__(self, diagram):
        self.diagram = diagram
        self.n = diagram.n
        self.graph = port_graph(diagram)
        signs = crossing_signs(diagram) if diagram.n else []
        self.n_plus = sum(1 for s in signs if s > 0)
        self.n_minus = self.n - self.n_plus
        self._circ = {}

    def circles(self, u):
        u = tuple(u)
        if u not in self._circ:
            cs = self.graph.circles(u)
            self._circ[u] = (cs, [normalize(c.cls) for c in cs])
        return self._circ[u]

    def state(self, u, labels):
        u, labels = tuple(u), tuple(labels)
        cs, classes = self.circles(u)
        if len(labels) != len(cs):
            raise TorkhError("LENGTH_MISMATCH", f"{len(labels)} labels for {len(cs)} circles")
        h, q, H = _grade(self, u, labels, classes)
        return EnhancedState(u, labels, h, q, H)

    def states(self, u):
        cs, _ = self.circles(u)
        for labels in product((1, -1), repeat=len(cs)):
            yield self.state(u, labels)


def _grade(cube, u, labels, classes):
    k = sum(u)
    h = -cube.n_minus + k
    q = cube.n_plus - 2 * cube.n_minus + k + sum(labels)
    return h, q, Grading.of_circles(classes, labels)


def gradings(diagram, u, labels):
    """(gr_h, gr_q, gr_H) of the labeled resolution (u, labels)."""
    st = Cube(diagram).state(u, labels)
    return st.gr_h, st.gr_q, st.gr_H


def _covers(cube, src, v):
    u = src.u
    diff = [i for i in range(cube.n) if u[i] != v[i]]
    if len(diff) != 1 or u[diff[0]] != 0:
        raise TorkhError("NOT_ADJACENT", f"{v} is not an upper neighbour of {u}")
    cs_u, _ = cube.circles(u)
    cs_v, cls_v = cube.circles(v)
    old = {c.key: lab for c, lab in zip(cs_u, src.labels)}
    fixed = [old.get(c.key) for c in cs_v]
    free = [j for j, lab in enumerate(fixed) if lab is None]
    out = []
    for choice in product((1, -1), repeat=len(free)):
        labels = list(fixed)
        for j, lab in zip(free, choice):
            labels[j] = lab
        h, q, H = _grade(cube, v, labels, cls_v)
        if q == src.gr_q and H == src.gr_H:
            out.append(EnhancedState(tuple(v), tuple(labels), h, q, H))
    return out


def covers(diagram, source, v):
    """Enhanced states at vertex v lying directly above ``source``."""
    return _covers(Cube(diagram), source, tuple(v))


@dataclass
class GradedChainComplex:
    """Parts keyed by (gr_q, gr_H); each part maps gr_h to its basis and the
    differential out of that degree (rows: target basis, columns: source)."""

    parts: dict

    def keys(self):
        return sorted(self.parts, key=lambda k: (k[0], k[1].items()))


def differential(diagram):
    cube = Cube(diagram)
    n = cube.n
    parts = {}
    index = {}
    for u in product((0, 1), repeat=n):
        for st in cube.states(u):
            part = parts.setdefault((st.gr_q, st.gr_H), {})
            basis = part.setdefault(st.gr_h, {"basis": [], "d": None})["basis"]
            index[st.key()] = len(basis)
            basis.append(st)
    for key, part in parts.items():
        for h, data in part.items():
            tgt = part.get(h + 1)
            if tgt is None:
                data["d"] = []
                continue
            mat = [[0] * len(data["basis"]) for _ in tgt["basis"]]
            for col, st in enumerate(data["basis"]):
                ones = 0
                for i in range(n):
                    if st.u[i]:
                        ones += 1
                        continue
                    v = st.u[:i] + (1,) + st.u[i + 1:]
                    sign = -1 if ones % 2 else 1
                    for t in _covers(cube, st, v):
                        mat[index[t.key()]][col] += sign
            data["d"] = mat
    return GradedChainComplex(parts)


def _matmul(a, b, inner):
    if not a or not b:
        return []
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(len(b[0]))]
            for i in range(len(a))]


def d_squared_is_zero(cx):
    for part in cx.parts.values():
        for h, data in part.items():
            nxt = part.get(h + 1)
            if nxt is None or not data["d"] or not nxt["d"]:
                continue
            prod_ = _matmul(nxt["d"], data["d"], len(nxt["basis"]))
            if any(any(row) for row in prod_):
                return False
    return True


@dataclass(frozen=True)
class HomologySummary:
    """groups[(gr_q, gr_H, gr_h)] = (free rank, torsion coefficients)."""

    groups: dict

    def collapsed(self):
        """Forget gr_H: (gr_h, gr_q) -> (rank, sorted torsion)."""
        out = {}
        for (q, _, h), (r, t) in self.groups.items():
            r0, t0 = out.get((h, q), (0, ()))
            out[(h, q)] = (r0 + r, tuple(sorted(t0 + t)))
        return out

    def to_json(self):
        rows = {}
        for (q, H, h), (r, t) in self.groups.items():
            rows.setdefault((q, H), []).append({"hdeg": h, "rank": r, "torsion": list(t)})
        out = []
        for (q, H) in sorted(rows, key=lambda k: (k[0], k[1].items())):
            out.append({"q": q, "h_class": H.to_json(),
                        "homology": sorted(rows[(q, H)], key=lambda e: e["hdeg"])})
        return {"gradings": out}


def homology(cx):
    groups = {}
    for (q, H), part in cx.parts.items():
        ranks, divisors = {}, {}
        for h, data in part.items():
            if data["d"]:
                dg = smith_diagonal(data["d"])
            else:
                dg = []
            ranks[h] = len(dg)
            divisors[h + 1] = [x for x in dg if x > 1]
        for h, data in part.items():
            nxt = part.get(h + 1)
            if nxt is not None and data["d"] and nxt["d"]:
                prod_ = _matmul(nxt["d"], data["d"], len(nxt["basis"]))
                if any(any(row) for row in prod_):
                    raise TorkhError("NOT_A_COMPLEX", f"d^2 != 0 at q={q}, h={h}")
        for h, data in part.items():
            free = len(data["basis"]) - ranks.get(h, 0) - ranks.get(h - 1, 0)
            tors = tuple(divisors.get(h, []))
            if free or tors:
                groups[(q, H, h)] = (free, tors)
    return HomologySummary(groups)


def khovanov_homology(diagram):
    return homology(differential(diagram))


def euler_characteristic(cx):
    """(gr_q, gr_H) -> alternating count of basis elements."""
    return {k: sum((-1) ** (h % 2) * len(d["basis"]) for h, d in part.items())
            for k, part in cx.parts.items()}


def verify_invariance(d1, d2):
    h1, h2 = khovanov_homology(d1), khovanov_homology(d2)
    return {"equal": h1.groups == h2.groups}


def report_json(summary):
    return json.dumps(summary.to_json(), sort_keys=True)
