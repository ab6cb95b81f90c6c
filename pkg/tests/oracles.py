"""Independent reference implementations used only by the tests.

Nothing here imports the surface code paths: circles are counted with a
union-find over port identifications, and classical Khovanov homology is
computed from a PD code with sympy's Smith normal form.
"""

from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def count(self):
        return len({self.find(x) for x in self.parent})


def circle_count(diagram, u):
    """Circles of the resolution u: glue edge ends along edges and across
    each crossing by the smoothing ((1,2),(3,0) for 0, (0,1),(2,3) for 1)."""
    ends = [(e.id, j) for e in diagram.edges for j in (0, 1)]
    uf = UnionFind(ends)
    at_port = {}
    idx = {c.id: i for i, c in enumerate(diagram.crossings)}
    for e in diagram.edges:
        uf.union((e.id, 0), (e.id, 1))
        for j, (c, k) in enumerate(e.ends):
            at_port[(idx[c], k)] = (e.id, j)
    for i in range(diagram.n):
        pairs = ((1, 2), (3, 0)) if u[i] == 0 else ((0, 1), (2, 3))
        for a, b in pairs:
            uf.union(at_port[(i, a)], at_port[(i, b)])
    return uf.count()


def snf_diagonal(rows):
    if not rows or not rows[0]:
        return []
    m = smith_normal_form(Matrix(rows), domain=ZZ)
    return [abs(int(m[i, i])) for i in range(min(m.shape)) if m[i, i] != 0]


def classical_khovanov(pd, signs):
    """Integral Khovanov homology {(h, q): (rank, torsion)} of a planar link.

    ``pd`` lists crossings X[a, b, c, d] (a = incoming under strand, then
    counterclockwise).  The 0-smoothing joins (a,b),(c,d), the 1-smoothing
    (a,d),(b,c).  Signs are +1/-1 per crossing.  The complex is the usual
    Frobenius cube: merge m, split Delta, with edge sign (-1)^(# ones before).
    """
    n = len(pd)
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = n - n_plus
    labels_all = sorted({x for c in pd for x in c})

    def circles(u):
        uf = UnionFind(labels_all)
        for bit, (a, b, c, d) in zip(u, pd):
            if bit == 0:
                uf.union(a, b)
                uf.union(c, d)
            else:
                uf.union(a, d)
                uf.union(b, c)
        roots = sorted({uf.find(x) for x in labels_all})
        return roots, {x: roots.index(uf.find(x)) for x in labels_all}

    basis = {}
    for u in product((0, 1), repeat=n):
        roots, _ = circles(u)
        for lab in product((1, -1), repeat=len(roots)):
            h = sum(u) - n_minus
            q = sum(lab) + sum(u) + n_plus - 2 * n_minus
            basis.setdefault((h, q), []).append((u, lab))

    def image(u, lab, i):
        v = tuple(1 if j == i else b for j, b in enumerate(u))
        sign = (-1) ** sum(u[:i])
        ru, mu = circles(u)
        rv, mv = circles(v)
        # circles of u map onto circles of v
        images = {}
        for x in labels_all:
            images.setdefault(mv[x], set()).add(mu[x])
        out = []
        if len(rv) == len(ru) - 1:  # merge
            new = [None] * len(rv)
            for k, src in images.items():
                if len(src) == 2:
                    a, b = sorted(src)
                    if lab[a] == -1 and lab[b] == -1:
                        return []
                    new[k] = -1 if -1 in (lab[a], lab[b]) else 1
                else:
                    new[k] = lab[next(iter(src))]
            out.append(tuple(new))
        else:  # split
            pre = {}
            for k, src in images.items():
                pre.setdefault(next(iter(src)), []).append(k)
            new = [None] * len(rv)
            split = None
            for s, ks in pre.items():
                if len(ks) == 2:
                    split = (s, ks)
                else:
                    new[ks[0]] = lab[s]
            s, (k1, k2) = split
            if lab[s] == 1:
                for a, b in ((1, -1), (-1, 1)):
                    t = list(new)
                    t[k1], t[k2] = a, b
                    out.append(tuple(t))
            else:
                t = list(new)
                t[k1], t[k2] = -1, -1
                out.append(tuple(t))
        return [(v, t, sign) for t in out]

    result = {}
    ranks = {}
    for (h, q), src in basis.items():
        tgt = basis.get((h + 1, q), [])
        index = {b: j for j, b in enumerate(tgt)}
        rows = [[0] * len(src) for _ in tgt]
        for col, (u, lab) in enumerate(src):
            for i in range(n):
                if u[i] == 0:
                    for v, t, sign in image(u, lab, i):
                        rows[index[(v, t)]][col] += sign
        ranks[(h, q)] = snf_diagonal(rows) if tgt else []
    for (h, q), src in basis.items():
        out_rank = len(ranks[(h, q)])
        incoming = ranks.get((h - 1, q), [])
        free = len(src) - out_rank - len(incoming)
        torsion = tuple(sorted(d for d in incoming if d > 1))
        if free or torsion:
            result[(h, q)] = (free, torsion)
    return result


def mirror_pd(data):
    """PD code and signs read off a diagram file with over and under swapped.

    The strand through ports 1 and 3 is treated as the under strand, so the
    0-smoothing of the PD code joins ports (1,2),(3,0).  Edge ids are the
    PD labels.  Diagrams with crossingless components are not supported.
    """
    incoming = {}
    for comp in data["components"]:
        for eid, forward in comp:
            e = next(x for x in data["edges"] if x["id"] == eid)
            if not e.get("ends"):
                raise ValueError("crossingless component")
            head = e["ends"][1] if forward else e["ends"][0]
            tail = e["ends"][0] if forward else e["ends"][1]
            incoming[tuple(head)] = True
            incoming.setdefault(tuple(tail), False)
    at = {}
    for e in data["edges"]:
        for c, k in e["ends"]:
            at[(c, k)] = e["id"]
    pd, signs = [], []
    for c in data["crossings"]:
        cid = c["id"]
        k = 1 if incoming[(cid, 1)] else 3
        pd.append(tuple(at[(cid, (k + j) % 4)] for j in range(4)))
        signs.append(1 if incoming[(cid, (k + 3) % 4)] else -1)
    return pd, signs
