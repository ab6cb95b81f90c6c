"""Homology classes on the torus modulo orientation, and homotopical gradings."""

from math import gcd

TRIVIAL = (0, 0)


def normalize(v):
    """Representative of v modulo v ~ -v: first nonzero entry positive."""
    a, b = int(v[0]), int(v[1])
    if a < 0 or (a == 0 and b < 0):
        return (-a, -b)
    return (a, b)


def is_primitive(v):
    return gcd(abs(v[0]), abs(v[1])) == 1


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def neg(u):
    return (-u[0], -u[1])


def scale(k, u):
    return (k * u[0], k * u[1])


class Grading:
    """Finitely supported map from nontrivial normalized classes to integers.

    Immutable and hashable; the trivial class is silently dropped, which is
    how the relation "contractible = 0" enters.
    """

    __slots__ = ("_items",)

    def __init__(self, items=()):
        acc = {}
        if isinstance(items, dict):
            items = items.items()
        for cls, coeff in items:
            c = normalize(cls)
            if c == TRIVIAL:
                continue
            acc[c] = acc.get(c, 0) + coeff
        self._items = tuple(sorted((c, k) for c, k in acc.items() if k != 0))

    @classmethod
    def of_circles(cls, classes, labels):
        return cls((c, s) for c, s in zip(classes, labels))

    def items(self):
        return self._items

    def __add__(self, other):
        return Grading(self._items + other._items)

    def __neg__(self):
        return Grading((c, -k) for c, k in self._items)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Grading) and self._items == other._items

    def __lt__(self, other):
        return self._items < other._items

    def __hash__(self):
        return hash(self._items)

    def __bool__(self):
        return bool(self._items)

    def __repr__(self):
        if not self._items:
            return "Grading(0)"
        return "Grading(" + " + ".join(f"{k}*{c}" for c, k in self._items) + ")"

    def to_json(self):
        return [[list(c), k] for c, k in self._items]
