"""The fixture corpus: diagrams, Reidemeister pairs and synthetic configurations.

Everything here is deterministic.  ``write_corpus(root)`` regenerates the
files shipped under fixtures/; the test-suite checks that the shipped files
match a fresh build.

    python -m torkh.corpus fixtures
"""

import json
import os
import random
import sys
from fractions import Fraction as F
from itertools import product
from math import cos, pi, sin

from .build import build_diagram, curve, find_crossings, insert_kink
from .config_analysis import (DecoratedConfiguration, configuration_from_json,
                              configuration_to_json, poset, with_duals)
from .errors import TorkhError
from .torus_diagram import diagram_to_json, validate

# ----------------------------------------------------------------------------
# curves

def _trefoil_shadow(n=18):
    """PL samples of (sin t + 2 sin 2t, cos t - 2 cos 2t) on an 80-step grid."""
    pts = []
    for i in range(n):
        t = 2 * pi * i / n
        x, y = sin(t) + 2 * sin(2 * t), cos(t) - 2 * cos(2 * t)
        pts.append(tuple(F(round((v + 3.2) / 6.4 * 80), 100) + F(1, 10) for v in (x, y)))
    return pts


TREFOIL_SHADOW = _trefoil_shadow()


def square(x0, y0, x1, y1):
    return curve([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def horizontal(y=F(1, 2)):
    return curve([(F(0), y)], (1, 0))


def vertical(x=F(1, 2)):
    return curve([(x, F(0))], (0, 1))


def diagonal(c):
    """The (1,1) line y = x + c."""
    return curve([(F(0), c)], (1, 1))


def by_height(heights):
    """Over/under rule: the strand of the higher curve goes over."""
    def over(k, first, second):
        return 0 if heights[first[0]] > heights[second[0]] else 1
    return over


def kinked(curves, over, ci, seg, side=1, bit=0):
    """``build_diagram`` of ``curves`` with a curl added to segment ``seg`` of
    curve ``ci``; old crossings keep their over/under choice (list ``over``)
    and the new one gets ``bit``."""
    found = find_crossings(curves)
    first = {}
    for c in range(len(curves)):
        hits = sorted((loc[1], loc[2], k) for k, (l1, l2, _) in enumerate(found)
                      for loc in (l1, l2) if loc[0] == c)
        for s, t, k in hits:
            first.setdefault(k, (c, s, t))
    before = sum(1 for loc in first.values() if loc < (ci, seg, F(1, 2)))
    new = list(curves)
    new[ci] = insert_kink(curves[ci], seg, side=side)
    return build_diagram(new, list(over[:before]) + [bit] + list(over[before:]))


def diagrams():
    """Named fixture diagrams (all in the torus)."""
    unknot = square(F(1, 4), F(1, 4), F(3, 4), F(3, 4))
    shadow = curve(TREFOIL_SHADOW)
    a = square(F(1, 5), F(1, 5), F(3, 5), F(3, 5))
    b = square(F(2, 5), F(2, 5), F(4, 5), F(4, 5))
    return {
        "unknot0": build_diagram([unknot]),
        "unknot1": build_diagram([insert_kink(unknot, 0, side=-1)], [1]),
        # the curl bulges into the square: one circle of the 0-resolution
        # sits inside the other
        "unknot1_nested": build_diagram([insert_kink(unknot, 0, side=1)], [0]),
        # trefoil shadow with one crossing changed: a 3-crossing unknot whose
        # all-0 face carries two ladybugs
        "unknot3": build_diagram([shadow], [0, 0, 0]),
        "trefoil": build_diagram([shadow], [1, 0, 1]),
        "hopf": build_diagram([a, b], [0, 1]),
        "curve10": build_diagram([horizontal()]),
        "meridian_longitude": build_diagram([horizontal(), vertical()]),
        # three lines of classes (1,0), (0,1), (1,1); the all-0 face is DQ
        "lines_dq": build_diagram([horizontal(), vertical(), diagonal(F(-1, 10))], [0, 1, 0]),
    }


def reidemeister_pairs():
    unknot = square(F(1, 4), F(1, 4), F(3, 4), F(3, 4))
    line = horizontal()
    small = square(F(2, 5), F(1, 5), F(3, 5), F(2, 5))
    crossing = square(F(2, 5), F(2, 5), F(3, 5), F(3, 5))
    a = square(F(1, 10), F(1, 10), F(2, 5), F(2, 5))
    b = square(F(1, 2), F(1, 2), F(9, 10), F(9, 10))
    a2 = square(F(1, 5), F(1, 5), F(3, 5), F(3, 5))
    b2 = square(F(2, 5), F(2, 5), F(4, 5), F(4, 5))
    shadow = curve(TREFOIL_SHADOW)
    lines = [horizontal(), vertical()]
    return {
        "r1_1": (build_diagram([unknot]), build_diagram([insert_kink(unknot, 0, side=1)], [0])),
        "r1_2": (build_diagram([unknot]), build_diagram([insert_kink(unknot, 2, side=-1)], [1])),
        "r1_3": (build_diagram([line]), build_diagram([insert_kink(line, 0, side=1)], [1])),
        "r1_4": (build_diagram([shadow], [1, 0, 1]), kinked([shadow], [1, 0, 1], 0, 4)),
        "r1_5": (build_diagram([a2, b2], [0, 1]), kinked([a2, b2], [0, 1], 1, 2, -1, 1)),
        "r2_1": (build_diagram([a, b]), build_diagram([a2, b2], [0, 0])),
        "r2_2": (build_diagram([line, small]), build_diagram([line, crossing], [1, 1])),
        "r3_1": (build_diagram(lines + [diagonal(F(1, 10))], by_height({0: 3, 1: 2, 2: 1})),
                 build_diagram(lines + [diagonal(F(-1, 10))], by_height({0: 3, 1: 2, 2: 1}))),
        "r3_2": (build_diagram(lines + [diagonal(F(1, 10))], by_height({0: 2, 1: 1, 2: 3})),
                 build_diagram(lines + [diagonal(F(-1, 10))], by_height({0: 2, 1: 1, 2: 3}))),
    }


_CLASSES = [(0, 0), (0, 0), (1, 0), (0, 1), (1, 1), (1, -1)]


def random_diagram(rng, max_crossings=5):
    """A random valid torus diagram with 1 to ``max_crossings`` crossings."""
    while True:
        curves = []
        for _ in range(rng.choice((1, 2))):
            cls = rng.choice(_CLASSES)
            k = rng.randint(2, 4) if cls != (0, 0) else rng.randint(3, 5)
            pts = [(F(rng.randint(1, 31), 32), F(rng.randint(1, 31), 32)) for _ in range(k)]
            curves.append(curve(pts, cls))
        try:
            d = build_diagram(curves, lambda *_: rng.randint(0, 1))
        except TorkhError:
            continue
        if 1 <= d.n <= max_crossings and validate(d).ok:
            return d


def random_diagrams(count=100, seed=2024):
    return [random_diagram(random.Random(seed + i)) for i in range(count)]


# ----------------------------------------------------------------------------
# synthetic configurations


def one_circle(order, arcs, y="+", x="-", genus=1, cls=(0, 0)):
    """Synthetic one-circle configuration; ``order`` lists arc names ccw,
    each twice, and ``arcs`` maps names to extra fields (side, class)."""
    seen = {}
    slots = []
    for a in order:
        k = seen.get(a, 0)
        seen[a] = k + 1
        slots.append(f"{a}.{k}")
    out = {"genus": genus,
           "circles": [{"id": "Z", "slots": slots, "class": list(cls)}],
           "arcs": [{"id": a, "ends": [f"{a}.0", f"{a}.1"], **kw} for a, kw in arcs]}
    if y is not None:
        out.update(y=y, x=x)
    return out


ALPHA, BETA, GAMMA, BETA_BAR = (1, 0), (1, 1), (0, 1), (-1, 1)

DQ_ARCS = [("a", {"class": list(ALPHA)}), ("b", {"class": list(BETA)}),
           ("c", {"class": list(GAMMA)})]


def _q(c1, c2):
    return one_circle("abab", [("a", {"class": list(c1)}), ("b", {"class": list(c2)})])


def worked_example():
    """Six chords a1..a6 with sequence a1 a2 a3 a2 a1 a3 a4 a5 a4 a5 a6 a6,
    surgered along a1, a2 so that three circles remain."""
    sides = {"a1": "inner", "a2": "inner", "a3": "outer", "a4": "inner", "a5": "outer",
             "a6": "inner"}
    base = one_circle("a1 a2 a3 a2 a1 a3 a4 a5 a4 a5 a6 a6".split(),
                      [(k, {"side": v}) for k, v in sides.items()])
    config, _, _ = configuration_from_json(base)
    flipped, _ = with_duals(config, {0, 1})
    y = tuple(1 for _ in flipped.circles(()))
    x = tuple(-1 for _ in flipped.circles(flipped.full()))
    return base, configuration_to_json(flipped, y, x)


# index-4 layouts: (frame, order, side and class of d, arcs surgered to get D)
# In the DQ frame d is added to DQ itself; in the DQ' frame it is added to
# the one-circle picture obtained from DQ' by surgery along one arc.
INDEX4_LAYOUTS = {
    1: ("DQ", "addbcabc", ("inner", (0, 0)), "d"),
    2: ("DQ", "adbdcabc", ("inner", (0, 0)), "d"),
    3: ("DQ", "addbcabc", ("outer", (0, 0)), ""),
    4: ("DQ", "abcdabcd", ("inner", (0, 0)), "d"),
    5: ("DQ", "adbcdabc", ("inner", (0, 0)), "d"),
    6: ("DQ", "abcdabdc", ("outer", GAMMA), ""),
    7: ("DQ'", "cbaddcba", ("inner", (0, 0)), "ad"),
    8: ("DQ'", "cbadcdba", ("inner", (0, 0)), "ad"),
    9: ("DQ'", "cbacbdad", ("outer", (0, 0)), "a"),
    10: ("DQ'", "cbdacdba", ("outer", GAMMA), "a"),
}

_FRAMES = {
    "DQ": [("a", {"class": list(ALPHA)}), ("b", {"class": list(BETA)}),
           ("c", {"class": list(GAMMA)})],
    "DQ'": [("a", {"side": "inner"}), ("b", {"class": list(GAMMA)}),
            ("c", {"class": list(BETA)})],
}


def index4_configuration(case):
    """Decorated index-4 configuration for one of the cases 1-10.

    The labels are the first (y, x), in lexicographic order with + before -,
    whose poset contains a DQ or DQ' face.
    """
    from .moduli import index4_face_census

    frame, order, (side, cls), flip = INDEX4_LAYOUTS[case]
    arcs = _FRAMES[frame] + [("d", {"side": side, "class": list(cls)})]
    config, _, _ = configuration_from_json(one_circle(order, arcs, y=None, x=None))
    names = list(config.names)
    subset = {names.index(a) for a in flip}
    D = with_duals(config, subset)[0] if subset else config
    for y in product((1, -1), repeat=len(D.circles(()))):
        for x in product((1, -1), repeat=len(D.circles(D.full()))):
            dec = DecoratedConfiguration(D, y, x)
            if poset(dec).empty:
                continue
            if index4_face_census(dec)["faces"]:
                return dec
    raise TorkhError("EMPTY_CONFIGURATION", f"case {case} has no DQ face")


def first_labeling(data):
    """``data`` with the first labels (y, x), + before -, giving a nonempty
    poset."""
    config, _, _ = configuration_from_json(data)
    for y in product((1, -1), repeat=len(config.circles(()))):
        for x in product((1, -1), repeat=len(config.circles(config.full()))):
            if not poset(DecoratedConfiguration(config, y, x)).empty:
                return configuration_to_json(config, y, x)
    raise TorkhError("EMPTY_CONFIGURATION", "no labeling gives a nonempty poset")


def _arc(name, **kw):
    return {"id": name, "ends": [f"{name}.0", f"{name}.1"], **kw}


LADYBUG_ARCS = [_arc("a", side="inner"), _arc("b", side="outer")]


def configurations():
    """Named synthetic configurations as JSON objects."""
    from .config_analysis import dual, decorated_from_json

    out = {
        "ladybug": one_circle("abab", [("a", {"side": "inner"}), ("b", {"side": "outer"})],
                              genus=0),
        "ladybug_torus": one_circle("abab", [("a", {"side": "inner"}),
                                             ("b", {"side": "outer"})]),
        "ladybug_noncontractible": one_circle(
            "abab", [("a", {"side": "inner"}), ("b", {"side": "outer"})], cls=(1, 0)),
        "lalpha": one_circle("abab", [("a", {"side": "inner"}), ("b", {"class": [1, 0]})]),
        "q": _q(ALPHA, GAMMA),
        "q_alpha_beta": _q(ALPHA, BETA),
        "q_beta_gamma": _q(BETA, GAMMA),
        "q_gamma_betabar": _q(GAMMA, BETA_BAR),
        "q_2_1": _q((2, 1), (1, 1)),
        "dq": one_circle("abcabc", DQ_ARCS),
        "two_ladybugs": one_circle("abacbc", [("a", {"side": "inner"}),
                                              ("b", {"side": "outer"}),
                                              ("c", {"side": "inner"})]),
    }
    # an inner chord linked with both arcs of a quasi-ladybug: empty for
    # every labeling, so it ships without labels
    out["q_with_inner_chord"] = one_circle(
        "abcabc", [("a", {"class": [1, 0]}), ("b", {"class": [0, 1]}),
                   ("c", {"side": "inner"})], y=None)
    out["coleaf_tree"] = first_labeling(one_circle(
        "aabbcc", [("a", {"side": "inner"}), ("b", {"side": "inner"}),
                   ("c", {"side": "outer"})], y=None))
    out["ladybug_leaf"] = first_labeling({
        "genus": 1,
        "circles": [{"id": "Z", "slots": ["a.0", "b.0", "a.1", "b.1", "c.0"]},
                    {"id": "W", "slots": ["c.1"]}],
        "arcs": LADYBUG_ARCS + [_arc("c")]})
    out["ladybug_pair"] = {
        "genus": 1,
        "circles": [{"id": "Z", "slots": ["a.0", "b.0", "a.1", "b.1"]},
                    {"id": "W", "slots": ["c.0", "d.0", "c.1", "d.1"]}],
        "arcs": LADYBUG_ARCS + [_arc("c", side="inner"), _arc("d", side="outer")],
        "y": "+", "x": "-"}
    out["ladybug_and_chord"] = first_labeling({
        "genus": 1,
        "circles": [{"id": "Z", "slots": ["a.0", "b.0", "a.1", "b.1"]},
                    {"id": "W", "slots": ["c.0", "c.1"]}],
        "arcs": LADYBUG_ARCS + [_arc("c", side="inner")]})
    out["ladybug_free_circle"] = {
        "genus": 1,
        "circles": [{"id": "Z", "slots": ["a.0", "b.0", "a.1", "b.1"]},
                    {"id": "F", "class": [1, 0]}],
        "arcs": LADYBUG_ARCS,
        "y": {"Z": "+", "F": "-"}, "x": {"a.0": "-", "F": "-"}}
    dq = decorated_from_json(out["dq"])
    d2 = dual(dq)
    out["dq_prime"] = configuration_to_json(d2.config, d2.y, d2.x)
    base, flipped = worked_example()
    base = dict(base)
    base.pop("y")
    base.pop("x")
    out["worked_example_chords"] = base
    out["worked_example"] = flipped
    for case in INDEX4_LAYOUTS:
        dec = index4_configuration(case)
        out[f"index4_case{case:02d}"] = configuration_to_json(dec.config, dec.y, dec.x)
    return out


# ----------------------------------------------------------------------------
# files


def _dump(obj, path):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1)
        fh.write("\n")


def corpus_files():
    """Mapping relative path -> JSON object for the whole corpus."""
    files = {}
    for name, d in diagrams().items():
        files[f"diagrams/{name}.json"] = diagram_to_json(d)
    for name, (a, b) in reidemeister_pairs().items():
        files[f"moves/{name}_a.json"] = diagram_to_json(a)
        files[f"moves/{name}_b.json"] = diagram_to_json(b)
    files["random_diagrams.json"] = [diagram_to_json(d) for d in random_diagrams()]
    for name, data in configurations().items():
        files[f"configs/{name}.json"] = data
    return files


def write_corpus(root):
    files = corpus_files()
    for rel, obj in files.items():
        _dump(obj, os.path.join(root, rel))
    return sorted(files)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    root = argv[0] if argv else "fixtures"
    for rel in write_corpus(root):
        print(rel)
    return 0


if __name__ == "__main__":
    sys.exit(main())
