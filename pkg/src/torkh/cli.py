"""Command line front end.

Every command prints one JSON document (keys sorted) on stdout.  Exit codes:
0 success, 1 validation failure, 2 unreadable or malformed input.
"""

import argparse
import json
import sys

from . import config_analysis as ca
from . import khovanov, moduli
from .errors import VALIDATION_CODES, TorkhError
from .torus_diagram import diagram_from_json, validate


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise TorkhError("PARSE_ERROR", message)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise TorkhError("IO_ERROR", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise TorkhError("PARSE_ERROR", f"{path}: {exc}") from None


def _diagrams(path):
    """Diagrams in a file holding one diagram or a list of them, validated."""
    data = _read_json(path)
    items = data if isinstance(data, list) else [data]
    out = []
    for item in items:
        d = diagram_from_json(item)
        report = validate(d)
        if not report.ok:
            raise TorkhError(report.code, f"{report.invariant}: {report.detail}")
        out.append(d)
    return out


def _diagram(path):
    ds = _diagrams(path)
    if len(ds) != 1:
        raise TorkhError("PARSE_ERROR", f"{path} holds {len(ds)} diagrams, expected one")
    return ds[0]


def _decorated(path):
    return ca.decorated_from_json(_read_json(path))


def _lambda(args, genus):
    if args.lam is None:
        if genus == 1:
            raise TorkhError("PARSE_ERROR", "--lambda p,q is required for torus inputs")
        return (1, 0)
    try:
        p, q = (int(v) for v in args.lam.split(","))
    except ValueError:
        raise TorkhError("PARSE_ERROR", f"bad --lambda {args.lam!r}") from None
    return (p, q)


def _pairing(args, genus):
    return moduli.parse_pairing(args.pairing, _lambda(args, genus))


# ----------------------------------------------------------------------------
# commands


def cmd_homology(args):
    return khovanov.khovanov_homology(_diagram(args.files[0])).to_json(), 0


def cmd_verify_dsquare(args):
    results = []
    for path in args.files:
        for d in _diagrams(path):
            results.append(khovanov.d_squared_is_zero(khovanov.differential(d)))
    ok = all(results)
    return {"d_squared_zero": ok, "diagrams": len(results)}, 0 if ok else 1


def cmd_verify_moves(args):
    if len(args.files) != 2:
        raise TorkhError("PARSE_ERROR", "verify-moves takes two diagram files")
    return khovanov.verify_invariance(_diagram(args.files[0]), _diagram(args.files[1])), 0


def analyze(dec):
    """Report on a decorated configuration."""
    config = dec.config
    P = ca.poset(dec)
    mu, fibers = ca.multiplicity_bruteforce(dec)
    report = {
        "configuration": ca.configuration_to_json(config, dec.y, dec.x),
        "index": config.index,
        "connected": ca.is_connected(config),
        "empty": P.empty,
        "poset_size": len(P),
        "maximal_chains": len(P.maximal_chains()),
        "fibers": {",".join(config.names[a] for a in sorted(k)) or "-": len(v)
                   for k, v in fibers.items()},
        "multiplicity": mu,
        "multiplicity_product": ca.multiplicity_product(dec),
        "type": None,
    }
    if report["connected"] and not P.empty:
        report["multiplicity_rank"] = {
            ",".join(config.names[a] for a in sorted(k)) or "-":
                ca.multiplicity_rank(dec, k) for k in fibers}
    if config.index == 2:
        report["type"] = str(ca.classify_index2(dec))
    elif config.index == 3:
        report["type"] = str(ca.classify_index3(dec))
    return report


def cmd_analyze_config(args):
    return analyze(_decorated(args.files[0])), 0


def cmd_moduli_boundary(args):
    dec = _decorated(args.files[0])
    graph = moduli.boundary_graph(dec, _pairing(args, dec.config.genus))
    return graph.to_json(), 0


def cmd_moduli_type(args):
    d = _diagram(args.files[0])
    return {"type": moduli.moduli_system_type(d, _pairing(args, d.genus))}, 0


def cmd_multivalued(args):
    dec = _decorated(args.files[0])
    return moduli.enumerate_multivalued(dec, _lambda(args, dec.config.genus)), 0


def cmd_census(args):
    dec = _decorated(args.files[0])
    return moduli.index4_face_census(dec, _pairing(args, dec.config.genus)), 0


COMMANDS = {
    "homology": cmd_homology,
    "verify-dsquare": cmd_verify_dsquare,
    "verify-moves": cmd_verify_moves,
    "analyze-config": cmd_analyze_config,
    "moduli-boundary": cmd_moduli_boundary,
    "moduli-type": cmd_moduli_type,
    "multivalued": cmd_multivalued,
    "census": cmd_census,
}


def build_parser():
    parser = _Parser(prog="torkh", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("files", nargs="+")
    parser.add_argument("--pairing", default="",
                        help="choices such as l0=right,lalpha=right,q=lambda")
    parser.add_argument("--lambda", dest="lam", metavar="P,Q",
                        help="primitive class used by the pairing (torus inputs)")
    return parser


def run(argv, out=sys.stdout):
    """Run one command; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        payload, code = COMMANDS[args.command](args)
    except TorkhError as exc:
        payload = {"error": exc.code, "detail": exc.detail}
        code = 1 if exc.code in VALIDATION_CODES else 2
    out.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
