"""Command-line front end.

Every subcommand reads one input file, calls the library and prints a JSON
report on standard output.  Exit codes: 0 on success, 1 on domain errors
(the report is then ``{"error": {"code": ..., ...}}``), 2 on usage errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import core, families, flips, formats, projective, pseudolines
from .errors import InputError, OrchardError, ParseError
from .geometry import DEFAULT_RETRIES, require_generic
from .svg import render_svg


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IoError("cannot read %s: %s" % (path, exc.strerror)) from None


class IoError(OrchardError):
    code = "io_error"


def _labels(text, what):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError("%s must be comma-separated integers" % what) from None


def _chart(text):
    if text is None:
        return None
    try:
        return projective.Chart(tuple(Fraction(t) for t in text.split(",")))
    except (ValueError, ZeroDivisionError):
        raise InputError("--chart must be comma-separated rationals") from None


def _affine(path):
    text = _read(path)
    if formats.sniff(text) != "affine":
        raise ParseError("expected an affine configuration file ('d n' header)")
    return formats.parse_configuration(text)


def _homogeneous(path):
    text = _read(path)
    if formats.sniff(text) != "homogeneous":
        raise ParseError("expected a 'proj d n' or 'sphere d n' file")
    return formats.parse_homogeneous(text)


def _points(cfg):
    return [[formats.format_rat(x) for x in p] for p in cfg.points]


# --- subcommands -----------------------------------------------------------

def cmd_check(args):
    text = _read(args.input)
    kind = formats.sniff(text)
    if kind == "affine":
        cfg = formats.parse_configuration(text)
        require_generic(cfg)
        return {"format": kind, "d": cfg.dim, "n": cfg.n, "generic": True}
    if kind == "homogeneous":
        h = formats.parse_homogeneous(text)
        projective.require_generic(h)
        return {"format": kind, "d": h.dim, "n": h.n, "antipodal": h.antipodal,
                "generic": True}
    if kind == "wiring":
        wd = formats.parse_wiring(text)
        pseudolines.validate_diagram(wd)
        return {"format": kind, "n": wd.n, "valid": True}
    g = formats.parse_generalized(text)
    families.require_c_generic(g)
    return {"format": kind, "family": g.family.to_dict(), "n": g.n, "generic": True}


def cmd_partition(args):
    return core.orchard_partition(_affine(args.input), method=args.method).to_dict()


def cmd_tree(args):
    return core.orchard_tree(_affine(args.input), method=args.method).to_dict()


def cmd_flip(args):
    cfg = _affine(args.input)
    res = flips.apply_flip(cfg, flips.FlipSpec(_labels(args.flipset, "--flipset"), args.mover))
    before = core.orchard_partition(res.before)
    return {"flip": res.spec.to_dict(),
            "type": flips.classify_flip(before, res.spec).to_dict(),
            "stop_parameter": formats.format_rat(res.stop_parameter),
            "before": before.to_dict(),
            "after": core.orchard_partition(res.after).to_dict(),
            "check": flips.verify_flip_rule(res).to_dict(),
            "points": _points(res.after)}


def cmd_parity(args):
    return flips.pointed_parity_experiment(args.n, args.d, trials=args.trials, steps=args.steps,
                                           seed=args.seed, retries=args.retries)


def cmd_family(args):
    text = _read(args.input)
    g = formats.parse_generalized(text)
    part = families.c_orchard_partition(g, verify=True)
    return {"family": g.family.to_dict(), "partition": part.to_dict()}


def cmd_sphere(args):
    h = _homogeneous(args.input)
    sp = projective.spherical_orchard(h, _chart(args.chart), seed=args.seed,
                                      retries=args.retries)
    out = sp.to_dict()
    out["antipodes_related"] = sp.antipodes_related
    return out


def cmd_projective(args):
    h = _homogeneous(args.input)
    return projective.projective_orchard(h, _chart(args.chart), seed=args.seed,
                                         retries=args.retries).to_dict()


def cmd_gamma(args):
    h = _homogeneous(args.input)
    chart = _chart(args.chart)
    graph = projective.gamma_graph(h, chart, seed=args.seed, retries=args.retries)
    report = projective.verify_homological_triviality(h, graph.chart)
    out = graph.to_dict()
    out["triviality"] = report.to_dict()
    return out


def cmd_wiring(args):
    text = _read(args.input)
    if formats.sniff(text) != "wiring":
        raise ParseError("expected a wiring file ('wiring n' header)")
    wd = formats.parse_wiring(text)
    pseudolines.validate_diagram(wd)
    out = {}
    if args.move is not None:
        out["moved_wires"] = list(pseudolines.triangle_wires(wd, args.move))
        wd = pseudolines.triangle_move(wd, args.move)
    out.update(wd.to_dict())
    out["counts"] = [c.to_dict() for _, c in sorted(pseudolines.all_digon_counts(wd).items())]
    out["triangles"] = pseudolines.applicable_triangle_positions(wd)
    if pseudolines.partition_parity_even(wd.n):
        out["partition"] = pseudolines.pseudoline_partition(wd).to_dict()
    else:
        sols = pseudolines.pseudoline_orientation(wd)
        out["orientations"] = [list(s.directions) for s in sols]
        out["curves"] = [pseudolines.desingularize(wd, sols[0], m).to_dict()
                         for m in ("respect", "oppose")]
    return out


def cmd_dualize(args):
    wd = pseudolines.dualize(_affine(args.input), seed=args.seed, retries=args.retries)
    return wd.to_dict()


def cmd_plot(args):
    cfg = _affine(args.input)
    pair = _labels(args.pair, "--pair") if args.pair else None
    if pair is not None and len(pair) != 2:
        raise InputError("--pair needs exactly two labels")
    part = core.orchard_partition(cfg)
    doc = render_svg(cfg, part, pair=pair)
    if args.output == "-":
        sys.stdout.write(doc)
        return None
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(doc)
    return {"output": args.output, "partition": part.to_dict()}


# --- plumbing --------------------------------------------------------------

def _plain(obj, indent=""):
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append("%s%s:" % (indent, k))
                lines.append(_plain(v, indent + "  "))
            else:
                lines.append(("%s%s: %s" % (indent, k, _scalar(v))).rstrip())
        return "\n".join(lines)
    if isinstance(obj, list) and not _flat(obj):
        lines = []
        for v in obj:
            if isinstance(v, dict):
                lines.append(indent + "-")
                lines.append(_plain(v, indent + "  "))
            else:
                lines.append(indent + "- " + _scalar(v))
        return "\n".join(lines)
    return indent + _scalar(obj)


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None else str(v)


def _emit(obj, fmt):
    if fmt == "plain":
        sys.stdout.write(_plain(obj) + "\n")
    else:
        sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


COMMANDS = {
    "check": (cmd_check, "validate an input file and its genericity"),
    "partition": (cmd_partition, "Orchard partition of an affine configuration"),
    "tree": (cmd_tree, "recursive Orchard tree"),
    "flip": (cmd_flip, "realize one flip and compare partitions"),
    "parity": (cmd_parity, "pointed parity experiment on random flip walks"),
    "family": (cmd_family, "partition for a function family (generalized separators)"),
    "sphere": (cmd_sphere, "signed partition of an antipodal spherical configuration"),
    "projective": (cmd_projective, "partition of a projective configuration"),
    "gamma": (cmd_gamma, "gamma graph edges and triangle homology check"),
    "wiring": (cmd_wiring, "digon counts, partition or orientations of a wiring diagram"),
    "dualize": (cmd_dualize, "wiring diagram of the dual line arrangement"),
    "plot": (cmd_plot, "SVG picture of a planar orchard"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "plain"), default="json")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--retries", type=int, default=DEFAULT_RETRIES,
                        help="retry budget for random choices (default %d)" % DEFAULT_RETRIES)
    parser = argparse.ArgumentParser(prog="orchard", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    p = {}
    for name, (_, help_) in COMMANDS.items():
        p[name] = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if name != "parity":
            p[name].add_argument("input", help="input file ('-' for stdin)")
    for name in ("partition", "tree"):
        p[name].add_argument("--method", choices=("anchor", "all_pairs"), default="anchor")
    p["flip"].add_argument("--flipset", required=True, help="d+1 comma-separated labels")
    p["flip"].add_argument("--mover", type=int, required=True, help="label of the moving point")
    p["parity"].add_argument("--n", type=int, required=True)
    p["parity"].add_argument("--d", type=int, required=True)
    p["parity"].add_argument("--trials", type=int, default=10)
    p["parity"].add_argument("--steps", type=int, default=10)
    for name in ("sphere", "projective", "gamma"):
        p[name].add_argument("--chart", help="covector as comma-separated rationals "
                                             "(default: random, from --seed)")
    p["wiring"].add_argument("--move", type=int, help="apply a triangle move at this word index")
    p["plot"].add_argument("output", help="SVG output path ('-' for stdout)")
    p["plot"].add_argument("--pair", help="i,j: overlay the lines separating P_i and P_j")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except OrchardError as exc:
        _emit({"error": exc.to_dict()}, args.format)
        return 1
    if result is not None:
        _emit(result, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
